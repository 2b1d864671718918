//! Exact arithmetic kernel.

mod heugcd;
mod mpoly;
mod parse;
mod quot;
mod ratfunc;
mod tpoly;
mod upoly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use mpoly::{MPoly, Mono};
pub use parse::{parse_expr, parse_poly};
pub use quot::{quot_mul, QuotElem};
pub use ratfunc::{ratfunc_sqrt, substitute, RatFunc};
pub use tpoly::{content_in, derivative_in, gcd_in, primitive_in, squarefree_in, valuation_in};
pub use upoly::{poly_gcd, squarefree_decomposition, valuation_at, UPoly, Valuation};

/// Arbitrary-precision rational; always stored in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rq(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rbig(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Exact square root of an integer, if it is a perfect square.
pub fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = num_integer::Roots::sqrt(n);
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Non-negative rational square root, if one exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    let n = int_sqrt(r.numer())?;
    let d = int_sqrt(r.denom())?;
    Some(Rat::new(n, d))
}

/// Coefficient field interface shared by [`Rat`] and [`RatFunc`].
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn finv(&self) -> Result<Self>;
    fn from_rat(r: &Rat) -> Self;
    /// A square root inside the field, if one exists.
    fn fsqrt(&self) -> Option<Self>;

    fn fdiv(&self, o: &Self) -> Result<Self> {
        Ok(self.fmul(&o.finv()?))
    }
    fn fis_one(&self) -> bool {
        *self == Self::fone()
    }
    /// True when the printed form needs parentheses as a factor.
    fn is_atomic(&self) -> bool;
}

impl Field for Rat {
    fn fzero() -> Self {
        Zero::zero()
    }
    fn fone() -> Self {
        One::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn fsqrt(&self) -> Option<Self> {
        rat_sqrt(self)
    }
    fn is_atomic(&self) -> bool {
        !self.is_negative() && self.is_integer()
    }
}

/// Formats a rational in the expression grammar (`-3/4`, `5`).
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
