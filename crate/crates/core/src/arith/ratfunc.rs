use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use super::{Field, MPoly, Rat, UPoly};
use crate::error::{Error, Result};

/// Quotient of multivariate polynomials in lowest terms.
///
/// The denominator's grlex-leading coefficient is 1, which makes the representation
/// canonical: equal rational functions are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(c) = den.as_constant() {
            return Ok(RatFunc { num: num.scale(&c.recip()), den: MPoly::one() });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let k = den.lc().recip();
        Ok(RatFunc { num: num.scale(&k), den: den.scale(&k) })
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc { num: p, den: MPoly::one() }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(MPoly::int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MPoly::var(name))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.as_poly().and_then(MPoly::as_constant)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.num.vars().iter().chain(self.den.vars()).cloned().collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).expect("nonzero denominator");
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::new(n, self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_polynomial() && o.is_polynomial() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = o.den.div_exact(&g1).expect("gcd divides");
        let c = o.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        let num = a.mul(&c);
        let den = b.mul(&d);
        let k = den.lc().recip();
        RatFunc { num: num.scale(&k), den: den.scale(&k) }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn zero() -> Self {
        RatFunc { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// Substitutes rationals for some variables.
    pub fn eval_partial(&self, vals: &BTreeMap<String, Rat>) -> Result<Self> {
        Self::new(self.num.eval_partial(vals), self.den.eval_partial(vals))
    }

    /// Value at a full rational point.
    pub fn eval_rat(&self, vals: &BTreeMap<String, Rat>) -> Result<Rat> {
        let r = self.eval_partial(vals)?;
        r.as_constant().ok_or_else(|| Error::VariableMismatch(format!("unbound variables in {r}")))
    }

    /// Degree in `var` of numerator minus denominator.
    pub fn degree_in(&self, var: &str) -> i64 {
        self.num.degree_in(var) as i64 - self.den.degree_in(var) as i64
    }

    /// View as a polynomial in `var` over Q; fails if other variables or a denominator occur.
    pub fn to_upoly_rat(&self, var: &str) -> Result<UPoly<Rat>> {
        self.as_poly()
            .and_then(|p| p.to_upoly(var))
            .ok_or_else(|| Error::NotPolynomial(format!("{self} in {var} over Q")))
    }

    /// View as a polynomial in `var` with rational-function coefficients in the other variables.
    pub fn to_upoly_over(&self, var: &str) -> Result<UPoly<RatFunc>> {
        if self.den.degree_in(var) > 0 {
            return Err(Error::NotPolynomial(format!("{self} in {var}")));
        }
        let den = RatFunc::from_poly(self.den.clone());
        let cs = self
            .num
            .coeffs_in(var)
            .into_iter()
            .map(|c| RatFunc::from_poly(c).div(&den).expect("nonzero denominator"))
            .collect();
        Ok(UPoly::new(var, cs))
    }

    pub fn from_upoly_rat(p: &UPoly<Rat>) -> Self {
        Self::from_poly(MPoly::from_upoly(p))
    }

    pub fn from_upoly_over(p: &UPoly<RatFunc>) -> Self {
        let x = RatFunc::var(&p.var);
        p.coeffs().iter().rev().fold(RatFunc::zero(), |acc, c| acc.mul(&x).add(c))
    }
}

/// Polynomial in the bound variables, evaluated over a common denominator.
fn subst_poly(p: &MPoly, bindings: &BTreeMap<String, RatFunc>) -> (MPoly, MPoly) {
    let bound: Vec<(usize, &RatFunc)> =
        p.vars().iter().enumerate().filter_map(|(i, v)| bindings.get(v).map(|b| (i, b))).collect();
    let maxdeg: Vec<u32> = bound.iter().map(|(i, _)| p.terms().map(|(m, _)| m.0[*i]).max().unwrap_or(0)).collect();
    let mut num = MPoly::zero();
    let mut npow: Vec<Vec<MPoly>> = Vec::new();
    let mut dpow: Vec<Vec<MPoly>> = Vec::new();
    for ((_, b), &e) in bound.iter().zip(&maxdeg) {
        let mut np = vec![MPoly::one()];
        let mut dp = vec![MPoly::one()];
        for k in 1..=e as usize {
            np.push(np[k - 1].mul(b.num()));
            dp.push(dp[k - 1].mul(b.den()));
        }
        npow.push(np);
        dpow.push(dp);
    }
    for (m, c) in p.terms() {
        let mut free = m.0.clone();
        let mut t = MPoly::one();
        for (k, (i, _)) in bound.iter().enumerate() {
            let e = m.0[*i] as usize;
            free[*i] = 0;
            t = t.mul(&npow[k][e]).mul(&dpow[k][maxdeg[k] as usize - e]);
        }
        let rest = MPoly::from_terms(p.vars().to_vec(), vec![(super::Mono(free), c.clone())]);
        num = num.add(&t.mul(&rest));
    }
    let den = dpow.iter().zip(&maxdeg).fold(MPoly::one(), |acc, (dp, &e)| acc.mul(&dp[e as usize]));
    (num, den)
}

/// Simultaneous substitution of rational functions for variables.
pub fn substitute(expr: &RatFunc, bindings: &BTreeMap<String, RatFunc>) -> Result<RatFunc> {
    let (nn, nd) = subst_poly(expr.num(), bindings);
    let (dn, dd) = subst_poly(expr.den(), bindings);
    if dn.is_zero() {
        return Err(Error::DivisionByZero);
    }
    RatFunc::new(nn.mul(&dd), nd.mul(&dn))
}

/// Square root with positive numerator leading coefficient, or `None` if not a square.
pub fn ratfunc_sqrt(f: &RatFunc) -> Option<RatFunc> {
    let s = f.num().mul(f.den()).sqrt()?;
    Some(RatFunc::new(s, f.den().clone()).expect("nonzero denominator"))
}

impl Field for RatFunc {
    fn fzero() -> Self {
        RatFunc::zero()
    }
    fn fone() -> Self {
        RatFunc::one()
    }
    fn fis_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn fsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn fmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn fneg(&self) -> Self {
        self.neg()
    }
    fn finv(&self) -> Result<Self> {
        self.inv()
    }
    fn from_rat(r: &Rat) -> Self {
        RatFunc::from_rat(r.clone())
    }
    fn fsqrt(&self) -> Option<Self> {
        ratfunc_sqrt(self)
    }
    fn is_atomic(&self) -> bool {
        self.is_polynomial() && self.num.num_terms() <= 1 && self.num.lc() >= Rat::zero() && {
            let c = self.num.lc();
            c.is_one() || self.num.is_constant() && c.is_integer()
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_expr, ri};
    use proptest::prelude::*;

    const VARS: &[&str] = &["a", "b", "q", "r", "t", "u"];

    fn e(s: &str) -> RatFunc {
        parse_expr(s, VARS).unwrap()
    }

    fn bind(pairs: &[(&str, &str)]) -> BTreeMap<String, RatFunc> {
        pairs.iter().map(|(k, v)| (k.to_string(), e(v))).collect()
    }

    #[test]
    fn canonical_form() {
        let x = e("(2*t^2 - 8)/(4*t + 8)");
        assert_eq!(x, e("(t - 2)/2"));
        assert_eq!(e("(a*t - a)/(t^2 - 1)"), e("a/(t + 1)"));
        assert_eq!(parse_expr("1/(t - t)", VARS), Err(Error::DivisionByZero));
    }

    #[test]
    fn substitute_examples() {
        let a = e("(2*t/(2*t^2 - 1))^2");
        let v = substitute(&a, &bind(&[("t", "1")])).unwrap();
        assert_eq!(v, RatFunc::int(4));
        let p = e("t^3 - a*t + 1");
        assert_eq!(substitute(&p, &bind(&[("t", "t")])).unwrap(), p);
        let err = substitute(&e("1/(t - 1)"), &bind(&[("t", "1")]));
        assert_eq!(err, Err(Error::DivisionByZero));
    }

    #[test]
    fn q_branch_identity() {
        // q = 3/sqrt(2a + 1) with a = (2t/(2t^2-1))^2: check q^2 (2a + 1) = 9 for q = 3(2t^2-1)/(1+2t^2).
        let a = e("(2*t/(2*t^2 - 1))^2");
        let q = e("3*(2*t^2 - 1)/(1 + 2*t^2)");
        let lhs = q.mul(&q).mul(&a.scale(&ri(2)).add(&RatFunc::int(1)));
        assert_eq!(lhs, RatFunc::int(9));
        let two_a1 = a.scale(&ri(2)).add(&RatFunc::int(1));
        assert_eq!(ratfunc_sqrt(&two_a1).unwrap(), e("(2*t^2 + 1)/(2*t^2 - 1)"));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(ratfunc_sqrt(&e("(t^2 - 4)^2/(t + 1)^2")).unwrap(), e("(t^2 - 4)/(t + 1)"));
        assert!(ratfunc_sqrt(&e("t")).is_none());
        assert!(ratfunc_sqrt(&e("4*a^2*(t - 1)^2/(a + t)^4")).is_some());
        assert!(ratfunc_sqrt(&e("-(t - 1)^2")).is_none());
    }

    #[test]
    fn sqrt_agrees_with_squarefree_route() {
        for s in ["(t^2 - 4)^2*(t + 3)^4", "t^3*(t - 1)", "9*(t^2 + 1)^2", "2*(t + 1)^2"] {
            let p = e(s);
            let via_terms = ratfunc_sqrt(&p).is_some();
            let via_sqf = p.to_upoly_rat("t").unwrap().sqrt().is_some();
            assert_eq!(via_terms, via_sqf, "{s}");
        }
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (prop::collection::vec(-3i64..=3, 1..=4), prop::collection::vec(-3i64..=3, 1..=3)).prop_filter_map(
            "nonzero den",
            |(n, d)| {
                let mk = |c: &[i64]| MPoly::from_upoly(&UPoly::new("t", c.iter().map(|&x| ri(x)).collect()));
                RatFunc::new(mk(&n), mk(&d)).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn sqrt_of_square_prop(g in prop::collection::vec(-4i64..=4, 1..=7), h in prop::collection::vec(-2i64..=2, 1..=3)) {
            let mk = |c: &[i64]| MPoly::from_upoly(&UPoly::new("t", c.iter().map(|&x| ri(x)).collect()));
            let gf = match RatFunc::new(mk(&g), mk(&h)) { Ok(x) => x, Err(_) => return Ok(()) };
            prop_assume!(!gf.is_zero());
            let r = ratfunc_sqrt(&gf.mul(&gf)).unwrap();
            prop_assert!(r == gf || r == gf.neg());
        }

        #[test]
        fn substitution_then_identity(f in small_ratfunc(), g in small_ratfunc()) {
            let mut b = BTreeMap::new();
            b.insert("t".to_string(), g.clone());
            if let Ok(once) = substitute(&f, &b) {
                let mut id = BTreeMap::new();
                id.insert("t".to_string(), RatFunc::var("t"));
                prop_assert_eq!(substitute(&once, &id).unwrap(), once);
            }
        }

        #[test]
        fn field_axioms(x in small_ratfunc(), y in small_ratfunc(), z in small_ratfunc()) {
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            if !y.is_zero() {
                prop_assert_eq!(x.div(&y).unwrap().mul(&y), x);
            } else {
                prop_assert_eq!(x.div(&y), Err(Error::DivisionByZero));
            }
        }
    }
}
