//! Weierstrass curves over an abstract field and their group law.

use serde::Serialize;

use crate::arith::{ri, Field};
use crate::error::{Error, Result};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`, coefficients `[a1, a2, a3, a4, a6]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve<F: Field> {
    pub a: [F; 5],
}

/// A point, or the neutral element `O`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Point<F: Field> {
    O,
    A { x: F, y: F },
}

impl<F: Field> Point<F> {
    pub fn new(x: F, y: F) -> Self {
        Point::A { x, y }
    }

    pub fn is_o(&self) -> bool {
        matches!(self, Point::O)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::O => None,
            Point::A { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::O => None,
            Point::A { y, .. } => Some(y),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Point<G>> {
        Ok(match self {
            Point::O => Point::O,
            Point::A { x, y } => Point::A { x: f(x)?, y: f(y)? },
        })
    }
}

fn k<F: Field>(n: i64) -> F {
    F::from_rat(&ri(n))
}

/// Standard `b2, b4, b6, b8` and `c4, c6, Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CInvariants<F: Field> {
    pub b: [F; 4],
    pub c4: F,
    pub c6: F,
    pub disc: F,
}

impl<F: Field> Curve<F> {
    pub fn new(a: [F; 5]) -> Self {
        Curve { a }
    }

    /// Short model `y^2 = x^3 + a4 x + a6`.
    pub fn short(a4: F, a6: F) -> Self {
        Curve { a: [F::fzero(), F::fzero(), F::fzero(), a4, a6] }
    }

    pub fn invariants(&self) -> CInvariants<F> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1.fmul(a1).fadd(&k::<F>(4).fmul(a2));
        let b4 = k::<F>(2).fmul(a4).fadd(&a1.fmul(a3));
        let b6 = a3.fmul(a3).fadd(&k::<F>(4).fmul(a6));
        let b8 = a1
            .fmul(a1)
            .fmul(a6)
            .fadd(&k::<F>(4).fmul(a2).fmul(a6))
            .fsub(&a1.fmul(a3).fmul(a4))
            .fadd(&a2.fmul(a3).fmul(a3))
            .fsub(&a4.fmul(a4));
        let c4 = b2.fmul(&b2).fsub(&k::<F>(24).fmul(&b4));
        let c6 = b2
            .fmul(&b2)
            .fmul(&b2)
            .fneg()
            .fadd(&k::<F>(36).fmul(&b2).fmul(&b4))
            .fsub(&k::<F>(216).fmul(&b6));
        let disc = b2
            .fmul(&b2)
            .fmul(&b8)
            .fneg()
            .fsub(&k::<F>(8).fmul(&b4).fmul(&b4).fmul(&b4))
            .fsub(&k::<F>(27).fmul(&b6).fmul(&b6))
            .fadd(&k::<F>(9).fmul(&b2).fmul(&b4).fmul(&b6));
        CInvariants { b: [b2, b4, b6, b8], c4, c6, disc }
    }

    pub fn disc(&self) -> F {
        self.invariants().disc
    }

    /// `j = c4^3 / Δ`.
    pub fn j(&self) -> Result<F> {
        let inv = self.invariants();
        if inv.disc.fis_zero() {
            return Err(Error::ZeroDiscriminant);
        }
        inv.c4.fmul(&inv.c4).fmul(&inv.c4).fdiv(&inv.disc)
    }

    /// Left side minus right side of the Weierstrass equation.
    pub fn residual(&self, x: &F, y: &F) -> F {
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = y.fmul(y).fadd(&a1.fmul(x).fmul(y)).fadd(&a3.fmul(y));
        let rhs = x.fmul(x).fmul(x).fadd(&a2.fmul(x).fmul(x)).fadd(&a4.fmul(x)).fadd(a6);
        lhs.fsub(&rhs)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::O => true,
            Point::A { x, y } => self.residual(x, y).fis_zero(),
        }
    }

    fn check(&self, p: &Point<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    /// `2y + a1 x + a3`; vanishes exactly at the points of order two.
    pub fn psi2(&self, x: &F, y: &F) -> F {
        k::<F>(2).fmul(y).fadd(&self.a[0].fmul(x)).fadd(&self.a[2])
    }

    pub fn neg(&self, p: &Point<F>) -> Result<Point<F>> {
        self.check(p)?;
        Ok(self.neg_unchecked(p))
    }

    fn neg_unchecked(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::O => Point::O,
            Point::A { x, y } => Point::A { x: x.clone(), y: y.fneg().fsub(&self.a[0].fmul(x)).fsub(&self.a[2]) },
        }
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        self.check(p)?;
        self.check(q)?;
        self.add_unchecked(p, q)
    }

    fn add_unchecked(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        let [a1, a2, a3, a4, _] = &self.a;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::O, _) => return Ok(q.clone()),
            (_, Point::O) => return Ok(p.clone()),
            (Point::A { x: x1, y: y1 }, Point::A { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let s = self.psi2(x1, y1);
            if y1 != y2 || s.fis_zero() {
                return Ok(Point::O);
            }
            let num = k::<F>(3).fmul(x1).fmul(x1).fadd(&k::<F>(2).fmul(a2).fmul(x1)).fadd(a4).fsub(&a1.fmul(y1));
            let lambda = num.fdiv(&s)?;
            let nu = y1.fsub(&lambda.fmul(x1));
            (lambda, nu)
        } else {
            let lambda = y2.fsub(y1).fdiv(&x2.fsub(x1))?;
            let nu = y1.fsub(&lambda.fmul(x1));
            (lambda, nu)
        };
        let x3 = lambda.fmul(&lambda).fadd(&a1.fmul(&lambda)).fsub(a2).fsub(x1).fsub(x2);
        let y3 = lambda.fadd(a1).fmul(&x3).fadd(&nu).fadd(a3).fneg();
        Ok(Point::A { x: x3, y: y3 })
    }

    pub fn double(&self, p: &Point<F>) -> Result<Point<F>> {
        self.add(p, p)
    }

    /// `[n] P` by double-and-add; negative `n` negates.
    pub fn mul(&self, n: i64, p: &Point<F>) -> Result<Point<F>> {
        self.check(p)?;
        let base = if n < 0 { self.neg_unchecked(p) } else { p.clone() };
        let mut m = n.unsigned_abs();
        let mut acc = Point::O;
        let mut cur = base;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add_unchecked(&acc, &cur)?;
            }
            cur = self.add_unchecked(&cur, &cur)?;
            m >>= 1;
        }
        Ok(acc)
    }

    /// Order of a torsion point, searched up to `bound`.
    pub fn torsion_order(&self, p: &Point<F>, bound: u32) -> Result<Option<u32>> {
        self.check(p)?;
        let mut cur = p.clone();
        for n in 1..=bound {
            if cur.is_o() {
                return Ok(Some(n));
            }
            cur = self.add_unchecked(&cur, p)?;
        }
        Ok(None)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Curve<G>> {
        let [a1, a2, a3, a4, a6] = &self.a;
        Ok(Curve { a: [f(a1)?, f(a2)?, f(a3)?, f(a4)?, f(a6)?] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rq, Rat};

    fn r(n: i64) -> Rat {
        ri(n)
    }

    #[test]
    fn invariants_of_simple_curves() {
        let c = Curve::short(r(0), r(1));
        assert_eq!(c.disc(), r(-432));
        assert_eq!(c.j().unwrap(), r(0));
        let c = Curve::short(r(1), r(0));
        assert_eq!(c.j().unwrap(), r(1728));
        let inv = Curve::new([r(1), r(-1), r(1), r(-3), r(5)]).invariants();
        // c4^3 - c6^2 = 1728 Δ
        let lhs = &inv.c4 * &inv.c4 * &inv.c4 - &inv.c6 * &inv.c6;
        assert_eq!(lhs, r(1728) * &inv.disc);
        assert!(Curve::short(r(0), r(0)).j().is_err());
    }

    #[test]
    fn group_law_on_a_rational_curve() {
        // y^2 = x^3 - 2: P = (3, 5), 2P = (129/100, -383/1000)
        let c = Curve::short(r(0), r(-2));
        let p = Point::new(r(3), r(5));
        assert_eq!(c.double(&p).unwrap(), Point::new(rq(129, 100), rq(-383, 1000)));
        assert_eq!(c.add(&p, &c.neg(&p).unwrap()).unwrap(), Point::O);
        assert_eq!(c.mul(3, &p).unwrap(), c.add(&p, &c.double(&p).unwrap()).unwrap());
        assert_eq!(c.mul(-1, &p).unwrap(), c.neg(&p).unwrap());
        assert_eq!(c.add(&p, &Point::new(r(0), r(0))), Err(Error::OffCurve));
        // y^2 = x^3 - x: (0, 0) has order two
        let c = Curve::short(r(-1), r(0));
        assert_eq!(c.torsion_order(&Point::new(r(0), r(0)), 12).unwrap(), Some(2));
        assert_eq!(c.add(&Point::new(r(0), r(0)), &Point::new(r(1), r(0))).unwrap(), Point::new(r(-1), r(0)));
    }

    #[test]
    fn group_law_with_a1_a3() {
        // 11a3: y^2 + y = x^3 - x^2, (0, 0) has order 5
        let c = Curve::new([r(0), r(-1), r(1), r(0), r(0)]);
        assert_eq!(c.torsion_order(&Point::new(r(0), r(0)), 12).unwrap(), Some(5));
        // y^2 + xy = x^3 - x^2 - 2x (a curve with (0,0) of order 2)
        let c = Curve::new([r(1), r(-1), r(0), r(-2), r(0)]);
        assert_eq!(c.torsion_order(&Point::new(r(0), r(0)), 12).unwrap(), Some(2));
    }
}
