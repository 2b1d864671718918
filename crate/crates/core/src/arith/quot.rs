use super::{Field, UPoly};
use crate::error::{Error, Result};

/// Element of `F[x]/(m)` for a monic modulus `m`, kept reduced.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotElem<F: Field> {
    rep: UPoly<F>,
    modulus: UPoly<F>,
}

impl<F: Field> QuotElem<F> {
    pub fn new(rep: UPoly<F>, modulus: UPoly<F>) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 || !modulus.lc().fis_one() {
            return Err(Error::BadModulus);
        }
        let (_, r) = rep.divrem(&modulus)?;
        Ok(QuotElem { rep: r, modulus })
    }

    pub fn rep(&self) -> &UPoly<F> {
        &self.rep
    }

    pub fn modulus(&self) -> &UPoly<F> {
        &self.modulus
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.modulus != o.modulus {
            return Err(Error::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(QuotElem { rep: self.rep.add(&o.rep), modulus: self.modulus.clone() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(QuotElem { rep: self.rep.sub(&o.rep), modulus: self.modulus.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

/// Product reduced modulo the shared modulus.
pub fn quot_mul<F: Field>(x: &QuotElem<F>, y: &QuotElem<F>) -> Result<QuotElem<F>> {
    x.check(y)?;
    QuotElem::new(x.rep.mul(&y.rep), x.modulus.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_expr, RatFunc};

    fn rf(s: &str) -> RatFunc {
        parse_expr(s, &["a", "b"]).unwrap()
    }

    fn modulus() -> UPoly<RatFunc> {
        // j^2 - S j + P with S = a + b, P = a*b - 1
        UPoly::new("j", vec![rf("a*b - 1"), rf("-(a + b)"), RatFunc::one()])
    }

    #[test]
    fn reduction_rule() {
        let j = QuotElem::new(UPoly::x("j"), modulus()).unwrap();
        let jj = quot_mul(&j, &j).unwrap();
        assert_eq!(jj.rep(), &UPoly::new("j", vec![rf("1 - a*b"), rf("a + b")]));
    }

    #[test]
    fn one_is_neutral() {
        let one = QuotElem::new(UPoly::one("j"), modulus()).unwrap();
        let x = QuotElem::new(UPoly::new("j", vec![rf("a/b"), rf("b^2")]), modulus()).unwrap();
        assert_eq!(quot_mul(&one, &x).unwrap(), x);
    }

    #[test]
    fn mismatch_is_error() {
        let x = QuotElem::new(UPoly::x("j"), modulus()).unwrap();
        let other = UPoly::new("j", vec![RatFunc::one(), RatFunc::zero(), RatFunc::one()]);
        let y = QuotElem::new(UPoly::x("j"), other).unwrap();
        assert_eq!(quot_mul(&x, &y), Err(Error::ModulusMismatch));
        let bad = UPoly::new("j", vec![RatFunc::one(), RatFunc::int(2)]);
        assert_eq!(QuotElem::new(UPoly::x("j"), bad), Err(Error::BadModulus));
    }
}
