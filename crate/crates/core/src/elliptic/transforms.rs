//! Quadratic twists, base changes, 2-isogenies and the `(A, B)` data of a Kummer-type model.

use std::collections::BTreeMap;

use super::places::poly_in_base;
use super::{minimalize, Section, WModel};
use crate::arith::{ri, rq, squarefree_in, substitute, Field, RatFunc};
use crate::error::{Error, Result};

fn is_squarefree(d: &RatFunc, t: &str) -> Result<bool> {
    let n = poly_in_base(d, t)?;
    Ok(squarefree_in(&n, t)?.iter().all(|(_, k)| *k == 1))
}

/// Twist by a squarefree polynomial `d` in the base variable, then minimalize.
pub fn quadratic_twist(w: &WModel, d: &RatFunc) -> Result<WModel> {
    let m = w.specialized()?;
    if d.is_zero() {
        return Err(Error::NotSquarefree);
    }
    if !is_squarefree(d, &m.base)? {
        return Err(Error::NotSquarefree);
    }
    // y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4 after completing the square
    let b = m.curve().invariants().b;
    let a2 = b[0].scale(&rq(1, 4)).mul(d);
    let a4 = b[1].scale(&rq(1, 2)).mul(&d.mul(d));
    let a6 = b[2].scale(&rq(1, 4)).mul(&d.pow(3)?);
    minimalize(&WModel::new([RatFunc::zero(), a2, RatFunc::zero(), a4, a6], &m.base))
}

/// Pull back along `t -> f(t)`, then minimalize.
pub fn base_change(w: &WModel, f: &RatFunc) -> Result<WModel> {
    let m = w.specialized()?;
    if !f.vars().contains(&m.base) {
        return Err(Error::ConstantBaseChange);
    }
    let sub = BTreeMap::from([(m.base.clone(), f.clone())]);
    let mut a = m.a.clone();
    for c in a.iter_mut() {
        *c = substitute(c, &sub)?;
    }
    minimalize(&WModel::new(a, &m.base))
}

fn kummer_coeffs(m: &WModel) -> Result<(RatFunc, RatFunc)> {
    let [a1, a2, a3, a4, a6] = &m.a;
    if !(a1.is_zero() && a3.is_zero() && a6.is_zero()) {
        return Err(Error::Shape("expected y^2 = x(x^2 + a x + b)".into()));
    }
    if a4.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    Ok((a2.clone(), a4.clone()))
}

/// `y^2 = x(x^2 + a x + b)  ->  y^2 = x(x^2 - 2a x + a^2 - 4b)`, the quotient by `(0, 0)`.
pub fn two_isogeny(w: &WModel) -> Result<WModel> {
    let m = w.specialized()?;
    let (a, b) = kummer_coeffs(&m)?;
    let a2 = a.scale(&ri(-2));
    let a4 = a.mul(&a).sub(&b.scale(&ri(4)));
    Ok(WModel::new([RatFunc::zero(), a2, RatFunc::zero(), a4, RatFunc::zero()], &m.base))
}

/// Image of a section under [`two_isogeny`]: `(y^2/x^2, y (b - x^2)/x^2)`.
pub fn two_isogeny_point(w: &WModel, p: &Section) -> Result<Section> {
    let m = w.specialized()?;
    let (_, b) = kummer_coeffs(&m)?;
    let p = w.specialize_section(p)?;
    if !m.curve().contains(&p) {
        return Err(Error::OffCurve);
    }
    match &p {
        Section::O => Ok(Section::O),
        Section::A { x, .. } if x.is_zero() => Ok(Section::O),
        Section::A { x, y } => {
            let x2 = x.mul(x);
            Ok(Section::new(y.mul(y).div(&x2)?, y.mul(&b.sub(&x2)).div(&x2)?))
        }
    }
}

/// For `y^2 = x^3 + α v^4 x + v^4 (β v^4 + γ v^2 + δ)` over the base `v`, returns
/// `A^3 = -α^3 / (27 β δ)` and `B^2 = γ^2 / (4 β δ)`.
pub fn inose_ab(w: &WModel) -> Result<(RatFunc, RatFunc)> {
    let m = w.specialized()?;
    let [a1, a2, a3, a4, a6] = &m.a;
    let shape = || Error::Shape("expected y^2 = x^3 + α v^4 x + v^4 (β v^4 + γ v^2 + δ)".into());
    if !(a1.is_zero() && a2.is_zero() && a3.is_zero()) {
        return Err(shape());
    }
    let v = m.base.as_str();
    let v4 = RatFunc::var(v).pow(4)?;
    let alpha = a4.div(&v4)?;
    if alpha.vars().contains(v) {
        return Err(shape());
    }
    let rest = a6.div(&v4)?;
    let p = rest.to_upoly_over(v).map_err(|_| shape())?;
    let c = |k: usize| p.coeff(k);
    if p.degree().is_some_and(|d| d > 4) || !c(1).fis_zero() || !c(3).fis_zero() {
        return Err(shape());
    }
    let (delta, gamma, beta) = (c(0), c(2), c(4));
    let bd = beta.mul(&delta);
    if bd.is_zero() {
        return Err(shape());
    }
    let a3 = alpha.pow(3)?.neg().div(&bd.scale(&ri(27)))?;
    let b2 = gamma.mul(&gamma).div(&bd.scale(&ri(4)))?;
    Ok((a3, b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_expr;
    use crate::elliptic::{invariants, place_decompose, Point};

    fn e(s: &str, vars: &[&str]) -> RatFunc {
        parse_expr(s, vars).unwrap()
    }

    #[test]
    fn twist_changes_fibers() {
        // y^2 = x^3 + x + t^2 twisted by t: the IV* at infinity moves
        let w = WModel::parse_cubic("0", "1", "t^2", &["t"]).unwrap();
        let tw = quadratic_twist(&w, &e("t", &["t"])).unwrap();
        let j0 = invariants(&w).unwrap().j;
        assert_eq!(invariants(&tw).unwrap().j, j0);
        assert_ne!(place_decompose(&tw).unwrap(), place_decompose(&w).unwrap());
        // twisting twice by the same d is isomorphic to the original
        let back = quadratic_twist(&tw, &e("t", &["t"])).unwrap();
        assert_eq!(invariants(&back).unwrap().j, j0);
        assert_eq!(place_decompose(&back).unwrap(), place_decompose(&w).unwrap());
        assert_eq!(quadratic_twist(&w, &e("t^2", &["t"])), Err(Error::NotSquarefree));
    }

    #[test]
    fn base_change_multiplies_valuations() {
        let w = WModel::parse_cubic("-2*t^4 + 4", "t^4*(t^4 - 4)", "0", &["t"]).unwrap();
        let bc = base_change(&w, &e("t^2", &["t"])).unwrap();
        let pv = place_decompose(&bc).unwrap();
        let t0 = pv.iter().find(|p| p.place.to_string() == "t").unwrap();
        assert_eq!(t0.v[2], crate::arith::Valuation::Finite(16));
        assert_eq!(base_change(&w, &e("3", &["t"])), Err(Error::ConstantBaseChange));
    }

    #[test]
    fn two_isogeny_twice_is_doubling() {
        let w = WModel::parse_cubic("t^2", "t^3*(t-2)*(t+1)", "0", &["t"]).unwrap();
        let w2 = two_isogeny(&two_isogeny(&w).unwrap()).unwrap();
        assert_eq!(w2.a[1], w.a[1].scale(&ri(4)));
        assert_eq!(w2.a[3], w.a[3].scale(&ri(16)));
        assert_eq!(invariants(&w2).unwrap().j, invariants(&w).unwrap().j);
        // the isogeny maps points onto the image curve
        let w = WModel::parse_cubic("0", "-1", "0", &["t"]).unwrap();
        let img = two_isogeny(&w).unwrap();
        let p = Point::new(RatFunc::int(-1), RatFunc::zero());
        assert_eq!(two_isogeny_point(&w, &p).unwrap(), Point::new(RatFunc::zero(), RatFunc::zero()));
        assert!(img.curve().contains(&two_isogeny_point(&w, &p).unwrap()));
        let bad = WModel::parse_cubic("0", "1", "t", &["t"]).unwrap();
        assert!(matches!(two_isogeny(&bad), Err(Error::Shape(_))));
    }

    #[test]
    fn inose_data_of_a_simple_model() {
        // α = 1, β = 2, γ = 3, δ = 5
        let w = WModel::parse_cubic("0", "v^4", "v^4*(2*v^4 + 3*v^2 + 5)", &["v"]).unwrap();
        let (a3, b2) = inose_ab(&w).unwrap();
        assert_eq!(a3, RatFunc::from_rat(rq(-1, 270)));
        assert_eq!(b2, RatFunc::from_rat(rq(9, 40)));
        let bad = WModel::parse_cubic("0", "v^4", "v^4*(2*v^4 + v + 5)", &["v"]).unwrap();
        assert!(inose_ab(&bad).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(20))]
        #[test]
        fn two_isogeny_twice_preserves_j(a in proptest::collection::vec(-4i64..=4, 3), b in proptest::collection::vec(-4i64..=4, 3)) {
            let poly = |c: &[i64]| format!("{} + {}*t + {}*t^2", c[0], c[1], c[2]);
            let w = WModel::parse_cubic(&poly(&a), &poly(&b), "0", &["t"]).unwrap();
            proptest::prop_assume!(invariants(&w).is_ok());
            let w1 = two_isogeny(&w).unwrap();
            let w2 = two_isogeny(&w1).unwrap();
            proptest::prop_assert_eq!(invariants(&w2).unwrap().j, invariants(&w).unwrap().j);
            proptest::prop_assert_eq!(place_decompose(&w2).unwrap().len(), place_decompose(&w).unwrap().len());
        }
    }
}
