//! Place classes of a model, valuation triples and global minimalization.
//!
//! Polynomials in the base variable live in `Q[t, params]` and are handled as elements of
//! `Q(params)[t]`, so parametric families need no special treatment.

use std::fmt;

use serde::Serialize;

use super::{invariants, Invariants, WModel};
use crate::arith::{gcd_in, primitive_in, squarefree_in, valuation_in, MPoly, Rat, RatFunc, Valuation};
use crate::error::{Error, Result};

/// `f` as a polynomial in `t` over `Q(params)`: the numerator, after checking the
/// denominator is free of `t`.
pub(crate) fn poly_in_base(f: &RatFunc, t: &str) -> Result<MPoly> {
    if f.den().degree_in(t) > 0 {
        return Err(Error::NotPolynomial(format!("{f} in {t}")));
    }
    Ok(f.num().clone())
}

pub(crate) fn deg(p: &MPoly, t: &str) -> usize {
    p.degree_in(t) as usize
}

/// Pairwise coprime primitive polynomials of positive degree in `t` such that every
/// input has constant multiplicity along each of them.
pub(crate) fn coprime_basis(polys: &[MPoly], t: &str) -> Result<Vec<MPoly>> {
    let mut basis: Vec<MPoly> = vec![];
    for p in polys {
        if p.is_zero() || p.degree_in(t) == 0 {
            continue;
        }
        for (f, _) in squarefree_in(p, t)? {
            let mut rest = f;
            let mut next = Vec::with_capacity(basis.len() + 2);
            for b in basis {
                if rest.degree_in(t) == 0 {
                    next.push(b);
                    continue;
                }
                let g = gcd_in(&b, &rest, t);
                if g.degree_in(t) == 0 {
                    next.push(b);
                    continue;
                }
                let bq = b.div_exact(&g).expect("gcd divides");
                if bq.degree_in(t) > 0 {
                    next.push(primitive_in(&bq, t));
                }
                next.push(g.clone());
                rest = rest.div_exact(&g).expect("gcd divides");
            }
            if rest.degree_in(t) > 0 {
                next.push(primitive_in(&rest, t));
            }
            basis = next;
        }
    }
    Ok(basis)
}

/// Signed valuation of `n/d` along `f`; `None` for zero.
fn signed_val(n: &MPoly, d: &MPoly, f: &MPoly, t: &str) -> Result<Option<i64>> {
    match valuation_in(n, f, t)? {
        Valuation::Infinite => Ok(None),
        Valuation::Finite(a) => {
            let b = valuation_in(d, f, t)?.finite().expect("nonzero denominator");
            Ok(Some(i64::from(a) - i64::from(b)))
        }
    }
}

/// A class of geometric places: a primitive squarefree polynomial in the base variable, or `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    /// `None` stands for the point at infinity.
    pub poly: Option<MPoly>,
    pub degree: usize,
}

impl Place {
    pub fn infinity() -> Self {
        Place { poly: None, degree: 1 }
    }

    pub fn finite(p: MPoly, degree: usize) -> Self {
        Place { poly: Some(p), degree }
    }

    /// Normalized place class of a polynomial in `t`.
    pub fn from_poly(p: &MPoly, t: &str) -> Result<Self> {
        if p.degree_in(t) == 0 {
            return Err(Error::ConstantPlace);
        }
        let q = primitive_in(p, t);
        let d = deg(&q, t);
        Ok(Place::finite(q, d))
    }

    pub fn is_infinity(&self) -> bool {
        self.poly.is_none()
    }

    /// Stable key used in component tables: the printed polynomial or `inf`.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.poly {
            None => f.write_str("inf"),
            Some(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A place class with `(v(c4), v(c6), v(Δ))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceValuations {
    pub place: Place,
    pub v: [Valuation; 3],
}

fn minimalize_inner(w: &WModel, inv: &Invariants) -> Result<WModel> {
    let t = w.base.as_str();
    let (n4, d4) = (inv.c4.num(), inv.c4.den());
    let (n6, d6) = (inv.c6.num(), inv.c6.den());
    let basis = coprime_basis(&[n4.clone(), d4.clone(), n6.clone(), d6.clone()], t)?;
    // x = s^-2 x' scales c4 by s^4 and c6 by s^6
    let mut s_num = MPoly::one();
    let mut s_den = MPoly::one();
    for p in &basis {
        let k4 = signed_val(n4, d4, p, t)?.map(|v| v.div_euclid(4));
        let k6 = signed_val(n6, d6, p, t)?.map(|v| v.div_euclid(6));
        let k = match (k4, k6) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Err(Error::ZeroDiscriminant),
        };
        if k > 0 {
            s_den = s_den.mul(&p.pow(k as u32));
        } else if k < 0 {
            s_num = s_num.mul(&p.pow((-k) as u32));
        }
    }
    let integral = |a: &[RatFunc; 5]| a.iter().all(|c| c.den().degree_in(t) == 0);
    if s_num.is_one() && s_den.is_one() && integral(&w.a) {
        return Ok(w.clone());
    }
    let s = RatFunc::new(s_num, s_den)?;
    let mut a = w.a.clone();
    for (c, wt) in a.iter_mut().zip([1, 2, 3, 4, 6]) {
        *c = c.mul(&s.pow(wt)?);
    }
    if !integral(&a) {
        let c4 = inv.c4.mul(&s.pow(4)?);
        let c6 = inv.c6.mul(&s.pow(6)?);
        a = [
            RatFunc::zero(),
            RatFunc::zero(),
            RatFunc::zero(),
            c4.scale(&Rat::new((-1).into(), 48.into())),
            c6.scale(&Rat::new((-1).into(), 864.into())),
        ];
    }
    Ok(WModel::new(a, &w.base))
}

/// Globally minimal model with the same `j`.
///
/// Keeps the coefficient shape whenever the rescaled coefficients stay polynomial,
/// and falls back to the short model built from `c4, c6` otherwise.
pub fn minimalize(w: &WModel) -> Result<WModel> {
    let w = w.specialized()?;
    let inv = invariants(&w)?;
    minimalize_inner(&w, &inv)
}

/// Smallest `h` with `deg c4 <= 4h`, `deg c6 <= 6h`, `deg Δ <= 12h`.
pub(crate) fn height_weight(c4: &MPoly, c6: &MPoly, d: &MPoly, t: &str) -> u32 {
    let need = |p: &MPoly, w: usize| if p.is_zero() { 0 } else { deg(p, t).div_ceil(w) };
    need(c4, 4).max(need(c6, 6)).max(need(d, 12)) as u32
}

pub(crate) struct Decomposition {
    pub h: u32,
    /// `(place, (v(c4), v(c6), v(Δ)))` for finite places with `v(Δ) > 0`.
    pub places: Vec<(Place, [Valuation; 3])>,
    pub infinity: [Valuation; 3],
}

pub(crate) fn decompose(w: &WModel) -> Result<Decomposition> {
    let t = w.base.as_str();
    let inv = invariants(w)?;
    let c4 = poly_in_base(&inv.c4, t)?;
    let c6 = poly_in_base(&inv.c6, t)?;
    let d = poly_in_base(&inv.disc, t)?;
    let h = height_weight(&c4, &c6, &d, t);
    let mut places = vec![];
    for p in coprime_basis(&[d.clone(), c4.clone(), c6.clone()], t)? {
        let vd = valuation_in(&d, &p, t)?;
        if vd == Valuation::Finite(0) {
            continue;
        }
        let v = [valuation_in(&c4, &p, t)?, valuation_in(&c6, &p, t)?, vd];
        for (q, val) in [(&c4, v[0]), (&c6, v[1]), (&d, v[2])] {
            if let Valuation::Finite(k) = val {
                let cof = q.div_exact(&p.pow(k)).expect("valuation divides");
                if gcd_in(&cof, &p, t).degree_in(t) > 0 {
                    return Err(Error::Shape(format!("valuation varies along {p}")));
                }
            }
        }
        let dg = deg(&p, t);
        places.push((Place::finite(p, dg), v));
    }
    places.sort_by_key(|a| (a.0.degree, a.0.to_string()));
    let at_inf = |p: &MPoly, wt: u32| {
        if p.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(wt * h - p.degree_in(t))
        }
    };
    let infinity = [at_inf(&c4, 4), at_inf(&c6, 6), at_inf(&d, 12)];
    Ok(Decomposition { h, places, infinity })
}

/// Place classes covering the zeros of `Δ` (and `∞` when singular), on the minimal model.
pub fn place_decompose(w: &WModel) -> Result<Vec<PlaceValuations>> {
    let m = minimalize(w)?;
    let dec = decompose(&m)?;
    let mut out: Vec<PlaceValuations> = dec.places.into_iter().map(|(place, v)| PlaceValuations { place, v }).collect();
    if dec.infinity[2] != Valuation::Finite(0) {
        out.push(PlaceValuations { place: Place::infinity(), v: dec.infinity });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_expr, parse_poly};
    use Valuation::Finite as F;

    fn ii() -> WModel {
        WModel::parse_cubic("-2*t^4 + 4", "t^4*(t^4 - 4)", "0", &["t"]).unwrap()
    }

    #[test]
    fn decomposition_of_the_rigid_kummer_model() {
        let pv = place_decompose(&ii()).unwrap();
        let got: Vec<(String, [Valuation; 3])> = pv.iter().map(|p| (p.place.to_string(), p.v)).collect();
        assert_eq!(
            got,
            vec![
                ("t".to_string(), [F(0), F(0), F(8)]),
                ("t^4 - 4".to_string(), [F(0), F(0), F(2)]),
                ("inf".to_string(), [F(0), F(0), F(8)]),
            ]
        );
    }

    #[test]
    fn cusp_place() {
        let w = WModel::parse_cubic("0", "0", "t", &["t"]).unwrap();
        let pv = place_decompose(&w).unwrap();
        assert_eq!(pv[0].place.to_string(), "t");
        assert_eq!(pv[0].v, [Valuation::Infinite, F(1), F(2)]);
    }

    #[test]
    fn minimalization() {
        let w = WModel::parse_cubic("0", "t^4", "t^6", &["t"]).unwrap();
        let m = minimalize(&w).unwrap();
        assert_eq!(m.a[3], RatFunc::int(1));
        assert_eq!(m.a[4], RatFunc::int(1));
        // idempotent on minimal models
        assert_eq!(minimalize(&ii()).unwrap(), ii());
        assert_eq!(minimalize(&m).unwrap(), m);
        // denominators are cleared
        let w = WModel::parse_cubic("0", "1/t^4", "1/t^6 + 1", &["t"]).unwrap();
        let m = minimalize(&w).unwrap();
        assert_eq!(m.a[3], RatFunc::int(1));
        assert_eq!(m.a[4], parse_expr("1 + t^6", &["t"]).unwrap());
    }

    #[test]
    fn symbolic_parameters() {
        // y^2 = x(x^2 + t^2 x + t^3 (t-a)(t-b)) with a, b free
        let w = WModel::parse_cubic("t^2", "t^3*(t-a)*(t-b)", "0", &["t", "a", "b"]).unwrap();
        let pv = place_decompose(&w).unwrap();
        let names: Vec<String> = pv.iter().map(|p| p.place.to_string()).collect();
        assert!(names.contains(&"t".to_string()));
        assert!(names.contains(&"inf".to_string()));
        let t0 = pv.iter().find(|p| p.place.to_string() == "t").unwrap();
        assert_eq!(t0.v, [F(3), F(5), F(9)]);
    }

    #[test]
    fn coprime_basis_splits_overlaps() {
        let p = |s: &str| parse_poly(s, &["t"]).unwrap();
        let b = coprime_basis(&[p("t^2*(t-1)"), p("(t-1)*(t+1)^3")], "t").unwrap();
        let mut names: Vec<String> = b.iter().map(|q| q.to_string()).collect();
        names.sort();
        assert_eq!(names, vec!["t", "t + 1", "t - 1"]);
    }
}
