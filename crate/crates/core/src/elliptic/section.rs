//! Sections: group law, intersection with the zero section, components met and heights.

use std::collections::BTreeMap;

use super::places::{decompose, deg};
use super::{kodaira_type, Component, FiberType, KodairaFiber, Place, Point, WModel};
use crate::arith::{gcd_in, ri, squarefree_in, substitute, MPoly, Rat, RatFunc};
use crate::error::{Error, Result};

/// A point of the generic fiber.
pub type Section = Point<RatFunc>;

/// Components that cannot be read off the coordinates (`I_n*`, `n >= 1`), keyed by [`Place::key`].
pub type ComponentData = BTreeMap<String, Component>;

fn spec(w: &WModel, p: &Section) -> Result<(WModel, Section)> {
    Ok((w.specialized()?, w.specialize_section(p)?))
}

pub fn sec_add(w: &WModel, p: &Section, q: &Section) -> Result<Section> {
    let (m, p) = spec(w, p)?;
    let q = w.specialize_section(q)?;
    m.curve().add(&p, &q)
}

pub fn sec_neg(w: &WModel, p: &Section) -> Result<Section> {
    let (m, p) = spec(w, p)?;
    m.curve().neg(&p)
}

pub fn sec_mul(w: &WModel, n: i64, p: &Section) -> Result<Section> {
    let (m, p) = spec(w, p)?;
    m.curve().mul(n, &p)
}

/// Model data needed for local computations: `h` and the singular fibers with their place polynomials.
struct Local {
    h: u32,
    fibers: Vec<(Place, KodairaFiber)>,
    infinity: KodairaFiber,
}

fn local(m: &WModel) -> Result<Local> {
    let dec = decompose(m)?;
    let t = m.base.as_str();
    for (i, wt) in [1u32, 2, 3, 4, 6].into_iter().enumerate() {
        let c = &m.a[i];
        if c.den().degree_in(t) > 0 || c.degree_in(t) > i64::from(wt * dec.h) {
            return Err(Error::Shape(format!("a{wt} is not a polynomial of degree <= {} in {t}", wt * dec.h)));
        }
    }
    let mut fibers = vec![];
    for (place, v) in dec.places {
        fibers.push((place, kodaira_type(v[0], v[1], v[2])?));
    }
    let [a, b, d] = dec.infinity;
    let infinity = kodaira_type(a, b, d)?;
    Ok(Local { h: dec.h, fibers, infinity })
}

/// `P·O`: half the pole order of `x`, summed over finite places and `∞`.
fn o_intersection(m: &WModel, h: u32, p: &Section) -> Result<u32> {
    let Point::A { x, .. } = p else {
        return Err(Error::Input("P·O is undefined for the zero section".into()));
    };
    let t = m.base.as_str();
    let (xn, xd) = (x.num(), x.den());
    let mut total = 0u32;
    for (f, k) in squarefree_in(xd, t)? {
        if k % 2 == 1 {
            return Err(Error::OffCurve);
        }
        total += k / 2 * f.degree_in(t);
    }
    if xn.is_zero() {
        return Ok(total);
    }
    let excess = i64::from(xn.degree_in(t)) - i64::from(xd.degree_in(t)) - 2 * i64::from(h);
    if excess > 0 {
        if excess % 2 == 1 {
            return Err(Error::OffCurve);
        }
        total += (excess / 2) as u32;
    }
    Ok(total)
}

/// Components met along the place `r`, as `(degree, component)` pieces covering `r`.
fn components_along(
    m: &WModel,
    r: &MPoly,
    fiber: &KodairaFiber,
    p: &Section,
    key: &str,
    data: &ComponentData,
) -> Result<Vec<(usize, Component)>> {
    let t = m.base.as_str();
    let deg = |q: &MPoly| deg(q, t);
    let Point::A { x, y } = p else {
        return Ok(vec![(deg(r), Component::Identity)]);
    };
    let mut out = vec![];
    let at_o = gcd_in(r, x.den(), t);
    let mut rest = r.clone();
    if deg(&at_o) > 0 {
        out.push((deg(&at_o), Component::Identity));
        rest = rest.div_exact(&at_o).expect("gcd divides");
    }
    if deg(&rest) == 0 {
        return Ok(out);
    }
    if matches!(fiber.kind, FiberType::I(0) | FiberType::I(1) | FiberType::II | FiberType::IIStar) {
        out.push((deg(&rest), Component::Identity));
        return Ok(out);
    }
    let c = m.curve();
    let [a1, a2, _, a4, _] = &c.a;
    let psi = c.psi2(x, y);
    let fx = x.mul(x).scale(&ri(3)).add(&a2.mul(x).scale(&ri(2))).add(a4).sub(&a1.mul(y));
    let psi_n = psi.num();
    let fx_n = fx.num();
    let sing = gcd_in(&rest, &gcd_in(psi_n, fx_n, t), t);
    let smooth = rest.div_exact(&sing).expect("gcd divides");
    if deg(&smooth) > 0 {
        out.push((deg(&smooth), Component::Identity));
    }
    if deg(&sing) == 0 {
        return Ok(out);
    }
    match fiber.kind {
        FiberType::I(n) => {
            let half = n / 2;
            if psi_n.is_zero() {
                out.push((deg(&sing), Component::Index(half)));
                return Ok(out);
            }
            let mut left = sing;
            for (f, k) in squarefree_in(psi_n, t)? {
                let g = gcd_in(&left, &f, t);
                if deg(&g) > 0 {
                    out.push((deg(&g), Component::Index(k.min(half))));
                    left = left.div_exact(&g).expect("gcd divides");
                }
            }
            if deg(&left) > 0 {
                return Err(Error::Shape(format!("psi2 does not vanish along {left}")));
            }
        }
        FiberType::III | FiberType::IV | FiberType::IVStar | FiberType::IIIStar | FiberType::IStar(0) => {
            out.push((deg(&sing), Component::NonIdentity));
        }
        FiberType::IStar(_) => match data.get(key) {
            Some(c @ (Component::Near | Component::Far)) => out.push((deg(&sing), *c)),
            _ => return Err(Error::MissingComponent(format!("{key} ({})", fiber.kind))),
        },
        _ => unreachable!("irreducible fibers handled above"),
    }
    Ok(out)
}

/// Model and section in the chart `s = 1/t`, where `∞` becomes `s = 0`.
fn infinity_chart(m: &WModel, h: u32, p: &Section) -> Result<(WModel, Section)> {
    let t = m.base.as_str();
    let inv_t = BTreeMap::from([(t.to_string(), RatFunc::var(t).inv()?)]);
    let flip = |f: &RatFunc, w: u32| -> Result<RatFunc> {
        Ok(substitute(f, &inv_t)?.mul(&RatFunc::var(t).pow((w * h) as i32)?))
    };
    let mut a = m.a.clone();
    for (c, wt) in a.iter_mut().zip([1, 2, 3, 4, 6]) {
        *c = flip(c, wt)?;
    }
    let q = match p {
        Point::O => Point::O,
        Point::A { x, y } => Point::new(flip(x, 2)?, flip(y, 3)?),
    };
    Ok((WModel::new(a, t), q))
}

struct SectionData {
    h: u32,
    po: u32,
    /// `(place key, degree, fiber, component)` for every singular place.
    comps: Vec<(String, usize, KodairaFiber, Component)>,
}

fn analyse(m: &WModel, p: &Section, data: &ComponentData) -> Result<SectionData> {
    if !m.curve().contains(p) {
        return Err(Error::OffCurve);
    }
    let loc = local(m)?;
    let po = if p.is_o() { 0 } else { o_intersection(m, loc.h, p)? };
    let mut comps = vec![];
    for (place, fiber) in &loc.fibers {
        let r = place.poly.as_ref().expect("finite place");
        for (d, c) in components_along(m, r, fiber, p, &place.key(), data)? {
            comps.push((place.key(), d, fiber.clone(), c));
        }
    }
    if loc.infinity.kind != FiberType::I(0) {
        let (mi, pi) = infinity_chart(m, loc.h, p)?;
        let s = MPoly::var(&m.base);
        let key = Place::infinity().key();
        for (d, c) in components_along(&mi, &s, &loc.infinity, &pi, &key, data)? {
            comps.push((key.clone(), d, loc.infinity.clone(), c));
        }
    }
    Ok(SectionData { h: loc.h, po, comps })
}

fn section_data(w: &WModel, p: &Section, data: &ComponentData) -> Result<SectionData> {
    let (m, p) = spec(w, p)?;
    analyse(&m, &p, data)
}

/// `P·O` on a minimal integral model.
pub fn sec_o_intersection(w: &WModel, p: &Section) -> Result<u32> {
    Ok(section_data(w, p, &ComponentData::new())?.po)
}

/// Components met by `P` at `place`, as `(degree, component)` pieces whose degrees sum to the place degree.
pub fn component_at_place(w: &WModel, p: &Section, place: &Place, data: &ComponentData) -> Result<Vec<(usize, Component)>> {
    let sd = section_data(w, p, data)?;
    let key = place.key();
    let found: Vec<(usize, Component)> = sd.comps.iter().filter(|c| c.0 == key).map(|c| (c.1, c.3)).collect();
    if found.is_empty() {
        // smooth fibers only meet the identity component
        return Ok(vec![(place.degree, Component::Identity)]);
    }
    Ok(found)
}

/// Height `2χ + 2 P·O - Σ contr`.
pub fn height(w: &WModel, p: &Section, data: &ComponentData) -> Result<Rat> {
    if p.is_o() {
        return Ok(ri(0));
    }
    let sd = section_data(w, p, data)?;
    let mut hgt = ri(2 * i64::from(sd.h) + 2 * i64::from(sd.po));
    for (_, d, fiber, c) in &sd.comps {
        hgt -= fiber.contribution(*c)? * ri(*d as i64);
    }
    Ok(hgt)
}

/// Height pairing by polarization of [`height`].
pub fn height_pairing(w: &WModel, p: &Section, q: &Section, data: &ComponentData) -> Result<Rat> {
    let s = sec_add(w, p, q)?;
    let v = height(w, &s, data)? - height(w, p, data)? - height(w, q, data)?;
    Ok(v / ri(2))
}
