//! Shared helpers: parameter draws, models with parameters, sections from an x-coordinate.

use std::collections::BTreeMap;

use rand::Rng;
use serde_json::{json, Map, Value};

use super::Ctx;
use crate::arith::{parse_expr, parse_poly, ratfunc_sqrt, Rat, RatFunc};
use crate::elliptic::{
    component_at_place, report, sec_add, sec_neg, sec_o_intersection, Component, ComponentData, FiberType, FibrationReport, Place, Point, Section,
    WModel,
};
use crate::error::{Error, Result};
use crate::ns::{frame_from_fibration, FibrationData, NSFrame};

/// `k` distinct integers from `lo..=hi` avoiding `avoid`.
pub fn draw_distinct(ctx: &mut Ctx, k: usize, lo: i64, hi: i64, avoid: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = vec![];
    while out.len() < k {
        let v = ctx.rng.gen_range(lo..=hi);
        if !avoid.contains(&v) && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

pub fn vals(pairs: &[(&str, Rat)]) -> BTreeMap<String, Rat> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` over the first of `vars`, parameters set from `at`.
pub fn cubic(a2: &str, a4: &str, a6: &str, vars: &[&str], at: &[(&str, Rat)]) -> Result<WModel> {
    WModel::parse_cubic(a2, a4, a6, vars)?.with_specialization(vals(at)).specialized()
}

pub fn expr(text: &str, vars: &[&str]) -> Result<RatFunc> {
    parse_expr(text, vars)
}

/// Point with the given x-coordinate on a model with `a1 = a3 = 0`, `y` from the exact square
/// root of the right-hand side.
pub fn section_from_x(w: &WModel, x: &RatFunc) -> Result<Section> {
    let rhs = w.curve().residual(x, &RatFunc::zero()).neg();
    let y = ratfunc_sqrt(&rhs).ok_or_else(|| Error::Input("x-coordinate does not give a rational point".into()))?;
    Ok(Point::A { x: x.clone(), y })
}

pub fn two_torsion(x: RatFunc) -> Section {
    Point::A { x, y: RatFunc::zero() }
}

/// Number of fibers of a given printed type, counted with place degree.
pub fn count(rep: &FibrationReport, kind: &str) -> usize {
    rep.fibers.iter().filter(|f| f.kind.to_string() == kind).map(|f| f.degree).sum()
}

/// Places carrying fibers of the given type.
pub fn places_of(rep: &FibrationReport, kind: &str) -> Vec<String> {
    rep.fibers.iter().filter(|f| f.kind.to_string() == kind).map(|f| f.place.clone()).collect()
}

/// Reducible fiber of a model as placed in a frame built by [`frame_from_model`].
pub struct PlacedFiber {
    pub place: String,
    pub kind: FiberType,
    pub prefix: String,
}

fn component_index(kind: FiberType, c: Component) -> Result<usize> {
    Ok(match (kind, c) {
        (_, Component::Identity) => 0,
        (_, Component::Index(i)) => i as usize,
        (FiberType::IIIStar, Component::NonIdentity) => 6,
        (FiberType::III, Component::NonIdentity) => 1,
        (FiberType::IStar(_), Component::Near) => 1,
        (FiberType::IStar(_), Component::Far) => 2,
        _ => return Err(Error::Input(format!("component {c} of {kind} is not determined by the model"))),
    })
}

fn place_of(text: &str, base: &str) -> Result<Place> {
    if text == "inf" {
        return Ok(Place::infinity());
    }
    Place::from_poly(&parse_poly(text, &[base])?, base)
}

/// Frame of a model from its reducible fibers (prefixes `A`, `B`, ... in report order, one per
/// geometric fiber) and the given sections, with intersection numbers read off the model:
/// `S·O` directly and `S·T = (S - T)·O`.
pub fn frame_from_model(w: &WModel, sections: &[(&str, Section)], data: &ComponentData) -> Result<(NSFrame, Vec<PlacedFiber>)> {
    let rep = report(w)?;
    let mut fibers = vec![];
    let mut placed: Vec<(Place, Vec<usize>)> = vec![];
    for f in rep.fibers.iter().filter(|f| f.kind.components() >= 2) {
        let mut idx = vec![];
        for _ in 0..f.degree {
            let prefix = ((b'A' + fibers.len() as u8) as char).to_string();
            idx.push(fibers.len());
            fibers.push(PlacedFiber { place: f.place.clone(), kind: f.kind, prefix });
        }
        placed.push((place_of(&f.place, &w.base)?, idx));
    }
    let mut secs = vec![];
    for (i, (label, s)) in sections.iter().enumerate() {
        let mut meets = Map::new();
        for (place, idx) in &placed {
            let mut slots = idx.iter();
            for (d, comp) in component_at_place(w, s, place, data)? {
                for _ in 0..d {
                    let k = *slots.next().ok_or_else(|| Error::Input("component pieces exceed the place degree".into()))?;
                    let c = component_index(fibers[k].kind, comp)?;
                    if c != 0 {
                        meets.insert(fibers[k].prefix.clone(), json!(c));
                    }
                }
            }
        }
        let mut inter = Map::new();
        for (other, t) in &sections[..i] {
            let diff = sec_add(w, s, &sec_neg(w, t)?)?;
            let st = if diff.is_o() { return Err(Error::Input(format!("{label} equals {other}"))) } else { sec_o_intersection(w, &diff)? };
            inter.insert(other.to_string(), json!(st));
        }
        secs.push(json!({"label": label, "PO": sec_o_intersection(w, s)?, "meets": meets, "intersections": inter}));
    }
    let fj: Vec<Value> = fibers
        .iter()
        .map(|f| json!({"type": f.kind.to_string(), "components": f.kind.components(), "prefix": f.prefix, "id": f.prefix}))
        .collect();
    let frame = frame_from_fibration(&FibrationData::from_json(&json!({"fibers": fj, "sections": secs, "chi": rep.chi}))?)?;
    Ok((frame, fibers))
}
