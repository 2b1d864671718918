//! Weierstrass models over `K(t)` and the elliptic-surface toolkit built on them.

mod curve;
mod kodaira;
mod places;
mod report;
mod section;
mod transforms;

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use crate::arith::{parse_expr, Field, Rat, RatFunc};
use crate::error::{Error, Result};

pub use curve::{CInvariants, Curve, Point};
pub use kodaira::{kodaira_type, Component, FiberType, KodairaFiber};
pub use places::{minimalize, place_decompose, Place, PlaceValuations};
pub use report::{configuration, report, report_with_torsion, FiberEntry, FibrationReport};
pub use section::{
    component_at_place, height, height_pairing, sec_add, sec_mul, sec_neg, sec_o_intersection, ComponentData,
    Section,
};
pub use transforms::{base_change, inose_ab, quadratic_twist, two_isogeny, two_isogeny_point};

/// Weierstrass model with coefficients in `Q(params)(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WModel {
    /// `[a1, a2, a3, a4, a6]`.
    pub a: [RatFunc; 5],
    /// Name of the base coordinate.
    pub base: String,
    /// Parameter values to substitute before any analysis.
    pub specialize: BTreeMap<String, Rat>,
}

/// `c4`, `c6`, `Δ` and `j` of a model.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants {
    pub c4: RatFunc,
    pub c6: RatFunc,
    pub disc: RatFunc,
    pub j: RatFunc,
}

#[derive(Deserialize)]
struct ModelFile {
    #[serde(default)]
    a1: Option<String>,
    #[serde(default)]
    a2: Option<String>,
    #[serde(default)]
    a3: Option<String>,
    #[serde(default)]
    a4: Option<String>,
    #[serde(default)]
    a6: Option<String>,
    vars: Vec<String>,
    #[serde(default)]
    base: Option<String>,
    #[serde(default)]
    chi: Option<u32>,
    #[serde(default)]
    specialize: BTreeMap<String, String>,
    #[serde(default)]
    torsion: Vec<[String; 2]>,
}

/// A model file: the model itself plus the declared data that travels with it.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub model: WModel,
    pub chi: Option<u32>,
    pub torsion: Vec<Section>,
    pub vars: Vec<String>,
}

impl WModel {
    pub fn new(a: [RatFunc; 5], base: &str) -> Self {
        WModel { a, base: base.to_string(), specialize: BTreeMap::new() }
    }

    /// Parses `[a1, a2, a3, a4, a6]`; empty strings mean zero. The first variable is the base.
    pub fn parse(a: [&str; 5], vars: &[&str]) -> Result<Self> {
        let base = vars.first().ok_or_else(|| Error::Input("no base variable".into()))?;
        let mut out = Vec::with_capacity(5);
        for s in a {
            out.push(if s.trim().is_empty() { RatFunc::zero() } else { parse_expr(s, vars)? });
        }
        let a: [RatFunc; 5] = out.try_into().expect("five coefficients");
        Ok(Self::new(a, base))
    }

    /// `y^2 = x^3 + a2 x^2 + a4 x + a6`.
    pub fn parse_cubic(a2: &str, a4: &str, a6: &str, vars: &[&str]) -> Result<Self> {
        Self::parse(["", a2, "", a4, a6], vars)
    }

    pub fn with_specialization(mut self, vals: BTreeMap<String, Rat>) -> Self {
        self.specialize.extend(vals);
        self
    }

    /// Reads the documented JSON model format.
    pub fn from_json(v: &serde_json::Value) -> Result<ModelSpec> {
        let f: ModelFile = serde_json::from_value(v.clone()).map_err(|e| Error::Input(e.to_string()))?;
        let mut vars: Vec<String> = f.vars.clone();
        if let Some(b) = &f.base {
            vars.retain(|v| v != b);
            vars.insert(0, b.clone());
        }
        let vr: Vec<&str> = vars.iter().map(String::as_str).collect();
        let get = |s: &Option<String>| s.clone().unwrap_or_default();
        let mut m = WModel::parse([&get(&f.a1), &get(&f.a2), &get(&f.a3), &get(&f.a4), &get(&f.a6)], &vr)?;
        for (k, val) in &f.specialize {
            let r = parse_expr(val, &[])?.as_constant().ok_or_else(|| Error::Input(format!("{k} = {val}")))?;
            m.specialize.insert(k.clone(), r);
        }
        let torsion = f
            .torsion
            .iter()
            .map(|[x, y]| Ok(Point::new(parse_expr(x, &vr)?, parse_expr(y, &vr)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModelSpec { model: m, chi: f.chi, torsion, vars })
    }

    pub fn curve(&self) -> Curve<RatFunc> {
        Curve::new(self.a.clone())
    }

    /// Model with the declared specialization substituted.
    pub fn specialized(&self) -> Result<WModel> {
        if self.specialize.is_empty() {
            return Ok(self.clone());
        }
        let mut a = self.a.clone();
        for c in a.iter_mut() {
            *c = c.eval_partial(&self.specialize)?;
        }
        Ok(WModel { a, base: self.base.clone(), specialize: BTreeMap::new() })
    }

    /// Variables other than the base that occur in the coefficients.
    pub fn params(&self) -> BTreeSet<String> {
        let mut s: BTreeSet<String> = self.a.iter().flat_map(RatFunc::vars).collect();
        s.remove(&self.base);
        for k in self.specialize.keys() {
            s.remove(k);
        }
        s
    }

    /// Specializes a section along with the model.
    pub fn specialize_section(&self, p: &Section) -> Result<Section> {
        if self.specialize.is_empty() {
            return Ok(p.clone());
        }
        p.map(|c| c.eval_partial(&self.specialize))
    }

    /// Value of the model at `base = t0` (and the declared specialization).
    pub fn fiber_at(&self, t0: &Rat) -> Result<Curve<Rat>> {
        let mut vals = self.specialize.clone();
        vals.insert(self.base.clone(), t0.clone());
        self.curve().map(|c| c.eval_rat(&vals))
    }

    pub fn is_zero_coeff(&self, i: usize) -> bool {
        self.a[i].fis_zero()
    }
}

/// `c4, c6, Δ = (c4^3 - c6^2)/1728` and `j = c4^3/Δ`.
pub fn invariants(w: &WModel) -> Result<Invariants> {
    let w = w.specialized()?;
    let inv = w.curve().invariants();
    if inv.disc.fis_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let j = inv.c4.pow(3)?.div(&inv.disc)?;
    Ok(Invariants { c4: inv.c4, c6: inv.c6, disc: inv.disc, j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ri;

    #[test]
    fn discriminant_examples() {
        let w = WModel::parse_cubic("-2*t^4 + 4", "t^4*(t^4 - 4)", "0", &["t"]).unwrap();
        let inv = invariants(&w).unwrap();
        assert_eq!(inv.disc, parse_expr("256*t^8*(t^4-4)^2", &["t"]).unwrap());
        let w = WModel::parse_cubic("0", "0", "1", &["t"]).unwrap();
        let inv = invariants(&w).unwrap();
        assert_eq!(inv.disc, RatFunc::int(-432));
        assert_eq!(inv.j, RatFunc::zero());
        let w = WModel::parse_cubic("0", "1", "0", &["t"]).unwrap();
        assert_eq!(invariants(&w).unwrap().j, RatFunc::int(1728));
        let w = WModel::parse_cubic("1", "0", "0", &["t"]).unwrap();
        assert_eq!(invariants(&w), Err(Error::ZeroDiscriminant));
    }

    #[test]
    fn c_identity_holds_symbolically() {
        let w = WModel::parse(["a", "t^2", "b*t", "t^3 - a", "t^5 + b"], &["t", "a", "b"]).unwrap();
        let inv = invariants(&w).unwrap();
        let lhs = inv.c4.pow(3).unwrap().sub(&inv.c6.pow(2).unwrap());
        assert_eq!(lhs, inv.disc.scale(&ri(1728)));
    }

    #[test]
    fn json_model() {
        let v = serde_json::json!({
            "a2": "t^2", "a4": "t^3*(t-a)*(t-b)", "vars": ["t", "a", "b"], "chi": 2,
            "specialize": {"a": "3", "b": "-1/2"}, "torsion": [["0", "0"]]
        });
        let spec = WModel::from_json(&v).unwrap();
        assert_eq!(spec.chi, Some(2));
        assert_eq!(spec.torsion.len(), 1);
        let m = spec.model.specialized().unwrap();
        assert!(m.params().is_empty());
        assert_eq!(m.a[3], parse_expr("t^3*(t-3)*(t+1/2)", &["t"]).unwrap());
    }
}
