//! Fibration summary: singular fibers, Euler number, trivial lattice and torsion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::places::decompose;
use super::{invariants, kodaira_type, minimalize, FiberType, Point, Section, WModel};
use crate::arith::{RatFunc, Valuation};
use crate::error::{Error, Result};
use crate::lattice::{direct_sum, GramLattice};

const TORSION_BOUND: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberEntry {
    #[serde(rename = "poly")]
    pub place: String,
    pub degree: usize,
    /// `(v(c4), v(c6), v(Δ))`; `None` marks a vanishing invariant.
    #[serde(rename = "vtriple")]
    pub valuations: [Option<u32>; 3],
    #[serde(rename = "type")]
    pub kind: FiberType,
    pub euler: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FibrationReport {
    pub chi: u32,
    /// Minimal model coefficients `[a1, a2, a3, a4, a6]`.
    pub model: [String; 5],
    pub j: String,
    #[serde(rename = "places")]
    pub fibers: Vec<FiberEntry>,
    pub euler: u32,
    pub configuration: String,
    pub trivial_lattice: GramLattice,
    pub trivial_rank: usize,
    pub trivial_det: BigInt,
    /// Invariant factors of the torsion group found from the supplied sections.
    pub torsion: Vec<u32>,
    pub torsion_order: u32,
    /// `|tors|^2` divides `|det Triv|`.
    pub torsion_consistent: bool,
}

fn kind_rank(k: FiberType) -> u32 {
    match k {
        FiberType::IIStar => 0,
        FiberType::IIIStar => 1,
        FiberType::IVStar => 2,
        FiberType::IStar(_) => 3,
        FiberType::I(_) => 4,
        FiberType::IV => 5,
        FiberType::III => 6,
        FiberType::II => 7,
    }
}

/// `2I8+4I2`-style summary, larger Euler numbers first.
pub fn configuration(fibers: &[(FiberType, usize)]) -> String {
    let mut counts: Vec<(FiberType, usize)> = vec![];
    for &(k, d) in fibers {
        match counts.iter_mut().find(|(k2, _)| *k2 == k) {
            Some(c) => c.1 += d,
            None => counts.push((k, d)),
        }
    }
    counts.sort_by_key(|&(k, _)| (std::cmp::Reverse(k.euler()), kind_rank(k)));
    counts
        .iter()
        .map(|(k, c)| if *c == 1 { k.to_string() } else { format!("{c}{k}") })
        .collect::<Vec<_>>()
        .join("+")
}

fn opt(v: Valuation) -> Option<u32> {
    v.finite()
}

fn fibers_of(m: &WModel) -> Result<(u32, Vec<FiberEntry>)> {
    let dec = decompose(m)?;
    let mut out = vec![];
    for (place, v) in dec.places {
        let f = kodaira_type(v[0], v[1], v[2])?;
        out.push(FiberEntry {
            place: place.key(),
            degree: place.degree,
            valuations: v.map(opt),
            kind: f.kind,
            euler: f.euler,
        });
    }
    let [a, b, d] = dec.infinity;
    if d != Valuation::Finite(0) {
        let f = kodaira_type(a, b, d)?;
        out.push(FiberEntry {
            place: "inf".into(),
            degree: 1,
            valuations: dec.infinity.map(opt),
            kind: f.kind,
            euler: f.euler,
        });
    }
    Ok((dec.h, out))
}

/// Closure of the subgroup generated by `gens`, or an error past the search bound.
fn torsion_group(w: &WModel, gens: &[Section]) -> Result<Vec<Section>> {
    let c = w.curve();
    let mut group: Vec<Section> = vec![Point::O];
    for g in gens {
        if !c.contains(g) {
            return Err(Error::OffCurve);
        }
        if c.torsion_order(g, TORSION_BOUND as u32)?.is_none() {
            return Err(Error::Input(format!("section {g:?} has no order up to {TORSION_BOUND}")));
        }
    }
    let mut frontier = group.clone();
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = c.add(&p, g)?;
            if !group.contains(&q) {
                if group.len() == TORSION_BOUND {
                    return Err(Error::Input(format!("torsion subgroup exceeds order {TORSION_BOUND}")));
                }
                group.push(q.clone());
                frontier.push(q);
            }
        }
    }
    Ok(group)
}

fn invariant_factors(w: &WModel, group: &[Section]) -> Result<Vec<u32>> {
    let c = w.curve();
    let n = group.len() as u32;
    let mut e = 1u32;
    for p in group {
        let o = c.torsion_order(p, TORSION_BOUND as u32)?.expect("finite group");
        e = e.lcm(&o);
    }
    Ok(if e == n { vec![e] } else { vec![n / e, e] })
}

pub fn report(w: &WModel) -> Result<FibrationReport> {
    report_with_torsion(w, &[])
}

/// Report with torsion generated by `sections` plus `(0, 0)` whenever `a3 = a6 = 0`.
pub fn report_with_torsion(w: &WModel, sections: &[Section]) -> Result<FibrationReport> {
    let spec = w.specialized()?;
    let m = minimalize(&spec)?;
    let (chi, fibers) = fibers_of(&m)?;
    if !(1..=2).contains(&chi) {
        return Err(Error::ChiOutOfRange);
    }
    let euler: u32 = fibers.iter().map(|f| f.euler * f.degree as u32).sum();
    if euler != 12 * chi {
        return Err(Error::EulerMismatch { found: euler, expected: 12 * chi });
    }
    let configuration = configuration(&fibers.iter().map(|f| (f.kind, f.degree)).collect::<Vec<_>>());
    let mut parts = vec![GramLattice::from_i64(&[&[-i64::from(chi), 1], &[1, 0]])];
    for f in &fibers {
        for _ in 0..f.degree {
            parts.push(f.kind.root_lattice());
        }
    }
    let trivial = direct_sum(&parts);
    let trivial_det = trivial.det();

    let mut gens: Vec<Section> = sections.iter().map(|p| w.specialize_section(p)).collect::<Result<_>>()?;
    if spec.is_zero_coeff(2) && spec.is_zero_coeff(4) {
        gens.push(Point::new(RatFunc::zero(), RatFunc::zero()));
    }
    let group = torsion_group(&spec, &gens)?;
    let torsion = invariant_factors(&spec, &group)?;
    let order = group.len() as u32;
    let sq = BigInt::from(order) * BigInt::from(order);
    let torsion_consistent = !trivial_det.is_zero() && (&trivial_det % &sq).is_zero();
    let j = invariants(&m)?.j.to_string();
    Ok(FibrationReport {
        chi,
        model: m.a.clone().map(|c| c.to_string()),
        j,
        fibers,
        euler,
        configuration,
        trivial_rank: trivial.rank(),
        trivial_lattice: trivial,
        trivial_det,
        torsion,
        torsion_order: order,
        torsion_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_expr;

    fn e(s: &str) -> RatFunc {
        parse_expr(s, &["t"]).unwrap()
    }

    #[test]
    fn rigid_kummer_report() {
        let w = WModel::parse_cubic("-2*t^4 + 4", "t^4*(t^4 - 4)", "0", &["t"]).unwrap();
        let four = Point::new(e("t^4 + 2*t^2"), e("2*t^2*(t^2 + 2)"));
        let two = Point::new(e("t^4 - 4"), RatFunc::zero());
        let r = report_with_torsion(&w, &[four, two]).unwrap();
        assert_eq!(r.chi, 2);
        assert_eq!(r.euler, 24);
        assert_eq!(r.configuration, "2I8+4I2");
        assert_eq!(r.trivial_rank, 20);
        assert_eq!(r.torsion, vec![2, 4]);
        assert!(r.torsion_consistent);
        // det = -1 * 8^2 * 2^4
        assert_eq!(r.trivial_det, BigInt::from(-1024));
    }

    #[test]
    fn configuration_order() {
        use FiberType::*;
        assert_eq!(configuration(&[(I(1), 4), (IStar(4), 1), (IIStar, 1)]), "II*+I4*+4I1");
        assert_eq!(configuration(&[(I(1), 2), (I(3), 1), (IIIStar, 1), (IStar(4), 1)]), "I4*+III*+I3+2I1");
    }

    #[test]
    fn rejects_bad_models() {
        // chi = 3
        let w = WModel::parse_cubic("0", "t^12 + 1", "t^18 + 2", &["t"]).unwrap();
        assert_eq!(report(&w), Err(Error::ChiOutOfRange));
        let w = WModel::parse_cubic("0", "0", "t^5 + 1", &["t"]).unwrap();
        let r = report(&w).unwrap();
        assert_eq!(r.chi, 1);
        assert_eq!(r.configuration, "6II");
    }
}
