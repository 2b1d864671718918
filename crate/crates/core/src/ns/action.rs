//! Integral isometries of a frame: deck transformations, translations by sections, and the
//! lattices and tests derived from an involution.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::fiber::translation_permutation;
use super::frame::{DivClass, Kind, NSFrame};
use crate::arith::{fmt_rat, Rat};
use crate::error::{Error, Result};
use crate::lattice::matrix::{identity, inverse_q, mul, rank_q, solve_q, to_q, transpose, QMat, ZMat};
use crate::lattice::snf::integer_kernel;
use crate::lattice::{
    orth_complement, parse_lattice_expr, represents_two_mod_four, same_invariants, short_vectors, Sublat,
};

/// Square integer matrix acting on coordinate columns: the image of `x` is `M x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryAction {
    pub matrix: ZMat,
}

impl IsometryAction {
    pub fn identity(n: usize) -> Self {
        IsometryAction { matrix: identity(n) }
    }

    pub fn apply(&self, d: &DivClass) -> DivClass {
        DivClass(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&d.0).fold(Rat::zero(), |acc, (m, x)| acc + Rat::from_integer(m.clone()) * x))
                .collect(),
        )
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        IsometryAction { matrix: mul(&self.matrix, &other.matrix) }
    }

    pub fn is_involution(&self) -> bool {
        mul(&self.matrix, &self.matrix) == identity(self.matrix.len())
    }

    /// `M^T G M = G`.
    pub fn preserves(&self, gram: &ZMat) -> bool {
        mul(&mul(&transpose(&self.matrix), gram), &self.matrix) == *gram
    }

    /// Smallest `k <= bound` with `M^k = 1`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let id = identity(self.matrix.len());
        let mut p = self.matrix.clone();
        for k in 1..=bound {
            if p == id {
                return Some(k);
            }
            p = mul(&p, &self.matrix);
        }
        None
    }
}

/// Solves for the isometry sending each `src` to its `img`; the sources must span the
/// frame over Q, and the result must be integral and preserve the Gram matrix.
pub fn action_from_images(frame: &NSFrame, pairs: &[(DivClass, DivClass)]) -> Result<IsometryAction> {
    let n = frame.rank();
    let mut chosen: Vec<usize> = vec![];
    for i in 0..pairs.len() {
        let mut trial = chosen.clone();
        trial.push(i);
        let rows: QMat = trial.iter().map(|&k| pairs[k].0 .0.clone()).collect();
        if rank_q(&rows) == trial.len() {
            chosen = trial;
        }
        if chosen.len() == n {
            break;
        }
    }
    if chosen.len() < n {
        return Err(Error::Input(format!("images determine only {} of {n} directions", chosen.len())));
    }
    // M X = Y with the chosen sources as the columns of X
    let x: QMat = transpose(&chosen.iter().map(|&k| pairs[k].0 .0.clone()).collect::<Vec<_>>());
    let y: QMat = transpose(&chosen.iter().map(|&k| pairs[k].1 .0.clone()).collect::<Vec<_>>());
    let xi = inverse_q(&x)?;
    let m = crate::lattice::matrix::qmul(&y, &xi);
    let mut matrix = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if !m[i][j].is_integer() {
                return Err(Error::NonIntegral(format!("image of {} has coefficient {}", frame.labels[j], fmt_rat(&m[i][j]))));
            }
            matrix[i][j] = m[i][j].to_integer();
        }
    }
    let act = IsometryAction { matrix };
    for (s, t) in pairs {
        if act.apply(s) != *t {
            return Err(Error::Input(format!("prescribed images are inconsistent at {}", frame.display(s))));
        }
    }
    if !act.preserves(&frame.gram) {
        return Err(Error::NotIsometry);
    }
    Ok(act)
}

fn fiber_index(frame: &NSFrame, id: &str) -> Result<usize> {
    frame.fibers.iter().position(|f| f.id == id).ok_or_else(|| Error::Input(format!("unknown fiber `{id}`")))
}

/// Deck-type action: fibers permuted by `perm` (unlisted fibers fixed, components keep their
/// index), `O`, `F` and the listed sections fixed, plus any `extra` images.
pub fn deck_action(
    frame: &NSFrame,
    perm: &[(&str, &str)],
    fixed_sections: &[&str],
    extra: &[(DivClass, DivClass)],
) -> Result<IsometryAction> {
    let mut sigma: Vec<usize> = (0..frame.fibers.len()).collect();
    for (a, b) in perm {
        let (i, j) = (fiber_index(frame, a)?, fiber_index(frame, b)?);
        if frame.fibers[i].kind != frame.fibers[j].kind {
            return Err(Error::Input(format!("cannot send {} ({}) to {} ({})", a, frame.fibers[i].kind, b, frame.fibers[j].kind)));
        }
        sigma[i] = j;
    }
    let mut seen = sigma.clone();
    seen.sort_unstable();
    if seen != (0..frame.fibers.len()).collect::<Vec<_>>() {
        return Err(Error::Input("fiber map is not a permutation".into()));
    }
    let mut pairs = vec![(frame.class("O")?, frame.class("O")?), (frame.class("F")?, frame.class("F")?)];
    for (i, f) in frame.fibers.iter().enumerate() {
        for (k, l) in f.labels.iter().enumerate() {
            pairs.push((frame.class(l)?, frame.class(&frame.fibers[sigma[i]].labels[k])?));
        }
    }
    for s in fixed_sections {
        pairs.push((frame.class(s)?, frame.class(s)?));
    }
    pairs.extend_from_slice(extra);
    action_from_images(frame, &pairs)
}

/// Component met by a section class in each fiber.
pub fn components_met(frame: &NSFrame, s: &DivClass) -> Result<Vec<usize>> {
    let mut out = vec![];
    for f in &frame.fibers {
        let hits: Vec<(usize, Rat)> = f
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| Ok((i, frame.pair(s, &frame.class(l)?))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .collect();
        match hits.as_slice() {
            [(i, p)] if p.is_one() => out.push(*i),
            _ => return Err(Error::Input(format!("{} does not meet {} like a section", frame.display(s), f.id))),
        }
    }
    Ok(out)
}

/// Orthogonal projection onto the complement of the trivial lattice.
pub fn mw_project(frame: &NSFrame, s: &DivClass) -> Result<DivClass> {
    let gens = frame.trivial_generators()?;
    let g: QMat = gens.iter().map(|a| gens.iter().map(|b| frame.pair(a, b)).collect()).collect();
    let rhs: Vec<Rat> = gens.iter().map(|a| frame.pair(a, s)).collect();
    let c = solve_q(&g, &rhs)?;
    let mut p = s.clone();
    for (ci, gi) in c.iter().zip(&gens) {
        p = p.sub(&gi.scale(ci));
    }
    Ok(p)
}

/// Height `-φ(P)^2` of a section class.
pub fn height(frame: &NSFrame, s: &DivClass) -> Result<Rat> {
    let p = mw_project(frame, s)?;
    Ok(-frame.square(&p))
}

/// Class of the section with projection `phi` meeting the components `comps`, fixed by
/// `(phi + t)^2 = -chi` where `t` is the trivial-lattice part.
pub fn section_from_projection(frame: &NSFrame, phi: &DivClass, comps: &[usize]) -> Result<DivClass> {
    let gens = frame.trivial_generators()?;
    let g: QMat = gens.iter().map(|a| gens.iter().map(|b| frame.pair(a, b)).collect()).collect();
    // pairings with O, F, then the non-identity components
    let mut rhs = vec![Rat::zero(), Rat::one()];
    for (f, &c) in frame.fibers.iter().zip(comps) {
        for k in 1..f.labels.len() {
            rhs.push(if k == c { Rat::one() } else { Rat::zero() });
        }
    }
    let c = solve_q(&g, &rhs)?;
    let mut t = DivClass::zero(frame.rank());
    for (ci, gi) in c.iter().zip(&gens) {
        t = t.add(&gi.scale(ci));
    }
    let base = phi.add(&t);
    let x = (Rat::from_integer(BigInt::from(-frame.chi)) - frame.square(&base)) / Rat::from_integer(BigInt::from(2));
    let s = base.add(&frame.class("F")?.scale(&x));
    if !s.is_integral() {
        return Err(Error::NonIntegral(format!("section with projection {}", frame.display(phi))));
    }
    Ok(s)
}

/// Class of the sum `S ⊕ T` in the Mordell–Weil group, from heights and component data.
pub fn section_sum(frame: &NSFrame, s: &DivClass, t: &DivClass) -> Result<DivClass> {
    let phi = mw_project(frame, s)?.add(&mw_project(frame, t)?);
    let (cs, ct) = (components_met(frame, s)?, components_met(frame, t)?);
    let mut comps = vec![];
    for (i, f) in frame.fibers.iter().enumerate() {
        comps.push(translation_permutation(f.kind, ct[i])?[cs[i]]);
    }
    section_from_projection(frame, &phi, &comps)
}

/// Inverse `⊖S` in the Mordell–Weil group.
pub fn section_neg(frame: &NSFrame, s: &DivClass) -> Result<DivClass> {
    let phi = mw_project(frame, s)?.neg();
    let cs = components_met(frame, s)?;
    let mut comps = vec![];
    for (i, f) in frame.fibers.iter().enumerate() {
        let p = translation_permutation(f.kind, cs[i])?;
        comps.push(p.iter().position(|&x| x == 0).expect("permutation"));
    }
    section_from_projection(frame, &phi, &comps)
}

/// Translation by the section `t`: `O ↦ T`, components shifted by the component `T` meets,
/// section classes moved by the group law (from `mw_table` when listed, otherwise solved from
/// the projection and component data), plus any `extra` images.
pub fn translation_action(
    frame: &NSFrame,
    t: &str,
    mw_table: &BTreeMap<String, String>,
    extra: &[(DivClass, DivClass)],
) -> Result<IsometryAction> {
    let tc = frame.class(t)?;
    let ct = components_met(frame, &tc)?;
    let mut pairs = vec![(frame.class("O")?, tc.clone()), (frame.class("F")?, frame.class("F")?)];
    for (i, f) in frame.fibers.iter().enumerate() {
        let p = translation_permutation(f.kind, ct[i])?;
        for (k, l) in f.labels.iter().enumerate() {
            pairs.push((frame.class(l)?, frame.class(&f.labels[p[k]])?));
        }
    }
    for (label, kind) in &frame.kinds {
        if *kind != Kind::Section {
            continue;
        }
        let s = frame.class(label)?;
        let img = match mw_table.get(label) {
            Some(target) => frame.class(target)?,
            None => section_sum(frame, &s, &tc)?,
        };
        pairs.push((s, img));
    }
    pairs.extend_from_slice(extra);
    action_from_images(frame, &pairs)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeckFile {
    #[serde(default)]
    swap: Vec<[String; 2]>,
    #[serde(default)]
    fixed: Vec<String>,
    #[serde(default)]
    images: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TranslationFile {
    by: String,
    #[serde(default)]
    table: BTreeMap<String, String>,
    #[serde(default)]
    images: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    deck: Option<DeckFile>,
    translation: Option<TranslationFile>,
}

fn image_pairs(frame: &NSFrame, images: &BTreeMap<String, String>) -> Result<Vec<(DivClass, DivClass)>> {
    images.iter().map(|(k, v)| Ok((frame.parse_div(k)?, frame.parse_div(v)?))).collect()
}

/// Reads an action file: an optional deck part (`swap` lists fiber ids exchanged in pairs,
/// `fixed` sections, `images` as divisor expressions) applied after an optional translation
/// (`by` a section, `table` of section images, `images`).
pub fn action_from_json(frame: &NSFrame, v: &serde_json::Value) -> Result<IsometryAction> {
    let f: ActionFile = serde_json::from_value(v.clone()).map_err(|e| Error::Input(e.to_string()))?;
    let mut act = IsometryAction::identity(frame.rank());
    if let Some(t) = &f.translation {
        act = translation_action(frame, &t.by, &t.table, &image_pairs(frame, &t.images)?)?;
    }
    if let Some(d) = &f.deck {
        let perm: Vec<(&str, &str)> = d.swap.iter().flat_map(|[a, b]| [(a.as_str(), b.as_str()), (b.as_str(), a.as_str())]).collect();
        let fixed: Vec<&str> = d.fixed.iter().map(String::as_str).collect();
        act = deck_action(frame, &perm, &fixed, &image_pairs(frame, &d.images)?)?.compose(&act);
    }
    Ok(act)
}

fn kernel_lattice(frame: &NSFrame, m: &IsometryAction, sign: i64) -> Sublat {
    let n = frame.rank();
    let mut a = m.matrix.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] += BigInt::from(sign);
    }
    let k = if n == 0 { vec![] } else { integer_kernel(&a) };
    Sublat::new(frame.lattice(), k)
}

/// Saturated `{x : M x = -x}` with the restricted form.
pub fn anti_invariant(frame: &NSFrame, m: &IsometryAction) -> Result<Sublat> {
    if !m.is_involution() {
        return Err(Error::NotInvolution);
    }
    Ok(kernel_lattice(frame, m, 1))
}

/// Saturated `{x : M x = x}` with the restricted form.
pub fn invariant(frame: &NSFrame, m: &IsometryAction) -> Result<Sublat> {
    if !m.is_involution() {
        return Err(Error::NotInvolution);
    }
    Ok(kernel_lattice(frame, m, -1))
}

/// Outcome of the anti-invariant mod-4 test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BrauerVerdict {
    PullbackZero,
    #[serde(rename = "pullback_Z2")]
    PullbackZ2,
}

impl fmt::Display for BrauerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BrauerVerdict::PullbackZero => "pullback_zero",
            BrauerVerdict::PullbackZ2 => "pullback_Z2",
        })
    }
}

/// `pullback_zero` exactly when some anti-invariant class has square `≡ 2 mod 4`.
pub fn beauville_verdict(frame: &NSFrame, m: &IsometryAction) -> Result<BrauerVerdict> {
    let anti = anti_invariant(frame, m)?.lattice();
    Ok(if represents_two_mod_four(&anti)? { BrauerVerdict::PullbackZero } else { BrauerVerdict::PullbackZ2 })
}

/// True when the invariant part is `U(2)+E8(-2)` (by invariants) and its orthogonal
/// complement has no vectors of square `-2`.
pub fn enriques_fixed_point_check(frame: &NSFrame, m: &IsometryAction) -> Result<bool> {
    let inv = invariant(frame, m)?;
    let target = parse_lattice_expr("U(2)+E8(-2)")?;
    if !same_invariants(&inv.lattice(), &target)? {
        return Err(Error::UnexpectedInvariant(format!("rank {} signature {:?}", inv.rank(), inv.lattice().signature())));
    }
    let orth = orth_complement(&inv).lattice();
    let roots = short_vectors(&orth, &BigInt::from(2))?;
    Ok(roots.iter().all(|v| orth.norm(v) != BigInt::from(-2)))
}

/// Exact equality of two classes.
pub fn check_identity(lhs: &DivClass, rhs: &DivClass) -> bool {
    lhs == rhs
}

/// `lhs - rhs` pairs to zero with every basis element, so vanishes by nondegeneracy.
pub fn equal_by_pairing(frame: &NSFrame, lhs: &DivClass, rhs: &DivClass) -> bool {
    let d = lhs.sub(rhs);
    (0..frame.rank()).all(|i| frame.pair(&d, &DivClass::unit(frame.rank(), i)).is_zero())
}

/// Index of `a + b` in the frame, or `None` when the sum has smaller rank.
pub fn index_of_sum(frame: &NSFrame, a: &Sublat, b: &Sublat) -> Result<Option<BigInt>> {
    let rows: ZMat = a.basis.iter().chain(&b.basis).cloned().collect();
    if rows.len() != frame.rank() || rank_q(&to_q(&rows)) != frame.rank() {
        return Ok(None);
    }
    let d = crate::lattice::matrix::det(&rows);
    Ok(Some(num_traits::Signed::abs(&d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::zmat;

    #[test]
    fn identity_action_has_zero_anti_invariant_part() {
        let f = NSFrame::from_lattice(&["a", "b"], zmat(&[&[0, 1], &[1, 0]]), 2).unwrap();
        let id = IsometryAction::identity(2);
        assert_eq!(anti_invariant(&f, &id).unwrap().rank(), 0);
        assert_eq!(beauville_verdict(&f, &id).unwrap(), BrauerVerdict::PullbackZ2);
        let swap = action_from_images(
            &f,
            &[(f.class("a").unwrap(), f.class("b").unwrap()), (f.class("b").unwrap(), f.class("a").unwrap())],
        )
        .unwrap();
        // a - b has square -2
        assert_eq!(beauville_verdict(&f, &swap).unwrap(), BrauerVerdict::PullbackZero);
        let not_inv = IsometryAction { matrix: zmat(&[&[1, 1], &[0, 1]]) };
        assert_eq!(anti_invariant(&f, &not_inv).unwrap_err(), Error::NotInvolution);
    }

    #[test]
    fn non_isometric_images_are_rejected() {
        let f = NSFrame::from_lattice(&["a", "b"], zmat(&[&[-2, 1], &[1, 0]]), 2).unwrap();
        let r = action_from_images(
            &f,
            &[(f.class("a").unwrap(), f.class("b").unwrap()), (f.class("b").unwrap(), f.class("a").unwrap())],
        );
        assert_eq!(r.unwrap_err(), Error::NotIsometry);
    }
}
