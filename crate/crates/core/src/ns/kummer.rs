//! Three fibrations on a product Kummer surface with an extra section of height `N`:
//! `II* + 2I0*`, then `III* + I2* + 3I2` and `2I2* + 4I2`, each carved out of the previous
//! one on the same lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::json;

use super::action::{components_met, mw_project, section_from_projection};
use super::frame::{frame_from_fibration, DivClass, FiberClasses, FibrationData, NSFrame};
use crate::arith::{fmt_rat, rq};
use crate::elliptic::FiberType;
use crate::error::{Error, Result};

/// Which `I0*` fibers the extra section meets away from the identity component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D4Branch {
    Neither,
    One,
    Both,
}

impl D4Branch {
    pub fn count(self) -> i64 {
        match self {
            D4Branch::Neither => 0,
            D4Branch::One => 1,
            D4Branch::Both => 2,
        }
    }
}

/// `P·O` forced by `h(P) = 4 + 2 P·O - #{I0* met off the identity} = n`, if integral.
pub fn first_po(n: i64, branch: D4Branch) -> Option<i64> {
    let twice = n - 4 + branch.count();
    (twice >= 0 && twice.is_even()).then_some(twice / 2)
}

/// `II*` fiber `A`, `I0*` fibers `Th` (met by `P` when any is) and `Ps`, section `P`.
pub fn first_data(n: i64, branch: D4Branch) -> Result<FibrationData> {
    let po = first_po(n, branch).ok_or_else(|| Error::Input(format!("no integral P.O for N = {n} and {branch:?}")))?;
    let meets = match branch {
        D4Branch::Neither => json!({}),
        D4Branch::One => json!({"I0*#1": 1}),
        D4Branch::Both => json!({"I0*#1": 1, "I0*#2": 1}),
    };
    FibrationData::from_json(&json!({
        "fibers": [
            {"type": "II*", "prefix": "A"},
            {"type": "I0*", "prefix": "Th"},
            {"type": "I0*", "prefix": "Ps"}
        ],
        "sections": [{"label": "P", "PO": po, "meets": meets}],
        "chi": 2
    }))
}

pub fn first_frame(n: i64, branch: D4Branch) -> Result<NSFrame> {
    frame_from_fibration(&first_data(n, branch)?)
}

fn classes(f: &NSFrame, exprs: &[&str]) -> Result<Vec<DivClass>> {
    exprs.iter().map(|e| f.parse_div(e)).collect()
}

fn fiber(kind: FiberType, prefix: &str, components: Vec<DivClass>) -> FiberClasses {
    FiberClasses { kind, prefix: prefix.into(), components }
}

/// `III* + I2* + 3I2` with zero section the centre of `Ps` and two-torsion section `A1`.
/// `I2*` (prefix `J`) is `Ps0, A0 | O, Th0, Th4 | Th2, Th3`; `III*` (prefix `E`) is `A2..A8` plus
/// the residual component; the `I2` fibers are `k{i}_` with identity component `Ps{i}`.
/// Returns the frame and the section class `P'` obtained from `P` for odd `n`.
pub fn second_frame(first: &NSFrame, n: i64) -> Result<(NSFrame, DivClass)> {
    let f2 = first.parse_div("Th2 + Th3 + 2*Th4 + 2*Th0 + 2*O + A0 + Ps0")?;
    let comps = classes(first, &["Ps0", "A0", "Th2", "Th3", "O", "Th0", "Th4"])?;
    let e7 = classes(first, &["A7", "A6", "A5", "A4", "A3", "A2", "A8"])?;
    let mult = [2, 3, 4, 3, 2, 1, 2];
    let mut x = f2.clone();
    for (m, c) in mult.iter().zip(&e7) {
        x = x.sub(&c.scale(&BigInt::from(*m).into()));
    }
    let mut iii = vec![x];
    iii.extend(e7);
    let mut fibers = vec![fiber(FiberType::IStar(2), "J", comps), fiber(FiberType::IIIStar, "E", iii)];
    for i in 1..=3 {
        let psi = first.class(&format!("Ps{i}"))?;
        fibers.push(fiber(FiberType::I(2), &format!("k{i}_"), vec![psi.clone(), f2.sub(&psi)]));
    }
    let zero = first.class("Ps4")?;
    let d = first.parse_div(&format!(
        "P - {h}*Ps1 - {h}*Ps2 - {h}*Ps3 - {g}*Ps0 + {m}*Ps4",
        h = fmt_rat(&rq(n - 1, 2)),
        g = fmt_rat(&rq(n - 3, 2)),
        m = -(n - 2),
    ))?;
    let d = d.add(&f2.scale(&rq(n - 1, 2)));
    let r = first.class("A1")?;
    let frame = first.refiber(&zero, &fibers, &[("R", r), ("Pp", d.clone())])?;
    Ok((frame, d))
}

/// `2I2* + 4I2` with zero section `E1`, two-torsion sections `J6` and `R`.
/// `I2*` fibers: `L` = `E0, k1_0 | O, J0, J4 | J5, J1` and `M` = `E2, E7 | E3, E4, E5 | E6, rest`;
/// `I2` fibers `q1_ .. q4_` have non-identity components `J2, J3, k2_1, k3_1`.
/// Returns the frame and the section `P''` in the class of `P'` modulo the trivial lattice,
/// meeting the `I2*` fibers where `J6` does and the `I2` fibers at the identity component.
pub fn third_frame(second: &NSFrame, pp: &DivClass) -> Result<(NSFrame, DivClass)> {
    let f3 = second.parse_div("J5 + J1 + E0 + k1_0 + 2*O + 2*J0 + 2*J4")?;
    let l = classes(second, &["E0", "k1_0", "J5", "J1", "O", "J0", "J4"])?;
    let mut m = classes(second, &["E2", "E7", "E6"])?;
    let rest = second.parse_div("E6 + 2*E5 + 2*E4 + 2*E3 + E2 + E7")?;
    m.push(f3.sub(&rest));
    m.extend(classes(second, &["E3", "E4", "E5"])?);
    let mut fibers = vec![fiber(FiberType::IStar(2), "L", l), fiber(FiberType::IStar(2), "M", m)];
    for (i, label) in ["J2", "J3", "k2_1", "k3_1"].iter().enumerate() {
        let c = second.class(label)?;
        fibers.push(fiber(FiberType::I(2), &format!("q{}_", i + 1), vec![f3.sub(&c), c]));
    }
    let zero = second.class("E1")?;
    let rr = second.class("J6")?;
    let r = second.class("R")?;
    let frame = second.refiber(&zero, &fibers, &[("Rpp", rr.clone()), ("Rp", r)])?;
    let mut comps = components_met(&frame, &rr)?;
    for c in comps.iter_mut().skip(2) {
        *c = 0;
    }
    let phi = mw_project(&frame, pp)?;
    let ppp = section_from_projection(&frame, &phi, &comps)?;
    Ok((frame, ppp))
}

#[cfg(test)]
mod tests {
    use super::super::action::height;
    use super::*;
    use crate::arith::ri;
    use crate::lattice::smith_normal_form;

    fn two_length(f: &NSFrame) -> usize {
        smith_normal_form(&f.gram).factors().iter().filter(|d| d.is_even()).count()
    }

    #[test]
    fn parity_decides_the_branch() {
        for n in 2..=9i64 {
            let branch = if n % 2 == 1 { D4Branch::One } else { D4Branch::Both };
            let f = first_frame(n, branch).unwrap();
            assert_eq!(f.det(), BigInt::from(16 * n), "N = {n}");
            assert_eq!(height(&f, &f.class("P").unwrap()).unwrap(), ri(n));
            assert!(two_length(&f) <= 3);
            let other = if n % 2 == 1 { D4Branch::Both } else { D4Branch::One };
            assert!(first_po(n, other).is_none());
            if let Ok(g) = first_frame(n, D4Branch::Neither) {
                assert!(two_length(&g) >= 4, "N = {n}");
            }
        }
    }

    #[test]
    fn sections_through_the_chain() {
        for n in [3i64, 5, 7] {
            let first = first_frame(n, D4Branch::One).unwrap();
            let (second, d) = second_frame(&first, n).unwrap();
            assert_eq!(second.square(&d), ri(-2));
            assert_eq!(second.pair(&d, &second.class("F").unwrap()), ri(1));
            assert_eq!(second.pair(&d, &second.class("O").unwrap()), ri((n - 3) / 2));
            assert_eq!(components_met(&second, &d).unwrap(), vec![1, 0, 0, 0, 0]);
            assert_eq!(height(&second, &d).unwrap(), ri(n));
            assert_eq!(height(&second, &second.class("R").unwrap()).unwrap(), ri(0));
            let (third, p3) = third_frame(&second, &d).unwrap();
            assert_eq!(third.pair(&p3, &third.class("O").unwrap()), ri((n - 1) / 2));
            assert_eq!(height(&third, &p3).unwrap(), ri(n));
            assert_eq!(height(&third, &third.class("Rpp").unwrap()).unwrap(), ri(0));
        }
    }
}
