//! Scenario registry: each scenario recomputes one claim about the surfaces in the catalog
//! exactly and reports pass, fail or inconclusive with the compared values.

mod check;
mod common;
mod families;
mod kummer_chain;
mod models;
mod rational_cm;
mod y_family;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub use check::{Check, Item};

use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x4B335F;

/// Random parameter draws per generic claim.
pub const DRAWS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

pub struct Ctx {
    pub seed: u64,
    pub rng: ChaCha8Rng,
}

type Body = fn(&mut Ctx, &mut Check) -> Result<()>;

pub struct Scenario {
    pub number: u32,
    pub id: &'static str,
    pub anchor: &'static str,
    /// Acceptance criterion the scenario feeds.
    pub criterion: u32,
    /// Optional scenarios report inconclusive instead of fail.
    pub optional: bool,
    body: Body,
}

macro_rules! scenario {
    ($n:expr, $id:expr, $anchor:expr, $c:expr, $opt:expr, $body:path) => {
        Scenario { number: $n, id: $id, anchor: $anchor, criterion: $c, optional: $opt, body: $body }
    };
}

pub fn registry() -> Vec<Scenario> {
    vec![
        scenario!(1, "brauer-sweep", "lattice family U(2)+2E8(-1)+<-2N>: pullback of the Brauer class vanishes iff N is odd", 1, false, families::brauer_sweep),
        scenario!(2, "enriques-specializes", "the swap involution stays fixed point free iff N > 1", 1, false, families::enriques_specializes),
        scenario!(3, "xn-fibration", "I16 + 8I1 fibration with sections of heights 1 and 2N", 7, false, families::xn_fibration),
        scenario!(4, "bp-fibration", "two III* fibers, two I2 fibers and two-torsion on the base-changed family", 4, false, models::bp_fibration),
        scenario!(5, "i4-star-fibration", "two I4* fibers on the extracted model", 4, false, models::i4_star_fibration),
        scenario!(6, "isogeny-to-2i2-star", "two-isogeny of the 2I4* model gives 2I2* + 4I2", 5, false, models::isogeny_to_2i2_star),
        scenario!(7, "inose-identities", "jj' and (j-1728)(j'-1728) of the product Kummer surface", 6, false, models::inose_identities),
        scenario!(8, "swap-ml", "the roots for (a, b) map to the roots for (b, a) by z -> mz + l", 6, true, models::swap_ml),
        scenario!(9, "km-first-fibration", "II* + 2I0* with a section of height N; parity picks the I0* fibers met", 7, false, kummer_chain::first_fibration),
        scenario!(10, "km-second-fibration", "III* + I2* + 3I2 and the section D' of height N", 8, false, kummer_chain::second_fibration),
        scenario!(11, "km-third-fibration", "2I2* + 4I2 with P''.O'' = (N-1)/2", 8, false, kummer_chain::third_fibration),
        scenario!(12, "wn-lattice", "two I4* fibers, two-torsion and a section of height 2N: determinant and transcendental lattice", 9, false, families::wn_lattice),
        scenario!(13, "wn-alternative-route", "the same data with the section meeting one far component only", 9, false, families::wn_alternative),
        scenario!(14, "x3-isometry-chain", "three descriptions of the N = 3 Neron-Severi lattice agree", 9, false, families::x3_isometry_chain),
        scenario!(15, "x3-root-fibration", "I4* + III* + I3 + 2I1 as the twist of a rational III + I3 + I4 surface", 4, false, rational_cm::x3_root_fibration),
        scenario!(16, "x3-ii-star-fibration", "II* + I4* + 4I1 with a section of height 6", 7, false, rational_cm::x3_ii_star_fibration),
        scenario!(17, "x3-bp-fibration", "2III* + 2I2 + 2I1 with the involution and a section of height 6", 7, false, rational_cm::x3_bp_fibration),
        scenario!(18, "x3-moduli", "j(t) j(-t) and j(t) + j(-t) as functions of q", 10, false, rational_cm::x3_moduli),
        scenario!(19, "x3-r-half", "r = 1/2: an I4 fiber, height 5 and determinant -20", 7, false, rational_cm::x3_r_half),
        scenario!(20, "x3-r-quarter", "r = 1/4: the I4* fiber becomes I5*", 4, false, rational_cm::x3_r_quarter),
        scenario!(21, "x3-r-minus-two", "r = -2: an extra I2 fiber and two-torsion; the anti-invariant divisor", 8, false, rational_cm::x3_r_minus_two),
        scenario!(22, "cm-table-spotcheck", "singular members: integral symmetric functions and classical j-invariants", 10, true, rational_cm::cm_spotcheck),
        scenario!(23, "y-fibration", "I8 + 8I2 with full two-torsion", 4, false, y_family::y_fibration),
        scenario!(24, "gram-18-det", "frame of the I8 + 8I2 fibration has rank 18 and determinant -64", 3, false, y_family::gram_18_det),
        scenario!(25, "y-anti-invariant", "anti-invariant and invariant lattices of the swap composed with a translation", 2, false, y_family::y_anti_invariant),
        scenario!(26, "yn-mwl", "Mordell-Weil lattice diag(1/2, N) and index 4 of the pullback", 7, false, y_family::yn_mwl),
        scenario!(27, "yn-q-class", "the half-class Q is a section of height N", 8, false, y_family::yn_q_class),
        scenario!(28, "tau-q-identity", "image of Q under the involution", 8, false, y_family::tau_q_identity),
        scenario!(29, "doubled-q", "2Q projects to vN", 8, false, y_family::doubled_q),
        scenario!(30, "yn-parity", "pullback of the Brauer class on Y_N vanishes iff N is odd", 2, false, y_family::yn_parity),
        scenario!(31, "y1-divisor", "N = 1: an anti-invariant divisor of square -6", 2, false, y_family::y1_divisor),
        scenario!(32, "ii-fibration", "2I8 + 4I2 with torsion Z/4 x Z/2 and an anti-invariant divisor of square -10", 4, false, y_family::ii_fibration),
        scenario!(33, "two-involutions-differ", "the two involutions on the rigid Kummer surface differ on the Brauer class", 2, false, y_family::two_involutions_differ),
    ]
}

/// Verdict of one scenario run.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub number: u32,
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub summary: String,
    pub checks: Vec<Item>,
    pub values: Map<String, Value>,
    pub assumed: Vec<String>,
    pub seed: String,
}

fn find(selector: &str) -> Result<Vec<Scenario>> {
    let sel = selector.trim();
    let all = registry();
    let num = sel.strip_prefix(['S', 's']).unwrap_or(sel).parse::<u32>().ok();
    let hit: Vec<Scenario> = all.into_iter().filter(|s| s.id == sel || Some(s.number) == num).collect();
    if hit.is_empty() {
        return Err(Error::UnknownScenario(selector.into()));
    }
    Ok(hit)
}

fn scenario_rng(seed: u64, number: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ u64::from(number).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn run_one(s: &Scenario, seed: u64) -> Verdict {
    let mut ctx = Ctx { seed, rng: scenario_rng(seed, s.number) };
    let mut check = Check::new();
    let outcome = catch_unwind(AssertUnwindSafe(|| (s.body)(&mut ctx, &mut check)));
    let error = match outcome {
        Ok(Ok(())) => None,
        Ok(Err(e)) => Some(e.to_string()),
        Err(p) => Some(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into())),
    };
    let ok = error.is_none() && check.passed();
    let status = match (ok, s.optional) {
        (true, _) => Status::Pass,
        (false, true) => Status::Inconclusive,
        (false, false) => Status::Fail,
    };
    let total = check.items.len();
    let good = check.items.iter().filter(|i| i.ok).count();
    let summary = match (&error, check.first_failure()) {
        (Some(e), _) => format!("{good}/{total} checks, error: {e}"),
        (None, Some(f)) => format!("{good}/{total} checks, {}: {} vs expected {}", f.name, f.computed, f.expected),
        (None, None) => format!("{good}/{total} checks"),
    };
    Verdict {
        number: s.number,
        id: s.id.into(),
        anchor: s.anchor.into(),
        status,
        summary,
        checks: check.items,
        values: check.values,
        assumed: check.assumed,
        seed: format!("{seed:#x}"),
    }
}

/// Runs the scenario named by `selector` (`all`, `S7`, `7` or an id), sorted by number.
/// With `all`, optional scenarios run only when `optional` is set.
pub fn run(selector: &str, seed: u64, optional: bool) -> Result<Vec<Verdict>> {
    let chosen: Vec<Scenario> = if selector.trim() == "all" {
        registry().into_iter().filter(|s| optional || !s.optional).collect()
    } else {
        find(selector)?
    };
    let next = AtomicUsize::new(0);
    let out = Mutex::new(vec![]);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(chosen.len()).max(1);
    std::thread::scope(|sc| {
        for _ in 0..workers {
            sc.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(s) = chosen.get(i) else { break };
                let v = run_one(s, seed);
                out.lock().expect("verdict list").push(v);
            });
        }
    });
    let mut out = out.into_inner().expect("verdict list");
    out.sort_by_key(|v| v.number);
    Ok(out)
}

pub fn to_json(verdicts: &[Verdict]) -> Value {
    json!(verdicts)
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

/// Table of id, anchor, status and summary, followed by every comparison made.
pub fn to_markdown(verdicts: &[Verdict]) -> String {
    let mut s = String::from("| id | anchor | status | detail |\n|---|---|---|---|\n");
    for v in verdicts {
        s.push_str(&format!("| S{} {} | {} | {} | {} |\n", v.number, v.id, cell(&v.anchor), v.status, cell(&v.summary)));
    }
    for v in verdicts {
        s.push_str(&format!("\n### S{} {}\n\nseed {}\n\n", v.number, v.id, v.seed));
        for i in &v.checks {
            let mark = if i.ok { "ok" } else { "MISMATCH" };
            s.push_str(&format!("- {}: `{}` (expected `{}`) {}\n", i.name, i.computed, i.expected, mark));
        }
        for (k, val) in &v.values {
            s.push_str(&format!("- {k} = `{val}`\n"));
        }
        for a in &v.assumed {
            s.push_str(&format!("- assumed: {a}\n"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete_and_unique() {
        let r = registry();
        let numbers: Vec<u32> = r.iter().map(|s| s.number).collect();
        assert_eq!(numbers, (1..=33).collect::<Vec<_>>());
        let mut ids: Vec<&str> = r.iter().map(|s| s.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 33);
        assert!(r.iter().all(|s| !s.anchor.is_empty()));
        // every criterion that rests on computation has at least one scenario
        for c in 1..=10 {
            assert!(r.iter().any(|s| s.criterion == c), "criterion {c}");
        }
        let optional: Vec<u32> = r.iter().filter(|s| s.optional).map(|s| s.number).collect();
        assert_eq!(optional, vec![8, 22]);
    }

    #[test]
    fn unknown_selector_is_an_error() {
        assert_eq!(run("S99", DEFAULT_SEED, false).unwrap_err(), Error::UnknownScenario("S99".into()));
        assert!(matches!(run("no-such", DEFAULT_SEED, false), Err(Error::UnknownScenario(_))));
    }

    #[test]
    fn selectors_agree() {
        let a = run("S24", DEFAULT_SEED, false).unwrap();
        let b = run("gram-18-det", DEFAULT_SEED, false).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].status, Status::Pass, "{}", a[0].summary);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
