//! Sufficient criteria for uniqueness in the genus and for primitive embeddings.

use serde::{Deserialize, Serialize};

use super::{disc_form, GramLattice, Signature};

/// Outcome of the uniqueness criterion. It never asserts non-uniqueness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NikulinVerdict {
    Unique,
    CriterionNotSatisfied,
    Inapplicable,
}

impl std::fmt::Display for NikulinVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NikulinVerdict::Unique => "yes",
            NikulinVerdict::CriterionNotSatisfied => "no",
            NikulinVerdict::Inapplicable => "criterion-inapplicable",
        })
    }
}

/// Minimal number of generators of the discriminant group, or `None` for degenerate lattices.
fn disc_length(l: &GramLattice) -> Option<usize> {
    disc_form(l).ok().map(|d| d.length())
}

/// `s+ > 0`, `s- > 0` and `l(A_L) <= rank - 2`.
pub fn nikulin_unique(l: &GramLattice) -> bool {
    nikulin_report(l) == NikulinVerdict::Unique
}

pub fn nikulin_report(l: &GramLattice) -> NikulinVerdict {
    if !l.is_even() || !l.is_nondegenerate() {
        return NikulinVerdict::Inapplicable;
    }
    let (sp, sm, _) = l.signature();
    match disc_length(l) {
        Some(len) if sp > 0 && sm > 0 && len + 2 <= l.rank() => NikulinVerdict::Unique,
        Some(_) => NikulinVerdict::CriterionNotSatisfied,
        None => NikulinVerdict::Inapplicable,
    }
}

/// `t+ < s+`, `t- < s-` and `l(A_M) <= rank(L) - rank(M) - 2` for an even unimodular target.
pub fn nikulin_embeds(m: &GramLattice, l_sig: (usize, usize), l_rank: usize) -> bool {
    if !m.is_even() {
        return false;
    }
    let (tp, tm, tz): Signature = m.signature();
    if tz > 0 {
        return false;
    }
    let Some(len) = disc_length(m) else { return false };
    embedding_inequalities((tp, tm), m.rank(), len, l_sig, l_rank)
}

fn embedding_inequalities(t: (usize, usize), m_rank: usize, m_len: usize, l_sig: (usize, usize), l_rank: usize) -> bool {
    t.0 < l_sig.0 && t.1 < l_sig.1 && m_len + m_rank + 2 <= l_rank
}

#[cfg(test)]
mod tests {
    use super::super::parse_lattice_expr;
    use super::*;

    #[test]
    fn uniqueness_examples() {
        let l = parse_lattice_expr("U+D8(-1)+E7(-1)+A2(-1)").unwrap();
        assert!(nikulin_unique(&l));
        assert_eq!(nikulin_report(&parse_lattice_expr("E8(-1)").unwrap()), NikulinVerdict::CriterionNotSatisfied);
        assert_eq!(nikulin_report(&parse_lattice_expr("U(2)").unwrap()), NikulinVerdict::CriterionNotSatisfied);
        assert_eq!(nikulin_report(&GramLattice::from_i64(&[&[1]])), NikulinVerdict::Inapplicable);
        assert_eq!(NikulinVerdict::Inapplicable.to_string(), "criterion-inapplicable");
    }

    #[test]
    fn embedding_examples() {
        let m = parse_lattice_expr("U(2)+E8(-2)").unwrap();
        assert!(nikulin_embeds(&m, (3, 19), 22));
        let m = parse_lattice_expr("2U+2E8(-1)+<-2>").unwrap();
        assert_eq!(m.rank(), 21);
        assert!(!nikulin_embeds(&m, (3, 19), 22));
        // rank 21 leaves no room even with trivial discriminant
        assert!(!embedding_inequalities((1, 20), 21, 0, (3, 19), 22));
        assert!(embedding_inequalities((1, 9), 10, 10, (3, 19), 22));
        assert!(!embedding_inequalities((1, 9), 10, 11, (3, 19), 22));
    }
}
