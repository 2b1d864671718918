//! Dual graphs of reducible Kodaira fibers and the action of the component group on them.
//!
//! Component numbering (index 0 is always the identity component):
//! - `I_n`: cyclic `0..n`.
//! - `I_n*`: `0, 1` simple at the near end, `2, 3` simple at the far end, `4..=4+n` the
//!   double chain from the near end to the far end.
//! - `IV*`: `0, 1, 2` simple, `3` the centre, `4, 5, 6` the arms of `0, 1, 2`.
//! - `III*`: chain `0..=6` with `6` simple, `7` attached to `3`.
//! - `II*`: chain `0..=7`, `8` attached to `5`.
//! - `III`: `0, 1` tangent; `IV`: `0, 1, 2` concurrent.

use crate::elliptic::FiberType;
use crate::error::{Error, Result};

/// Multiplicities in the fiber and weighted adjacency of the components.
pub struct FiberGraph {
    pub mult: Vec<i64>,
    pub edges: Vec<(usize, usize, i64)>,
}

impl FiberGraph {
    pub fn of(kind: FiberType) -> Result<Self> {
        let chain = |from: usize, to: usize| (from..to).map(|i| (i, i + 1, 1)).collect::<Vec<_>>();
        Ok(match kind {
            FiberType::I(2) => FiberGraph { mult: vec![1, 1], edges: vec![(0, 1, 2)] },
            FiberType::I(n) if n >= 3 => {
                let n = n as usize;
                FiberGraph { mult: vec![1; n], edges: (0..n).map(|i| (i, (i + 1) % n, 1)).collect() }
            }
            FiberType::IStar(n) => {
                let n = n as usize;
                let mut mult = vec![1, 1, 1, 1];
                mult.extend(vec![2; n + 1]);
                let mut edges = vec![(0, 4, 1), (1, 4, 1), (2, 4 + n, 1), (3, 4 + n, 1)];
                edges.extend(chain(4, 4 + n));
                FiberGraph { mult, edges }
            }
            FiberType::IVStar => FiberGraph {
                mult: vec![1, 1, 1, 3, 2, 2, 2],
                edges: vec![(0, 4, 1), (1, 5, 1), (2, 6, 1), (3, 4, 1), (3, 5, 1), (3, 6, 1)],
            },
            FiberType::IIIStar => {
                let mut edges = chain(0, 6);
                edges.push((3, 7, 1));
                FiberGraph { mult: vec![1, 2, 3, 4, 3, 2, 1, 2], edges }
            }
            FiberType::IIStar => {
                let mut edges = chain(0, 7);
                edges.push((5, 8, 1));
                FiberGraph { mult: vec![1, 2, 3, 4, 5, 6, 4, 2, 3], edges }
            }
            FiberType::III => FiberGraph { mult: vec![1, 1], edges: vec![(0, 1, 2)] },
            FiberType::IV => FiberGraph { mult: vec![1, 1, 1], edges: vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)] },
            _ => return Err(Error::Input(format!("fiber type {kind} has no reducible dual graph"))),
        })
    }

    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Intersection number of components `i` and `j`.
    pub fn pair(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return -2;
        }
        self.edges
            .iter()
            .filter(|&&(a, b, _)| (a, b) == (i, j) || (a, b) == (j, i))
            .map(|&(_, _, w)| w)
            .sum()
    }
}

/// Whether `kind` has reducible fibers, i.e. contributes classes to a frame.
pub fn is_reducible(kind: FiberType) -> bool {
    kind.components() >= 2
}

/// Permutation `p` with `Θ_i ↦ Θ_{p[i]}` under translation by a section meeting the simple
/// component `k`.
pub fn translation_permutation(kind: FiberType, k: usize) -> Result<Vec<usize>> {
    let g = FiberGraph::of(kind)?;
    if k >= g.len() || g.mult[k] != 1 {
        return Err(Error::Input(format!("component {k} of {kind} is not simple")));
    }
    let n = g.len();
    if k == 0 {
        return Ok((0..n).collect());
    }
    Ok(match kind {
        FiberType::I(_) => (0..n).map(|i| (i + k) % n).collect(),
        FiberType::III => vec![1, 0],
        FiberType::IV => (0..3).map(|i| (i + k) % 3).collect(),
        FiberType::IVStar => {
            let rot = |i: usize| (i + k) % 3;
            vec![rot(0), rot(1), rot(2), 3, 4 + rot(0), 4 + rot(1), 4 + rot(2)]
        }
        FiberType::IIIStar => vec![6, 5, 4, 3, 2, 1, 0, 7],
        FiberType::IStar(m) => {
            let m = m as usize;
            // component group: Klein four for m even, cyclic of order 4 generated by 2 for m odd
            let elem = |c: usize| -> u8 {
                match (c, m % 2) {
                    (0, _) => 0,
                    (1, 0) => 1,
                    (2, 0) => 2,
                    (3, 0) => 3,
                    (1, _) => 2,
                    (2, _) => 1,
                    _ => 3,
                }
            };
            let add = |a: u8, b: u8| if m.is_multiple_of(2) { a ^ b } else { (a + b) % 4 };
            let back = |e: u8| (0..4).find(|&c| elem(c) == e).expect("group element");
            let mut p: Vec<usize> = (0..4).map(|c| back(add(elem(c), elem(k)))).collect();
            let reverse = k >= 2;
            p.extend((0..=m).map(|i| if reverse { 4 + m - i } else { 4 + i }));
            p
        }
        _ => return Err(Error::Input(format!("fiber type {kind} has a trivial component group"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_automorphism(kind: FiberType, k: usize) {
        let g = FiberGraph::of(kind).unwrap();
        let p = translation_permutation(kind, k).unwrap();
        assert_eq!(p[0], k, "{kind}: identity goes to the component met");
        for i in 0..g.len() {
            assert_eq!(g.mult[p[i]], g.mult[i]);
            for j in 0..g.len() {
                assert_eq!(g.pair(p[i], p[j]), g.pair(i, j), "{kind} k={k}");
            }
        }
    }

    #[test]
    fn translations_are_graph_automorphisms() {
        use FiberType::*;
        for kind in [I(2), I(5), I(8), III, IV, IVStar, IIIStar, IStar(0), IStar(1), IStar(2), IStar(3)] {
            let g = FiberGraph::of(kind).unwrap();
            for k in (0..g.len()).filter(|&k| g.mult[k] == 1) {
                check_automorphism(kind, k);
            }
        }
    }

    #[test]
    fn multiplicities_give_a_null_vector() {
        use FiberType::*;
        // F · Θ_j = Σ m_i Θ_i · Θ_j = 0
        for kind in [I(2), I(3), I(7), III, IV, IVStar, IIIStar, IIStar, IStar(0), IStar(4)] {
            let g = FiberGraph::of(kind).unwrap();
            assert_eq!(g.len() as u32, kind.components());
            for j in 0..g.len() {
                let s: i64 = (0..g.len()).map(|i| g.mult[i] * g.pair(i, j)).sum();
                assert_eq!(s, 0, "{kind}");
            }
        }
    }

    #[test]
    fn odd_istar_group_is_cyclic() {
        let p = translation_permutation(FiberType::IStar(1), 2).unwrap();
        // twice a far component is the near one
        assert_eq!(p[p[0]], 1);
        let p = translation_permutation(FiberType::IStar(2), 2).unwrap();
        assert_eq!(p[p[0]], 0);
    }
}
