//! Even integral lattices given by Gram matrices.

mod disc;
pub mod matrix;
mod named;
mod nikulin;
mod ops;
mod short;
pub mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::{Error, Result};
use matrix::{det, is_symmetric, to_q, zmat, ZMat};

pub use disc::{disc_form, disc_forms_isomorphic, DiscForm, DISC_ORDER_BOUND};
pub use named::{lattice_from_json, named, parse_lattice_expr};
pub use nikulin::{nikulin_embeds, nikulin_report, nikulin_unique, NikulinVerdict};
pub use ops::{enhance, orth_complement, overlattice_from_glue, reduce_binary, Enhancement, Overlattice, Sublat};
pub use short::{represents_two_mod_four, short_vectors};
pub use snf::smith_normal_form;

/// Integral lattice with a symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramLattice {
    pub gram: ZMat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// `(s_plus, s_minus, s_zero)`.
pub type Signature = (usize, usize, usize);

impl GramLattice {
    pub fn new(gram: ZMat) -> Result<Self> {
        if !is_symmetric(&gram) {
            return Err(Error::Dimension("Gram matrix is not square symmetric".into()));
        }
        Ok(GramLattice { gram, label: None })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(zmat(rows)).expect("symmetric input")
    }

    /// Construct and insist on evenness.
    pub fn new_even(gram: ZMat) -> Result<Self> {
        let l = Self::new(gram)?;
        if !l.is_even() {
            return Err(Error::OddLattice);
        }
        Ok(l)
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> BigInt {
        det(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i].is_even())
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn signature(&self) -> Signature {
        signature(self)
    }

    pub fn norm(&self, v: &[BigInt]) -> BigInt {
        matrix::zbilinear(&self.gram, v, v)
    }

    pub fn pair(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        matrix::zbilinear(&self.gram, u, v)
    }

    pub fn negate(&self) -> GramLattice {
        rescale(self, -1)
    }
}

/// Counts of positive, negative and zero squares via congruence diagonalisation over Q.
pub fn signature(l: &GramLattice) -> Signature {
    let mut a = to_q(&l.gram);
    let (mut pos, mut neg) = (0, 0);
    loop {
        let n = a.len();
        if n == 0 {
            return (pos, neg, 0);
        }
        let piv = (0..n).find(|&i| !a[i][i].is_zero());
        let i = match piv {
            Some(i) => i,
            None => {
                let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                else {
                    return (pos, neg, n);
                };
                // hyperbolic pivot: row_i += row_j, col_i += col_j gives a_ii = 2 a_ij
                for k in 0..n {
                    let x = a[j][k].clone();
                    a[i][k] += x;
                }
                for k in 0..n {
                    let x = a[k][j].clone();
                    a[k][i] += x;
                }
                i
            }
        };
        let p = a[i][i].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let row = a[i].clone();
        let mut next: Vec<Vec<Rat>> = Vec::with_capacity(n - 1);
        for r in 0..n {
            if r == i {
                continue;
            }
            let f = &a[r][i] / &p;
            next.push((0..n).filter(|&c| c != i).map(|c| &a[r][c] - &f * &row[c]).collect());
        }
        a = next;
    }
}

pub fn direct_sum(ls: &[GramLattice]) -> GramLattice {
    let n: usize = ls.iter().map(GramLattice::rank).sum();
    let mut g = matrix::zeros(n, n);
    let mut off = 0;
    for l in ls {
        for (i, r) in l.gram.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                g[off + i][off + j] = x.clone();
            }
        }
        off += l.rank();
    }
    GramLattice { gram: g, label: None }
}

pub fn rescale(l: &GramLattice, k: i64) -> GramLattice {
    let k = BigInt::from(k);
    GramLattice { gram: l.gram.iter().map(|r| r.iter().map(|x| x * &k).collect()).collect(), label: None }
}

/// Agreement of rank, signature and discriminant form.
pub fn same_invariants(a: &GramLattice, b: &GramLattice) -> Result<bool> {
    if a.rank() != b.rank() || a.signature() != b.signature() {
        return Ok(false);
    }
    if a.det().abs() != b.det().abs() {
        return Ok(false);
    }
    disc_forms_isomorphic(&disc_form(a)?, &disc_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use matrix::mul;
    use proptest::prelude::*;

    #[test]
    fn signature_examples() {
        assert_eq!(named("U").unwrap().signature(), (1, 1, 0));
        assert_eq!(named("K3").unwrap().signature(), (3, 19, 0));
        assert_eq!(parse_lattice_expr("U(2)+2E8(-1)+<-6>").unwrap().signature(), (1, 18, 0));
        assert_eq!(GramLattice::from_i64(&[&[0, 0], &[0, 0]]).signature(), (0, 0, 2));
        assert_eq!(GramLattice::from_i64(&[&[0]]).signature(), (0, 0, 1));
    }

    #[test]
    fn sums_and_scaling() {
        let u2 = rescale(&named("U").unwrap(), 2);
        assert_eq!(u2.gram, zmat(&[&[0, 2], &[2, 0]]));
        let ns = parse_lattice_expr("U(2)+E8(-1)+E8(-1)").unwrap();
        assert_eq!(ns.det(), BigInt::from(-4));
        assert_eq!(parse_lattice_expr("U+U(2)").unwrap().det(), BigInt::from(4));
    }

    fn random_unimodular(n: usize, ops: &[(usize, usize, i64)]) -> ZMat {
        let mut m = matrix::identity(n);
        for &(i, j, c) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            let rj = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(rj) {
                *x += BigInt::from(c) * y;
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn sylvester_stability(n in 1usize..6, entries in prop::collection::vec(-4i64..=4, 36), ops in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..12)) {
            let mut g = matrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    g[i][j] = BigInt::from(entries[i * 6 + j]);
                    g[j][i] = g[i][j].clone();
                }
            }
            let l = GramLattice::new(g.clone()).unwrap();
            let (p, m, z) = l.signature();
            prop_assert_eq!(p + m + z, n);
            let u = random_unimodular(n, &ops);
            let g2 = mul(&mul(&u, &g), &matrix::transpose(&u));
            prop_assert_eq!(GramLattice::new(g2).unwrap().signature(), (p, m, z));
        }
    }
}
