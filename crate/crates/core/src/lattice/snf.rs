//! Smith normal form with transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{identity, ZMat};

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal, `d_i | d_{i+1}`.
/// `v_inv` is kept alongside so saturations need no extra inversion.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: ZMat,
    pub s: ZMat,
    pub v: ZMat,
    pub v_inv: ZMat,
}

impl Snf {
    /// Nonzero diagonal entries.
    pub fn factors(&self) -> Vec<BigInt> {
        (0..self.s.len().min(self.s.first().map_or(0, Vec::len)))
            .map(|i| self.s[i][i].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.factors().len()
    }
}

struct Work {
    a: ZMat,
    u: ZMat,
    v: ZMat,
    vi: ZMat,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
        self.vi.swap(i, j);
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let rk = m[k].clone();
            for (x, y) in m[i].iter_mut().zip(rk) {
                *x -= q * y;
            }
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in m.iter_mut() {
                let y = r[k].clone();
                r[j] -= q * y;
            }
        }
        let rj = self.vi[j].clone();
        for (x, y) in self.vi[k].iter_mut().zip(rj) {
            *x += q * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
}

pub fn smith_normal_form(m: &ZMat) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut w = Work { a: m.clone(), u: identity(rows), v: identity(cols), vi: identity(cols) };
    for k in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !w.a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(w);
            };
            if pi != k {
                w.swap_rows(k, pi);
            }
            if pj != k {
                w.swap_cols(k, pj);
            }
            let mut clean = true;
            for i in k + 1..rows {
                if !w.a[i][k].is_zero() {
                    let q = w.a[i][k].div_floor(&w.a[k][k]);
                    w.row_sub(i, k, &q);
                    clean &= w.a[i][k].is_zero();
                }
            }
            for j in k + 1..cols {
                if !w.a[k][j].is_zero() {
                    let q = w.a[k][j].div_floor(&w.a[k][k]);
                    w.col_sub(j, k, &q);
                    clean &= w.a[k][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&w.a[k][k])));
            if let Some(i) = bad {
                // row_k += row_i brings a non-multiple into the pivot row
                w.row_sub(k, i, &BigInt::from(-1));
                continue;
            }
            if w.a[k][k].is_negative() {
                w.negate_row(k);
            }
            break;
        }
    }
    finish(w)
}

fn finish(w: Work) -> Snf {
    Snf { u: w.u, s: w.a, v: w.v, v_inv: w.vi }
}

/// Basis of the integer kernel `{x : M x = 0}`, as rows.
pub fn integer_kernel(m: &ZMat) -> ZMat {
    let cols = m.first().map_or(0, Vec::len);
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..cols).map(|j| snf.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Basis of `span_Q(rows) ∩ Z^n`.
pub fn saturate(rows: &ZMat) -> ZMat {
    let snf = smith_normal_form(rows);
    let r = snf.rank();
    snf.v_inv[..r].to_vec()
}

/// Basis of the lattice spanned by the rows.
pub fn row_lattice_basis(rows: &ZMat) -> ZMat {
    let snf = smith_normal_form(rows);
    snf.factors().iter().enumerate().map(|(i, d)| snf.v_inv[i].iter().map(|x| x * d).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::super::matrix::{det, mul, zmat};
    use super::*;
    use proptest::prelude::*;

    fn check(m: &ZMat) {
        let s = smith_normal_form(m);
        assert_eq!(mul(&mul(&s.u, m), &s.v), s.s);
        assert_eq!(mul(&s.v, &s.v_inv), identity(s.v.len()));
        assert!(det(&s.u).abs() == BigInt::from(1));
        let f = s.factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for (i, r) in s.s.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn small_examples() {
        let u2 = zmat(&[&[0, 2], &[2, 0]]);
        assert_eq!(smith_normal_form(&u2).factors(), vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(smith_normal_form(&zmat(&[&[-6]])).factors(), vec![BigInt::from(6)]);
        check(&zmat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        check(&zmat(&[&[0, 0], &[0, 0]]));
        check(&zmat(&[&[1, 2, 3]]));
    }

    #[test]
    fn kernel_and_saturation() {
        let k = integer_kernel(&zmat(&[&[1, 1, 1]]));
        assert_eq!(k.len(), 2);
        for r in &k {
            assert_eq!(r.iter().sum::<BigInt>(), BigInt::from(0));
        }
        let sat = saturate(&zmat(&[&[2, 4]]));
        assert!(sat[0] == vec![BigInt::from(1), BigInt::from(2)] || sat[0] == vec![BigInt::from(-1), BigInt::from(-2)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn reconstruction(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-9i64..=9, 25)) {
            let m: ZMat = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 5 + j])).collect()).collect();
            check(&m);
        }
    }
}
