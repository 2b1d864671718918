//! Dense integer and rational matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};

pub type ZMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<Rat>>;

pub fn zmat(rows: &[&[i64]]) -> ZMat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn zvec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn identity(n: usize) -> ZMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn zeros(m: usize, n: usize) -> ZMat {
    vec![vec![BigInt::zero(); n]; m]
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &ZMat, b: &ZMat) -> ZMat {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| r.iter().zip(b.iter()).fold(BigInt::zero(), |acc, (x, row)| acc + x * &row[j]))
                .collect()
        })
        .collect()
}

pub fn qmul(a: &QMat, b: &QMat) -> QMat {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b.iter()).fold(Rat::zero(), |acc, (x, row)| acc + x * &row[j])).collect())
        .collect()
}

pub fn to_q(a: &ZMat) -> QMat {
    a.iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect()
}

/// Integer matrix from a rational one, if every entry is integral.
pub fn to_z(a: &QMat) -> Option<ZMat> {
    a.iter().map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()).collect()
}

pub fn mat_vec(a: &ZMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|r| r.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)).collect()
}

/// `u^T G v` over Q.
pub fn bilinear(g: &ZMat, u: &[Rat], v: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() && !g[i][j].is_zero() {
                s += ui * vj * Rat::from_integer(g[i][j].clone());
            }
        }
    }
    s
}

/// `u^T G v` over Z.
pub fn zbilinear(g: &ZMat, u: &[BigInt], v: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                s += ui * vj * &g[i][j];
            }
        }
    }
    s
}

/// `B G B^T` for an integer row basis `B`.
pub fn congruent(g: &ZMat, b: &ZMat) -> ZMat {
    mul(&mul(b, g), &transpose(b))
}

/// Fraction-free Bareiss determinant.
pub fn det(a: &ZMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Row echelon over Q; returns the rank.
pub fn rank_q(a: &QMat) -> usize {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..cols {
                let d = &f * &m[r][j];
                m[i][j] -= d;
            }
        }
        r += 1;
    }
    r
}

pub fn rank(a: &ZMat) -> usize {
    rank_q(&to_q(a))
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve_q(a: &QMat, b: &[Rat]) -> Result<Vec<Rat>> {
    let n = a.len();
    let mut m: QMat = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).ok_or(Error::Degenerate)?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for j in c..=n {
            m[c][j] = &m[c][j] / &piv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let d = &f * &m[c][j];
                    m[i][j] -= d;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n].clone()).collect())
}

pub fn inverse_q(a: &QMat) -> Result<QMat> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rat> = (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
        cols.push(solve_q(a, &e)?);
    }
    Ok(transpose(&cols))
}

pub fn is_symmetric(a: &ZMat) -> bool {
    a.iter().enumerate().all(|(i, r)| r.len() == a.len() && r.iter().enumerate().all(|(j, x)| *x == a[j][i]))
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x))
}

pub fn max_abs(a: &ZMat) -> BigInt {
    a.iter().flatten().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_det() {
        assert_eq!(det(&zmat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&zmat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])), BigInt::from(4));
        assert_eq!(det(&zmat(&[&[1, 2], &[2, 4]])), BigInt::from(0));
    }

    #[test]
    fn solve_and_inverse() {
        let a = to_q(&zmat(&[&[2, 1], &[1, 3]]));
        let inv = inverse_q(&a).unwrap();
        assert_eq!(qmul(&a, &inv), to_q(&identity(2)));
        assert_eq!(inverse_q(&to_q(&zmat(&[&[1, 2], &[2, 4]]))), Err(Error::Degenerate));
    }
}
