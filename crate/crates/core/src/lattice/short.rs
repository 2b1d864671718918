//! Short-vector enumeration and the mod-4 representation test.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::matrix::to_q;
use super::GramLattice;
use crate::arith::Rat;
use crate::error::{Error, Result};

/// Nonzero vectors with `|v·v| <= bound`, one per sign pair (first nonzero entry positive).
pub fn short_vectors(l: &GramLattice, bound: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let n = l.rank();
    let (p, m, z) = l.signature();
    let g = match (p, m, z) {
        (_, 0, 0) => l.gram.clone(),
        (0, _, 0) => l.negate().gram,
        _ => return Err(Error::Indefinite),
    };
    if n == 0 {
        return Ok(vec![]);
    }
    // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    let mut q = to_q(&g);
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l2 in k..n {
                let d = &q[k][i] * &q[i][l2];
                q[k][l2] -= d;
            }
        }
    }
    let mut out = vec![];
    let mut x = vec![BigInt::zero(); n];
    let bound_q = Rat::from_integer(bound.clone());
    enumerate(&q, n - 1, bound_q, &mut x, &mut out);
    let full = l;
    out.retain(|v| {
        let nv = full.norm(v).abs();
        !nv.is_zero() && nv <= *bound
    });
    Ok(out)
}

fn enumerate(q: &[Vec<Rat>], i: usize, remaining: Rat, x: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
    let n = q.len();
    let mut c = Rat::zero();
    for j in i + 1..n {
        c -= &q[i][j] * Rat::from_integer(x[j].clone());
    }
    let qii = &q[i][i];
    let fits = |v: &BigInt| -> Option<Rat> {
        let d = Rat::from_integer(v.clone()) - &c;
        let used = qii * &d * &d;
        (used <= remaining).then(|| &remaining - used)
    };
    // integer range around the centre c
    let r2 = (&remaining / qii).floor().to_integer();
    let r = if r2.is_negative() { BigInt::zero() } else { r2.sqrt() + 1 };
    let lo = c.floor().to_integer() - &r;
    let hi = c.ceil().to_integer() + &r;
    let mut v = lo;
    while v <= hi {
        if let Some(rest) = fits(&v) {
            x[i] = v.clone();
            if i == 0 {
                let first = x.iter().find(|e| !e.is_zero());
                if first.is_some_and(|f| f.is_positive()) {
                    out.push(x.clone());
                }
            } else {
                enumerate(q, i - 1, rest, x, out);
            }
        }
        v += 1;
    }
    x[i] = BigInt::zero();
}

/// Whether some vector has square `≡ 2 mod 4`; decided on `{0,1}^n` since the residue
/// depends only on `x mod 2` for even lattices.
pub fn represents_two_mod_four(l: &GramLattice) -> Result<bool> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    let n = l.rank();
    if n > 30 {
        return Err(Error::Dimension(format!("rank {n} too large for the parity sweep")));
    }
    let g: Vec<Vec<i64>> =
        l.gram.iter().map(|r| r.iter().map(|x| (x % BigInt::from(4)).to_i64().expect("small")).collect()).collect();
    // Gray-code walk keeping Q(x) mod 4 and (G x) mod 4
    let mut x = vec![0i64; n];
    let mut gx = vec![0i64; n];
    let mut qx = 0i64;
    for k in 1u64..(1u64 << n) {
        let i = k.trailing_zeros() as usize;
        let s = if x[i] == 0 { 1 } else { -1 };
        // Q(x + s e_i) = Q(x) + 2 s (Gx)_i + G_ii
        qx = (qx + 2 * s * gx[i] + g[i][i]).rem_euclid(4);
        x[i] += s;
        for (j, gj) in gx.iter_mut().enumerate() {
            *gj = (*gj + s * g[j][i]).rem_euclid(4);
        }
        if qx == 2 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::super::matrix::zeros;
    use super::super::parse_lattice_expr;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let b = BigInt::from(2);
        assert!(short_vectors(&parse_lattice_expr("E8(-2)+<-6>").unwrap(), &b).unwrap().is_empty());
        let v = short_vectors(&parse_lattice_expr("E8(-2)+<-2>").unwrap(), &b).unwrap();
        let mut e = vec![BigInt::zero(); 9];
        e[8] = BigInt::from(1);
        assert_eq!(v, vec![e]);
        assert_eq!(short_vectors(&parse_lattice_expr("<-2>").unwrap(), &b).unwrap().len(), 1);
        assert_eq!(short_vectors(&parse_lattice_expr("E8(-1)").unwrap(), &b).unwrap().len(), 120);
        assert_eq!(short_vectors(&parse_lattice_expr("U").unwrap(), &b), Err(Error::Indefinite));
    }

    #[test]
    fn mod_four_examples() {
        assert!(represents_two_mod_four(&parse_lattice_expr("E8(-2)+<-6>").unwrap()).unwrap());
        assert!(!represents_two_mod_four(&parse_lattice_expr("E8(-2)+<-8>").unwrap()).unwrap());
        assert!(represents_two_mod_four(&parse_lattice_expr("<-6>").unwrap()).unwrap());
        assert_eq!(represents_two_mod_four(&GramLattice::from_i64(&[&[1]])), Err(Error::OddLattice));
    }

    fn gram(n: usize, e: &[i64], even: bool) -> GramLattice {
        let mut g = zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = if i == j && even { 2 * e[i * 6 + j] } else { e[i * 6 + j] };
                g[i][j] = BigInt::from(x);
                g[j][i] = BigInt::from(x);
            }
        }
        GramLattice::new(g).unwrap()
    }

    fn box_vectors(l: &GramLattice, r: i64, bound: &BigInt) -> Vec<Vec<BigInt>> {
        let n = l.rank();
        let mut out = vec![];
        let mut x = vec![-r; n];
        loop {
            let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
            let nv = l.norm(&v).abs();
            let first = x.iter().find(|&&a| a != 0);
            if first.is_some_and(|&f| f > 0) && nv <= *bound {
                out.push(v);
            }
            let mut p = 0;
            loop {
                if p == n {
                    return out;
                }
                x[p] += 1;
                if x[p] <= r {
                    break;
                }
                x[p] = -r;
                p += 1;
            }
        }
    }

    // Positive definite by diagonal dominance, then optionally negated.
    fn definite(n: usize, e: &[i64], neg: bool) -> GramLattice {
        let mut g = zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let x = e[i.min(j) * 6 + i.max(j)].clamp(-1, 1);
                    g[i][j] = BigInt::from(x);
                }
            }
            g[i][i] = BigInt::from(2 * (n as i64) + e[i * 7].abs());
        }
        let l = GramLattice::new(g).unwrap();
        if neg {
            l.negate()
        } else {
            l
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn short_vectors_match_box(n in 1usize..=4, e in prop::collection::vec(-3i64..=3, 36), neg in any::<bool>(), bound in 1i64..=30) {
            let l = definite(n, &e, neg);
            let b = BigInt::from(bound);
            let mut got = short_vectors(&l, &b).unwrap();
            let mut want = box_vectors(&l, 5, &b);
            got.sort();
            want.sort();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn mod_four_matches_box(n in 1usize..=5, e in prop::collection::vec(-3i64..=3, 36)) {
            let l = gram(n, &e, true);
            let mut any = false;
            let mut x = vec![-3i64; n];
            'outer: loop {
                let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
                if l.norm(&v).mod_floor(&BigInt::from(4)) == BigInt::from(2) {
                    any = true;
                    break;
                }
                for p in 0..n {
                    x[p] += 1;
                    if x[p] <= 3 {
                        continue 'outer;
                    }
                    x[p] = -3;
                }
                break;
            }
            prop_assert_eq!(represents_two_mod_four(&l).unwrap(), any);
        }
    }

    use num_integer::Integer;
}
