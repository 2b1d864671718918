//! Sublattices, orthogonal complements, overlattices and enhancement.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{congruent, gcd_all, mat_vec, transpose, zbilinear, QMat, ZMat};
use super::snf::{integer_kernel, row_lattice_basis};
use super::GramLattice;
use crate::arith::Rat;
use crate::error::{Error, Result};

/// Sublattice spanned by integer rows in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublat {
    pub ambient: GramLattice,
    pub basis: ZMat,
}

impl Sublat {
    pub fn new(ambient: GramLattice, basis: ZMat) -> Self {
        Sublat { ambient, basis }
    }

    pub fn lattice(&self) -> GramLattice {
        GramLattice { gram: congruent(&self.ambient.gram, &self.basis), label: None }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Saturated integer kernel of the pairing with the sublattice.
pub fn orth_complement(s: &Sublat) -> Sublat {
    let g = &s.ambient.gram;
    let m: ZMat = s.basis.iter().map(|r| mat_vec(&transpose(g), r)).collect();
    let n = s.ambient.rank();
    let k = if m.is_empty() { super::matrix::identity(n) } else { integer_kernel(&m) };
    Sublat { ambient: s.ambient.clone(), basis: k }
}

/// Overlattice in a new integral basis, with that basis in old coordinates.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: GramLattice,
    pub basis: QMat,
    pub index: BigInt,
}

/// Adjoins rational glue vectors; each must pair integrally and, for even `L`, have even square.
pub fn overlattice_from_glue(l: &GramLattice, glues: &[Vec<Rat>]) -> Result<Overlattice> {
    let n = l.rank();
    let gq = super::matrix::to_q(&l.gram);
    for g in glues {
        if g.len() != n {
            return Err(Error::Dimension(format!("glue of length {} for rank {n}", g.len())));
        }
        for j in 0..n {
            let p: Rat = g.iter().zip(&gq).map(|(x, row)| x * &row[j]).sum();
            if !p.is_integer() {
                return Err(Error::BadGlue(format!("pairing {p} with basis vector {j}")));
            }
        }
        let sq = super::matrix::bilinear(&l.gram, g, g);
        if !sq.is_integer() {
            return Err(Error::BadGlue(format!("square {sq} not integral")));
        }
        if l.is_even() && !sq.to_integer().is_even() {
            return Err(Error::BadGlue(format!("odd square {sq}")));
        }
    }
    let den = glues.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut rows: ZMat = super::matrix::identity(n).into_iter().map(|r| r.into_iter().map(|x| x * &den).collect()).collect();
    for g in glues {
        rows.push(g.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect());
    }
    let b = row_lattice_basis(&rows);
    let basis: QMat = b.iter().map(|r| r.iter().map(|x| Rat::new(x.clone(), den.clone())).collect()).collect();
    let mut gram = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = super::matrix::bilinear(&l.gram, &basis[i], &basis[j]);
            if !v.is_integer() {
                return Err(Error::BadGlue(format!("glue vectors pair to {v}")));
            }
            gram[i][j] = v.to_integer();
        }
    }
    let lat = GramLattice { gram, label: None };
    if l.is_even() && !lat.is_even() {
        return Err(Error::BadGlue("overlattice is odd".into()));
    }
    let d_old = l.det().abs();
    let d_new = lat.det().abs();
    let index = if d_new.is_zero() { BigInt::zero() } else { (d_old / d_new).sqrt() };
    Ok(Overlattice { lattice: lat, basis, index })
}

/// Result of cutting `T` by an extra class `v`.
#[derive(Clone, Debug)]
pub struct Enhancement {
    /// `v^⊥` in `T`, saturated.
    pub complement: Sublat,
    pub v_square: BigInt,
    /// gcd of the pairings `v·e_j`: `v / divisibility` is the dual class glued to the NS side.
    pub divisibility: BigInt,
    pub disc_element: Vec<Rat>,
    /// `q(v / divisibility)` reduced into `[0, 2)`.
    pub disc_q: Rat,
}

pub fn enhance(t: &GramLattice, v: &[BigInt]) -> Result<Enhancement> {
    if v.len() != t.rank() {
        return Err(Error::Dimension(format!("vector of length {} for rank {}", v.len(), t.rank())));
    }
    if !gcd_all(v).is_one() {
        return Err(Error::Imprimitive);
    }
    let sq = zbilinear(&t.gram, v, v);
    if !sq.is_negative() {
        return Err(Error::NonNegativeSquare);
    }
    let complement = orth_complement(&Sublat::new(t.clone(), vec![v.to_vec()]));
    let gv = mat_vec(&t.gram, v);
    let divisibility = gcd_all(&gv);
    let disc_element: Vec<Rat> = v.iter().map(|x| Rat::new(x.clone(), divisibility.clone())).collect();
    let q = Rat::new(sq.clone(), &divisibility * &divisibility);
    let disc_q = super::disc::mod_rat(&q, 2);
    Ok(Enhancement { complement, v_square: sq, divisibility, disc_element, disc_q })
}

/// Gauss-reduced `[a, b, c]` of a definite binary Gram `[[a, b], [b, c]]`, sign-normalised to positive.
pub fn reduce_binary(g: &ZMat) -> Option<[BigInt; 3]> {
    if g.len() != 2 {
        return None;
    }
    let (mut a, mut b, mut c) = (g[0][0].clone(), g[0][1].clone(), g[1][1].clone());
    if &a * &c - &b * &b <= BigInt::zero() {
        return None;
    }
    if a.is_negative() {
        a = -a;
        b = -b;
        c = -c;
    }
    loop {
        // e2 -> e2 - k e1 with k the nearest integer to b/a
        let k = (BigInt::from(2) * &b + &a).div_floor(&(BigInt::from(2) * &a));
        if !k.is_zero() {
            let nb = &b - &k * &a;
            c = &c - BigInt::from(2) * &k * &b + &k * &k * &a;
            b = nb;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        break;
    }
    if b.is_negative() && (BigInt::from(2) * b.abs() == a || a == c) {
        b = -b;
    }
    Some([a, b, c])
}

#[cfg(test)]
mod tests {
    use super::super::matrix::{det, zvec};
    use super::super::snf::smith_normal_form;
    use super::super::{disc_form, disc_forms_isomorphic, parse_lattice_expr};
    use super::*;
    use crate::arith::rq;
    use proptest::prelude::*;

    fn tx() -> GramLattice {
        parse_lattice_expr("U+U(2)").unwrap()
    }

    #[test]
    fn complement_in_transcendental_lattice() {
        for n in [1i64, 3] {
            let c = orth_complement(&Sublat::new(tx(), vec![zvec(&[1, -n, 0, 0])])).lattice();
            let target = parse_lattice_expr(&format!("<{}>+U(2)", 2 * n)).unwrap();
            assert_eq!(c.det(), target.det());
            assert_eq!(c.signature(), target.signature());
            assert!(disc_forms_isomorphic(&disc_form(&c).unwrap(), &disc_form(&target).unwrap()).unwrap());
        }
        let c = orth_complement(&Sublat::new(parse_lattice_expr("U").unwrap(), vec![zvec(&[1, 0])]));
        assert_eq!(c.lattice().gram, super::super::matrix::zmat(&[&[0]]));
    }

    #[test]
    fn glue_to_a2() {
        let l = parse_lattice_expr("<-2>+<-6>").unwrap();
        let o = overlattice_from_glue(&l, &[vec![rq(1, 2), rq(1, 2)]]).unwrap();
        assert_eq!(o.lattice.det(), BigInt::from(3));
        assert_eq!(o.index, BigInt::from(2));
        assert_eq!(reduce_binary(&o.lattice.gram).unwrap(), [2, 1, 2].map(BigInt::from));
        assert_eq!(overlattice_from_glue(&l, &[]).unwrap().lattice.det(), l.det());
        assert!(matches!(overlattice_from_glue(&l, &[vec![rq(1, 2), rq(0, 1)]]), Err(Error::BadGlue(_))));
    }

    #[test]
    fn glue_w_lattice() {
        // U + 2 D8(-1) + <-2N>, N = 3, glued along one spinor class in each D8
        let l = parse_lattice_expr("U+D8(-1)+D8(-1)+<-6>").unwrap();
        let mut g = vec![rq(0, 1); 19];
        for block in [2usize, 10] {
            // spinor class of D8(-1): (1/2)(e1 + e3 + e5 + e7) in the chain labelling
            for i in [0usize, 2, 4, 6] {
                g[block + i] = rq(1, 2);
            }
        }
        let o = overlattice_from_glue(&l, &[g.clone()]).unwrap();
        assert_eq!(o.lattice.det(), BigInt::from(24));
        g[18] = rq(1, 2);
        assert!(matches!(overlattice_from_glue(&l, &[g]), Err(Error::BadGlue(_))));
    }

    #[test]
    fn enhancement_examples() {
        let e = enhance(&tx(), &zvec(&[1, -3, 0, 0])).unwrap();
        assert_eq!(e.v_square, BigInt::from(-6));
        assert_eq!(e.complement.lattice().det(), BigInt::from(-24));
        let t = parse_lattice_expr("U(2)+U(4)").unwrap();
        let e = enhance(&t, &zvec(&[1, -2, 0, 0])).unwrap();
        let target = parse_lattice_expr("<8>+U(4)").unwrap();
        let c = e.complement.lattice();
        assert!(disc_forms_isomorphic(&disc_form(&c).unwrap(), &disc_form(&target).unwrap()).unwrap());
        let t = parse_lattice_expr("<4>+U(4)").unwrap();
        let c = enhance(&t, &zvec(&[1, 1, -1])).unwrap().complement.lattice();
        assert_eq!(c.det(), BigInt::from(16));
        assert_eq!(reduce_binary(&c.gram).unwrap(), [4, 0, 4].map(BigInt::from));
        assert_eq!(enhance(&tx(), &zvec(&[2, -2, 0, 0])).unwrap_err(), Error::Imprimitive);
        assert_eq!(enhance(&tx(), &zvec(&[1, 1, 0, 0])).unwrap_err(), Error::NonNegativeSquare);
    }

    fn random_gram(n: usize, e: &[i64]) -> GramLattice {
        let mut g = super::super::matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = if i == j { 2 * e[i * 6 + j] } else { e[i * 6 + j] };
                g[i][j] = BigInt::from(x);
                g[j][i] = BigInt::from(x);
            }
        }
        GramLattice::new(g).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn complement_is_primitive(n in 2usize..=5, e in prop::collection::vec(-3i64..=3, 36), v in prop::collection::vec(-3i64..=3, 5)) {
            let l = random_gram(n, &e);
            prop_assume!(!l.det().is_zero());
            let v = zvec(&v[..n]);
            prop_assume!(v.iter().any(|x| !x.is_zero()));
            let c = orth_complement(&Sublat::new(l.clone(), vec![v.clone()]));
            prop_assert_eq!(c.rank(), n - 1);
            for r in &c.basis {
                prop_assert!(l.pair(r, &v).is_zero());
            }
            if !c.basis.is_empty() {
                prop_assert!(smith_normal_form(&c.basis).factors().iter().all(|d| d.is_one()));
            }
        }

        #[test]
        fn overlattice_det_law(n in 1usize..=4, e in prop::collection::vec(-3i64..=3, 36), k in 2i64..=3) {
            // scale an even lattice by k^2 and glue the obvious 1/k multiples back in
            let l = random_gram(n, &e);
            prop_assume!(!l.det().is_zero());
            let big = super::super::rescale(&l, k * k);
            let glues: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| if i == j { rq(1, k) } else { rq(0, 1) }).collect()).collect();
            let o = overlattice_from_glue(&big, &glues).unwrap();
            let idx = BigInt::from(k).pow(n as u32);
            prop_assert_eq!(o.index.clone(), idx.clone());
            prop_assert_eq!(o.lattice.det().abs() * &idx * &idx, big.det().abs());
            prop_assert_eq!(det(&o.lattice.gram).abs(), l.det().abs());
        }
    }
}
