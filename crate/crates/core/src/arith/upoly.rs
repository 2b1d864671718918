use std::fmt;

use super::{Field, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial with coefficients listed from the constant term up.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F: Field> {
    pub var: String,
    coeffs: Vec<F>,
}

/// Valuation of a polynomial along a squarefree factor; zero has infinite valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(k) => Some(k),
            Valuation::Infinite => None,
        }
    }
}

impl<F: Field> UPoly<F> {
    pub fn new(var: &str, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.fis_zero()) {
            coeffs.pop();
        }
        UPoly { var: var.to_string(), coeffs }
    }

    pub fn zero(var: &str) -> Self {
        UPoly { var: var.to_string(), coeffs: vec![] }
    }

    pub fn constant(var: &str, c: F) -> Self {
        Self::new(var, vec![c])
    }

    pub fn one(var: &str) -> Self {
        Self::constant(var, F::fone())
    }

    /// The variable itself.
    pub fn x(var: &str) -> Self {
        Self::new(var, vec![F::fzero(), F::fone()])
    }

    /// `c * var^k`.
    pub fn monomial(var: &str, c: F, k: usize) -> Self {
        let mut v = vec![F::fzero(); k];
        v.push(c);
        Self::new(var, v)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::fzero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::fzero)
    }

    fn same_var(&self, o: &Self) -> Self {
        // Constants carry no real dependence on the variable name.
        UPoly { var: if self.is_constant() { o.var.clone() } else { self.var.clone() }, coeffs: vec![] }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).fadd(&o.coeff(i))).collect();
        Self::new(&self.same_var(o).var, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).fsub(&o.coeff(i))).collect();
        Self::new(&self.same_var(o).var, v)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|c| c.fneg()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let var = self.same_var(o).var;
        if self.is_zero() || o.is_zero() {
            return Self::zero(&var);
        }
        let mut v = vec![F::fzero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.fis_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].fadd(&a.fmul(b));
            }
        }
        Self::new(&var, v)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|a| a.fmul(c)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(&self.var);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.fmul(&F::from_rat(&Rat::from_integer((i as i64).into()))))
            .collect();
        Self::new(&self.var, v)
    }

    /// Quotient and remainder; division by zero is an error.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lc().finv()?;
        let mut r = self.coeffs.clone();
        let var = self.same_var(d).var;
        if r.len() <= dd {
            return Ok((Self::zero(&var), Self::new(&var, r)));
        }
        let mut q = vec![F::fzero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].fmul(&inv);
            if !c.fis_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].fsub(&c.fmul(b));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(&var, q), Self::new(&var, r)))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().finv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::fzero(), |acc, c| acc.fmul(x).fadd(c))
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&g.var), |acc, c| acc.mul(g).add(&Self::constant(&g.var, c.clone())))
    }

    /// Reverses the coefficient list against a target degree: `s^n f(1/s)`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut v = vec![F::fzero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Self::new(&self.var, v)
    }

    /// Exact square root with the leading coefficient's root taken from the field.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let lc_root = self.lc().fsqrt()?;
        let mut r = Self::constant(&self.var, lc_root);
        for (f, m) in squarefree_decomposition(self).ok()? {
            if m % 2 != 0 {
                return None;
            }
            r = r.mul(&f.pow(m / 2));
        }
        Some(r)
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd<F: Field>(p: &UPoly<F>, q: &UPoly<F>) -> UPoly<F> {
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        let (_, r) = a.divrem(&b).expect("nonzero divisor");
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Yun's algorithm; factors are monic, pairwise coprime, with increasing multiplicity.
pub fn squarefree_decomposition<F: Field>(p: &UPoly<F>) -> Result<Vec<(UPoly<F>, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = poly_gcd(p, &dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        let nb = b.div_exact(&a).expect("gcd divides");
        let nc = d.div_exact(&a).expect("gcd divides");
        d = nc.sub(&nb.derivative());
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// Largest `k` with `f^k | p`.
pub fn valuation_at<F: Field>(p: &UPoly<F>, f: &UPoly<F>) -> Result<Valuation> {
    if f.is_constant() {
        return Err(Error::ConstantPlace);
    }
    if p.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let mut k = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.div_exact(f) {
        cur = q;
        k += 1;
    }
    Ok(Valuation::Finite(k))
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.fis_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if c.is_atomic() { c.to_string() } else { format!("({c})") };
            match (k, c.fis_one()) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "{}", self.var)?,
                (1, false) => write!(f, "{cs}*{}", self.var)?,
                (_, true) => write!(f, "{}^{k}", self.var)?,
                (_, false) => write!(f, "{cs}*{}^{k}", self.var)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ri, Rat};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UPoly<Rat> {
        UPoly::new("t", c.iter().map(|&x| ri(x)).collect())
    }

    // t^8 (t^4 - 4)^2
    fn delta_ii() -> UPoly<Rat> {
        let t = UPoly::<Rat>::x("t");
        t.pow(8).mul(&p(&[-4, 0, 0, 0, 1]).pow(2))
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-4, 0, 1]), &p(&[-2, 1])), p(&[-2, 1]));
        assert_eq!(poly_gcd(&p(&[6, 0, 2]), &p(&[])), p(&[3, 0, 1]));
        assert_eq!(poly_gcd(&p(&[]), &p(&[])), p(&[]));
        assert_eq!(poly_gcd(&delta_ii(), &p(&[16, 0, 0, 0, -4, 0, 0, 0, 1])), p(&[1]));
    }

    #[test]
    fn squarefree_examples() {
        let sf = squarefree_decomposition(&delta_ii()).unwrap();
        assert_eq!(sf, vec![(p(&[-4, 0, 0, 0, 1]), 2), (p(&[0, 1]), 8)]);
        assert_eq!(squarefree_decomposition(&p(&[-5, 1])).unwrap(), vec![(p(&[-5, 1]), 1)]);
        assert_eq!(squarefree_decomposition(&p(&[1, 0, 1]).pow(3)).unwrap(), vec![(p(&[1, 0, 1]), 3)]);
        assert_eq!(squarefree_decomposition(&p(&[])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation_at(&delta_ii(), &p(&[-4, 0, 0, 0, 1])).unwrap(), Valuation::Finite(2));
        assert_eq!(valuation_at(&p(&[0, 0, 0, 1]), &p(&[0, 1])).unwrap(), Valuation::Finite(3));
        assert_eq!(valuation_at(&p(&[1, 0, 1]), &p(&[-1, 1])).unwrap(), Valuation::Finite(0));
        assert_eq!(valuation_at(&p(&[]), &p(&[0, 1])).unwrap(), Valuation::Infinite);
        assert_eq!(valuation_at(&p(&[1, 1]), &p(&[3])), Err(Error::ConstantPlace));
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(p(&[1, 1]).divrem(&p(&[])), Err(Error::DivisionByZero));
    }

    #[test]
    fn sqrt_examples() {
        let g = p(&[-4, 0, 1]);
        assert_eq!(g.mul(&g).sqrt(), Some(g.clone()));
        assert_eq!(p(&[0, 1]).sqrt(), None);
        assert_eq!(p(&[0, 0, -1]).sqrt(), None);
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = UPoly<Rat>> {
        prop::collection::vec(-4i64..=4, 0..=max_deg + 1).prop_map(|c| p(&c))
    }

    fn brute_common_degree(a: &UPoly<Rat>, b: &UPoly<Rat>) -> usize {
        // Divisors of degree <= 4 with small integer coefficients, monic.
        let mut best = 0;
        let g = poly_gcd(a, b);
        for d in 1..=4usize {
            let mut found = false;
            let mut idx = vec![-3i64; d];
            'outer: loop {
                let mut c = idx.clone();
                c.push(1);
                let f = p(&c);
                if a.div_exact(&f).is_some() && b.div_exact(&f).is_some() {
                    found = true;
                    assert!(g.div_exact(&f).is_some(), "common divisor {f} does not divide gcd {g}");
                }
                for slot in idx.iter_mut() {
                    *slot += 1;
                    if *slot <= 3 {
                        continue 'outer;
                    }
                    *slot = -3;
                }
                break;
            }
            if found {
                best = d;
            }
        }
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn gcd_divides_and_is_maximal(x in small_poly(3), y in small_poly(3), z in small_poly(2)) {
            let a = x.mul(&z);
            let b = y.mul(&z);
            let g = poly_gcd(&a, &b);
            if !a.is_zero() && !b.is_zero() {
                prop_assert!(a.div_exact(&g).is_some());
                prop_assert!(b.div_exact(&g).is_some());
                let brute = brute_common_degree(&a, &b);
                prop_assert!(g.degree().unwrap() >= brute);
            }
        }

        #[test]
        fn squarefree_reassembles(fs in prop::collection::vec((small_poly(3), 1u32..4), 1..4)) {
            let mut prod = p(&[3]);
            for (f, m) in &fs {
                prod = prod.mul(&f.pow(*m));
            }
            prop_assume!(!prod.is_zero() && prod.degree().unwrap() <= 12);
            let sf = squarefree_decomposition(&prod).unwrap();
            let mut back = p(&[1]);
            let mut last = 0;
            for (f, m) in &sf {
                prop_assert!(*m > last);
                last = *m;
                prop_assert_eq!(f.lc(), ri(1));
                back = back.mul(&f.pow(*m));
            }
            prop_assert_eq!(back.scale(&prod.lc()), prod);
        }

        #[test]
        fn sqrt_of_square(g in small_poly(6)) {
            prop_assume!(!g.is_zero());
            let r = g.mul(&g).sqrt().unwrap();
            prop_assert!(r == g || r == g.neg());
        }
    }

    #[test]
    fn squarefree_reassembly_200_cases() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut prod = p(&[rng.gen_range(1..5)]);
            while prod.degree().unwrap() < 6 {
                let d = rng.gen_range(1..=3);
                let f = p(&(0..=d).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>());
                if f.is_constant() {
                    continue;
                }
                let m = rng.gen_range(1..=3);
                if prod.degree().unwrap() + f.degree().unwrap() * m as usize > 12 {
                    break;
                }
                prod = prod.mul(&f.pow(m));
            }
            let sf = squarefree_decomposition(&prod).unwrap();
            let back = sf.iter().fold(p(&[1]), |acc, (f, m)| acc.mul(&f.pow(*m)));
            assert_eq!(back.scale(&prod.lc()), prod);
            for i in 0..sf.len() {
                for j in i + 1..sf.len() {
                    assert!(poly_gcd(&sf[i].0, &sf[j].0).is_constant());
                }
            }
        }
    }
}
