//! Discriminant groups and their finite quadratic forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::bilinear;
use super::snf::smith_normal_form;
use super::GramLattice;
use crate::arith::Rat;
use crate::error::{Error, Result};

/// Largest group order accepted by [`disc_forms_isomorphic`].
pub const DISC_ORDER_BOUND: u64 = 10_000;

/// `L^∨/L` with generators in lattice coordinates, `q` in `[0, 2)` and `b` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscForm {
    pub factors: Vec<BigInt>,
    #[serde(skip)]
    pub gens: Vec<Vec<Rat>>,
    #[serde(serialize_with = "ser_rats")]
    pub q: Vec<Rat>,
    #[serde(skip)]
    pub b: Vec<Vec<Rat>>,
    pub even: bool,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::arith::fmt_rat))
}

pub(crate) fn mod_rat(x: &Rat, m: i64) -> Rat {
    let m = Rat::from_integer(BigInt::from(m));
    x - (x / &m).floor() * &m
}

impl DiscForm {
    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Minimal number of generators, `l(A)`.
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    /// The form with `q` and `b` negated, as for `L(-1)`.
    pub fn negate(&self) -> DiscForm {
        DiscForm {
            factors: self.factors.clone(),
            gens: self.gens.clone(),
            q: self.q.iter().map(|x| mod_rat(&-x, 2)).collect(),
            b: self.b.iter().map(|r| r.iter().map(|x| mod_rat(&-x, 1)).collect()).collect(),
            even: self.even,
        }
    }

    /// q-value of an element given by coefficients on the generators.
    pub fn q_of(&self, a: &[BigInt]) -> Rat {
        let mut s = Rat::zero();
        for i in 0..a.len() {
            let ai = Rat::from_integer(a[i].clone());
            s += &ai * &ai * &self.q[i];
            for j in i + 1..a.len() {
                s += Rat::from_integer(BigInt::from(2) * &a[i] * &a[j]) * &self.b[i][j];
            }
        }
        mod_rat(&s, if self.even { 2 } else { 1 })
    }
}

pub fn disc_form(l: &GramLattice) -> Result<DiscForm> {
    if !l.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let snf = smith_normal_form(&l.gram);
    let n = l.rank();
    let mut factors = vec![];
    let mut gens = vec![];
    for i in 0..n {
        let d = snf.s[i][i].clone();
        if d.is_one() {
            continue;
        }
        let g: Vec<Rat> = (0..n).map(|r| Rat::new(snf.v[r][i].clone(), d.clone())).collect();
        factors.push(d);
        gens.push(g);
    }
    let even = l.is_even();
    let qmod = if even { 2 } else { 1 };
    let q = gens.iter().map(|g| mod_rat(&bilinear(&l.gram, g, g), qmod)).collect();
    let b = gens.iter().map(|g| gens.iter().map(|h| mod_rat(&bilinear(&l.gram, g, h), 1)).collect()).collect();
    Ok(DiscForm { factors, gens, q, b, even })
}

/// Integer model of a discriminant form: values scaled by the exponent `e`.
struct Table {
    dims: Vec<u64>,
    e: u64,
    qm: u64,
    q: Vec<u64>,
    b: Vec<Vec<u64>>,
    coords: Vec<Vec<u64>>,
}

impl Table {
    fn new(a: &DiscForm) -> Result<Table> {
        let order = a.order();
        if order > BigInt::from(DISC_ORDER_BOUND) {
            return Err(Error::OrderBound(order.to_string()));
        }
        let dims: Vec<u64> = a.factors.iter().map(|d| d.to_u64().expect("bounded")).collect();
        let e = dims.last().copied().unwrap_or(1);
        let qm = if a.even { 2 * e } else { e };
        let scale = |x: &Rat, m: u64| -> u64 {
            let v = x * Rat::from_integer(BigInt::from(e));
            assert!(v.is_integer(), "value not in (1/e)Z");
            v.to_integer().mod_floor(&BigInt::from(m)).to_u64().expect("small")
        };
        let q = a.q.iter().map(|x| scale(x, qm)).collect();
        let b = a.b.iter().map(|r| r.iter().map(|x| scale(x, e)).collect()).collect();
        let total = order.to_u64().expect("bounded") as usize;
        let mut coords = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rest = idx as u64;
            let c: Vec<u64> = dims
                .iter()
                .map(|d| {
                    let x = rest % d;
                    rest /= d;
                    x
                })
                .collect();
            coords.push(c);
        }
        Ok(Table { dims, e, qm, q, b, coords })
    }

    fn index(&self, c: &[u64]) -> usize {
        let mut idx = 0u64;
        for (x, d) in c.iter().zip(&self.dims).rev() {
            idx = idx * d + x;
        }
        idx as usize
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let c: Vec<u64> = self.coords[x].iter().zip(&self.coords[y]).zip(&self.dims).map(|((a, b), d)| (a + b) % d).collect();
        self.index(&c)
    }

    fn qv(&self, x: usize) -> u64 {
        let c = &self.coords[x];
        let mut s: u128 = 0;
        let m = self.qm as u128;
        for i in 0..c.len() {
            s += (c[i] as u128) * (c[i] as u128) % m * (self.q[i] as u128);
            for j in i + 1..c.len() {
                s += 2 * (c[i] as u128) * (c[j] as u128) % m * (self.b[i][j] as u128);
            }
            s %= m;
        }
        s as u64
    }

    fn bv(&self, x: usize, y: usize) -> u64 {
        let (a, c) = (&self.coords[x], &self.coords[y]);
        let m = self.e as u128;
        let mut s: u128 = 0;
        for i in 0..a.len() {
            for j in 0..c.len() {
                s = (s + (a[i] as u128) * (c[j] as u128) % m * (self.b[i][j] as u128)) % m;
            }
        }
        s as u64
    }

    fn order_of(&self, x: usize) -> u64 {
        self.coords[x]
            .iter()
            .zip(&self.dims)
            .map(|(&a, &d)| d / a.gcd(&d))
            .fold(1u64, |acc, o| acc.lcm(&o))
    }
}

/// Isomorphism test by search over generator images; requires orders ≤ [`DISC_ORDER_BOUND`].
pub fn disc_forms_isomorphic(a: &DiscForm, b: &DiscForm) -> Result<bool> {
    if a.factors != b.factors || a.even != b.even {
        return Ok(false);
    }
    let ta = Table::new(a)?;
    let tb = Table::new(b)?;
    let n = tb.coords.len();
    let hist = |t: &Table| {
        let mut h: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for x in 0..t.coords.len() {
            *h.entry((t.order_of(x), t.qv(x))).or_default() += 1;
        }
        h
    };
    if hist(&ta) != hist(&tb) {
        return Ok(false);
    }
    let k = ta.dims.len();
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(k);
    for i in 0..k {
        let gi = ta.index(&(0..k).map(|j| u64::from(i == j)).collect::<Vec<_>>());
        let qa = ta.qv(gi);
        candidates.push((0..n).filter(|&y| tb.order_of(y) == ta.dims[i] && tb.qv(y) == qa).collect());
    }
    let gens_a: Vec<usize> =
        (0..k).map(|i| ta.index(&(0..k).map(|j| u64::from(i == j)).collect::<Vec<_>>())).collect();
    let mut span = vec![false; n];
    span[0] = true;
    let mut members = vec![0usize];
    let mut imgs = Vec::with_capacity(k);
    Ok(search(&ta, &tb, &gens_a, &candidates, &mut imgs, &mut span, &mut members))
}

fn search(
    ta: &Table,
    tb: &Table,
    gens_a: &[usize],
    cands: &[Vec<usize>],
    imgs: &mut Vec<usize>,
    span: &mut Vec<bool>,
    members: &mut Vec<usize>,
) -> bool {
    let i = imgs.len();
    if i == gens_a.len() {
        return true;
    }
    'cand: for &y in &cands[i] {
        for (j, &h) in imgs.iter().enumerate() {
            if tb.bv(y, h) != ta.bv(gens_a[i], gens_a[j]) {
                continue 'cand;
            }
        }
        // <y> must meet the current span trivially
        let mut m = y;
        for _ in 1..ta.dims[i] {
            if span[m] {
                continue 'cand;
            }
            m = tb.add(m, y);
        }
        let old = members.len();
        let mut added = vec![];
        let mut mult = y;
        for _ in 1..ta.dims[i] {
            for s in 0..old {
                let z = tb.add(members[s], mult);
                span[z] = true;
                added.push(z);
            }
            mult = tb.add(mult, y);
        }
        members.extend(&added);
        imgs.push(y);
        if search(ta, tb, gens_a, cands, imgs, span, members) {
            return true;
        }
        imgs.pop();
        for z in members.drain(old..) {
            span[z] = false;
        }
    }
    false
}
