//! Heuristic gcd for integer multivariate polynomials by evaluation at a large integer
//! and balanced-digit interpolation; callers fall back to a remainder sequence on failure.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse polynomial over Z in a fixed number of variables.
pub(crate) type ZPoly = BTreeMap<Vec<u32>, BigInt>;

const ATTEMPTS: usize = 6;

fn max_norm(p: &ZPoly) -> BigInt {
    p.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

fn content(p: &ZPoly) -> BigInt {
    p.values().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn ground_lc(p: &ZPoly) -> BigInt {
    p.iter().next_back().map(|(_, c)| c.abs()).unwrap_or_else(BigInt::one)
}

/// Substitutes `xi` for the last variable.
fn eval_last(p: &ZPoly, xi: &BigInt) -> ZPoly {
    let mut out = ZPoly::new();
    for (e, c) in p {
        let (last, rest) = e.split_last().expect("at least one variable");
        let v = c * xi.pow(*last);
        let slot = out.entry(rest.to_vec()).or_insert_with(BigInt::zero);
        *slot += v;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Balanced residue in `(-xi/2, xi/2]`.
fn sym_mod(c: &BigInt, xi: &BigInt) -> BigInt {
    let r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r - xi
    } else {
        r
    }
}

/// Rebuilds a polynomial in one more variable from its value at `xi`.
fn interpolate(mut g: ZPoly, xi: &BigInt) -> ZPoly {
    let mut out = ZPoly::new();
    let mut k = 0u32;
    while !g.is_empty() {
        let mut next = ZPoly::new();
        for (e, c) in &g {
            let d = sym_mod(c, xi);
            let rest = (c - &d) / xi;
            if !d.is_zero() {
                let mut e2 = e.clone();
                e2.push(k);
                out.insert(e2, d);
            }
            if !rest.is_zero() {
                next.insert(e.clone(), rest);
            }
        }
        g = next;
        k += 1;
    }
    out
}

fn primitive(p: ZPoly) -> ZPoly {
    let c = content(&p);
    if c.is_one() || c.is_zero() {
        return p;
    }
    p.into_iter().map(|(e, v)| (e, v / &c)).collect()
}

/// Gcd of `f` and `g` in `nvars` variables, assuming both are nonzero; `None` when the
/// heuristic gives up. `divides(h, f)` must decide exact divisibility for any number of variables.
pub(crate) fn heu_gcd(f: &ZPoly, g: &ZPoly, nvars: usize, divides: &dyn Fn(&ZPoly, &ZPoly) -> bool) -> Option<ZPoly> {
    if nvars == 0 {
        let a: BigInt = f.values().next().cloned().unwrap_or_else(BigInt::zero);
        let b = g.values().next().cloned().unwrap_or_else(BigInt::zero);
        return Some(BTreeMap::from([(vec![], a.gcd(&b))]));
    }
    let (cf, cg) = (content(f), content(g));
    let c = cf.gcd(&cg);
    let f: ZPoly = f.iter().map(|(e, v)| (e.clone(), v / &cf)).collect();
    let g: ZPoly = g.iter().map(|(e, v)| (e.clone(), v / &cg)).collect();
    let (fn_, gn) = (max_norm(&f), max_norm(&g));
    let b: BigInt = fn_.clone().min(gn.clone()) * 2 + 29;
    let mut xi: BigInt = b.clone().min(b.sqrt() * 99);
    let by_lc = (fn_ / ground_lc(&f)).min(gn / ground_lc(&g)) * 2 + 2;
    xi = xi.max(by_lc);
    for _ in 0..ATTEMPTS {
        let ff = eval_last(&f, &xi);
        let gg = eval_last(&g, &xi);
        if !ff.is_empty() && !gg.is_empty() {
            let inner = heu_gcd(&ff, &gg, nvars - 1, divides)?;
            let h = primitive(interpolate(inner, &xi));
            if !h.is_empty() && divides(&h, &f) && divides(&h, &g) {
                return Some(h.into_iter().map(|(e, v)| (e, v * &c)).collect());
            }
        }
        xi = &xi * xi.sqrt().sqrt() * 73794 / 27011;
        if xi.sign() != Sign::Plus {
            return None;
        }
    }
    None
}
