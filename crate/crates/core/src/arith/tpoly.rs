//! Polynomials in one distinguished variable over the field of rational functions in
//! the others, kept as elements of `Q[t, params]`.
//!
//! A polynomial that is primitive in `t` divides another in `Q(params)[t]` exactly when
//! it does so in `Q[t, params]`, so gcds and exact quotients never leave the polynomial ring.

use super::{MPoly, Valuation};
use crate::error::{Error, Result};

/// Derivative with respect to `var`.
pub fn derivative_in(p: &MPoly, var: &str) -> MPoly {
    let cs = p.coeffs_in(var);
    let d: Vec<MPoly> = cs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&super::ri(k as i64))).collect();
    MPoly::from_coeffs_in(var, &d)
}

/// Gcd of the coefficients in `var`.
pub fn content_in(p: &MPoly, var: &str) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(&c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part in `var`, scaled so the leading coefficient in `var` has leading
/// rational coefficient 1; zero stays zero.
pub fn primitive_in(p: &MPoly, var: &str) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    let q = p.div_exact(&c).expect("content divides");
    let top = q.coeffs_in(var).pop().expect("nonzero");
    q.scale(&top.lc().recip())
}

/// Gcd in `Q(params)[var]`, as a primitive polynomial; `1` when coprime.
pub fn gcd_in(p: &MPoly, q: &MPoly, var: &str) -> MPoly {
    let g = p.gcd(q);
    if g.is_zero() {
        return g;
    }
    if g.degree_in(var) == 0 {
        return MPoly::one();
    }
    primitive_in(&g, var)
}

/// Squarefree decomposition in `Q(params)[var]`: primitive, pairwise coprime factors
/// of positive degree in `var`, with increasing multiplicity.
pub fn squarefree_in(p: &MPoly, var: &str) -> Result<Vec<(MPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = vec![];
    if p.degree_in(var) == 0 {
        return Ok(out);
    }
    let p = primitive_in(p, var);
    let dp = derivative_in(&p, var);
    let a0 = gcd_in(&p, &dp, var);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&derivative_in(&b, var));
    let mut i = 1u32;
    while b.degree_in(var) > 0 {
        let a = gcd_in(&b, &d, var);
        let nb = b.div_exact(&a).expect("gcd divides");
        let nc = d.div_exact(&a).expect("gcd divides");
        d = nc.sub(&derivative_in(&nb, var));
        if a.degree_in(var) > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// Largest `k` with `f^k | p` in `Q(params)[var]`, for `f` primitive of positive degree.
pub fn valuation_in(p: &MPoly, f: &MPoly, var: &str) -> Result<Valuation> {
    if f.degree_in(var) == 0 {
        return Err(Error::ConstantPlace);
    }
    if p.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let mut k = 0;
    let mut cur = p.clone();
    while cur.degree_in(var) >= f.degree_in(var) {
        match cur.div_exact(f) {
            Some(q) => {
                cur = q;
                k += 1;
            }
            None => break,
        }
    }
    Ok(Valuation::Finite(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["t", "a", "b"]).unwrap()
    }

    #[test]
    fn gcd_ignores_parameter_content() {
        let g = gcd_in(&p("a*(t - a)^2*(t + b)"), &p("b*(t - a)*(t^2 + 1)"), "t");
        assert_eq!(g, p("t - a"));
        assert!(gcd_in(&p("a*t + 1"), &p("a"), "t").is_one());
    }

    #[test]
    fn squarefree_with_parameters() {
        let sf = squarefree_in(&p("3*a*(t - a)*(t + b)^2*(t^2 - a)^3"), "t").unwrap();
        assert_eq!(sf, vec![(p("t - a"), 1), (p("t + b"), 2), (p("t^2 - a"), 3)]);
        assert_eq!(valuation_in(&p("(t^2 - a)^3*(t+1)"), &p("t^2 - a"), "t").unwrap(), Valuation::Finite(3));
        assert_eq!(valuation_in(&p("0"), &p("t"), "t").unwrap(), Valuation::Infinite);
    }

    #[test]
    fn derivative() {
        assert_eq!(derivative_in(&p("a*t^3 + b*t + a"), "t"), p("3*a*t^2 + b"));
    }
}
