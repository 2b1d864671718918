//! Standard lattices and the small lattice-expression language.

use num_bigint::BigInt;

use super::matrix::zeros;
use super::{direct_sum, rescale, GramLattice};
use crate::error::{Error, Result};

/// Positive-definite Cartan matrix of a simply-laced Dynkin diagram given by its edges.
fn cartan(n: usize, edges: &[(usize, usize)]) -> GramLattice {
    let mut g = zeros(n, n);
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = BigInt::from(2);
    }
    for &(a, b) in edges {
        g[a][b] = BigInt::from(-1);
        g[b][a] = BigInt::from(-1);
    }
    GramLattice { gram: g, label: None }
}

fn root_lattice(kind: char, n: usize) -> Result<GramLattice> {
    let chain = |m: usize| (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match (kind, n) {
        ('A', n) if n >= 1 => Ok(cartan(n, &chain(n))),
        ('D', n) if n >= 4 => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            Ok(cartan(n, &e))
        }
        ('E', 6..=8) => {
            // chain 0-2-3-4-...-(n-1) with node 1 attached to node 3
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            Ok(cartan(n, &e))
        }
        _ => Err(Error::UnknownLattice(format!("{kind}{n}"))),
    }
}

/// A single named lattice: `U`, `U(2)`, `<-6>`, `A2(-1)`, `D8(-1)`, `E8(-2)`, `K3`.
///
/// Root lattices without a scale are positive definite; `(-1)` gives the
/// negative-definite convention with diagonal `-2` and adjacency `+1`.
pub fn named(atom: &str) -> Result<GramLattice> {
    let s = atom.trim();
    let bad = || Error::UnknownLattice(s.to_string());
    if let Some(inner) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
        let m: i64 = inner.trim().parse().map_err(|_| bad())?;
        return Ok(GramLattice::from_i64(&[&[m]]).with_label(s));
    }
    let (base, scale) = match s.find('(') {
        Some(p) => {
            let k = s[p + 1..].strip_suffix(')').ok_or_else(bad)?;
            (&s[..p], k.trim().parse::<i64>().map_err(|_| bad())?)
        }
        None => (s, 1),
    };
    let l = match base {
        "U" => GramLattice::from_i64(&[&[0, 1], &[1, 0]]),
        "K3" => parse_lattice_expr("2E8(-1)+3U")?,
        _ => {
            let mut it = base.chars();
            let kind = it.next().ok_or_else(bad)?;
            let n: usize = it.as_str().parse().map_err(|_| bad())?;
            root_lattice(kind, n)?
        }
    };
    Ok(rescale(&l, scale).with_label(s))
}

/// Sum of atoms with optional multiplicity prefixes, e.g. `U(2)+2E8(-1)+<-6>`.
pub fn parse_lattice_expr(expr: &str) -> Result<GramLattice> {
    let mut parts = vec![];
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = expr.as_bytes();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' | b'<' => depth += 1,
            b')' | b'>' => depth -= 1,
            b'+' if depth == 0 => {
                parts.push(&expr[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&expr[start..]);
    let mut ls = vec![];
    for p in parts {
        let p = p.trim();
        let digits = p.chars().take_while(char::is_ascii_digit).count();
        let (mult, atom) = if digits > 0 && !p.starts_with('<') {
            (p[..digits].parse::<usize>().map_err(|_| Error::UnknownLattice(p.into()))?, &p[digits..])
        } else {
            (1, p)
        };
        let l = named(atom)?;
        for _ in 0..mult {
            ls.push(l.clone());
        }
    }
    Ok(direct_sum(&ls).with_label(expr.trim()))
}

/// Reads `{"name", "gram"}` or `{"sum": [expr, ...]}`.
pub fn lattice_from_json(v: &serde_json::Value) -> Result<GramLattice> {
    if let Some(g) = v.get("gram") {
        let gram: Vec<Vec<i64>> = serde_json::from_value(g.clone()).map_err(|e| Error::Input(e.to_string()))?;
        let rows: Vec<&[i64]> = gram.iter().map(Vec::as_slice).collect();
        let l = GramLattice::new(super::matrix::zmat(&rows))?;
        return Ok(match v.get("name").and_then(|n| n.as_str()) {
            Some(n) => l.with_label(n),
            None => l,
        });
    }
    if let Some(s) = v.get("sum").and_then(|s| s.as_array()) {
        let mut ls = vec![];
        for e in s {
            let e = e.as_str().ok_or_else(|| Error::Input("sum entries must be strings".into()))?;
            ls.push(parse_lattice_expr(e)?);
        }
        let mut l = direct_sum(&ls);
        if let Some(n) = v.get("name").and_then(|n| n.as_str()) {
            l = l.with_label(n);
        }
        return Ok(l);
    }
    if let Some(n) = v.get("name").and_then(|n| n.as_str()) {
        return parse_lattice_expr(n);
    }
    Err(Error::Input("lattice JSON needs `gram` or `sum`".into()))
}

#[cfg(test)]
mod tests {
    use super::super::disc_form;
    use super::*;

    #[test]
    fn root_lattice_dets() {
        for (s, d) in [("A1", 2), ("A2", 3), ("A7", 8), ("D4", 4), ("D8", 4), ("E6", 3), ("E7", 2), ("E8", 1)] {
            assert_eq!(named(s).unwrap().det(), BigInt::from(d), "{s}");
        }
        let e8 = named("E8(-1)").unwrap();
        assert_eq!(e8.det(), BigInt::from(1));
        assert!(e8.is_even());
        assert_eq!(e8.signature(), (0, 8, 0));
        let d8 = named("D8(-1)").unwrap();
        assert_eq!(disc_form(&d8).unwrap().factors, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(named("A2(-1)").unwrap(), GramLattice::from_i64(&[&[-2, 1], &[1, -2]]).with_label("A2(-1)"));
    }

    #[test]
    fn expressions() {
        let k3 = parse_lattice_expr("K3").unwrap();
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.det(), BigInt::from(-1));
        assert_eq!(parse_lattice_expr("2E8(-1)+<-6>").unwrap().rank(), 17);
        assert!(named("F4").is_err());
        assert!(named("<x>").is_err());
    }

    #[test]
    fn json_forms() {
        let v: serde_json::Value = serde_json::json!({"name": "U2", "gram": [[0, 2], [2, 0]]});
        assert_eq!(lattice_from_json(&v).unwrap().det(), BigInt::from(-4));
        let v = serde_json::json!({"sum": ["U", "2E8(-1)", "<-6>"]});
        assert_eq!(lattice_from_json(&v).unwrap().rank(), 19);
    }
}
