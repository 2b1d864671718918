//! Néron–Severi frames: a labelled Z-basis, its Gram matrix and named divisor classes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::fiber::{is_reducible, FiberGraph};
use crate::arith::{fmt_rat, Rat};
use crate::elliptic::FiberType;
use crate::error::{Error, Result};
use crate::lattice::matrix::{bilinear, det, rank_q, solve_q, to_q, ZMat};
use crate::lattice::{smith_normal_form, GramLattice};

/// Role of a named class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Zero,
    Fiber,
    Component { fiber: usize, index: usize },
    Section,
    Other,
}

/// Reducible fiber of a frame with the labels of its components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberInfo {
    pub id: String,
    #[serde(rename = "type")]
    pub kind: FiberType,
    pub labels: Vec<String>,
}

/// Rational coordinates over the basis of a frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClass(pub Vec<Rat>);

impl DivClass {
    pub fn zero(n: usize) -> Self {
        DivClass(vec![Rat::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(v: &[BigInt]) -> Self {
        DivClass(v.iter().map(|x| Rat::from_integer(x.clone())).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        DivClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        DivClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        DivClass(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        DivClass(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rat::is_integer)
    }

    pub fn to_ints(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }
}

/// Frame data as read from JSON.
#[derive(Clone, Debug, Deserialize)]
pub struct FibrationData {
    pub fibers: Vec<FiberSpec>,
    #[serde(default)]
    pub sections: Vec<SectionSpec>,
    pub chi: i64,
    /// Generators left out of the basis.
    #[serde(default)]
    pub omit: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FiberSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub components: Option<u32>,
    pub prefix: String,
    /// Key used by the sections' `meets`; defaults to the type, with `#k` appended for repeated types.
    #[serde(default)]
    pub id: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SectionSpec {
    pub label: String,
    #[serde(rename = "PO", default)]
    pub po: i64,
    /// Component met per fiber id; unlisted fibers are met at the identity component.
    #[serde(default)]
    pub meets: BTreeMap<String, usize>,
    /// Intersections with other sections; unlisted pairs are disjoint.
    #[serde(default)]
    pub intersections: BTreeMap<String, i64>,
}

impl FibrationData {
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("frame file: {e}")))
    }
}

/// An integral lattice with a labelled basis and a dictionary of named classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NSFrame {
    pub labels: Vec<String>,
    pub gram: ZMat,
    pub chi: i64,
    #[serde(skip)]
    pub classes: BTreeMap<String, DivClass>,
    #[serde(skip)]
    pub kinds: BTreeMap<String, Kind>,
    #[serde(skip)]
    pub fibers: Vec<FiberInfo>,
}

impl NSFrame {
    /// Frame on a bare lattice; every basis label has kind [`Kind::Other`].
    pub fn from_lattice(labels: &[&str], gram: ZMat, chi: i64) -> Result<Self> {
        let l = GramLattice::new(gram)?;
        if labels.len() != l.rank() {
            return Err(Error::Dimension(format!("{} labels for rank {}", labels.len(), l.rank())));
        }
        if !l.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        let n = labels.len();
        let mut f = NSFrame {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            gram: l.gram,
            chi,
            classes: BTreeMap::new(),
            kinds: BTreeMap::new(),
            fibers: vec![],
        };
        for (i, s) in labels.iter().enumerate() {
            f.classes.insert(s.to_string(), DivClass::unit(n, i));
            f.kinds.insert(s.to_string(), Kind::Other);
        }
        Ok(f)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn lattice(&self) -> GramLattice {
        GramLattice { gram: self.gram.clone(), label: None }
    }

    pub fn det(&self) -> BigInt {
        det(&self.gram)
    }

    pub fn pair(&self, a: &DivClass, b: &DivClass) -> Rat {
        bilinear(&self.gram, &a.0, &b.0)
    }

    pub fn square(&self, a: &DivClass) -> Rat {
        self.pair(a, a)
    }

    pub fn class(&self, label: &str) -> Result<DivClass> {
        self.classes.get(label).cloned().ok_or_else(|| Error::Input(format!("unknown divisor `{label}`")))
    }

    /// Section labels sorted, zero section excluded.
    pub fn sections(&self) -> Vec<String> {
        self.kinds.iter().filter(|(_, k)| **k == Kind::Section).map(|(s, _)| s.clone()).collect()
    }

    /// Classes spanning the trivial lattice: `O`, `F` and the non-identity fiber components.
    pub fn trivial_generators(&self) -> Result<Vec<DivClass>> {
        let mut out = vec![self.class("O")?, self.class("F")?];
        for f in &self.fibers {
            for l in &f.labels[1..] {
                out.push(self.class(l)?);
            }
        }
        Ok(out)
    }

    /// Parses `2*Q + c1_1 - O - 3/2*F`; coefficients are rational, labels are named classes.
    pub fn parse_div(&self, text: &str) -> Result<DivClass> {
        let mut acc = DivClass::zero(self.rank());
        for (coeff, label) in parse_linear(text)? {
            acc = acc.add(&self.class(&label)?.scale(&coeff));
        }
        Ok(acc)
    }

    /// Linear combination of basis labels, zero coefficients omitted.
    pub fn display(&self, d: &DivClass) -> String {
        let mut s = String::new();
        for (c, l) in d.0.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let (sign, a) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if s.is_empty() {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if !a.is_one() {
                s.push_str(&format!("{}*", fmt_rat(&a)));
            }
            s.push_str(l);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Coordinates of an ambient vector given its pairings with the basis.
    pub fn solve_by_pairings(&self, pairings: &[Rat]) -> Result<DivClass> {
        Ok(DivClass(solve_q(&to_q(&self.gram), pairings)?))
    }

    /// Adjoins a class `v` orthogonal to the frame with square `v_square`, together with a
    /// new basis element `new_label` given as a rational combination that may involve `v`.
    /// The new basis is the old one plus `new_label`; `v` must become integral in it.
    pub fn adjoin(&self, v_label: &str, v_square: i64, new_label: &str, kind: Kind, expr: &str) -> Result<NSFrame> {
        let n = self.rank();
        let mut ext = self.clone();
        ext.labels.push(v_label.to_string());
        for row in ext.gram.iter_mut() {
            row.push(BigInt::zero());
        }
        let mut last = vec![BigInt::zero(); n + 1];
        last[n] = BigInt::from(v_square);
        ext.gram.push(last);
        for c in ext.classes.values_mut() {
            c.0.push(Rat::zero());
        }
        ext.classes.insert(v_label.to_string(), DivClass::unit(n + 1, n));
        ext.kinds.insert(v_label.to_string(), Kind::Other);
        let q = ext.parse_div(expr)?;
        if q.0[n].is_zero() {
            return Err(Error::Input(format!("`{new_label}` does not involve `{v_label}`")));
        }
        // new coordinates: x = sum_{i<n} c_i e_i + c_n q, so c_n = x_n / q_n and c_i = x_i - c_n q_i
        let convert = |x: &DivClass| -> DivClass {
            let cn = &x.0[n] / &q.0[n];
            let mut c: Vec<Rat> = (0..n).map(|i| &x.0[i] - &cn * &q.0[i]).collect();
            c.push(cn);
            DivClass(c)
        };
        let basis: Vec<DivClass> = (0..=n).map(|i| if i < n { DivClass::unit(n + 1, i) } else { q.clone() }).collect();
        let mut gram = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for i in 0..=n {
            for j in 0..=n {
                let p = ext.pair(&basis[i], &basis[j]);
                if !p.is_integer() {
                    return Err(Error::NonIntegral(format!("{new_label} pairs to {}", fmt_rat(&p))));
                }
                gram[i][j] = p.to_integer();
            }
        }
        let mut out = NSFrame {
            labels: self.labels.iter().cloned().chain([new_label.to_string()]).collect(),
            gram,
            chi: self.chi,
            classes: BTreeMap::new(),
            kinds: ext.kinds.clone(),
            fibers: self.fibers.clone(),
        };
        for (l, c) in &ext.classes {
            let c2 = convert(c);
            if !c2.is_integral() {
                return Err(Error::NonIntegral(format!("{l} in the enlarged basis")));
            }
            out.classes.insert(l.clone(), c2);
        }
        out.classes.insert(new_label.to_string(), DivClass::unit(n + 1, n));
        out.kinds.insert(new_label.to_string(), kind);
        Ok(out)
    }
}

/// A fiber of another fibration on the same lattice, its components as classes of the frame.
#[derive(Clone, Debug)]
pub struct FiberClasses {
    pub kind: FiberType,
    pub prefix: String,
    pub components: Vec<DivClass>,
}

impl NSFrame {
    /// The same lattice seen through another elliptic fibration with zero section `zero`.
    /// Named classes `O`, `F`, the component labels and `sections` are replaced or added;
    /// other names are kept.
    pub fn refiber(&self, zero: &DivClass, fibers: &[FiberClasses], sections: &[(&str, DivClass)]) -> Result<NSFrame> {
        let bad = |m: String| Err(Error::InconsistentTable(m));
        let first = fibers.first().ok_or_else(|| Error::Input("no reducible fiber".into()))?;
        let fiber_class = |f: &FiberClasses| -> Result<DivClass> {
            let g = FiberGraph::of(f.kind)?;
            if g.len() != f.components.len() {
                return Err(Error::InconsistentTable(format!("{}: {} components given", f.kind, f.components.len())));
            }
            let mut acc = DivClass::zero(self.rank());
            for (m, c) in g.mult.iter().zip(&f.components) {
                acc = acc.add(&c.scale(&Rat::from_integer(BigInt::from(*m))));
            }
            Ok(acc)
        };
        let fclass = fiber_class(first)?;
        let int = |k: i64| Rat::from_integer(BigInt::from(k));
        if self.square(&fclass) != int(0) || self.pair(zero, &fclass) != int(1) || self.square(zero) != int(-self.chi) {
            return bad("zero section and fiber class do not pair as (-chi, 1, 0)".into());
        }
        let mut out = self.clone();
        out.fibers.clear();
        out.classes.insert("O".into(), zero.clone());
        out.kinds.insert("O".into(), Kind::Zero);
        out.classes.insert("F".into(), fclass.clone());
        out.kinds.insert("F".into(), Kind::Fiber);
        for (fi, f) in fibers.iter().enumerate() {
            if fiber_class(f)? != fclass {
                return bad(format!("components of {}{} do not sum to F", f.kind, f.prefix));
            }
            let g = FiberGraph::of(f.kind)?;
            for (i, a) in f.components.iter().enumerate() {
                if self.pair(zero, a) != int(i64::from(i == 0)) {
                    return bad(format!("O meets {}{i}", f.prefix));
                }
                for (j, b) in f.components.iter().enumerate() {
                    if self.pair(a, b) != int(g.pair(i, j)) {
                        return bad(format!("{}{i} . {}{j} differs from the dual graph", f.prefix, f.prefix));
                    }
                }
            }
            let labels: Vec<String> = (0..f.components.len()).map(|i| format!("{}{i}", f.prefix)).collect();
            for (i, l) in labels.iter().enumerate() {
                out.classes.insert(l.clone(), f.components[i].clone());
                out.kinds.insert(l.clone(), Kind::Component { fiber: fi, index: i });
            }
            out.fibers.push(FiberInfo { id: format!("{}{}", f.kind, f.prefix), kind: f.kind, labels });
        }
        for (l, c) in sections {
            if self.pair(c, &fclass) != int(1) || self.square(c) != int(-self.chi) {
                return bad(format!("{l} is not a section class"));
            }
            out.classes.insert(l.to_string(), c.clone());
            out.kinds.insert(l.to_string(), Kind::Section);
        }
        // old components and sections become plain classes
        for (l, k) in out.kinds.iter_mut() {
            let fresh = l == "O" || l == "F" || sections.iter().any(|(s, _)| s == l)
                || out.fibers.iter().any(|f| f.labels.contains(l));
            if !fresh {
                *k = Kind::Other;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for NSFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "frame of rank {} on [{}]", self.rank(), self.labels.join(", "))
    }
}

fn parse_linear(text: &str) -> Result<Vec<(Rat, String)>> {
    let bad = |msg: &str| Error::Input(format!("divisor `{text}`: {msg}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = vec![];
    let is_label = |c: u8| c.is_ascii_alphanumeric() || c == b'_' || c == b'#';
    while i < b.len() {
        let mut sign = Rat::one();
        while i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            if b[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'/') {
            i += 1;
        }
        let mut coeff = Rat::one();
        if i > start && i < b.len() && b[i] == b'*' {
            let txt = &s[start..i];
            coeff = match txt.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.parse().map_err(|_| bad("bad coefficient"))?;
                    let q: BigInt = q.parse().map_err(|_| bad("bad coefficient"))?;
                    if q.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                    Rat::new(p, q)
                }
                None => Rat::from_integer(txt.parse().map_err(|_| bad("bad coefficient"))?),
            };
            i += 1;
        } else {
            i = start;
        }
        let ls = i;
        while i < b.len() && is_label(b[i]) {
            i += 1;
        }
        if i == ls {
            return Err(bad("expected a label"));
        }
        out.push((sign * coeff, s[ls..i].to_string()));
        if i < b.len() && b[i] != b'+' && b[i] != b'-' {
            return Err(bad("expected + or -"));
        }
    }
    if out.is_empty() {
        return Err(bad("empty"));
    }
    Ok(out)
}

struct Generator {
    label: String,
    kind: Kind,
}

/// Assembles the frame of a fibration from its intersection table.
pub fn frame_from_fibration(data: &FibrationData) -> Result<NSFrame> {
    let chi = data.chi;
    // fiber ids and component labels
    let mut fibers: Vec<FiberInfo> = vec![];
    let mut type_count: BTreeMap<String, usize> = BTreeMap::new();
    for f in &data.fibers {
        *type_count.entry(f.kind.clone()).or_default() += 1;
    }
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for f in &data.fibers {
        let kind: FiberType = f.kind.parse()?;
        if let Some(c) = f.components {
            if c != kind.components() {
                return Err(Error::InconsistentTable(format!("{} has {} components, not {c}", f.kind, kind.components())));
            }
        }
        let k = seen.entry(f.kind.clone()).or_default();
        *k += 1;
        let id = f.id.clone().unwrap_or_else(|| {
            if type_count[&f.kind] > 1 {
                format!("{}#{}", f.kind, k)
            } else {
                f.kind.clone()
            }
        });
        if !is_reducible(kind) {
            continue;
        }
        let labels = (0..kind.components()).map(|i| format!("{}{i}", f.prefix)).collect();
        fibers.push(FiberInfo { id, kind, labels });
    }

    let mut gens: Vec<Generator> =
        vec![Generator { label: "O".into(), kind: Kind::Zero }, Generator { label: "F".into(), kind: Kind::Fiber }];
    for (fi, f) in fibers.iter().enumerate() {
        for (i, l) in f.labels.iter().enumerate() {
            gens.push(Generator { label: l.clone(), kind: Kind::Component { fiber: fi, index: i } });
        }
    }
    let mut sec_index = BTreeMap::new();
    for s in &data.sections {
        if gens.iter().any(|g| g.label == s.label) {
            return Err(Error::InconsistentTable(format!("duplicate label {}", s.label)));
        }
        sec_index.insert(s.label.clone(), s);
        gens.push(Generator { label: s.label.clone(), kind: Kind::Section });
    }
    let graphs: Vec<FiberGraph> = fibers.iter().map(|f| FiberGraph::of(f.kind)).collect::<Result<_>>()?;
    let meets = |s: &SectionSpec, fi: usize| -> Result<usize> {
        let c = s.meets.get(&fibers[fi].id).copied().unwrap_or(0);
        if c >= graphs[fi].len() || graphs[fi].mult[c] != 1 {
            return Err(Error::InconsistentTable(format!("{} meets non-simple component {c} of {}", s.label, fibers[fi].id)));
        }
        Ok(c)
    };
    for s in &data.sections {
        for k in s.meets.keys() {
            if !fibers.iter().any(|f| &f.id == k) {
                return Err(Error::InconsistentTable(format!("{} meets unknown fiber {k}", s.label)));
            }
        }
    }

    let pair = |a: &Generator, b: &Generator| -> Result<i64> {
        use Kind::*;
        Ok(match (&a.kind, &b.kind) {
            (Zero, Zero) => -chi,
            (Zero, Fiber) | (Fiber, Zero) | (Fiber, Section) | (Section, Fiber) => 1,
            (Fiber, Fiber) | (Fiber, Component { .. }) | (Component { .. }, Fiber) => 0,
            (Zero, Component { index, .. }) | (Component { index, .. }, Zero) => i64::from(*index == 0),
            (Component { fiber: f1, index: i1 }, Component { fiber: f2, index: i2 }) => {
                if f1 == f2 {
                    graphs[*f1].pair(*i1, *i2)
                } else {
                    0
                }
            }
            (Section, Component { fiber, index }) | (Component { fiber, index }, Section) => {
                let s = if a.kind == Section { &a.label } else { &b.label };
                i64::from(meets(sec_index[s], *fiber)? == *index)
            }
            (Zero, Section) | (Section, Zero) => {
                let s = if a.kind == Section { &a.label } else { &b.label };
                sec_index[s].po
            }
            (Section, Section) => {
                if a.label == b.label {
                    -chi
                } else {
                    let ab = sec_index[&a.label].intersections.get(&b.label);
                    let ba = sec_index[&b.label].intersections.get(&a.label);
                    match (ab, ba) {
                        (Some(x), Some(y)) if x != y => {
                            return Err(Error::InconsistentTable(format!("{}·{} given as {x} and {y}", a.label, b.label)))
                        }
                        (Some(x), _) | (_, Some(x)) => *x,
                        (None, None) => 0,
                    }
                }
            }
            _ => return Err(Error::InconsistentTable("unexpected generator kind".into())),
        })
    };
    let k = gens.len();
    let mut full = vec![vec![BigInt::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            full[i][j] = BigInt::from(pair(&gens[i], &gens[j])?);
        }
    }
    for o in &data.omit {
        if !gens.iter().any(|g| &g.label == o) {
            return Err(Error::Input(format!("omitted label `{o}` is not a generator")));
        }
    }

    let snf = smith_normal_form(&full);
    let r = snf.rank();
    let disc: BigInt = snf.factors().iter().filter(|x| !x.is_zero()).product();
    let order: Vec<usize> = {
        let mut v: Vec<usize> = vec![0, 1];
        v.extend((0..k).filter(|&i| matches!(gens[i].kind, Kind::Component { index, .. } if index > 0)));
        v.extend((0..k).filter(|&i| gens[i].kind == Kind::Section));
        v.extend((0..k).filter(|&i| matches!(gens[i].kind, Kind::Component { index: 0, .. })));
        v.retain(|&i| !data.omit.contains(&gens[i].label));
        v
    };
    let basis = choose_basis(&full, &order, r, &disc)?;

    let sub: ZMat = basis.iter().map(|&i| basis.iter().map(|&j| full[i][j].clone()).collect()).collect();
    let labels: Vec<String> = basis.iter().map(|&i| gens[i].label.clone()).collect();
    let mut frame = NSFrame { labels, gram: sub, chi, classes: BTreeMap::new(), kinds: BTreeMap::new(), fibers };
    for (gi, g) in gens.iter().enumerate() {
        let rhs: Vec<Rat> = basis.iter().map(|&j| Rat::from_integer(full[gi][j].clone())).collect();
        let c = frame.solve_by_pairings(&rhs)?;
        if !c.is_integral() {
            return Err(Error::NonIntegral(format!("{} in the chosen basis", g.label)));
        }
        frame.classes.insert(g.label.clone(), c);
        frame.kinds.insert(g.label.clone(), g.kind.clone());
    }
    Ok(frame)
}

fn rows_rank(full: &ZMat, idx: &[usize]) -> usize {
    rank_q(&idx.iter().map(|&i| full[i].iter().map(|x| Rat::from_integer(x.clone())).collect()).collect::<Vec<_>>())
}

fn sub_det(full: &ZMat, idx: &[usize]) -> BigInt {
    det(&idx.iter().map(|&i| idx.iter().map(|&j| full[i][j].clone()).collect()).collect::<Vec<_>>()).abs()
}

/// Greedy independent subset in the given order, then single exchanges that lower the
/// index until the subset spans the lattice.
fn choose_basis(full: &ZMat, order: &[usize], r: usize, disc: &BigInt) -> Result<Vec<usize>> {
    let mut basis: Vec<usize> = vec![];
    for &i in order {
        if basis.len() == r {
            break;
        }
        let mut trial = basis.clone();
        trial.push(i);
        if rows_rank(full, &trial) == trial.len() {
            basis = trial;
        }
    }
    if basis.len() < r {
        return Err(Error::InconsistentTable("generators outside the basis choice are needed for full rank".into()));
    }
    let mut d = sub_det(full, &basis);
    while &d != disc {
        let mut improved = false;
        'search: for &g in order.iter().filter(|g| !basis.contains(g)) {
            for pos in 0..basis.len() {
                let mut trial = basis.clone();
                trial[pos] = g;
                let d2 = sub_det(full, &trial);
                if !d2.is_zero() && d2 < d {
                    basis = trial;
                    d = d2;
                    improved = true;
                    break 'search;
                }
            }
        }
        if !improved {
            return Err(Error::Input("no Z-basis among the permitted generators".into()));
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::zmat;

    fn data(v: serde_json::Value) -> FibrationData {
        FibrationData::from_json(&v).unwrap()
    }

    #[test]
    fn irreducible_fibers_give_the_hyperbolic_plane() {
        let f = frame_from_fibration(&data(serde_json::json!({"fibers": [{"type": "I1", "prefix": "A"}], "chi": 2})))
            .unwrap();
        assert_eq!(f.gram, zmat(&[&[-2, 1], &[1, 0]]));
        assert_eq!(f.det(), BigInt::from(-1));
    }

    #[test]
    fn trivial_lattice_with_dn_and_e8() {
        let f = frame_from_fibration(&data(serde_json::json!({
            "fibers": [{"type": "II*", "prefix": "E"}, {"type": "I0*", "prefix": "D"}, {"type": "I0*", "prefix": "G"},
                       {"type": "I1", "prefix": "x"}, {"type": "I1", "prefix": "y"}],
            "chi": 2
        })))
        .unwrap();
        assert_eq!(f.rank(), 18);
        assert_eq!(f.det(), BigInt::from(-16));
        // components of a fiber add up to F
        let sum = f.parse_div("E0 + 2*E1 + 3*E2 + 4*E3 + 5*E4 + 6*E5 + 4*E6 + 2*E7 + 3*E8").unwrap();
        assert_eq!(sum, f.class("F").unwrap());
        assert_eq!(f.square(&f.class("D0").unwrap()), Rat::from_integer((-2).into()));
    }

    #[test]
    fn asymmetric_table_is_rejected() {
        let r = frame_from_fibration(&data(serde_json::json!({
            "fibers": [{"type": "I2", "prefix": "a"}],
            "sections": [{"label": "P", "PO": 1, "intersections": {"R": 1}}, {"label": "R", "intersections": {"P": 2}}],
            "chi": 2
        })));
        assert!(matches!(r, Err(Error::InconsistentTable(_))));
    }

    #[test]
    fn linear_parser() {
        let p = parse_linear("2*Q + c1_1 - O -3/2*F").unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p[3], (Rat::new((-3).into(), 2.into()), "F".to_string()));
        assert!(parse_linear("2*").is_err());
        assert!(parse_linear("O ^ F").is_err());
    }

    #[test]
    fn adjoining_a_half_class() {
        let f = NSFrame::from_lattice(&["O", "F"], zmat(&[&[-2, 1], &[1, 0]]), 2).unwrap();
        let g = f.adjoin("v", -8, "h", Kind::Other, "1/2*v + O").unwrap();
        assert_eq!(g.rank(), 3);
        assert_eq!(g.det(), BigInt::from(2));
        assert_eq!(g.class("v").unwrap().0, vec![Rat::from_integer((-2).into()), Rat::zero(), Rat::from_integer(2.into())]);
    }
}
