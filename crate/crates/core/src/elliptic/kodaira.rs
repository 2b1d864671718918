//! Kodaira fiber types from valuation triples (residue characteristic zero).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{ri, rq, Rat, Valuation};
use crate::error::{Error, Result};
use crate::lattice::{named, GramLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberType {
    /// `I_0` is a smooth fiber.
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::IStar(n) => write!(f, "I{n}*"),
            FiberType::II => f.write_str("II"),
            FiberType::III => f.write_str("III"),
            FiberType::IV => f.write_str("IV"),
            FiberType::IVStar => f.write_str("IV*"),
            FiberType::IIIStar => f.write_str("III*"),
            FiberType::IIStar => f.write_str("II*"),
        }
    }
}

impl Serialize for FiberType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for FiberType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("unknown fiber type `{s}`"));
        Ok(match s {
            "II" => FiberType::II,
            "III" => FiberType::III,
            "IV" => FiberType::IV,
            "IV*" => FiberType::IVStar,
            "III*" => FiberType::IIIStar,
            "II*" => FiberType::IIStar,
            _ => {
                let body = s.strip_prefix('I').ok_or_else(bad)?;
                match body.strip_suffix('*') {
                    Some(n) => FiberType::IStar(n.parse().map_err(|_| bad())?),
                    None => FiberType::I(body.parse().map_err(|_| bad())?),
                }
            }
        })
    }
}

impl FiberType {
    pub fn euler(self) -> u32 {
        match self {
            FiberType::I(n) => n,
            FiberType::IStar(n) => n + 6,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IVStar => 8,
            FiberType::IIIStar => 9,
            FiberType::IIStar => 10,
        }
    }

    /// Number of irreducible components.
    pub fn components(self) -> u32 {
        match self {
            FiberType::I(0) => 1,
            FiberType::I(n) => n,
            FiberType::IStar(n) => n + 5,
            FiberType::II => 1,
            FiberType::III => 2,
            FiberType::IV => 3,
            FiberType::IVStar => 7,
            FiberType::IIIStar => 8,
            FiberType::IIStar => 9,
        }
    }

    /// Name of the root lattice spanned by the non-identity components, if any.
    pub fn root_type(self) -> Option<String> {
        match self {
            FiberType::I(n) if n >= 2 => Some(format!("A{}", n - 1)),
            FiberType::IStar(n) => Some(format!("D{}", n + 4)),
            FiberType::III => Some("A1".into()),
            FiberType::IV => Some("A2".into()),
            FiberType::IVStar => Some("E6".into()),
            FiberType::IIIStar => Some("E7".into()),
            FiberType::IIStar => Some("E8".into()),
            _ => None,
        }
    }

    /// Negative-definite root lattice of the fiber (rank 0 for irreducible fibers).
    pub fn root_lattice(self) -> GramLattice {
        match self.root_type() {
            Some(name) => named(&format!("{name}(-1)")).expect("valid root lattice"),
            None => GramLattice { gram: vec![], label: None },
        }
    }

    /// Order of the component group.
    pub fn component_group_order(self) -> u32 {
        match self {
            FiberType::I(0) => 1,
            FiberType::I(n) => n,
            FiberType::IStar(_) => 4,
            FiberType::II | FiberType::IIStar => 1,
            FiberType::III | FiberType::IIIStar => 2,
            FiberType::IV | FiberType::IVStar => 3,
        }
    }
}

/// Simple component met by a section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Component {
    Identity,
    /// `Θ_i` of an `I_n` fiber, numbered cyclically from the identity.
    Index(u32),
    /// The unique non-identity simple component class (III, IV, IV*, III*, I0*).
    NonIdentity,
    /// `I_n*`: the other simple component at the identity's end.
    Near,
    /// `I_n*`: either simple component at the far end.
    Far,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Identity => f.write_str("identity"),
            Component::Index(i) => write!(f, "Theta{i}"),
            Component::NonIdentity => f.write_str("non-identity"),
            Component::Near => f.write_str("near"),
            Component::Far => f.write_str("far"),
        }
    }
}

/// A classified fiber with its local height correction table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KodairaFiber {
    #[serde(rename = "type")]
    pub kind: FiberType,
    pub euler: u32,
    pub components: u32,
}

impl KodairaFiber {
    pub fn new(kind: FiberType) -> Self {
        KodairaFiber { kind, euler: kind.euler(), components: kind.components() }
    }

    /// Local height correction for a section meeting component `c`.
    pub fn contribution(&self, c: Component) -> Result<Rat> {
        let bad = || Error::MissingComponent(format!("{c} on a fiber of type {}", self.kind));
        Ok(match (self.kind, c) {
            (_, Component::Identity) => ri(0),
            (FiberType::I(n), Component::Index(i)) if n > 0 && i < n => rq(i64::from(i * (n - i)), i64::from(n)),
            (FiberType::III, Component::NonIdentity) => rq(1, 2),
            (FiberType::IV, Component::NonIdentity) => rq(2, 3),
            (FiberType::IVStar, Component::NonIdentity) => rq(4, 3),
            (FiberType::IIIStar, Component::NonIdentity) => rq(3, 2),
            (FiberType::IStar(0), Component::NonIdentity | Component::Near | Component::Far) => ri(1),
            (FiberType::IStar(_), Component::Near) => ri(1),
            (FiberType::IStar(n), Component::Far) => ri(1) + rq(i64::from(n), 4),
            _ => return Err(bad()),
        })
    }

    /// Correction term for the pairing of sections meeting components `c1` and `c2`.
    /// Equal labels are read as the same component.
    pub fn pair_contribution(&self, c1: Component, c2: Component) -> Result<Rat> {
        use Component::*;
        if c1 == Identity || c2 == Identity {
            return Ok(ri(0));
        }
        if c1 == c2 {
            return self.contribution(c1);
        }
        Ok(match (self.kind, c1, c2) {
            (FiberType::I(n), Index(i), Index(j)) if i < n && j < n => {
                let (i, j) = (i.min(j), i.max(j));
                rq(i64::from(i * (n - j)), i64::from(n))
            }
            (FiberType::IStar(n), Near, Far) | (FiberType::IStar(n), Far, Near) if n > 0 => rq(1, 2),
            _ => {
                return Err(Error::MissingComponent(format!("pair {c1}, {c2} on a fiber of type {}", self.kind)));
            }
        })
    }
}

/// Classifies `(v(c4), v(c6), v(Δ))`; zero invariants carry infinite valuation.
pub fn kodaira_type(v4: Valuation, v6: Valuation, vd: Valuation) -> Result<KodairaFiber> {
    let fin = |v: Valuation| v.finite().unwrap_or(u32::MAX);
    let (a, b, d) = (fin(v4), fin(v6), fin(vd));
    let triple = [a.min(99), b.min(99), d.min(99)];
    if d == u32::MAX {
        return Err(Error::ZeroDiscriminant);
    }
    if a >= 4 && b >= 6 && d >= 12 {
        return Err(Error::NonMinimal(triple));
    }
    let kind = match d {
        0 => FiberType::I(0),
        n if a == 0 && b == 0 => FiberType::I(n),
        2 if a >= 1 && b == 1 => FiberType::II,
        3 if a == 1 && b >= 2 => FiberType::III,
        4 if a >= 2 && b == 2 => FiberType::IV,
        6 if a >= 2 && b >= 3 => FiberType::IStar(0),
        8 if a >= 3 && b == 4 => FiberType::IVStar,
        9 if a == 3 && b >= 5 => FiberType::IIIStar,
        10 if a >= 4 && b == 5 => FiberType::IIStar,
        n if n > 6 && a == 2 && b == 3 => FiberType::IStar(n - 6),
        _ => return Err(Error::InconsistentTriple(triple)),
    };
    Ok(KodairaFiber::new(kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Valuation::{Finite as F, Infinite};

    fn kt(a: u32, b: u32, d: u32) -> Result<FiberType> {
        kodaira_type(F(a), F(b), F(d)).map(|k| k.kind)
    }

    #[test]
    fn classification_table() {
        assert_eq!(kt(0, 0, 16).unwrap(), FiberType::I(16));
        assert_eq!(kt(2, 3, 10).unwrap(), FiberType::IStar(4));
        assert_eq!(kt(4, 5, 10).unwrap(), FiberType::IIStar);
        assert_eq!(kodaira_type(Infinite, F(5), F(10)).unwrap().kind, FiberType::IIStar);
        assert_eq!(kodaira_type(Infinite, F(1), F(2)).unwrap().kind, FiberType::II);
        assert_eq!(kt(1, 2, 3).unwrap(), FiberType::III);
        assert_eq!(kt(2, 2, 4).unwrap(), FiberType::IV);
        assert_eq!(kt(2, 3, 6).unwrap(), FiberType::IStar(0));
        assert_eq!(kodaira_type(F(3), Infinite, F(6)).unwrap().kind, FiberType::IStar(0));
        assert_eq!(kt(3, 4, 8).unwrap(), FiberType::IVStar);
        assert_eq!(kt(3, 5, 9).unwrap(), FiberType::IIIStar);
        assert_eq!(kt(0, 0, 0).unwrap(), FiberType::I(0));
        assert_eq!(kt(4, 6, 12), Err(Error::NonMinimal([4, 6, 12])));
        assert_eq!(kt(1, 1, 5), Err(Error::InconsistentTriple([1, 1, 5])));
        assert_eq!(kt(0, 1, 3), Err(Error::InconsistentTriple([0, 1, 3])));
    }

    #[test]
    fn euler_numbers_and_lattices() {
        for (t, e, r) in [
            (FiberType::I(8), 8, 7),
            (FiberType::IStar(4), 10, 8),
            (FiberType::II, 2, 0),
            (FiberType::III, 3, 1),
            (FiberType::IV, 4, 2),
            (FiberType::IVStar, 8, 6),
            (FiberType::IIIStar, 9, 7),
            (FiberType::IIStar, 10, 8),
        ] {
            assert_eq!(t.euler(), e);
            assert_eq!(t.root_lattice().rank(), r);
            // the component group is the discriminant group of the root lattice
            if r > 0 {
                assert_eq!(t.root_lattice().det().magnitude().to_string(), t.component_group_order().to_string());
            }
            assert_eq!(t.to_string().parse::<FiberType>().unwrap(), t);
        }
    }

    #[test]
    fn contributions() {
        let f = KodairaFiber::new(FiberType::I(4));
        assert_eq!(f.contribution(Component::Index(2)).unwrap(), ri(1));
        assert_eq!(f.contribution(Component::Index(1)).unwrap(), rq(3, 4));
        let f = KodairaFiber::new(FiberType::IStar(4));
        assert_eq!(f.contribution(Component::Far).unwrap(), ri(2));
        assert_eq!(f.contribution(Component::Near).unwrap(), ri(1));
        assert!(f.contribution(Component::NonIdentity).is_err());
        assert_eq!(KodairaFiber::new(FiberType::IIIStar).contribution(Component::NonIdentity).unwrap(), rq(3, 2));
        assert_eq!(KodairaFiber::new(FiberType::I(8)).pair_contribution(Component::Index(2), Component::Index(4)).unwrap(), ri(1));
    }
}
