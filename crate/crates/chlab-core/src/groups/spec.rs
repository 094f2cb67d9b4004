//! Group specifications, their grammar and their Dynkin types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Smallest supported `n` for the cyclic and dihedral families.
pub const MIN_N: u32 = 2;
/// Largest supported `n` for the cyclic and dihedral families.
pub const MAX_N: u32 = 64;

/// A finite nontrivial subgroup of SU(2) up to conjugacy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupSpec {
    /// Cyclic group of order `n`.
    Cyclic(u32),
    /// Binary dihedral group of order `4n`.
    BinaryDihedral(u32),
    /// Binary tetrahedral group, order 24.
    BinaryTetrahedral,
    /// Binary octahedral group, order 48.
    BinaryOctahedral,
    /// Binary icosahedral group, order 120.
    BinaryIcosahedral,
}

/// Coarse family of a [`GroupSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `C:n`.
    Cyclic,
    /// `D:n`.
    Dihedral,
    /// `T`, `O`, `I`.
    Polyhedral,
}

impl GroupSpec {
    /// Checks the bounds on `n`.
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::BinaryDihedral(n) if !(MIN_N..=MAX_N).contains(n) => {
                Err(Error::InvalidInput(format!(
                    "n = {n} outside supported range {MIN_N}..={MAX_N}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// The family this spec belongs to.
    pub fn family(&self) -> Family {
        match self {
            GroupSpec::Cyclic(_) => Family::Cyclic,
            GroupSpec::BinaryDihedral(_) => Family::Dihedral,
            _ => Family::Polyhedral,
        }
    }

    /// The parameter `n` of the cyclic and dihedral families.
    pub fn n(&self) -> Option<u32> {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::BinaryDihedral(n) => Some(*n),
            _ => None,
        }
    }

    /// Group order.
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n as usize,
            GroupSpec::BinaryDihedral(n) => 4 * *n as usize,
            GroupSpec::BinaryTetrahedral => 24,
            GroupSpec::BinaryOctahedral => 48,
            GroupSpec::BinaryIcosahedral => 120,
        }
    }

    /// Number of conjugacy classes.
    pub fn class_count(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n as usize,
            GroupSpec::BinaryDihedral(n) => *n as usize + 3,
            GroupSpec::BinaryTetrahedral => 7,
            GroupSpec::BinaryOctahedral => 8,
            GroupSpec::BinaryIcosahedral => 9,
        }
    }

    /// Vertex isotropy `I_V` of the polyhedral groups.
    pub fn vertex_isotropy(&self) -> Option<u32> {
        match self {
            GroupSpec::BinaryTetrahedral => Some(3),
            GroupSpec::BinaryOctahedral => Some(4),
            GroupSpec::BinaryIcosahedral => Some(5),
            _ => None,
        }
    }

    /// Single-letter prefix used in class labels of the polyhedral groups.
    pub fn letter(&self) -> &'static str {
        match self {
            GroupSpec::Cyclic(_) => "C",
            GroupSpec::BinaryDihedral(_) => "D",
            GroupSpec::BinaryTetrahedral => "T",
            GroupSpec::BinaryOctahedral => "O",
            GroupSpec::BinaryIcosahedral => "I",
        }
    }

    /// The Dynkin diagram attached by the McKay correspondence.
    pub fn dynkin_type(&self) -> DynkinType {
        dynkin_type(self)
    }

    /// The specs covered by the standard verification sweeps:
    /// `C:2..=12`, `D:2..=8`, `T`, `O`, `I`.
    pub fn standard_suite() -> Vec<GroupSpec> {
        let mut v: Vec<GroupSpec> = (2..=12).map(GroupSpec::Cyclic).collect();
        v.extend((2..=8).map(GroupSpec::BinaryDihedral));
        v.extend([
            GroupSpec::BinaryTetrahedral,
            GroupSpec::BinaryOctahedral,
            GroupSpec::BinaryIcosahedral,
        ]);
        v
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C:{n}"),
            GroupSpec::BinaryDihedral(n) => write!(f, "D:{n}"),
            other => f.write_str(other.letter()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = |position: usize, message: &str| Error::Parse {
            input: s.to_string(),
            position,
            message: message.to_string(),
        };
        match s {
            "T" => return Ok(GroupSpec::BinaryTetrahedral),
            "O" => return Ok(GroupSpec::BinaryOctahedral),
            "I" => return Ok(GroupSpec::BinaryIcosahedral),
            "" => return Err(err(0, "empty group spec")),
            _ => {}
        }
        let make: fn(u32) -> GroupSpec = match s.as_bytes()[0] {
            b'C' => GroupSpec::Cyclic,
            b'D' => GroupSpec::BinaryDihedral,
            b'T' | b'O' | b'I' => return Err(err(1, "unexpected trailing input")),
            _ => return Err(err(0, "expected one of C, D, T, O, I")),
        };
        if s.as_bytes().get(1) != Some(&b':') {
            return Err(err(1, "expected ':'"));
        }
        let digits = &s[2..];
        if digits.is_empty() {
            return Err(err(2, "expected a positive integer"));
        }
        if let Some(bad) = digits.find(|c: char| !c.is_ascii_digit()) {
            return Err(err(2 + bad, "expected a digit"));
        }
        let n: u32 = digits.parse().map_err(|_| err(2, "integer out of range"))?;
        if !(MIN_N..=MAX_N).contains(&n) {
            return Err(err(2, &format!("n must lie in {MIN_N}..={MAX_N}")));
        }
        Ok(make(n))
    }
}

/// Simply-laced Dynkin diagram type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    /// `A_k`.
    A(u32),
    /// `D_k`.
    D(u32),
    /// `E_6`.
    E6,
    /// `E_7`.
    E7,
    /// `E_8`.
    E8,
}

impl DynkinType {
    /// Number of vertices of the diagram.
    pub fn vertex_count(&self) -> usize {
        match self {
            DynkinType::A(k) | DynkinType::D(k) => *k as usize,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(k) => write!(f, "A_{k}"),
            DynkinType::D(k) => write!(f, "D_{k}"),
            DynkinType::E6 => f.write_str("E_6"),
            DynkinType::E7 => f.write_str("E_7"),
            DynkinType::E8 => f.write_str("E_8"),
        }
    }
}

/// Dynkin type of a spec: `C:n → A_{n−1}`, `D:n → D_{n+2}`, `T → E_6`,
/// `O → E_7`, `I → E_8`.
pub fn dynkin_type(spec: &GroupSpec) -> DynkinType {
    match spec {
        GroupSpec::Cyclic(n) => DynkinType::A(n - 1),
        GroupSpec::BinaryDihedral(n) => DynkinType::D(n + 2),
        GroupSpec::BinaryTetrahedral => DynkinType::E6,
        GroupSpec::BinaryOctahedral => DynkinType::E7,
        GroupSpec::BinaryIcosahedral => DynkinType::E8,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_all_families() {
        assert_eq!("C:5".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(5));
        assert_eq!(
            "D:64".parse::<GroupSpec>().unwrap(),
            GroupSpec::BinaryDihedral(64)
        );
        assert_eq!(
            "T".parse::<GroupSpec>().unwrap(),
            GroupSpec::BinaryTetrahedral
        );
        assert_eq!(
            "O".parse::<GroupSpec>().unwrap(),
            GroupSpec::BinaryOctahedral
        );
        assert_eq!(
            "I".parse::<GroupSpec>().unwrap(),
            GroupSpec::BinaryIcosahedral
        );
    }

    #[test]
    fn reports_error_positions() {
        let pos = |s: &str| match s.parse::<GroupSpec>() {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos("C:1"), 2);
        assert_eq!(pos("X:3"), 0);
        assert_eq!(pos("C3"), 1);
        assert_eq!(pos("D:1x"), 3);
        assert_eq!(pos("C:65"), 2);
        assert_eq!(pos("Tx"), 1);
        assert_eq!(pos(""), 0);
    }

    #[test]
    fn dynkin_vertex_count_is_class_count_minus_one() {
        for spec in GroupSpec::standard_suite() {
            assert_eq!(spec.dynkin_type().vertex_count(), spec.class_count() - 1);
        }
        assert_eq!(GroupSpec::BinaryIcosahedral.dynkin_type(), DynkinType::E8);
        assert_eq!(GroupSpec::Cyclic(4).dynkin_type(), DynkinType::A(3));
        assert_eq!(GroupSpec::BinaryDihedral(3).dynkin_type(), DynkinType::D(5));
    }

    proptest! {
        #[test]
        fn display_round_trips(n in 2u32..=64, kind in 0usize..5) {
            let spec = match kind {
                0 => GroupSpec::Cyclic(n),
                1 => GroupSpec::BinaryDihedral(n),
                2 => GroupSpec::BinaryTetrahedral,
                3 => GroupSpec::BinaryOctahedral,
                _ => GroupSpec::BinaryIcosahedral,
            };
            prop_assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec);
        }
    }
}
