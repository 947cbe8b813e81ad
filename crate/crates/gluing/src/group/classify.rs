use super::FinGroup;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coarse isomorphism type, enough to tell the Roquette families apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    Trivial,
    Cyclic(usize),
    Quaternion(usize),
    Dihedral(usize),
    Semidihedral(usize),
    Other(usize),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => write!(f, "1"),
            GroupKind::Cyclic(n) => write!(f, "C{n}"),
            GroupKind::Quaternion(n) => write!(f, "Q{n}"),
            GroupKind::Dihedral(n) => write!(f, "D{n}"),
            GroupKind::Semidihedral(n) => write!(f, "SD{n}"),
            GroupKind::Other(n) => write!(f, "other of order {n}"),
        }
    }
}

/// Classifies by order, largest element order and number of involutions.
///
/// A noncyclic 2-group of order N ≥ 8 with an element of order N/2 is one of D_N, Q_N, SD_N,
/// the modular group or C_{N/2}×C_2; these have N/2+1, 1, N/4+1, 3 and 3 involutions.
pub fn classify(g: &FinGroup) -> GroupKind {
    let n = g.order();
    if n == 1 {
        return GroupKind::Trivial;
    }
    let max_order = (0..n).map(|a| g.element_order(a)).max().unwrap_or(1);
    if max_order == n {
        return GroupKind::Cyclic(n);
    }
    if !n.is_power_of_two() || n < 8 || max_order != n / 2 {
        return GroupKind::Other(n);
    }
    let involutions = (1..n).filter(|&a| g.element_order(a) == 2).count();
    if involutions == 1 {
        GroupKind::Quaternion(n)
    } else if involutions == n / 2 + 1 {
        GroupKind::Dihedral(n)
    } else if n >= 16 && involutions == n / 4 + 1 {
        GroupKind::Semidihedral(n)
    } else {
        GroupKind::Other(n)
    }
}
