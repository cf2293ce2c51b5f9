//! Intersection multiplicities of plane curves, their totals over the affine
//! plane, the generic-parameter maximum Î with its deficiency data, points
//! and places at infinity, and local branch counts.

mod ihat;
mod infinity;
mod local;
mod points;

use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

pub use ihat::{beta, i_hat, legacy_rank_rho, IHat};
pub use infinity::{
    branch_count, branch_count_at_infinity, branches_at_origin, infinity_data, points_at_infinity, tau_places_at_infinity,
    InfinityData, InfinityPoint,
};
pub use local::{fulton, intersection_multiplicity};
pub use points::{
    affine_total, common_points, intersection_profile, split_totals, IntersectionProfile, PlanePoint, PointFamily,
};

/// An intersection number: a natural number or ∞ (shared component).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mult {
    Finite(usize),
    Infinite,
}

impl Mult {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Mult::Infinite)
    }
    pub fn finite(&self) -> Option<usize> {
        match self {
            Mult::Finite(n) => Some(*n),
            Mult::Infinite => None,
        }
    }
}

impl Add for Mult {
    type Output = Mult;
    fn add(self, o: Mult) -> Mult {
        match (self, o) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a + b),
            _ => Mult::Infinite,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(n) => write!(f, "{n}"),
            Mult::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Mult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Mult::Finite(n) => s.serialize_u64(*n as u64),
            Mult::Infinite => s.serialize_str("inf"),
        }
    }
}
