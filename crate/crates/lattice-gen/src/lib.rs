//! Lattice-point generating functions of rational polyhedral cones.
//!
//! The crate enumerates fundamental parallelotopes of simplicial cones,
//! builds the multivariate rational forms counting all or only the interior
//! lattice points of a cone, substitutes a strictly negative linear
//! functional to obtain one-variable rational forms, and evaluates exact
//! limits of those forms at 1. All arithmetic is exact.

use std::fmt;

use polyhedra::GeomError;

pub mod chi;
pub mod counting;
pub mod series;

pub use chi::ChiPoly;
pub use counting::{
    count_series, interior_series, interior_series_Q, parallelotope_points, stanley_reisner,
    substitute_omega, ConeSeries, Parallelotope,
};
pub use series::{limit_at_one, LatticeSeries, Limit, SeriesRole};

/// Errors raised while building or substituting generating functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The cone has no fundamental parallelotope.
    NotSimplicial,
    /// The supplied triangulation uses rays the cone does not have.
    TriangulationRays,
    /// The functional is nonnegative on a denominator ray.
    Diverges,
    /// The scaled functional takes non-integer values on the lattice.
    NonIntegral,
    /// An underlying geometric computation failed.
    Geometry(GeomError),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::NotSimplicial => write!(f, "cone is not simplicial"),
            LatticeError::TriangulationRays => {
                write!(f, "triangulation rays do not match cone rays")
            }
            LatticeError::Diverges => write!(f, "substitution diverges"),
            LatticeError::NonIntegral => {
                write!(f, "scaled functional is not integral on the lattice")
            }
            LatticeError::Geometry(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for LatticeError {}

impl From<GeomError> for LatticeError {
    fn from(e: GeomError) -> LatticeError {
        match e {
            GeomError::NotSimplicial => LatticeError::NotSimplicial,
            other => LatticeError::Geometry(other),
        }
    }
}
