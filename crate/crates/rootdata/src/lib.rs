//! Root-system arithmetic for the horospherical layer: positive roots,
//! coroot pairings, parabolic multiplicities, Weyl group orders, flag-variety
//! Poincaré polynomials, the coloration map and the class of G/H.

use std::fmt;

pub mod pair;
pub mod system;

pub use pair::{color_image, gh_class, HoroPair};
pub use system::{
    a_alpha, flag_poincare, positive_roots, weyl_order, DynkinComponent, DynkinType, RootSystem,
};

/// Errors raised by the root-system layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    /// Rank outside the valid range for the Dynkin type.
    Rank(DynkinType, usize),
    /// A simple-root index outside 0..rank.
    Index(usize),
    /// a_alpha was requested for a root of the parabolic subset.
    AlphaInParabolic(usize),
    /// The M-basis pairs non-trivially with a coroot of the parabolic subset.
    PairNotOrthogonal { basis_row: usize, alpha: usize },
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::Rank(t, r) => write!(f, "invalid rank {r} for type {t}"),
            RootError::Index(i) => write!(f, "simple root index {i} out of range"),
            RootError::AlphaInParabolic(i) => {
                write!(f, "simple root {i} lies in the parabolic subset")
            }
            RootError::PairNotOrthogonal { basis_row, alpha } => write!(
                f,
                "lattice basis row {basis_row} pairs non-trivially with coroot {alpha}"
            ),
        }
    }
}

impl std::error::Error for RootError {}
