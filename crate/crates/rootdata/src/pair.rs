//! Horospherical data on top of a root system: a parabolic subset together
//! with a sublattice of characters vanishing on the chosen coroots.
//!
//! The character lattice is coordinatized by fundamental weights followed by
//! torus characters, so pairing a character with a simple coroot just reads
//! off the corresponding fundamental-weight coordinate.

use exact_math::{int, Int};
use lattice_gen::{LatticeSeries, SeriesRole};
use num_traits::Zero;

use crate::system::{flag_poincare, RootSystem};
use crate::RootError;

/// A parabolic subset and a basis of the associated character sublattice.
///
/// Basis rows live in fundamental-weight plus torus coordinates and must pair
/// to zero with every coroot indexed by `parabolic`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoroPair {
    parabolic: Vec<usize>,
    basis: Vec<Vec<i64>>,
}

impl HoroPair {
    pub fn new(
        rs: &RootSystem,
        parabolic: Vec<usize>,
        basis: Vec<Vec<i64>>,
    ) -> Result<HoroPair, RootError> {
        let mut parabolic = parabolic;
        parabolic.sort();
        parabolic.dedup();
        for &i in &parabolic {
            rs.check_index(i)?;
        }
        for (row, m) in basis.iter().enumerate() {
            assert_eq!(
                m.len(),
                rs.character_rank(),
                "basis row has wrong length for the character coordinates"
            );
            for &alpha in &parabolic {
                if m[alpha] != 0 {
                    return Err(RootError::PairNotOrthogonal { basis_row: row, alpha });
                }
            }
        }
        Ok(HoroPair { parabolic, basis })
    }

    /// The full character lattice of a torus, with no parabolic directions.
    pub fn torus(rank: usize) -> HoroPair {
        let basis = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        HoroPair { parabolic: Vec::new(), basis }
    }

    pub fn parabolic(&self) -> &[usize] {
        &self.parabolic
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Rank of the character sublattice.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Image of the color attached to a simple root outside the parabolic set:
/// the coroot's pairings with the basis characters.
pub fn color_image(rs: &RootSystem, pair: &HoroPair, alpha: usize) -> Result<Vec<Int>, RootError> {
    rs.check_index(alpha)?;
    if pair.parabolic.contains(&alpha) {
        return Err(RootError::AlphaInParabolic(alpha));
    }
    Ok(pair.basis.iter().map(|m| int(m[alpha])).collect())
}

/// Class of the open orbit in Hodge-Deligne variables: `(uv - 1)^rank` times
/// the flag Poincaré polynomial of the parabolic, as a polynomial in `uv`.
pub fn gh_class(rs: &RootSystem, pair: &HoroPair) -> Result<LatticeSeries, RootError> {
    let flag = flag_poincare(rs, &pair.parabolic)?;
    let mut coeffs = flag;
    for _ in 0..pair.rank() {
        let mut next = vec![Int::zero(); coeffs.len() + 1];
        for (e, c) in coeffs.iter().enumerate() {
            next[e + 1] += c;
            next[e] -= c;
        }
        coeffs = next;
    }
    let terms = coeffs.into_iter().enumerate().map(|(e, c)| (e as i64, c));
    Ok(LatticeSeries::new(terms, vec![], SeriesRole::UvRoot, 1))
}
