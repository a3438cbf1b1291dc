//! Exact polyhedral geometry over the integer lattice: cones with canonical
//! double descriptions, polyhedra with tail cones via Cayley homogenization,
//! and fans with star subdivision, pulling triangulation, and smooth
//! refinement.

pub mod cone;
pub mod fan;
pub mod polyhedron;

pub use cone::{Cone, GeomError};
pub use fan::Fan;
pub use polyhedron::{cayley_cone, TailedPolyhedron};
