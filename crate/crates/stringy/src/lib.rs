//! Stringy invariants of ℚ-Gorenstein horospherical varieties of complexity
//! one, computed exactly from a colored divisorial fan over a curve.
//!
//! The pipeline mirrors the geometry: enumerate the invariant divisors, pin
//! the canonical class and its piecewise linear support ϑ, derive the
//! discrepancy support ω, and integrate 𝕃^ω over lattice points of the tail
//! and Cayley fans to obtain the stringy motivic volume, the stringy
//! E-function and the stringy Euler characteristic. Combinatorial
//! desingularization, orbit enumeration and a smoothness test built on the
//! stringy Euler characteristic sit on top of the same data.

mod fiber;
mod inventory;
mod motive;
mod orbits;
mod resolve;
mod smooth;
mod support;
mod volume;

use std::fmt;

pub use fiber::fiber_volume;
pub use inventory::{canonical_divisor, default_gauge, invariant_divisors, DivisorInventory, DivisorKey};
pub use motive::MotiveExpr;
pub use orbits::{orbits, Orbit, OrbitKind};
pub use resolve::{resolve, Resolution};
pub use smooth::{euler_and_smoothness, SmoothnessReport};
pub use support::{build_omega, check_log_terminal, solve_theta, EntrySupport, LogTerminalReport, PLSupport, PointFun};
pub use volume::{stringy_volume, StringyResult};

/// Errors raised while computing stringy invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StringyError {
    /// No ℚ-Cartier representative of the canonical class exists; carries a
    /// minimal set of support conditions that cannot be met simultaneously.
    NotQGorenstein { violated: Vec<String> },
    /// The gauge degrees do not sum to the canonical degree of the curve.
    CanonicalDegree { got: i64, expected: i64 },
    /// The discrepancy support fails to extend linearly over some chart cone.
    OmegaNotLinear { detail: String },
    /// Some invariant divisor has log discrepancy ≤ 0, so 𝕃^ω diverges.
    NotLogTerminal { ray: String },
    /// Orbit enumeration is defined chart by chart on affine loci.
    NeedsAffineLocus,
    /// Fiber volumes are only defined over smooth cones.
    NonSmoothCone { detail: String },
    /// A closed-form statement was requested outside its hypotheses.
    HypothesisNotMet { detail: String },
    /// Structurally invalid input for the requested computation.
    Input(String),
    /// A geometric subroutine failed on data that should have been valid.
    Internal(String),
}

impl fmt::Display for StringyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StringyError::NotQGorenstein { violated } => {
                write!(f, "not Q-Gorenstein")?;
                if !violated.is_empty() {
                    write!(f, ": unsatisfiable conditions [{}]", violated.join("; "))?;
                }
                Ok(())
            }
            StringyError::CanonicalDegree { got, expected } => write!(
                f,
                "gauge degrees sum to {got}, but the canonical class of the curve has degree {expected}"
            ),
            StringyError::OmegaNotLinear { detail } => {
                write!(f, "ω not linear on cone: {detail}")
            }
            StringyError::NotLogTerminal { ray } => {
                write!(f, "not log terminal along ray {ray}")
            }
            StringyError::NeedsAffineLocus => {
                write!(f, "orbit enumeration requires affine locus")
            }
            StringyError::NonSmoothCone { detail } => {
                write!(f, "fiber volume requires a smooth cone: {detail}")
            }
            StringyError::HypothesisNotMet { detail } => {
                write!(f, "hypothesis not met: {detail}")
            }
            StringyError::Input(msg) => write!(f, "invalid input: {msg}"),
            StringyError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for StringyError {}
