//! Combinatorial input layer: abstract curves, polyhedral divisors and
//! colored divisorial fans, with degree, evaluation, properness, the fan
//! conditions, discoloration, affinization and support enumeration.

pub mod curve;
pub mod divisor;
pub mod fan;
pub mod json;

pub use curve::CurveData;
pub use divisor::{intersect_polyhedra, Locus, PolyhedralDivisor, Properness, ProperReport};
pub use fan::{
    affinize, discolor, support_points, validate_fan, ColoredDivisorialFan, FanEntry, GroupData,
    HyperPoint, PointRef, ValidationReport,
};
pub use json::{fan_from_json, fan_to_json};

use std::error::Error;
use std::fmt;

/// Errors raised while building or querying the combinatorial input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivError {
    /// A point label is reserved or repeated.
    Label(String),
    /// A coefficient or removed point does not match the curve data.
    Point(String),
    /// A polyhedral shape is inconsistent with the divisor's tail.
    Shape(String),
    /// Evaluation argument outside the dual tail cone.
    DualTail,
    /// Input text does not match the JSON schema.
    Schema(String),
    /// Input text is not valid JSON.
    Parse { line: usize, column: usize, message: String },
}

impl fmt::Display for DivError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivError::Label(s) => write!(f, "bad point label: {s}"),
            DivError::Point(s) => write!(f, "bad point reference: {s}"),
            DivError::Shape(s) => write!(f, "bad polyhedral data: {s}"),
            DivError::DualTail => write!(f, "evaluation requires m in dual tail"),
            DivError::Schema(s) => write!(f, "schema error: {s}"),
            DivError::Parse { line, column, message } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
        }
    }
}

impl Error for DivError {}
