//! Exact rational scalars, lattice vectors and matrices, and the integer
//! normal forms (Hermite, Smith) underlying every other crate.
//!
//! All arithmetic is exact; there is no floating point anywhere in the core.

use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

pub mod linalg;

pub use linalg::{
    column_echelon, det, hermite_normal_form, identity, integral_kernel, mat_mul, rank,
    smith_normal_form, solve_integral_linear, solve_rational_linear, Snf,
};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = num_rational::BigRational;
/// Integer vector, an element of a lattice such as N, M or N ⊕ ℤ.
pub type LatticeVec = Vec<Int>;
/// Rational vector, an element of N_ℚ or M_ℚ.
pub type RatVec = Vec<Rat>;
/// Dense rational matrix, row major.
pub type RatMatrix = Vec<Vec<Rat>>;

/// Errors raised by the arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MathError {
    /// The zero vector spans no ray.
    ZeroRay,
    /// A rational literal could not be parsed.
    Parse(String),
}

impl fmt::Display for MathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MathError::ZeroRay => write!(f, "zero ray"),
            MathError::Parse(s) => write!(f, "invalid rational literal: {s}"),
        }
    }
}

impl std::error::Error for MathError {}

/// Shorthand integer constructor.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand rational constructor `p/q`, `q != 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Integer slice to lattice vector.
pub fn veci(v: &[i64]) -> LatticeVec {
    v.iter().map(|&x| int(x)).collect()
}

/// Integer slice to rational vector.
pub fn vecr(v: &[i64]) -> RatVec {
    v.iter().map(|&x| Rat::from_integer(int(x))).collect()
}

/// Lattice vector to rational vector.
pub fn to_rat_vec(v: &[Int]) -> RatVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Parses `"p"` or `"p/q"` with `q > 0` after reduction.
pub fn parse_rat(s: &str) -> Result<Rat, MathError> {
    let bad = || MathError::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: Int = num.trim().parse().map_err(|_| bad())?;
    let q: Int = den.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(p, q))
}

/// Formats as `"p/q"`, omitting the denominator when it is 1.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact integer dot product.
pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact rational dot product.
pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairing of an integer functional with a rational vector.
pub fn pair(a: &[Int], v: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), v.len());
    a.iter()
        .zip(v)
        .map(|(x, y)| Rat::from_integer(x.clone()) * y)
        .sum()
}

/// Non-negative gcd of all entries; 0 for the zero vector.
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides an integer vector by its content. Errors on the zero vector.
pub fn primitive_int(v: &[Int]) -> Result<LatticeVec, MathError> {
    let g = content(v);
    if g.is_zero() {
        return Err(MathError::ZeroRay);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Primitive integral generator of the ray ℚ_{≥0}·v together with
/// κ(v) = min{λ > 0 : λ·v integral}.
///
/// For a rational point p, κ(p)·p is the first integral multiple; for an
/// integral vector the primitive direction is returned with κ = 1/content.
pub fn primitive(v: &[Rat]) -> Result<(LatticeVec, Rat), MathError> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(MathError::ZeroRay);
    }
    // Clear denominators: q = lcm of denominators, then reduce q·v by its content.
    let q = v
        .iter()
        .fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<Int> = v
        .iter()
        .map(|x| x.numer() * (&q / x.denom()))
        .collect();
    let g = content(&scaled);
    let prim: Vec<Int> = scaled.iter().map(|x| x / &g).collect();
    // κ·v = prim, so κ = q/g.
    Ok((prim, Rat::new(q, g)))
}

/// κ(p) as the paper uses it: the denominator scale of a rational point.
pub fn kappa(v: &[Rat]) -> Int {
    v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
}
