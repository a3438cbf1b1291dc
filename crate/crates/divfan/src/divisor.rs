//! Polyhedral divisors on a curve: a pointed tail cone, a locus, and finitely
//! many nontrivial polyhedral coefficients. Unlisted points implicitly carry
//! the tail cone itself.

use std::collections::{BTreeMap, BTreeSet};

use exact_math::{dot, Int, LatticeVec, Rat, RatVec};
use num_traits::{Signed, Zero};
use polyhedra::{Cone, TailedPolyhedron};

use crate::DivError;

/// Where the divisor lives: the whole curve or the complement of a finite
/// set of labeled points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Locus {
    Projective,
    AffineRemoved(BTreeSet<String>),
}

impl Locus {
    pub fn is_projective(&self) -> bool {
        matches!(self, Locus::Projective)
    }

    pub fn contains(&self, label: &str) -> bool {
        match self {
            Locus::Projective => true,
            Locus::AffineRemoved(removed) => !removed.contains(label),
        }
    }

    pub fn removed(&self) -> Option<&BTreeSet<String>> {
        match self {
            Locus::Projective => None,
            Locus::AffineRemoved(removed) => Some(removed),
        }
    }
}

/// Properness verdict for a polyhedral divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Properness {
    Proper,
    /// Degree-zero check passed but principality on a positive-genus curve
    /// is assumed, not decided.
    ConditionallyProper,
    NotProper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperReport {
    pub verdict: Properness,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralDivisor {
    tail: Cone,
    locus: Locus,
    coefficients: BTreeMap<String, TailedPolyhedron>,
}

impl PolyhedralDivisor {
    /// Builds a divisor, dropping listed coefficients that equal the tail so
    /// that equal divisors compare equal.
    pub fn new(
        tail: Cone,
        locus: Locus,
        coefficients: BTreeMap<String, TailedPolyhedron>,
    ) -> Result<PolyhedralDivisor, DivError> {
        if !tail.is_pointed() {
            return Err(DivError::Shape("tail cone must be pointed".into()));
        }
        let trivial = TailedPolyhedron::from_cone(&tail)
            .map_err(|e| DivError::Shape(e.to_string()))?;
        let mut kept = BTreeMap::new();
        for (label, poly) in coefficients {
            if poly.ambient_rank() != tail.ambient_rank() {
                return Err(DivError::Shape(format!(
                    "coefficient at \"{label}\" lives in rank {} instead of {}",
                    poly.ambient_rank(),
                    tail.ambient_rank()
                )));
            }
            if poly.tail() != &tail {
                return Err(DivError::Shape(format!(
                    "coefficient at \"{label}\" does not have the divisor tail"
                )));
            }
            if !locus.contains(&label) {
                return Err(DivError::Point(format!(
                    "coefficient listed at removed point \"{label}\""
                )));
            }
            if poly != trivial {
                kept.insert(label, poly);
            }
        }
        Ok(PolyhedralDivisor { tail, locus, coefficients: kept })
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn locus(&self) -> &Locus {
        &self.locus
    }

    pub fn ambient_rank(&self) -> usize {
        self.tail.ambient_rank()
    }

    /// The listed (necessarily nontrivial) coefficients.
    pub fn coefficients(&self) -> &BTreeMap<String, TailedPolyhedron> {
        &self.coefficients
    }

    /// The coefficient polyhedron at a point of the locus.
    pub fn coefficient(&self, label: &str) -> TailedPolyhedron {
        debug_assert!(self.locus.contains(label), "point outside the locus");
        self.coefficients
            .get(label)
            .cloned()
            .unwrap_or_else(|| TailedPolyhedron::from_cone(&self.tail).expect("pointed tail"))
    }

    /// Points whose coefficient differs from the tail.
    pub fn special_points(&self) -> Vec<&str> {
        self.coefficients.keys().map(String::as_str).collect()
    }

    /// Minkowski sum of all coefficients when the locus is projective.
    pub fn degree(&self) -> Option<TailedPolyhedron> {
        if !self.locus.is_projective() {
            return None;
        }
        let mut sum = TailedPolyhedron::from_cone(&self.tail).expect("pointed tail");
        for poly in self.coefficients.values() {
            sum = sum.minkowski_sum(poly);
        }
        Some(sum)
    }

    /// The Q-divisor m -> sum over y of min <m, Delta_y>, reported at the
    /// listed points; the coefficient vanishes everywhere else.
    pub fn evaluate(&self, m: &[Int]) -> Result<BTreeMap<String, Rat>, DivError> {
        if self.tail.rays().iter().any(|r| dot(m, r).is_negative()) {
            return Err(DivError::DualTail);
        }
        let mut values = BTreeMap::new();
        for (label, poly) in &self.coefficients {
            let v = poly.min_pairing(m).expect("m is in the dual tail");
            values.insert(label.clone(), v);
        }
        Ok(values)
    }

    /// Properness check. On genus zero principality is decided exactly by
    /// degrees; on higher genus it is assumed once the degree check passes.
    pub fn is_proper(&self, genus: usize) -> ProperReport {
        if !self.locus.is_projective() {
            return ProperReport { verdict: Properness::Proper, reasons: vec!["affine locus".into()] };
        }
        let degree = self.degree().expect("projective locus has a degree");
        let mut reasons = Vec::new();
        for v in degree.vertices() {
            if !self.tail.contains_rat(v) {
                reasons.push(format!("degree vertex {v:?} is outside the tail"));
            }
        }
        if !reasons.is_empty() {
            return ProperReport { verdict: Properness::NotProper, reasons };
        }
        if degree == TailedPolyhedron::from_cone(&self.tail).expect("pointed tail") {
            return ProperReport {
                verdict: Properness::NotProper,
                reasons: vec!["degree equals the whole tail".into()],
            };
        }
        // Directions with zero minimum on the degree: extreme rays of the
        // dual plus its lineality when the tail is not full dimensional.
        let dual = self.tail.dual();
        let mut zero_directions: Vec<LatticeVec> = Vec::new();
        for m in dual.rays().iter().chain(dual.lines()) {
            if degree.min_pairing(m) == Some(Rat::zero()) {
                zero_directions.push(m.clone());
            }
        }
        if zero_directions.is_empty() {
            reasons.push("degree strictly inside the tail; no zero-minimum direction".into());
            return ProperReport { verdict: Properness::Proper, reasons };
        }
        if genus == 0 {
            reasons.push(format!(
                "{} zero-minimum directions; principality on genus zero holds by degree count",
                zero_directions.len()
            ));
            ProperReport { verdict: Properness::Proper, reasons }
        } else {
            reasons.push(
                "conditionally proper (degree-zero check passed; principality assumed)".into(),
            );
            ProperReport { verdict: Properness::ConditionallyProper, reasons }
        }
    }

    /// Restriction to the complement of finitely many more points.
    pub fn restrict(&self, remove: &BTreeSet<String>) -> PolyhedralDivisor {
        let mut removed = match &self.locus {
            Locus::Projective => BTreeSet::new(),
            Locus::AffineRemoved(r) => r.clone(),
        };
        removed.extend(remove.iter().cloned());
        let coefficients = self
            .coefficients
            .iter()
            .filter(|(label, _)| !removed.contains(*label))
            .map(|(l, p)| (l.clone(), p.clone()))
            .collect();
        PolyhedralDivisor::new(self.tail.clone(), Locus::AffineRemoved(removed), coefficients)
            .expect("restriction keeps the shape valid")
    }

    /// Pointwise intersection: tails intersect, coefficients intersect, and
    /// points with empty intersection leave the locus.
    pub fn intersect(&self, other: &PolyhedralDivisor) -> PolyhedralDivisor {
        let tail = self.tail.intersect(&other.tail);
        let mut removed: BTreeSet<String> = BTreeSet::new();
        if let Some(r) = self.locus.removed() {
            removed.extend(r.iter().cloned());
        }
        if let Some(r) = other.locus.removed() {
            removed.extend(r.iter().cloned());
        }
        let labels: BTreeSet<&String> =
            self.coefficients.keys().chain(other.coefficients.keys()).collect();
        let mut coefficients = BTreeMap::new();
        for label in labels {
            if removed.contains(label) {
                continue;
            }
            match intersect_polyhedra(&self.coefficient(label), &other.coefficient(label)) {
                Some(poly) => {
                    coefficients.insert(label.clone(), poly);
                }
                None => {
                    removed.insert(label.clone());
                }
            }
        }
        let locus = if self.locus.is_projective() && other.locus.is_projective() && removed.is_empty()
        {
            Locus::Projective
        } else {
            Locus::AffineRemoved(removed)
        };
        PolyhedralDivisor::new(tail, locus, coefficients)
            .expect("intersections of valid divisors are valid")
    }
}

/// Intersection of two polyhedra with a common ambient lattice, through the
/// Cayley cones one dimension up. None encodes the empty intersection.
pub fn intersect_polyhedra(
    a: &TailedPolyhedron,
    b: &TailedPolyhedron,
) -> Option<TailedPolyhedron> {
    debug_assert_eq!(a.ambient_rank(), b.ambient_rank());
    let n = a.ambient_rank();
    let cay = a.cayley_cone().intersect(&b.cayley_cone());
    let mut points: Vec<RatVec> = Vec::new();
    let mut tail_rays: Vec<LatticeVec> = Vec::new();
    for r in cay.rays() {
        let h = &r[n];
        if h.is_zero() {
            tail_rays.push(r[..n].to_vec());
        } else {
            points.push(r[..n].iter().map(|x| Rat::new(x.clone(), h.clone())).collect());
        }
    }
    if points.is_empty() {
        return None;
    }
    let tail = Cone::from_generators(n, &tail_rays);
    Some(TailedPolyhedron::new(n, &points, &tail).expect("slices of a pointed cone"))
}
