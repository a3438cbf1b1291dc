//! Polyhedra of the form Conv(vertices) + tail cone.
//!
//! Canonicalization goes through the Cayley cone one dimension up: points
//! embed at height one over the last coordinate, tail rays at height zero.
//! Extremal rays of that cone recover the irredundant vertex set and the
//! tail, so two descriptions of the same polyhedron compare equal.

use crate::cone::{clear_denominators, Cone, GeomError};
use exact_math::{dot, pair, Int, LatticeVec, Rat, RatVec};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TailedPolyhedron {
    ambient: usize,
    vertices: Vec<RatVec>,
    tail: Cone,
}

impl TailedPolyhedron {
    /// Conv(points) + tail, with redundant points discarded. The tail must
    /// be pointed and at least one point must be given.
    pub fn new(ambient: usize, points: &[RatVec], tail: &Cone) -> Result<Self, GeomError> {
        debug_assert_eq!(tail.ambient_rank(), ambient);
        if points.is_empty() {
            return Err(GeomError::EmptyPolyhedron);
        }
        if !tail.is_pointed() {
            return Err(GeomError::NotPointed);
        }
        let cay = cayley_from_parts(ambient, points, tail);
        let mut vertices: Vec<RatVec> = Vec::new();
        let mut tail_rays: Vec<LatticeVec> = Vec::new();
        for r in cay.rays() {
            let h = &r[ambient];
            if h.is_zero() {
                tail_rays.push(r[..ambient].to_vec());
            } else {
                vertices.push(
                    r[..ambient].iter().map(|x| Rat::new(x.clone(), h.clone())).collect(),
                );
            }
        }
        vertices.sort();
        let tail_rebuilt = Cone::from_generators(ambient, &tail_rays);
        debug_assert_eq!(&tail_rebuilt, tail, "tail must be the recession cone");
        Ok(TailedPolyhedron { ambient, vertices, tail: tail_rebuilt })
    }

    /// The polyhedron consisting of the tail cone itself (one vertex at 0).
    pub fn from_cone(tail: &Cone) -> Result<Self, GeomError> {
        let origin = vec![vec![Rat::zero(); tail.ambient_rank()]];
        TailedPolyhedron::new(tail.ambient_rank(), &origin, tail)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    /// The cone over the polyhedron, with the grading as last coordinate:
    /// generated by (v, 1) for vertices v and (ρ, 0) for tail rays ρ.
    pub fn cayley_cone(&self) -> Cone {
        cayley_from_parts(self.ambient, &self.vertices, &self.tail)
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        let mut lifted = p.to_vec();
        lifted.push(Rat::one());
        self.cayley_cone().contains_rat(&lifted)
    }

    pub fn minkowski_sum(&self, other: &TailedPolyhedron) -> TailedPolyhedron {
        debug_assert_eq!(self.ambient, other.ambient);
        let mut points = Vec::new();
        for v in &self.vertices {
            for w in &other.vertices {
                points.push(v.iter().zip(w).map(|(a, b)| a + b).collect());
            }
        }
        let mut tail_gens = self.tail.rays().to_vec();
        tail_gens.extend(other.tail.rays().iter().cloned());
        let tail = Cone::from_generators(self.ambient, &tail_gens);
        TailedPolyhedron::new(self.ambient, &points, &tail)
            .expect("sum of valid polyhedra is valid")
    }

    pub fn translate(&self, t: &[Rat]) -> TailedPolyhedron {
        let points: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        TailedPolyhedron::new(self.ambient, &points, &self.tail).expect("translate keeps shape")
    }

    /// min over the polyhedron of ⟨m, ·⟩; finite exactly when m is
    /// non-negative on the tail, in which case the min is over vertices.
    pub fn min_pairing(&self, m: &[Int]) -> Option<Rat> {
        if self.tail.rays().iter().any(|r| dot(m, r).is_negative()) {
            return None;
        }
        self.vertices.iter().map(|v| pair(m, v)).min()
    }

    /// Whether the polyhedron is a single translated cone v + tail.
    pub fn is_translated_cone(&self) -> bool {
        self.vertices.len() == 1
    }

    /// The vertices that are lattice points.
    pub fn lattice_vertices(&self) -> Vec<LatticeVec> {
        self.vertices
            .iter()
            .filter(|v| v.iter().all(|c| c.denom().is_one()))
            .map(|v| v.iter().map(|c| c.numer().clone()).collect())
            .collect()
    }
}

fn cayley_from_parts(ambient: usize, points: &[RatVec], tail: &Cone) -> Cone {
    let mut gens: Vec<LatticeVec> = Vec::new();
    for p in points {
        let mut lifted = p.to_vec();
        lifted.push(Rat::one());
        gens.push(clear_denominators(&lifted));
    }
    for r in tail.rays() {
        let mut lifted = r.clone();
        lifted.push(Int::zero());
        gens.push(lifted);
    }
    Cone::from_generators(ambient + 1, &gens)
}

/// The Cayley cone of a tailed polyhedron (grading last).
pub fn cayley_cone(p: &TailedPolyhedron) -> Cone {
    p.cayley_cone()
}
