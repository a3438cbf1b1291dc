//! Fans of rational polyhedral cones.
//!
//! A fan stores its maximal cones; faces are recovered on demand. Star
//! subdivision, the lexicographic pulling triangulation (no new rays), and
//! smooth refinement with a replayable center list live here.

use crate::cone::{Cone, GeomError};
use exact_math::{primitive_int, Int, LatticeVec, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    ambient: usize,
    cones: Vec<Cone>,
}

impl Fan {
    /// Builds a fan from cones after checking that every pairwise
    /// intersection is a common face.
    pub fn new(ambient: usize, cones: Vec<Cone>) -> Result<Fan, GeomError> {
        let fan = Fan::new_unchecked(ambient, cones);
        for (i, a) in fan.cones.iter().enumerate() {
            for b in &fan.cones[i + 1..] {
                let inter = a.intersect(b);
                if !inter.is_face_of(a) || !inter.is_face_of(b) {
                    return Err(GeomError::InvalidFan);
                }
            }
        }
        Ok(fan)
    }

    /// Builds a fan keeping only inclusion-maximal cones, without the
    /// pairwise face check.
    pub fn new_unchecked(ambient: usize, cones: Vec<Cone>) -> Fan {
        debug_assert!(cones.iter().all(|c| c.ambient_rank() == ambient));
        let dedup: Vec<Cone> = cones.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let maximal: Vec<Cone> = dedup
            .iter()
            .filter(|c| !dedup.iter().any(|d| *c != d && c.is_subset_of(d)))
            .cloned()
            .collect();
        Fan { ambient, cones: maximal }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// The maximal cones, in canonical order.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// All rays of the fan, sorted.
    pub fn rays(&self) -> Vec<LatticeVec> {
        let mut set = BTreeSet::new();
        for c in &self.cones {
            set.extend(c.rays().iter().cloned());
        }
        set.into_iter().collect()
    }

    /// Every face of every cone, deduplicated, sorted by dimension.
    pub fn all_faces(&self) -> Vec<Cone> {
        let mut set = BTreeSet::new();
        for c in &self.cones {
            set.extend(c.faces());
        }
        let mut faces: Vec<Cone> = set.into_iter().collect();
        faces.sort_by_key(|f| (f.dim(), f.clone()));
        faces
    }

    pub fn support_contains(&self, v: &[Int]) -> bool {
        self.cones.iter().any(|c| c.contains(v))
    }

    pub fn support_contains_rat(&self, v: &[Rat]) -> bool {
        self.cones.iter().any(|c| c.contains_rat(v))
    }

    pub fn find_containing(&self, v: &[Int]) -> Option<&Cone> {
        self.cones.iter().find(|c| c.contains(v))
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| c.is_simplicial())
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| c.is_smooth())
    }

    /// Star subdivision at a lattice point of the support. Cones not
    /// containing the point survive; each cone containing it is replaced by
    /// the joins of the new ray with the facet faces avoiding the point.
    pub fn star_subdivision(&self, center: &[Int]) -> Result<Fan, GeomError> {
        if center.iter().all(|x| x.is_zero()) {
            return Err(GeomError::ZeroRay);
        }
        let nu = primitive_int(center).expect("nonzero center");
        if !self.support_contains(&nu) {
            return Err(GeomError::PointOutsideSupport);
        }
        let mut out: Vec<Cone> = Vec::new();
        for sigma in &self.cones {
            if !sigma.contains(&nu) {
                out.push(sigma.clone());
                continue;
            }
            for facet_face in sigma.facet_faces() {
                if facet_face.contains(&nu) {
                    continue;
                }
                let mut gens = facet_face.rays().to_vec();
                for l in sigma.lines() {
                    gens.push(l.clone());
                    gens.push(l.iter().map(|x| -x.clone()).collect());
                }
                gens.push(nu.clone());
                out.push(Cone::from_generators(self.ambient, &gens));
            }
        }
        let fan = Fan::new_unchecked(self.ambient, out);
        debug_assert!(Fan::new(self.ambient, fan.cones.clone()).is_ok());
        Ok(fan)
    }

    /// The pulling triangulation: star subdivisions at all rays of the fan
    /// in lexicographic order. No new rays appear and the result is
    /// simplicial.
    pub fn triangulate_no_new_rays(&self) -> Fan {
        let mut fan = self.clone();
        for r in self.rays() {
            fan = fan.star_subdivision(&r).expect("fan ray lies in the support");
        }
        debug_assert!(fan.is_simplicial());
        fan
    }

    /// Refines the fan to a smooth one. First the pulling triangulation,
    /// then repeated star subdivisions at parallelotope points of minimal
    /// non-unimodular faces. Returns the refined fan and the ordered list
    /// of subdivision centers, which replays deterministically.
    pub fn smooth_refine(&self) -> (Fan, Vec<LatticeVec>) {
        let mut centers: Vec<LatticeVec> = Vec::new();
        let mut fan = self.clone();
        for r in self.rays() {
            let next = fan.star_subdivision(&r).expect("fan ray lies in the support");
            if next != fan {
                centers.push(r.clone());
                fan = next;
            }
        }
        debug_assert!(fan.is_simplicial());
        loop {
            let mut bad: Vec<Cone> = fan
                .all_faces()
                .into_iter()
                .filter(|f| {
                    f.multiplicity().map(|m| !m.is_one()).unwrap_or(true)
                })
                .collect();
            if bad.is_empty() {
                break;
            }
            bad.sort_by_key(|c| (c.dim(), c.clone()));
            let tau = &bad[0];
            let nu = tau
                .parallelotope_lattice_points()
                .expect("faces are simplicial after triangulating")
                .into_iter()
                .map(|(p, _)| p)
                .find(|p| p.iter().any(|x| !x.is_zero()))
                .expect("non-unimodular cone has a nonzero parallelotope point");
            fan = fan.star_subdivision(&nu).expect("center lies in the support");
            centers.push(nu);
        }
        debug_assert!(fan.is_smooth());
        (fan, centers)
    }
}
