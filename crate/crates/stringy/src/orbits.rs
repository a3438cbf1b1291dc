//! Group orbit census for divisorial fans with affine loci.
//!
//! Orbits come in two kinds. Horizontal families live over the generic part
//! of the locus and are cut out by faces of the tail cones. Vertical orbits
//! sit in the fibers over special points and are cut out by faces of the
//! coefficient polyhedra, read through their Cayley cones. Each orbit record
//! carries the colors sitting on its face, the simple roots of its flag
//! factor, the rank and lattice index of its torus factor, and an Euler
//! number that vanishes as soon as the torus factor is positive dimensional.

use std::collections::{BTreeMap, BTreeSet};

use divfan::{ColoredDivisorialFan, GroupData};
use exact_math::{integral_kernel, kappa, pair, Int, LatticeVec, Rat};
use num_traits::Zero;
use polyhedra::Cone;
use rootdata::{weyl_order, RootSystem};

use crate::StringyError;

/// Where an orbit lives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum OrbitKind {
    /// One orbit for every point of the generic locus.
    Horizontal,
    /// A single orbit in the fiber over the named special point.
    Vertical { label: String },
}

/// One orbit type together with its stabilizer data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub kind: OrbitKind,
    /// Primitive rays of the defining face: a tail cone face for horizontal
    /// orbits, a Cayley cone face over the special point otherwise.
    pub face: Vec<LatticeVec>,
    /// Colors whose image lies on the face.
    pub colors: BTreeSet<usize>,
    /// Simple roots of the flag factor: the parabolic set of the pair
    /// extended by the colors of the face.
    pub flag: BTreeSet<usize>,
    /// Rank of the torus factor of the orbit.
    pub torus_rank: usize,
    /// Index of the orbit's character lattice inside its saturation.
    pub lattice_index: Int,
    /// Euler characteristic of one orbit: `|W| / |W_flag|` when the torus
    /// factor vanishes, zero otherwise.
    pub euler: Int,
}

fn colors_on(
    fan: &ColoredDivisorialFan,
    selected: &BTreeSet<usize>,
    face: &Cone,
    cayley: bool,
) -> Result<BTreeSet<usize>, StringyError> {
    let mut on = BTreeSet::new();
    for &alpha in selected {
        let mut q =
            fan.group().color_point(alpha).map_err(|e| StringyError::Input(e.to_string()))?;
        if cayley {
            q.push(Int::zero());
        }
        if face.contains(&q) {
            on.insert(alpha);
        }
    }
    Ok(on)
}

/// The character lattice data of a vertical orbit: rank of the sublattice of
/// functionals vanishing on the face directions, and the index cut out by
/// demanding integrality on the face itself.
fn vertical_lattice(n: usize, face_rays: &[LatticeVec]) -> (usize, Int) {
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut verts: Vec<(&[Int], &Int)> = Vec::new();
    for ray in face_rays {
        if ray[n].is_zero() {
            rows.push(ray[..n].to_vec());
        } else {
            verts.push((&ray[..n], &ray[n]));
        }
    }
    let (nu0, l0) = verts[0];
    for (nu, l) in &verts[1..] {
        rows.push((0..n).map(|i| &nu[i] * l0 - &nu0[i] * *l).collect());
    }
    let basis = if rows.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { Int::from(1) } else { Int::zero() }).collect())
            .collect()
    } else {
        integral_kernel(&rows)
    };
    let v0: Vec<Rat> = nu0.iter().map(|a| Rat::from(a.clone()) / Rat::from(l0.clone())).collect();
    let pairings: Vec<Rat> = basis.iter().map(|b| pair(b, &v0)).collect();
    (basis.len(), kappa(&pairings))
}

/// Enumerates the orbit types of the variety of an affine-locus fan.
///
/// Orbits shared between charts are merged by their defining face. The
/// fibration over the curve makes the census finite: horizontal records
/// stand for one orbit per generic point of the locus.
pub fn orbits(fan: &ColoredDivisorialFan) -> Result<Vec<Orbit>, StringyError> {
    if fan.entries().iter().any(|e| e.divisor.locus().is_projective()) {
        return Err(StringyError::NeedsAffineLocus);
    }
    let n = fan.lattice_rank();

    let mut table: BTreeMap<(OrbitKind, Vec<LatticeVec>), BTreeSet<usize>> = BTreeMap::new();
    for entry in fan.entries() {
        let d = &entry.divisor;
        for face in d.tail().faces() {
            let colors = colors_on(fan, &entry.colors, &face, false)?;
            table.entry((OrbitKind::Horizontal, face.rays().to_vec())).or_default().extend(colors);
        }
        for y in d.special_points() {
            for face in d.coefficient(y).cayley_cone().faces() {
                if face.rays().iter().all(|r| r[n].is_zero()) {
                    continue;
                }
                let colors = colors_on(fan, &entry.colors, &face, true)?;
                table
                    .entry((OrbitKind::Vertical { label: y.to_string() }, face.rays().to_vec()))
                    .or_default()
                    .extend(colors);
            }
        }
    }

    let (system, parabolic) = match fan.group() {
        GroupData::Torus => (RootSystem::torus(n), Vec::new()),
        GroupData::Horospherical { system, pair } => (system.clone(), pair.parabolic().to_vec()),
    };
    let all: Vec<usize> = (0..system.rank()).collect();
    let full_weyl = weyl_order(&system, &all).map_err(|e| StringyError::Internal(e.to_string()))?;

    let mut out = Vec::new();
    for ((kind, face), colors) in table {
        let flag: BTreeSet<usize> =
            parabolic.iter().copied().chain(colors.iter().copied()).collect();
        let (torus_rank, lattice_index) = match kind {
            OrbitKind::Horizontal => {
                let cone = Cone::from_generators(n, &face);
                (n - cone.dim(), Int::from(1))
            }
            OrbitKind::Vertical { .. } => vertical_lattice(n, &face),
        };
        let euler = if torus_rank == 0 {
            let flag_vec: Vec<usize> = flag.iter().copied().collect();
            let sub = weyl_order(&system, &flag_vec)
                .map_err(|e| StringyError::Internal(e.to_string()))?;
            &full_weyl / &sub
        } else {
            Int::zero()
        };
        out.push(Orbit { kind, face, colors, flag, torus_rank, lattice_index, euler });
    }
    Ok(out)
}
