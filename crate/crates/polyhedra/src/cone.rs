//! Rational polyhedral cones with exact double descriptions.
//!
//! A cone carries four canonical data sets: extremal ray representatives,
//! a basis of the lineality lattice, irredundant facet normals, and a basis
//! of the equation lattice cutting out the linear span. Rays are reduced
//! modulo the lineality lattice and facet normals modulo the equation
//! lattice, so dualizing is a pure swap of the two descriptions.

use exact_math::{
    content, dot, hermite_normal_form, identity, int, integral_kernel, mat_mul, primitive_int,
    smith_normal_form, Int, LatticeVec, Rat, RatVec,
};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Errors raised by geometric constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    PointOutsideSupport,
    NotSimplicial,
    ZeroRay,
    NotPointed,
    EmptyPolyhedron,
    InvalidFan,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::PointOutsideSupport => write!(f, "point outside support"),
            GeomError::NotSimplicial => write!(f, "cone is not simplicial"),
            GeomError::ZeroRay => write!(f, "zero ray"),
            GeomError::NotPointed => write!(f, "tail cone must be pointed"),
            GeomError::EmptyPolyhedron => write!(f, "polyhedron needs at least one vertex"),
            GeomError::InvalidFan => write!(f, "cones do not intersect in common faces"),
        }
    }
}

impl std::error::Error for GeomError {}

fn vec_mat(v: &[Int], m: &[Vec<Int>]) -> LatticeVec {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    (0..cols).map(|j| v.iter().zip(m).map(|(x, row)| x * &row[j]).sum()).collect()
}

fn neg(v: &[Int]) -> LatticeVec {
    v.iter().map(|x| -x.clone()).collect()
}

/// Rank of an integer matrix, via the Hermite form.
fn int_rank(rows: &[LatticeVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let (h, _) = hermite_normal_form(rows);
    h.iter().filter(|r| r.iter().any(|x| !x.is_zero())).count()
}

/// Canonical Hermite basis from a spanning set of lattice vectors.
fn hnf_basis(rows: &[LatticeVec]) -> Vec<LatticeVec> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (h, _) = hermite_normal_form(rows);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

fn blockdiag(top: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let k = top.len();
    let mut m = identity(n);
    for i in 0..k {
        for j in 0..k {
            m[i][j] = top[i][j].clone();
        }
    }
    m
}

/// Reduction maps for the quotient of the ambient lattice by a saturated
/// sublattice, used to canonicalize rays modulo lineality and facet normals
/// modulo equations.
pub(crate) struct QuotientMap {
    k: usize,
    w: Vec<Vec<Int>>,
    w_inv: Vec<Vec<Int>>,
}

impl QuotientMap {
    pub(crate) fn new(ambient: usize, basis: &[LatticeVec]) -> Self {
        if basis.is_empty() {
            return QuotientMap { k: 0, w: identity(ambient), w_inv: identity(ambient) };
        }
        let s = smith_normal_form(basis);
        debug_assert!(
            s.diagonal().iter().all(|d| d.is_one()),
            "quotient lattice must be saturated"
        );
        let k = basis.len();
        QuotientMap {
            k,
            w: mat_mul(&s.v, &blockdiag(&s.u, ambient)),
            w_inv: mat_mul(&blockdiag(&s.u_inv, ambient), &s.v_inv),
        }
    }

    fn coords(&self, x: &[Int]) -> LatticeVec {
        vec_mat(x, &self.w)
    }

    /// Whether `x` lies in the sublattice (equivalently, in its span).
    pub(crate) fn in_lattice(&self, x: &[Int]) -> bool {
        self.coords(x)[self.k..].iter().all(|c| c.is_zero())
    }

    /// Canonical representative of the ray of `x` modulo the sublattice:
    /// lattice coordinates dropped, quotient part made primitive.
    pub(crate) fn reduce_ray(&self, x: &[Int]) -> LatticeVec {
        let mut y = self.coords(x);
        for c in y[..self.k].iter_mut() {
            *c = Int::zero();
        }
        let g = content(&y[self.k..]);
        if g > Int::one() {
            for c in y[self.k..].iter_mut() {
                *c = &*c / &g;
            }
        }
        vec_mat(&y, &self.w_inv)
    }
}

/// A rational polyhedral cone in a fixed ambient lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    rays: Vec<LatticeVec>,
    lines: Vec<LatticeVec>,
    facets: Vec<LatticeVec>,
    equations: Vec<LatticeVec>,
}

impl Cone {
    /// The cone generated by the given lattice vectors. Zero generators are
    /// ignored; the rest are replaced by their primitive multiples.
    pub fn from_generators(ambient: usize, gens: &[LatticeVec]) -> Cone {
        let prim: Vec<LatticeVec> = gens
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .map(|g| primitive_int(g).expect("nonzero generator"))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        debug_assert!(prim.iter().all(|g| g.len() == ambient));
        if prim.is_empty() {
            return Cone {
                ambient,
                rays: Vec::new(),
                lines: Vec::new(),
                facets: Vec::new(),
                equations: identity(ambient),
            };
        }
        let equations = hnf_basis(&integral_kernel(&prim));
        let d = ambient - equations.len();
        let eq_q = QuotientMap::new(ambient, &equations);

        let mut facet_set: BTreeSet<LatticeVec> = BTreeSet::new();
        for subset in (0..prim.len()).combinations(d.saturating_sub(1)) {
            let mut rows: Vec<LatticeVec> = subset.iter().map(|&i| prim[i].clone()).collect();
            rows.extend(equations.iter().cloned());
            if int_rank(&rows) != ambient - 1 {
                continue;
            }
            let kernel =
                if rows.is_empty() { identity(ambient) } else { integral_kernel(&rows) };
            debug_assert_eq!(kernel.len(), 1);
            let mut a = kernel.into_iter().next().unwrap();
            let mut pos = false;
            let mut negv = false;
            for g in &prim {
                let s = dot(&a, g);
                if s.is_positive() {
                    pos = true;
                } else if s.is_negative() {
                    negv = true;
                }
            }
            if pos && negv {
                continue;
            }
            if negv {
                a = neg(&a);
            }
            if pos || negv {
                facet_set.insert(eq_q.reduce_ray(&a));
            }
        }
        let facets: Vec<LatticeVec> = facet_set.into_iter().collect();

        let mut constraint_rows: Vec<LatticeVec> = facets.clone();
        constraint_rows.extend(equations.iter().cloned());
        let lines = if constraint_rows.is_empty() {
            identity(ambient)
        } else {
            hnf_basis(&integral_kernel(&constraint_rows))
        };
        let line_q = QuotientMap::new(ambient, &lines);

        let mut ray_set: BTreeSet<LatticeVec> = BTreeSet::new();
        for g in &prim {
            if line_q.in_lattice(g) {
                continue;
            }
            let mut tight: Vec<LatticeVec> =
                facets.iter().filter(|a| dot(a, g).is_zero()).cloned().collect();
            tight.extend(equations.iter().cloned());
            if ambient - int_rank(&tight) == lines.len() + 1 {
                ray_set.insert(line_q.reduce_ray(g));
            }
        }
        Cone {
            ambient,
            rays: ray_set.into_iter().collect(),
            lines,
            facets,
            equations,
        }
    }

    /// The cone generated by rational vectors (each made primitive first).
    pub fn from_generators_rat(ambient: usize, gens: &[RatVec]) -> Cone {
        let lifted: Vec<LatticeVec> = gens
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .map(|g| exact_math::primitive(g).expect("nonzero generator").0)
            .collect();
        Cone::from_generators(ambient, &lifted)
    }

    /// The cone `{x : ⟨a, x⟩ ≥ 0 for all a, ⟨e, x⟩ = 0 for all e}`.
    pub fn from_inequalities(
        ambient: usize,
        ineqs: &[LatticeVec],
        eqs: &[LatticeVec],
    ) -> Cone {
        let mut gens: Vec<LatticeVec> = ineqs.to_vec();
        for e in eqs {
            gens.push(e.clone());
            gens.push(neg(e));
        }
        Cone::from_generators(ambient, &gens).dual()
    }

    /// The cone containing only the origin.
    pub fn zero(ambient: usize) -> Cone {
        Cone::from_generators(ambient, &[])
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn lines(&self) -> &[LatticeVec] {
        &self.lines
    }

    pub fn facets(&self) -> &[LatticeVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[LatticeVec] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lines.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lines.is_empty()
    }

    /// The dual cone. Because both descriptions are canonical, this is an
    /// exact involution: `c.dual().dual() == c`.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient: self.ambient,
            rays: self.facets.clone(),
            lines: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lines.clone(),
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|a| !dot(a, v).is_negative())
    }

    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        self.contains(&clear_denominators(v))
    }

    /// Whether `v` lies in the relative interior.
    pub fn relative_interior_contains(&self, v: &[Int]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|a| dot(a, v).is_positive())
    }

    /// Whether this cone is a subset of `other`.
    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
            && self.lines.iter().all(|l| other.contains(l) && other.contains(&neg(l)))
    }

    /// Whether this cone is a face of `other` (including `other` itself).
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.ambient != other.ambient || self.lines != other.lines {
            return false;
        }
        if !self.rays.iter().all(|r| other.rays.binary_search(r).is_ok()) {
            return false;
        }
        let tight: Vec<&LatticeVec> = other
            .facets
            .iter()
            .filter(|a| self.rays.iter().all(|r| dot(a, r).is_zero()))
            .collect();
        let closed: Vec<&LatticeVec> = other
            .rays
            .iter()
            .filter(|r| tight.iter().all(|a| dot(a, r).is_zero()))
            .collect();
        closed.len() == self.rays.len()
    }

    /// All faces, including the cone itself and its minimal face.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut queue = vec![all.clone()];
        seen.insert(all);
        while let Some(s) = queue.pop() {
            for a in &self.facets {
                if s.iter().all(|&i| dot(a, &self.rays[i]).is_zero()) {
                    continue;
                }
                let s2: Vec<usize> = s
                    .iter()
                    .copied()
                    .filter(|&i| dot(a, &self.rays[i]).is_zero())
                    .collect();
                if seen.insert(s2.clone()) {
                    queue.push(s2);
                }
            }
        }
        let mut faces: Vec<Cone> = seen.into_iter().map(|s| self.subcone(&s)).collect();
        faces.sort_by_key(|f| (f.dim(), f.clone()));
        faces
    }

    /// The faces of codimension one.
    pub fn facet_faces(&self) -> Vec<Cone> {
        self.facets
            .iter()
            .map(|a| {
                let s: Vec<usize> = (0..self.rays.len())
                    .filter(|&i| dot(a, &self.rays[i]).is_zero())
                    .collect();
                self.subcone(&s)
            })
            .collect()
    }

    fn subcone(&self, ray_indices: &[usize]) -> Cone {
        let mut gens: Vec<LatticeVec> =
            ray_indices.iter().map(|&i| self.rays[i].clone()).collect();
        for l in &self.lines {
            gens.push(l.clone());
            gens.push(neg(l));
        }
        Cone::from_generators(self.ambient, &gens)
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        debug_assert_eq!(self.ambient, other.ambient);
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    pub fn is_simplicial(&self) -> bool {
        self.lines.is_empty() && self.rays.len() == self.dim()
    }

    /// The lattice index of the span's intersection with the ambient lattice
    /// over the sublattice generated by the rays; defined for simplicial
    /// cones only.
    pub fn multiplicity(&self) -> Result<Int, GeomError> {
        if !self.is_simplicial() {
            return Err(GeomError::NotSimplicial);
        }
        if self.rays.is_empty() {
            return Ok(Int::one());
        }
        let s = smith_normal_form(&self.rays);
        Ok(s.diagonal().iter().product())
    }

    pub fn is_smooth(&self) -> bool {
        self.is_simplicial() && self.multiplicity().map(|m| m.is_one()).unwrap_or(false)
    }

    /// Lattice points of the half-open parallelotope `{Σ μ_i ρ_i : 0 ≤ μ_i < 1}`
    /// spanned by the rays, each with its rational coordinate vector, sorted
    /// by coordinate sum and then lexicographically. Always contains the
    /// origin; the count equals the multiplicity.
    pub fn parallelotope_lattice_points(
        &self,
    ) -> Result<Vec<(LatticeVec, RatVec)>, GeomError> {
        if !self.is_simplicial() {
            return Err(GeomError::NotSimplicial);
        }
        let k = self.rays.len();
        if k == 0 {
            return Ok(vec![(vec![Int::zero(); self.ambient], Vec::new())]);
        }
        let s = smith_normal_form(&self.rays);
        let d = s.diagonal();
        // rays = u_inv · D · B for the saturation basis B, so the coset
        // lattice in B-coordinates is generated by the rows of u_inv · D.
        let t: Vec<Vec<Int>> = (0..k)
            .map(|i| (0..k).map(|j| &s.u_inv[i][j] * &d[j]).collect())
            .collect();
        let (h, _) = hermite_normal_form(&t);
        let radix: Vec<i64> = (0..k)
            .map(|i| i64::try_from(&h[i][i]).expect("parallelotope index fits in i64"))
            .collect();
        let mut points = Vec::new();
        let mut c = vec![0i64; k];
        loop {
            // μ = c · D^{-1} · u, then reduced into [0,1) coordinatewise.
            let mu: RatVec = (0..k)
                .map(|j| {
                    let r: Rat = (0..k)
                        .map(|i| Rat::new(int(c[i]) * &s.u[i][j], d[i].clone()))
                        .sum();
                    &r - r.floor()
                })
                .collect();
            let mut x = vec![Rat::zero(); self.ambient];
            for (j, m) in mu.iter().enumerate() {
                for (xc, rc) in x.iter_mut().zip(&self.rays[j]) {
                    *xc += m * Rat::from_integer(rc.clone());
                }
            }
            let point: LatticeVec = x
                .iter()
                .map(|v| {
                    debug_assert!(v.denom().is_one(), "parallelotope point must be integral");
                    v.numer().clone()
                })
                .collect();
            points.push((point, mu));
            //

            let mut i = 0;
            loop {
                if i == k {
                    let mut out = points;
                    out.sort_by(|(pa, ma), (pb, mb)| {
                        let sa: Rat = ma.iter().sum();
                        let sb: Rat = mb.iter().sum();
                        sa.cmp(&sb).then_with(|| pa.cmp(pb))
                    });
                    return Ok(out);
                }
                c[i] += 1;
                if c[i] < radix[i] {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }
}

/// Clears denominators, keeping direction and orientation.
pub(crate) fn clear_denominators(v: &[Rat]) -> LatticeVec {
    let l = v.iter().fold(Int::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}
