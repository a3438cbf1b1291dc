//! Inventory of invariant prime divisors and the canonical class.
//!
//! Divisors come in three kinds: vertical divisors over a point of the curve,
//! one per vertex of the fiber polyhedron; horizontal divisors, one per
//! uncolored tail ray not meeting the degree; and color divisors. A
//! `DivisorInventory` assigns a rational coefficient to each, which is how
//! both the canonical class and discrepancy divisors are carried around.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use divfan::{intersect_polyhedra, ColoredDivisorialFan, GroupData};
use exact_math::{fmt_rat, kappa, primitive_int, rat, Int, LatticeVec, Rat, RatVec};
use num_traits::{One, Zero};
use polyhedra::{Cone, TailedPolyhedron};
use rootdata::a_alpha;

use crate::StringyError;

/// Identifier of one invariant prime divisor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum DivisorKey {
    /// Vertical divisor over the labeled point, indexed by a vertex of the
    /// fiber polyhedron there.
    Vertical { label: String, vertex: RatVec },
    /// Horizontal divisor attached to an uncolored tail ray.
    Horizontal { ray: LatticeVec },
    /// Color divisor attached to a simple root outside the parabolic set.
    Color { alpha: usize },
}

impl fmt::Display for DivisorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorKey::Vertical { label, vertex } => {
                let coords: Vec<String> = vertex.iter().map(fmt_rat).collect();
                write!(f, "D({label}; {})", coords.join(", "))
            }
            DivisorKey::Horizontal { ray } => {
                let coords: Vec<String> = ray.iter().map(Int::to_string).collect();
                write!(f, "D(ray {})", coords.join(", "))
            }
            DivisorKey::Color { alpha } => write!(f, "D(color {alpha})"),
        }
    }
}

/// A ℚ-divisor supported on the invariant prime divisors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorInventory {
    coefficients: BTreeMap<DivisorKey, Rat>,
}

impl DivisorInventory {
    pub fn insert(&mut self, key: DivisorKey, coefficient: Rat) {
        self.coefficients.insert(key, coefficient);
    }

    pub fn coefficient(&self, key: &DivisorKey) -> Option<&Rat> {
        self.coefficients.get(key)
    }

    pub fn contains(&self, key: &DivisorKey) -> bool {
        self.coefficients.contains_key(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DivisorKey, &Rat)> {
        self.coefficients.iter()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Rays of the horizontal divisors in the inventory.
    pub fn horizontal_rays(&self) -> BTreeSet<LatticeVec> {
        self.coefficients
            .keys()
            .filter_map(|k| match k {
                DivisorKey::Horizontal { ray } => Some(ray.clone()),
                _ => None,
            })
            .collect()
    }

    /// All discrepancies exceed -1 exactly when the pair is log terminal.
    pub fn all_above_minus_one(&self) -> bool {
        let minus_one = -Rat::one();
        self.coefficients.values().all(|c| c > &minus_one)
    }
}

/// Whether a tail ray of the entry carries a color.
pub(crate) fn ray_colored(
    fan: &ColoredDivisorialFan,
    colors: &BTreeSet<usize>,
    ray: &LatticeVec,
) -> bool {
    colors.iter().any(|&alpha| {
        let point = fan.group().color_point(alpha).expect("color of the fan");
        match primitive_int(&point) {
            Ok(p) => &p == ray,
            Err(_) => false,
        }
    })
}

/// Whether the ray through the origin meets the degree polyhedron.
pub(crate) fn ray_meets(degree: &TailedPolyhedron, ray: &LatticeVec) -> bool {
    let n = degree.ambient_rank();
    let origin = vec![vec![Rat::zero(); n]];
    let cone = Cone::from_generators(n, std::slice::from_ref(ray));
    let ray_poly = TailedPolyhedron::new(n, &origin, &cone).expect("a ray is a polyhedron");
    intersect_polyhedra(degree, &ray_poly).is_some()
}

/// Enumerates the invariant prime divisors of the fan.
///
/// Horizontal divisors correspond to uncolored tail rays; on a projective
/// locus, rays meeting the degree polyhedron are dropped as well since the
/// corresponding orbits are contracted.
pub fn invariant_divisors(fan: &ColoredDivisorialFan) -> Result<Vec<DivisorKey>, StringyError> {
    let mut keys: BTreeSet<DivisorKey> = BTreeSet::new();

    for y in fan.special_points() {
        for entry in fan.entries() {
            if !entry.divisor.locus().contains(&y) {
                continue;
            }
            for vertex in entry.divisor.coefficient(&y).vertices() {
                keys.insert(DivisorKey::Vertical { label: y.clone(), vertex: vertex.clone() });
            }
        }
    }

    for entry in fan.entries() {
        let degree = entry.divisor.degree();
        for ray in entry.divisor.tail().rays() {
            if ray_colored(fan, &entry.colors, ray) {
                continue;
            }
            if let Some(deg) = &degree {
                if ray_meets(deg, ray) {
                    continue;
                }
            }
            keys.insert(DivisorKey::Horizontal { ray: ray.clone() });
        }
    }

    if let GroupData::Horospherical { system, pair } = fan.group() {
        for alpha in 0..system.rank() {
            if !pair.parabolic().contains(&alpha) {
                keys.insert(DivisorKey::Color { alpha });
            }
        }
    }

    Ok(keys.into_iter().collect())
}

/// A gauge placing the full canonical degree of the curve on its first
/// named point.
pub fn default_gauge(fan: &ColoredDivisorialFan) -> Result<BTreeMap<String, i64>, StringyError> {
    let degree = fan.curve().canonical_degree();
    if degree == 0 {
        return Ok(BTreeMap::new());
    }
    match fan.curve().points().first() {
        Some(p) => Ok(BTreeMap::from([(p.clone(), degree)])),
        None => Err(StringyError::Input(
            "a canonical gauge needs a named point on the curve".into(),
        )),
    }
}

/// The canonical class for a chosen gauge `K_curve ~ Σ b_y·[y]`.
///
/// Coefficients: `κ(v)·b_y + κ(v) - 1` on the vertical divisor at vertex v,
/// `-1` on horizontal divisors and `-a_α` on colors.
pub fn canonical_divisor(
    fan: &ColoredDivisorialFan,
    gauge: &BTreeMap<String, i64>,
) -> Result<DivisorInventory, StringyError> {
    for y in gauge.keys() {
        if !fan.curve().has_point(y) {
            return Err(StringyError::Input(format!("gauge point \"{y}\" is not on the curve")));
        }
    }
    let got: i64 = gauge.values().sum();
    let expected = fan.curve().canonical_degree();
    if got != expected {
        return Err(StringyError::CanonicalDegree { got, expected });
    }

    let mut interest: BTreeSet<String> = fan.special_points();
    interest.extend(gauge.iter().filter(|(_, &b)| b != 0).map(|(y, _)| y.clone()));

    let mut inventory = DivisorInventory::default();
    for y in &interest {
        let b = rat(gauge.get(y).copied().unwrap_or(0), 1);
        for entry in fan.entries() {
            if !entry.divisor.locus().contains(y) {
                continue;
            }
            for vertex in entry.divisor.coefficient(y).vertices() {
                let k = Rat::from(kappa(vertex));
                let coefficient = &k * (&b + Rat::one()) - Rat::one();
                inventory
                    .insert(DivisorKey::Vertical { label: y.clone(), vertex: vertex.clone() }, coefficient);
            }
        }
    }

    for key in invariant_divisors(fan)? {
        match &key {
            DivisorKey::Horizontal { .. } => inventory.insert(key, -Rat::one()),
            DivisorKey::Color { alpha } => {
                let GroupData::Horospherical { system, pair } = fan.group() else {
                    unreachable!("colors come from a horospherical group")
                };
                let a = a_alpha(system, pair.parabolic(), *alpha)
                    .map_err(|e| StringyError::Internal(e.to_string()))?;
                inventory.insert(key, rat(-a, 1));
            }
            DivisorKey::Vertical { .. } => {}
        }
    }

    Ok(inventory)
}
