//! The stringy motivic volume and E-function.
//!
//! Lattice points ν of the tail fan index arcs through general points of the
//! curve, weighting by 𝕃^(-ω(ν)) against the symbolic curve class; Cayley
//! points (ν, ℓ > 0) over a special point index arcs with contact order ℓ
//! there, weighted against 𝕃 - 1. Summing interior series over all faces
//! covers each lattice point exactly once, and every sum stays an exact
//! rational function in t = 𝕃^(-1/m).

use std::collections::{BTreeMap, BTreeSet};

use divfan::{validate_fan, ColoredDivisorialFan, GroupData};
use exact_math::{fmt_rat, pair, rat, Rat, RatVec};
use lattice_gen::{interior_series, substitute_omega, LatticeSeries, Limit, SeriesRole};
use num_traits::{Signed, Zero};
use polyhedra::{Cone, Fan};
use rootdata::{gh_class, HoroPair, RootSystem};

use crate::motive::{l_minus_one, uv_poly_to_l, MotiveExpr};
use crate::support::PLSupport;
use crate::StringyError;

/// Everything the integration produces.
#[derive(Debug, Clone)]
pub struct StringyResult {
    /// Stringy motivic volume, `[C]·G + S` in t = 𝕃^(-1/m).
    pub volume: MotiveExpr,
    /// Stringy E-function in t' = (uv)^(1/m) with u, v slots.
    pub e_function: MotiveExpr,
    /// Stringy Euler characteristic, the limit u = v = 1.
    pub euler: Limit,
    /// ω-values `-k/m` surviving in denominators after cancellation.
    pub candidate_poles: Vec<Rat>,
    /// Assumptions inherited from validation, such as conditional properness.
    pub caveats: Vec<String>,
    /// Series over the tail fan, the coefficient of the curve class.
    pub tail_form: LatticeSeries,
    /// Series over the positive-height part of each special Cayley fan.
    pub point_forms: BTreeMap<String, LatticeSeries>,
}

/// The class of the open orbit as a polynomial in uv.
pub(crate) fn group_class(fan: &ColoredDivisorialFan) -> Result<LatticeSeries, StringyError> {
    match fan.group() {
        GroupData::Torus => {
            let rs = RootSystem::torus(fan.lattice_rank());
            let pair = HoroPair::torus(fan.lattice_rank());
            gh_class(&rs, &pair).map_err(|e| StringyError::Internal(e.to_string()))
        }
        GroupData::Horospherical { system, pair } => {
            gh_class(system, pair).map_err(|e| StringyError::Internal(e.to_string()))
        }
    }
}

/// Named points of the curve missing from the variety: the special points
/// plus any point outside every chart locus.
pub(crate) fn excluded_points(fan: &ColoredDivisorialFan) -> BTreeSet<String> {
    let mut excluded = fan.special_points();
    for p in fan.curve().points() {
        if !fan.entries().iter().any(|e| e.divisor.locus().contains(p)) {
            excluded.insert(p.clone());
        }
    }
    excluded
}

/// Interior sum of 𝕃^(-ω) over one face, after checking convergence rayward.
fn face_series(face: &Cone, functional: &RatVec, m: i64) -> Result<LatticeSeries, StringyError> {
    for ray in face.rays() {
        if !pair(ray, functional).is_negative() {
            let coords: Vec<String> = ray.iter().map(|x| x.to_string()).collect();
            return Err(StringyError::NotLogTerminal { ray: format!("({})", coords.join(", ")) });
        }
    }
    if face.dim() == 0 {
        return Ok(LatticeSeries::constant(exact_math::int(1), SeriesRole::LInverse, m));
    }
    let single = Fan::new_unchecked(face.ambient_rank(), vec![face.clone()]);
    let triangulation = single.triangulate_no_new_rays();
    let series = interior_series(face, &triangulation)
        .map_err(|e| StringyError::Internal(format!("interior series failed: {e:?}")))?;
    substitute_omega(&series, functional, m)
        .map_err(|e| StringyError::Internal(format!("substitution failed: {e:?}")))
}

/// Integrates the discrepancy support over the divisorial fan.
pub fn stringy_volume(
    fan: &ColoredDivisorialFan,
    omega: &PLSupport,
) -> Result<StringyResult, StringyError> {
    let report = validate_fan(fan);
    if !report.valid {
        return Err(StringyError::Input(format!(
            "fan failed validation: {}",
            report.violations.join("; ")
        )));
    }
    let caveats = report.caveats;

    let n = fan.lattice_rank();
    let m = omega.denominator;

    let tail = fan.tail_fan().map_err(|e| StringyError::Internal(e.to_string()))?;
    let mut tail_form = LatticeSeries::zero(SeriesRole::LInverse, m);
    for face in tail.all_faces() {
        let owner = fan
            .entries()
            .iter()
            .position(|e| face.is_subset_of(e.divisor.tail()))
            .ok_or_else(|| StringyError::Internal("tail face outside all charts".into()))?;
        let functional = omega.entries[owner].generic.m.clone();
        tail_form = &tail_form + &face_series(&face, &functional, m)?;
    }

    let mut point_forms = BTreeMap::new();
    for y in fan.special_points() {
        let charts: Vec<(usize, Cone)> = fan
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.divisor.locus().contains(&y))
            .map(|(i, e)| (i, e.divisor.coefficient(&y).cayley_cone()))
            .collect();
        let cayley_fan = Fan::new(n + 1, charts.iter().map(|(_, c)| c.clone()).collect())
            .map_err(|e| StringyError::Internal(format!("Cayley cones over {y}: {e:?}")))?;
        let mut sum = LatticeSeries::zero(SeriesRole::LInverse, m);
        for face in cayley_fan.all_faces() {
            if face.rays().iter().all(|r| r[n].is_zero()) {
                continue;
            }
            let owner = charts
                .iter()
                .find(|(_, c)| face.is_subset_of(c))
                .map(|(i, _)| *i)
                .ok_or_else(|| StringyError::Internal("Cayley face outside all charts".into()))?;
            let slot = &omega.entries[owner].points[&y];
            let mut functional = slot.m.clone();
            functional.push(slot.c.clone());
            sum = &sum + &face_series(&face, &functional, m)?;
        }
        point_forms.insert(y.clone(), sum);
    }

    let gh_uv = group_class(fan)?;
    let gh_l = uv_poly_to_l(&gh_uv, m);
    let vertical_total = point_forms
        .values()
        .fold(LatticeSeries::zero(SeriesRole::LInverse, m), |acc, s| &acc + s);

    let gamma_slot = &gh_l * &tail_form;
    let scalar_slot = &(&gh_l * &l_minus_one(m)) * &vertical_total;
    let volume = MotiveExpr::with_gamma(gamma_slot, scalar_slot);

    let excluded = excluded_points(fan);
    let e_function = volume.to_e_form(fan.curve().genus(), excluded.len());
    let euler = e_function.euler();

    let mut poles: BTreeSet<Rat> = BTreeSet::new();
    for k in volume.gamma().denominator().iter().chain(volume.scalar().denominator()) {
        poles.insert(rat(-k, m));
    }

    Ok(StringyResult {
        volume,
        e_function,
        euler,
        candidate_poles: poles.into_iter().collect(),
        caveats,
        tail_form,
        point_forms,
    })
}

/// Formats a candidate pole list for reports.
pub(crate) fn fmt_poles(poles: &[Rat]) -> String {
    let parts: Vec<String> = poles.iter().map(fmt_rat).collect();
    format!("{{{}}}", parts.join(", "))
}
