//! Combinatorial desingularization with discrepancy bookkeeping.
//!
//! The pipeline discolors the fan, covers projective loci by affine charts,
//! splits every chart down to at most one special point, refines the tail fan
//! by star subdivisions until all cones are unimodular, replays those centers
//! at height zero inside each special Cayley fan and finishes the refinement
//! there. The resolved charts are read back off the refined Cayley cones.
//! Exceptional divisors are the rays and vertices of the result that have no
//! invariant-divisor counterpart on the input; their log discrepancies come
//! from the canonical support function.

use std::collections::{BTreeMap, BTreeSet};

use divfan::{affinize, discolor, ColoredDivisorialFan, FanEntry, Locus, PolyhedralDivisor};
use exact_math::{Int, LatticeVec, Rat, RatVec};
use num_traits::{One, Zero};
use polyhedra::{Cone, Fan, TailedPolyhedron};

use crate::inventory::{
    canonical_divisor, default_gauge, invariant_divisors, DivisorInventory, DivisorKey,
};
use crate::support::solve_theta;
use crate::StringyError;

/// A desingularized divisorial fan together with the surgery that produced it.
#[derive(Debug, Clone)]
pub struct Resolution {
    /// The refined fan: uncolored, affine loci, unimodular Cayley cones.
    pub fan: ColoredDivisorialFan,
    /// Star-subdivision centers applied to the tail fan, in order.
    pub centers: Vec<LatticeVec>,
    /// Follow-up centers inside the Cayley fan over each special point.
    pub cayley_centers: BTreeMap<String, Vec<LatticeVec>>,
    /// Exceptional divisors with their log discrepancies.
    pub exceptional: DivisorInventory,
}

fn push_unique(charts: &mut Vec<PolyhedralDivisor>, d: PolyhedralDivisor) {
    if !charts.contains(&d) {
        charts.push(d);
    }
}

/// Closes a chart list under pairwise intersection so the result satisfies
/// the divisorial fan conditions verbatim. Intersections only shrink charts,
/// so the loop terminates.
fn close_under_intersection(charts: &mut Vec<PolyhedralDivisor>) {
    loop {
        let mut added = false;
        for i in 0..charts.len() {
            for j in i + 1..charts.len() {
                let meet = charts[i].intersect(&charts[j]);
                if !charts.contains(&meet) {
                    charts.push(meet);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
}

/// Restricts every chart to at most one special point; the original loci
/// still cover the curve because restriction only drops other special fibers.
fn split_special_points(fan: &ColoredDivisorialFan) -> Vec<PolyhedralDivisor> {
    let mut charts = Vec::new();
    for entry in fan.entries() {
        let d = &entry.divisor;
        let special: BTreeSet<String> = d.special_points().into_iter().map(String::from).collect();
        if special.len() <= 1 {
            push_unique(&mut charts, d.clone());
            continue;
        }
        for y in &special {
            let mut others = special.clone();
            others.remove(y);
            push_unique(&mut charts, d.restrict(&others));
        }
        push_unique(&mut charts, d.restrict(&special));
    }
    close_under_intersection(&mut charts);
    charts
}

/// Reads a refined Cayley cone back as a one-special-point chart.
fn cayley_chart(
    n: usize,
    cone: &Cone,
    locus: &Locus,
    label: &str,
) -> Result<PolyhedralDivisor, StringyError> {
    let mut tail_rays: Vec<LatticeVec> = Vec::new();
    let mut verts: Vec<RatVec> = Vec::new();
    for ray in cone.rays() {
        let ell = &ray[n];
        if ell.is_zero() {
            tail_rays.push(ray[..n].to_vec());
        } else {
            verts.push(
                ray[..n].iter().map(|a| Rat::from(a.clone()) / Rat::from(ell.clone())).collect(),
            );
        }
    }
    if verts.is_empty() {
        return Err(StringyError::Internal("Cayley cone without vertical rays".into()));
    }
    let tail = Cone::from_generators(n, &tail_rays);
    let poly = TailedPolyhedron::new(n, &verts, &tail)
        .map_err(|e| StringyError::Internal(e.to_string()))?;
    let coefficients = BTreeMap::from([(label.to_string(), poly)]);
    PolyhedralDivisor::new(tail, locus.clone(), coefficients)
        .map_err(|e| StringyError::Internal(e.to_string()))
}

/// Desingularizes the fan and itemizes the exceptional divisors.
///
/// The discrepancy of a new horizontal ray ρ is `-1 - ϑ(ρ)`; the discrepancy
/// of a new vertex p over y with index κ is `κ(b_y + 1) - 1 - ϑ(y; κp, κ)`,
/// where b is the gauge the canonical divisor was assembled against. Rays
/// that were colored or met the degree polyhedron count as exceptional: the
/// resolved variety keeps them as divisors while the input contracts them.
pub fn resolve(fan: &ColoredDivisorialFan) -> Result<Resolution, StringyError> {
    let gauge = default_gauge(fan)?;
    let canonical = canonical_divisor(fan, &gauge)?;
    let theta = solve_theta(fan, &canonical, &gauge)?;

    let mut base_rays: BTreeSet<LatticeVec> = BTreeSet::new();
    let mut base_verts: BTreeSet<(String, RatVec)> = BTreeSet::new();
    for key in invariant_divisors(fan)? {
        match key {
            DivisorKey::Horizontal { ray } => {
                base_rays.insert(ray);
            }
            DivisorKey::Vertical { label, vertex } => {
                base_verts.insert((label, vertex));
            }
            DivisorKey::Color { .. } => {}
        }
    }

    let plain = affinize(&discolor(fan)).map_err(|e| StringyError::Input(e.to_string()))?;
    let n = plain.lattice_rank();
    let charts = split_special_points(&plain);
    let split = ColoredDivisorialFan::new(
        plain.curve().clone(),
        n,
        plain.group().clone(),
        charts.into_iter().map(|divisor| FanEntry { divisor, colors: BTreeSet::new() }).collect(),
    )
    .map_err(|e| StringyError::Internal(e.to_string()))?;

    let tails = split.tail_fan().map_err(|e| StringyError::Input(e.to_string()))?;
    let (refined_tails, centers) = tails.smooth_refine();

    // Refine the Cayley fan over each special point: replay the tail centers
    // at height zero first so all charts share the refined tail fan, then
    // finish with the same deterministic rule.
    let mut cayley_fans: BTreeMap<String, Fan> = BTreeMap::new();
    let mut cayley_centers: BTreeMap<String, Vec<LatticeVec>> = BTreeMap::new();
    for y in split.special_points() {
        let cones: Vec<Cone> = split
            .entries()
            .iter()
            .filter(|e| e.divisor.locus().contains(&y))
            .map(|e| e.divisor.coefficient(&y).cayley_cone())
            .collect();
        let mut fan_y = Fan::new(n + 1, cones).map_err(|_| {
            StringyError::Input(format!("Cayley cones over \"{y}\" do not form a fan"))
        })?;
        for center in &centers {
            let mut lifted = center.clone();
            lifted.push(Int::zero());
            if fan_y.support_contains(&lifted) {
                fan_y = fan_y
                    .star_subdivision(&lifted)
                    .map_err(|e| StringyError::Internal(e.to_string()))?;
            }
        }
        let (done, extra) = fan_y.smooth_refine();
        cayley_fans.insert(y.clone(), done);
        cayley_centers.insert(y, extra);
    }

    // Rebuild charts from the maximal refined cones.
    let mut rebuilt: Vec<PolyhedralDivisor> = Vec::new();
    for entry in split.entries() {
        let d = &entry.divisor;
        match d.special_points().as_slice() {
            [] => {
                for cone in refined_tails.cones() {
                    if cone.is_subset_of(d.tail()) {
                        let piece =
                            PolyhedralDivisor::new(cone.clone(), d.locus().clone(), BTreeMap::new())
                                .map_err(|e| StringyError::Internal(e.to_string()))?;
                        push_unique(&mut rebuilt, piece);
                    }
                }
            }
            [y] => {
                let chart_cone = d.coefficient(y).cayley_cone();
                for cone in cayley_fans[*y].cones() {
                    if cone.is_subset_of(&chart_cone) {
                        push_unique(&mut rebuilt, cayley_chart(n, cone, d.locus(), y)?);
                    }
                }
            }
            _ => {
                return Err(StringyError::Internal(
                    "chart splitting left multiple special points".into(),
                ))
            }
        }
    }
    close_under_intersection(&mut rebuilt);
    let resolved = ColoredDivisorialFan::new(
        plain.curve().clone(),
        n,
        plain.group().clone(),
        rebuilt.into_iter().map(|divisor| FanEntry { divisor, colors: BTreeSet::new() }).collect(),
    )
    .map_err(|e| StringyError::Internal(e.to_string()))?;

    let mut exceptional = DivisorInventory::default();
    for ray in refined_tails.rays() {
        if base_rays.contains(&ray) {
            continue;
        }
        let owner = fan
            .entries()
            .iter()
            .position(|e| e.divisor.tail().contains(&ray))
            .ok_or_else(|| StringyError::Internal("refined ray escapes the tail fan".into()))?;
        let disc = -Rat::one() - theta.tail_value(owner, &ray);
        exceptional.insert(DivisorKey::Horizontal { ray }, disc);
    }
    for (y, fan_y) in &cayley_fans {
        let b_y = theta.gauge.get(y).copied().unwrap_or(0);
        for ray in fan_y.rays() {
            let ell = ray[n].clone();
            if ell.is_zero() {
                continue;
            }
            let vertex: RatVec =
                ray[..n].iter().map(|a| Rat::from(a.clone()) / Rat::from(ell.clone())).collect();
            if base_verts.contains(&(y.clone(), vertex.clone())) {
                continue;
            }
            let owner = fan
                .entries()
                .iter()
                .position(|e| {
                    e.divisor.locus().contains(y)
                        && e.divisor.coefficient(y).cayley_cone().contains(&ray)
                })
                .ok_or_else(|| {
                    StringyError::Internal("refined vertex escapes the Cayley fan".into())
                })?;
            let disc = Rat::from(ell) * Rat::from(Int::from(b_y + 1))
                - Rat::one()
                - theta.cayley_value(owner, Some(y), &ray);
            exceptional.insert(DivisorKey::Vertical { label: y.clone(), vertex }, disc);
        }
    }

    Ok(Resolution { fan: resolved, centers, cayley_centers, exceptional })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::build_omega;
    use divfan::{fan_from_json, validate_fan};
    use exact_math::{int, kappa, rat, veci};

    const SMOOTH_SURFACE: &str = r#"{
        "lattice_rank": 1,
        "curve": {"genus": 0, "points": ["0", "inf"]},
        "group": {"kind": "torus", "torus_rank": 1},
        "divisors": [
            {"tail": [[1]], "locus": {"affine_removed": ["inf"]}, "coefficients": {}}
        ]
    }"#;

    const QUADRIC_CONE: &str = r#"{
        "lattice_rank": 2,
        "curve": {"genus": 0, "points": ["0", "inf"]},
        "group": {"kind": "torus", "torus_rank": 2},
        "divisors": [
            {"tail": [[1, 0], [1, 2]], "locus": {"affine_removed": ["inf"]}, "coefficients": {}}
        ]
    }"#;

    const BLOWDOWN_PLANE: &str = r#"{
        "lattice_rank": 1,
        "curve": {"genus": 0, "points": ["0", "inf"]},
        "group": {
            "kind": "horospherical",
            "root_system": [{"type": "A", "rank": 1}],
            "torus_rank": 0,
            "I": [],
            "M_basis": [[1]]
        },
        "divisors": [
            {
                "tail": [[1]],
                "locus": {"affine_removed": ["inf"]},
                "coefficients": {},
                "colors": [0]
            }
        ]
    }"#;

    const THREEFOLD: &str = r#"{
        "lattice_rank": 2,
        "curve": {"genus": 0, "points": ["0", "1", "inf"]},
        "group": {"kind": "torus", "torus_rank": 2},
        "divisors": [
            {
                "tail": [[1, 0], [1, 6]],
                "locus": {"projective": true},
                "coefficients": {
                    "0": {"vertices": [["1", "0"], ["1", "1"]]},
                    "1": {"vertices": [["-1/2", "0"]]},
                    "inf": {"vertices": [["-1/3", "0"]]}
                }
            }
        ]
    }"#;

    #[test]
    fn smooth_affine_input_needs_no_surgery() {
        let fan = fan_from_json(SMOOTH_SURFACE).unwrap();
        let res = resolve(&fan).unwrap();
        assert!(res.centers.is_empty());
        assert!(res.cayley_centers.is_empty());
        assert!(res.exceptional.is_empty());
        assert_eq!(res.fan.entries().len(), 1);
        assert!(res.fan.tail_fan().unwrap().is_smooth());
    }

    #[test]
    fn quadric_cone_chart_gets_one_crepant_ray() {
        let fan = fan_from_json(QUADRIC_CONE).unwrap();
        let res = resolve(&fan).unwrap();
        assert_eq!(res.centers, vec![veci(&[1, 1])]);
        assert!(res.fan.tail_fan().unwrap().is_smooth());
        assert_eq!(res.exceptional.len(), 1);
        let key = DivisorKey::Horizontal { ray: veci(&[1, 1]) };
        assert_eq!(res.exceptional.coefficient(&key), Some(&rat(0, 1)));
    }

    #[test]
    fn colored_chart_resolves_to_a_blowup() {
        let fan = fan_from_json(BLOWDOWN_PLANE).unwrap();
        let res = resolve(&fan).unwrap();
        assert!(res.centers.is_empty());
        assert!(res.fan.is_uncolored());
        let key = DivisorKey::Horizontal { ray: veci(&[1]) };
        assert_eq!(res.exceptional.len(), 1);
        assert_eq!(res.exceptional.coefficient(&key), Some(&rat(1, 1)));
    }

    #[test]
    fn threefold_resolution_is_smooth_and_log_terminal() {
        let fan = fan_from_json(THREEFOLD).unwrap();
        let res = resolve(&fan).unwrap();

        let report = validate_fan(&res.fan);
        assert!(report.valid, "violations: {:?}", report.violations);
        assert!(res.fan.is_uncolored());
        assert!(res.fan.entries().iter().all(|e| !e.divisor.locus().is_projective()));
        assert!(res.fan.tail_fan().unwrap().is_smooth());
        for entry in res.fan.entries() {
            for poly in entry.divisor.coefficients().values() {
                assert!(poly.cayley_cone().is_smooth());
            }
        }

        assert!(res.exceptional.all_above_minus_one());
        // Both degree-meeting rays survive as exceptionals of the contraction.
        for ray in [veci(&[1, 0]), veci(&[1, 6])] {
            let key = DivisorKey::Horizontal { ray };
            assert_eq!(res.exceptional.coefficient(&key), Some(&rat(4, 1)));
        }
        // The support function is x -> -5a on the whole tail fan.
        for (key, disc) in res.exceptional.iter() {
            if let DivisorKey::Horizontal { ray } = key {
                assert_eq!(*disc, Rat::from(int(5) * &ray[0]) - rat(1, 1));
            }
        }
    }

    #[test]
    fn vertical_discrepancies_match_the_stringy_support_function() {
        let fan = fan_from_json(THREEFOLD).unwrap();
        let res = resolve(&fan).unwrap();
        let gauge = default_gauge(&fan).unwrap();
        let canonical = canonical_divisor(&fan, &gauge).unwrap();
        let theta = solve_theta(&fan, &canonical, &gauge).unwrap();
        let omega = build_omega(&fan, &theta).unwrap();

        let mut saw_vertical = false;
        for (key, disc) in res.exceptional.iter() {
            let DivisorKey::Vertical { label, vertex } = key else { continue };
            saw_vertical = true;
            let k = kappa(vertex);
            let mut point: LatticeVec =
                vertex.iter().map(|c| (c * Rat::from(k.clone())).to_integer()).collect();
            point.push(k);
            let expected = -Rat::one() - omega.cayley_value(0, Some(label), &point);
            assert_eq!(*disc, expected, "at ({label}; {vertex:?})");
        }
        assert!(saw_vertical);
    }
}
