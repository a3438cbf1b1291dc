//! Colored divisorial fans: finitely many colored polyhedral divisors over a
//! common curve, the fan conditions, discoloration, affinization and the
//! enumeration of integral hyperspace points in the support.

use std::collections::BTreeSet;

use exact_math::{int, Int, LatticeVec};
use num_traits::Zero;
use polyhedra::{Cone, Fan, TailedPolyhedron};
use rootdata::{color_image, HoroPair, RootSystem};

use crate::curve::CurveData;
use crate::divisor::{intersect_polyhedra, PolyhedralDivisor, Properness};
use crate::DivError;

/// The acting group: a bare torus or a horospherical homogeneous space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupData {
    Torus,
    Horospherical { system: RootSystem, pair: HoroPair },
}

impl GroupData {
    pub fn is_torus(&self) -> bool {
        matches!(self, GroupData::Torus)
    }

    /// Simple roots carrying a color: everything outside the parabolic set.
    pub fn color_indices(&self) -> Vec<usize> {
        match self {
            GroupData::Torus => Vec::new(),
            GroupData::Horospherical { system, pair } => {
                (0..system.rank()).filter(|i| !pair.parabolic().contains(i)).collect()
            }
        }
    }

    /// Image of a color under the coloration map, as a lattice point of N.
    pub fn color_point(&self, alpha: usize) -> Result<LatticeVec, DivError> {
        match self {
            GroupData::Torus => Err(DivError::Schema("a torus has no colors".into())),
            GroupData::Horospherical { system, pair } => color_image(system, pair, alpha)
                .map_err(|e| DivError::Schema(e.to_string())),
        }
    }
}

/// One colored polyhedral divisor of the fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanEntry {
    pub divisor: PolyhedralDivisor,
    pub colors: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDivisorialFan {
    curve: CurveData,
    lattice_rank: usize,
    group: GroupData,
    entries: Vec<FanEntry>,
}

impl ColoredDivisorialFan {
    pub fn new(
        curve: CurveData,
        lattice_rank: usize,
        group: GroupData,
        entries: Vec<FanEntry>,
    ) -> Result<ColoredDivisorialFan, DivError> {
        if let GroupData::Horospherical { pair, .. } = &group {
            if pair.rank() != lattice_rank {
                return Err(DivError::Schema(format!(
                    "lattice rank {lattice_rank} does not match the character basis rank {}",
                    pair.rank()
                )));
            }
        }
        for entry in &entries {
            if entry.divisor.ambient_rank() != lattice_rank {
                return Err(DivError::Shape(format!(
                    "divisor tail lives in rank {} instead of {lattice_rank}",
                    entry.divisor.ambient_rank()
                )));
            }
            for label in entry.divisor.coefficients().keys() {
                if !curve.has_point(label) {
                    return Err(DivError::Point(format!("unknown point \"{label}\"")));
                }
            }
            if let Some(removed) = entry.divisor.locus().removed() {
                for label in removed {
                    if !curve.has_point(label) {
                        return Err(DivError::Point(format!("unknown point \"{label}\"")));
                    }
                }
            }
            for &alpha in &entry.colors {
                match &group {
                    GroupData::Torus => {
                        return Err(DivError::Schema("colors require root data".into()))
                    }
                    GroupData::Horospherical { system, pair } => {
                        if alpha >= system.rank() || pair.parabolic().contains(&alpha) {
                            return Err(DivError::Schema(format!(
                                "simple root {alpha} does not carry a color"
                            )));
                        }
                    }
                }
            }
        }
        Ok(ColoredDivisorialFan { curve, lattice_rank, group, entries })
    }

    pub fn curve(&self) -> &CurveData {
        &self.curve
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn entries(&self) -> &[FanEntry] {
        &self.entries
    }

    /// Union of the special points of all divisors.
    pub fn special_points(&self) -> BTreeSet<String> {
        let mut sp = BTreeSet::new();
        for entry in &self.entries {
            sp.extend(entry.divisor.special_points().into_iter().map(String::from));
        }
        sp
    }

    /// The fan generated by the divisor tails.
    pub fn tail_fan(&self) -> Result<Fan, DivError> {
        let cones: Vec<Cone> = self.entries.iter().map(|e| e.divisor.tail().clone()).collect();
        Fan::new(self.lattice_rank, cones)
            .map_err(|_| DivError::Shape("divisor tails do not form a fan".into()))
    }

    pub fn is_uncolored(&self) -> bool {
        self.entries.iter().all(|e| e.colors.is_empty())
    }
}

/// One integral point of the hyperspace: a vertical point over a labeled
/// point of the curve when l >= 1, or a horizontal point when l = 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HyperPoint {
    pub label: PointRef,
    pub nu: LatticeVec,
    pub ell: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointRef {
    Generic,
    At(String),
}

impl HyperPoint {
    pub fn generic(nu: LatticeVec) -> HyperPoint {
        HyperPoint { label: PointRef::Generic, nu, ell: 0 }
    }

    pub fn at(label: &str, nu: LatticeVec, ell: i64) -> Result<HyperPoint, DivError> {
        if ell <= 0 {
            return Err(DivError::Point(
                "a vertical hyperspace point needs a positive order".into(),
            ));
        }
        Ok(HyperPoint { label: PointRef::At(label.to_string()), nu, ell })
    }
}

/// Outcome of the fan validation, with human-readable witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<String>,
    pub caveats: Vec<String>,
}

/// Checks properness of every divisor, the colored divisor conditions, and
/// the four fan conditions with witnesses for each violation.
pub fn validate_fan(fan: &ColoredDivisorialFan) -> ValidationReport {
    let mut violations = Vec::new();
    let mut caveats = Vec::new();

    for (i, entry) in fan.entries.iter().enumerate() {
        let report = entry.divisor.is_proper(fan.curve.genus());
        match report.verdict {
            Properness::Proper => {}
            Properness::ConditionallyProper => {
                caveats.push(format!("divisor {i}: {}", report.reasons.join("; ")));
            }
            Properness::NotProper => {
                violations.push(format!("divisor {i} not proper: {}", report.reasons.join("; ")));
            }
        }
        for &alpha in &entry.colors {
            let point = fan.group.color_point(alpha).expect("validated at construction");
            if point.iter().all(Zero::is_zero) {
                violations.push(format!("divisor {i}: color {alpha} maps to zero"));
            } else if !entry.divisor.tail().contains(&point) {
                violations.push(format!(
                    "divisor {i}: color {alpha} maps outside the tail cone"
                ));
            }
        }
    }

    for i in 0..fan.entries.len() {
        for j in i + 1..fan.entries.len() {
            check_pair(fan, i, j, &mut violations);
        }
    }

    ValidationReport { valid: violations.is_empty(), violations, caveats }
}

fn check_pair(fan: &ColoredDivisorialFan, i: usize, j: usize, violations: &mut Vec<String>) {
    let a = &fan.entries[i];
    let b = &fan.entries[j];
    let tail_meet = a.divisor.tail().intersect(b.divisor.tail());

    // Condition (ii) at the generic point: the tails meet in a common face.
    if !tail_meet.is_face_of(a.divisor.tail()) || !tail_meet.is_face_of(b.divisor.tail()) {
        violations.push(format!("divisors {i},{j}: tails do not meet in a common face"));
        return;
    }

    // Condition (ii) at special points of either divisor.
    let mut labels: BTreeSet<&str> = a.divisor.special_points().into_iter().collect();
    labels.extend(b.divisor.special_points());
    for label in labels {
        if !a.divisor.locus().contains(label) || !b.divisor.locus().contains(label) {
            continue;
        }
        let pa = a.divisor.coefficient(label);
        let pb = b.divisor.coefficient(label);
        if let Some(meet) = intersect_polyhedra(&pa, &pb) {
            let cay = meet.cayley_cone();
            if !cay.is_face_of(&pa.cayley_cone()) || !cay.is_face_of(&pb.cayley_cone()) {
                violations.push(format!(
                    "divisors {i},{j}: coefficients at \"{label}\" do not meet in a common face"
                ));
            }
        }
    }

    // Condition (i): the intersection is itself a member.
    let meet = a.divisor.intersect(&b.divisor);
    let meet_colors: BTreeSet<usize> = a.colors.intersection(&b.colors).copied().collect();
    let member = fan
        .entries
        .iter()
        .any(|e| e.divisor == meet && e.colors == meet_colors);
    if !member {
        violations.push(format!("divisors {i},{j}: their intersection is not in the fan"));
    }

    // Condition (iii): colors restrict through the coloration map.
    for (colors, other, which) in [(&a.colors, i, "first"), (&b.colors, j, "second")] {
        let _ = other;
        let restricted: BTreeSet<usize> = colors
            .iter()
            .copied()
            .filter(|&alpha| {
                let point = fan.group.color_point(alpha).expect("validated at construction");
                tail_meet.contains(&point)
            })
            .collect();
        if restricted != meet_colors {
            violations.push(format!(
                "divisors {i},{j}: color sets are incompatible on the common tail ({which} side)"
            ));
        }
    }

    // Condition (iv): both degrees cut the common tail in the same set.
    let tail_poly = TailedPolyhedron::from_cone(&tail_meet).expect("pointed tail");
    let cut = |d: &PolyhedralDivisor| {
        d.degree().and_then(|deg| intersect_polyhedra(&deg, &tail_poly))
    };
    if cut(&a.divisor) != cut(&b.divisor) {
        violations.push(format!(
            "divisors {i},{j}: degrees cut the common tail differently"
        ));
    }
}

/// Same divisors, all color sets emptied.
pub fn discolor(fan: &ColoredDivisorialFan) -> ColoredDivisorialFan {
    let entries = fan
        .entries
        .iter()
        .map(|e| FanEntry { divisor: e.divisor.clone(), colors: BTreeSet::new() })
        .collect();
    ColoredDivisorialFan {
        curve: fan.curve.clone(),
        lattice_rank: fan.lattice_rank,
        group: fan.group.clone(),
        entries,
    }
}

/// Replaces every projective-locus divisor by restrictions to a two-chart
/// affine cover, then closes the set under pairwise intersection so the fan
/// conditions keep holding verbatim.
pub fn affinize(fan: &ColoredDivisorialFan) -> Result<ColoredDivisorialFan, DivError> {
    if !fan.is_uncolored() {
        return Err(DivError::Schema("affinization requires an uncolored fan".into()));
    }
    let mut curve = fan.curve.clone();
    let mut fresh = 0usize;
    let mut fresh_label = |curve: &mut CurveData| {
        loop {
            let label = format!("aff{fresh}");
            fresh += 1;
            if !curve.has_point(&label) {
                curve.add_point(&label).expect("fresh label");
                return label;
            }
        }
    };

    let mut divisors: Vec<PolyhedralDivisor> = Vec::new();
    for entry in &fan.entries {
        let d = &entry.divisor;
        if !d.locus().is_projective() {
            divisors.push(d.clone());
            continue;
        }
        let special: BTreeSet<String> =
            d.special_points().into_iter().map(String::from).collect();
        let basepoint = curve
            .points()
            .iter()
            .find(|p| !special.contains(*p))
            .cloned()
            .unwrap_or_else(|| fresh_label(&mut curve));
        // One chart keeps every special coefficient, the other none.
        divisors.push(d.restrict(&[basepoint.clone()].into()));
        let far_chart = if special.is_empty() {
            let other = curve
                .points()
                .iter()
                .find(|p| **p != basepoint)
                .cloned()
                .unwrap_or_else(|| fresh_label(&mut curve));
            d.restrict(&[other].into())
        } else {
            d.restrict(&special)
        };
        if !divisors.contains(&far_chart) {
            divisors.push(far_chart);
        }
    }

    // Intersection closure; affine restrictions only shrink, so this stops.
    loop {
        let mut added = false;
        for i in 0..divisors.len() {
            for j in i + 1..divisors.len() {
                let meet = divisors[i].intersect(&divisors[j]);
                if !divisors.contains(&meet) {
                    divisors.push(meet);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    let entries = divisors
        .into_iter()
        .map(|divisor| FanEntry { divisor, colors: BTreeSet::new() })
        .collect();
    ColoredDivisorialFan::new(curve, fan.lattice_rank, fan.group.clone(), entries)
}

/// Integral hyperspace points of the support over the complement of the
/// removed set, with all coordinates bounded by `bound`.
pub fn support_points(
    fan: &ColoredDivisorialFan,
    removed: &BTreeSet<String>,
    bound: i64,
) -> Result<Vec<HyperPoint>, DivError> {
    for label in removed {
        if !fan.curve.has_point(label) {
            return Err(DivError::Point(format!("unknown point \"{label}\"")));
        }
    }
    for label in fan.special_points() {
        if !removed.contains(&label) {
            return Err(DivError::Point(format!(
                "special point \"{label}\" must lie outside the open subset"
            )));
        }
    }
    let mut out: BTreeSet<HyperPoint> = BTreeSet::new();
    let n = fan.lattice_rank;
    for nu in box_points(n, bound) {
        if fan.entries.iter().any(|e| e.divisor.tail().contains(&nu)) {
            out.insert(HyperPoint::generic(nu.clone()));
        }
        for label in removed {
            for entry in &fan.entries {
                if !entry.divisor.locus().contains(label) {
                    continue;
                }
                let cay = entry.divisor.coefficient(label).cayley_cone();
                for ell in 1..=bound {
                    let mut lifted = nu.clone();
                    lifted.push(int(ell));
                    if cay.contains(&lifted) {
                        out.insert(HyperPoint::at(label, nu.clone(), ell).expect("positive order"));
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All integer vectors with coordinates in [-bound, bound].
fn box_points(rank: usize, bound: i64) -> Vec<LatticeVec> {
    let mut out = Vec::new();
    let mut current = vec![-bound; rank];
    loop {
        out.push(current.iter().map(|&c| Int::from(c)).collect());
        let mut k = 0;
        loop {
            if k == rank {
                return out;
            }
            current[k] += 1;
            if current[k] <= bound {
                break;
            }
            current[k] = -bound;
            k += 1;
        }
        if rank == 0 {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::Locus;
    use exact_math::{rat, veci, Rat};
    use std::collections::BTreeMap;

    fn quadrant() -> Cone {
        Cone::from_generators(2, &[veci(&[1, 0]), veci(&[0, 1])])
    }

    fn shifted(tail: &Cone, v: &[Rat]) -> TailedPolyhedron {
        TailedPolyhedron::new(tail.ambient_rank(), &[v.to_vec()], tail).unwrap()
    }

    fn entry(divisor: PolyhedralDivisor) -> FanEntry {
        FanEntry { divisor, colors: BTreeSet::new() }
    }

    fn affine_divisor(tail: &Cone, removed: &[&str]) -> PolyhedralDivisor {
        PolyhedralDivisor::new(
            tail.clone(),
            Locus::AffineRemoved(removed.iter().map(|s| s.to_string()).collect()),
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn unknown_labels_are_rejected_at_construction() {
        let curve = CurveData::projective_line(&["0"]);
        let d = affine_divisor(&quadrant(), &["inf"]);
        let fan = ColoredDivisorialFan::new(curve, 2, GroupData::Torus, vec![entry(d)]);
        assert!(matches!(fan, Err(DivError::Point(_))));
    }

    #[test]
    fn singleton_affine_fan_validates() {
        let curve = CurveData::projective_line(&["0", "inf"]);
        let d = affine_divisor(&quadrant(), &["inf"]);
        let fan = ColoredDivisorialFan::new(curve, 2, GroupData::Torus, vec![entry(d)]).unwrap();
        let report = validate_fan(&fan);
        assert!(report.valid, "{:?}", report.violations);
        assert!(report.caveats.is_empty());
    }

    #[test]
    fn overlapping_non_face_coefficients_are_reported() {
        let tail = Cone::from_generators(2, &[veci(&[1, 0])]);
        let curve = CurveData::projective_line(&["0", "inf"]);
        let seg = |a: i64| {
            TailedPolyhedron::new(
                2,
                &[vec![rat(a, 1), rat(0, 1)], vec![rat(a + 2, 1), rat(0, 1)]],
                &tail,
            )
            .unwrap()
        };
        // Overlap [1,2] x {0} is not a face of either segment-plus-ray.
        let d1 = PolyhedralDivisor::new(
            tail.clone(),
            Locus::AffineRemoved(["inf".to_string()].into()),
            [("0".to_string(), seg(-1))].into(),
        )
        .unwrap();
        let d2 = PolyhedralDivisor::new(
            tail.clone(),
            Locus::AffineRemoved(["inf".to_string()].into()),
            [("0".to_string(), seg(1))].into(),
        )
        .unwrap();
        let fan =
            ColoredDivisorialFan::new(curve, 2, GroupData::Torus, vec![entry(d1), entry(d2)])
                .unwrap();
        let report = validate_fan(&fan);
        assert!(!report.valid);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("coefficients at \"0\"")));
    }

    #[test]
    fn discoloration_preserves_divisors_and_validates() {
        let curve = CurveData::projective_line(&["0", "inf"]);
        let d = affine_divisor(&quadrant(), &["inf"]);
        let fan = ColoredDivisorialFan::new(curve, 2, GroupData::Torus, vec![entry(d)]).unwrap();
        let dis = discolor(&fan);
        assert_eq!(dis.entries()[0].divisor, fan.entries()[0].divisor);
        assert!(validate_fan(&dis).valid);
    }

    #[test]
    fn affinize_splits_projective_divisors_and_validates() {
        let tail = quadrant();
        let curve = CurveData::projective_line(&["0", "1", "inf"]);
        let mut coeffs = BTreeMap::new();
        coeffs.insert("0".to_string(), shifted(&tail, &[rat(1, 2), rat(0, 1)]));
        let d = PolyhedralDivisor::new(tail, Locus::Projective, coeffs).unwrap();
        let fan = ColoredDivisorialFan::new(curve, 2, GroupData::Torus, vec![entry(d)]).unwrap();
        assert!(validate_fan(&fan).valid);

        let affine = affinize(&fan).unwrap();
        assert!(affine.entries().iter().all(|e| !e.divisor.locus().is_projective()));
        assert!(validate_fan(&affine).valid, "{:?}", validate_fan(&affine).violations);
        // Special points and their coefficients survive.
        assert_eq!(affine.special_points(), fan.special_points());
        let kept: Vec<_> = affine
            .entries()
            .iter()
            .filter(|e| e.divisor.locus().contains("0"))
            .map(|e| e.divisor.coefficient("0"))
            .collect();
        assert!(kept.contains(&fan.entries()[0].divisor.coefficient("0")));
    }

    #[test]
    fn affinize_handles_divisors_without_special_points() {
        let curve = CurveData::projective_line(&[]);
        let d = PolyhedralDivisor::new(quadrant(), Locus::Projective, BTreeMap::new()).unwrap();
        let fan = ColoredDivisorialFan::new(curve, 2, GroupData::Torus, vec![entry(d)]).unwrap();
        let affine = affinize(&fan).unwrap();
        assert!(affine.entries().iter().all(|e| !e.divisor.locus().is_projective()));
        assert!(validate_fan(&affine).valid);
        // Two synthetic basepoints were created.
        assert!(affine.curve().has_point("aff0"));
        assert!(affine.curve().has_point("aff1"));
    }

    #[test]
    fn support_points_split_into_tail_and_cayley_parts() {
        let tail = Cone::from_generators(2, &[veci(&[1, 0])]);
        let curve = CurveData::projective_line(&["0", "inf"]);
        let mut coeffs = BTreeMap::new();
        coeffs.insert("0".to_string(), shifted(&tail, &[rat(0, 1), rat(1, 2)]));
        let d = PolyhedralDivisor::new(
            tail,
            Locus::AffineRemoved(["inf".to_string()].into()),
            coeffs,
        )
        .unwrap();
        let fan = ColoredDivisorialFan::new(curve, 2, GroupData::Torus, vec![entry(d)]).unwrap();

        let removed: BTreeSet<String> = ["0".to_string()].into();
        let pts = support_points(&fan, &removed, 2).unwrap();
        // Horizontal points come from the tail fan.
        assert!(pts.contains(&HyperPoint::generic(veci(&[1, 0]))));
        assert!(!pts.contains(&HyperPoint::generic(veci(&[0, 1]))));
        // Vertical points sit in the Cayley cone over "0": (0, 1/2) at
        // height 1 scales to the integral point (0, 1, 2).
        assert!(pts.contains(&HyperPoint::at("0", veci(&[0, 1]), 2).unwrap()));
        assert!(!pts.contains(&HyperPoint::at("0", veci(&[0, 1]), 1).unwrap()));
        // The l = 0 slice carries no label.
        assert!(pts.iter().all(|p| (p.ell == 0) == (p.label == PointRef::Generic)));
    }

    #[test]
    fn support_points_requires_special_points_removed() {
        let tail = quadrant();
        let curve = CurveData::projective_line(&["0", "inf"]);
        let mut coeffs = BTreeMap::new();
        coeffs.insert("0".to_string(), shifted(&tail, &[rat(1, 1), rat(1, 1)]));
        let d = PolyhedralDivisor::new(
            tail,
            Locus::AffineRemoved(["inf".to_string()].into()),
            coeffs,
        )
        .unwrap();
        let fan = ColoredDivisorialFan::new(curve, 2, GroupData::Torus, vec![entry(d)]).unwrap();
        assert!(support_points(&fan, &BTreeSet::new(), 1).is_err());
    }
}
