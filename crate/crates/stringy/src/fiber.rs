//! Motivic volume of a single arc class.
//!
//! Over a smooth chart the arcs tracked by one hyperspace point (ν, ℓ) form
//! a cylinder whose class splits off 𝕃^(-Σ coords), where the coordinates
//! express ν in the ray basis of the smooth cone containing it.

use divfan::{ColoredDivisorialFan, HyperPoint, PointRef};
use exact_math::{int, solve_rational_linear, Int, Rat, RatVec};
use lattice_gen::{LatticeSeries, SeriesRole};
use num_traits::{Signed, ToPrimitive};
use polyhedra::Cone;

use crate::motive::{l_minus_one, uv_poly_to_l, MotiveExpr};
use crate::volume::group_class;
use crate::StringyError;

/// Coordinates of a point in the ray basis of a smooth cone.
fn smooth_coordinates(cone: &Cone, point: &[Int]) -> Result<Vec<i64>, StringyError> {
    if !cone.is_smooth() {
        let detail = match cone.multiplicity() {
            Ok(m) => format!("a containing cone has multiplicity {m}"),
            Err(_) => "a containing cone is not simplicial".to_string(),
        };
        return Err(StringyError::NonSmoothCone { detail });
    }
    let rays = cone.rays();
    let a: Vec<RatVec> = (0..cone.ambient_rank())
        .map(|i| rays.iter().map(|r| Rat::from(r[i].clone())).collect())
        .collect();
    let b: RatVec = point.iter().map(|x| Rat::from(x.clone())).collect();
    let (x, _) = solve_rational_linear(&a, &b)
        .ok_or_else(|| StringyError::Internal("point not in the span of the cone".into()))?;
    let mut coords = Vec::new();
    for c in &x {
        if !c.is_integer() || c.is_negative() {
            return Err(StringyError::Internal("point outside the cone".into()));
        }
        coords.push(c.to_integer().to_i64().expect("small coordinate"));
    }
    Ok(coords)
}

/// The class of the arc family attached to one hyperspace point.
///
/// Generic points contribute `[C]·[G/H]·𝕃^(-Σ coords)`, vertical points
/// `[G/H]·(𝕃 - 1)·𝕃^(-Σ coords)`. All cones of the fan must be smooth at
/// the point; the fan is expected to be uncolored with affine loci.
pub fn fiber_volume(
    fan: &ColoredDivisorialFan,
    point: &HyperPoint,
) -> Result<MotiveExpr, StringyError> {
    if !fan.is_uncolored() {
        return Err(StringyError::Input("fiber volumes need an uncolored fan".into()));
    }
    let gh = uv_poly_to_l(&group_class(fan)?, 1);

    match &point.label {
        PointRef::Generic => {
            let tail = fan.tail_fan().map_err(|e| StringyError::Internal(e.to_string()))?;
            let cone = tail
                .find_containing(&point.nu)
                .ok_or_else(|| StringyError::Input("point outside the tail fan".into()))?;
            let coords = smooth_coordinates(&cone, &point.nu)?;
            let e: i64 = coords.iter().sum();
            let gamma = gh.scale(&int(1), e);
            Ok(MotiveExpr::with_gamma(gamma, LatticeSeries::zero(SeriesRole::LInverse, 1)))
        }
        PointRef::At(label) => {
            let mut cayley = point.nu.clone();
            cayley.push(int(point.ell));
            let entry = fan
                .entries()
                .iter()
                .find(|e| {
                    e.divisor.locus().contains(label)
                        && e.divisor.coefficient(label).cayley_cone().contains(&cayley)
                })
                .ok_or_else(|| {
                    StringyError::Input(format!("point outside every Cayley cone over {label}"))
                })?;
            let big = entry.divisor.coefficient(label).cayley_cone();
            let coords = smooth_coordinates(&big, &cayley)?;
            let e: i64 = coords.iter().sum();
            let scalar = &gh.scale(&int(1), e) * &l_minus_one(1);
            Ok(MotiveExpr::from_scalar(scalar))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use divfan::fan_from_json;
    use exact_math::veci;

    const ORTHANT: &str = r#"{
        "lattice_rank": 2,
        "curve": {"genus": 0, "points": ["0", "inf"]},
        "group": {"kind": "torus"},
        "divisors": [{
            "tail": [[1, 0], [0, 1]],
            "locus": {"affine_removed": ["inf"]},
            "coefficients": {"0": {"vertices": [["0", "0"]]}},
            "colors": []
        }]
    }"#;

    #[test]
    fn generic_points_split_off_the_curve_class() {
        let fan = fan_from_json(ORTHANT).unwrap();
        let point = HyperPoint::generic(veci(&[1, 1]));
        let vol = fiber_volume(&fan, &point).unwrap();
        // [C]·(L - 1)^2·L^(-2).
        let expect = l_minus_one(1).scale(&int(1), 2);
        assert_eq!(vol.gamma(), &(&expect * &l_minus_one(1).scale(&int(1), 0)));
        assert!(vol.scalar().is_zero());
    }

    #[test]
    fn vertical_points_weight_by_contact_order() {
        let fan = fan_from_json(ORTHANT).unwrap();
        let point = HyperPoint::at("0", veci(&[1, 0]), 2).unwrap();
        let vol = fiber_volume(&fan, &point).unwrap();
        // Coordinates of (1, 0, 2) in the smooth Cayley cone rays: the cone
        // over 0 is spanned by (1,0,0), (0,1,0), (0,0,1).
        let expect = &l_minus_one(1).scale(&int(1), 3) * &l_minus_one(1).scale(&int(1), 0);
        assert_eq!(vol.scalar(), &(&expect * &l_minus_one(1)));
        assert!(vol.gamma().is_zero());
    }

    #[test]
    fn singular_cones_are_rejected() {
        let text = r#"{
            "lattice_rank": 2,
            "curve": {"genus": 0, "points": ["inf"]},
            "group": {"kind": "torus"},
            "divisors": [{
                "tail": [[1, 0], [1, 2]],
                "locus": {"affine_removed": ["inf"]},
                "coefficients": {},
                "colors": []
            }]
        }"#;
        let fan = fan_from_json(text).unwrap();
        let point = HyperPoint::generic(veci(&[1, 1]));
        let err = fiber_volume(&fan, &point).unwrap_err();
        assert!(matches!(err, StringyError::NonSmoothCone { .. }));
    }
}
