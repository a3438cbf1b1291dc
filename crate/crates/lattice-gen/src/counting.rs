//! Generating functions of lattice points in rational cones.
//!
//! A pointed simplicial cone has a half-open fundamental parallelotope whose
//! lattice points enumerate the full point-count series. Interior series are
//! assembled face by face over a triangulation: each cell contributes its
//! reflected parallelotope, and cells lying in the boundary are skipped, so
//! the resulting numerator is independent of the chosen triangulation.

use exact_math::{pair, Int, LatticeVec, Rat};
use num_traits::{Signed, Zero};
use polyhedra::{Cone, Fan};

use crate::chi::ChiPoly;
use crate::series::{LatticeSeries, SeriesRole};
use crate::LatticeError;

/// Half-open fundamental parallelotope of a simplicial cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelotope {
    /// Primitive ray generators spanning the parallelotope.
    pub rays: Vec<LatticeVec>,
    /// All lattice points `sum mu_i rays_i` with `0 <= mu_i < 1`, sorted.
    pub points: Vec<LatticeVec>,
}

/// Multivariate rational form `numerator / prod_rays (1 - chi^ray)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSeries {
    pub numerator: ChiPoly,
    pub rays: Vec<LatticeVec>,
}

/// Lattice points of the half-open fundamental parallelotope of `cone`.
pub fn parallelotope_points(cone: &Cone) -> Result<Parallelotope, LatticeError> {
    let mut points: Vec<LatticeVec> = cone
        .parallelotope_lattice_points()?
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    points.sort();
    Ok(Parallelotope { rays: cone.rays().to_vec(), points })
}

/// Rational form of the series counting all lattice points of `cone`.
pub fn count_series(cone: &Cone) -> Result<ConeSeries, LatticeError> {
    let parallelotope = parallelotope_points(cone)?;
    let mut numerator = ChiPoly::zero();
    for p in parallelotope.points {
        numerator.add_term(p, Int::from(1));
    }
    Ok(ConeSeries { numerator, rays: parallelotope.rays })
}

/// Numerator of the series counting relative-interior lattice points of
/// `cone`, computed from a triangulation with no new rays. The result does
/// not depend on the triangulation.
#[allow(non_snake_case)]
pub fn interior_series_Q(cone: &Cone, triangulation: &Fan) -> Result<ChiPoly, LatticeError> {
    let mut cone_rays = cone.rays().to_vec();
    cone_rays.sort();
    let tri_rays = triangulation.rays();
    if tri_rays != cone_rays {
        return Err(LatticeError::TriangulationRays);
    }
    let mut q = ChiPoly::zero();
    for cell in triangulation.all_faces() {
        if in_boundary(cone, &cell) {
            continue;
        }
        let mut reflected = ChiPoly::zero();
        for (p, mu) in cell.parallelotope_lattice_points()? {
            let mut point = p;
            for (i, coord) in mu.iter().enumerate() {
                if coord.is_zero() {
                    for (a, b) in point.iter_mut().zip(cell.rays()[i].iter()) {
                        *a += b;
                    }
                }
            }
            reflected.add_term(point, Int::from(1));
        }
        for ray in &cone_rays {
            if cell.rays().binary_search(ray).is_err() {
                reflected = reflected.mul_one_minus_chi(ray);
            }
        }
        q = &q + &reflected;
    }
    Ok(q)
}

/// Rational form of the relative-interior point series of `cone`.
pub fn interior_series(cone: &Cone, triangulation: &Fan) -> Result<ConeSeries, LatticeError> {
    Ok(ConeSeries {
        numerator: interior_series_Q(cone, triangulation)?,
        rays: cone.rays().to_vec(),
    })
}

/// True when every ray of `cell` lies in a proper face of `cone`.
fn in_boundary(cone: &Cone, cell: &Cone) -> bool {
    cone.facets().iter().any(|facet| {
        cell.rays().iter().all(|ray| exact_math::dot(facet, ray).is_zero())
    })
}

/// Applies `chi^v -> t^(-m omega(v))` with `t = L^(-1/m)` to a cone series.
/// Every denominator ray must satisfy `omega(ray) < 0` and `m omega` must be
/// integral on the lattice.
pub fn substitute_omega(
    series: &ConeSeries,
    omega: &[Rat],
    m: i64,
) -> Result<LatticeSeries, LatticeError> {
    let mut denominator = Vec::with_capacity(series.rays.len());
    for ray in &series.rays {
        let value = pair(ray, omega);
        if !value.is_negative() {
            return Err(LatticeError::Diverges);
        }
        denominator.push(scaled_exponent(&value, m)?);
    }
    let mut numerator = Vec::with_capacity(series.numerator.len());
    for (v, c) in series.numerator.terms() {
        numerator.push((scaled_exponent(&pair(v, omega), m)?, c.clone()));
    }
    Ok(LatticeSeries::new(numerator, denominator, SeriesRole::LInverse, m))
}

/// Exponent `-m omega(v)` as an integer, or an error if it is not integral.
fn scaled_exponent(value: &Rat, m: i64) -> Result<i64, LatticeError> {
    let scaled = -(value * Rat::from(Int::from(m)));
    if !scaled.is_integer() {
        return Err(LatticeError::NonIntegral);
    }
    i64::try_from(scaled.to_integer()).map_err(|_| LatticeError::NonIntegral)
}

/// Stanley-Reisner data `(P, eta)` of a cone: the substituted interior
/// numerator is `P(t) t^(m eta)` with `P(0) != 0`, so `L^(-eta) P` recovers
/// the substituted form of `Q(cone)`.
pub fn stanley_reisner(
    cone: &Cone,
    omega: &[Rat],
    m: i64,
) -> Result<(LatticeSeries, Rat), LatticeError> {
    for ray in cone.rays() {
        if !pair(ray, omega).is_negative() {
            return Err(LatticeError::Diverges);
        }
    }
    let triangulation =
        Fan::new_unchecked(cone.ambient_rank(), vec![cone.clone()]).triangulate_no_new_rays();
    let q = interior_series_Q(cone, &triangulation)?;
    let mut terms = Vec::with_capacity(q.len());
    for (v, c) in q.terms() {
        terms.push((scaled_exponent(&pair(v, omega), m)?, c.clone()));
    }
    let valuation = terms.iter().map(|&(e, _)| e).min().unwrap_or(0);
    let shifted = terms.into_iter().map(|(e, c)| (e - valuation, c));
    let p = LatticeSeries::new(shifted, vec![], SeriesRole::LInverse, m);
    Ok((p, Rat::new(Int::from(valuation), Int::from(m))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Limit;
    use exact_math::{int, rat, veci, vecr};

    fn cone(ambient: usize, rays: &[&[i64]]) -> Cone {
        let gens: Vec<LatticeVec> = rays.iter().map(|r| veci(r)).collect();
        Cone::from_generators(ambient, &gens)
    }

    fn points(list: &[&[i64]]) -> Vec<LatticeVec> {
        list.iter().map(|p| veci(p)).collect()
    }

    #[test]
    fn unimodular_parallelotope_is_the_origin() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        let p = parallelotope_points(&c).unwrap();
        assert_eq!(p.points, points(&[&[0, 0]]));
    }

    #[test]
    fn plane_cone_parallelotope_lists_six_points() {
        let c = cone(3, &[&[1, 0, 0], &[1, 6, 0]]);
        let p = parallelotope_points(&c).unwrap();
        assert_eq!(
            p.points,
            points(&[
                &[0, 0, 0],
                &[1, 1, 0],
                &[1, 2, 0],
                &[1, 3, 0],
                &[1, 4, 0],
                &[1, 5, 0]
            ])
        );
    }

    #[test]
    fn steep_cayley_parallelotope_has_eighteen_points() {
        let c = cone(3, &[&[1, 0, 0], &[1, 6, 0], &[-1, 0, 3]]);
        let p = parallelotope_points(&c).unwrap();
        assert_eq!(
            p.points,
            points(&[
                &[0, 0, 0],
                &[0, 0, 1],
                &[0, 0, 2],
                &[0, 1, 1],
                &[0, 1, 2],
                &[0, 2, 1],
                &[0, 2, 2],
                &[0, 3, 2],
                &[0, 4, 2],
                &[1, 1, 0],
                &[1, 2, 0],
                &[1, 3, 0],
                &[1, 3, 1],
                &[1, 4, 0],
                &[1, 4, 1],
                &[1, 5, 0],
                &[1, 5, 1],
                &[1, 5, 2]
            ])
        );
    }

    #[test]
    fn parallelotope_rejects_non_simplicial_cones() {
        let c = cone(3, &[&[1, 0, 0], &[1, 6, 0], &[1, 0, 1], &[1, 1, 1]]);
        let err = parallelotope_points(&c).unwrap_err();
        assert_eq!(err.to_string(), "cone is not simplicial");
    }

    #[test]
    fn count_series_of_a_ray_is_geometric() {
        let c = cone(1, &[&[1]]);
        let s = count_series(&c).unwrap();
        assert_eq!(s.numerator, ChiPoly::one(1));
        assert_eq!(s.rays, points(&[&[1]]));
    }

    #[test]
    fn interior_numerator_of_a_ray_is_its_generator() {
        let c = cone(1, &[&[1]]);
        let tri = Fan::new_unchecked(1, vec![c.clone()]);
        let q = interior_series_Q(&c, &tri).unwrap();
        assert_eq!(q, ChiPoly::monomial(veci(&[1])));
    }

    #[test]
    fn interior_numerator_of_the_quadrant_is_the_deep_point() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        let tri = Fan::new_unchecked(2, vec![c.clone()]);
        let q = interior_series_Q(&c, &tri).unwrap();
        assert_eq!(q, ChiPoly::monomial(veci(&[1, 1])));
    }

    #[test]
    fn interior_series_requires_matching_rays() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        let tri = Fan::new_unchecked(2, vec![cone(2, &[&[1, 0], &[1, 1]])]);
        let err = interior_series_Q(&c, &tri).unwrap_err();
        assert_eq!(err.to_string(), "triangulation rays do not match cone rays");
    }

    #[test]
    fn substitution_reproduces_the_tail_series() {
        let c = cone(2, &[&[1, 0], &[1, 6]]);
        let s = count_series(&c).unwrap();
        let omega = vecr(&[-5, 0]);
        let result = substitute_omega(&s, &omega, 1).unwrap();
        let expected =
            LatticeSeries::new([(0, int(1)), (5, int(5))], vec![5, 5], SeriesRole::LInverse, 1);
        assert_eq!(result, expected);
        assert_eq!(result.to_string(), "(1 + 5 t^5) / (1 - t^5)^2");
    }

    #[test]
    fn substitution_rejects_nonnegative_rays() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        let s = count_series(&c).unwrap();
        let err = substitute_omega(&s, &vecr(&[-1, 0]), 1).unwrap_err();
        assert_eq!(err.to_string(), "substitution diverges");
    }

    #[test]
    fn substitution_requires_integral_scaling() {
        let c = cone(1, &[&[1]]);
        let s = count_series(&c).unwrap();
        let omega = vec![rat(-1, 3)];
        assert!(substitute_omega(&s, &omega, 3).is_ok());
        assert!(matches!(
            substitute_omega(&s, &omega, 2),
            Err(LatticeError::NonIntegral)
        ));
    }

    #[test]
    fn stanley_reisner_of_a_ray_is_trivial() {
        let c = cone(1, &[&[1]]);
        let (p, eta) = stanley_reisner(&c, &vecr(&[-1]), 1).unwrap();
        assert_eq!(p.numerator(), vec![(0, int(1))]);
        assert_eq!(eta, rat(1, 1));
    }

    #[test]
    fn stanley_reisner_reconstructs_the_interior_numerator() {
        let c = cone(2, &[&[1, 0], &[1, 6]]);
        let omega = vecr(&[-5, 0]);
        let (p, eta) = stanley_reisner(&c, &omega, 1).unwrap();
        assert_eq!(p.numerator(), vec![(0, int(5)), (5, int(1))]);
        assert_eq!(eta, rat(5, 1));
        let tri = Fan::new_unchecked(2, vec![c.clone()]).triangulate_no_new_rays();
        let q = interior_series(&c, &tri).unwrap();
        let substituted = substitute_omega(
            &ConeSeries { numerator: q.numerator, rays: vec![] },
            &omega,
            1,
        )
        .unwrap();
        assert_eq!(p.scale(&int(1), 5), substituted);
    }

    #[test]
    fn stanley_reisner_is_stable_under_modulus_refinement() {
        let c = cone(2, &[&[1, 0], &[1, 6]]);
        let omega = vecr(&[-5, 0]);
        let (p1, eta1) = stanley_reisner(&c, &omega, 1).unwrap();
        let (p2, eta2) = stanley_reisner(&c, &omega, 2).unwrap();
        assert_eq!(eta1, eta2);
        assert_eq!(p1.with_modulus(2), p2);
    }

    #[test]
    fn interior_of_the_zero_cone_is_one() {
        let c = Cone::zero(2);
        let tri = Fan::new_unchecked(2, vec![c.clone()]);
        assert_eq!(interior_series_Q(&c, &tri).unwrap(), ChiPoly::one(2));
        let (p, eta) = stanley_reisner(&c, &vecr(&[-1, -1]), 1).unwrap();
        assert_eq!(p.numerator(), vec![(0, int(1))]);
        assert_eq!(eta, rat(0, 1));
    }

    #[test]
    fn interior_limit_counts_nothing_at_one() {
        let c = cone(2, &[&[1, 0], &[1, 2]]);
        let tri = Fan::new_unchecked(2, vec![c.clone()]);
        let s = interior_series(&c, &tri).unwrap();
        let sub = substitute_omega(&s, &vecr(&[-1, 0]), 1).unwrap();
        assert_eq!(sub.limit_at_one(), Limit::Pole);
    }
}
