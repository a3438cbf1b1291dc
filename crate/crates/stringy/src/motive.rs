//! Motivic expressions with a symbolic curve-class slot.
//!
//! The stringy motivic volume lives in a localized Grothendieck ring; here it
//! is represented as `[Γ]·G + S` with `G`, `S` exact rational functions in
//! `t = 𝕃^(-1/m)` and `[Γ]` the class of a curve kept symbolic. Specializing
//! to Hodge-Deligne variables turns the expression into `S' + u·U + v·V` with
//! slots in `t' = (uv)^(1/m)`, since `[Γ] = uv - g·u - g·v + (1 - r)` for a
//! smooth projective genus-g curve with r points removed.

use exact_math::int;
use lattice_gen::{LatticeSeries, Limit, SeriesRole};

/// A motivic expression split into a symbolic curve-class slot, a scalar
/// slot, and linear slots for the Hodge variables u and v.
#[derive(Debug, Clone, PartialEq)]
pub struct MotiveExpr {
    gamma: LatticeSeries,
    scalar: LatticeSeries,
    u: LatticeSeries,
    v: LatticeSeries,
}

impl MotiveExpr {
    pub fn zero(role: SeriesRole, m: i64) -> MotiveExpr {
        let z = LatticeSeries::zero(role, m);
        MotiveExpr { gamma: z.clone(), scalar: z.clone(), u: z.clone(), v: z }
    }

    /// `[Γ]·gamma + scalar`, the shape of the motivic volume.
    pub fn with_gamma(gamma: LatticeSeries, scalar: LatticeSeries) -> MotiveExpr {
        assert_eq!(gamma.role(), scalar.role());
        assert_eq!(gamma.modulus(), scalar.modulus());
        let z = LatticeSeries::zero(gamma.role(), gamma.modulus());
        MotiveExpr { gamma, scalar, u: z.clone(), v: z }
    }

    pub fn from_scalar(scalar: LatticeSeries) -> MotiveExpr {
        let z = LatticeSeries::zero(scalar.role(), scalar.modulus());
        MotiveExpr { gamma: z.clone(), scalar, u: z.clone(), v: z }
    }

    pub fn gamma(&self) -> &LatticeSeries {
        &self.gamma
    }

    pub fn scalar(&self) -> &LatticeSeries {
        &self.scalar
    }

    pub fn u_part(&self) -> &LatticeSeries {
        &self.u
    }

    pub fn v_part(&self) -> &LatticeSeries {
        &self.v
    }

    pub fn add(&self, other: &MotiveExpr) -> MotiveExpr {
        MotiveExpr {
            gamma: &self.gamma + &other.gamma,
            scalar: &self.scalar + &other.scalar,
            u: &self.u + &other.u,
            v: &self.v + &other.v,
        }
    }

    /// Multiplies by a scalar series. This is the only product the ring needs:
    /// factors carrying u, v or [Γ] never multiply each other here.
    pub fn scale_series(&self, s: &LatticeSeries) -> MotiveExpr {
        MotiveExpr {
            gamma: &self.gamma * s,
            scalar: &self.scalar * s,
            u: &self.u * s,
            v: &self.v * s,
        }
    }

    /// Specializes `𝕃 ↦ uv` and substitutes the Hodge-Deligne class of the
    /// curve for `[Γ]`: a genus-g curve with `removed` points taken out has
    /// class `uv - g·u - g·v + (1 - removed)`.
    pub fn to_e_form(&self, genus: usize, removed: usize) -> MotiveExpr {
        assert!(self.u.is_zero() && self.v.is_zero(), "already specialized");
        let m = self.scalar.modulus();
        let gamma = uv_convert(&self.gamma);
        let scalar = uv_convert(&self.scalar);
        let g = int(genus as i64);
        let affine_part = LatticeSeries::new(
            [(m, int(1)), (0, int(1) - int(removed as i64))],
            vec![],
            SeriesRole::UvRoot,
            m,
        );
        MotiveExpr {
            scalar: &scalar + &(&gamma * &affine_part),
            u: gamma.scale(&-g.clone(), 0),
            v: gamma.scale(&-g, 0),
            gamma: LatticeSeries::zero(SeriesRole::UvRoot, m),
        }
    }

    /// The limit u = v = 1, defined once the curve class has been substituted.
    pub fn euler(&self) -> Limit {
        assert!(self.gamma.is_zero(), "substitute the curve class first");
        (&(&self.scalar + &self.u) + &self.v).limit_at_one()
    }
}

impl std::fmt::Display for MotiveExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.gamma.is_zero() {
            parts.push(format!("[C] * ({})", self.gamma));
        }
        if !self.scalar.is_zero() {
            parts.push(format!("{}", self.scalar));
        }
        if !self.u.is_zero() {
            parts.push(format!("u * ({})", self.u));
        }
        if !self.v.is_zero() {
            parts.push(format!("v * ({})", self.v));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join("  +  "))
    }
}

/// Rewrites a rational function of `t = 𝕃^(-1/m)` in `t' = (uv)^(1/m)` via
/// `t = t'^(-1)`: each factor `1/(1 - t^(-k))` equals `-t'^k/(1 - t'^k)`.
pub fn uv_convert(series: &LatticeSeries) -> LatticeSeries {
    assert_eq!(series.role(), SeriesRole::LInverse);
    let m = series.modulus();
    if series.is_zero() {
        return LatticeSeries::zero(SeriesRole::UvRoot, m);
    }
    let den = series.denominator().to_vec();
    let shift: i64 = den.iter().sum();
    let sign = if den.len() % 2 == 0 { int(1) } else { int(-1) };
    let numerator = series.numerator().into_iter().map(|(e, c)| (shift - e, c * &sign));
    LatticeSeries::new(numerator, den, SeriesRole::UvRoot, m)
}

/// `𝕃 - 1` as a Laurent polynomial in `t = 𝕃^(-1/m)`.
pub fn l_minus_one(m: i64) -> LatticeSeries {
    LatticeSeries::new([(-m, int(1)), (0, int(-1))], vec![], SeriesRole::LInverse, m)
}

/// Reinterprets a polynomial in `uv` as a Laurent polynomial in
/// `t = 𝕃^(-1/m)`, sending `(uv)^e` to `t^(-e·m)`.
pub fn uv_poly_to_l(series: &LatticeSeries, m: i64) -> LatticeSeries {
    assert_eq!(series.role(), SeriesRole::UvRoot);
    assert_eq!(series.modulus(), 1);
    assert!(series.is_polynomial());
    let numerator = series.numerator().into_iter().map(|(e, c)| (-e * m, c));
    LatticeSeries::new(numerator, vec![], SeriesRole::LInverse, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(num: &[(i64, i64)], den: &[i64], role: SeriesRole, m: i64) -> LatticeSeries {
        LatticeSeries::new(num.iter().map(|&(e, c)| (e, int(c))), den.to_vec(), role, m)
    }

    #[test]
    fn uv_conversion_flips_the_variable() {
        // (1 + 5t^5) / (1 - t^5)^2 with t = L^(-1) becomes
        // (t'^10 + 5t'^5) / (1 - t'^5)^2 with t' = uv.
        let s = series(&[(0, 1), (5, 5)], &[5, 5], SeriesRole::LInverse, 1);
        let expect = series(&[(5, 5), (10, 1)], &[5, 5], SeriesRole::UvRoot, 1);
        assert_eq!(uv_convert(&s), expect);
    }

    #[test]
    fn uv_conversion_of_polynomials_inverts_exponents() {
        let s = series(&[(-2, 1), (0, 1)], &[], SeriesRole::LInverse, 1);
        let expect = series(&[(0, 1), (2, 1)], &[], SeriesRole::UvRoot, 1);
        assert_eq!(uv_convert(&s), expect);
    }

    #[test]
    fn uv_conversion_respects_sums() {
        // 1/(1 - t) + t/(1 - t)^2, converted termwise, matches the converted sum.
        let a = series(&[(0, 1)], &[1], SeriesRole::LInverse, 1);
        let b = series(&[(1, 1)], &[1, 1], SeriesRole::LInverse, 1);
        assert_eq!(uv_convert(&(&a + &b)), &uv_convert(&a) + &uv_convert(&b));
    }

    #[test]
    fn l_minus_one_squares_to_a_torus_class() {
        let l1 = l_minus_one(2);
        let sq = &l1 * &l1;
        assert_eq!(sq, series(&[(-4, 1), (-2, -2), (0, 1)], &[], SeriesRole::LInverse, 2));
    }

    #[test]
    fn uv_polynomials_convert_to_l_polynomials() {
        // (uv - 1)^2 = 1 - 2uv + (uv)^2 maps to 1 - 2L + L^2 in t = L^(-1/3).
        let uv = series(&[(0, 1), (1, -2), (2, 1)], &[], SeriesRole::UvRoot, 1);
        let l = uv_poly_to_l(&uv, 3);
        assert_eq!(l, series(&[(-6, 1), (-3, -2), (0, 1)], &[], SeriesRole::LInverse, 3));
    }

    #[test]
    fn curve_substitution_fills_the_hodge_slots() {
        // [Γ]·1/(1 - t) over a genus-2 curve with one point removed.
        let gamma = series(&[(0, 1)], &[1], SeriesRole::LInverse, 1);
        let expr = MotiveExpr::with_gamma(gamma, LatticeSeries::zero(SeriesRole::LInverse, 1));
        let e = expr.to_e_form(2, 1);
        // Converted gamma slot: -t'/(1 - t').
        let conv = series(&[(1, -1)], &[1], SeriesRole::UvRoot, 1);
        assert_eq!(e.u_part(), &conv.scale(&int(-2), 0));
        assert_eq!(e.v_part(), &conv.scale(&int(-2), 0));
        // Scalar slot: (t' + 0)·conv since 1 - removed = 0.
        assert_eq!(e.scalar(), &(&conv * &series(&[(1, 1)], &[], SeriesRole::UvRoot, 1)));
        assert!(e.gamma().is_zero());
    }

    #[test]
    fn euler_takes_the_joint_limit() {
        // (1 - t'^2)/(1 - t') has limit 2; adding u- and v-slots of 1/(1 - t')
        // each with coefficient (1 - t') contributes 1 + 1.
        let scalar = series(&[(0, 1), (2, -1)], &[1], SeriesRole::UvRoot, 1);
        let slot = series(&[(0, 1), (1, -1)], &[1], SeriesRole::UvRoot, 1);
        let expr = MotiveExpr {
            gamma: LatticeSeries::zero(SeriesRole::UvRoot, 1),
            scalar,
            u: slot.clone(),
            v: slot,
        };
        assert_eq!(expr.euler(), Limit::Finite(Rat::from(int(4))));
    }

    #[test]
    fn display_skips_zero_slots() {
        let expr = MotiveExpr::from_scalar(series(&[(0, 3)], &[], SeriesRole::LInverse, 1));
        assert_eq!(format!("{expr}"), "3");
    }
}
