//! One-variable rational forms `N(t) / prod_i (1 - t^{k_i})`.
//!
//! The numerator is an integer Laurent polynomial in `t` and the denominator
//! is kept as a multiset of positive exponents `{k_i}`, never expanded. The
//! normal form cancels factors `(1 - t^k)` only through exact polynomial
//! division, and equality is decided by cross-multiplication, so two series
//! reduced along different routes still compare equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use exact_math::{fmt_rat, Int, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Meaning of the formal variable `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesRole {
    /// `t` stands for `L^(-1/m)` where `L` is the Lefschetz class.
    LInverse,
    /// `t` stands for `(uv)^(1/m)` in Hodge-Deligne variables.
    UvRoot,
}

/// Value of a rational form at `t = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(Rat),
    Pole,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(r) => write!(f, "{}", fmt_rat(r)),
            Limit::Pole => write!(f, "pole"),
        }
    }
}

/// Rational form `N(t) / prod_i (1 - t^{k_i})` with integer Laurent numerator.
#[derive(Debug, Clone)]
pub struct LatticeSeries {
    numerator: BTreeMap<i64, Int>,
    denominator: Vec<i64>,
    role: SeriesRole,
    m: i64,
}

impl LatticeSeries {
    /// Builds a series from numerator terms `(exponent, coefficient)` and
    /// denominator exponents, then reduces to normal form.
    pub fn new(
        numerator: impl IntoIterator<Item = (i64, Int)>,
        denominator: Vec<i64>,
        role: SeriesRole,
        m: i64,
    ) -> LatticeSeries {
        assert!(m >= 1, "modulus must be positive");
        assert!(denominator.iter().all(|&k| k > 0), "denominator exponents must be positive");
        let mut terms: BTreeMap<i64, Int> = BTreeMap::new();
        for (e, c) in numerator {
            if c.is_zero() {
                continue;
            }
            let entry = terms.entry(e).or_insert_with(Int::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        let mut series = LatticeSeries { numerator: terms, denominator, role, m };
        series.normalize();
        series
    }

    /// The zero series.
    pub fn zero(role: SeriesRole, m: i64) -> LatticeSeries {
        LatticeSeries::new([], vec![], role, m)
    }

    /// The constant series with the given integer value.
    pub fn constant(c: Int, role: SeriesRole, m: i64) -> LatticeSeries {
        LatticeSeries::new([(0, c)], vec![], role, m)
    }

    /// Single term `c * t^e`.
    pub fn monomial(c: Int, e: i64, role: SeriesRole, m: i64) -> LatticeSeries {
        LatticeSeries::new([(e, c)], vec![], role, m)
    }

    /// Numerator terms in ascending exponent order.
    pub fn numerator(&self) -> Vec<(i64, Int)> {
        self.numerator.iter().map(|(&e, c)| (e, c.clone())).collect()
    }

    /// Denominator exponent multiset, sorted.
    pub fn denominator(&self) -> &[i64] {
        &self.denominator
    }

    pub fn role(&self) -> SeriesRole {
        self.role
    }

    pub fn modulus(&self) -> i64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// True when the denominator multiset is empty.
    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    /// Smallest numerator exponent, if any.
    pub fn valuation(&self) -> Option<i64> {
        self.numerator.keys().next().copied()
    }

    /// Largest numerator exponent, if any.
    pub fn degree(&self) -> Option<i64> {
        self.numerator.keys().next_back().copied()
    }

    /// Reinterprets the series over a coarser root `t' = t^(m'/m)`;
    /// `new_m` must be a multiple of the current modulus.
    pub fn with_modulus(&self, new_m: i64) -> LatticeSeries {
        assert!(new_m % self.m == 0, "modulus must refine the current one");
        let f = new_m / self.m;
        LatticeSeries::new(
            self.numerator.iter().map(|(&e, c)| (e * f, c.clone())),
            self.denominator.iter().map(|&k| k * f).collect(),
            self.role,
            new_m,
        )
    }

    /// Multiplies the numerator by `c * t^e` without touching the denominator.
    pub fn scale(&self, c: &Int, e: i64) -> LatticeSeries {
        LatticeSeries::new(
            self.numerator.iter().map(|(&d, a)| (d + e, a * c)),
            self.denominator.clone(),
            self.role,
            self.m,
        )
    }

    fn normalize(&mut self) {
        if self.numerator.is_empty() {
            self.denominator.clear();
            return;
        }
        self.denominator.sort_unstable();
        loop {
            let mut cancelled = false;
            for i in 0..self.denominator.len() {
                if let Some(q) = divide_exact(&self.numerator, self.denominator[i]) {
                    self.numerator = q;
                    self.denominator.remove(i);
                    cancelled = true;
                    break;
                }
            }
            if !cancelled || self.numerator.is_empty() {
                break;
            }
        }
        if self.numerator.is_empty() {
            self.denominator.clear();
        }
    }

    /// Limit of the series at `t = 1` after exact cancellation of `(1 - t)` powers.
    pub fn limit_at_one(&self) -> Limit {
        if self.is_zero() {
            return Limit::Finite(Rat::zero());
        }
        let mut reduced = self.numerator.clone();
        let mut order = 0usize;
        while reduced.values().sum::<Int>().is_zero() {
            reduced = divide_exact(&reduced, 1).expect("vanishing at t = 1 forces divisibility");
            order += 1;
            if reduced.is_empty() {
                return Limit::Finite(Rat::zero());
            }
        }
        let d = self.denominator.len();
        if order < d {
            return Limit::Pole;
        }
        if order > d {
            return Limit::Finite(Rat::zero());
        }
        let value: Int = reduced.values().sum();
        let scale: Int = self.denominator.iter().map(|&k| Int::from(k)).product();
        Limit::Finite(Rat::new(value, scale))
    }

    /// Coefficients of the power-series expansion for all exponents `<= bound`.
    /// Requires every numerator exponent to be finite below, which always holds.
    pub fn coefficients_up_to(&self, bound: i64) -> BTreeMap<i64, Int> {
        let mut dense: BTreeMap<i64, Int> = self
            .numerator
            .iter()
            .filter(|(&e, _)| e <= bound)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        let min = match self.numerator.keys().next() {
            Some(&e) => e,
            None => return dense,
        };
        for &k in &self.denominator {
            let mut e = min;
            while e <= bound {
                let prev = dense.get(&(e - k)).cloned();
                if let Some(p) = prev {
                    let entry = dense.entry(e).or_insert_with(Int::zero);
                    *entry += p;
                    if entry.is_zero() {
                        dense.remove(&e);
                    }
                }
                e += 1;
            }
        }
        dense
    }

    /// Renders the series as `{"numerator": [[coeff, exp], ...], "denominator": [k, ...], "m": m}`.
    pub fn to_json(&self) -> serde_json::Value {
        let numerator: Vec<serde_json::Value> = self
            .numerator
            .iter()
            .map(|(&e, c)| {
                let coeff = match i64::try_from(c.clone()) {
                    Ok(n) => serde_json::Value::from(n),
                    Err(_) => serde_json::Value::from(c.to_string()),
                };
                serde_json::Value::Array(vec![coeff, serde_json::Value::from(e)])
            })
            .collect();
        serde_json::json!({
            "numerator": numerator,
            "denominator": self.denominator,
            "m": self.m,
        })
    }

    fn compatible(&self, other: &LatticeSeries) -> (LatticeSeries, LatticeSeries) {
        assert!(self.role == other.role, "series roles differ");
        let m = self.m.lcm(&other.m);
        (self.with_modulus(m), other.with_modulus(m))
    }
}

/// Exact quotient of a Laurent polynomial by `(1 - t^k)`, if it divides.
fn divide_exact(poly: &BTreeMap<i64, Int>, k: i64) -> Option<BTreeMap<i64, Int>> {
    if poly.is_empty() {
        return Some(BTreeMap::new());
    }
    let min = *poly.keys().next().unwrap();
    let max = *poly.keys().next_back().unwrap();
    let width = (max - min) as usize;
    let k = k as usize;
    let mut q: Vec<Int> = vec![Int::zero(); width + 1];
    for i in 0..=width {
        let c = poly.get(&(min + i as i64)).cloned().unwrap_or_else(Int::zero);
        q[i] = if i >= k { c + q[i - k].clone() } else { c };
    }
    if q.iter().rev().take(k.min(width + 1)).any(|c| !c.is_zero()) {
        return None;
    }
    let mut out = BTreeMap::new();
    for (i, c) in q.into_iter().enumerate() {
        if i + k <= width && !c.is_zero() {
            out.insert(min + i as i64, c);
        }
    }
    Some(out)
}

/// Expands `poly * prod (1 - t^k)` over the given exponents.
fn expand_against(poly: &BTreeMap<i64, Int>, dens: &[i64]) -> BTreeMap<i64, Int> {
    let mut out = poly.clone();
    for &k in dens {
        let mut next = out.clone();
        for (&e, c) in &out {
            let entry = next.entry(e + k).or_insert_with(Int::zero);
            *entry -= c;
            if entry.is_zero() {
                next.remove(&(e + k));
            }
        }
        out = next;
    }
    out
}

impl PartialEq for LatticeSeries {
    fn eq(&self, other: &LatticeSeries) -> bool {
        if self.role != other.role {
            return false;
        }
        let (a, b) = self.compatible(other);
        expand_against(&a.numerator, &b.denominator) == expand_against(&b.numerator, &a.denominator)
    }
}

impl Eq for LatticeSeries {}

impl Add for &LatticeSeries {
    type Output = LatticeSeries;

    fn add(self, rhs: &LatticeSeries) -> LatticeSeries {
        let (a, b) = self.compatible(rhs);
        let mut den: Vec<(i64, usize)> = Vec::new();
        for &k in a.denominator.iter().chain(&b.denominator) {
            match den.iter_mut().find(|(j, _)| *j == k) {
                Some(_) => {}
                None => {
                    let in_a = a.denominator.iter().filter(|&&j| j == k).count();
                    let in_b = b.denominator.iter().filter(|&&j| j == k).count();
                    den.push((k, in_a.max(in_b)));
                }
            }
        }
        let union: Vec<i64> =
            den.iter().flat_map(|&(k, n)| std::iter::repeat(k).take(n)).collect();
        let missing = |own: &[i64]| {
            let mut extra = Vec::new();
            for &(k, n) in &den {
                let have = own.iter().filter(|&&j| j == k).count();
                extra.extend(std::iter::repeat(k).take(n - have));
            }
            extra
        };
        let left = expand_against(&a.numerator, &missing(&a.denominator));
        let right = expand_against(&b.numerator, &missing(&b.denominator));
        let mut sum = left;
        for (e, c) in right {
            let entry = sum.entry(e).or_insert_with(Int::zero);
            *entry += c;
            if entry.is_zero() {
                sum.remove(&e);
            }
        }
        LatticeSeries::new(sum, union, a.role, a.m)
    }
}

impl Sub for &LatticeSeries {
    type Output = LatticeSeries;

    fn sub(self, rhs: &LatticeSeries) -> LatticeSeries {
        self + &(-rhs)
    }
}

impl Neg for &LatticeSeries {
    type Output = LatticeSeries;

    fn neg(self) -> LatticeSeries {
        LatticeSeries::new(
            self.numerator.iter().map(|(&e, c)| (e, -c.clone())),
            self.denominator.clone(),
            self.role,
            self.m,
        )
    }
}

impl Mul for &LatticeSeries {
    type Output = LatticeSeries;

    fn mul(self, rhs: &LatticeSeries) -> LatticeSeries {
        let (a, b) = self.compatible(rhs);
        let mut num: BTreeMap<i64, Int> = BTreeMap::new();
        for (&e, c) in &a.numerator {
            for (&f, d) in &b.numerator {
                let entry = num.entry(e + f).or_insert_with(Int::zero);
                *entry += c * d;
                if entry.is_zero() {
                    num.remove(&(e + f));
                }
            }
        }
        let mut den = a.denominator.clone();
        den.extend_from_slice(&b.denominator);
        LatticeSeries::new(num, den, a.role, a.m)
    }
}

/// Limit of a rational form at `t = 1`; each `(1 - t^k)` contributes a factor `k`.
pub fn limit_at_one(f: &LatticeSeries) -> Limit {
    f.limit_at_one()
}

impl fmt::Display for LatticeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut num = String::new();
        for (i, (&e, c)) in self.numerator.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    num.push('-');
                }
            } else {
                num.push_str(&format!(" {} ", sign));
            }
            let power = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", e),
            };
            if power.is_empty() {
                num.push_str(&mag.to_string());
            } else if mag == Int::from(1) {
                num.push_str(&power);
            } else {
                num.push_str(&format!("{} {}", mag, power));
            }
        }
        if self.denominator.is_empty() {
            return write!(f, "{}", num);
        }
        let mut den = String::new();
        let mut seen: Vec<(i64, usize)> = Vec::new();
        for &k in &self.denominator {
            match seen.iter_mut().find(|(j, _)| *j == k) {
                Some((_, n)) => *n += 1,
                None => seen.push((k, 1)),
            }
        }
        for (i, (k, n)) in seen.iter().enumerate() {
            if i > 0 {
                den.push(' ');
            }
            let factor = if *k == 1 {
                "(1 - t)".to_string()
            } else {
                format!("(1 - t^{})", k)
            };
            den.push_str(&factor);
            if *n > 1 {
                den.push_str(&format!("^{}", n));
            }
        }
        write!(f, "({}) / {}", num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_math::{int, rat};

    fn l(series: &[(i64, i64)], den: &[i64]) -> LatticeSeries {
        LatticeSeries::new(
            series.iter().map(|&(e, c)| (e, int(c))),
            den.to_vec(),
            SeriesRole::LInverse,
            1,
        )
    }

    #[test]
    fn normal_form_cancels_a_shared_factor() {
        let s = l(&[(0, 1), (2, -1)], &[1]);
        assert_eq!(s.numerator(), vec![(0, int(1)), (1, int(1))]);
        assert!(s.denominator().is_empty());
    }

    #[test]
    fn different_reductions_compare_equal() {
        let a = l(&[(0, 1), (2, 1), (4, 1)], &[3]);
        let b = l(&[(0, 1), (3, 1)], &[2]);
        assert_eq!(a, b);
        let c = l(&[(0, 1), (3, 1)], &[3]);
        assert_ne!(a, c);
    }

    #[test]
    fn limit_cancels_matching_orders() {
        assert_eq!(l(&[(0, 1), (2, -1)], &[1]).limit_at_one(), Limit::Finite(rat(2, 1)));
        assert_eq!(l(&[(0, 1)], &[1]).limit_at_one(), Limit::Pole);
        assert_eq!(
            l(&[(0, 1), (1, -2), (2, 1)], &[1]).limit_at_one(),
            Limit::Finite(rat(0, 1))
        );
        assert_eq!(l(&[(0, 7)], &[]).limit_at_one(), Limit::Finite(rat(7, 1)));
        assert_eq!(
            l(&[(0, 1), (5, -1)], &[1]).limit_at_one(),
            Limit::Finite(rat(5, 1))
        );
    }

    #[test]
    fn addition_uses_the_least_common_denominator() {
        let a = l(&[(1, 1)], &[5, 5]);
        let b = l(&[(0, 1)], &[5, 1]);
        let sum = &a + &b;
        let expected = l(&[(1, 1), (2, -1), (0, 1), (5, -1)], &[5, 5, 1]);
        assert_eq!(sum, expected);
        assert!(sum.denominator().len() <= 3);
    }

    #[test]
    fn moduli_are_reconciled_by_rescaling() {
        let coarse = LatticeSeries::new([(1, int(1))], vec![2], SeriesRole::LInverse, 1);
        let fine = LatticeSeries::new([(2, int(1))], vec![4], SeriesRole::LInverse, 2);
        assert_eq!(coarse, fine);
        let sum = &coarse + &fine;
        assert_eq!(sum.modulus(), 2);
        assert_eq!(sum, fine.scale(&int(2), 0));
    }

    #[test]
    fn laurent_numerators_are_supported() {
        let s = l(&[(-3, 1), (-2, -2), (-1, 1)], &[]);
        assert_eq!(s.limit_at_one(), Limit::Finite(rat(0, 1)));
        assert_eq!(s.valuation(), Some(-3));
        assert_eq!(s.degree(), Some(-1));
    }

    #[test]
    fn expansion_matches_geometric_series() {
        let s = l(&[(0, 1)], &[2]);
        let coeffs = s.coefficients_up_to(7);
        let expected: BTreeMap<i64, Int> = [(0, 1), (2, 1), (4, 1), (6, 1)]
            .into_iter()
            .map(|(e, c)| (e, int(c)))
            .collect();
        assert_eq!(coeffs, expected);
    }

    #[test]
    fn display_groups_denominator_factors() {
        let s = l(&[(0, 1), (5, 5)], &[5, 5]);
        assert_eq!(s.to_string(), "(1 + 5 t^5) / (1 - t^5)^2");
        let p = l(&[(0, -1), (1, 1)], &[]);
        assert_eq!(p.to_string(), "-1 + t");
        let q = l(&[(2, 1)], &[1, 5]);
        assert_eq!(q.to_string(), "(t^2) / (1 - t) (1 - t^5)");
    }

    #[test]
    fn json_form_is_stable() {
        let s = l(&[(1, 1), (6, 5)], &[5, 5, 1]);
        assert_eq!(
            s.to_json().to_string(),
            r#"{"denominator":[1,5,5],"m":1,"numerator":[[1,1],[5,6]]}"#
        );
    }
}
