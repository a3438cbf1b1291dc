//! Piecewise linear support functions on the divisorial fan.
//!
//! A divisor supported on invariant primes is ℚ-Cartier exactly when each
//! chart admits linear data `(m_y, c_y)` reproducing its coefficients: vertex
//! pins on Cayley rays, ray pins on uncolored tail rays, color pins, and
//! agreement on chart overlaps. `solve_theta` assembles that global linear
//! system; `build_omega` derives the discrepancy support by re-pinning the
//! same tail data to log discrepancy -1 along vertices and colors.

use std::collections::{BTreeMap, BTreeSet};

use divfan::{ColoredDivisorialFan, GroupData};
use exact_math::{
    dot_rat, fmt_rat, kappa, pair, rat, solve_rational_linear, Int, LatticeVec, Rat, RatMatrix,
    RatVec,
};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rootdata::a_alpha;

use crate::inventory::{ray_colored, ray_meets, DivisorInventory, DivisorKey};
use crate::StringyError;

/// One affine-linear function `ν ↦ ⟨m, ν⟩ + c·ℓ` on a Cayley cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFun {
    pub m: RatVec,
    pub c: Rat,
}

impl PointFun {
    /// Value on a point (ν, ℓ) of N_ℚ × ℚ.
    pub fn eval(&self, nu: &[Rat], ell: &Rat) -> Rat {
        dot_rat(&self.m, nu) + &self.c * ell
    }

    /// Value on an integral Cayley point, the grading being the last entry.
    pub fn eval_cayley(&self, point: &[Int]) -> Rat {
        let n = point.len() - 1;
        pair(&point[..n], &self.m) + &self.c * Rat::from(point[n].clone())
    }
}

/// Support data for one chart: a linear pair at each point of interest and a
/// shared pair standing in for every other point of the locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntrySupport {
    pub points: BTreeMap<String, PointFun>,
    pub generic: PointFun,
}

impl EntrySupport {
    pub fn at(&self, label: Option<&str>) -> &PointFun {
        match label {
            Some(y) => self.points.get(y).unwrap_or(&self.generic),
            None => &self.generic,
        }
    }
}

/// Piecewise linear support of a divisor across all charts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLSupport {
    pub entries: Vec<EntrySupport>,
    /// Fixed color offsets, `-a_α` on the discrepancy side.
    pub r_alpha: BTreeMap<usize, Rat>,
    /// The gauge `K_curve ~ Σ b_y·[y]` the data was solved against.
    pub gauge: BTreeMap<String, i64>,
    /// Least common denominator of all linear data.
    pub denominator: i64,
}

impl PLSupport {
    /// Value on a tail ray, which all slots of the chart share.
    pub fn tail_value(&self, entry: usize, ray: &[Int]) -> Rat {
        pair(ray, &self.entries[entry].generic.m)
    }

    /// Value at a point of the Cayley cone over the labeled curve point.
    pub fn cayley_value(&self, entry: usize, label: Option<&str>, point: &[Int]) -> Rat {
        self.entries[entry].at(label).eval_cayley(point)
    }

    /// Value at (ν, ℓ) over the labeled curve point.
    pub fn vertical_value(&self, entry: usize, label: &str, nu: &[Rat], ell: &Rat) -> Rat {
        self.entries[entry].at(Some(label)).eval(nu, ell)
    }

    fn lcd(&self) -> i64 {
        let mut l = Int::one();
        for e in &self.entries {
            for f in e.points.values().chain([&e.generic]) {
                for x in f.m.iter().chain([&f.c]) {
                    l = l.lcm(x.denom());
                }
            }
        }
        l.to_i64().expect("small common denominator")
    }
}

/// Linear system with labeled rows, solved over ℚ.
struct System {
    cols: usize,
    rows: Vec<RatVec>,
    rhs: Vec<Rat>,
    labels: Vec<String>,
}

impl System {
    fn new(cols: usize) -> System {
        System { cols, rows: Vec::new(), rhs: Vec::new(), labels: Vec::new() }
    }

    fn push(&mut self, row: RatVec, rhs: Rat, label: String) {
        debug_assert_eq!(row.len(), self.cols);
        self.rows.push(row);
        self.rhs.push(rhs);
        self.labels.push(label);
    }

    fn solve(&self) -> Option<(RatVec, Vec<RatVec>)> {
        solve_rational_linear(&self.rows, &self.rhs)
    }

    /// Greedy maximal consistent subset; returns the labels left out.
    fn violated(&self) -> Vec<String> {
        let mut a: RatMatrix = Vec::new();
        let mut b: RatVec = Vec::new();
        let mut violated = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            a.push(row.clone());
            b.push(self.rhs[i].clone());
            if solve_rational_linear(&a, &b).is_none() {
                a.pop();
                b.pop();
                violated.push(self.labels[i].clone());
            }
        }
        violated.sort();
        violated.dedup();
        violated
    }
}

/// Column layout: one m-block per chart slot, one c-column per vertical slot.
struct Layout {
    n: usize,
    m_cols: BTreeMap<(usize, Option<String>), usize>,
    c_cols: BTreeMap<(usize, String), usize>,
    width: usize,
}

impl Layout {
    fn m_col(&self, entry: usize, label: Option<&str>) -> usize {
        let key = (entry, label.map(str::to_string));
        match self.m_cols.get(&key) {
            Some(&c) => c,
            None => self.m_cols[&(entry, None)],
        }
    }

    fn c_col(&self, entry: usize, label: &str) -> usize {
        self.c_cols[&(entry, label.to_string())]
    }
}

fn fmt_ray(ray: &[Int]) -> String {
    let coords: Vec<String> = ray.iter().map(Int::to_string).collect();
    format!("({})", coords.join(", "))
}

/// Points whose fibers need their own linear data.
fn interest_points(fan: &ColoredDivisorialFan, gauge: &BTreeMap<String, i64>) -> BTreeSet<String> {
    let mut interest = fan.special_points();
    interest.extend(gauge.iter().filter(|(_, &b)| b != 0).map(|(y, _)| y.clone()));
    interest
}

fn degree_free_rays(fan: &ColoredDivisorialFan, entry: usize) -> Vec<LatticeVec> {
    let e = &fan.entries()[entry];
    let degree = e.divisor.degree();
    e.divisor
        .tail()
        .rays()
        .iter()
        .filter(|r| !ray_colored(fan, &e.colors, r))
        .filter(|r| match &degree {
            Some(d) => !ray_meets(d, r),
            None => true,
        })
        .cloned()
        .collect()
}

/// Solves for piecewise linear support data reproducing the divisor.
///
/// The gauge records the vertical degrees `b_y` the divisor was written
/// against; it travels with the support so discrepancy targets for new
/// vertices can be formed later. Infeasibility means the divisor is not
/// ℚ-Cartier and is reported with a set of conditions that cannot hold
/// simultaneously.
pub fn solve_theta(
    fan: &ColoredDivisorialFan,
    divisor: &DivisorInventory,
    gauge: &BTreeMap<String, i64>,
) -> Result<PLSupport, StringyError> {
    let n = fan.lattice_rank();
    let interest = interest_points(fan, gauge);

    let mut layout = Layout { n, m_cols: BTreeMap::new(), c_cols: BTreeMap::new(), width: 0 };
    for (i, e) in fan.entries().iter().enumerate() {
        let projective = e.divisor.locus().is_projective();
        if !projective {
            for y in &interest {
                if e.divisor.locus().contains(y) {
                    layout.m_cols.insert((i, Some(y.clone())), layout.width);
                    layout.width += n;
                }
            }
        }
        layout.m_cols.insert((i, None), layout.width);
        layout.width += n;
        for y in &interest {
            if e.divisor.locus().contains(y) {
                layout.c_cols.insert((i, y.clone()), layout.width);
                layout.width += 1;
            }
        }
    }

    let mut sys = System::new(layout.width);
    let target = |key: &DivisorKey| divisor.coefficient(key).cloned().unwrap_or_else(Rat::zero);

    // Vertex pins: the support evaluates to the divisor coefficient at every
    // primitive Cayley ray (κ(p)·p, κ(p)).
    for (i, e) in fan.entries().iter().enumerate() {
        for y in &interest {
            if !e.divisor.locus().contains(y) {
                continue;
            }
            for p in e.divisor.coefficient(y).vertices() {
                let k = kappa(p);
                let mut row = vec![Rat::zero(); layout.width];
                let mc = layout.m_col(i, Some(y));
                for (j, x) in p.iter().enumerate() {
                    row[mc + j] = x * Rat::from(k.clone());
                }
                row[layout.c_col(i, y)] = Rat::from(k.clone());
                let key = DivisorKey::Vertical { label: y.clone(), vertex: p.clone() };
                let rhs = target(&key);
                let label = format!("{key} = {}", fmt_rat(&rhs));
                sys.push(row, rhs, label);
            }
        }
    }

    // Ray pins on uncolored rays away from the degree, for every slot.
    for (i, e) in fan.entries().iter().enumerate() {
        let slots: Vec<Option<String>> = layout
            .m_cols
            .keys()
            .filter(|(ei, _)| *ei == i)
            .map(|(_, l)| l.clone())
            .collect();
        for ray in degree_free_rays(fan, i) {
            let key = DivisorKey::Horizontal { ray: ray.clone() };
            let rhs = target(&key);
            for slot in &slots {
                let mut row = vec![Rat::zero(); layout.width];
                let mc = layout.m_col(i, slot.as_deref());
                for (j, x) in ray.iter().enumerate() {
                    row[mc + j] = Rat::from(x.clone());
                }
                sys.push(row, rhs.clone(), format!("{key} = {}", fmt_rat(&rhs)));
            }
        }
        for &alpha in &e.colors {
            let q = fan
                .group()
                .color_point(alpha)
                .map_err(|err| StringyError::Internal(err.to_string()))?;
            let key = DivisorKey::Color { alpha };
            let rhs = target(&key);
            for slot in &slots {
                let mut row = vec![Rat::zero(); layout.width];
                let mc = layout.m_col(i, slot.as_deref());
                for (j, x) in q.iter().enumerate() {
                    row[mc + j] = Rat::from(x.clone());
                }
                sys.push(row, rhs.clone(), format!("{key} = {}", fmt_rat(&rhs)));
            }
        }
    }

    // Chart overlaps agree on shared tail rays and shared Cayley rays.
    for i in 0..fan.entries().len() {
        for j in i + 1..fan.entries().len() {
            let a = &fan.entries()[i].divisor;
            let b = &fan.entries()[j].divisor;
            let shared = a.tail().intersect(b.tail());
            for ray in shared.rays() {
                let mut row = vec![Rat::zero(); layout.width];
                let (ma, mb) = (layout.m_col(i, None), layout.m_col(j, None));
                for (k, x) in ray.iter().enumerate() {
                    row[ma + k] += Rat::from(x.clone());
                    row[mb + k] -= Rat::from(x.clone());
                }
                let label = format!("charts {i} and {j} agree on ray {}", fmt_ray(ray));
                sys.push(row, Rat::zero(), label);
            }
            for y in &interest {
                if !a.locus().contains(y) || !b.locus().contains(y) {
                    continue;
                }
                let ca = a.coefficient(y).cayley_cone();
                let cb = b.coefficient(y).cayley_cone();
                for ray in ca.intersect(&cb).rays() {
                    if ray[n].is_zero() {
                        continue;
                    }
                    let mut row = vec![Rat::zero(); layout.width];
                    let (ma, mb) = (layout.m_col(i, Some(y)), layout.m_col(j, Some(y)));
                    for (k, x) in ray[..n].iter().enumerate() {
                        row[ma + k] += Rat::from(x.clone());
                        row[mb + k] -= Rat::from(x.clone());
                    }
                    row[layout.c_col(i, y)] += Rat::from(ray[n].clone());
                    row[layout.c_col(j, y)] -= Rat::from(ray[n].clone());
                    let label =
                        format!("charts {i} and {j} agree over {y} on ray {}", fmt_ray(ray));
                    sys.push(row, Rat::zero(), label);
                }
            }
        }
    }

    // On a projective locus the vertical offsets form a degree-zero divisor
    // on the curve; points outside the interest set contribute zero.
    for (i, e) in fan.entries().iter().enumerate() {
        if !e.divisor.locus().is_projective() {
            continue;
        }
        let mut row = vec![Rat::zero(); layout.width];
        for y in &interest {
            row[layout.c_col(i, y)] = Rat::one();
        }
        sys.push(row, Rat::zero(), format!("chart {i}: vertical offsets sum to zero"));
    }

    let Some((x, kernel)) = sys.solve() else {
        return Err(StringyError::NotQGorenstein { violated: sys.violated() });
    };

    let build = |x: &RatVec| -> PLSupport {
        let mut entries = Vec::new();
        for (i, e) in fan.entries().iter().enumerate() {
            let mut points = BTreeMap::new();
            for y in &interest {
                if !e.divisor.locus().contains(y) {
                    continue;
                }
                let mc = layout.m_col(i, Some(y));
                points.insert(
                    y.clone(),
                    PointFun {
                        m: x[mc..mc + n].to_vec(),
                        c: x[layout.c_col(i, y)].clone(),
                    },
                );
            }
            let mc = layout.m_col(i, None);
            let generic = PointFun { m: x[mc..mc + n].to_vec(), c: Rat::zero() };
            entries.push(EntrySupport { points, generic });
        }
        let mut support =
            PLSupport { entries, r_alpha: BTreeMap::new(), gauge: gauge.clone(), denominator: 1 };
        support.denominator = support.lcd();
        support
    };

    let support = build(&x);
    if let Some(k) = kernel.first() {
        let shifted: RatVec = x.iter().zip(k).map(|(a, b)| a + b).collect();
        let other = build(&shifted);
        if !same_on_fan(fan, &interest, &support, &other) {
            return Err(StringyError::Internal(
                "the divisor does not pin its support on the fan".into(),
            ));
        }
    }
    Ok(support)
}

/// Whether two supports evaluate identically on every cone of the fan.
fn same_on_fan(
    fan: &ColoredDivisorialFan,
    interest: &BTreeSet<String>,
    a: &PLSupport,
    b: &PLSupport,
) -> bool {
    for (i, e) in fan.entries().iter().enumerate() {
        for ray in e.divisor.tail().rays() {
            if a.tail_value(i, ray) != b.tail_value(i, ray) {
                return false;
            }
        }
        for y in interest {
            if !e.divisor.locus().contains(y) {
                continue;
            }
            for ray in e.divisor.coefficient(y).cayley_cone().rays() {
                if a.cayley_value(i, Some(y), ray) != b.cayley_value(i, Some(y), ray) {
                    return false;
                }
            }
        }
    }
    true
}

/// Derives the discrepancy support ω from the canonical support.
///
/// ω agrees with ϑ on uncolored tail rays, takes the value `-a_α` on color
/// points and `-1` on every vertical Cayley ray, including the generic one.
/// Each slot is an independent linear solve; failure of any solve, or any
/// disagreement on chart overlaps, means the discrepancy function is not
/// linear on some cone of the fan.
pub fn build_omega(
    fan: &ColoredDivisorialFan,
    theta: &PLSupport,
) -> Result<PLSupport, StringyError> {
    let n = fan.lattice_rank();
    let specials = fan.special_points();

    let mut r_alpha = BTreeMap::new();
    if let GroupData::Horospherical { system, pair } = fan.group() {
        for alpha in 0..system.rank() {
            if !pair.parabolic().contains(&alpha) {
                let a = a_alpha(system, pair.parabolic(), alpha)
                    .map_err(|e| StringyError::Internal(e.to_string()))?;
                r_alpha.insert(alpha, rat(-a, 1));
            }
        }
    }

    let mut entries = Vec::new();
    for (i, e) in fan.entries().iter().enumerate() {
        let mut tail_rows: Vec<(RatVec, Rat)> = Vec::new();
        for ray in e.divisor.tail().rays() {
            if ray_colored(fan, &e.colors, ray) {
                continue;
            }
            let row: RatVec = ray.iter().map(|x| Rat::from(x.clone())).collect();
            tail_rows.push((row, theta.tail_value(i, ray)));
        }
        for &alpha in &e.colors {
            let q = fan
                .group()
                .color_point(alpha)
                .map_err(|err| StringyError::Internal(err.to_string()))?;
            let row: RatVec = q.iter().map(|x| Rat::from(x.clone())).collect();
            tail_rows.push((row, r_alpha[&alpha].clone()));
        }

        let solve_slot = |label: Option<&str>| -> Result<PointFun, StringyError> {
            let mut sys = System::new(n + 1);
            for (row, rhs) in &tail_rows {
                let mut r = row.clone();
                r.push(Rat::zero());
                sys.push(r, rhs.clone(), String::new());
            }
            match label {
                Some(y) => {
                    for p in e.divisor.coefficient(y).vertices() {
                        let k = Rat::from(kappa(p));
                        let mut row: RatVec = p.iter().map(|x| x * &k).collect();
                        row.push(k);
                        sys.push(row, -Rat::one(), String::new());
                    }
                }
                None => {
                    let mut row = vec![Rat::zero(); n + 1];
                    row[n] = Rat::one();
                    sys.push(row, -Rat::one(), String::new());
                }
            }
            let Some((x, _)) = sys.solve() else {
                let at = label.map_or("the generic point".to_string(), |y| format!("y = {y}"));
                return Err(StringyError::OmegaNotLinear {
                    detail: format!("chart {i} admits no linear discrepancy data at {at}"),
                });
            };
            Ok(PointFun { m: x[..n].to_vec(), c: x[n].clone() })
        };

        let mut points = BTreeMap::new();
        for y in &specials {
            if e.divisor.locus().contains(y) {
                points.insert(y.clone(), solve_slot(Some(y))?);
            }
        }
        let generic = solve_slot(None)?;
        entries.push(EntrySupport { points, generic });
    }

    let mut omega = PLSupport {
        entries,
        r_alpha,
        gauge: theta.gauge.clone(),
        denominator: 1,
    };
    omega.denominator = omega.lcd();

    // Overlapping charts must induce one function on the global fan.
    for i in 0..fan.entries().len() {
        for j in i + 1..fan.entries().len() {
            let a = &fan.entries()[i].divisor;
            let b = &fan.entries()[j].divisor;
            for ray in a.tail().intersect(b.tail()).rays() {
                if omega.tail_value(i, ray) != omega.tail_value(j, ray) {
                    return Err(StringyError::OmegaNotLinear {
                        detail: format!(
                            "charts {i} and {j} disagree on tail ray {}",
                            fmt_ray(ray)
                        ),
                    });
                }
            }
            for y in &specials {
                if !a.locus().contains(y) || !b.locus().contains(y) {
                    continue;
                }
                let ca = a.coefficient(y).cayley_cone();
                let cb = b.coefficient(y).cayley_cone();
                for ray in ca.intersect(&cb).rays() {
                    if omega.cayley_value(i, Some(y), ray) != omega.cayley_value(j, Some(y), ray) {
                        return Err(StringyError::OmegaNotLinear {
                            detail: format!(
                                "charts {i} and {j} disagree over {y} on ray {}",
                                fmt_ray(ray)
                            ),
                        });
                    }
                }
            }
        }
    }

    Ok(omega)
}

/// Per-chart log terminality report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTerminalReport {
    pub log_terminal: bool,
    pub entries: Vec<EntryVerdict>,
}

/// Verdict for one chart: affine loci are always log terminal, projective
/// ones exactly when `Σ_y (1 - 1/κ_y) < 2` for the maximal vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryVerdict {
    pub entry: usize,
    pub affine: bool,
    pub kappa_sum: Option<Rat>,
    pub log_terminal: bool,
}

/// Checks log terminality chart by chart.
pub fn check_log_terminal(fan: &ColoredDivisorialFan) -> LogTerminalReport {
    let two = rat(2, 1);
    let mut entries = Vec::new();
    for (i, e) in fan.entries().iter().enumerate() {
        if !e.divisor.locus().is_projective() {
            entries.push(EntryVerdict {
                entry: i,
                affine: true,
                kappa_sum: None,
                log_terminal: true,
            });
            continue;
        }
        let mut sum = Rat::zero();
        for y in e.divisor.special_points() {
            let k = e
                .divisor
                .coefficient(y)
                .vertices()
                .iter()
                .map(|p| kappa(p))
                .max()
                .unwrap_or_else(Int::one);
            sum += Rat::one() - rat(1, 1) / Rat::from(k);
        }
        let ok = sum < two;
        entries.push(EntryVerdict {
            entry: i,
            affine: false,
            kappa_sum: Some(sum),
            log_terminal: ok,
        });
    }
    LogTerminalReport { log_terminal: entries.iter().all(|e| e.log_terminal), entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inventory::{canonical_divisor, default_gauge};
    use divfan::fan_from_json;
    use exact_math::{int, vecr};

    const THREEFOLD: &str = r#"{
        "lattice_rank": 2,
        "curve": {"genus": 0, "points": ["0", "1", "inf"]},
        "group": {"kind": "torus"},
        "divisors": [{
            "tail": [[1, 0], [1, 6]],
            "locus": {"projective": true},
            "coefficients": {
                "0": {"vertices": [["1", "0"], ["1", "1"]]},
                "1": {"vertices": [["-1/2", "0"]]},
                "inf": {"vertices": [["-1/3", "0"]]}
            },
            "colors": []
        }]
    }"#;

    fn threefold() -> ColoredDivisorialFan {
        fan_from_json(THREEFOLD).unwrap()
    }

    fn theta_for(gauge: &[(&str, i64)]) -> (ColoredDivisorialFan, PLSupport) {
        let fan = threefold();
        let gauge: BTreeMap<String, i64> =
            gauge.iter().map(|(y, b)| (y.to_string(), *b)).collect();
        let k = canonical_divisor(&fan, &gauge).unwrap();
        let theta = solve_theta(&fan, &k, &gauge).unwrap();
        (fan, theta)
    }

    #[test]
    fn canonical_support_of_the_threefold() {
        let (_, theta) = theta_for(&[("0", -5), ("1", 2), ("inf", 1)]);
        let e = &theta.entries[0];
        assert_eq!(e.generic.m, vecr(&[(-5, 1), (0, 1)]));
        for y in ["0", "1", "inf"] {
            let f = &e.points[y];
            assert_eq!(f.m, vecr(&[(-5, 1), (0, 1)]));
            assert!(f.c.is_zero());
        }
        assert_eq!(theta.denominator, 1);
        // ϑ(1; -1, 0, 2) = 2b₁ + 1 = 5 and ϑ(∞; -1, 0, 3) = 3b_∞ + 2 = 5.
        assert_eq!(theta.cayley_value(0, Some("1"), &[int(-1), int(0), int(2)]), rat(5, 1));
        assert_eq!(theta.cayley_value(0, Some("inf"), &[int(-1), int(0), int(3)]), rat(5, 1));
    }

    #[test]
    fn canonical_support_follows_the_gauge() {
        let (_, theta) = theta_for(&[("0", 0), ("1", 0), ("inf", -2)]);
        // m is pinned by vertex differences, offsets absorb the gauge.
        let e = &theta.entries[0];
        assert_eq!(e.generic.m, vecr(&[(-5, 1), (0, 1)]));
        assert_eq!(e.points["0"].c, rat(5, 1));
        assert_eq!(e.points["1"].c, rat(-2, 1));
        assert_eq!(e.points["inf"].c, rat(-3, 1));
    }

    #[test]
    fn discrepancy_support_is_gauge_independent() {
        let (fan, theta1) = theta_for(&[("0", -5), ("1", 2), ("inf", 1)]);
        let omega1 = build_omega(&fan, &theta1).unwrap();
        let (_, theta2) = theta_for(&[("0", 0), ("1", 0), ("inf", -2)]);
        let omega2 = build_omega(&fan, &theta2).unwrap();
        assert_eq!(omega1.entries, omega2.entries);

        // ω(0) = -5a + 4c, ω(1) = -5a - 3c, ω(∞) = -5a - 2c, generic -5a - c.
        let e = &omega1.entries[0];
        assert_eq!(e.points["0"], PointFun { m: vecr(&[(-5, 1), (0, 1)]), c: rat(4, 1) });
        assert_eq!(e.points["1"], PointFun { m: vecr(&[(-5, 1), (0, 1)]), c: rat(-3, 1) });
        assert_eq!(e.points["inf"], PointFun { m: vecr(&[(-5, 1), (0, 1)]), c: rat(-2, 1) });
        assert_eq!(e.generic, PointFun { m: vecr(&[(-5, 1), (0, 1)]), c: rat(-1, 1) });
        assert_eq!(omega1.denominator, 1);
    }

    #[test]
    fn non_cartier_canonical_class_is_reported() {
        let text = r#"{
            "lattice_rank": 2,
            "curve": {"genus": 0, "points": ["0", "inf"]},
            "group": {"kind": "torus"},
            "divisors": [{
                "tail": [[1, 0], [0, 1]],
                "locus": {"affine_removed": ["inf"]},
                "coefficients": {"0": {"vertices": [["0", "0"], ["1", "1"]]}},
                "colors": []
            }]
        }"#;
        let fan = fan_from_json(text).unwrap();
        let gauge = default_gauge(&fan).unwrap();
        let k = canonical_divisor(&fan, &gauge).unwrap();
        let err = solve_theta(&fan, &k, &gauge).unwrap_err();
        match err {
            StringyError::NotQGorenstein { violated } => {
                assert!(!violated.is_empty());
                assert!(err.to_string().starts_with("not Q-Gorenstein"));
            }
            other => panic!("expected NotQGorenstein, got {other:?}"),
        }
    }

    #[test]
    fn log_terminal_threshold_is_two() {
        let fan = threefold();
        let report = check_log_terminal(&fan);
        assert!(report.log_terminal);
        assert_eq!(report.entries[0].kappa_sum, Some(rat(7, 6)));

        let text = r#"{
            "lattice_rank": 1,
            "curve": {"genus": 0, "points": ["0", "1", "inf"]},
            "group": {"kind": "torus"},
            "divisors": [{
                "tail": [[1]],
                "locus": {"projective": true},
                "coefficients": {
                    "0": {"vertices": [["1/2"]]},
                    "1": {"vertices": [["1/3"]]},
                    "inf": {"vertices": [["1/7"]]}
                },
                "colors": []
            }]
        }"#;
        let fan = fan_from_json(text).unwrap();
        let report = check_log_terminal(&fan);
        assert!(!report.log_terminal);
        assert_eq!(report.entries[0].kappa_sum, Some(rat(85, 42)));
    }
}
