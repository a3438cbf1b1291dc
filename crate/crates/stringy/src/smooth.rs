//! Euler characteristic closed forms and the smoothness certificate.
//!
//! For a single affine chart whose variety is locally factorial, whose tail
//! cone spans the lattice and whose Cayley cones are full dimensional, the
//! stringy Euler characteristic collapses to
//! `e(C0) |W| / (|W_I| prod a_alpha)` over the selected colors, while the
//! ordinary Euler characteristic is `e(C0) |W| / |W_flag|` with the flag cut
//! out by the parabolic set extended by the colors. When additionally
//! `e(C0) != 0`, the chart is smooth exactly when the two numbers agree.

use std::collections::BTreeSet;

use divfan::{ColoredDivisorialFan, GroupData};
use exact_math::{kappa, solve_integral_linear, Int, Rat};
use num_traits::Zero;
use rootdata::{a_alpha, weyl_order, RootSystem};

use crate::inventory::{ray_colored, DivisorKey};
use crate::StringyError;

/// Outcome of the smoothness criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessReport {
    /// Hypothesis label with its verdict, in check order.
    pub hypotheses: Vec<(String, bool)>,
    /// True when every hypothesis holds and the closed forms below apply.
    pub applicable: bool,
    pub euler_stringy: Option<Rat>,
    pub euler: Option<Rat>,
    /// Verdict, present only when applicable and the locus has nonzero Euler
    /// characteristic.
    pub smooth: Option<bool>,
}

/// Checks that every invariant divisor of the chart is Cartier.
///
/// A divisor is Cartier when an integral support function carves it out:
/// one linear slot per special point plus a generic slot, agreeing on the
/// tail cone, hitting coefficient one on the target and zero elsewhere.
/// Divisors over non-special points and unselected colors always admit one,
/// so only rays, special vertices and selected colors need solving.
fn locally_factorial(fan: &ColoredDivisorialFan) -> Result<bool, StringyError> {
    let entry = &fan.entries()[0];
    let d = &entry.divisor;
    let n = fan.lattice_rank();
    let tail_rays = d.tail().rays().to_vec();
    let specials: Vec<String> = d.special_points().into_iter().map(String::from).collect();
    let s = specials.len();
    let width = n * (1 + s) + s;
    let m_col = |slot: usize, i: usize| slot * n + i;
    let c_col = |k: usize| n * (1 + s) + k;

    let mut targets: Vec<DivisorKey> = Vec::new();
    for ray in &tail_rays {
        if !ray_colored(fan, &entry.colors, ray) {
            targets.push(DivisorKey::Horizontal { ray: ray.clone() });
        }
    }
    for (k, y) in specials.iter().enumerate() {
        let _ = k;
        for vertex in d.coefficient(y).vertices() {
            targets.push(DivisorKey::Vertical { label: y.clone(), vertex: vertex.clone() });
        }
    }
    for &alpha in &entry.colors {
        targets.push(DivisorKey::Color { alpha });
    }

    let mut rows: Vec<(Vec<Int>, DivisorKey)> = Vec::new();
    let mut zero_rows: Vec<Vec<Int>> = Vec::new();
    for ray in &tail_rays {
        if ray_colored(fan, &entry.colors, ray) {
            continue;
        }
        let mut row = vec![Int::zero(); width];
        for i in 0..n {
            row[m_col(0, i)] = ray[i].clone();
        }
        rows.push((row, DivisorKey::Horizontal { ray: ray.clone() }));
    }
    for &alpha in &entry.colors {
        let point = fan.group().color_point(alpha).map_err(|e| StringyError::Input(e.to_string()))?;
        let mut row = vec![Int::zero(); width];
        for i in 0..n {
            row[m_col(0, i)] = point[i].clone();
        }
        rows.push((row, DivisorKey::Color { alpha }));
    }
    for (k, y) in specials.iter().enumerate() {
        for vertex in d.coefficient(y).vertices() {
            let kap = kappa(vertex);
            let mut row = vec![Int::zero(); width];
            for i in 0..n {
                row[m_col(1 + k, i)] = (&vertex[i] * Rat::from(kap.clone())).to_integer();
            }
            row[c_col(k)] = kap;
            rows.push((row, DivisorKey::Vertical { label: y.clone(), vertex: vertex.clone() }));
        }
        // The slots must agree with the generic one on the tail cone.
        for ray in &tail_rays {
            let mut row = vec![Int::zero(); width];
            for i in 0..n {
                row[m_col(1 + k, i)] = ray[i].clone();
                row[m_col(0, i)] = -&ray[i];
            }
            zero_rows.push(row);
        }
    }

    for target in &targets {
        let mut a: Vec<Vec<Int>> = Vec::new();
        let mut b: Vec<Int> = Vec::new();
        for (row, key) in &rows {
            a.push(row.clone());
            b.push(Int::from(i32::from(key == target)));
        }
        for row in &zero_rows {
            a.push(row.clone());
            b.push(Int::zero());
        }
        if solve_integral_linear(&a, &b).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluates the Euler closed forms and the smoothness criterion on a single
/// affine chart. Failed hypotheses are reported, not raised.
pub fn euler_and_smoothness(fan: &ColoredDivisorialFan) -> Result<SmoothnessReport, StringyError> {
    let single_affine = fan.entries().len() == 1
        && fan.entries().iter().all(|e| !e.divisor.locus().is_projective());
    if !single_affine {
        return Ok(SmoothnessReport {
            hypotheses: vec![("affine locus on a single chart".into(), false)],
            applicable: false,
            euler_stringy: None,
            euler: None,
            smooth: None,
        });
    }
    let entry = &fan.entries()[0];
    let d = &entry.divisor;
    let n = fan.lattice_rank();

    let factorial = locally_factorial(fan)?;
    let full_tail = d.tail().dim() == n;
    let full_cayley = d
        .special_points()
        .iter()
        .all(|y| d.coefficient(y).cayley_cone().dim() == n + 1);
    let hypotheses = vec![
        ("affine locus on a single chart".to_string(), true),
        ("locally factorial".to_string(), factorial),
        ("tail cone spans the lattice".to_string(), full_tail),
        ("Cayley cones have full dimension".to_string(), full_cayley),
    ];
    let applicable = factorial && full_tail && full_cayley;
    if !applicable {
        return Ok(SmoothnessReport {
            hypotheses,
            applicable,
            euler_stringy: None,
            euler: None,
            smooth: None,
        });
    }

    let (system, parabolic) = match fan.group() {
        GroupData::Torus => (RootSystem::torus(n), Vec::new()),
        GroupData::Horospherical { system, pair } => (system.clone(), pair.parabolic().to_vec()),
    };
    let all: Vec<usize> = (0..system.rank()).collect();
    let w = weyl_order(&system, &all).map_err(|e| StringyError::Internal(e.to_string()))?;
    let w_i =
        weyl_order(&system, &parabolic).map_err(|e| StringyError::Internal(e.to_string()))?;
    let flag: BTreeSet<usize> =
        parabolic.iter().copied().chain(entry.colors.iter().copied()).collect();
    let flag_vec: Vec<usize> = flag.iter().copied().collect();
    let w_flag =
        weyl_order(&system, &flag_vec).map_err(|e| StringyError::Internal(e.to_string()))?;

    let removed = d.locus().removed().map_or(0, BTreeSet::len);
    let e_locus = Rat::from(Int::from(2 - 2 * fan.curve().genus() as i64 - removed as i64));

    let mut color_product = Rat::from(Int::from(1));
    for &alpha in &entry.colors {
        let a = a_alpha(&system, &parabolic, alpha)
            .map_err(|e| StringyError::Internal(e.to_string()))?;
        color_product *= Rat::from(Int::from(a));
    }
    let euler_stringy = &e_locus * Rat::from(w.clone()) / (Rat::from(w_i) * color_product);
    let euler = &e_locus * Rat::from(w) / Rat::from(w_flag);
    let smooth = (!e_locus.is_zero()).then(|| euler_stringy == euler);

    Ok(SmoothnessReport {
        hypotheses,
        applicable,
        euler_stringy: Some(euler_stringy),
        euler: Some(euler),
        smooth,
    })
}
