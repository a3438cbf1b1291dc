//! Dynkin tables, positive-root closure, parabolic Weyl orders and the flag
//! Poincaré polynomial.
//!
//! Roots are stored as coordinate vectors in the simple-root basis, so the
//! Cartan matrix entry `cartan[i][j]` is the pairing of the j-th simple root
//! with the i-th coroot. Sub-diagrams are classified only as far as their
//! degree sequences, which is all that orders and Poincaré polynomials need.

use std::fmt;

use exact_math::{int, Int};
use num_traits::Zero;

use crate::RootError;

/// Dynkin series of a simple component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DynkinType::A => "A",
            DynkinType::B => "B",
            DynkinType::C => "C",
            DynkinType::D => "D",
            DynkinType::E => "E",
            DynkinType::F => "F",
            DynkinType::G => "G",
        };
        write!(f, "{s}")
    }
}

/// One simple factor of the semisimple part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DynkinComponent {
    pub kind: DynkinType,
    pub rank: usize,
}

/// A product of simple components together with a central torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<DynkinComponent>,
    torus_rank: usize,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(
        components: Vec<DynkinComponent>,
        torus_rank: usize,
    ) -> Result<RootSystem, RootError> {
        let mut cartan_blocks = Vec::new();
        let mut expected = 0usize;
        for c in &components {
            valid_rank(c)?;
            cartan_blocks.push(cartan_block(c));
            expected += positive_count(c);
        }
        let cartan = block_diagonal(&cartan_blocks);
        let positive = closure(&cartan);
        assert_eq!(positive.len(), expected, "positive root count disagrees with the type table");
        Ok(RootSystem { components, torus_rank, cartan, positive })
    }

    /// A torus with no semisimple part.
    pub fn torus(rank: usize) -> RootSystem {
        RootSystem::new(Vec::new(), rank).unwrap()
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// Dimension of the ambient character coordinates: simple roots plus torus.
    pub fn character_rank(&self) -> usize {
        self.rank() + self.torus_rank
    }

    pub fn components(&self) -> &[DynkinComponent] {
        &self.components
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Pairing of a root written in simple-root coordinates with a coroot.
    pub fn pairing(&self, root: &[i64], alpha: usize) -> i64 {
        root.iter().zip(&self.cartan[alpha]).map(|(c, a)| c * a).sum()
    }

    pub fn check_index(&self, alpha: usize) -> Result<(), RootError> {
        if alpha < self.rank() {
            Ok(())
        } else {
            Err(RootError::Index(alpha))
        }
    }
}

/// All positive roots, in simple-root coordinates.
pub fn positive_roots(rs: &RootSystem) -> &[Vec<i64>] {
    &rs.positive
}

/// Sum of the pairings of alpha's coroot with the positive roots outside the
/// parabolic subsystem spanned by `parabolic`.
pub fn a_alpha(rs: &RootSystem, parabolic: &[usize], alpha: usize) -> Result<i64, RootError> {
    rs.check_index(alpha)?;
    for &i in parabolic {
        rs.check_index(i)?;
    }
    if parabolic.contains(&alpha) {
        return Err(RootError::AlphaInParabolic(alpha));
    }
    let mut total = 0;
    for beta in &rs.positive {
        let inside = beta.iter().enumerate().all(|(j, &c)| c == 0 || parabolic.contains(&j));
        if !inside {
            total += rs.pairing(beta, alpha);
        }
    }
    Ok(total)
}

/// Order of the parabolic Weyl group generated by the reflections in `subset`.
pub fn weyl_order(rs: &RootSystem, subset: &[usize]) -> Result<Int, RootError> {
    let mut order = Int::from(1);
    for d in subsystem_degrees(rs, subset)? {
        order *= int(d as i64);
    }
    Ok(order)
}

/// Coefficients of W(q)/W_J(q), the Poincaré polynomial of G/P_J in q.
pub fn flag_poincare(rs: &RootSystem, subset: &[usize]) -> Result<Vec<Int>, RootError> {
    let full: Vec<usize> = (0..rs.rank()).collect();
    let numerator = degree_product(&subsystem_degrees(rs, &full)?);
    let denominator = degree_product(&subsystem_degrees(rs, subset)?);
    Ok(divide_polynomials(&numerator, &denominator))
}

fn valid_rank(c: &DynkinComponent) -> Result<(), RootError> {
    let ok = match c.kind {
        DynkinType::A => c.rank >= 1,
        DynkinType::B | DynkinType::C | DynkinType::D => c.rank >= 2,
        DynkinType::E => (6..=8).contains(&c.rank),
        DynkinType::F => c.rank == 4,
        DynkinType::G => c.rank == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(RootError::Rank(c.kind, c.rank))
    }
}

fn positive_count(c: &DynkinComponent) -> usize {
    let n = c.rank;
    match c.kind {
        DynkinType::A => n * (n + 1) / 2,
        DynkinType::B | DynkinType::C => n * n,
        DynkinType::D => n * (n - 1),
        DynkinType::E => [36, 63, 120][n - 6],
        DynkinType::F => 24,
        DynkinType::G => 6,
    }
}

fn cartan_block(c: &DynkinComponent) -> Vec<Vec<i64>> {
    let n = c.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match c.kind {
        DynkinType::A => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
        DynkinType::B => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            // Last simple root short.
            a[n - 1][n - 2] = -2;
        }
        DynkinType::C => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            // Last simple root long.
            a[n - 2][n - 1] = -2;
        }
        DynkinType::D => {
            for i in 0..n.saturating_sub(2) {
                link(&mut a, i, i + 1);
            }
            if n >= 3 {
                link(&mut a, n - 3, n - 1);
            }
        }
        DynkinType::E => {
            // Chain 0-2-3-...-(n-1) with node 1 attached to node 3.
            link(&mut a, 0, 2);
            for i in 2..n - 1 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, 1, 3);
        }
        DynkinType::F => {
            for i in 0..3 {
                link(&mut a, i, i + 1);
            }
            // Third simple root short.
            a[2][1] = -2;
        }
        DynkinType::G => {
            link(&mut a, 0, 1);
            // First simple root short.
            a[0][1] = -3;
        }
    }
    a
}

fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let total: usize = blocks.iter().map(|b| b.len()).sum();
    let mut a = vec![vec![0i64; total]; total];
    let mut offset = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                a[offset + i][offset + j] = v;
            }
        }
        offset += b.len();
    }
    a
}

/// Positive roots by closing the simple roots under simple reflections.
fn closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut queue: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    while let Some(r) = queue.pop() {
        if roots.contains(&r) {
            continue;
        }
        roots.push(r.clone());
        for i in 0..n {
            let p: i64 = r.iter().zip(&cartan[i]).map(|(c, a)| c * a).sum();
            let mut s = r.clone();
            s[i] -= p;
            if s.iter().all(|&c| c >= 0) && !roots.contains(&s) {
                queue.push(s);
            }
        }
    }
    roots.sort();
    roots
}

/// Degrees of the Weyl group of the sub-diagram induced on `subset`,
/// concatenated over its connected components.
fn subsystem_degrees(rs: &RootSystem, subset: &[usize]) -> Result<Vec<usize>, RootError> {
    for &i in subset {
        rs.check_index(i)?;
    }
    let mut nodes: Vec<usize> = subset.to_vec();
    nodes.sort();
    nodes.dedup();

    let weight = |i: usize, j: usize| rs.cartan[i][j].abs().max(rs.cartan[j][i].abs());
    let mut degrees = Vec::new();
    let mut seen = vec![false; nodes.len()];
    for start in 0..nodes.len() {
        if seen[start] {
            continue;
        }
        let mut component = vec![start];
        seen[start] = true;
        let mut cursor = 0;
        while cursor < component.len() {
            let u = component[cursor];
            cursor += 1;
            for v in 0..nodes.len() {
                if !seen[v] && weight(nodes[u], nodes[v]) > 0 {
                    seen[v] = true;
                    component.push(v);
                }
            }
        }
        let members: Vec<usize> = component.iter().map(|&l| nodes[l]).collect();
        degrees.extend(component_degrees(&members, &weight));
    }
    Ok(degrees)
}

/// Degrees of one connected sub-diagram, classified by its edge weights.
fn component_degrees(members: &[usize], weight: &dyn Fn(usize, usize) -> i64) -> Vec<usize> {
    let k = members.len();
    if k == 1 {
        return vec![2];
    }
    let degree = |i: usize| members.iter().filter(|&&j| j != i && weight(i, j) > 0).count();
    let mut heavy = None;
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            let w = weight(i, j);
            if w >= 2 {
                heavy = Some((i, j, w));
            }
        }
    }
    if let Some((i, j, w)) = heavy {
        if w == 3 {
            return vec![2, 6];
        }
        if k == 2 {
            return vec![2, 4];
        }
        if degree(i) == 2 && degree(j) == 2 {
            return vec![2, 6, 8, 12];
        }
        return (1..=k).map(|d| 2 * d).collect();
    }
    let fork = members.iter().find(|&&i| degree(i) == 3);
    match fork {
        None => (2..=k + 1).collect(),
        Some(&f) => {
            let mut arms: Vec<usize> = members
                .iter()
                .filter(|&&i| i != f && weight(i, f) > 0)
                .map(|&start| arm_length(members, weight, f, start))
                .collect();
            arms.sort();
            if arms[0] == 1 && arms[1] == 1 {
                let mut d: Vec<usize> = (1..k).map(|i| 2 * i).collect();
                d.push(k);
                d
            } else {
                match k {
                    6 => vec![2, 5, 6, 8, 9, 12],
                    7 => vec![2, 6, 8, 10, 12, 14, 18],
                    _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
                }
            }
        }
    }
}

fn arm_length(
    members: &[usize],
    weight: &dyn Fn(usize, usize) -> i64,
    fork: usize,
    start: usize,
) -> usize {
    let mut len = 1;
    let mut prev = fork;
    let mut here = start;
    loop {
        let next = members
            .iter()
            .find(|&&j| j != prev && j != here && weight(here, j) > 0)
            .copied();
        match next {
            Some(j) => {
                len += 1;
                prev = here;
                here = j;
            }
            None => return len,
        }
    }
}

/// Product of q-integers [d]_q over the degree list.
fn degree_product(degrees: &[usize]) -> Vec<Int> {
    let mut poly = vec![Int::from(1)];
    for &d in degrees {
        let factor: Vec<Int> = (0..d).map(|_| Int::from(1)).collect();
        poly = multiply(&poly, &factor);
    }
    poly
}

fn multiply(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of two polynomials with the divisor's leading coefficient 1.
fn divide_polynomials(numerator: &[Int], denominator: &[Int]) -> Vec<Int> {
    let mut rem = numerator.to_vec();
    let dn = denominator.len();
    assert!(rem.len() >= dn);
    let mut quot = vec![Int::zero(); rem.len() - dn + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn - 1].clone();
        quot[i] = c.clone();
        for (j, d) in denominator.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "flag Poincaré division left a remainder");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(kind: DynkinType, rank: usize) -> RootSystem {
        RootSystem::new(vec![DynkinComponent { kind, rank }], 0).unwrap()
    }

    #[test]
    fn positive_root_counts_match_the_type_tables() {
        for rank in 1..=5 {
            assert_eq!(positive_roots(&simple(DynkinType::A, rank)).len(), rank * (rank + 1) / 2);
        }
        for rank in 2..=5 {
            assert_eq!(positive_roots(&simple(DynkinType::B, rank)).len(), rank * rank);
            assert_eq!(positive_roots(&simple(DynkinType::C, rank)).len(), rank * rank);
            assert_eq!(positive_roots(&simple(DynkinType::D, rank)).len(), rank * (rank - 1));
        }
        assert_eq!(positive_roots(&simple(DynkinType::E, 6)).len(), 36);
        assert_eq!(positive_roots(&simple(DynkinType::F, 4)).len(), 24);
        assert_eq!(positive_roots(&simple(DynkinType::G, 2)).len(), 6);
    }

    #[test]
    fn every_positive_root_descends_through_a_simple_root() {
        for rs in [simple(DynkinType::B, 3), simple(DynkinType::D, 4), simple(DynkinType::G, 2)] {
            for beta in positive_roots(&rs) {
                if beta.iter().sum::<i64>() == 1 {
                    continue;
                }
                let descends = (0..rs.rank()).any(|i| {
                    let mut lower = beta.clone();
                    lower[i] -= 1;
                    lower.iter().all(|&c| c >= 0) && positive_roots(&rs).contains(&lower)
                });
                assert!(descends, "root {beta:?} has no simple descent");
            }
        }
    }

    #[test]
    fn a2_positive_roots_are_the_three_known_ones() {
        let rs = simple(DynkinType::A, 2);
        assert_eq!(positive_roots(&rs), &[vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn parabolic_multiplicities_match_hand_enumeration() {
        let a1 = simple(DynkinType::A, 1);
        assert_eq!(a_alpha(&a1, &[], 0).unwrap(), 2);

        // A2: pairings of alpha_1 coroot over {a1, a2, a1+a2} are 2, -1, 1.
        let a2 = simple(DynkinType::A, 2);
        assert_eq!(a_alpha(&a2, &[], 0).unwrap(), 2);
        assert_eq!(a_alpha(&a2, &[1], 0).unwrap(), 3);

        // A3 with the outer parabolic: {a2, a1+a2, a2+a3, a1+a2+a3} give 2+1+1+0.
        let a3 = simple(DynkinType::A, 3);
        assert_eq!(a_alpha(&a3, &[0, 2], 1).unwrap(), 4);

        assert_eq!(a_alpha(&a3, &[1], 1), Err(RootError::AlphaInParabolic(1)));
    }

    #[test]
    fn parabolic_multiplicities_are_positive() {
        for rs in [
            simple(DynkinType::A, 4),
            simple(DynkinType::B, 4),
            simple(DynkinType::C, 4),
            simple(DynkinType::D, 4),
        ] {
            let n = rs.rank();
            for mask in 0u32..(1 << n) {
                let parabolic: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                for alpha in 0..n {
                    if parabolic.contains(&alpha) {
                        continue;
                    }
                    assert!(a_alpha(&rs, &parabolic, alpha).unwrap() > 0);
                }
            }
        }
    }

    #[test]
    fn weyl_orders_match_the_degree_tables() {
        let a3 = simple(DynkinType::A, 3);
        assert_eq!(weyl_order(&a3, &[0, 1, 2]).unwrap(), int(24));
        assert_eq!(weyl_order(&a3, &[0, 2]).unwrap(), int(4));
        assert_eq!(weyl_order(&a3, &[]).unwrap(), int(1));
        assert_eq!(weyl_order(&simple(DynkinType::B, 3), &[0, 1, 2]).unwrap(), int(48));
        assert_eq!(weyl_order(&simple(DynkinType::D, 4), &[0, 1, 2, 3]).unwrap(), int(192));
        assert_eq!(weyl_order(&simple(DynkinType::G, 2), &[0, 1]).unwrap(), int(12));
        assert_eq!(weyl_order(&simple(DynkinType::E, 6), &(0..6).collect::<Vec<_>>()).unwrap(), int(51840));
    }

    #[test]
    fn parabolic_subdiagrams_of_e8_classify_correctly() {
        let e8 = simple(DynkinType::E, 8);
        // Nodes 1,2,3,4,5 induce a D5 fork; nodes 0,2,3,4,5 an A5 chain.
        assert_eq!(weyl_order(&e8, &[1, 2, 3, 4, 5]).unwrap(), int(1920));
        assert_eq!(weyl_order(&e8, &[0, 2, 3, 4, 5]).unwrap(), int(720));
        // The whole diagram minus node 0 is D7.
        assert_eq!(weyl_order(&e8, &[1, 2, 3, 4, 5, 6, 7]).unwrap(), int(322560));
    }

    #[test]
    fn flag_poincare_is_the_weyl_ratio_at_one() {
        for rs in [
            simple(DynkinType::A, 5),
            simple(DynkinType::B, 4),
            simple(DynkinType::C, 5),
            simple(DynkinType::D, 5),
        ] {
            let n = rs.rank();
            let full: Vec<usize> = (0..n).collect();
            let order = weyl_order(&rs, &full).unwrap();
            for mask in 0u32..(1 << n) {
                let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let poly = flag_poincare(&rs, &subset).unwrap();
                let at_one: Int = poly.iter().sum();
                assert_eq!(at_one * weyl_order(&rs, &subset).unwrap(), order);
            }
        }
    }

    #[test]
    fn flag_poincare_known_values() {
        let a1 = simple(DynkinType::A, 1);
        assert_eq!(flag_poincare(&a1, &[0]).unwrap(), vec![int(1)]);
        assert_eq!(flag_poincare(&a1, &[]).unwrap(), vec![int(1), int(1)]);

        let a3 = simple(DynkinType::A, 3);
        let p = flag_poincare(&a3, &[0, 2]).unwrap();
        assert_eq!(p.iter().sum::<Int>(), int(6));
        // Grassmannian Gr(2,4): 1 + q + 2q^2 + q^3 + q^4.
        assert_eq!(p, vec![int(1), int(1), int(2), int(1), int(1)]);
    }

    #[test]
    fn torus_systems_have_no_roots_and_trivial_weyl_group() {
        let t = RootSystem::torus(2);
        assert_eq!(t.rank(), 0);
        assert_eq!(t.torus_rank(), 2);
        assert!(positive_roots(&t).is_empty());
        assert_eq!(weyl_order(&t, &[]).unwrap(), int(1));
        assert_eq!(flag_poincare(&t, &[]).unwrap(), vec![int(1)]);
    }

    #[test]
    fn products_of_components_use_block_diagonal_cartan_data() {
        let rs = RootSystem::new(
            vec![
                DynkinComponent { kind: DynkinType::A, rank: 2 },
                DynkinComponent { kind: DynkinType::A, rank: 1 },
            ],
            1,
        )
        .unwrap();
        assert_eq!(rs.rank(), 3);
        assert_eq!(rs.character_rank(), 4);
        assert_eq!(positive_roots(&rs).len(), 4);
        assert_eq!(weyl_order(&rs, &[0, 1, 2]).unwrap(), int(12));
        assert_eq!(rs.cartan()[0][2], 0);
    }
}
