//! Integer normal forms (Hermite, Smith), integral kernels and solvers, and
//! exact Gaussian elimination over the rationals.

use crate::{Int, Rat, RatMatrix, RatVec};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Identity matrix.
pub fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

/// Integer matrix product.
pub fn mat_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

fn transpose(m: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U·M`,
/// `U` unimodular, pivots positive, entries above each pivot reduced into
/// `[0, pivot)`, zero rows at the bottom. `H` depends only on the row
/// lattice of `M`.
pub fn hermite_normal_form(m: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut h: Vec<Vec<Int>> = m.to_vec();
    let mut u = identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !h[i][c].is_zero()) else { continue };
        h.swap(r, p);
        u.swap(r, p);
        // Clear below the pivot with unimodular 2x2 gcd combinations.
        for i in (r + 1)..rows {
            if h[i][c].is_zero() {
                continue;
            }
            let a = h[r][c].clone();
            let b = h[i][c].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (pa, pb) = (&a / &g, &b / &g);
            for m in [&mut h, &mut u] {
                let (top, bot) = {
                    let (lo, hi) = m.split_at_mut(i);
                    (&mut lo[r], &mut hi[0])
                };
                for k in 0..top.len() {
                    let s = &x * &top[k] + &y * &bot[k];
                    let t = -&pb * &top[k] + &pa * &bot[k];
                    top[k] = s;
                    bot[k] = t;
                }
            }
        }
        if h[r][c].is_negative() {
            for v in h[r].iter_mut() {
                *v = -v.clone();
            }
            for v in u[r].iter_mut() {
                *v = -v.clone();
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if q.is_zero() {
                continue;
            }
            for k in 0..cols {
                let s = &h[r][k] * &q;
                h[i][k] -= s;
            }
            for k in 0..rows {
                let s = &u[r][k] * &q;
                u[i][k] -= s;
            }
        }
        r += 1;
    }
    (h, u)
}

/// Column echelon form: returns `(E, V)` with `E = M·V`, `V` unimodular,
/// zero columns of `E` on the right.
pub fn column_echelon(m: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let (ht, ut) = hermite_normal_form(&transpose(m));
    (transpose(&ht), transpose(&ut))
}

/// Basis of the integral kernel `{x ∈ ℤ^n : M·x = 0}` (column-vector
/// convention). The basis is automatically saturated.
pub fn integral_kernel(m: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if m.is_empty() {
        return Vec::new();
    }
    let (e, v) = column_echelon(m);
    let n = m[0].len();
    (0..n)
        .filter(|&j| e.iter().all(|row| row[j].is_zero()))
        .map(|j| v.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Solves `A·x = b` over the integers, if possible.
pub fn solve_integral_linear(a: &[Vec<Int>], b: &[Int]) -> Option<Vec<Int>> {
    let rows = a.len();
    debug_assert_eq!(rows, b.len());
    if rows == 0 {
        return Some(Vec::new());
    }
    let n = a[0].len();
    let (e, v) = column_echelon(a);
    let mut residual: Vec<Int> = b.to_vec();
    let mut y = vec![Int::zero(); n];
    let pivot_row = |col: &usize| e.iter().position(|row| !row[*col].is_zero());
    let mut col = 0;
    for i in 0..rows {
        if residual[i].is_zero() {
            continue;
        }
        // Advance to the column whose pivot sits in row i, if any.
        while col < n && pivot_row(&col).map_or(true, |p| p < i) {
            col += 1;
        }
        let p = if col < n { pivot_row(&col) } else { None };
        if p != Some(i) {
            return None;
        }
        let (q, r) = residual[i].div_rem(&e[i][col]);
        if !r.is_zero() {
            return None;
        }
        for k in 0..rows {
            let s = &e[k][col] * &q;
            residual[k] -= s;
        }
        y[col] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some((0..n).map(|i| (0..n).map(|j| &v[i][j] * &y[j]).sum()).collect())
}

/// Smith normal form data: `u · m · v = d` with `u`, `v` unimodular and `d`
/// diagonal with non-negative entries satisfying the divisibility chain.
pub struct Snf {
    pub d: Vec<Vec<Int>>,
    pub u: Vec<Vec<Int>>,
    pub u_inv: Vec<Vec<Int>>,
    pub v: Vec<Vec<Int>>,
    pub v_inv: Vec<Vec<Int>>,
}

impl Snf {
    /// The diagonal entries, padded with zeros to min(rows, cols).
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.d.len().min(if self.d.is_empty() { 0 } else { self.d[0].len() });
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

/// Computes the Smith normal form with all four transformation matrices.
pub fn smith_normal_form(m: &[Vec<Int>]) -> Snf {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut d: Vec<Vec<Int>> = m.to_vec();
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    // Elementary operations, tracked on the transforms and their inverses.
    macro_rules! row_swap {
        ($i:expr, $k:expr) => {{
            d.swap($i, $k);
            u.swap($i, $k);
            for r in u_inv.iter_mut() {
                r.swap($i, $k);
            }
        }};
    }
    macro_rules! col_swap {
        ($j:expr, $k:expr) => {{
            for r in d.iter_mut() {
                r.swap($j, $k);
            }
            for r in v.iter_mut() {
                r.swap($j, $k);
            }
            v_inv.swap($j, $k);
        }};
    }
    macro_rules! row_sub {
        // row i -= q * row k
        ($i:expr, $k:expr, $q:expr) => {{
            let q = $q.clone();
            for c in 0..cols {
                let s = &d[$k][c] * &q;
                d[$i][c] -= s;
            }
            for c in 0..rows {
                let s = &u[$k][c] * &q;
                u[$i][c] -= s;
            }
            for r in 0..rows {
                let s = &u_inv[r][$i] * &q;
                u_inv[r][$k] += s;
            }
        }};
    }
    macro_rules! col_sub {
        // col j -= q * col k
        ($j:expr, $k:expr, $q:expr) => {{
            let q = $q.clone();
            for r in 0..rows {
                let s = &d[r][$k] * &q;
                d[r][$j] -= s;
            }
            for r in 0..cols {
                let s = &v[r][$k] * &q;
                v[r][$j] -= s;
            }
            for c in 0..cols {
                let s = &v_inv[$j][c] * &q;
                v_inv[$k][c] += s;
            }
        }};
    }
    macro_rules! row_negate {
        ($i:expr) => {{
            for x in d[$i].iter_mut() {
                *x = -x.clone();
            }
            for x in u[$i].iter_mut() {
                *x = -x.clone();
            }
            for r in u_inv.iter_mut() {
                r[$i] = -r[$i].clone();
            }
        }};
    }

    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // Smallest non-zero entry of the trailing submatrix into (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && best
                            .map(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                row_swap!(t, bi);
            }
            if bj != t {
                col_swap!(t, bj);
            }
            let mut clean = true;
            for i in (t + 1)..rows {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    row_sub!(i, t, q);
                    if !d[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in (t + 1)..cols {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    col_sub!(j, t, q);
                    if !d[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if d[t][t].is_negative() {
            row_negate!(t);
        }
    }
    // Enforce the divisibility chain d_t | d_{t+1}.
    loop {
        let mut fixed = true;
        for t in 0..k.saturating_sub(1) {
            let (a, b) = (d[t][t].clone(), d[t + 1][t + 1].clone());
            if !a.is_zero() && !(&b % &a).is_zero() {
                fixed = false;
                // Fold d_{t+1} into column t, then re-diagonalize the 2x2 block.
                let minus_one = -Int::one();
                col_sub!(t, t + 1, minus_one);
                loop {
                    if d[t + 1][t].is_zero() {
                        break;
                    }
                    let q = d[t][t].div_floor(&d[t + 1][t]);
                    row_sub!(t, t + 1, q);
                    if d[t][t].is_zero() {
                        row_swap!(t, t + 1);
                    } else {
                        let q2 = d[t + 1][t].div_floor(&d[t][t]);
                        row_sub!(t + 1, t, q2);
                    }
                }
                let q = d[t][t + 1].div_floor(&d[t][t]);
                col_sub!(t + 1, t, q);
                if d[t][t].is_negative() {
                    row_negate!(t);
                }
                if d[t + 1][t + 1].is_negative() {
                    row_negate!(t + 1);
                }
            }
        }
        if fixed {
            break;
        }
    }
    Snf { d, u, u_inv, v, v_inv }
}

/// Exact determinant of a square integer matrix.
pub fn det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a: RatMatrix = m
        .iter()
        .map(|row| row.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let mut sign = Int::one();
    let mut prod = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Int::zero() };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        prod *= a[c][c].clone();
        for i in (c + 1)..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let s = &a[c][j] * &f;
                a[i][j] -= s;
            }
        }
    }
    let r = prod * Rat::from_integer(sign);
    debug_assert!(r.denom().is_one());
    r.numer().clone()
}

/// Rank of a rational matrix.
pub fn rank(m: &RatMatrix) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in (r + 1)..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for j in c..cols {
                let s = &a[r][j] * &f;
                a[i][j] -= s;
            }
        }
        r += 1;
    }
    r
}

/// Solves `A·x = b` exactly over the rationals. Returns a particular
/// solution together with a basis of the kernel, or `None` if infeasible.
pub fn solve_rational_linear(a: &RatMatrix, b: &RatVec) -> Option<(RatVec, Vec<RatVec>)> {
    let rows = a.len();
    debug_assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    // Reduced row echelon form of the augmented matrix.
    let mut m: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bv)| {
            let mut r = row.clone();
            r.push(bv.clone());
            r
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for j in c..=cols {
            m[r][j] = &m[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let s = &m[r][j] * &f;
                    m[i][j] -= s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // Inconsistent row: 0 = nonzero.
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut k = vec![Rat::zero(); cols];
            k[fc] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                k[pc] = -m[row][fc].clone();
            }
            k
        })
        .collect();
    Some((x, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, veci, vecr};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| veci(r)).collect()
    }

    fn rmat(rows: &[&[i64]]) -> RatMatrix {
        rows.iter().map(|r| vecr(r)).collect()
    }

    #[test]
    fn hnf_identity_and_diagonal_fixed() {
        let (h, u) = hermite_normal_form(&mat(&[&[1, 0], &[0, 1]]));
        assert_eq!(h, mat(&[&[1, 0], &[0, 1]]));
        assert_eq!(u, mat(&[&[1, 0], &[0, 1]]));
        let m = mat(&[&[2, 0], &[0, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, m);
        assert_eq!(u, identity(2));
    }

    #[test]
    fn hnf_factorization_holds() {
        let m = mat(&[&[4, -2, 7], &[0, 6, 1], &[2, 2, 2]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(mat_mul(&u, &m), h);
        assert_eq!(det(&u).abs(), int(1));
    }

    #[test]
    fn hnf_depends_only_on_row_lattice() {
        // [[1,6],[0,0]] completed by [0,1] spans the full lattice.
        let (h1, _) = hermite_normal_form(&mat(&[&[1, 6], &[0, 1]]));
        assert_eq!(h1, identity(2));
        let (h2, _) = hermite_normal_form(&mat(&[&[3, 19], &[1, 6]]));
        assert_eq!(h2, identity(2));
        // Same row lattice under a unimodular change of generators.
        let m = mat(&[&[2, 1, 5], &[0, 3, 4]]);
        let g = mat(&[&[1, 1], &[2, 3]]);
        let m2 = mat_mul(&g, &m);
        assert_eq!(hermite_normal_form(&m).0, hermite_normal_form(&m2).0);
    }

    #[test]
    fn kernel_is_saturated() {
        // Kernel of (1, 2) is spanned by (2, -1), not (4, -2).
        let k = integral_kernel(&mat(&[&[1, 2]]));
        assert_eq!(k.len(), 1);
        let g = crate::content(&k[0]);
        assert_eq!(g, int(1));
        assert!((&k[0][0] + &k[0][1] * int(2)).is_zero() || (&k[0][0] + &k[0][1] * int(2)).is_zero());
    }

    #[test]
    fn integral_solve_catches_divisibility() {
        // 2x = 3 has no integral solution.
        assert!(solve_integral_linear(&mat(&[&[2]]), &veci(&[3])).is_none());
        let x = solve_integral_linear(&mat(&[&[2]]), &veci(&[6])).unwrap();
        assert_eq!(x, veci(&[3]));
        // Underdetermined system with integral solution.
        let a = mat(&[&[2, 3]]);
        let x = solve_integral_linear(&a, &veci(&[1])).unwrap();
        assert_eq!(&a[0][0] * &x[0] + &a[0][1] * &x[1], int(1));
    }

    #[test]
    fn snf_factorization_and_chain() {
        let m = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let s = smith_normal_form(&m);
        assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d);
        assert_eq!(mat_mul(&s.u, &s.u_inv), identity(3));
        assert_eq!(mat_mul(&s.v, &s.v_inv), identity(3));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        // Product of invariants equals |det|.
        let prod: Int = diag.iter().product();
        assert_eq!(prod, det(&m).abs());
    }

    #[test]
    fn rational_solve_matches_frozen_example() {
        let a = rmat(&[&[1, 0], &[1, 6]]);
        let b = vec![rat(-5, 1), rat(-5, 1)];
        let (x, kernel) = solve_rational_linear(&a, &b).unwrap();
        assert_eq!(x, vec![rat(-5, 1), rat(0, 1)]);
        assert!(kernel.is_empty());
    }

    #[test]
    fn rational_solve_identity_and_infeasible() {
        let a = rmat(&[&[1, 0], &[0, 1]]);
        let b = vec![rat(7, 2), rat(-3, 5)];
        let (x, k) = solve_rational_linear(&a, &b).unwrap();
        assert_eq!(x, b);
        assert!(k.is_empty());
        let bad = rmat(&[&[1, 1], &[1, 1]]);
        assert!(solve_rational_linear(&bad, &vec![rat(0, 1), rat(1, 1)]).is_none());
    }

    #[test]
    fn rational_solve_kernel_spans_solutions() {
        let a = rmat(&[&[1, 2, 3]]);
        let b = vec![rat(6, 1)];
        let (x, kernel) = solve_rational_linear(&a, &b).unwrap();
        assert_eq!(kernel.len(), 2);
        for k in &kernel {
            let xs: Vec<Rat> = x.iter().zip(k).map(|(xi, ki)| xi + ki).collect();
            assert_eq!(crate::dot_rat(&a[0], &xs), rat(6, 1));
        }
    }
}
