//! Cross-checks of the root-system tables over all classical types of small
//! rank: root counts, descent closure, parabolic positivity, and the product
//! identity between flag Poincaré polynomials and Weyl orders.

use exact_math::Int;
use rootdata::{a_alpha, flag_poincare, positive_roots, weyl_order, DynkinComponent, DynkinType, RootSystem};

fn small_systems() -> Vec<(RootSystem, usize)> {
    let mut out = Vec::new();
    for (kind, lo) in [
        (DynkinType::A, 1),
        (DynkinType::B, 2),
        (DynkinType::C, 2),
        (DynkinType::D, 2),
    ] {
        for rank in lo..=5 {
            let rs = RootSystem::new(vec![DynkinComponent { kind, rank }], 0).unwrap();
            out.push((rs, rank));
        }
    }
    out
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1 << n)).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}

#[test]
fn root_counts_follow_the_closed_formulas() {
    for (rs, rank) in small_systems() {
        let expected = match rs.components()[0].kind {
            DynkinType::A => rank * (rank + 1) / 2,
            DynkinType::B | DynkinType::C => rank * rank,
            DynkinType::D => rank * (rank - 1),
            _ => unreachable!(),
        };
        assert_eq!(positive_roots(&rs).len(), expected);
    }
}

#[test]
fn non_simple_roots_stay_positive_after_subtracting_some_simple_root() {
    for (rs, _) in small_systems() {
        let roots = positive_roots(&rs);
        for beta in roots {
            if beta.iter().sum::<i64>() == 1 {
                continue;
            }
            let descends = (0..rs.rank()).any(|i| {
                let mut lower = beta.clone();
                lower[i] -= 1;
                lower.iter().all(|&c| c >= 0) && roots.contains(&lower)
            });
            assert!(descends);
        }
    }
}

#[test]
fn parabolic_multiplicities_are_strictly_positive() {
    for (rs, rank) in small_systems() {
        for parabolic in subsets(rank) {
            for alpha in 0..rank {
                if parabolic.contains(&alpha) {
                    continue;
                }
                assert!(a_alpha(&rs, &parabolic, alpha).unwrap() > 0);
            }
        }
    }
}

#[test]
fn poincare_at_one_times_parabolic_order_gives_the_full_order() {
    for (rs, rank) in small_systems() {
        let full: Vec<usize> = (0..rank).collect();
        let order = weyl_order(&rs, &full).unwrap();
        for subset in subsets(rank) {
            let value: Int = flag_poincare(&rs, &subset).unwrap().iter().sum();
            assert_eq!(value * weyl_order(&rs, &subset).unwrap(), order);
        }
    }
}
