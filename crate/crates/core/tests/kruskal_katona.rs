use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vcfamily::kk::{cascade_bound, gen_binomial, kk_lower_bound, solve_alpha};
use vcfamily::suite::random_uniform_family;
use vcfamily::{binomial, GroundSet, SetSystem, Subset};

#[test]
fn solve_alpha_is_strictly_increasing() {
    for k in 1..=5 {
        let mut prev = f64::NEG_INFINITY;
        for m in 1..=5000 {
            let a = solve_alpha(m, k);
            assert!(a > prev, "k={k} m={m}");
            prev = a;
        }
    }
}

#[test]
fn round_trip_error_up_to_a_million() {
    let mut worst: f64 = 0.0;
    for k in 2..=4 {
        for m in (1..=1_000_000u64).step_by(37).chain([999_999, 1_000_000]) {
            worst = worst.max((gen_binomial(solve_alpha(m, k), k) - m as f64).abs());
        }
    }
    assert!(worst <= 1e-9, "worst round-trip error {worst:e}");
}

proptest! {
    #[test]
    fn round_trip(m in 1u64..=1_000_000, k in 1u32..=6) {
        let a = solve_alpha(m, k);
        prop_assert!(a >= f64::from(k - 1));
        prop_assert!((gen_binomial(a, k) - m as f64).abs() <= 1e-9);
    }
}

#[test]
fn tight_at_complete_families() {
    for k in 2..=5u32 {
        for a in u64::from(k)..=30 {
            let m = u64::try_from(binomial(a, u64::from(k))).unwrap();
            let b = kk_lower_bound(m, k - 1);
            let want = binomial(a, u64::from(k - 1));
            assert_eq!(b.alpha, a as f64);
            assert_eq!(b.exact.map(|r| r.to_integer()), Some(want));
            assert!(b.exact.unwrap().is_integer());
            assert_eq!(cascade_bound(m, k), want);
        }
    }
}

#[test]
fn cascade_dominates_fractional_bound() {
    for k in 2..=4u32 {
        for m in 1..=10_000u64 {
            let frac = kk_lower_bound(m, k - 1).bound;
            let exact = cascade_bound(m, k);
            assert!(exact as f64 >= (frac - 1e-9).ceil(), "m={m} k={k}: {exact} < {frac}");
        }
    }
}

#[test]
fn cascade_equals_colex_prefix_shadow() {
    for n in 2..=9 {
        let g = GroundSet::new(n).unwrap();
        for k in 1..=n.min(5) {
            let colex: Vec<Subset> = g.k_subsets(k).collect();
            for m in 1..=colex.len() {
                let prefix = SetSystem::new(g, colex[..m].to_vec()).unwrap();
                assert_eq!(
                    prefix.shadow(k - 1).len() as u128,
                    cascade_bound(m as u64, k as u32),
                    "n={n} k={k} m={m}"
                );
            }
        }
    }
}

#[test]
fn cascade_is_minimum_shadow_on_small_grounds() {
    for (n, k) in [(5, 2), (5, 3), (6, 2)] {
        let g = GroundSet::new(n).unwrap();
        let all: Vec<Subset> = g.k_subsets(k).collect();
        let mut best = vec![usize::MAX; all.len() + 1];
        for bits in 1u32..1 << all.len() {
            let members: Vec<Subset> = (0..all.len()).filter(|i| bits >> i & 1 == 1).map(|i| all[i]).collect();
            let m = members.len();
            let s = SetSystem::new(g, members).unwrap().shadow(k - 1).len();
            best[m] = best[m].min(s);
        }
        for (m, &s) in best.iter().enumerate().skip(1) {
            assert_eq!(s as u128, cascade_bound(m as u64, k as u32), "n={n} k={k} m={m}");
        }
    }
}

#[test]
fn bounds_hold_on_random_three_uniform_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..300 {
        let n = 3 + i % 6;
        let f = random_uniform_family(&mut rng, n, 3).unwrap();
        let shadow = f.shadow(2).len();
        let m = f.len() as u64;
        assert!(shadow as f64 >= kk_lower_bound(m, 2).bound - 1e-9);
        assert!(shadow as u128 >= cascade_bound(m, 3));
    }
}
