use vcfamily::cert::find_witnesses;
use vcfamily::construct::{ak_candidate, full_family, hamming_ball, star, star_plus_block};
use vcfamily::search::{max_family_search, Optimality, SearchMode, SearchOptions};
use vcfamily::structure::{impossibility_audit, verify_structure};
use vcfamily::subset::binomial_prefix_sum;
use vcfamily::{binomial, GroundSet, SetSystem, Subset};

fn c(n: usize, k: usize) -> u128 {
    binomial(n as u64, k as u64)
}

fn exact(seed: Option<u64>) -> SearchOptions {
    SearchOptions {
        order_seed: seed,
        ..SearchOptions::default()
    }
}

/// Largest VC-bounded subfamily of `C([n], d+1)` by plain enumeration.
fn brute_force_max(n: usize, d: usize) -> usize {
    let g = GroundSet::new(n).unwrap();
    let all: Vec<Subset> = g.k_subsets(d + 1).collect();
    assert!(all.len() <= 16);
    (0u32..1 << all.len())
        .filter(|bits| bits.count_ones() as usize > 0)
        .filter_map(|bits| {
            let members: Vec<Subset> = (0..all.len()).filter(|i| bits >> i & 1 == 1).map(|i| all[i]).collect();
            let f = SetSystem::new(g, members).unwrap();
            (f.vc_dimension() <= d as i32).then_some(f.len())
        })
        .max()
        .unwrap_or(0)
}

#[test]
fn construction_sizes() {
    for d in 1..=4 {
        for n in d + 1..=11 {
            assert_eq!(star(n, d).unwrap().len() as u128, c(n - 1, d));
            if d >= 2 && n >= 2 * d + 2 {
                let ak = ak_candidate(n, d).unwrap();
                assert_eq!(ak.len() as u128, c(n - 1, d) + c(n - 4, d - 2));
                assert!(ak.is_uniform(d + 1));
            }
        }
        assert_eq!(full_family(2 * d + 1, d).unwrap().len() as u128, c(2 * d + 1, d));
    }
    for n in 1..=9 {
        for d in 0..=n {
            assert_eq!(
                hamming_ball(n, d).unwrap().len() as u128,
                binomial_prefix_sum(n as u64, d as u64)
            );
        }
    }
}

#[test]
fn ak_candidate_is_vc_bounded() {
    for d in 2..=4 {
        for n in 2 * d + 2..=2 * d + 4 {
            let f = ak_candidate(n, d).unwrap();
            assert!(f.vc_le_uniform(d).unwrap(), "n={n} d={d}");
            assert!(f.len() as u128 > c(n - 1, d));
            assert!((f.len() as u128) < c(n, d));
        }
    }
    assert_eq!(ak_candidate(6, 2).unwrap().vc_dimension(), 2);
}

#[test]
fn naive_block_shape_shatters() {
    let f = star_plus_block(6, 2).unwrap();
    assert!(f.is_shattered(Subset::from_elements([2, 3, 4]).unwrap()));
}

#[test]
fn exact_search_matches_enumeration() {
    for (n, d) in [(2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (4, 2), (5, 2), (5, 3)] {
        let r = max_family_search(n, d, &exact(None)).unwrap();
        assert_eq!(r.optimality, Optimality::ProvedOptimal);
        assert_eq!(r.best_size(), brute_force_max(n, d), "n={n} d={d}");
    }
}

#[test]
fn exact_search_is_order_invariant() {
    for (n, d) in [(5, 2), (6, 2), (7, 3), (6, 1)] {
        let base = max_family_search(n, d, &exact(None)).unwrap();
        assert!(base.is_proved_optimal());
        for seed in [1, 2, 3] {
            let r = max_family_search(n, d, &exact(Some(seed))).unwrap();
            assert!(r.is_proved_optimal());
            assert_eq!(r.best_size(), base.best_size(), "n={n} d={d} seed={seed}");
            assert!(r.family.vc_le_uniform(d).unwrap());
        }
    }
}

#[test]
fn exact_search_against_the_bound() {
    for d in 1..=3 {
        let n = 2 * d + 1;
        let r = max_family_search(n, d, &exact(None)).unwrap();
        assert!(r.is_proved_optimal());
        assert_eq!(r.best_size() as u128, c(n, d));
    }
    for (n, d) in [(6, 2), (7, 2)] {
        let r = max_family_search(n, d, &exact(None)).unwrap();
        assert!(r.is_proved_optimal());
        assert!((r.best_size() as u128) < c(n, d));
        assert!(r.best_size() >= ak_candidate(n, d).unwrap().len());
    }
}

#[test]
fn heuristics_return_valid_families() {
    for (n, d) in [(6, 2), (8, 2), (8, 3), (10, 3)] {
        let mut sizes = Vec::new();
        for mode in [SearchMode::Greedy, SearchMode::Local] {
            let opts = SearchOptions {
                mode,
                budget: 200_000,
                ..SearchOptions::default()
            };
            let r = max_family_search(n, d, &opts).unwrap();
            assert_eq!(r.optimality, Optimality::LowerBoundOnly);
            assert!(r.family.vc_le_uniform(d).unwrap());
            assert!(r.family.len() <= r.family.shadow(d).len());
            assert!(r.best_size() as u128 <= c(n, d));
            sizes.push(r.best_size());
        }
        assert!(sizes[1] >= sizes[0], "n={n} d={d}");
    }
}

#[test]
fn full_family_structure_is_perfect() {
    for d in 1..=3 {
        let f = full_family(2 * d + 1, d).unwrap();
        let w = find_witnesses(&f, d).unwrap();
        let r = verify_structure(&f, &w).unwrap();
        assert!(r.property1 && r.property2);
        assert!(r.double_count_holds());
    }
}

#[test]
fn audit_confirms_over_the_grid() {
    for d in 2..=14 {
        for n in 2 * d + 2..=30 {
            let a = impossibility_audit(n, d).unwrap();
            assert!(a.contradiction, "n={n} d={d}");
            assert!(a.final_gap < 0);
            assert!(a.gap_identity_holds);
            assert!(!a.alpha_reaches_n_minus_1);
            assert_eq!(a.final_gap, c(n - 1, d) as i128 - c(n, d) as i128);
        }
    }
}
