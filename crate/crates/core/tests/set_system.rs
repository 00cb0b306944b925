use proptest::prelude::*;

use vcfamily::io::{parse_system, parse_system_json, serialize_system, serialize_system_json};
use vcfamily::{GroundSet, SetSystem, Subset};

fn family(max_n: usize) -> impl Strategy<Value = SetSystem> {
    (1..=max_n).prop_flat_map(|n| {
        let full = (1u128 << n) - 1;
        prop::collection::btree_set(0..=full, 0..24).prop_map(move |masks| {
            let ground = GroundSet::new(n).unwrap();
            SetSystem::new(ground, masks.into_iter().map(Subset::from_mask).collect()).unwrap()
        })
    })
}

fn uniform_family(max_n: usize, max_d: usize) -> impl Strategy<Value = (SetSystem, usize)> {
    (1..=max_d)
        .prop_flat_map(move |d| (Just(d), d + 1..=max_n))
        .prop_flat_map(|(d, n)| {
            let all: Vec<Subset> = GroundSet::new(n).unwrap().k_subsets(d + 1).collect();
            let len = all.len();
            (Just(d), Just(n), prop::collection::vec(any::<bool>(), len), Just(all))
        })
        .prop_map(|(d, n, keep, all)| {
            let members = all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| s).collect();
            (SetSystem::new(GroundSet::new(n).unwrap(), members).unwrap(), d)
        })
}

fn naive_shattered(f: &SetSystem, s: Subset) -> bool {
    let elems = s.to_vec();
    (0u32..1 << elems.len()).all(|bits| {
        let t = Subset::from_elements(
            elems
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
        .unwrap();
        f.members().iter().any(|m| m.intersection(s) == t)
    })
}

fn naive_vc(f: &SetSystem) -> i32 {
    if f.is_empty() {
        return -1;
    }
    f.ground()
        .full()
        .submasks()
        .filter(|&s| naive_shattered(f, s))
        .map(|s| s.len() as i32)
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn shattering_matches_definition(f in family(7), mask in any::<u128>()) {
        let s = Subset::from_mask(mask & f.ground().full().mask());
        prop_assume!(s.len() <= 6);
        prop_assert_eq!(f.is_shattered(s), naive_shattered(&f, s));
        prop_assert_eq!(f.is_shattered(s), f.trace(s).len() == 1 << s.len());
    }

    #[test]
    fn vc_dimension_matches_brute_force(f in family(6)) {
        prop_assert_eq!(f.vc_dimension(), naive_vc(&f));
    }

    #[test]
    fn vc_dimension_at_most_log_size(f in family(8)) {
        prop_assume!(!f.is_empty());
        prop_assert!(1usize << f.vc_dimension() <= f.len());
    }

    #[test]
    fn vc_le_uniform_agrees((f, d) in uniform_family(10, 3)) {
        prop_assert_eq!(f.vc_le_uniform(d).unwrap(), f.vc_dimension() <= d as i32);
    }

    #[test]
    fn shadow_basics((f, d) in uniform_family(8, 3)) {
        prop_assume!(!f.is_empty());
        for k in 0..=d + 1 {
            prop_assert!(!f.shadow(k).is_empty());
        }
        prop_assert_eq!(f.shadow(d + 1), f.canonical());
        let shadow = f.shadow(d);
        for m in f.members() {
            for s in m.k_subsets(d) {
                prop_assert!(shadow.contains(s));
            }
        }
        prop_assert!(shadow.members().iter().all(|s| f.members().iter().any(|m| s.is_subset_of(*m))));
    }

    #[test]
    fn text_round_trip(f in family(10)) {
        let c = f.canonical();
        prop_assert_eq!(parse_system(&serialize_system(&c)).unwrap(), c.clone());
        prop_assert_eq!(parse_system(&serialize_system(&f)).unwrap(), f.clone());
        prop_assert_eq!(parse_system_json(&serialize_system_json(&c)).unwrap(), c);
    }
}

#[test]
fn large_ground_set_round_trip() {
    let g = GroundSet::new(128).unwrap();
    let f = SetSystem::new(
        g,
        vec![
            Subset::from_elements([1, 64, 65, 128]).unwrap(),
            Subset::EMPTY,
            Subset::singleton(127),
        ],
    )
    .unwrap();
    let text = serialize_system(&f);
    assert_eq!(text, "n 128\n1 64 65 128\n{}\n127\n");
    assert_eq!(parse_system(&text).unwrap(), f);
    assert_eq!(f.vc_dimension(), 1);
}

#[test]
fn parse_errors_name_the_line() {
    assert_eq!(
        parse_system("n 4\n1 2\n1 5\n").unwrap_err().to_string(),
        "element 5 outside ground set 1..=4"
    );
    for (text, line) in [
        ("n 4\n2 1\n", 2),
        ("# c\nn 4\n1 1\n", 3),
        ("n 4\n1 x\n", 2),
    ] {
        let e = parse_system(text).unwrap_err().to_string();
        assert!(e.contains(&format!("line {line}")), "{text:?}: {e}");
    }
    assert!(parse_system("n 3\n1 2\n1 2\n").is_err());
    assert!(parse_system("1 2\n").is_err());
    assert!(parse_system("n 129\n").is_err());
}
