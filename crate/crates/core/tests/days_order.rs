use proptest::prelude::*;
use surreal_core::days::{
    comp_holds, count_valid_pairs, day_with_relation, enumerate_day, games, leq_graph, new_canonical_values, no_order,
    OrderRelation,
};
use surreal_core::gameform::{Context, FormId};

fn relation_from_mask(universe: &[FormId], mask: u64) -> OrderRelation {
    let n = universe.len();
    (0..n * n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (universe[i / n], universe[i % n]))
        .collect()
}

fn brute_valid_pairs(n: usize) -> u64 {
    let all = 1u32 << n;
    let mut count = 0;
    for l in 0..all {
        // every element of R must exceed the largest element of L
        let floor = if l == 0 { 0 } else { 32 - l.leading_zeros() };
        for r in 0..all {
            let min_r = if r == 0 { u32::MAX } else { r.trailing_zeros() + 1 };
            if r == 0 || min_r > floor {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn pair_counts_match_subset_enumeration() {
    for n in 1..=12 {
        let formula = (n as u64 + 2) << (n - 1);
        assert_eq!(count_valid_pairs(n).unwrap(), formula, "n = {n}");
        assert_eq!(brute_valid_pairs(n), formula, "n = {n}");
    }
}

#[test]
fn new_values_per_day_double() {
    let mut seen = std::collections::BTreeSet::new();
    for n in 1..=12 {
        let v = new_canonical_values(n).unwrap();
        assert_eq!(v.len(), 1 << n);
        for d in v {
            assert_eq!(d.birthday(), n.into());
            assert!(seen.insert(d));
        }
    }
}

#[test]
fn constructed_order_is_the_comparison() {
    let mut ctx = Context::new();
    for n in 0..=2 {
        let ord = no_order(&mut ctx, n).unwrap();
        let day = day_with_relation(&mut ctx, &ord, n).unwrap();
        assert_eq!(ord, leq_graph(&mut ctx, &day), "day {n}");
    }
}

#[test]
fn reports_for_first_days() {
    let mut ctx = Context::new();
    let r1 = enumerate_day(&mut ctx, 1).unwrap();
    assert_eq!((r1.candidate_count, r1.number_count), (4, 3));
    let r2 = enumerate_day(&mut ctx, 2).unwrap();
    assert_eq!((r2.candidate_count, r2.number_count), (64, 20));
    let new: Vec<String> = r2.new_class_values.iter().map(ToString::to_string).collect();
    assert_eq!(new, ["-2", "-1/2", "1/2", "2"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn days_grow_under_any_relation(mask in any::<u64>()) {
        let mut ctx = Context::new();
        let universe = games(&mut ctx, 1).unwrap();
        let ord = relation_from_mask(&universe, mask);
        let days: Vec<Vec<FormId>> = (0..=2).map(|a| day_with_relation(&mut ctx, &ord, a).unwrap()).collect();
        for a in 0..=2 {
            for b in a..=2 {
                prop_assert!(days[a].iter().all(|f| days[b].contains(f)));
            }
        }
    }

    #[test]
    fn rejected_candidates_stay_rejected(mask in any::<u64>()) {
        let mut ctx = Context::new();
        let universe = games(&mut ctx, 1).unwrap();
        let ord = relation_from_mask(&universe, mask);
        for a in 0..=2 {
            let day = day_with_relation(&mut ctx, &ord, a).unwrap();
            for x in games(&mut ctx, a).unwrap() {
                if day.contains(&x) {
                    continue;
                }
                for b in a..=2 {
                    prop_assert!(!day_with_relation(&mut ctx, &ord, b).unwrap().contains(&x));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn perturbed_order_breaks_comparison(i in 0usize..400) {
        let mut ctx = Context::new();
        let ord = no_order(&mut ctx, 2).unwrap();
        let day = day_with_relation(&mut ctx, &ord, 2).unwrap();
        prop_assert_eq!(day.len(), 20);
        let all: Vec<(FormId, FormId)> = day.iter().flat_map(|&x| day.iter().map(move |&y| (x, y))).collect();
        prop_assert!(comp_holds(&ctx, &ord, &all));
        let (x, y) = all[i];
        let mut bad = ord.clone();
        if !bad.remove(x, y) {
            bad.insert(x, y);
        }
        prop_assert!(!comp_holds(&ctx, &bad, &all));
    }
}
