mod common;

use itertools::Itertools;
use singq_core::enumerate::{enumerate_models, SearchConfig};
use singq_core::structure::{find_isomorphism, is_lex_least};
use singq_core::{Error, Exec, Structure};
use std::collections::BTreeSet;

/// Least relabelling of `s`, by brute force over all permutations.
fn canonical(s: &Structure) -> Vec<u16> {
    (0..s.order()).permutations(s.order()).map(|p| s.relabel(&p).key()).min().unwrap()
}

fn automorphisms(s: &Structure) -> usize {
    (0..s.order()).permutations(s.order()).filter(|p| s.relabel(p) == *s).count()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn quandle_classes_match_the_known_sequence() {
    // Isomorphism classes of quandles of order 1..5.
    for (n, expected) in [(1, 1), (2, 1), (3, 3), (4, 7), (5, 22)] {
        let s = enumerate_models(&SearchConfig::new(n, "quandle").up_to_iso(true)).unwrap();
        assert_eq!(s.count, expected, "order {n}");
    }
}

#[test]
fn iso_stream_is_one_lex_least_member_per_orbit() {
    for (suite, n) in [("sq-oneop", 4), ("s-rq", 4), ("quandle", 4), ("oriented-sq", 2), ("oriented-sq-min", 2)] {
        let labelled = enumerate_models(&SearchConfig::new(n, suite)).unwrap().models;
        let classes = enumerate_models(&SearchConfig::new(n, suite).up_to_iso(true)).unwrap().models;
        let orbits: BTreeSet<Vec<u16>> = labelled.iter().map(canonical).collect();
        assert_eq!(classes.len(), orbits.len(), "{suite}/{n}");
        assert!(classes.iter().all(is_lex_least));
        assert!(classes.iter().all(|c| c.key() == canonical(c)));
        let sizes: usize = classes.iter().map(|c| factorial(n) / automorphisms(c)).sum();
        assert_eq!(sizes, labelled.len(), "{suite}/{n}");
        for (a, b) in classes.iter().tuple_combinations() {
            assert_eq!(find_isomorphism(a, b).unwrap(), None);
        }
    }
}

#[test]
fn order_five_orbit_sizes_add_up() {
    let labelled = enumerate_models(&SearchConfig::new(5, "sq-oneop").count_only(true)).unwrap().count;
    let classes = enumerate_models(&SearchConfig::new(5, "sq-oneop").up_to_iso(true)).unwrap().models;
    let sizes: usize = classes.iter().map(|c| 120 / automorphisms(c)).sum();
    assert_eq!(sizes, labelled);
}

#[test]
fn counting_agrees_with_collecting() {
    for (suite, n) in [("sq", 4), ("rq", 3), ("oriented-sq-R", 2)] {
        for iso in [false, true] {
            let full = enumerate_models(&SearchConfig::new(n, suite).up_to_iso(iso)).unwrap();
            let count = enumerate_models(&SearchConfig::new(n, suite).up_to_iso(iso).count_only(true)).unwrap();
            assert_eq!(full.count, full.models.len());
            assert_eq!(count.count, full.count);
        }
    }
}

#[test]
fn execution_mode_does_not_change_the_stream() {
    for (suite, n) in [("oriented-sq-min", 3), ("sq-oneop", 4)] {
        let seq = enumerate_models(&SearchConfig::new(n, suite).exec(Exec::Sequential)).unwrap();
        let par = enumerate_models(&SearchConfig::new(n, suite).exec(Exec::Parallel)).unwrap();
        assert_eq!(seq.models, par.models);
        assert_eq!(seq.count, par.count);
    }
}

#[test]
fn every_model_passes_its_suite() {
    use singq_core::axioms::compiled_suite;
    for suite in ["sq-def", "sq-prime", "oriented-sq"] {
        let n = if suite.starts_with("oriented") { 3 } else { 4 };
        let c = compiled_suite(suite).unwrap();
        for m in enumerate_models(&SearchConfig::new(n, suite).up_to_iso(true)).unwrap().models {
            assert!(c.holds(&m).unwrap());
        }
    }
}

#[test]
fn budgets_are_reported() {
    let r = enumerate_models(&SearchConfig::new(5, "rq").node_budget(10_000));
    assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    let r = enumerate_models(&SearchConfig::new(9, "quandle").node_budget(u64::MAX));
    assert!(matches!(r, Err(Error::BudgetExceeded(_))));
}
