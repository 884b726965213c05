mod common;

use common::{dihedral, oracle_colorings, promote};
use singq_core::affine::{build_affine, AffineSpec};
use singq_core::enumerate::{enumerate_models, SearchConfig};
use singq_core::links::braid::{closure, move_pairs, Letter};
use singq_core::links::{
    brute_force_count, count_colorings, count_colorings_with, count_with_rules, enumerate_colorings, parse_pd, present,
    resolve, ColorOptions, Mode, Rules, SingularDiagram,
};
use singq_core::structure::{derive_division, rmlt_orbits};
use singq_core::{Exec, OperationTable, Structure, TwoOpStructure};

const TREFOIL: &str = "X+ 1 4 2 5\nX+ 3 6 4 1\nX+ 5 2 6 3\n";
const SING_TREFOIL: &str = "S 1 4 2 5\nX+ 3 6 4 1\nX+ 5 2 6 3\n";

fn aff(n: u64, f: i64, g: i64) -> OperationTable {
    build_affine(&AffineSpec::cyclic(n, f, g, 0).unwrap()).unwrap().into_mul()
}

fn sq_battery() -> Vec<OperationTable> {
    let mut v: Vec<OperationTable> = (2..=4)
        .flat_map(|n| enumerate_models(&SearchConfig::new(n, "sq").up_to_iso(true)).unwrap().models)
        .map(|s| s.dot().clone())
        .collect();
    v.push(aff(5, 3, 3));
    v
}

fn knots(mode: Mode) -> Vec<SingularDiagram> {
    use Letter::{Sigma as S, SigmaInv as Si, Tau as T};
    let words: [(usize, Vec<Letter>); 5] = [
        (2, vec![S(1); 3]),
        (3, vec![S(1), Si(2), S(1), Si(2)]),
        (2, vec![S(1); 5]),
        (2, vec![T(1), S(1), S(1)]),
        (3, vec![T(1), S(2), Si(1), T(2)]),
    ];
    words.iter().map(|(k, w)| closure(*k, w, mode).unwrap()).collect()
}

/// `(X, *)` with `·` the left projection, an oriented singquandle whose
/// colorings are those of the positive resolution.
fn quandle_pair(q: &OperationTable) -> Structure {
    let left = OperationTable::from_fn(q.order(), |x, _| x).unwrap();
    Structure::Two(TwoOpStructure::new(left, q.clone()).unwrap())
}

#[test]
fn move_pairs_preserve_counts_in_both_modes() {
    let mut oriented: Vec<Structure> =
        enumerate_models(&SearchConfig::new(2, "oriented-sq").up_to_iso(true)).unwrap().models;
    oriented.extend(sq_battery().iter().map(promote));
    let unoriented: Vec<Structure> = sq_battery().into_iter().map(Structure::One).collect();
    assert!(oriented.len() >= 5 && unoriented.len() >= 5);
    for p in move_pairs() {
        for (mode, battery) in [(Mode::Oriented, &oriented), (Mode::Unoriented, &unoriented)] {
            let (a, b) = p.diagrams(mode).unwrap();
            assert_eq!(a.components(), b.components(), "{}", p.name);
            for s in battery {
                assert_eq!(
                    count_colorings(&a, s, mode).unwrap(),
                    count_colorings(&b, s, mode).unwrap(),
                    "{} {mode:?}",
                    p.name
                );
            }
        }
    }
}

#[test]
fn propagation_matches_brute_force() {
    let structures: Vec<Structure> = sq_battery().into_iter().map(Structure::One).collect();
    for mode in [Mode::Oriented, Mode::Unoriented] {
        let mut diagrams = knots(mode);
        for p in move_pairs() {
            let (a, b) = p.diagrams(mode).unwrap();
            diagrams.extend([a, b]);
        }
        for d in diagrams.iter().filter(|d| d.arcs().len() <= 8) {
            for s in structures.iter().filter(|s| s.order() <= 5) {
                let rules = Rules::new(s, mode, true).unwrap();
                let fast = count_with_rules(d, &rules, &[], false, Exec::Sequential);
                assert_eq!(fast, brute_force_count(d, &rules, false));
                let star = (mode == Mode::Oriented).then(|| match promote(s.dot()) {
                    Structure::Two(t) => t.star().clone(),
                    Structure::One(_) => unreachable!(),
                });
                assert_eq!(fast, oracle_colorings(d, s.dot(), star.as_ref()), "{d}");
                let surj = count_with_rules(d, &rules, &[], true, Exec::Parallel);
                assert_eq!(surj, brute_force_count(d, &rules, true));
            }
        }
    }
}

#[test]
fn colors_on_a_component_stay_in_one_structure_component() {
    let structures = [dihedral(3), dihedral(4), dihedral(6), aff(5, 3, 3), OperationTable::projection(3).unwrap()];
    for mode in [Mode::Oriented, Mode::Unoriented] {
        for d in knots(mode).into_iter().chain([closure(2, &[Letter::Sigma(1), Letter::Sigma(1)], mode).unwrap()]) {
            let arcs = d.component_arcs();
            for t in &structures {
                let s = Structure::One(t.clone());
                let Ok(rules) = Rules::new(&s, mode, false) else { continue };
                if mode == Mode::Unoriented {
                    assert_eq!(rules.components(), rmlt_orbits(&derive_division(t).unwrap()));
                }
                let block = |c: usize| rules.components().iter().position(|b| b.contains(&c)).unwrap();
                let opts = ColorOptions { check_suite: false, ..ColorOptions::default() };
                for col in enumerate_colorings(&d, &s, mode, &opts).unwrap() {
                    for comp in &arcs {
                        let blocks: Vec<usize> = comp.iter().map(|l| block(col[l])).collect();
                        assert!(blocks.windows(2).all(|w| w[0] == w[1]), "{d}");
                    }
                }
            }
        }
    }
}

#[test]
fn two_colors_at_a_crossing_fix_a_knot_coloring() {
    for mode in [Mode::Oriented, Mode::Unoriented] {
        for d in knots(mode) {
            assert_eq!(d.components(), 1);
            let structures = match mode {
                Mode::Oriented => vec![quandle_pair(&dihedral(3)), quandle_pair(&dihedral(5)), promote(&aff(5, 3, 3))],
                Mode::Unoriented => sq_battery().into_iter().map(Structure::One).collect(),
            };
            for s in structures {
                let rules = Rules::new(&s, mode, true).unwrap();
                for col in enumerate_colorings(&d, &s, mode, &ColorOptions::default()).unwrap() {
                    for v in d.vertices() {
                        let fixed = [(v.arcs[0], col[&v.arcs[0]]), (v.arcs[1], col[&v.arcs[1]])];
                        assert_eq!(count_with_rules(&d, &rules, &fixed, false, Exec::Sequential), 1, "{d}");
                    }
                }
            }
        }
    }
}

#[test]
fn quotient_constructions_count_resolutions() {
    let d = parse_pd(SING_TREFOIL).unwrap();
    let (plus, minus) = (resolve(&d, 1).unwrap(), resolve(&d, -1).unwrap());
    for q in [dihedral(3), dihedral(5), aff(4, 1, 0), aff(7, 3, 5)] {
        let div = common::div(&q);
        let ii = quandle_pair(&q);
        let iii = Structure::Two(TwoOpStructure::new(div, q.clone()).unwrap());
        assert_eq!(count_colorings(&d, &ii, Mode::Oriented).unwrap(), oracle_colorings(&plus, &q, Some(&q)));
        assert_eq!(count_colorings(&d, &iii, Mode::Oriented).unwrap(), oracle_colorings(&minus, &q, Some(&q)));
    }
}

#[test]
fn unoriented_singular_vertex_is_rotation_invariant() {
    let d = parse_pd("S 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n").unwrap();
    let r = parse_pd("S 5 1 4 2\nX 3 6 4 1\nX 5 2 6 3\n").unwrap();
    for t in sq_battery() {
        let s = Structure::One(t);
        assert_eq!(
            count_colorings(&d, &s, Mode::Unoriented).unwrap(),
            count_colorings(&r, &s, Mode::Unoriented).unwrap()
        );
    }
}

#[test]
fn trefoil_counts() {
    let t = parse_pd(TREFOIL).unwrap();
    assert_eq!(count_colorings(&t, &quandle_pair(&dihedral(3)), Mode::Oriented).unwrap(), 9);
    assert_eq!(count_colorings(&t, &quandle_pair(&dihedral(5)), Mode::Oriented).unwrap(), 5);
    let surj = ColorOptions { surjective: true, ..ColorOptions::default() };
    assert_eq!(count_colorings_with(&t, &quandle_pair(&dihedral(3)), Mode::Oriented, &surj).unwrap(), 6);
    assert_eq!(present(&t).generators.len(), 3);
}
