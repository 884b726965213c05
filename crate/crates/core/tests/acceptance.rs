//! Acceptance gate. Prints one PASS/FAIL line per criterion, then checks the
//! outcome against the expected table below.

// Tolerances are compared with `<=` even where they are pinned at zero.
#![allow(clippy::absurd_extreme_comparisons)]

mod common;

use common::{all_rqs, all_tables, div, holds2, oracle_colorings, promote};
use itertools::Itertools;
use singq_core::affine::{
    alexander_to_affine, build_affine, check_affine_conditions, cyclic_idempotent_quotient, AbelianGroup, AffineSpec,
    AlexanderSpec, Endomorphism,
};
use singq_core::axioms::{compiled_suite, phi_involution_check};
use singq_core::enumerate::{enumerate_models, SearchConfig};
use singq_core::fixtures::verify_paper_examples;
use singq_core::links::braid::move_pairs;
use singq_core::links::{count_colorings, parse_pd, resolve, Mode};
use singq_core::structure::derive_division;
use singq_core::{Exec, OperationTable, Structure, TwoOpStructure};
use std::process::ExitCode;
use std::time::{Duration, Instant};

const LIMIT_TABLES: Duration = Duration::from_secs(1);
const LIMIT_EQUIVALENCE: Duration = Duration::from_secs(300);
const LIMIT_AFFINE: Duration = Duration::from_secs(120);
const LIMIT_COLORING: Duration = Duration::from_secs(60);
const LIMIT_ENUMERATION: Duration = Duration::from_secs(60);
/// Every other criterion is exact: the number of disagreements must be zero.
const MAX_DISAGREEMENTS: usize = 0;

/// Criteria that cannot pass as stated, with the exact failure that is
/// expected instead. A listed criterion that starts passing is also flagged.
const EXPECTED_FAILURES: &[(u8, &str)] = &[(
    1,
    "mismatched [distributive-6]: the printed 6x6 table breaks S-again3 at x=1,y=2 and satisfies distributive_3",
)];

const SING_TREFOIL: &str = "S 1 4 2 5\nX+ 3 6 4 1\nX+ 5 2 6 3\n";

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> (Verdict, Duration) {
    let t = Instant::now();
    let mut v = f();
    let dt = t.elapsed();
    if dt > limit {
        v.pass = false;
        v.detail = format!("{} [over the {} s limit]", v.detail, limit.as_secs());
    }
    (v, dt)
}

fn holds(suite: &str, s: &Structure) -> bool {
    compiled_suite(suite).unwrap().holds(s).unwrap()
}

fn one(t: &OperationTable) -> Structure {
    Structure::One(t.clone())
}

fn two(dot: &OperationTable, star: &OperationTable) -> Structure {
    Structure::Two(TwoOpStructure::new(dot.clone(), star.clone()).unwrap())
}

fn paper_tables() -> Verdict {
    let r = verify_paper_examples(Exec::default()).unwrap();
    let bad: Vec<&str> = r.fixtures.iter().filter(|f| !f.ok).map(|f| f.id.as_str()).collect();
    if bad.is_empty() {
        return verdict(true, format!("{}/{} tables match", r.verified(), r.fixtures.len()));
    }
    let detail = if bad == ["distributive-6"] {
        let f = r.fixtures.iter().find(|f| f.id == "distributive-6").unwrap();
        let w = &f.witnesses[0];
        format!(
            "mismatched [distributive-6]: the printed 6x6 table breaks {} at x={},y={} and satisfies distributive_3",
            w.identity, w.witness[0], w.witness[1]
        )
    } else {
        format!("mismatched [{}]", bad.join(", "))
    };
    verdict(false, detail)
}

fn equivalence() -> Verdict {
    let oriented = ["oriented-sq-R", "oriented-sq", "oriented-sq-min"];
    let agree = |s: &Structure, names: &[&str]| names.iter().map(|n| holds(n, s)).all_equal();
    let mut bad = 0;
    let mut checked = [0usize; 3];
    let t2: Vec<OperationTable> = all_tables(2).collect();
    for (dot, star) in t2.iter().cartesian_product(&t2) {
        checked[0] += 1;
        bad += usize::from(!agree(&two(dot, star), &oriented));
    }
    let t3: Vec<OperationTable> = all_tables(3).collect();
    let quandles: Vec<&OperationTable> = t3.iter().filter(|t| holds("quandle", &one(t))).collect();
    let per_star = Exec::default().map(&quandles, |q| t3.iter().filter(|d| !agree(&two(d, q), &oriented)).count());
    bad += per_star.iter().sum::<usize>();
    checked[1] = quandles.len() * t3.len();
    let unoriented = ["sq-def", "sq-prime", "sq", "sq-oneop"];
    for n in 1..=4 {
        let rqs = all_rqs(n);
        checked[2] += rqs.len();
        bad += Exec::default().map(&rqs, |t| usize::from(!agree(&one(t), &unoriented))).iter().sum::<usize>();
    }
    verdict(
        bad <= MAX_DISAGREEMENTS,
        format!(
            "{bad} disagreements over {} order-2 pairs, {} (quandle, ·) pairs at order 3 ({} quandles), {} right quasigroups of order <= 4",
            checked[0],
            checked[1],
            quandles.len(),
            checked[2]
        ),
    )
}

fn s_forms() -> Verdict {
    let mut bad = 0;
    let (mut total, mut s_count) = (0, 0);
    for n in 1..=4 {
        for t in all_rqs(n) {
            total += 1;
            let d = div(&t);
            let m = |x, y| t.get(x, y);
            let s = holds2(n, |x, y| d.get(x, y) == m(x, m(y, x)));
            let s01 = holds2(n, |x, y| m(m(y, x), m(x, m(y, x))) == y);
            let s02 = holds2(n, |x, y| m(m(x, m(y, x)), y) == x);
            let s_prime = holds2(n, |x, y| m(x, y) == d.get(x, d.get(y, x)));
            let phi = phi_involution_check(&derive_division(&t).unwrap());
            if ![s, s01, s02, s_prime, phi].iter().all_equal() {
                bad += 1;
            }
            if s {
                s_count += 1;
                if !holds("s-rq", &one(&d)) {
                    bad += 1;
                }
            }
        }
    }
    verdict(
        bad <= MAX_DISAGREEMENTS,
        format!("{bad} disagreements over {total} right quasigroups ({s_count} S-right quasigroups)"),
    )
}

fn corollaries() -> Verdict {
    let mut bad = 0;
    let mut models = 0;
    for n in 1..=5 {
        for s in enumerate_models(&SearchConfig::new(n, "sq-oneop")).unwrap().models {
            models += 1;
            let t = s.dot();
            let sigma = |x| t.get(x, x);
            let involution = (0..n).all(|x| sigma(sigma(x)) == x);
            bad += usize::from(!involution || !holds("sq-oneop", &one(&div(t))));
        }
    }
    let mut involutory = 0;
    for n in 1..=4 {
        for t in all_rqs(n) {
            let m = |x, y| t.get(x, y);
            if holds2(n, |x, y| m(m(x, y), y) == x) && holds2(n, |x, y| m(m(x, m(y, x)), y) == x) {
                involutory += 1;
                bad += usize::from(!holds("sq-oneop", &one(&t)));
            }
        }
    }
    verdict(
        bad <= MAX_DISAGREEMENTS,
        format!("{bad} failures over {models} sq-oneop models of order <= 5 and {involutory} involutory S-right quasigroups"),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn affine() -> Verdict {
    let mut bad = 0;
    let mut specs = 0;
    let mut passing = 0;
    for n in 2..=20u64 {
        let units: Vec<u64> = (1..n).filter(|&f| gcd(f, n) == 1).collect();
        let triples: Vec<(u64, u64, u64)> =
            units.iter().flat_map(|&f| (0..n).flat_map(move |g| (0..n).map(move |c| (f, g, c)))).collect();
        specs += triples.len();
        let results = Exec::default().map(&triples, |&(f, g, c)| {
            let spec = AffineSpec::cyclic(n, f as i64, g as i64, c as i64).unwrap();
            let cond = check_affine_conditions(&spec);
            let t = build_affine(&spec).unwrap().into_mul();
            let table_sq = holds("sq-oneop", &one(&t));
            let table_idem = (0..n as usize).all(|x| t.get(x, x) == x);
            let ok = cond.singquandle() == table_sq && cond.idem_singquandle == (table_sq && table_idem);
            (ok, table_sq)
        });
        bad += results.iter().filter(|r| !r.0).count();
        passing += results.iter().filter(|r| r.1).count();
        for &f in &units {
            let q = cyclic_idempotent_quotient(n, f as i64).unwrap();
            let d = q.group.order();
            let expect = gcd(n, ((1 + n * n - f) % n) * ((1 + f * f) % n) % n);
            let t = build_affine(&q).unwrap().into_mul();
            bad += usize::from(d != if expect == 0 { n } else { expect } || !holds("sq-oneop", &one(&t)));
        }
    }
    verdict(
        bad <= MAX_DISAGREEMENTS,
        format!("{bad} disagreements over {specs} cyclic specs ({passing} singquandles) and every quotient"),
    )
}

fn alexander() -> Verdict {
    let mut bad = 0;
    let mut admissible = 0;
    for n in 2..=20i64 {
        let group = AbelianGroup::cyclic(n as u64).unwrap();
        for b in 0..n {
            let u = (1 - b).rem_euclid(n);
            let c1 = (1 - u.pow(4)).rem_euclid(n) == 0;
            let c2 = (b * (1 + u * u)).rem_euclid(n) == 0;
            let spec = alexander_to_affine(&AlexanderSpec { group: group.clone(), b: Endomorphism::scalar(&group, b) });
            match (c1 && c2, spec) {
                (true, Ok(spec)) => {
                    admissible += 1;
                    let f = (b * b - b + 1).rem_euclid(n) as u64;
                    let g = (b * (1 - b)).rem_euclid(n) as u64;
                    let cond = check_affine_conditions(&spec);
                    let t = build_affine(&spec).unwrap().into_mul();
                    let ok = spec.f.rows() == [vec![f]]
                        && spec.g.rows() == [vec![g]]
                        && spec.c == [0]
                        && cond.singquandle()
                        && cond.idempotent
                        && holds("sq-oneop", &one(&t));
                    bad += usize::from(!ok);
                }
                (false, Err(_)) => {}
                _ => bad += 1,
            }
        }
    }
    let z5 = AbelianGroup::cyclic(5).unwrap();
    let s = alexander_to_affine(&AlexanderSpec { b: Endomorphism::scalar(&z5, 4), group: z5 }).unwrap();
    bad += usize::from(s.f.rows() != [vec![3]] || s.g.rows() != [vec![3]]);
    verdict(bad <= MAX_DISAGREEMENTS, format!("{bad} disagreements; {admissible} admissible B over Z_2..Z_20"))
}

fn battery(mode: Mode) -> Vec<Structure> {
    let aff = build_affine(&AffineSpec::cyclic(5, 3, 3, 0).unwrap()).unwrap().into_mul();
    match mode {
        Mode::Oriented => {
            let mut v = enumerate_models(&SearchConfig::new(2, "oriented-sq").up_to_iso(true)).unwrap().models;
            let o3 = enumerate_models(&SearchConfig::new(3, "oriented-sq").up_to_iso(true)).unwrap().models;
            v.extend(o3.into_iter().step_by(97));
            v.push(promote(&aff));
            v
        }
        Mode::Unoriented => {
            let mut v = Vec::new();
            for n in 2..=5 {
                let m = enumerate_models(&SearchConfig::new(n, "sq").up_to_iso(true)).unwrap().models;
                v.extend(m.into_iter().step_by(if n >= 4 { 7 } else { 1 }));
            }
            v.push(one(&aff));
            v
        }
    }
}

fn coloring() -> Verdict {
    let pairs = move_pairs();
    let covers = ["R1", "R2", "R3"].iter().all(|m| pairs.iter().any(|p| !p.singular && p.name.starts_with(m)));
    let singular = pairs.iter().filter(|p| p.singular).count();
    let mut bad = 0;
    let (mut compared, mut oracle_checks) = (0, 0);
    let mut sizes = Vec::new();
    for mode in [Mode::Oriented, Mode::Unoriented] {
        let structures = battery(mode);
        sizes.push(structures.len());
        for p in &pairs {
            let (a, b) = p.diagrams(mode).unwrap();
            for s in &structures {
                let (x, y) = (count_colorings(&a, s, mode).unwrap(), count_colorings(&b, s, mode).unwrap());
                compared += 1;
                bad += usize::from(x != y);
                for (d, c) in [(&a, x), (&b, y)] {
                    if d.arcs().len() <= 8 && s.order() <= 5 {
                        let star = match s {
                            Structure::Two(t) => Some(t.star().clone()),
                            Structure::One(_) => None,
                        };
                        oracle_checks += 1;
                        bad += usize::from(oracle_colorings(d, s.dot(), star.as_ref()) != c);
                    }
                }
            }
        }
    }
    let pass = bad <= MAX_DISAGREEMENTS && pairs.len() >= 6 && covers && singular >= 2 && sizes.iter().all(|&k| k >= 5);
    verdict(
        pass,
        format!(
            "{bad} disagreements; {} move pairs ({singular} singular), batteries {sizes:?}, {compared} pair checks, {oracle_checks} brute-force checks",
            pairs.len()
        ),
    )
}

fn quotients() -> Verdict {
    let d = parse_pd(SING_TREFOIL).unwrap();
    let (plus, minus) = (resolve(&d, 1).unwrap(), resolve(&d, -1).unwrap());
    let mut quandles = Vec::new();
    for n in 3..=4 {
        quandles.extend(enumerate_models(&SearchConfig::new(n, "quandle").up_to_iso(true)).unwrap().models);
    }
    quandles.push(one(&common::dihedral(5)));
    let mut bad = 0;
    let mut counts = Vec::new();
    for q in &quandles {
        let q = q.dot();
        let n = q.order();
        let left = OperationTable::from_fn(n, |x, _| x).unwrap();
        let ii = count_colorings(&d, &two(&left, q), Mode::Oriented);
        let iii = count_colorings(&d, &two(&div(q), q), Mode::Oriented);
        let (p, m) = (oracle_colorings(&plus, q, Some(q)), oracle_colorings(&minus, q, Some(q)));
        match (ii, iii) {
            (Ok(ii), Ok(iii)) => {
                bad += usize::from(ii != p) + usize::from(iii != m);
                counts.push((ii, iii));
            }
            _ => bad += 1,
        }
    }
    verdict(
        bad <= MAX_DISAGREEMENTS && quandles.len() >= 3,
        format!("{bad} disagreements over {} quandles; (ii, iii) counts {counts:?}", quandles.len()),
    )
}

fn enumeration() -> Verdict {
    let mut bad = Vec::new();
    let one_op = ["rq", "s-rq", "quandle", "sq-def", "sq-prime", "sq", "sq-oneop"];
    let two_op = ["oriented-sq-R", "oriented-sq", "oriented-sq-min"];
    for n in 2..=3 {
        let tables: Vec<Structure> = all_tables(n).map(Structure::One).collect();
        for suite in one_op {
            let naive: Vec<Structure> = tables.iter().filter(|s| holds(suite, s)).cloned().collect();
            if enumerate_models(&SearchConfig::new(n, suite)).unwrap().models != naive {
                bad.push(format!("{suite}/{n}"));
            }
        }
    }
    let t2: Vec<OperationTable> = all_tables(2).collect();
    let pairs: Vec<Structure> = t2.iter().cartesian_product(&t2).map(|(d, s)| two(d, s)).collect();
    for suite in two_op {
        let naive: Vec<Structure> = pairs.iter().filter(|s| holds(suite, s)).cloned().collect();
        if enumerate_models(&SearchConfig::new(2, suite)).unwrap().models != naive {
            bad.push(format!("{suite}/2"));
        }
    }
    let srq2 = enumerate_models(&SearchConfig::new(2, "s-rq")).unwrap().count;
    verdict(
        bad.is_empty() && srq2 == 2,
        format!("streams differing from naive filtering: {bad:?}; s-rq order 2 count {srq2}"),
    )
}

/// Number, name, runtime limit, check.
type Criterion = (u8, &'static str, Duration, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "paper tables", LIMIT_TABLES, paper_tables),
        (2, "equivalence theorems", LIMIT_EQUIVALENCE, equivalence),
        (3, "S-forms and duality", Duration::MAX, s_forms),
        (4, "corollaries", Duration::MAX, corollaries),
        (5, "affine soundness", LIMIT_AFFINE, affine),
        (6, "Alexander consistency", Duration::MAX, alexander),
        (7, "coloring invariance", LIMIT_COLORING, coloring),
        (8, "quotient properties", Duration::MAX, quotients),
        (9, "enumeration exhaustiveness", LIMIT_ENUMERATION, enumeration),
    ];
    let mut unexpected = Vec::new();
    for (k, name, limit, f) in criteria {
        let (v, dt) = timed(limit, f);
        println!("{} {k} {name}: {} ({:.2} s)", if v.pass { "PASS" } else { "FAIL" }, v.detail, dt.as_secs_f64());
        match EXPECTED_FAILURES.iter().find(|e| e.0 == k) {
            Some((_, reason)) if !v.pass && v.detail == *reason => println!("  expected failure, recorded"),
            Some(_) => unexpected.push(k),
            None if !v.pass => unexpected.push(k),
            None => {}
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
