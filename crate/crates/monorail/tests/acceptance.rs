//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Run `cargo test --test acceptance -- --nocapture` to
//! see the lines; a FAIL line is always followed by the panic that
//! triggered it.

use std::panic::{catch_unwind, AssertUnwindSafe};

use monorail::clique::{build_clique, clique_oracle, edge_index, CliqueParams};
use monorail::critique::{
    build_f_prime, check_claim1, check_set_gap, run_counterexample, Claim1Outcome,
};
use monorail::eval::{check_equivalence, truth_table, Assignment, EquivVerdict};
use monorail::gen::{random_circuit, random_monotone_circuit, random_sop};
use monorail::io::{read_circuit, write_circuit};
use monorail::ir::Circuit;
use monorail::lang::{parse, print};
use monorail::transform::{
    extract_negated, is_standard_form, sima_full_procedure, sima_replace_one, sop_expand,
    split_negations, to_standard_form,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion(number: usize, name: &str, body: impl FnOnce()) {
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let tag = if outcome.is_ok() { "PASS" } else { "FAIL" };
    println!("criterion {number} {tag}: {name}");
    if let Err(cause) = outcome {
        std::panic::resume_unwind(cause);
    }
}

#[test]
fn clique_circuit_agrees_with_oracle() {
    criterion(
        1,
        "clique circuit equals the bitmask oracle everywhere",
        || {
            for m in 2..=5 {
                for s in 1..=m {
                    let p = CliqueParams::new(m, s).unwrap();
                    let c = build_clique(p).unwrap();
                    let t = truth_table(&c).unwrap();
                    for index in 0..t.len() {
                        let a = Assignment::from_index(index, p.edge_count());
                        assert_eq!(
                            t.get(index),
                            clique_oracle(p, &a).unwrap(),
                            "CLIQUE({m},{s}) differs from oracle at {a}"
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn counterexample_reproduces() {
    criterion(
        2,
        "full pipeline changes the function of an equivalent circuit",
        || {
            for (m, s) in [(3, 3), (4, 3), (5, 3)] {
                let p = CliqueParams::new(m, s).unwrap();
                let report = run_counterexample(p).unwrap();
                assert!(report.equiv_before.is_equivalent());
                assert_eq!(report.equiv_after.verdict, EquivVerdict::Differs);
                assert_eq!(
                    report.single_edge_witness,
                    Assignment::from_index(1, p.edge_count())
                );
                assert!(report.single_edge_value, "f'' must accept the single edge");
                assert!(!report.single_edge_oracle, "oracle must reject it");
                assert_eq!(report.f_double_prime.gate_stats().not_count, 0);
            }
        },
    );
}

/// `clique(m,s) | augment` as a formula over the edge variables. The
/// augment must never change the function: either it can never be 1, or it
/// is 1 only when an s-clique is present anyway.
fn augmented_clique_formula(p: CliqueParams, augment: &str) -> String {
    let clique = build_clique(p).unwrap();
    format!("INPUTS {} {} | {}", p.edge_count(), print(&clique), augment)
}

fn random_augment<R: Rng>(rng: &mut R, p: CliqueParams) -> String {
    let n = p.edge_count();
    let mut literals: Vec<String> = Vec::new();
    if rng.random_bool(0.5) {
        // Contradictory: contains x & !x, so the product is never 1.
        let v = rng.random_range(0..n);
        literals.push(format!("x{v}"));
        literals.push(format!("!x{v}"));
    } else {
        // Clique-implied: contains every edge of one s-subset, so the
        // product being 1 forces an s-clique.
        let mut vertices: Vec<usize> = (0..p.m()).collect();
        for k in 0..p.s() {
            let pick = rng.random_range(k..vertices.len());
            vertices.swap(k, pick);
        }
        let mut subset = vertices[..p.s()].to_vec();
        subset.sort_unstable();
        for i in 0..subset.len() {
            for j in (i + 1)..subset.len() {
                let e = edge_index(subset[i], subset[j], p.m()).unwrap();
                literals.push(format!("x{e}"));
            }
        }
    }
    // Extra literals only narrow the product, so both variants stay safe.
    for v in 0..n {
        if rng.random_bool(0.2) {
            let neg = if rng.random_bool(0.3) { "!" } else { "" };
            literals.push(format!("{neg}x{v}"));
        }
    }
    literals.join(" & ")
}

fn assert_flip_invariance_all_pivots(p: CliqueParams, formula: &str) {
    let c = parse(formula).unwrap();
    let rails = split_negations(&to_standard_form(&c)).unwrap();
    let sop = sop_expand(&rails).unwrap();
    for pivot in 0..p.edge_count() {
        let e = extract_negated(&sop, pivot);
        let outcome = check_claim1(p, &rails, &e).unwrap();
        assert!(
            matches!(outcome, Claim1Outcome::Holds { .. }),
            "flip invariance violated for pivot {pivot} on {formula}"
        );
    }
}

#[test]
fn flip_invariance_holds_on_clique_equivalents() {
    criterion(
        3,
        "flip invariance holds for every pivot of clique-equivalent circuits",
        || {
            let p3 = CliqueParams::new(3, 3).unwrap();
            let p4 = CliqueParams::new(4, 3).unwrap();
            // The two hand-built circuits: one contradictory augment, one
            // clique-implied augment.
            assert_flip_invariance_all_pivots(p3, "x0 & x1 & x2 | !x0 & x0 & x1");
            assert_flip_invariance_all_pivots(
                p4,
                "x0 & x1 & x3 | x0 & x2 & x4 | x1 & x2 & x5 | x3 & x4 & x5 | !x0 & x3 & x4 & x5",
            );
            // Twenty random augmentations; the checker itself verifies each one
            // still computes CLIQUE before checking the flips.
            let mut rng = ChaCha8Rng::seed_from_u64(0x51_AC);
            for round in 0..20 {
                let p = if round % 2 == 0 { p3 } else { p4 };
                let augment = random_augment(&mut rng, p);
                let formula = augmented_clique_formula(p, &augment);
                assert_flip_invariance_all_pivots(p, &formula);
            }
        },
    );
}

#[test]
fn replacement_is_identity_where_extracted_term_is_false() {
    criterion(
        4,
        "replacing the rail only matters where the extracted term is 1",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0xCA5E);
            for _ in 0..500 {
                let vars = rng.random_range(1..=6);
                let sop = random_sop(&mut rng, vars, 8, 6);
                for pivot in 0..vars {
                    let e = extract_negated(&sop, pivot);
                    let replaced = sima_replace_one(&e);
                    for index in 0..(1usize << sop.input_arity()) {
                        let a = Assignment::from_index(index, sop.input_arity());
                        if e.term_a().eval(&a).unwrap() {
                            continue;
                        }
                        assert_eq!(
                            replaced.eval(&a).unwrap(),
                            sop.eval(&a).unwrap(),
                            "value changed at {a} despite term_a = 0 (pivot {pivot})"
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn standard_form_preserves_function_within_bound() {
    criterion(
        5,
        "standard form is function-equal and at most 2g + n gates",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x57D0);
            for _ in 0..200 {
                let inputs = rng.random_range(1..=10);
                let c = random_circuit(&mut rng, inputs, 30, true);
                let std_form = to_standard_form(&c);
                assert!(is_standard_form(&std_form));
                assert!(
                    check_equivalence(&c, &std_form).unwrap().is_equivalent(),
                    "standard form changed the function of {}",
                    print(&c)
                );
                let g = c.gate_stats().total();
                let bound = 2 * g + c.input_arity();
                let got = std_form.gate_stats().total();
                assert!(got <= bound, "{got} gates > bound {bound} on {}", print(&c));
            }
        },
    );
}

#[test]
fn full_replacement_is_identity_on_monotone_circuits() {
    criterion(
        6,
        "the full replacement procedure fixes every Not-free circuit",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x30_70);
            for _ in 0..100 {
                let inputs = rng.random_range(1..=8);
                let c = random_monotone_circuit(&mut rng, inputs, 25);
                let rails = split_negations(&c).unwrap();
                let result = sima_full_procedure(&rails).unwrap();
                assert_eq!(result.gate_stats().not_count, 0);
                assert!(
                    check_equivalence(&c, &result).unwrap().is_equivalent(),
                    "procedure changed the Not-free circuit {}",
                    print(&c)
                );
            }
        },
    );
}

#[test]
fn full_replacement_always_outputs_monotone_circuits() {
    criterion(7, "every full-procedure output is Not-free", || {
        // Pipelines whose *function* the procedure breaks still must emit
        // Not-free circuits; sweep circuits with and without negations.
        let mut rng = ChaCha8Rng::seed_from_u64(0x0070);
        for round in 0..60 {
            let inputs = rng.random_range(1..=6);
            let c = random_circuit(&mut rng, inputs, 20, round % 2 == 0);
            let rails = split_negations(&to_standard_form(&c)).unwrap();
            let result = sima_full_procedure(&rails).unwrap();
            assert_eq!(
                result.gate_stats().not_count,
                0,
                "procedure output kept a NOT on {}",
                print(&c)
            );
        }
        for (m, s) in [(3, 3), (4, 3), (5, 3)] {
            let p = CliqueParams::new(m, s).unwrap();
            let report = run_counterexample(p).unwrap();
            assert_eq!(report.f_double_prime.gate_stats().not_count, 0);
        }
    });
}

#[test]
fn flip_argument_leaves_a_gap() {
    criterion(
        8,
        "flip argument covers no assignment, replacement affects four",
        || {
            let p = CliqueParams::new(3, 3).unwrap();
            let f_prime = build_f_prime(p).unwrap();
            let rails = split_negations(&to_standard_form(&f_prime)).unwrap();
            let sop = sop_expand(&rails).unwrap();
            let report = check_set_gap(&sop, 0).unwrap();
            assert!(report.lhs.is_empty(), "covered set should be empty");
            assert_eq!(
                report.rhs.len(),
                4,
                "affected set should have 4 assignments"
            );
            assert_eq!(report.gap.len(), 4);
            assert!(report.has_gap());
        },
    );
}

/// Circuits the round-trip checks run on: the clique family, the
/// counterexample pipeline's circuits, edge-case formulas, and seeded
/// random circuits.
fn corpus() -> Vec<Circuit> {
    let mut out = Vec::new();
    for src in [
        "0",
        "1",
        "x0",
        "!x0",
        "!!x0",
        "x0 & !x0",
        "x0 & !x1 | !x0 & x1",
        "INPUTS 5 x1 & x2",
        "!(x0 | x1 & !(x2 | !x3))",
    ] {
        out.push(parse(src).unwrap());
    }
    for m in 2..=5 {
        for s in 1..=m {
            out.push(build_clique(CliqueParams::new(m, s).unwrap()).unwrap());
        }
    }
    for (m, s) in [(3, 3), (4, 3), (5, 3)] {
        let p = CliqueParams::new(m, s).unwrap();
        let f_prime = build_f_prime(p).unwrap();
        let standard = to_standard_form(&f_prime);
        let rails = split_negations(&standard).unwrap();
        let report = run_counterexample(p).unwrap();
        out.push(f_prime);
        out.push(standard);
        out.push(rails.into_inner());
        out.push(report.f_double_prime);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_2B);
    for _ in 0..25 {
        let inputs = rng.random_range(1..=8);
        out.push(random_circuit(&mut rng, inputs, 20, true));
    }
    for _ in 0..10 {
        let inputs = rng.random_range(1..=8);
        out.push(random_monotone_circuit(&mut rng, inputs, 20));
    }
    out
}

#[test]
fn round_trips_hold_on_the_corpus() {
    criterion(
        9,
        "formula and file round trips hold on the whole corpus",
        || {
            for c in corpus() {
                let reparsed = parse(&print(&c)).unwrap();
                assert_eq!(reparsed.input_arity(), c.input_arity());
                assert!(
                    check_equivalence(&c, &reparsed).unwrap().is_equivalent(),
                    "print/parse changed the function of {}",
                    print(&c)
                );
                let reread = read_circuit(&write_circuit(&c)).unwrap();
                assert_eq!(reread, c, "file round trip changed the store");
            }
        },
    );
}
