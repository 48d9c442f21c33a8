//! End-to-end counterexample: a circuit equivalent to CLIQUE(3,3) whose
//! negation-free rewrite computes a different function, plus the two
//! finer-grained checks that locate where the argument breaks.

use monorail::clique::CliqueParams;
use monorail::critique::{
    build_f_prime, check_claim1, check_set_gap, run_counterexample, Claim1Outcome,
};
use monorail::lang::{parse, print};
use monorail::transform::{extract_negated, sop_expand, split_negations, to_standard_form};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = CliqueParams::new(3, 3)?;

    // f' adds the contradictory term x0 & !x0 to the clique circuit. That
    // term is always 0, so f' still computes CLIQUE(3,3) exactly.
    let f_prime = build_f_prime(p)?;
    println!("f' = {}", print(&f_prime));

    // The pipeline (standard form, rails, SOP, replace-all-rails) is run
    // and re-checked against the clique circuit by the report builder.
    let report = run_counterexample(p)?;
    println!("f' vs clique:  {:?}", report.equiv_before.verdict);
    println!("f''           = {}", print(&report.f_double_prime));
    println!("f'' vs clique: {:?}", report.equiv_after.verdict);
    println!(
        "witness {}: f''={}, oracle says {}",
        report.witness, report.single_edge_value as u8, report.single_edge_oracle as u8
    );

    // Per-pivot flip invariance *does* hold whenever the input circuit is
    // clique-equivalent — including for f'. The failure is not here.
    let rails = split_negations(&to_standard_form(&f_prime))?;
    let sop = sop_expand(&rails)?;
    match check_claim1(p, &rails, &extract_negated(&sop, 0))? {
        Claim1Outcome::Holds { satisfying } => {
            println!("flip invariance holds ({satisfying} hypothesis assignments)");
        }
        Claim1Outcome::Violated { assignment, .. } => {
            println!("flip invariance violated at {assignment}");
        }
    }

    // The gap: the flip argument covers assignments where TermA is 1 and
    // the pivot is 0 (or becomes so after a flip), but the replacement
    // fires whenever TermA is 1. For f' at pivot 0 the covered set is
    // empty while the affected set has 4 assignments.
    let gap = check_set_gap(&sop, 0)?;
    println!(
        "covered={} affected={} uncovered={}",
        gap.lhs.len(),
        gap.rhs.len(),
        gap.gap.len()
    );
    for a in &gap.gap {
        println!("  unjustified at {a}");
    }

    // For contrast: a circuit whose negations are all redundant survives
    // the same pipeline unchanged as a function.
    let benign = parse("x0 | !x1 & x1")?;
    let benign_rails = split_negations(&to_standard_form(&benign))?;
    let benign_gap = check_set_gap(&sop_expand(&benign_rails)?, 1)?;
    println!(
        "benign circuit, pivot 1: covered={} affected={}",
        benign_gap.lhs.len(),
        benign_gap.rhs.len()
    );
    Ok(())
}
