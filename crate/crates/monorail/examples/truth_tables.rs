//! Exhaustive semantics: truth tables, monotonicity checks, and
//! equivalence checking with witnesses.

use monorail::eval::{
    check_equivalence, check_equivalence_random, is_monotone, monotone_violation, truth_table,
    truth_table_with, RandomEquivalence,
};
use monorail::lang::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Tables are bit-packed; entry i is the output on the assignment whose
    // bit v is (i >> v) & 1. The hex dump writes one byte per 8 entries.
    let xor = parse("x0 & !x1 | !x0 & x1")?;
    let t = truth_table(&xor)?;
    println!(
        "xor table: {} ({} ones of {})",
        t.to_hex(),
        t.ones(),
        t.len()
    );

    // Monotone means no 0->1 input flip can drop the output 1->0. The
    // checker returns the first offending pair in index order.
    println!("xor monotone: {}", is_monotone(&truth_table(&xor)?));
    let not = parse("!x0")?;
    if let Some((lo, hi)) = monotone_violation(&truth_table(&not)?) {
        println!("!x0 violation: {lo}->{hi}");
    }

    // Equivalence compares whole tables and reports the lowest-index
    // difference as a witness assignment.
    let lhs = parse("x0 | x1")?;
    let rhs = parse("x0 & x1")?;
    let report = check_equivalence(&lhs, &rhs)?;
    println!(
        "or vs and: witness {} (lhs={:?} rhs={:?})",
        report.witness.as_ref().unwrap(),
        report.lhs_value.unwrap(),
        report.rhs_value.unwrap()
    );

    // Tables above the cap are refused rather than silently truncated;
    // random sampling still works there but never certifies equivalence.
    let wide = parse("INPUTS 30 x0 & x29")?;
    let err = truth_table_with(&wide, 24, 1).unwrap_err();
    println!("30-input table: {err}");
    match check_equivalence_random(&wide, &wide, 256, 7)? {
        RandomEquivalence::NoWitnessFound { trials } => {
            println!("sampled {trials} assignments, no counterexample (not a proof)");
        }
        RandomEquivalence::Differs(r) => {
            println!("differs at {}", r.witness.unwrap());
        }
    }

    // Multi-threaded enumeration returns bit-identical tables.
    let big = parse("INPUTS 16 x0 & x7 | x15")?;
    assert_eq!(
        truth_table_with(&big, 24, 4)?.to_hex(),
        truth_table(&big)?.to_hex()
    );
    println!("parallel table matches serial");
    Ok(())
}
