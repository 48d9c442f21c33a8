//! Executable analysis of the replace-negations-with-1 procedure: the
//! augmented-clique construction, the end-to-end counterexample, the
//! flip-invariance check that genuine clique circuits do satisfy, and the
//! set-membership gap that explains where the general argument breaks.
//!
//! The findings, mechanically: [`check_claim1`] never finds a violation on
//! circuits that really compute CLIQUE (the favorable case), while
//! [`run_counterexample`] shows the full pipeline turning an equivalent
//! circuit into an inequivalent one, and [`check_set_gap`] exhibits the
//! uncovered assignments responsible.

use thiserror::Error;

use crate::clique::{build_clique, clique_oracle, CliqueError, CliqueParams};
use crate::eval::{
    check_equivalence_with, evaluate, Assignment, EquivalenceReport, EvalError, DEFAULT_TABLE_CAP,
};
use crate::ir::{map_reachable, Circuit, CircuitBuilder};
use crate::transform::{
    extract_negated, sima_full_procedure_capped, split_negations, to_standard_form,
    valid_extension, DualRailCircuit, ExtractedForm, SopFormula, TransformError, DEFAULT_SOP_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CritiqueError {
    #[error("the augmented construction needs clique size s >= 3, got s={s}")]
    CliqueTooSmall { s: usize },
    #[error(
        "circuit is not equivalent to CLIQUE({m},{s}) on valid assignments \
         (differs at {witness}); the hypothesis of the flip-invariance check fails"
    )]
    NotCliqueEquivalent {
        m: usize,
        s: usize,
        witness: Assignment,
    },
    #[error("expected {expected} variables, got {got}")]
    WrongArity { got: usize, expected: usize },
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// `f'`: the clique circuit with the contradictory term `x0 ∧ ¬x0` OR-ed
/// in front — `(x0 ∧ ¬x0) ∨ CLIQUE(m,s)`. The extra term never fires, so
/// `f'` is function-equal to CLIQUE(m,s); it exists purely to plant a
/// negated variable. Requires `s ≥ 3` so that a single edge is never
/// enough to satisfy the clique part.
pub fn build_f_prime(p: CliqueParams) -> Result<Circuit, CritiqueError> {
    if p.s() < 3 {
        return Err(CritiqueError::CliqueTooSmall { s: p.s() });
    }
    let clique = build_clique(p)?;
    let mut b = CircuitBuilder::new(p.edge_count());
    let x0 = b.input(0);
    let nx0 = b.not(x0);
    let contradiction = b.and(x0, nx0);
    let clique_out = map_reachable(&clique, &mut b, |b, node| {
        b.mk(node).expect("imported nodes are valid")
    });
    let out = b.or(contradiction, clique_out);
    Ok(b.finish(out))
}

/// Everything the end-to-end refutation produced: the input and output
/// circuits, the equivalence verdicts before and after the pipeline, the
/// lowest-index disagreement, and the canonical single-edge witness
/// (only edge (0,1) present) evaluated on both sides.
#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub params: CliqueParams,
    pub f_prime: Circuit,
    pub f_double_prime: Circuit,
    /// `f'` vs the clique circuit: must be `Equivalent`.
    pub equiv_before: EquivalenceReport,
    /// `f''` vs the clique circuit: `Differs`, with the lowest witness.
    pub equiv_after: EquivalenceReport,
    /// Lowest-index assignment where `f''` and CLIQUE disagree.
    pub witness: Assignment,
    /// The graph with edge (0,1) present and every other edge absent.
    pub single_edge_witness: Assignment,
    /// `f''` on the single-edge graph (the procedure's claim gone wrong: 1).
    pub single_edge_value: bool,
    /// The oracle on the single-edge graph (no s-clique there: 0).
    pub single_edge_oracle: bool,
}

/// Runs the whole pipeline with default caps; see
/// [`run_counterexample_with`].
pub fn run_counterexample(p: CliqueParams) -> Result<CounterexampleReport, CritiqueError> {
    run_counterexample_with(p, DEFAULT_TABLE_CAP, DEFAULT_SOP_CAP, 1)
}

/// Builds `f'`, pushes it through standard form → rail split → full
/// replacement procedure to get `f''`, and checks equivalence against the
/// clique circuit on both ends. `f'` always passes; `f''` always fails,
/// and the single-edge graph is verified to be a disagreement directly.
pub fn run_counterexample_with(
    p: CliqueParams,
    table_cap: usize,
    sop_cap: usize,
    jobs: usize,
) -> Result<CounterexampleReport, CritiqueError> {
    let f_prime = build_f_prime(p)?;
    let clique = build_clique(p)?;
    let equiv_before = check_equivalence_with(&f_prime, &clique, table_cap, jobs)?;
    assert!(
        equiv_before.is_equivalent(),
        "the contradictory term changed the function"
    );
    let standard = to_standard_form(&f_prime);
    let rails = split_negations(&standard)?;
    let f_double_prime = sima_full_procedure_capped(&rails, sop_cap)?;
    assert_eq!(f_double_prime.gate_stats().not_count, 0);
    let equiv_after = check_equivalence_with(&f_double_prime, &clique, table_cap, jobs)?;
    let witness = equiv_after
        .witness
        .clone()
        .expect("the replacement procedure must break this family");
    let single_edge_witness = Assignment::from_index(1, p.edge_count());
    let single_edge_value = evaluate(&f_double_prime, &single_edge_witness)?;
    let single_edge_oracle = clique_oracle(p, &single_edge_witness)?;
    assert!(
        single_edge_value && !single_edge_oracle,
        "single-edge graph must witness the disagreement"
    );
    Ok(CounterexampleReport {
        params: p,
        f_prime,
        f_double_prime,
        equiv_before,
        equiv_after,
        witness,
        single_edge_witness,
        single_edge_value,
        single_edge_oracle,
    })
}

/// Outcome of the flip-invariance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim1Outcome {
    /// Every hypothesis assignment passed; `satisfying` counts how many
    /// there were (0 means the check held vacuously).
    Holds { satisfying: usize },
    /// An assignment satisfied the hypothesis but not the conclusion.
    Violated {
        assignment: Assignment,
        value: bool,
        flipped_value: bool,
    },
}

/// The flip-invariance property of genuine clique circuits: for every
/// valid assignment `A` with `A[pivot] = 0` (so the extracted `¬x_pivot`
/// rail is 1) and `term_a(A) = 1`, both `f(A) = 1` and `f(A')` = 1, where
/// `A'` is `A` with bit `pivot` flipped.
///
/// The hypothesis of the property is that `f` really computes CLIQUE(m,s)
/// on valid assignments; that is verified first, and failure is reported
/// as [`CritiqueError::NotCliqueEquivalent`] — an error, distinct from a
/// property violation.
pub fn check_claim1(
    p: CliqueParams,
    f: &DualRailCircuit,
    e: &ExtractedForm,
) -> Result<Claim1Outcome, CritiqueError> {
    let n = p.edge_count();
    if f.vars() != n {
        return Err(CritiqueError::WrongArity {
            got: f.vars(),
            expected: n,
        });
    }
    if e.vars() != n {
        return Err(CritiqueError::WrongArity {
            got: e.vars(),
            expected: n,
        });
    }
    for index in 0..1usize << n {
        let a = Assignment::from_index(index, n);
        if f.evaluate(&a)? != clique_oracle(p, &a)? {
            return Err(CritiqueError::NotCliqueEquivalent {
                m: p.m(),
                s: p.s(),
                witness: a,
            });
        }
    }
    let pivot = e.pivot();
    let mut satisfying = 0usize;
    for index in 0..1usize << n {
        let a = Assignment::from_index(index, n);
        // Part 1 of the extracted conjunction: the ¬x_pivot rail is 1,
        // i.e. the positive bit is 0.
        if a.bit(pivot) {
            continue;
        }
        if !e.term_a().eval(&valid_extension(&a))? {
            continue;
        }
        satisfying += 1;
        let value = f.evaluate(&a)?;
        let flipped_value = f.evaluate(&a.flipped(pivot))?;
        if !(value && flipped_value) {
            return Ok(Claim1Outcome::Violated {
                assignment: a,
                value,
                flipped_value,
            });
        }
    }
    Ok(Claim1Outcome::Holds { satisfying })
}

/// The two sides of the set claim behind the general replacement argument,
/// computed over valid assignments, plus their difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetGapReport {
    pub pivot: usize,
    pub vars: usize,
    /// `{A : term_a(A)=1 ∧ ¬A[pivot]} ∪ {A : term_a(A')=1 ∧ ¬A'[pivot]}` —
    /// the assignments the flip-invariance argument actually covers.
    pub lhs: Vec<Assignment>,
    /// `{A : term_a(A)=1}` — the assignments on which the replaced circuit
    /// turns the conjunction on.
    pub rhs: Vec<Assignment>,
    /// `rhs \ lhs`: nonempty exactly when the replacement can change the
    /// function.
    pub gap: Vec<Assignment>,
}

impl SetGapReport {
    pub fn has_gap(&self) -> bool {
        !self.gap.is_empty()
    }
}

/// [`check_set_gap_with`] under the default enumeration cap.
pub fn check_set_gap(s: &SopFormula, pivot: usize) -> Result<SetGapReport, CritiqueError> {
    check_set_gap_with(s, pivot, DEFAULT_TABLE_CAP)
}

/// Enumerates all valid assignments and compares the set the argument
/// covers against the set the replacement affects. All three lists are in
/// ascending assignment-index order.
pub fn check_set_gap_with(
    s: &SopFormula,
    pivot: usize,
    cap: usize,
) -> Result<SetGapReport, CritiqueError> {
    if !s.input_arity().is_multiple_of(2) {
        return Err(CritiqueError::Transform(TransformError::OddArity {
            arity: s.input_arity(),
        }));
    }
    let n = s.input_arity() / 2;
    if n > cap {
        return Err(CritiqueError::Eval(EvalError::AboveCap { arity: n, cap }));
    }
    let e = extract_negated(s, pivot);
    let term_a = e.term_a();
    let mut lhs_mask = vec![false; 1 << n];
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for (index, covered) in lhs_mask.iter_mut().enumerate() {
        let a = Assignment::from_index(index, n);
        let flipped = a.flipped(pivot);
        let covers_direct = !a.bit(pivot) && term_a.eval(&valid_extension(&a))?;
        let covers_flipped = !flipped.bit(pivot) && term_a.eval(&valid_extension(&flipped))?;
        if covers_direct || covers_flipped {
            *covered = true;
            lhs.push(a.clone());
        }
        if term_a.eval(&valid_extension(&a))? {
            rhs.push(a);
        }
    }
    let gap = rhs
        .iter()
        .filter(|a| !lhs_mask[a.to_index()])
        .cloned()
        .collect();
    Ok(SetGapReport {
        pivot,
        vars: n,
        lhs,
        rhs,
        gap,
    })
}
