//! Boolean circuit rewriting toolkit.
//!
//! `monorail` builds Boolean circuits as immutable, hash-consed DAGs and
//! provides the rewriting passes that turn an arbitrary circuit into a
//! NOT-free one: standard-form conversion (negations pushed down to the
//! inputs), dual-rail splitting (each negated input promoted to its own
//! rail), sum-of-products expansion, pivot extraction, and the constant-1
//! replacement of negated rails. An exhaustive truth-table layer checks
//! every transformation against the functions it claims to preserve and
//! produces witnesses when it does not — including the built-in clique
//! demonstration where the replacement pipeline yields a monotone circuit
//! that no longer computes CLIQUE(m, s).
//!
//! Variables are 0-based everywhere: `x0` is the first input and the least
//! significant bit of a truth-table index.
//!
//! ```
//! use monorail::{eval, lang};
//!
//! let lhs = lang::parse("!(x0 & x1)").unwrap();
//! let rhs = lang::parse("!x0 | !x1").unwrap();
//! let report = eval::check_equivalence(&lhs, &rhs).unwrap();
//! assert_eq!(report.verdict, eval::EquivVerdict::Equivalent);
//! ```
//!
//! The `examples/` directory has one runnable example per capability; the
//! `monorail` binary exposes the same passes as subcommands over text files.

pub mod cli;
pub mod clique;
pub mod critique;
pub mod eval;
pub mod gen;
pub mod io;
pub mod ir;
pub mod lang;
pub mod transform;

pub use eval::{Assignment, EquivVerdict, EquivalenceReport, TruthTable};
pub use ir::{Circuit, CircuitBuilder, GateStats, Node, NodeRef, VarId};
