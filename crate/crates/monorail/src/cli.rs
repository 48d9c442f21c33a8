//! Command-line front-end over the library: build, transform, check, and
//! demo subcommands reading and writing the text formats in [`crate::io`].
//!
//! Exit codes are machine-usable: 0 success, 1 for "false" semantic
//! verdicts (circuits differ, not monotone, gap found), 2 for usage and
//! input errors, 3 when an enumeration or expansion cap was exceeded.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::clique::{build_clique_with, edge_endpoints, BuildOptions, CliqueError, CliqueParams};
use crate::critique::{
    check_claim1, check_set_gap_with, run_counterexample_with, Claim1Outcome, CritiqueError,
};
use crate::eval::{
    check_equivalence_random, check_equivalence_with, evaluate, monotone_violation,
    truth_table_with, Assignment, EvalError, RandomEquivalence, DEFAULT_TABLE_CAP,
};
use crate::ir::{Circuit, GateStats, IrError};
use crate::lang::{self, ParseError};
use crate::transform::{
    extract_negated, sima_full_procedure_capped, sima_replace_one, sop_expand_capped,
    split_negations, to_standard_form, DualRailCircuit, SopFormula, TransformError,
    DEFAULT_SOP_CAP,
};
use crate::{clique, io as fmt_io};

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Write(#[from] std::io::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Format(#[from] fmt_io::FormatError),
    #[error(transparent)]
    Ir(#[from] IrError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Critique(#[from] CritiqueError),
    #[error("{0}")]
    Usage(String),
}

fn exit_code(e: &CliError) -> i32 {
    let capped = match e {
        CliError::Eval(EvalError::AboveCap { .. }) => true,
        CliError::Transform(TransformError::SopCapExceeded { .. }) => true,
        CliError::Clique(CliqueError::BudgetExceeded { .. }) => true,
        CliError::Critique(c) => matches!(
            c,
            CritiqueError::Eval(EvalError::AboveCap { .. })
                | CritiqueError::Transform(TransformError::SopCapExceeded { .. })
                | CritiqueError::Clique(CliqueError::BudgetExceeded { .. })
        ),
        _ => false,
    };
    if capped {
        3
    } else {
        2
    }
}

#[derive(Parser)]
#[command(
    name = "monorail",
    version,
    about = "Boolean circuit rewriting toolkit: standard form, dual-rail \
             splitting, SOP extraction, and exhaustive equivalence checking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Circuit input: an inline formula or a circuit file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct CircuitInput {
    /// Inline formula (grammar: ! & | with x0, x1, ...; INPUTS header optional)
    #[arg(long, value_name = "FORMULA")]
    expr: Option<String>,
    /// Circuit file in the line format, '-' for stdin
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

/// Circuit input that may be omitted entirely.
#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalCircuitInput {
    /// Inline formula (grammar: ! & | with x0, x1, ...; INPUTS header optional)
    #[arg(long, value_name = "FORMULA")]
    expr: Option<String>,
    /// Circuit file in the line format, '-' for stdin
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

/// SOP input: an SOP file, or an inline rail-circuit formula to expand.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SopInput {
    /// Inline rail-circuit formula (even arity, no '!'), expanded to SOP
    #[arg(long, value_name = "FORMULA")]
    expr: Option<String>,
    /// SOP file (INPUTS header, one product per line), '-' for stdin
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::File {
                path: path.into(),
                source,
            })?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|source| CliError::File {
            path: path.into(),
            source,
        })
    }
}

impl CircuitInput {
    fn load(&self) -> Result<Circuit, CliError> {
        load_circuit(&self.expr, &self.file)
    }
}

impl OptionalCircuitInput {
    fn is_empty(&self) -> bool {
        self.expr.is_none() && self.file.is_none()
    }

    fn load(&self) -> Result<Circuit, CliError> {
        load_circuit(&self.expr, &self.file)
    }
}

fn load_circuit(expr: &Option<String>, file: &Option<PathBuf>) -> Result<Circuit, CliError> {
    match (expr, file) {
        (Some(e), None) => Ok(lang::parse(e)?),
        (None, Some(p)) => Ok(fmt_io::read_circuit(&read_text(p)?)?),
        _ => unreachable!("clap enforces exactly one input source"),
    }
}

impl SopInput {
    fn load(&self, cap: usize) -> Result<SopFormula, CliError> {
        match (&self.expr, &self.file) {
            (Some(e), None) => {
                let d = DualRailCircuit::new(lang::parse(e)?)?;
                Ok(sop_expand_capped(&d, cap)?)
            }
            (None, Some(p)) => Ok(fmt_io::read_sop(&read_text(p)?)?),
            _ => unreachable!("clap enforces exactly one input source"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and emit it in the circuit file format
    Parse {
        #[command(flatten)]
        input: CircuitInput,
    },
    /// Render a circuit as a minimally parenthesized formula
    Print {
        #[command(flatten)]
        input: CircuitInput,
    },
    /// Evaluate a circuit on one assignment of its inputs
    Eval {
        #[command(flatten)]
        input: CircuitInput,
        /// Input bits in variable order, e.g. 101 or (1,0,1)
        #[arg(long, value_name = "BITS")]
        assign: String,
    },
    /// Print the full truth table as a hex dump
    Table {
        #[command(flatten)]
        input: CircuitInput,
        /// Largest input arity to enumerate exhaustively
        #[arg(long, env = "MONORAIL_CAP_TABLE", default_value_t = DEFAULT_TABLE_CAP)]
        cap_table: usize,
        /// Worker threads for table enumeration
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check monotonicity exhaustively
    Monotone {
        #[command(flatten)]
        input: CircuitInput,
        #[arg(long, env = "MONORAIL_CAP_TABLE", default_value_t = DEFAULT_TABLE_CAP)]
        cap_table: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare two circuit files for equivalence
    Equiv {
        /// Left circuit file, '-' for stdin
        lhs: PathBuf,
        /// Right circuit file
        rhs: PathBuf,
        #[arg(long, env = "MONORAIL_CAP_TABLE", default_value_t = DEFAULT_TABLE_CAP)]
        cap_table: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Sample random assignments instead of enumerating (never certifies
        /// equivalence; usable above the table cap)
        #[arg(long)]
        random_equiv: bool,
        /// Number of random trials with --random-equiv
        #[arg(long, default_value_t = 1024)]
        trials: usize,
        /// Seed for --random-equiv
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Emit the CLIQUE(m,s) circuit over C(m,2) edge variables
    Clique {
        /// Vertex count (>= 2)
        #[arg(long)]
        m: usize,
        /// Clique size (1..=m)
        #[arg(long)]
        s: usize,
        /// Append a fresh gate per use instead of sharing equal gates
        #[arg(long)]
        no_sharing: bool,
    },
    /// Rewrite a circuit so NOT gates sit directly above inputs
    Standard {
        #[command(flatten)]
        input: CircuitInput,
    },
    /// Replace each NOT-above-input with a negative rail (arity doubles)
    Split {
        #[command(flatten)]
        input: CircuitInput,
    },
    /// Expand a rail circuit into sum-of-products form
    Sop {
        #[command(flatten)]
        input: CircuitInput,
        /// Largest estimated product count allowed during expansion
        #[arg(long, env = "MONORAIL_CAP_SOP", default_value_t = DEFAULT_SOP_CAP)]
        cap_sop: usize,
    },
    /// Factor an SOP around one negated variable
    Extract {
        #[command(flatten)]
        input: SopInput,
        /// Variable whose negative rail to extract
        #[arg(long)]
        pivot: usize,
        #[arg(long, env = "MONORAIL_CAP_SOP", default_value_t = DEFAULT_SOP_CAP)]
        cap_sop: usize,
    },
    /// Extract one negated variable and replace its rail with 1
    SimaStep {
        #[command(flatten)]
        input: SopInput,
        /// Variable whose negative rail to replace
        #[arg(long)]
        pivot: usize,
        #[arg(long, env = "MONORAIL_CAP_SOP", default_value_t = DEFAULT_SOP_CAP)]
        cap_sop: usize,
    },
    /// Replace every negated variable with 1, yielding a monotone circuit
    SimaFull {
        #[command(flatten)]
        input: CircuitInput,
        #[arg(long, env = "MONORAIL_CAP_SOP", default_value_t = DEFAULT_SOP_CAP)]
        cap_sop: usize,
    },
    /// Check the flip-invariance property against CLIQUE(m,s)
    Claim1 {
        /// Vertex count of the clique function
        #[arg(long)]
        m: usize,
        /// Clique size
        #[arg(long)]
        s: usize,
        /// Variable whose negative rail to extract
        #[arg(long)]
        pivot: usize,
        /// Circuit over the C(m,2) edge variables claiming to compute
        /// CLIQUE(m,s); defaults to the generated clique circuit
        #[command(flatten)]
        input: OptionalCircuitInput,
        #[arg(long, env = "MONORAIL_CAP_SOP", default_value_t = DEFAULT_SOP_CAP)]
        cap_sop: usize,
    },
    /// Compare the assignments the flip argument covers against those the
    /// replacement affects
    SetGap {
        /// Build the contradictory-augmented clique circuit for m vertices
        #[arg(long, requires = "s")]
        m: Option<usize>,
        /// Clique size for --m
        #[arg(long, requires = "m")]
        s: Option<usize>,
        /// Variable whose negative rail to extract
        #[arg(long)]
        pivot: usize,
        /// SOP input (alternative to --m/--s)
        #[command(flatten)]
        input: OptionalSopInput,
        #[arg(long, env = "MONORAIL_CAP_TABLE", default_value_t = DEFAULT_TABLE_CAP)]
        cap_table: usize,
        #[arg(long, env = "MONORAIL_CAP_SOP", default_value_t = DEFAULT_SOP_CAP)]
        cap_sop: usize,
    },
    /// Run the end-to-end refutation pipeline and print the report
    Demo {
        /// Vertex count (>= 2)
        #[arg(long)]
        m: usize,
        /// Clique size (>= 3)
        #[arg(long)]
        s: usize,
        #[arg(long, env = "MONORAIL_CAP_TABLE", default_value_t = DEFAULT_TABLE_CAP)]
        cap_table: usize,
        #[arg(long, env = "MONORAIL_CAP_SOP", default_value_t = DEFAULT_SOP_CAP)]
        cap_sop: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print gate statistics of a circuit
    Stats {
        #[command(flatten)]
        input: CircuitInput,
    },
}

/// SOP input that may be omitted (when --m/--s is given instead).
#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalSopInput {
    /// Inline rail-circuit formula (even arity, no '!'), expanded to SOP
    #[arg(long, value_name = "FORMULA")]
    expr: Option<String>,
    /// SOP file (INPUTS header, one product per line), '-' for stdin
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

/// Parses and dispatches `args`, writing normal output to `out` and
/// diagnostics to `err`. Returns the process exit code; no global state is
/// touched, so this is directly callable from tests.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn parse_assignment(text: &str, expected: usize) -> Result<Assignment, CliError> {
    let mut bits = Vec::new();
    for ch in text.chars() {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            ',' | ' ' | '(' | ')' => {}
            other => {
                return Err(CliError::Usage(format!(
                    "unexpected character '{other}' in assignment"
                )))
            }
        }
    }
    if bits.len() != expected {
        return Err(CliError::Usage(format!(
            "assignment has {} bits but the circuit has {expected} inputs",
            bits.len()
        )));
    }
    Ok(Assignment::new(bits))
}

/// Number of variables `n` of a dual-rail SOP, with a range check on the
/// pivot.
fn rail_vars(s: &SopFormula, pivot: usize) -> Result<usize, CliError> {
    if !s.input_arity().is_multiple_of(2) {
        return Err(TransformError::OddArity {
            arity: s.input_arity(),
        }
        .into());
    }
    let n = s.input_arity() / 2;
    if pivot >= n {
        return Err(TransformError::PivotOutOfRange { pivot, vars: n }.into());
    }
    Ok(n)
}

fn edge_list(a: &Assignment, m: usize) -> String {
    let present: Vec<String> = (0..a.len())
        .filter(|&e| a.bit(e))
        .map(|e| {
            let (i, j) = edge_endpoints(e, m).expect("witness bits are edges");
            format!("({i},{j})")
        })
        .collect();
    match present.len() {
        0 => "no edges present".to_string(),
        1 => format!("edge {} present, all others absent", present[0]),
        _ => format!("edges {} present, all others absent", present.join(", ")),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Parse { input } => {
            let c = input.load()?;
            write!(out, "{}", fmt_io::write_circuit(&c))?;
            Ok(0)
        }
        Command::Print { input } => {
            let c = input.load()?;
            writeln!(out, "{}", lang::print(&c))?;
            Ok(0)
        }
        Command::Eval { input, assign } => {
            let c = input.load()?;
            let a = parse_assignment(&assign, c.input_arity())?;
            writeln!(out, "{}", evaluate(&c, &a)? as u8)?;
            Ok(0)
        }
        Command::Table {
            input,
            cap_table,
            jobs,
        } => {
            let c = input.load()?;
            let t = truth_table_with(&c, cap_table, jobs)?;
            writeln!(out, "{}", t.to_hex())?;
            Ok(0)
        }
        Command::Monotone {
            input,
            cap_table,
            jobs,
        } => {
            let c = input.load()?;
            let t = truth_table_with(&c, cap_table, jobs)?;
            match monotone_violation(&t) {
                None => {
                    writeln!(out, "MONOTONE")?;
                    Ok(0)
                }
                Some((lo, hi)) => {
                    writeln!(out, "NOT MONOTONE at {lo}->{hi}")?;
                    Ok(1)
                }
            }
        }
        Command::Equiv {
            lhs,
            rhs,
            cap_table,
            jobs,
            random_equiv,
            trials,
            seed,
        } => {
            let l = fmt_io::read_circuit(&read_text(&lhs)?)?;
            let r = fmt_io::read_circuit(&read_text(&rhs)?)?;
            if random_equiv {
                match check_equivalence_random(&l, &r, trials, seed)? {
                    RandomEquivalence::Differs(report) => {
                        let w = report.witness.expect("differs has witness");
                        writeln!(
                            out,
                            "DIFFERS at {w}: lhs={} rhs={}",
                            report.lhs_value.expect("set") as u8,
                            report.rhs_value.expect("set") as u8
                        )?;
                        Ok(1)
                    }
                    RandomEquivalence::NoWitnessFound { trials } => {
                        writeln!(
                            out,
                            "NO COUNTEREXAMPLE in {trials} random trials \
                             (equivalence not certified)"
                        )?;
                        Ok(0)
                    }
                }
            } else {
                let report = check_equivalence_with(&l, &r, cap_table, jobs)?;
                match report.witness {
                    None => {
                        writeln!(out, "EQUIVALENT")?;
                        Ok(0)
                    }
                    Some(w) => {
                        writeln!(
                            out,
                            "DIFFERS at {w}: lhs={} rhs={}",
                            report.lhs_value.expect("set") as u8,
                            report.rhs_value.expect("set") as u8
                        )?;
                        Ok(1)
                    }
                }
            }
        }
        Command::Clique { m, s, no_sharing } => {
            let p = CliqueParams::new(m, s)?;
            let opts = BuildOptions {
                sharing: !no_sharing,
                ..BuildOptions::default()
            };
            let c = build_clique_with(p, opts)?;
            write!(out, "{}", fmt_io::write_circuit(&c))?;
            Ok(0)
        }
        Command::Standard { input } => {
            let c = input.load()?;
            write!(out, "{}", fmt_io::write_circuit(&to_standard_form(&c)))?;
            Ok(0)
        }
        Command::Split { input } => {
            let c = input.load()?;
            let d = split_negations(&c)?;
            write!(out, "{}", fmt_io::write_circuit(d.inner()))?;
            Ok(0)
        }
        Command::Sop { input, cap_sop } => {
            let c = input.load()?;
            let d = DualRailCircuit::new(c)?;
            let s = sop_expand_capped(&d, cap_sop)?;
            write!(out, "{}", fmt_io::write_sop(&s))?;
            Ok(0)
        }
        Command::Extract {
            input,
            pivot,
            cap_sop,
        } => {
            let s = input.load(cap_sop)?;
            rail_vars(&s, pivot)?;
            let e = extract_negated(&s, pivot);
            write!(out, "{}", fmt_io::write_extracted(&e))?;
            Ok(0)
        }
        Command::SimaStep {
            input,
            pivot,
            cap_sop,
        } => {
            let s = input.load(cap_sop)?;
            rail_vars(&s, pivot)?;
            let replaced = sima_replace_one(&extract_negated(&s, pivot));
            write!(out, "{}", fmt_io::write_sop(&replaced))?;
            Ok(0)
        }
        Command::SimaFull { input, cap_sop } => {
            let c = input.load()?;
            let d = DualRailCircuit::new(c)?;
            let result = sima_full_procedure_capped(&d, cap_sop)?;
            write!(out, "{}", fmt_io::write_circuit(&result))?;
            Ok(0)
        }
        Command::Claim1 {
            m,
            s,
            pivot,
            input,
            cap_sop,
        } => {
            let p = CliqueParams::new(m, s)?;
            let n = p.edge_count();
            if pivot >= n {
                return Err(TransformError::PivotOutOfRange { pivot, vars: n }.into());
            }
            let c = if input.is_empty() {
                clique::build_clique(p)?
            } else {
                input.load()?
            };
            if c.input_arity() != n {
                return Err(CliError::Usage(format!(
                    "circuit has {} inputs but CLIQUE({m},{s}) has {n} edge variables",
                    c.input_arity()
                )));
            }
            let d = split_negations(&to_standard_form(&c))?;
            let sop = sop_expand_capped(&d, cap_sop)?;
            let e = extract_negated(&sop, pivot);
            match check_claim1(p, &d, &e)? {
                Claim1Outcome::Holds { satisfying } => {
                    writeln!(
                        out,
                        "CLAIM1 HOLDS for pivot {pivot}: \
                         {satisfying} hypothesis assignments, no violation"
                    )?;
                    Ok(0)
                }
                Claim1Outcome::Violated {
                    assignment,
                    value,
                    flipped_value,
                } => {
                    writeln!(
                        out,
                        "CLAIM1 VIOLATED at {assignment}: f(A)={} f(A')={}",
                        value as u8, flipped_value as u8
                    )?;
                    Ok(1)
                }
            }
        }
        Command::SetGap {
            m,
            s,
            pivot,
            input,
            cap_table,
            cap_sop,
        } => {
            let sop = match (m, s, &input.expr, &input.file) {
                (Some(m), Some(s), None, None) => {
                    let p = CliqueParams::new(m, s)?;
                    let f_prime = crate::critique::build_f_prime(p)?;
                    let d = split_negations(&to_standard_form(&f_prime))?;
                    sop_expand_capped(&d, cap_sop)?
                }
                (None, None, expr, file) if expr.is_some() || file.is_some() => {
                    let sop_input = SopInput {
                        expr: expr.clone(),
                        file: file.clone(),
                    };
                    sop_input.load(cap_sop)?
                }
                _ => {
                    return Err(CliError::Usage(
                        "give either --m/--s or one SOP input (--expr/--file)".into(),
                    ))
                }
            };
            rail_vars(&sop, pivot)?;
            let report = check_set_gap_with(&sop, pivot, cap_table)?;
            writeln!(out, "LEFT {}", report.lhs.len())?;
            writeln!(out, "RIGHT {}", report.rhs.len())?;
            writeln!(out, "GAP {}", report.gap.len())?;
            for a in &report.gap {
                writeln!(out, "GAP_AT {a}")?;
            }
            Ok(if report.has_gap() { 1 } else { 0 })
        }
        Command::Demo {
            m,
            s,
            cap_table,
            cap_sop,
            jobs,
        } => {
            let p = CliqueParams::new(m, s)?;
            let report = run_counterexample_with(p, cap_table, cap_sop, jobs)?;
            writeln!(out, "f'  = {}", lang::print(&report.f_prime))?;
            writeln!(out, "f'  gates: {}", report.f_prime.gate_stats())?;
            writeln!(out, "f'  vs CLIQUE({m},{s}): EQUIVALENT")?;
            writeln!(out, "f'' = {}", lang::print(&report.f_double_prime))?;
            writeln!(out, "f'' gates: {}", report.f_double_prime.gate_stats())?;
            let w = &report.witness;
            writeln!(
                out,
                "f'' vs CLIQUE({m},{s}): DIFFERS at {w}: f''={} clique={}",
                report.equiv_after.lhs_value.expect("differs") as u8,
                report.equiv_after.rhs_value.expect("differs") as u8,
            )?;
            writeln!(out, "witness graph: {}", edge_list(w, m))?;
            writeln!(
                out,
                "DIFFERS at assignment e(0,1)=1, others 0: f''={}, CLIQUE={}",
                report.single_edge_value as u8, report.single_edge_oracle as u8
            )?;
            Ok(1)
        }
        Command::Stats { input } => {
            let c = input.load()?;
            let stats: GateStats = c.gate_stats();
            writeln!(out, "{stats}")?;
            Ok(0)
        }
    }
}
