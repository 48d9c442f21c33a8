//! Evaluation: single assignments, exhaustive truth tables, monotonicity,
//! and equivalence checking.
//!
//! Truth tables are computed bit-parallel, 64 assignments per word, so
//! exhaustive checks stay practical up to the default cap of 24 inputs
//! (2^24 entries = 2 MiB per table). Assignment index `i` encodes variable
//! `v` in bit `v` of `i` (x0 is the least significant bit).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ir::{Circuit, Node};

/// Largest input arity `truth_table` accepts unless overridden.
pub const DEFAULT_TABLE_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("assignment has {got} bits but the circuit has {expected} inputs")]
    ArityMismatch { got: usize, expected: usize },
    #[error("input arity {arity} exceeds the table cap of {cap} inputs")]
    AboveCap { arity: usize, cap: usize },
    #[error("cannot compare circuits with arities {lhs} and {rhs}")]
    IncompatibleArity { lhs: usize, rhs: usize },
}

/// One concrete input valuation, `bits[v]` being the value of `x<v>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    /// Decodes assignment number `index`: variable `v` gets bit `v`.
    pub fn from_index(index: usize, arity: usize) -> Self {
        Assignment {
            bits: (0..arity).map(|v| index >> v & 1 == 1).collect(),
        }
    }

    pub fn to_index(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (v, &b)| acc | (b as usize) << v)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, v: usize) -> bool {
        self.bits[v]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Copy with variable `v` inverted.
    pub fn flipped(&self, v: usize) -> Assignment {
        let mut bits = self.bits.clone();
        bits[v] = !bits[v];
        Assignment { bits }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b as u8)?;
        }
        write!(f, ")")
    }
}

/// Evaluates `c` on one assignment by a single pass over the store.
pub fn evaluate(c: &Circuit, a: &Assignment) -> Result<bool, EvalError> {
    if a.len() != c.input_arity() {
        return Err(EvalError::ArityMismatch {
            got: a.len(),
            expected: c.input_arity(),
        });
    }
    let mut values = vec![false; c.len()];
    for (id, node) in c.nodes().iter().enumerate() {
        values[id] = match *node {
            Node::Const(v) => v,
            Node::Input(v) => a.bit(v.index()),
            Node::Not(x) => !values[x.index()],
            Node::And(x, y) => values[x.index()] && values[y.index()],
            Node::Or(x, y) => values[x.index()] || values[y.index()],
        };
    }
    Ok(values[c.output().index()])
}

/// Lane pattern for variable `v < 6`: bit `i` of each word holds variable
/// `v` of assignment `i`, i.e. bit `v` of the index `i`.
const LANE_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// The complete function table of a circuit: entry `i` is the output on
/// [`Assignment::from_index`]`(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of entries, `2^arity`.
    pub fn len(&self) -> usize {
        1usize << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false // every table has at least the arity-0 entry
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len(), "table index out of range");
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    /// Number of satisfying assignments.
    pub fn ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowercase hex dump: each group of 8 consecutive entries is one byte
    /// (entry index = bit index) printed as two digits, lowest-index group
    /// first. `x0 & x1` over 2 inputs prints as `08`.
    pub fn to_hex(&self) -> String {
        let bytes = self.len().div_ceil(8).max(1);
        let mut s = String::with_capacity(bytes * 2);
        for n in 0..bytes {
            let byte = (self.words[n / 8] >> (n % 8 * 8) & 0xFF) as u8;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }
}

fn eval_word(c: &Circuit, word_index: usize, arity: usize) -> u64 {
    let mut values = vec![0u64; c.len()];
    let base = word_index * 64;
    for (id, node) in c.nodes().iter().enumerate() {
        values[id] = match *node {
            Node::Const(v) => {
                if v {
                    !0
                } else {
                    0
                }
            }
            Node::Input(v) => {
                let v = v.index();
                if v < 6 {
                    LANE_MASKS[v]
                } else if base >> v & 1 == 1 {
                    !0
                } else {
                    0
                }
            }
            Node::Not(x) => !values[x.index()],
            Node::And(x, y) => values[x.index()] & values[y.index()],
            Node::Or(x, y) => values[x.index()] | values[y.index()],
        };
    }
    let mut out = values[c.output().index()];
    if arity < 6 {
        out &= (1u64 << (1usize << arity)) - 1;
    }
    out
}

/// Exhaustive table with the default cap of [`DEFAULT_TABLE_CAP`] inputs,
/// single-threaded.
pub fn truth_table(c: &Circuit) -> Result<TruthTable, EvalError> {
    truth_table_with(c, DEFAULT_TABLE_CAP, 1)
}

/// Exhaustive table; `cap` bounds the accepted arity and `jobs` worker
/// threads split the table ranges (values ≤ 1 run inline).
pub fn truth_table_with(c: &Circuit, cap: usize, jobs: usize) -> Result<TruthTable, EvalError> {
    let arity = c.input_arity();
    if arity > cap {
        return Err(EvalError::AboveCap { arity, cap });
    }
    let word_count = if arity < 6 { 1 } else { 1usize << (arity - 6) };
    let mut words = vec![0u64; word_count];
    if jobs <= 1 || word_count == 1 {
        for (w, slot) in words.iter_mut().enumerate() {
            *slot = eval_word(c, w, arity);
        }
    } else {
        let chunk = word_count.div_ceil(jobs);
        std::thread::scope(|scope| {
            for (t, slice) in words.chunks_mut(chunk).enumerate() {
                scope.spawn(move || {
                    for (offset, slot) in slice.iter_mut().enumerate() {
                        *slot = eval_word(c, t * chunk + offset, arity);
                    }
                });
            }
        });
    }
    Ok(TruthTable { arity, words })
}

/// Finds a pair witnessing non-monotonicity: assignments `a ≤ b` bitwise
/// (every variable of `a` at most that of `b`) with `f(a) = 1` and
/// `f(b) = 0`. Scans in ascending index order of `a`, then ascending
/// single-bit flips, so the first such pair reported is deterministic.
pub fn monotone_violation(t: &TruthTable) -> Option<(Assignment, Assignment)> {
    // Monotone iff raising any single variable never drops the output;
    // violations compose transitively, so single-bit steps suffice.
    for index in 0..t.len() {
        if !t.get(index) {
            continue;
        }
        for v in 0..t.arity() {
            if index >> v & 1 == 0 && !t.get(index | 1 << v) {
                return Some((
                    Assignment::from_index(index, t.arity()),
                    Assignment::from_index(index | 1 << v, t.arity()),
                ));
            }
        }
    }
    None
}

pub fn is_monotone(t: &TruthTable) -> bool {
    monotone_violation(t).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivVerdict {
    Equivalent,
    Differs,
}

/// Result of an exhaustive comparison. On `Differs`, `witness` is the
/// lowest-index assignment where the two circuits disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdict: EquivVerdict,
    pub witness: Option<Assignment>,
    pub lhs_value: Option<bool>,
    pub rhs_value: Option<bool>,
}

impl EquivalenceReport {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == EquivVerdict::Equivalent
    }
}

/// Exhaustive equivalence under the default table cap.
pub fn check_equivalence(lhs: &Circuit, rhs: &Circuit) -> Result<EquivalenceReport, EvalError> {
    check_equivalence_with(lhs, rhs, DEFAULT_TABLE_CAP, 1)
}

/// Exhaustive equivalence; compares whole tables and reports the
/// lowest-index differing assignment.
pub fn check_equivalence_with(
    lhs: &Circuit,
    rhs: &Circuit,
    cap: usize,
    jobs: usize,
) -> Result<EquivalenceReport, EvalError> {
    if lhs.input_arity() != rhs.input_arity() {
        return Err(EvalError::IncompatibleArity {
            lhs: lhs.input_arity(),
            rhs: rhs.input_arity(),
        });
    }
    let lt = truth_table_with(lhs, cap, jobs)?;
    let rt = truth_table_with(rhs, cap, jobs)?;
    for (w, (&lw, &rw)) in lt.words.iter().zip(&rt.words).enumerate() {
        let diff = lw ^ rw;
        if diff != 0 {
            let index = w * 64 + diff.trailing_zeros() as usize;
            return Ok(EquivalenceReport {
                verdict: EquivVerdict::Differs,
                witness: Some(Assignment::from_index(index, lt.arity())),
                lhs_value: Some(lt.get(index)),
                rhs_value: Some(rt.get(index)),
            });
        }
    }
    Ok(EquivalenceReport {
        verdict: EquivVerdict::Equivalent,
        witness: None,
        lhs_value: None,
        rhs_value: None,
    })
}

/// Outcome of sampling-based comparison. Finding no witness certifies
/// nothing; it only reports how many trials were run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RandomEquivalence {
    Differs(EquivalenceReport),
    NoWitnessFound { trials: usize },
}

/// Compares on `trials` assignments drawn from a seeded generator.
/// Usable above the table cap, but a clean run is not an equivalence proof.
pub fn check_equivalence_random(
    lhs: &Circuit,
    rhs: &Circuit,
    trials: usize,
    seed: u64,
) -> Result<RandomEquivalence, EvalError> {
    if lhs.input_arity() != rhs.input_arity() {
        return Err(EvalError::IncompatibleArity {
            lhs: lhs.input_arity(),
            rhs: rhs.input_arity(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arity = lhs.input_arity();
    for _ in 0..trials {
        let a = Assignment::new((0..arity).map(|_| rng.random_bool(0.5)).collect());
        let lv = evaluate(lhs, &a)?;
        let rv = evaluate(rhs, &a)?;
        if lv != rv {
            return Ok(RandomEquivalence::Differs(EquivalenceReport {
                verdict: EquivVerdict::Differs,
                witness: Some(a),
                lhs_value: Some(lv),
                rhs_value: Some(rv),
            }));
        }
    }
    Ok(RandomEquivalence::NoWitnessFound { trials })
}
