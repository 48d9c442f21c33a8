//! The rewriting pipeline: standard-form conversion, dual-rail splitting,
//! sum-of-products expansion, negated-variable extraction, and the
//! replace-negations-with-1 procedure.
//!
//! The pipeline deliberately never simplifies: contradictory products such
//! as `{x0, !x0}` (in rail form: both rails of variable 0) are carried
//! verbatim through every pass. The final procedure, [`sima_full_procedure`],
//! always *produces* a monotone circuit but does not in general preserve
//! the function — demonstrating that is the point of the `critique` module.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::eval::Assignment;
use crate::ir::{Circuit, CircuitBuilder, Node, NodeRef};

/// Default bound on the estimated product count during SOP expansion.
pub const DEFAULT_SOP_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("not in standard form: node {node} is a Not gate above a non-input")]
    NotStandardForm { node: usize },
    #[error("dual-rail circuits need an even input arity, got {arity}")]
    OddArity { arity: usize },
    #[error("dual-rail circuits cannot contain Not gates (node {node})")]
    ContainsNot { node: usize },
    #[error("SOP expansion estimated {estimate} products, over the cap of {cap}")]
    SopCapExceeded { estimate: usize, cap: usize },
    #[error("assignment has {got} bits but {expected} were expected")]
    ArityMismatch { got: usize, expected: usize },
    #[error("pivot {pivot} out of range for {vars} variables")]
    PivotOutOfRange { pivot: usize, vars: usize },
    #[error("extracted rail {rail} still occurs in a product")]
    RailNotExtracted { rail: usize },
}

/// True iff every reachable `Not` gate sits directly above an `Input`.
pub fn is_standard_form(c: &Circuit) -> bool {
    let mask = c.reachable();
    c.nodes().iter().enumerate().all(|(id, node)| {
        !mask[id]
            || match *node {
                Node::Not(a) => matches!(c.node(a), Node::Input(_)),
                _ => true,
            }
    })
}

/// Rewrites `c` so that `Not` gates appear only directly above inputs, by
/// materializing both polarities of every internal node (De Morgan for
/// gates, double-negation collapse for stacked `Not`s). Function-equal to
/// the input; reachable gate count is at most `2·g + n` for an input with
/// `g` gates and `n` inputs.
pub fn to_standard_form(c: &Circuit) -> Circuit {
    let mask = c.reachable();
    let mut b = CircuitBuilder::new(c.input_arity());
    // pol[id] = (positive version, negated version) in the new store.
    let mut pol: Vec<Option<(NodeRef, NodeRef)>> = vec![None; c.len()];
    for id in 0..c.len() {
        if !mask[id] {
            continue;
        }
        let both = |r: NodeRef| pol[r.index()].expect("children map before parents");
        let pair = match c.node(NodeRef::new(id)) {
            Node::Const(v) => {
                let p = b.constant(v);
                let q = b.constant(!v);
                (p, q)
            }
            Node::Input(v) => {
                let p = b.input(v.index());
                let q = b.not(p);
                (p, q)
            }
            Node::Not(a) => {
                let (pa, na) = both(a);
                (na, pa)
            }
            Node::And(x, y) => {
                let (px, nx) = both(x);
                let (py, ny) = both(y);
                (b.and(px, py), b.or(nx, ny))
            }
            Node::Or(x, y) => {
                let (px, nx) = both(x);
                let (py, ny) = both(y);
                (b.or(px, py), b.and(nx, ny))
            }
        };
        pol[id] = Some(pair);
    }
    let (out, _) = pol[c.output().index()].expect("output is reachable");
    b.finish(out)
}

/// A Not-free circuit over `2n` rails: rail `v < n` carries variable `v`,
/// rail `n + v` carries its complement. On its own the inner circuit is an
/// unconstrained `2n`-input function; the original semantics live on valid
/// assignments only (see [`valid_extension`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualRailCircuit {
    inner: Circuit,
    vars: usize,
}

impl DualRailCircuit {
    /// Wraps a circuit, checking the two rail-form invariants: even input
    /// arity and no reachable Not gates.
    pub fn new(inner: Circuit) -> Result<Self, TransformError> {
        if !inner.input_arity().is_multiple_of(2) {
            return Err(TransformError::OddArity {
                arity: inner.input_arity(),
            });
        }
        let mask = inner.reachable();
        for (id, node) in inner.nodes().iter().enumerate() {
            if mask[id] && matches!(node, Node::Not(_)) {
                return Err(TransformError::ContainsNot { node: id });
            }
        }
        let vars = inner.input_arity() / 2;
        Ok(DualRailCircuit { inner, vars })
    }

    pub fn inner(&self) -> &Circuit {
        &self.inner
    }

    pub fn into_inner(self) -> Circuit {
        self.inner
    }

    /// Number of original variables `n`; the inner arity is `2n`.
    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Evaluates on an `n`-bit assignment by extending it to the valid
    /// `2n`-bit assignment (negative rails set to the complements).
    pub fn evaluate(&self, a: &Assignment) -> Result<bool, TransformError> {
        if a.len() != self.vars {
            return Err(TransformError::ArityMismatch {
                got: a.len(),
                expected: self.vars,
            });
        }
        let ext = valid_extension(a);
        crate::eval::evaluate(&self.inner, &ext).map_err(|_| TransformError::ArityMismatch {
            got: ext.len(),
            expected: self.inner.input_arity(),
        })
    }
}

/// Extends an `n`-bit assignment to the `2n`-bit rail assignment with
/// every negative rail set consistently: bit `n+v` = NOT bit `v`.
pub fn valid_extension(a: &Assignment) -> Assignment {
    let mut bits = a.bits().to_vec();
    bits.extend(a.bits().iter().map(|&b| !b));
    Assignment::new(bits)
}

/// Replaces each `Not(Input(v))` in a standard-form circuit by the
/// negative rail `Input(n + v)`, yielding a Not-free circuit over `2n`
/// inputs. A circuit that is already Not-free passes through with its
/// arity extended. For every valid assignment the result evaluates exactly
/// as the original did on the positive bits.
pub fn split_negations(c: &Circuit) -> Result<DualRailCircuit, TransformError> {
    let n = c.input_arity();
    let mask = c.reachable();
    let mut b = CircuitBuilder::new(2 * n);
    let mut mapped: Vec<Option<NodeRef>> = vec![None; c.len()];
    for id in 0..c.len() {
        if !mask[id] {
            continue;
        }
        let remap = |r: NodeRef| mapped[r.index()].expect("children map before parents");
        let new_ref = match c.node(NodeRef::new(id)) {
            Node::Const(v) => b.constant(v),
            Node::Input(v) => b.input(v.index()),
            Node::Not(a) => match c.node(a) {
                Node::Input(v) => b.input(n + v.index()),
                _ => return Err(TransformError::NotStandardForm { node: id }),
            },
            Node::And(x, y) => {
                let (x, y) = (remap(x), remap(y));
                b.and(x, y)
            }
            Node::Or(x, y) => {
                let (x, y) = (remap(x), remap(y));
                b.or(x, y)
            }
        };
        mapped[id] = Some(new_ref);
    }
    let out = mapped[c.output().index()].expect("output is reachable");
    DualRailCircuit::new(b.finish(out))
}

/// A conjunction of positive literals (rail indices), stored sorted and
/// duplicate-free. A product may contain both rails of one variable — the
/// contradiction is data here, never simplified away. The empty product is
/// the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Product {
    literals: Vec<usize>,
}

impl Product {
    pub fn new(mut literals: Vec<usize>) -> Self {
        literals.sort_unstable();
        literals.dedup();
        Product { literals }
    }

    pub fn literals(&self) -> &[usize] {
        &self.literals
    }

    /// The empty product, i.e. constant 1.
    pub fn is_true(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, rail: usize) -> bool {
        self.literals.binary_search(&rail).is_ok()
    }

    /// Copy with one rail removed (unchanged if absent).
    pub fn without(&self, rail: usize) -> Product {
        Product {
            literals: self
                .literals
                .iter()
                .copied()
                .filter(|&l| l != rail)
                .collect(),
        }
    }

    /// Conjunction of two products: the union of their literal sets.
    pub fn merge(&self, other: &Product) -> Product {
        let mut literals = Vec::with_capacity(self.literals.len() + other.literals.len());
        let (mut i, mut j) = (0, 0);
        while i < self.literals.len() || j < other.literals.len() {
            match (self.literals.get(i), other.literals.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    literals.push(a);
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&b)) if a < b => {
                    literals.push(a);
                    i += 1;
                }
                (Some(_), Some(&b)) => {
                    literals.push(b);
                    j += 1;
                }
                (Some(&a), None) => {
                    literals.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    literals.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Product { literals }
    }

    /// True iff every literal is set in `a`. Panics if a literal indexes
    /// past the assignment; callers validate arity.
    pub fn eval(&self, a: &Assignment) -> bool {
        self.literals.iter().all(|&l| a.bit(l))
    }
}

/// Syntactic sum of products over `input_arity` rails. Products are kept
/// sorted ([`Product`]'s lexicographic order) and duplicate-free, so equal
/// formulas compare equal. No product list means constant 0; an empty
/// product means constant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SopFormula {
    products: Vec<Product>,
    input_arity: usize,
}

impl SopFormula {
    /// Normalizes (sorts, dedups) the product list. Panics if a literal is
    /// outside `0..input_arity`; readers of external data validate first.
    pub fn new(mut products: Vec<Product>, input_arity: usize) -> Self {
        for p in &products {
            if let Some(&l) = p.literals().last() {
                assert!(
                    l < input_arity,
                    "rail {l} out of range for arity {input_arity}"
                );
            }
        }
        products.sort_unstable();
        products.dedup();
        SopFormula {
            products,
            input_arity,
        }
    }

    pub fn products(&self) -> &[Product] {
        &self.products
    }

    pub fn input_arity(&self) -> usize {
        self.input_arity
    }

    /// No products at all: the constant-0 formula.
    pub fn is_const_false(&self) -> bool {
        self.products.is_empty()
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, TransformError> {
        if a.len() != self.input_arity {
            return Err(TransformError::ArityMismatch {
                got: a.len(),
                expected: self.input_arity,
            });
        }
        Ok(self.products.iter().any(|p| p.eval(a)))
    }

    /// Materializes the formula as a circuit: left-associated AND per
    /// product, left-associated OR across products. The empty formula is
    /// `Const(false)`; an empty product contributes `Const(true)`.
    pub fn to_circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new(self.input_arity);
        let terms: Vec<NodeRef> = self
            .products
            .iter()
            .map(|p| {
                let lits: Vec<NodeRef> = p.literals().iter().map(|&l| b.input(l)).collect();
                b.and_all(&lits)
            })
            .collect();
        let out = b.or_all(&terms);
        b.finish(out)
    }
}

/// SOP expansion with the default product cap.
pub fn sop_expand(d: &DualRailCircuit) -> Result<SopFormula, TransformError> {
    sop_expand_capped(d, DEFAULT_SOP_CAP)
}

/// Distributes AND over OR bottom-up. The result is function-equal to the
/// inner circuit on ALL rail assignments, valid or not. Duplicate literals
/// and duplicate products collapse, but contradictory products survive.
/// Pre-deduplication product-count estimates are checked against `cap`.
pub fn sop_expand_capped(d: &DualRailCircuit, cap: usize) -> Result<SopFormula, TransformError> {
    let c = d.inner();
    let mask = c.reachable();
    let mut sets: Vec<Option<BTreeSet<Product>>> = vec![None; c.len()];
    for id in 0..c.len() {
        if !mask[id] {
            continue;
        }
        let set = |r: NodeRef| sets[r.index()].as_ref().expect("children before parents");
        let products: BTreeSet<Product> = match c.node(NodeRef::new(id)) {
            Node::Const(false) => BTreeSet::new(),
            Node::Const(true) => BTreeSet::from([Product::new(vec![])]),
            Node::Input(v) => BTreeSet::from([Product::new(vec![v.index()])]),
            Node::Not(_) => unreachable!("dual-rail circuits are Not-free"),
            Node::And(x, y) => {
                let (xs, ys) = (set(x), set(y));
                let estimate = xs.len().saturating_mul(ys.len());
                if estimate > cap {
                    return Err(TransformError::SopCapExceeded { estimate, cap });
                }
                let mut out = BTreeSet::new();
                for px in xs {
                    for py in ys {
                        out.insert(px.merge(py));
                    }
                }
                out
            }
            Node::Or(x, y) => {
                let (xs, ys) = (set(x), set(y));
                let estimate = xs.len().saturating_add(ys.len());
                if estimate > cap {
                    return Err(TransformError::SopCapExceeded { estimate, cap });
                }
                xs.union(ys).cloned().collect()
            }
        };
        sets[id] = Some(products);
    }
    let products = sets[c.output().index()]
        .take()
        .expect("output is reachable");
    Ok(SopFormula::new(
        products.into_iter().collect(),
        c.input_arity(),
    ))
}

/// An SOP factored around one negated variable:
/// `(¬x_pivot ∧ term_a) ∨ rest`, where `¬x_pivot` is the negative rail
/// `n + pivot` and neither `term_a` nor `rest` mentions that rail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractedForm {
    pivot: usize,
    term_a: SopFormula,
    rest: SopFormula,
}

impl ExtractedForm {
    /// Assembles an extracted form from parts, checking the invariants:
    /// matching even arities, pivot in range, and the pivot's negative
    /// rail absent from every product of both formulas.
    pub fn new(pivot: usize, term_a: SopFormula, rest: SopFormula) -> Result<Self, TransformError> {
        if term_a.input_arity() != rest.input_arity() {
            return Err(TransformError::ArityMismatch {
                got: rest.input_arity(),
                expected: term_a.input_arity(),
            });
        }
        if !term_a.input_arity().is_multiple_of(2) {
            return Err(TransformError::OddArity {
                arity: term_a.input_arity(),
            });
        }
        let n = term_a.input_arity() / 2;
        if pivot >= n {
            return Err(TransformError::PivotOutOfRange { pivot, vars: n });
        }
        let rail = n + pivot;
        for p in term_a.products().iter().chain(rest.products()) {
            if p.contains(rail) {
                return Err(TransformError::RailNotExtracted { rail });
            }
        }
        Ok(ExtractedForm {
            pivot,
            term_a,
            rest,
        })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// Original variable count `n` (the formulas live over `2n` rails).
    pub fn vars(&self) -> usize {
        self.term_a.input_arity() / 2
    }

    /// The rail index standing for `¬x_pivot`.
    pub fn negative_rail(&self) -> usize {
        self.vars() + self.pivot
    }

    pub fn term_a(&self) -> &SopFormula {
        &self.term_a
    }

    pub fn rest(&self) -> &SopFormula {
        &self.rest
    }

    /// Value on a full `2n`-bit rail assignment.
    pub fn eval(&self, a: &Assignment) -> Result<bool, TransformError> {
        let conj = a.bit(self.negative_rail()) && self.term_a.eval(a)?;
        Ok(conj || self.rest.eval(a)?)
    }

    /// Materializes the factored shape literally:
    /// `(rail ∧ term_a) ∨ rest` over `2n` inputs.
    pub fn to_circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new(self.term_a.input_arity());
        let rail = b.input(self.negative_rail());
        let ta = {
            let terms: Vec<NodeRef> = self
                .term_a
                .products()
                .iter()
                .map(|p| {
                    let lits: Vec<NodeRef> = p.literals().iter().map(|&l| b.input(l)).collect();
                    b.and_all(&lits)
                })
                .collect();
            b.or_all(&terms)
        };
        let conj = b.and(rail, ta);
        let rest = {
            let terms: Vec<NodeRef> = self
                .rest
                .products()
                .iter()
                .map(|p| {
                    let lits: Vec<NodeRef> = p.literals().iter().map(|&l| b.input(l)).collect();
                    b.and_all(&lits)
                })
                .collect();
            b.or_all(&terms)
        };
        let out = b.or(conj, rest);
        b.finish(out)
    }
}

/// Factors `s` around the negative rail of `pivot`: products containing
/// rail `n+pivot` move into `term_a` with that rail removed, the others
/// into `rest`. Always succeeds — an absent pivot just leaves `term_a`
/// empty (constant 0). Panics if `s` has odd arity or `pivot ≥ n`.
pub fn extract_negated(s: &SopFormula, pivot: usize) -> ExtractedForm {
    assert!(
        s.input_arity().is_multiple_of(2),
        "extraction needs dual-rail arity, got {}",
        s.input_arity()
    );
    let n = s.input_arity() / 2;
    assert!(pivot < n, "pivot {pivot} out of range for {n} variables");
    let rail = n + pivot;
    let mut term_a = Vec::new();
    let mut rest = Vec::new();
    for p in s.products() {
        if p.contains(rail) {
            term_a.push(p.without(rail));
        } else {
            rest.push(p.clone());
        }
    }
    ExtractedForm {
        pivot,
        term_a: SopFormula::new(term_a, s.input_arity()),
        rest: SopFormula::new(rest, s.input_arity()),
    }
}

/// Sets the extracted `¬x_pivot` to constant 1: the conjunction collapses
/// and the result is `term_a ∪ rest`. The pivot's negative rail occurs
/// nowhere in the output.
pub fn sima_replace_one(e: &ExtractedForm) -> SopFormula {
    let mut products = e.term_a.products().to_vec();
    products.extend_from_slice(e.rest.products());
    SopFormula::new(products, e.term_a.input_arity())
}

/// Full sequential procedure with the default SOP cap.
pub fn sima_full_procedure(d: &DualRailCircuit) -> Result<Circuit, TransformError> {
    sima_full_procedure_capped(d, DEFAULT_SOP_CAP)
}

/// Expands to SOP, then for each variable `v = 0..n` in ascending order
/// re-extracts around `¬x_v` and replaces it with 1. The result is
/// materialized over the `n` positive rails only and contains no Not
/// gates. Function preservation is deliberately NOT promised: see the
/// `critique` module for the refutation.
pub fn sima_full_procedure_capped(
    d: &DualRailCircuit,
    cap: usize,
) -> Result<Circuit, TransformError> {
    let n = d.vars();
    let mut s = sop_expand_capped(d, cap)?;
    for pivot in 0..n {
        let e = extract_negated(&s, pivot);
        s = sima_replace_one(&e);
    }
    debug_assert!(s
        .products()
        .iter()
        .all(|p| p.literals().iter().all(|&l| l < n)));
    let narrowed = SopFormula::new(s.products().to_vec(), n);
    Ok(narrowed.to_circuit())
}
