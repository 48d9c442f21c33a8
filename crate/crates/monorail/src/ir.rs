//! Circuit IR: immutable DAGs of `Const`/`Input`/`Not`/`And`/`Or` nodes.
//!
//! Circuits are built through [`CircuitBuilder`], which hash-conses nodes so
//! structurally identical subcircuits share one store entry (fan-out is
//! modeled as sharing). Children always point at earlier store entries, so
//! the store is in topological order and acyclic by construction.
//!
//! Constructors never simplify: `Not(Const(true))` is stored as written.
//! Simplification is an explicit pass ([`constant_fold`]), and even that pass
//! only applies local constant rules — contradictions like `x0 & !x0` are
//! kept verbatim, because the rewriting pipeline downstream depends on their
//! syntactic presence.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Zero-based input variable index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Index into a circuit's node store.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef(usize);

impl NodeRef {
    pub fn new(index: usize) -> Self {
        NodeRef(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// A single circuit node. `And`/`Or` have exactly two children, `Not` one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Const(bool),
    Input(VarId),
    Not(NodeRef),
    And(NodeRef, NodeRef),
    Or(NodeRef, NodeRef),
}

impl Node {
    pub fn is_gate(self) -> bool {
        matches!(self, Node::Not(_) | Node::And(..) | Node::Or(..))
    }

    pub fn children(self) -> impl Iterator<Item = NodeRef> {
        let pair = match self {
            Node::Const(_) | Node::Input(_) => [None, None],
            Node::Not(a) => [Some(a), None],
            Node::And(a, b) | Node::Or(a, b) => [Some(a), Some(b)],
        };
        pair.into_iter().flatten()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IrError {
    #[error("child reference {child} out of range (store holds {store_len} nodes)")]
    ChildOutOfRange { child: usize, store_len: usize },
    #[error("input variable x{var} out of range for arity {arity}")]
    VarOutOfRange { var: usize, arity: usize },
    #[error("node {node} references child {child} at or after itself")]
    ChildNotEarlier { node: usize, child: usize },
    #[error("output reference {output} out of range (store holds {store_len} nodes)")]
    OutputOutOfRange { output: usize, store_len: usize },
}

/// Gate tally of the nodes reachable from a circuit's output. Inputs and
/// constants are not gates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateStats {
    pub and_count: usize,
    pub or_count: usize,
    pub not_count: usize,
}

impl GateStats {
    pub fn total(self) -> usize {
        self.and_count + self.or_count + self.not_count
    }
}

impl fmt::Display for GateStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "and={} or={} not={} total={}",
            self.and_count,
            self.or_count,
            self.not_count,
            self.total()
        )
    }
}

/// Append-only node store under construction.
///
/// `Const` and `Input` nodes are always deduplicated. Gate nodes are
/// deduplicated unless the builder was created with [`CircuitBuilder::without_sharing`],
/// which is useful when the gate count of the naive construction itself is
/// the quantity under study.
pub struct CircuitBuilder {
    nodes: Vec<Node>,
    interned: HashMap<Node, NodeRef>,
    input_arity: usize,
    share_gates: bool,
}

impl CircuitBuilder {
    pub fn new(input_arity: usize) -> Self {
        CircuitBuilder {
            nodes: Vec::new(),
            interned: HashMap::new(),
            input_arity,
            share_gates: true,
        }
    }

    /// Builder that appends a fresh store entry for every gate.
    pub fn without_sharing(input_arity: usize) -> Self {
        CircuitBuilder {
            share_gates: false,
            ..CircuitBuilder::new(input_arity)
        }
    }

    pub fn input_arity(&self) -> usize {
        self.input_arity
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, r: NodeRef) -> Node {
        self.nodes[r.index()]
    }

    /// Adds a node, returning the existing ref when an identical node is
    /// already stored (always for `Const`/`Input`, for gates only when
    /// sharing is enabled).
    pub fn mk(&mut self, node: Node) -> Result<NodeRef, IrError> {
        if let Node::Input(v) = node {
            if v.index() >= self.input_arity {
                return Err(IrError::VarOutOfRange {
                    var: v.index(),
                    arity: self.input_arity,
                });
            }
        }
        for child in node.children() {
            if child.index() >= self.nodes.len() {
                return Err(IrError::ChildOutOfRange {
                    child: child.index(),
                    store_len: self.nodes.len(),
                });
            }
        }
        let dedup = self.share_gates || !node.is_gate();
        if dedup {
            if let Some(&existing) = self.interned.get(&node) {
                return Ok(existing);
            }
        }
        let r = NodeRef(self.nodes.len());
        self.nodes.push(node);
        if dedup {
            self.interned.insert(node, r);
        }
        Ok(r)
    }

    pub fn constant(&mut self, value: bool) -> NodeRef {
        self.mk(Node::Const(value)).expect("const is always valid")
    }

    /// Panics if `var` is out of range; use [`CircuitBuilder::mk`] for the
    /// checked form.
    pub fn input(&mut self, var: usize) -> NodeRef {
        self.mk(Node::Input(VarId(var)))
            .expect("input out of range")
    }

    pub fn not(&mut self, a: NodeRef) -> NodeRef {
        self.mk(Node::Not(a)).expect("child out of range")
    }

    pub fn and(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        self.mk(Node::And(a, b)).expect("child out of range")
    }

    pub fn or(&mut self, a: NodeRef, b: NodeRef) -> NodeRef {
        self.mk(Node::Or(a, b)).expect("child out of range")
    }

    /// Left-associated AND chain; the empty chain is `Const(true)`.
    pub fn and_all(&mut self, refs: &[NodeRef]) -> NodeRef {
        match refs.split_first() {
            None => self.constant(true),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &r| self.and(acc, r)),
        }
    }

    /// Left-associated OR chain; the empty chain is `Const(false)`.
    pub fn or_all(&mut self, refs: &[NodeRef]) -> NodeRef {
        match refs.split_first() {
            None => self.constant(false),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &r| self.or(acc, r)),
        }
    }

    pub fn finish(self, output: NodeRef) -> Circuit {
        assert!(
            output.index() < self.nodes.len(),
            "output reference out of range"
        );
        Circuit {
            nodes: self.nodes,
            output,
            input_arity: self.input_arity,
        }
    }
}

/// An immutable circuit: a topologically ordered node store, a declared
/// input arity, and one output.
///
/// The arity is declared rather than inferred so that inputs left unused by
/// a rewrite (for example after [`substitute_input`]) keep assignments
/// well-shaped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    nodes: Vec<Node>,
    output: NodeRef,
    input_arity: usize,
}

impl Circuit {
    /// Assembles a circuit from a raw store, validating topological order
    /// and variable ranges. Does not require deduplication: stores read
    /// from files or built without sharing may hold duplicate gates.
    pub fn from_parts(
        nodes: Vec<Node>,
        output: NodeRef,
        input_arity: usize,
    ) -> Result<Circuit, IrError> {
        for (i, node) in nodes.iter().enumerate() {
            if let Node::Input(v) = node {
                if v.index() >= input_arity {
                    return Err(IrError::VarOutOfRange {
                        var: v.index(),
                        arity: input_arity,
                    });
                }
            }
            for child in node.children() {
                if child.index() >= i {
                    return Err(IrError::ChildNotEarlier {
                        node: i,
                        child: child.index(),
                    });
                }
            }
        }
        if output.index() >= nodes.len() {
            return Err(IrError::OutputOutOfRange {
                output: output.index(),
                store_len: nodes.len(),
            });
        }
        Ok(Circuit {
            nodes,
            output,
            input_arity,
        })
    }

    pub fn node(&self, r: NodeRef) -> Node {
        self.nodes[r.index()]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn output(&self) -> NodeRef {
        self.output
    }

    pub fn input_arity(&self) -> usize {
        self.input_arity
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Mask over the store marking nodes reachable from the output.
    pub fn reachable(&self) -> Vec<bool> {
        let mut mask = vec![false; self.nodes.len()];
        mask[self.output.index()] = true;
        for id in (0..self.nodes.len()).rev() {
            if mask[id] {
                for child in self.nodes[id].children() {
                    mask[child.index()] = true;
                }
            }
        }
        mask
    }

    /// Counts gates reachable from the output only; unreachable store
    /// entries and input/constant nodes do not contribute.
    pub fn gate_stats(&self) -> GateStats {
        let mask = self.reachable();
        let mut stats = GateStats::default();
        for (id, node) in self.nodes.iter().enumerate() {
            if !mask[id] {
                continue;
            }
            match node {
                Node::And(..) => stats.and_count += 1,
                Node::Or(..) => stats.or_count += 1,
                Node::Not(_) => stats.not_count += 1,
                Node::Const(_) | Node::Input(_) => {}
            }
        }
        stats
    }
}

/// Rebuilds the reachable part of `c` into `b`, applying `f` to each node
/// after its children have been remapped. Returns the ref `c`'s output was
/// mapped to.
pub(crate) fn map_reachable(
    c: &Circuit,
    b: &mut CircuitBuilder,
    mut f: impl FnMut(&mut CircuitBuilder, Node) -> NodeRef,
) -> NodeRef {
    let mask = c.reachable();
    let mut mapped: Vec<Option<NodeRef>> = vec![None; c.len()];
    for id in 0..c.len() {
        if !mask[id] {
            continue;
        }
        let remap = |r: NodeRef| mapped[r.index()].expect("children map before parents");
        let node = match c.nodes[id] {
            Node::Not(a) => Node::Not(remap(a)),
            Node::And(a, x) => Node::And(remap(a), remap(x)),
            Node::Or(a, x) => Node::Or(remap(a), remap(x)),
            leaf => leaf,
        };
        mapped[id] = Some(f(b, node));
    }
    mapped[c.output.index()].expect("output is reachable")
}

/// Removes constants from gate inputs: `!0 -> 1`, `1 & a -> a`, `0 & a -> 0`,
/// `1 | a -> 1`, `0 | a -> a` (and symmetric), applied bottom-up. The result
/// computes the same function and no reachable gate has a `Const` child.
///
/// These are the only rules applied: `x & !x` and `x | !x` are left alone.
pub fn constant_fold(c: &Circuit) -> Circuit {
    let mut b = CircuitBuilder::new(c.input_arity());
    let out = map_reachable(c, &mut b, |b, node| match node {
        Node::Not(a) => match b.node(a) {
            Node::Const(v) => b.constant(!v),
            _ => b.not(a),
        },
        Node::And(x, y) => match (b.node(x), b.node(y)) {
            (Node::Const(false), _) | (_, Node::Const(false)) => b.constant(false),
            (Node::Const(true), _) => y,
            (_, Node::Const(true)) => x,
            _ => b.and(x, y),
        },
        Node::Or(x, y) => match (b.node(x), b.node(y)) {
            (Node::Const(true), _) | (_, Node::Const(true)) => b.constant(true),
            (Node::Const(false), _) => y,
            (_, Node::Const(false)) => x,
            _ => b.or(x, y),
        },
        leaf => b.mk(leaf).expect("leaf is valid"),
    });
    b.finish(out)
}

/// Replaces every `Input(var)` with `Const(value)` and constant-folds the
/// result. The input arity is unchanged; the slot simply becomes unused.
pub fn substitute_input(c: &Circuit, var: usize, value: bool) -> Result<Circuit, IrError> {
    if var >= c.input_arity() {
        return Err(IrError::VarOutOfRange {
            var,
            arity: c.input_arity(),
        });
    }
    let mut b = CircuitBuilder::new(c.input_arity());
    let out = map_reachable(c, &mut b, |b, node| match node {
        Node::Input(v) if v.index() == var => b.constant(value),
        other => b.mk(other).expect("children already mapped"),
    });
    Ok(constant_fold(&b.finish(out)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{truth_table, Assignment};

    fn x0_and_x1() -> Circuit {
        let mut b = CircuitBuilder::new(2);
        let x0 = b.input(0);
        let x1 = b.input(1);
        let out = b.and(x0, x1);
        b.finish(out)
    }

    #[test]
    fn mk_dedups_identical_gates() {
        let mut b = CircuitBuilder::new(2);
        let x0 = b.input(0);
        let x1 = b.input(1);
        let first = b.mk(Node::And(x0, x1)).unwrap();
        let second = b.mk(Node::And(x0, x1)).unwrap();
        assert_eq!(first, second);
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn first_node_in_empty_builder_gets_ref_zero() {
        let mut b = CircuitBuilder::new(1);
        let r = b.mk(Node::Input(VarId(0))).unwrap();
        assert_eq!(r.index(), 0);
    }

    #[test]
    fn constructors_do_not_simplify() {
        let mut b = CircuitBuilder::new(0);
        let one = b.constant(true);
        let r = b.mk(Node::Not(one)).unwrap();
        assert_eq!(b.node(r), Node::Not(one));
    }

    #[test]
    fn mk_rejects_out_of_range_children() {
        let mut b = CircuitBuilder::new(1);
        let err = b.mk(Node::Not(NodeRef::new(5))).unwrap_err();
        assert_eq!(
            err,
            IrError::ChildOutOfRange {
                child: 5,
                store_len: 0
            }
        );
        let err = b.mk(Node::Input(VarId(3))).unwrap_err();
        assert_eq!(err, IrError::VarOutOfRange { var: 3, arity: 1 });
    }

    #[test]
    fn without_sharing_duplicates_gates_but_not_inputs() {
        let mut b = CircuitBuilder::without_sharing(2);
        let x0 = b.input(0);
        let x0_again = b.input(0);
        assert_eq!(x0, x0_again);
        let a = b.and(x0, x0);
        let c = b.and(x0, x0);
        assert_ne!(a, c);
    }

    #[test]
    fn fold_removes_and_identity() {
        let mut b = CircuitBuilder::new(1);
        let one = b.constant(true);
        let x0 = b.input(0);
        let out = b.and(one, x0);
        let folded = constant_fold(&b.finish(out));
        assert_eq!(folded.node(folded.output()), Node::Input(VarId(0)));
    }

    #[test]
    fn fold_resolves_negated_constant() {
        let mut b = CircuitBuilder::new(1);
        let one = b.constant(true);
        let n = b.not(one);
        let x0 = b.input(0);
        let out = b.or(n, x0);
        let folded = constant_fold(&b.finish(out));
        assert_eq!(folded.node(folded.output()), Node::Input(VarId(0)));
    }

    #[test]
    fn fold_keeps_contradiction() {
        let mut b = CircuitBuilder::new(1);
        let x0 = b.input(0);
        let n = b.not(x0);
        let out = b.and(x0, n);
        let c = b.finish(out);
        let folded = constant_fold(&c);
        assert_eq!(folded.gate_stats(), c.gate_stats());
        match folded.node(folded.output()) {
            Node::And(..) => {}
            other => panic!("contradiction was rewritten to {other:?}"),
        }
    }

    #[test]
    fn substitute_one_forces_identity() {
        let c = x0_and_x1();
        let s = substitute_input(&c, 0, true).unwrap();
        assert_eq!(s.input_arity(), 2);
        assert_eq!(s.node(s.output()), Node::Input(VarId(1)));
    }

    #[test]
    fn substitute_zero_forces_constant() {
        let c = x0_and_x1();
        let s = substitute_input(&c, 0, false).unwrap();
        assert_eq!(s.node(s.output()), Node::Const(false));
    }

    #[test]
    fn substitute_in_or_drops_branch() {
        let mut b = CircuitBuilder::new(3);
        let x0 = b.input(0);
        let x1 = b.input(1);
        let x2 = b.input(2);
        let a = b.and(x0, x1);
        let out = b.or(a, x2);
        let c = b.finish(out);
        let s = substitute_input(&c, 2, false).unwrap();
        match s.node(s.output()) {
            Node::And(..) => {}
            other => panic!("expected x0 & x1, got {other:?}"),
        }
        assert_eq!(s.gate_stats().total(), 1);
    }

    #[test]
    fn substitute_rejects_out_of_range() {
        let c = x0_and_x1();
        assert!(substitute_input(&c, 2, true).is_err());
    }

    #[test]
    fn stats_count_left_assoc_chain() {
        let mut b = CircuitBuilder::new(3);
        let xs: Vec<_> = (0..3).map(|v| b.input(v)).collect();
        let out = b.and_all(&xs);
        let c = b.finish(out);
        let stats = c.gate_stats();
        assert_eq!(stats.and_count, 2);
        assert_eq!(stats.total(), 2);
    }

    #[test]
    fn stats_ignore_inputs_and_unreachable() {
        let mut b = CircuitBuilder::new(2);
        let x0 = b.input(0);
        let x1 = b.input(1);
        b.and(x0, x1); // never referenced by the output
        let c = b.finish(x0);
        assert_eq!(c.gate_stats().total(), 0);
    }

    #[test]
    fn from_parts_validates_topology() {
        let nodes = vec![Node::Not(NodeRef::new(1)), Node::Input(VarId(0))];
        let err = Circuit::from_parts(nodes, NodeRef::new(0), 1).unwrap_err();
        assert_eq!(err, IrError::ChildNotEarlier { node: 0, child: 1 });
    }

    #[test]
    fn rebuild_from_traversal_preserves_node_count() {
        let mut b = CircuitBuilder::new(3);
        let x0 = b.input(0);
        let x1 = b.input(1);
        let x2 = b.input(2);
        let a = b.and(x0, x1);
        let o = b.or(a, x2);
        let n = b.not(o);
        let out = b.and(n, a);
        let c = b.finish(out);

        let mut rb = CircuitBuilder::new(3);
        let new_out = map_reachable(&c, &mut rb, |rb, node| rb.mk(node).unwrap());
        let rebuilt = rb.finish(new_out);
        assert_eq!(rebuilt.len(), c.len());
        assert_eq!(rebuilt.nodes(), c.nodes());
    }

    #[test]
    fn fold_preserves_function_exhaustively() {
        // x0 & (1 | x1) & !(0 & x2) has constants at several depths.
        let mut b = CircuitBuilder::new(3);
        let one = b.constant(true);
        let zero = b.constant(false);
        let x0 = b.input(0);
        let x1 = b.input(1);
        let x2 = b.input(2);
        let o1 = b.or(one, x1);
        let a1 = b.and(zero, x2);
        let n1 = b.not(a1);
        let t = b.and(x0, o1);
        let out = b.and(t, n1);
        let c = b.finish(out);
        let folded = constant_fold(&c);
        assert_eq!(truth_table(&c).unwrap(), truth_table(&folded).unwrap());
        // No reachable gate retains a constant child.
        let mask = folded.reachable();
        for (id, node) in folded.nodes().iter().enumerate() {
            if mask[id] && node.is_gate() {
                for child in node.children() {
                    assert!(!matches!(folded.node(child), Node::Const(_)));
                }
            }
        }
    }

    #[test]
    fn substitute_matches_forced_assignment() {
        let mut b = CircuitBuilder::new(3);
        let x0 = b.input(0);
        let x1 = b.input(1);
        let x2 = b.input(2);
        let n = b.not(x1);
        let a = b.and(x0, n);
        let out = b.or(a, x2);
        let c = b.finish(out);
        for var in 0..3 {
            for value in [false, true] {
                let s = substitute_input(&c, var, value).unwrap();
                for idx in 0..8usize {
                    let a = Assignment::from_index(idx, 3);
                    let mut forced = a.bits().to_vec();
                    forced[var] = value;
                    let forced = Assignment::new(forced);
                    assert_eq!(
                        crate::eval::evaluate(&s, &a).unwrap(),
                        crate::eval::evaluate(&c, &forced).unwrap()
                    );
                }
            }
        }
    }
}
