//! CLIQUE(m,s) over edge variables: a naive monotone circuit generator and
//! an independent graph-theoretic oracle used to cross-check it.
//!
//! A graph on `m` vertices is encoded as `n = C(m,2)` Boolean edge
//! variables in lexicographic pair order (see [`edge_index`]). The circuit
//! is the textbook OR-over-subsets form: for every s-vertex subset, the AND
//! of its `C(s,2)` edges. The oracle never touches circuits: it decodes the
//! assignment into adjacency bitmasks and searches subsets directly.

use itertools::Itertools;
use thiserror::Error;

use crate::eval::Assignment;
use crate::ir::{Circuit, CircuitBuilder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueError {
    #[error("need at least 2 vertices, got m={m}")]
    TooFewVertices { m: usize },
    #[error("clique size {s} out of range 1..={m}")]
    CliqueSizeOutOfRange { s: usize, m: usize },
    #[error("({i},{j}) is not an ordered vertex pair with {j} < {m}")]
    BadEdge { i: usize, j: usize, m: usize },
    #[error("construction needs {subsets} vertex subsets, over the budget of {budget}")]
    BudgetExceeded { subsets: usize, budget: usize },
    #[error("assignment has {got} bits but the graph has {expected} edge slots")]
    ArityMismatch { got: usize, expected: usize },
}

/// Binomial coefficient, saturating at `usize::MAX` instead of overflowing.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Vertex count `m` and clique size `s`; the function is over
/// `n = C(m,2)` edge variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueParams {
    m: usize,
    s: usize,
}

impl CliqueParams {
    pub fn new(m: usize, s: usize) -> Result<Self, CliqueError> {
        if m < 2 {
            return Err(CliqueError::TooFewVertices { m });
        }
        if s < 1 || s > m {
            return Err(CliqueError::CliqueSizeOutOfRange { s, m });
        }
        Ok(CliqueParams { m, s })
    }

    pub fn m(self) -> usize {
        self.m
    }

    pub fn s(self) -> usize {
        self.s
    }

    /// Number of edge variables, `C(m,2)`.
    pub fn edge_count(self) -> usize {
        self.m * (self.m - 1) / 2
    }

    /// Number of candidate vertex subsets, `C(m,s)`.
    pub fn subset_count(self) -> usize {
        binomial(self.m, self.s)
    }
}

/// Lexicographic rank of the vertex pair `(i,j)`, `i < j < m`, among all
/// such pairs: for m=4 the order is (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
pub fn edge_index(i: usize, j: usize, m: usize) -> Result<usize, CliqueError> {
    if i >= j || j >= m {
        return Err(CliqueError::BadEdge { i, j, m });
    }
    Ok(i * m - i * (i + 1) / 2 + (j - i - 1))
}

/// Inverse of [`edge_index`].
pub fn edge_endpoints(edge: usize, m: usize) -> Result<(usize, usize), CliqueError> {
    let mut rank = edge;
    for i in 0..m {
        let row = m - 1 - i;
        if rank < row {
            return Ok((i, i + 1 + rank));
        }
        rank -= row;
    }
    Err(CliqueError::BadEdge { i: m, j: edge, m })
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Hash-cons gates during construction. Disable to measure the naive
    /// construction's own gate count.
    pub sharing: bool,
    /// Maximum number of vertex subsets the construction may enumerate.
    pub subset_budget: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            sharing: true,
            subset_budget: 1_000_000,
        }
    }
}

/// Monotone CLIQUE(m,s) circuit with default options.
pub fn build_clique(p: CliqueParams) -> Result<Circuit, CliqueError> {
    build_clique_with(p, BuildOptions::default())
}

/// Monotone CLIQUE(m,s) circuit: OR over all C(m,s) subsets (lexicographic)
/// of the left-associated AND of each subset's edges. `s = 1` is the
/// constant 1 (any nonempty graph has a 1-clique); `s = 2` degenerates to
/// the OR of all edges. Contains no Not gates.
pub fn build_clique_with(p: CliqueParams, opts: BuildOptions) -> Result<Circuit, CliqueError> {
    let n = p.edge_count();
    let subsets = p.subset_count();
    if subsets > opts.subset_budget {
        return Err(CliqueError::BudgetExceeded {
            subsets,
            budget: opts.subset_budget,
        });
    }
    let mut b = if opts.sharing {
        CircuitBuilder::new(n)
    } else {
        CircuitBuilder::without_sharing(n)
    };
    if p.s() == 1 {
        let out = b.constant(true);
        return Ok(b.finish(out));
    }
    let mut terms = Vec::with_capacity(subsets);
    for subset in (0..p.m()).combinations(p.s()) {
        let mut edges = Vec::with_capacity(p.s() * (p.s() - 1) / 2);
        for pair in subset.iter().combinations(2) {
            let e = edge_index(*pair[0], *pair[1], p.m())?;
            edges.push(b.input(e));
        }
        terms.push(b.and_all(&edges));
    }
    let out = b.or_all(&terms);
    Ok(b.finish(out))
}

/// Decides CLIQUE(m,s) directly on the assignment: decodes adjacency
/// bitmasks and tests every s-subset for full connectivity. Shares no code
/// with the circuit path beyond the edge-ordering convention.
pub fn clique_oracle(p: CliqueParams, a: &Assignment) -> Result<bool, CliqueError> {
    if a.len() != p.edge_count() {
        return Err(CliqueError::ArityMismatch {
            got: a.len(),
            expected: p.edge_count(),
        });
    }
    assert!(p.m() <= 64, "adjacency masks hold at most 64 vertices");
    let mut adj = vec![0u64; p.m()];
    let mut slot = 0;
    for i in 0..p.m() {
        for j in i + 1..p.m() {
            if a.bit(slot) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            slot += 1;
        }
    }
    'subsets: for subset in (0..p.m()).combinations(p.s()) {
        for (idx, &i) in subset.iter().enumerate() {
            for &j in &subset[idx + 1..] {
                if adj[i] >> j & 1 == 0 {
                    continue 'subsets;
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{evaluate, is_monotone, truth_table};

    #[test]
    fn edge_index_is_lexicographic_for_m4() {
        let expected = [
            ((0, 1), 0),
            ((0, 2), 1),
            ((0, 3), 2),
            ((1, 2), 3),
            ((1, 3), 4),
            ((2, 3), 5),
        ];
        for ((i, j), e) in expected {
            assert_eq!(edge_index(i, j, 4).unwrap(), e);
        }
    }

    #[test]
    fn edge_index_rejects_bad_pairs() {
        assert!(edge_index(2, 2, 4).is_err());
        assert!(edge_index(3, 1, 4).is_err());
        assert!(edge_index(1, 4, 4).is_err());
    }

    #[test]
    fn edge_endpoints_inverts_edge_index() {
        for m in 2..=6 {
            for e in 0..m * (m - 1) / 2 {
                let (i, j) = edge_endpoints(e, m).unwrap();
                assert_eq!(edge_index(i, j, m).unwrap(), e);
            }
            assert!(edge_endpoints(m * (m - 1) / 2, m).is_err());
        }
    }

    #[test]
    fn params_validate_ranges() {
        assert!(CliqueParams::new(1, 1).is_err());
        assert!(CliqueParams::new(3, 0).is_err());
        assert!(CliqueParams::new(3, 4).is_err());
        let p = CliqueParams::new(5, 3).unwrap();
        assert_eq!(p.edge_count(), 10);
        assert_eq!(p.subset_count(), 10);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn triangle_function_has_one_satisfying_assignment() {
        let p = CliqueParams::new(3, 3).unwrap();
        let c = build_clique(p).unwrap();
        let t = truth_table(&c).unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(t.ones(), 1);
        assert!(t.get(7));
    }

    #[test]
    fn any_edge_satisfies_s2() {
        let p = CliqueParams::new(4, 2).unwrap();
        let c = build_clique(p).unwrap();
        let t = truth_table(&c).unwrap();
        assert_eq!(t.ones(), 63);
        assert!(!t.get(0));
    }

    #[test]
    fn triangle_inside_larger_graph() {
        let p = CliqueParams::new(4, 3).unwrap();
        let c = build_clique(p).unwrap();
        // Edges (0,1), (0,2), (1,2) are variables 0, 1, 3.
        let index = 1 << 0 | 1 << 1 | 1 << 3;
        let a = Assignment::from_index(index, 6);
        assert!(evaluate(&c, &a).unwrap());
        assert!(clique_oracle(p, &a).unwrap());
    }

    #[test]
    fn s1_is_constant_true() {
        let p = CliqueParams::new(3, 1).unwrap();
        let c = build_clique(p).unwrap();
        assert_eq!(c.input_arity(), 3);
        assert_eq!(c.gate_stats().total(), 0);
        let t = truth_table(&c).unwrap();
        assert_eq!(t.ones(), 8);
    }

    #[test]
    fn oracle_on_single_edge_graph() {
        let p = CliqueParams::new(3, 3).unwrap();
        assert!(clique_oracle(p, &Assignment::new(vec![true; 3])).unwrap());
        // One edge alone supports no clique larger than 2 vertices.
        let one_edge = Assignment::from_index(1, 3);
        assert!(!clique_oracle(p, &one_edge).unwrap());
    }

    #[test]
    fn oracle_finds_k4_inside_five_vertices() {
        let p = CliqueParams::new(5, 4).unwrap();
        let mut bits = vec![false; 10];
        for i in 0..4 {
            for j in i + 1..4 {
                bits[edge_index(i, j, 5).unwrap()] = true;
            }
        }
        assert!(clique_oracle(p, &Assignment::new(bits.clone())).unwrap());
        // Remove one K4 edge and the 4-clique disappears.
        bits[edge_index(2, 3, 5).unwrap()] = false;
        assert!(!clique_oracle(p, &Assignment::new(bits)).unwrap());
    }

    #[test]
    fn circuit_matches_oracle_exhaustively_through_m4() {
        for m in 2..=4 {
            for s in 1..=m {
                let p = CliqueParams::new(m, s).unwrap();
                let c = build_clique(p).unwrap();
                let t = truth_table(&c).unwrap();
                for index in 0..t.len() {
                    let a = Assignment::from_index(index, p.edge_count());
                    assert_eq!(
                        t.get(index),
                        clique_oracle(p, &a).unwrap(),
                        "m={m} s={s} index={index}"
                    );
                }
            }
        }
    }

    #[test]
    fn clique_circuits_are_monotone_and_not_free() {
        for m in 2..=5 {
            for s in 1..=m {
                let p = CliqueParams::new(m, s).unwrap();
                let c = build_clique(p).unwrap();
                assert_eq!(c.gate_stats().not_count, 0, "m={m} s={s}");
                assert!(is_monotone(&truth_table(&c).unwrap()), "m={m} s={s}");
            }
        }
    }

    #[test]
    fn unshared_gate_count_matches_construction_shape() {
        // Each of the C(m,s) subsets needs C(s,2)-1 ANDs for its product,
        // and chaining the subsets needs C(m,s)-1 ORs.
        for (m, s) in [(3, 3), (4, 3), (4, 2), (5, 3), (5, 4)] {
            let p = CliqueParams::new(m, s).unwrap();
            let opts = BuildOptions {
                sharing: false,
                ..BuildOptions::default()
            };
            let c = build_clique_with(p, opts).unwrap();
            let subsets = p.subset_count();
            let per_subset = s * (s - 1) / 2 - 1;
            let expected = subsets * per_subset + (subsets - 1);
            assert_eq!(c.gate_stats().total(), expected, "m={m} s={s}");
        }
        // Frozen spot value: (4,3) has 4 subsets of 3 edges each.
        let p = CliqueParams::new(4, 3).unwrap();
        let opts = BuildOptions {
            sharing: false,
            ..BuildOptions::default()
        };
        let c = build_clique_with(p, opts).unwrap();
        assert_eq!(c.gate_stats().total(), 11);
    }

    #[test]
    fn sharing_never_changes_the_function() {
        for (m, s) in [(4, 2), (4, 3), (5, 3)] {
            let p = CliqueParams::new(m, s).unwrap();
            let shared = build_clique(p).unwrap();
            let unshared = build_clique_with(
                p,
                BuildOptions {
                    sharing: false,
                    ..BuildOptions::default()
                },
            )
            .unwrap();
            assert_eq!(
                truth_table(&shared).unwrap(),
                truth_table(&unshared).unwrap()
            );
        }
    }

    #[test]
    fn budget_stops_oversized_builds() {
        let p = CliqueParams::new(20, 10).unwrap();
        let err = build_clique_with(
            p,
            BuildOptions {
                subset_budget: 1000,
                ..BuildOptions::default()
            },
        )
        .unwrap_err();
        assert_eq!(
            err,
            CliqueError::BudgetExceeded {
                subsets: 184_756,
                budget: 1000
            }
        );
    }

    #[test]
    fn oracle_rejects_arity_mismatch() {
        let p = CliqueParams::new(4, 3).unwrap();
        let err = clique_oracle(p, &Assignment::from_index(0, 5)).unwrap_err();
        assert_eq!(
            err,
            CliqueError::ArityMismatch {
                got: 5,
                expected: 6
            }
        );
    }
}
