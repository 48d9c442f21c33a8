//! Seeded random generators for circuits and SOP formulas, used to build
//! property-test corpora. All functions are deterministic in the caller's
//! RNG, so a fixed seed reproduces a failure exactly.

use rand::Rng;

use crate::ir::{Circuit, CircuitBuilder, Node, NodeRef};
use crate::transform::{Product, SopFormula};

/// Random circuit over `inputs` variables with at most `max_gates` gates.
/// Gates draw children uniformly from everything built so far (inputs,
/// occasionally constants, earlier gates), so sharing and fan-out occur
/// naturally. With `allow_not` false the result is Not-free.
pub fn random_circuit<R: Rng>(
    rng: &mut R,
    inputs: usize,
    max_gates: usize,
    allow_not: bool,
) -> Circuit {
    assert!(inputs > 0, "need at least one input variable");
    let mut b = CircuitBuilder::new(inputs);
    let mut pool: Vec<NodeRef> = (0..inputs).map(|v| b.input(v)).collect();
    if rng.random_bool(0.15) {
        pool.push(b.constant(false));
    }
    if rng.random_bool(0.15) {
        pool.push(b.constant(true));
    }
    let gates = rng.random_range(0..=max_gates);
    let mut out = pool[rng.random_range(0..pool.len())];
    for _ in 0..gates {
        let a = pool[rng.random_range(0..pool.len())];
        let node = if allow_not && rng.random_bool(0.25) {
            Node::Not(a)
        } else {
            let c = pool[rng.random_range(0..pool.len())];
            if rng.random_bool(0.5) {
                Node::And(a, c)
            } else {
                Node::Or(a, c)
            }
        };
        out = b.mk(node).expect("pool refs are valid");
        pool.push(out);
    }
    b.finish(out)
}

/// Not-free random circuit; computes a monotone function by construction.
pub fn random_monotone_circuit<R: Rng>(rng: &mut R, inputs: usize, max_gates: usize) -> Circuit {
    random_circuit(rng, inputs, max_gates, false)
}

/// Random SOP over the `2·vars` rails of a dual-rail space. Products may
/// mention both rails of a variable (contradictions are legal data in this
/// pipeline) and may be empty.
pub fn random_sop<R: Rng>(
    rng: &mut R,
    vars: usize,
    max_products: usize,
    max_literals: usize,
) -> SopFormula {
    assert!(vars > 0, "need at least one variable");
    let arity = 2 * vars;
    let count = rng.random_range(0..=max_products);
    let products = (0..count)
        .map(|_| {
            let literals = (0..rng.random_range(0..=max_literals))
                .map(|_| rng.random_range(0..arity))
                .collect();
            Product::new(literals)
        })
        .collect();
    SopFormula::new(products, arity)
}
