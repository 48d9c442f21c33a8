//! The CLIQUE(m,s) family: circuits over C(m,2) edge variables, the
//! independent bitmask oracle, and gate counts with sharing on and off.

use monorail::clique::{
    build_clique, build_clique_with, clique_oracle, edge_endpoints, edge_index, BuildOptions,
    CliqueParams,
};
use monorail::eval::{evaluate, is_monotone, truth_table, Assignment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Edge variables are numbered lexicographically by endpoint pair.
    let m = 4;
    for i in 0..m {
        for j in (i + 1)..m {
            let e = edge_index(i, j, m)?;
            assert_eq!(edge_endpoints(e, m)?, (i, j));
            print!("e({i},{j})=x{e}  ");
        }
    }
    println!();

    // The circuit is a plain OR over all C(m,s) vertex subsets of the AND
    // of each subset's edges.
    let p = CliqueParams::new(4, 3)?;
    let c = build_clique(p)?;
    println!(
        "CLIQUE(4,3): {} edge inputs, {} subsets, gates {}",
        p.edge_count(),
        p.subset_count(),
        c.gate_stats()
    );

    // A triangle on {0,1,2} needs edges (0,1), (0,2), (1,2) = x0, x1, x3.
    let triangle = Assignment::from_index(0b1011, p.edge_count());
    println!(
        "triangle assignment {triangle}: circuit={} oracle={}",
        evaluate(&c, &triangle)? as u8,
        clique_oracle(p, &triangle)? as u8
    );

    // The oracle never looks at the circuit, so agreement on all 2^6
    // assignments is meaningful evidence.
    let t = truth_table(&c)?;
    for index in 0..t.len() {
        let a = Assignment::from_index(index, p.edge_count());
        assert_eq!(t.get(index), clique_oracle(p, &a)?);
    }
    println!("circuit agrees with oracle on all {} assignments", t.len());
    assert!(is_monotone(&t));
    assert_eq!(c.gate_stats().not_count, 0);
    println!("monotone, and built without a single NOT gate");

    // Without hash-consing every subset pays for its own AND chain:
    // C(m,s)*(C(s,2)-1) ANDs plus C(m,s)-1 ORs. With it, chains that start
    // with the same edges are built once — visible from s=4 up, where
    // different subsets share AND-chain prefixes.
    let big = CliqueParams::new(5, 4)?;
    let shared = build_clique(big)?;
    let naive = build_clique_with(
        big,
        BuildOptions {
            sharing: false,
            ..BuildOptions::default()
        },
    )?;
    println!(
        "CLIQUE(5,4) gate totals: shared={} unshared={}",
        shared.gate_stats().total(),
        naive.gate_stats().total()
    );
    Ok(())
}
