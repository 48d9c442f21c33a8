//! Standard form pushes every NOT down onto an input; dual-rail splitting
//! then removes NOTs entirely by doubling the input arity.

use monorail::eval::{check_equivalence, truth_table, Assignment};
use monorail::lang::{parse, print};
use monorail::transform::{is_standard_form, split_negations, to_standard_form, valid_extension};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = parse("!(x0 & !(x1 | x2))")?;
    println!("original:  {}", print(&c));
    assert!(!is_standard_form(&c));

    // The rewrite tracks both polarities of every node, so no NOT ever
    // lands above a gate. Gate growth is bounded by 2g + n.
    let std_form = to_standard_form(&c);
    println!("standard:  {}", print(&std_form));
    assert!(is_standard_form(&std_form));
    assert!(check_equivalence(&c, &std_form)?.is_equivalent());
    let g = c.gate_stats().total();
    assert!(std_form.gate_stats().total() <= 2 * g + c.input_arity());

    // Splitting replaces NOT(x_v) by a fresh input x_{n+v}: the negative
    // rail. The result has no NOT gates at all.
    let rails = split_negations(&std_form)?;
    println!("rails:     {}", print(rails.inner()));
    assert_eq!(rails.inner().gate_stats().not_count, 0);
    assert_eq!(rails.vars(), 3);
    assert_eq!(rails.inner().input_arity(), 6);

    // On *valid* assignments — rail n+v carrying the complement of rail v —
    // the split circuit computes exactly the original function.
    let t = truth_table(&c)?;
    for index in 0..t.len() {
        let a = Assignment::from_index(index, c.input_arity());
        assert_eq!(rails.evaluate(&a)?, t.get(index));
        // valid_extension materializes the complement rails explicitly.
        assert_eq!(valid_extension(&a).len(), 6);
    }
    println!("split circuit matches the original on all valid assignments");

    // Off the valid set the rails are free: setting both x0 and x3 (= !x0)
    // to 1 is allowed, and that freedom is what later transforms exploit.
    Ok(())
}
