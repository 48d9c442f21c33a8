//! Parse formulas, print them back minimally parenthesized, and move
//! circuits through the line-based file format.

use monorail::io::{read_circuit, write_circuit};
use monorail::lang::{parse, print};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The grammar: `!` binds tightest, then `&`, then `|`. Variables are
    // x0, x1, ...; `0` and `1` are constants.
    let c = parse("!(x0 | x1) & (x2 | 1)")?;
    println!("parsed arity {}: {}", c.input_arity(), print(&c));

    // Printing drops every redundant parenthesis.
    for src in ["((x0))", "(x0 & x1) | x2", "!(!x0)", "x0 & (x1 & x2)"] {
        println!("{src:18} prints as {}", print(&parse(src)?));
    }

    // An `INPUTS n` header pins the arity when the formula itself does not
    // mention the highest variable.
    let padded = parse("INPUTS 5 x1 & x2")?;
    println!("declared arity: {}", padded.input_arity());
    println!("printed with header: {}", print(&padded));

    // The file format lists one node per line, children before parents.
    let text = write_circuit(&c);
    println!("--- circuit file ---\n{text}--------------------");
    let back = read_circuit(&text)?;
    assert_eq!(back, c);
    println!("file round trip: identical store");
    Ok(())
}
