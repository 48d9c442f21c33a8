//! From rail circuit to sum-of-products, then factoring a negated
//! variable out and replacing its rail with the constant 1.

use monorail::io::{write_extracted, write_sop};
use monorail::lang::{parse, print};
use monorail::transform::{
    extract_negated, sima_full_procedure, sima_replace_one, sop_expand, split_negations,
    to_standard_form, DualRailCircuit,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Take a function that mentions x0 both plainly and negated.
    let f = parse("x0 & !x0 | x0 & x1 & x2")?;
    let rails = split_negations(&to_standard_form(&f))?;
    println!("rails: {}", print(rails.inner()));

    // Distributing AND over OR yields a flat list of products. Products
    // that mix a rail with its complement are kept, not simplified away.
    let sop = sop_expand(&rails)?;
    println!("--- SOP ---\n{}-----------", write_sop(&sop));

    // Extracting pivot 0 groups every product containing rail 3 (= !x0)
    // as !x0 & TermA, leaving the rest untouched.
    let e = extract_negated(&sop, 0);
    println!(
        "--- extracted, pivot 0 ---\n{}---------------",
        write_extracted(&e)
    );

    // One replacement step substitutes 1 for the extracted rail: the
    // factored part degenerates from !x0 & TermA to TermA.
    let replaced = sima_replace_one(&e);
    println!(
        "--- after replacing !x0 by 1 ---\n{}----------",
        write_sop(&replaced)
    );

    // The full procedure does this for every variable in ascending order,
    // re-expanding in between, then narrows back to the original arity.
    // The result is NOT-free by construction — but on this input it is a
    // different function: the contradictory product x0 & !x0 came alive.
    let monotone = sima_full_procedure(&rails)?;
    println!("full procedure: {}", print(&monotone));
    assert_eq!(monotone.gate_stats().not_count, 0);

    // A rail circuit with no negated occurrences passes through with its
    // function intact.
    let harmless = DualRailCircuit::new(parse("INPUTS 4 x0 & x1")?)?;
    println!("no rails used: {}", print(&sima_full_procedure(&harmless)?));
    Ok(())
}
