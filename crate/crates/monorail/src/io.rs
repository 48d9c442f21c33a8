//! Line-oriented text formats for circuits, SOP formulas, and extracted
//! forms.
//!
//! Circuit files mirror the node store one line per node:
//!
//! ```text
//! INPUTS 2
//! 0 IN 0
//! 1 IN 1
//! 2 AND 0 1
//! OUT 2
//! ```
//!
//! Ids are store indices (sequential from 0, children strictly earlier),
//! so writing and re-reading reproduces the store exactly — including
//! duplicate gates from sharing-disabled builds.
//!
//! SOP files carry an `INPUTS` header and one product per line as
//! space-separated rail ids, with a bare `T` marking the empty product
//! (constant 1). No product lines at all is the constant-0 formula.
//! Extracted forms add `PIVOT` plus `TERMA` / `REST` sections of product
//! lines.

use thiserror::Error;

use crate::ir::{Circuit, IrError, Node, NodeRef, VarId};
use crate::transform::{ExtractedForm, Product, SopFormula, TransformError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Ir(#[from] IrError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        message: message.into(),
    }
}

pub fn write_circuit(c: &Circuit) -> String {
    let mut out = format!("INPUTS {}\n", c.input_arity());
    for (id, node) in c.nodes().iter().enumerate() {
        let line = match *node {
            Node::Const(v) => format!("{id} CONST {}", v as u8),
            Node::Input(v) => format!("{id} IN {}", v.index()),
            Node::Not(a) => format!("{id} NOT {}", a.index()),
            Node::And(a, b) => format!("{id} AND {} {}", a.index(), b.index()),
            Node::Or(a, b) => format!("{id} OR {} {}", a.index(), b.index()),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("OUT {}\n", c.output().index()));
    out
}

/// Numbered, non-empty lines of a source text.
fn lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| malformed(line, format!("expected {what}, found '{token}'")))
}

pub fn read_circuit(src: &str) -> Result<Circuit, FormatError> {
    let mut iter = lines(src);
    let (line, header) = iter.next().ok_or_else(|| malformed(0, "empty input"))?;
    let arity = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["INPUTS", n] => parse_usize(line, n, "an input count")?,
        _ => return Err(malformed(line, "expected 'INPUTS <n>' header")),
    };
    let mut nodes: Vec<Node> = Vec::new();
    let mut output: Option<NodeRef> = None;
    for (line, text) in iter {
        if output.is_some() {
            return Err(malformed(line, "content after OUT line"));
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens[0] == "OUT" {
            if tokens.len() != 2 {
                return Err(malformed(line, "expected 'OUT <id>'"));
            }
            output = Some(NodeRef::new(parse_usize(line, tokens[1], "a node id")?));
            continue;
        }
        let id = parse_usize(line, tokens[0], "a node id")?;
        if id != nodes.len() {
            return Err(malformed(
                line,
                format!("node id {id} out of order, expected {}", nodes.len()),
            ));
        }
        let node = match (tokens.get(1), tokens.len()) {
            (Some(&"CONST"), 3) => match tokens[2] {
                "0" => Node::Const(false),
                "1" => Node::Const(true),
                other => return Err(malformed(line, format!("expected 0 or 1, found '{other}'"))),
            },
            (Some(&"IN"), 3) => Node::Input(VarId(parse_usize(line, tokens[2], "a variable")?)),
            (Some(&"NOT"), 3) => {
                Node::Not(NodeRef::new(parse_usize(line, tokens[2], "a node id")?))
            }
            (Some(&"AND"), 4) => Node::And(
                NodeRef::new(parse_usize(line, tokens[2], "a node id")?),
                NodeRef::new(parse_usize(line, tokens[3], "a node id")?),
            ),
            (Some(&"OR"), 4) => Node::Or(
                NodeRef::new(parse_usize(line, tokens[2], "a node id")?),
                NodeRef::new(parse_usize(line, tokens[3], "a node id")?),
            ),
            _ => {
                return Err(malformed(
                    line,
                    format!("expected '<id> CONST|IN|NOT|AND|OR ...', found '{text}'"),
                ))
            }
        };
        nodes.push(node);
    }
    let output = output.ok_or_else(|| malformed(src.lines().count(), "missing OUT line"))?;
    Ok(Circuit::from_parts(nodes, output, arity)?)
}

fn write_products(out: &mut String, s: &SopFormula) {
    for p in s.products() {
        if p.is_true() {
            out.push_str("T\n");
        } else {
            let line: Vec<String> = p.literals().iter().map(|l| l.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
}

pub fn write_sop(s: &SopFormula) -> String {
    let mut out = format!("INPUTS {}\n", s.input_arity());
    write_products(&mut out, s);
    out
}

fn parse_product(line: usize, text: &str, arity: usize) -> Result<Product, FormatError> {
    if text == "T" {
        return Ok(Product::new(vec![]));
    }
    let mut literals = Vec::new();
    for token in text.split_whitespace() {
        let rail = parse_usize(line, token, "a rail id")?;
        if rail >= arity {
            return Err(malformed(
                line,
                format!("rail {rail} out of range for arity {arity}"),
            ));
        }
        literals.push(rail);
    }
    Ok(Product::new(literals))
}

pub fn read_sop(src: &str) -> Result<SopFormula, FormatError> {
    let mut iter = lines(src);
    let (line, header) = iter.next().ok_or_else(|| malformed(0, "empty input"))?;
    let arity = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["INPUTS", n] => parse_usize(line, n, "an input count")?,
        _ => return Err(malformed(line, "expected 'INPUTS <n>' header")),
    };
    let mut products = Vec::new();
    for (line, text) in iter {
        products.push(parse_product(line, text, arity)?);
    }
    Ok(SopFormula::new(products, arity))
}

pub fn write_extracted(e: &ExtractedForm) -> String {
    let mut out = format!(
        "INPUTS {}\nPIVOT {}\nTERMA\n",
        e.term_a().input_arity(),
        e.pivot()
    );
    write_products(&mut out, e.term_a());
    out.push_str("REST\n");
    write_products(&mut out, e.rest());
    out
}

pub fn read_extracted(src: &str) -> Result<ExtractedForm, FormatError> {
    let mut iter = lines(src);
    let (line, header) = iter.next().ok_or_else(|| malformed(0, "empty input"))?;
    let arity = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["INPUTS", n] => parse_usize(line, n, "an input count")?,
        _ => return Err(malformed(line, "expected 'INPUTS <n>' header")),
    };
    let (line, pivot_line) = iter
        .next()
        .ok_or_else(|| malformed(line, "expected 'PIVOT <v>' line"))?;
    let pivot = match pivot_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["PIVOT", v] => parse_usize(line, v, "a pivot variable")?,
        _ => return Err(malformed(line, "expected 'PIVOT <v>' line")),
    };
    let (line, terma_line) = iter
        .next()
        .ok_or_else(|| malformed(line, "expected 'TERMA' section"))?;
    if terma_line != "TERMA" {
        return Err(malformed(line, "expected 'TERMA' section"));
    }
    let mut term_a = Vec::new();
    let mut rest = Vec::new();
    let mut in_rest = false;
    for (line, text) in iter {
        if text == "REST" {
            if in_rest {
                return Err(malformed(line, "duplicate 'REST' section"));
            }
            in_rest = true;
            continue;
        }
        let p = parse_product(line, text, arity)?;
        if in_rest {
            rest.push(p);
        } else {
            term_a.push(p);
        }
    }
    if !in_rest {
        return Err(malformed(src.lines().count(), "missing 'REST' section"));
    }
    Ok(ExtractedForm::new(
        pivot,
        SopFormula::new(term_a, arity),
        SopFormula::new(rest, arity),
    )?)
}
