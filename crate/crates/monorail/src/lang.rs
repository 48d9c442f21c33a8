//! Textual formula language: parser and pretty-printer.
//!
//! Grammar (left-associative, `!` binds tighter than `&`, which binds
//! tighter than `|`):
//!
//! ```text
//! formula := ('INPUTS' count)? or
//! or      := and ('|' and)*
//! and     := not ('&' not)*
//! not     := '!'* atom
//! atom    := 'x' digits | '0' | '1' | '(' or ')'
//! ```
//!
//! `¬ ∧ ∨` are accepted as aliases for `! & |`. The optional `INPUTS n`
//! header declares an input arity larger than the variables mentioned;
//! without it the arity is 1 + the largest variable index (0 if none).
//!
//! [`print`] emits minimally parenthesized text under the same precedence.
//! Printing flattens sharing into a tree, so `parse(print(c))` is
//! function-equal to `c` but not necessarily the same store.

use thiserror::Error;

use crate::ir::{Circuit, CircuitBuilder, Node, NodeRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at {position}: {message}")]
pub struct ParseError {
    /// Character offset into the source.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Bang,
    Amp,
    Pipe,
    LParen,
    RParen,
    Var(usize),
    Const(bool),
}

fn describe(tok: Tok) -> String {
    match tok {
        Tok::Bang => "'!'".into(),
        Tok::Amp => "'&'".into(),
        Tok::Pipe => "'|'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Var(v) => format!("variable x{v}"),
        Tok::Const(b) => format!("constant {}", b as u8),
    }
}

fn tokenize(chars: &[char], start: usize) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let mut i = start;
    while i < chars.len() {
        let tok = match chars[i] {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '¬' => Tok::Bang,
            '&' | '∧' => Tok::Amp,
            '|' | '∨' => Tok::Pipe,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0' => Tok::Const(false),
            '1' => Tok::Const(true),
            'x' => {
                let ds = i + 1;
                let mut j = ds;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == ds {
                    return Err(ParseError::new(i, "expected digits after 'x'"));
                }
                let digits: String = chars[ds..j].iter().collect();
                let var: usize = digits
                    .parse()
                    .map_err(|_| ParseError::new(ds, "variable index too large"))?;
                toks.push((i, Tok::Var(var)));
                i = j;
                continue;
            }
            other => {
                return Err(ParseError::new(
                    i,
                    format!("unexpected character '{other}'"),
                ));
            }
        };
        toks.push((i, tok));
        i += 1;
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    /// Character length of the source, for end-of-input errors.
    end: usize,
    b: CircuitBuilder,
}

impl Parser<'_> {
    fn eat(&mut self, want: Tok) -> bool {
        if self.toks.get(self.pos).is_some_and(|&(_, t)| t == want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).copied();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_or(&mut self) -> Result<NodeRef, ParseError> {
        let mut lhs = self.parse_and()?;
        while self.eat(Tok::Pipe) {
            let rhs = self.parse_and()?;
            lhs = self.b.or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<NodeRef, ParseError> {
        let mut lhs = self.parse_not()?;
        while self.eat(Tok::Amp) {
            let rhs = self.parse_not()?;
            lhs = self.b.and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_not(&mut self) -> Result<NodeRef, ParseError> {
        let mut bangs = 0usize;
        while self.eat(Tok::Bang) {
            bangs += 1;
        }
        let mut r = self.parse_atom()?;
        for _ in 0..bangs {
            r = self.b.not(r);
        }
        Ok(r)
    }

    fn parse_atom(&mut self) -> Result<NodeRef, ParseError> {
        match self.next() {
            Some((_, Tok::Var(v))) => Ok(self.b.input(v)),
            Some((_, Tok::Const(c))) => Ok(self.b.constant(c)),
            Some((_, Tok::LParen)) => {
                let inner = self.parse_or()?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((pos, tok)) => Err(ParseError::new(
                        pos,
                        format!("expected ')', found {}", describe(tok)),
                    )),
                    None => Err(ParseError::new(
                        self.end,
                        "unexpected end of input: expected ')'",
                    )),
                }
            }
            Some((pos, tok)) => Err(ParseError::new(
                pos,
                format!(
                    "expected a variable, constant, or '(', found {}",
                    describe(tok)
                ),
            )),
            None => Err(ParseError::new(self.end, "unexpected end of input")),
        }
    }
}

/// Parses a formula into a hash-consed circuit. No simplification is
/// applied: `!!x0` stays a double negation, `x0 & !x0` stays a
/// contradiction.
pub fn parse(src: &str) -> Result<Circuit, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() && chars[i].is_whitespace() {
        i += 1;
    }
    let mut pragma: Option<(usize, usize)> = None;
    if chars[i..].starts_with(&['I', 'N', 'P', 'U', 'T', 'S']) {
        let kw = i;
        i += 6;
        if i >= chars.len() || !chars[i].is_whitespace() {
            return Err(ParseError::new(kw, "expected a count after INPUTS"));
        }
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        let ds = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if ds == i {
            return Err(ParseError::new(kw, "expected a count after INPUTS"));
        }
        let n: usize = chars[ds..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| ParseError::new(ds, "input count too large"))?;
        pragma = Some((kw, n));
    }
    let toks = tokenize(&chars, i)?;
    let needed = toks
        .iter()
        .filter_map(|&(_, t)| match t {
            Tok::Var(v) => Some(v + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let arity = match pragma {
        Some((kw, n)) => {
            if n < needed {
                return Err(ParseError::new(
                    kw,
                    format!("INPUTS {n} is too small: variable x{} appears", needed - 1),
                ));
            }
            n
        }
        None => needed,
    };
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: chars.len(),
        b: CircuitBuilder::new(arity),
    };
    let out = p.parse_or()?;
    if let Some(&(pos, tok)) = p.toks.get(p.pos) {
        return Err(ParseError::new(
            pos,
            format!("unexpected {} after expression", describe(tok)),
        ));
    }
    Ok(p.b.finish(out))
}

const PREC_OR: u8 = 0;
const PREC_AND: u8 = 1;
const PREC_NOT: u8 = 2;
const PREC_ATOM: u8 = 3;

fn wrap(part: &(String, u8), required: u8) -> String {
    let (s, prec) = part;
    if *prec < required {
        format!("({s})")
    } else {
        s.clone()
    }
}

/// Renders a circuit as a formula with only the parentheses precedence
/// requires. Emits an `INPUTS n` header when the arity cannot be inferred
/// from the variables that appear (unused inputs, constant circuits), so
/// `parse(print(c))` always recovers the same arity.
pub fn print(c: &Circuit) -> String {
    let mask = c.reachable();
    let mut parts: Vec<Option<(String, u8)>> = vec![None; c.len()];
    let mut max_var: Option<usize> = None;
    for id in 0..c.len() {
        if !mask[id] {
            continue;
        }
        let part = |r: NodeRef| parts[r.index()].as_ref().expect("children render first");
        let rendered = match c.node(NodeRef::new(id)) {
            Node::Const(v) => ((v as u8).to_string(), PREC_ATOM),
            Node::Input(v) => {
                max_var = Some(max_var.map_or(v.index(), |m| m.max(v.index())));
                (format!("x{}", v.index()), PREC_ATOM)
            }
            Node::Not(a) => (format!("!{}", wrap(part(a), PREC_NOT)), PREC_NOT),
            Node::And(a, b) => (
                format!("{} & {}", wrap(part(a), PREC_AND), wrap(part(b), PREC_NOT)),
                PREC_AND,
            ),
            Node::Or(a, b) => (
                format!("{} | {}", wrap(part(a), PREC_OR), wrap(part(b), PREC_AND)),
                PREC_OR,
            ),
        };
        parts[id] = Some(rendered);
    }
    let (body, _) = parts[c.output().index()]
        .take()
        .expect("output is reachable");
    let inferred = max_var.map_or(0, |v| v + 1);
    if inferred == c.input_arity() {
        body
    } else {
        format!("INPUTS {} {}", c.input_arity(), body)
    }
}
