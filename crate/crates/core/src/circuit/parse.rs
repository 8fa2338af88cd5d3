//! Recursive descent parser for circuit source text.
//!
//! ```text
//! circuit := seq
//! seq     := tensor ("oo" tensor)*
//! tensor  := atom ("**" atom)*
//! atom    := "I" | "X" | "Y" | "Z" | "H" | "T" | "SW" | "CX" | "(" seq ")"
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::fmt;

use thiserror::Error;

use super::{Circuit, CircuitBuilder, Gate, NodeId};

/// Parenthesis nesting limit; parsing recurses once per level.
const MAX_NESTING: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownToken(String),
    /// An operator with nothing (or not a circuit) after it.
    DanglingOperator(&'static str),
    UnclosedParen,
    UnmatchedCloseParen,
    ExpectedCircuit(String),
    Empty,
    TooDeep,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnknownToken(t) => write!(f, "unknown token `{t}`"),
            ParseErrorKind::DanglingOperator(op) => {
                write!(f, "operator `{op}` is missing its right operand")
            }
            ParseErrorKind::UnclosedParen => f.write_str("unbalanced parenthesis: `(` is never closed"),
            ParseErrorKind::UnmatchedCloseParen => {
                f.write_str("unbalanced parenthesis: unexpected `)`")
            }
            ParseErrorKind::ExpectedCircuit(found) => {
                write!(f, "expected a gate or `(`, found {found}")
            }
            ParseErrorKind::Empty => f.write_str("no circuit in input"),
            ParseErrorKind::TooDeep => {
                write!(f, "parentheses nested deeper than {MAX_NESTING} levels")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Gate(Gate),
    Tensor,
    Seq,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Gate(g) => format!("`{g}`"),
            Tok::Tensor => "`**`".into(),
            Tok::Seq => "`oo`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    let err = |line, column, kind| ParseError { line, column, kind };

    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
            continue;
        }
        let tok = match c {
            '(' => {
                chars.next();
                column += 1;
                Tok::LParen
            }
            ')' => {
                chars.next();
                column += 1;
                Tok::RParen
            }
            '*' => {
                chars.next();
                column += 1;
                if chars.peek() == Some(&'*') {
                    chars.next();
                    column += 1;
                    Tok::Tensor
                } else {
                    return Err(err(tl, tc, ParseErrorKind::UnknownToken("*".into())));
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if !(c.is_alphanumeric() || c == '_') {
                        break;
                    }
                    word.push(c);
                    chars.next();
                    column += 1;
                }
                if word == "oo" {
                    Tok::Seq
                } else if let Some(g) = Gate::from_symbol(&word) {
                    Tok::Gate(g)
                } else {
                    return Err(err(tl, tc, ParseErrorKind::UnknownToken(word)));
                }
            }
            other => {
                return Err(err(tl, tc, ParseErrorKind::UnknownToken(other.to_string())));
            }
        };
        out.push(Spanned {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
    builder: CircuitBuilder,
}

impl Parser {
    fn peek(&self) -> Spanned {
        self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos];
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(at: Spanned, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            kind,
        }
    }

    fn seq(&mut self) -> Result<NodeId, ParseError> {
        let mut lhs = self.tensor()?;
        while self.peek().tok == Tok::Seq {
            let op = self.bump();
            let rhs = self.operand(op, "oo", Self::tensor)?;
            lhs = self.builder.seq(lhs, rhs);
        }
        Ok(lhs)
    }

    fn tensor(&mut self) -> Result<NodeId, ParseError> {
        let mut lhs = self.atom()?;
        while self.peek().tok == Tok::Tensor {
            let op = self.bump();
            let rhs = self.operand(op, "**", Self::atom)?;
            lhs = self.builder.tensor(lhs, rhs);
        }
        Ok(lhs)
    }

    /// Parse the right operand of `op`, reporting a dangling operator at the
    /// operator's position when no operand follows.
    fn operand(
        &mut self,
        op: Spanned,
        symbol: &'static str,
        rule: fn(&mut Self) -> Result<NodeId, ParseError>,
    ) -> Result<NodeId, ParseError> {
        match self.peek().tok {
            Tok::Gate(_) | Tok::LParen => rule(self),
            _ => Err(Self::error(op, ParseErrorKind::DanglingOperator(symbol))),
        }
    }

    fn atom(&mut self) -> Result<NodeId, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Gate(g) => Ok(self.builder.gate(g)),
            Tok::LParen => {
                if self.depth >= MAX_NESTING {
                    return Err(Self::error(t, ParseErrorKind::TooDeep));
                }
                self.depth += 1;
                let inner = self.seq()?;
                self.depth -= 1;
                match self.bump().tok {
                    Tok::RParen => Ok(inner),
                    Tok::Eof => Err(Self::error(t, ParseErrorKind::UnclosedParen)),
                    _ => {
                        let found = self.toks[self.pos - 1];
                        Err(Self::error(
                            found,
                            ParseErrorKind::ExpectedCircuit(found.tok.describe()),
                        ))
                    }
                }
            }
            Tok::RParen => Err(Self::error(t, ParseErrorKind::UnmatchedCloseParen)),
            other => Err(Self::error(
                t,
                ParseErrorKind::ExpectedCircuit(other.describe()),
            )),
        }
    }
}

/// Parse circuit source text. `**` binds tighter than `oo`; both associate to
/// the left.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
        builder: CircuitBuilder::new(),
    };
    if p.peek().tok == Tok::Eof {
        return Err(Parser::error(p.peek(), ParseErrorKind::Empty));
    }
    let root = p.seq()?;
    let rest = p.peek();
    match rest.tok {
        Tok::Eof => Ok(p.builder.finish(root)),
        Tok::RParen => Err(Parser::error(rest, ParseErrorKind::UnmatchedCloseParen)),
        other => Err(Parser::error(
            rest,
            ParseErrorKind::ExpectedCircuit(format!("{} after a complete circuit", other.describe())),
        )),
    }
}
