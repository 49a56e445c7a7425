//! Reader for the s-expression term language.
//!
//! ```text
//! program := def*
//! def     := "(" "def" IDENT fun ")"
//! fun     := BASE | IDENT | "(" "proj" NAT NAT ")" | "(" "comp" fun fun+ ")"
//!          | "(" "rec" NAT fun fun fun fun ")"
//! ```
//!
//! `;` starts a line comment. Identifiers refer to earlier definitions.

use std::collections::HashMap;
use std::fmt;

use super::ast::{Term, TermError};
use super::symbols::SymbolRegistry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: multiplication not in L2- (`{symbol}`)")]
    Multiplication { pos: Pos, symbol: String },
    #[error("{pos}: unknown name `{name}`")]
    UnknownName { pos: Pos, name: String },
    #[error("{pos}: `{name}` is already defined")]
    Duplicate { pos: Pos, name: String },
    #[error("{pos}: ill-formed `{node}`: {source}")]
    Arity { pos: Pos, node: &'static str, source: TermError },
}

const MULTIPLICATION: &[&str] = &["mul", "mult", "times", "*", "·"];
const KEYWORDS: &[&str] = &["def", "proj", "comp", "rec"];

/// An ordered set of named definitions.
#[derive(Debug, Clone, Default)]
pub struct Program {
    defs: Vec<(String, Term)>,
    index: HashMap<String, usize>,
}

impl Program {
    pub fn get(&self, name: &str) -> Option<&Term> {
        self.index.get(name).map(|&i| &self.defs[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.defs.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.iter().map(|(n, _)| n.as_str())
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }
}

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    parse_program_with(text, &SymbolRegistry::standard())
}

pub fn parse_program_with(text: &str, registry: &SymbolRegistry) -> Result<Program, ParseError> {
    let exprs = read(text)?;
    let mut program = Program::default();
    for expr in &exprs {
        let Sexp::List(items, pos) = expr else {
            return Err(syntax(expr.pos(), "expected `(def NAME term)`"));
        };
        match items.as_slice() {
            [Sexp::Atom(kw, _), Sexp::Atom(name, npos), body] if kw == "def" => {
                if !is_ident(name) || KEYWORDS.contains(&name.as_str()) || registry.get(name).is_some() {
                    return Err(syntax(*npos, format!("`{name}` cannot be used as a definition name")));
                }
                if program.index.contains_key(name) {
                    return Err(ParseError::Duplicate { pos: *npos, name: name.clone() });
                }
                let term = Reader { registry, program: &program }.term(body)?;
                program.index.insert(name.clone(), program.defs.len());
                program.defs.push((name.clone(), term));
            }
            _ => return Err(syntax(*pos, "expected `(def NAME term)`")),
        }
    }
    Ok(program)
}

/// Parses a single term over the standard symbols.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_in(text, &Program::default())
}

/// Parses a single term that may refer to the definitions of `program`.
pub fn parse_term_in(text: &str, program: &Program) -> Result<Term, ParseError> {
    let registry = SymbolRegistry::standard();
    let exprs = read(text)?;
    match exprs.as_slice() {
        [one] => Reader { registry: &registry, program }.term(one),
        [] => Err(syntax(Pos { line: 1, col: 1 }, "empty input")),
        [_, second, ..] => Err(syntax(second.pos(), "trailing input after term")),
    }
}

struct Reader<'a> {
    registry: &'a SymbolRegistry,
    program: &'a Program,
}

impl Reader<'_> {
    fn term(&self, e: &Sexp) -> Result<Term, ParseError> {
        match e {
            Sexp::Atom(name, pos) => self.atom(name, *pos),
            Sexp::List(items, pos) => {
                let Some(Sexp::Atom(head, hpos)) = items.first() else {
                    return Err(syntax(*pos, "expected `proj`, `comp` or `rec` after `(`"));
                };
                let rest = &items[1..];
                match head.as_str() {
                    "proj" => {
                        let [i, r] = rest else {
                            return Err(syntax(*pos, "`proj` takes an index and an arity"));
                        };
                        let (i, r) = (number(i)?, number(r)?);
                        Term::proj(i as usize, r as usize)
                            .map_err(|source| ParseError::Arity { pos: *pos, node: "proj", source })
                    }
                    "comp" => {
                        if rest.len() < 2 {
                            return Err(syntax(*pos, "`comp` takes an outer term and at least one inner term"));
                        }
                        let outer = self.term(&rest[0])?;
                        let inner = rest[1..].iter().map(|g| self.term(g)).collect::<Result<Vec<_>, _>>()?;
                        Term::comp(outer, inner).map_err(|source| ParseError::Arity { pos: *pos, node: "comp", source })
                    }
                    "rec" => {
                        let [m, g, h, t, r] = rest else {
                            return Err(syntax(*pos, "`rec` takes a level and four terms"));
                        };
                        let level = u32::try_from(number(m)?).map_err(|_| syntax(m.pos(), "level too large"))?;
                        let (g, h, t, r) = (self.term(g)?, self.term(h)?, self.term(t)?, self.term(r)?);
                        Term::rec(level, g, h, t, r).map_err(|source| ParseError::Arity { pos: *pos, node: "rec", source })
                    }
                    other if MULTIPLICATION.contains(&other) => {
                        Err(ParseError::Multiplication { pos: *hpos, symbol: other.to_string() })
                    }
                    other => Err(syntax(*hpos, format!("unexpected `{other}` in head position"))),
                }
            }
        }
    }

    fn atom(&self, name: &str, pos: Pos) -> Result<Term, ParseError> {
        if let Some(sym) = self.registry.get(name) {
            return Ok(Term::Base(sym));
        }
        if MULTIPLICATION.contains(&name) {
            return Err(ParseError::Multiplication { pos, symbol: name.to_string() });
        }
        if let Some(t) = self.program.get(name) {
            return Ok(t.clone());
        }
        if name.chars().all(|c| c.is_ascii_digit()) || KEYWORDS.contains(&name) {
            return Err(syntax(pos, format!("expected a term, found `{name}`")));
        }
        Err(ParseError::UnknownName { pos, name: name.to_string() })
    }
}

fn number(e: &Sexp) -> Result<u64, ParseError> {
    match e {
        Sexp::Atom(s, pos) if s.chars().all(|c| c.is_ascii_digit()) => {
            s.parse().map_err(|_| syntax(*pos, format!("number `{s}` out of range")))
        }
        other => Err(syntax(other.pos(), "expected a decimal number")),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn syntax(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, message: message.into() }
}

enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn read(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = vec![(Vec::new(), Pos { line: 1, col: 1 })];
    let mut atom: Option<(String, Pos)> = None;
    let (mut line, mut col) = (1, 0);
    let mut in_comment = false;

    fn flush(atom: &mut Option<(String, Pos)>, stack: &mut [(Vec<Sexp>, Pos)]) {
        if let Some((s, p)) = atom.take() {
            stack.last_mut().unwrap().0.push(Sexp::Atom(s, p));
        }
    }

    for c in text.chars() {
        if c == '\n' {
            line += 1;
            col = 0;
            in_comment = false;
            flush(&mut atom, &mut stack);
            continue;
        }
        col += 1;
        if in_comment {
            continue;
        }
        let pos = Pos { line, col };
        match c {
            ';' => {
                flush(&mut atom, &mut stack);
                in_comment = true;
            }
            '(' => {
                flush(&mut atom, &mut stack);
                stack.push((Vec::new(), pos));
            }
            ')' => {
                flush(&mut atom, &mut stack);
                if stack.len() == 1 {
                    return Err(syntax(pos, "unbalanced `)`"));
                }
                let (items, open) = stack.pop().unwrap();
                stack.last_mut().unwrap().0.push(Sexp::List(items, open));
            }
            c if c.is_whitespace() => flush(&mut atom, &mut stack),
            c => match &mut atom {
                Some((s, _)) => s.push(c),
                None => atom = Some((c.to_string(), pos)),
            },
        }
    }
    flush(&mut atom, &mut stack);
    if stack.len() > 1 {
        let (_, open) = stack.pop().unwrap();
        return Err(syntax(open, "unclosed `(`"));
    }
    Ok(stack.pop().unwrap().0)
}
