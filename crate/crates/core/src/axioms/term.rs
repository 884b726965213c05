//! Terms over `{·, /, *, /*, R1, R2}` and equational identities.
//!
//! Text syntax: single-letter variables, juxtaposition for `·` (binding
//! tightest, left-associative), then left-associative `*`, `/` and `/*`
//! (right division of `*`), plus `R1(s,t)` and `R2(s,t)`.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Symbol {
    Dot,
    Div,
    Star,
    StarDiv,
    R1,
    R2,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Apply(Symbol, Box<Term>, Box<Term>),
}

impl Term {
    pub fn apply(sym: Symbol, l: Term, r: Term) -> Term {
        Term::Apply(sym, Box::new(l), Box::new(r))
    }

    pub fn uses(&self, sym: Symbol) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Apply(s, l, r) => *s == sym || l.uses(sym) || r.uses(sym),
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::Apply(_, l, r) => l.max_var().max(r.max_var()),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, names: &[String], compact: bool) -> fmt::Result {
        match self {
            Term::Var(i) => f.write_str(&names[*i]),
            Term::Apply(sym @ (Symbol::R1 | Symbol::R2), l, r) => {
                f.write_str(if *sym == Symbol::R1 { "R1(" } else { "R2(" })?;
                l.write(f, names, compact)?;
                f.write_str(",")?;
                r.write(f, names, compact)?;
                f.write_str(")")
            }
            Term::Apply(Symbol::Dot, l, r) => {
                // left operand needs parentheses only for infix operators
                let paren_l = matches!(**l, Term::Apply(Symbol::Star | Symbol::Div | Symbol::StarDiv, ..));
                let paren_r =
                    matches!(**r, Term::Apply(Symbol::Dot | Symbol::Star | Symbol::Div | Symbol::StarDiv, ..));
                wrap(f, l, names, compact, paren_l)?;
                if !compact {
                    f.write_str("·")?;
                }
                wrap(f, r, names, compact, paren_r)
            }
            Term::Apply(sym, l, r) => {
                let op = match sym {
                    Symbol::Star => " * ",
                    Symbol::Div => " / ",
                    _ => " /* ",
                };
                wrap(f, l, names, compact, false)?;
                f.write_str(op)?;
                let paren_r = matches!(**r, Term::Apply(Symbol::Star | Symbol::Div | Symbol::StarDiv, ..));
                wrap(f, r, names, compact, paren_r)
            }
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, t: &Term, names: &[String], compact: bool, paren: bool) -> fmt::Result {
    if paren {
        f.write_str("(")?;
        t.write(f, names, compact)?;
        f.write_str(")")
    } else {
        t.write(f, names, compact)
    }
}

/// `lhs = rhs`, universally quantified over its variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub vars: Vec<String>,
}

/// Letters in the order they are numbered `x1, x2, …` in reports.
const LETTER_ORDER: &str = "xyzwvutsrqponmlkjihgfedcba";

impl Identity {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term, vars: Vec<String>) -> Self {
        Self { name: name.into(), lhs, rhs, vars }
    }

    /// Parses `lhs = rhs`. Variables are numbered by the fixed order
    /// `x, y, z, w, …` restricted to the letters that occur.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut letters: Vec<char> = text.chars().filter(|c| c.is_ascii_lowercase()).collect();
        letters.sort_by_key(|c| LETTER_ORDER.find(*c).unwrap());
        letters.dedup();
        let (l, r) = text.split_once('=').ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "identity needs `=`".into(),
        })?;
        if r.contains('=') {
            return Err(Error::Parse { line: 1, column: l.len() + 1, message: "more than one `=`".into() });
        }
        let lhs = Parser::new(l, 0, &letters).parse_all()?;
        let rhs = Parser::new(r, l.len() + 1, &letters).parse_all()?;
        Ok(Self { name: name.into(), lhs, rhs, vars: letters.iter().map(|c| c.to_string()).collect() })
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn uses(&self, sym: Symbol) -> bool {
        self.lhs.uses(sym) || self.rhs.uses(sym)
    }

    pub(crate) fn max_var(&self) -> Option<usize> {
        self.lhs.max_var().max(self.rhs.max_var())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.vars.iter().all(|v| v.len() == 1);
        self.lhs.write(f, &self.vars, compact)?;
        f.write_str(" = ")?;
        self.rhs.write(f, &self.vars, compact)
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    offset: usize,
    letters: &'a [char],
}

impl<'a> Parser<'a> {
    fn new(text: &str, offset: usize, letters: &'a [char]) -> Self {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Self { chars, pos: 0, offset, letters }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: &str) -> Error {
        let column =
            self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or_else(|| self.chars.last().map_or(0, |&(i, _)| i + 1));
        Error::Parse { line: 1, column: self.offset + column + 1, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn parse_all(mut self) -> Result<Term> {
        let t = self.expr()?;
        if self.pos != self.chars.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(t)
    }

    fn expr(&mut self) -> Result<Term> {
        let mut t = self.juxt()?;
        loop {
            let sym = match self.peek() {
                Some('*') => Symbol::Star,
                Some('/') => {
                    if self.chars.get(self.pos + 1).map(|p| p.1) == Some('*') {
                        self.pos += 1;
                        Symbol::StarDiv
                    } else {
                        Symbol::Div
                    }
                }
                _ => return Ok(t),
            };
            self.pos += 1;
            let r = self.juxt()?;
            t = Term::apply(sym, t, r);
        }
    }

    fn juxt(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while matches!(self.peek(), Some(c) if c == '(' || c.is_ascii_lowercase() || c == 'R') {
            let r = self.atom()?;
            t = Term::apply(Symbol::Dot, t, r);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.expr()?;
                self.expect(')')?;
                Ok(t)
            }
            Some('R') => {
                self.pos += 1;
                if self.peek() == Some('_') {
                    self.pos += 1;
                }
                let sym = match self.peek() {
                    Some('1') => Symbol::R1,
                    Some('2') => Symbol::R2,
                    _ => return Err(self.error("expected R1 or R2")),
                };
                self.pos += 1;
                self.expect('(')?;
                let l = self.expr()?;
                self.expect(',')?;
                let r = self.expr()?;
                self.expect(')')?;
                Ok(Term::apply(sym, l, r))
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(Term::Var(self.letters.iter().position(|&l| l == c).unwrap()))
            }
            _ => Err(self.error("expected a variable, `(` or R1/R2")),
        }
    }
}
