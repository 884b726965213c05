//! Compiled identities and exhaustive evaluation.

use super::term::{Identity, Symbol, Term};
use crate::structure::{Elem, OperationTable, Structure};

/// Value of an entry that is not known yet (partial tables during search).
pub(crate) const UNDEF: Elem = Elem::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Prim {
    Dot,
    Div,
    Star,
    StarDiv,
}

/// How `*`, `R1` and `R2` are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Interpretation {
    /// `x*y := (x·y)·y`, `R1(x,y) := y·x`, `R2(x,y) := x·(y·x)`.
    OneOp,
    /// `*` given, `R1(x,y) := y·x`, `R2(x,y) := (x*y)·y`.
    TwoOp,
}

#[derive(Debug, Clone, Copy)]
enum Instr {
    Var(u8),
    Op(Prim),
}

/// Postfix program over the primitive operations.
#[derive(Debug, Clone)]
pub(crate) struct Program(Vec<Instr>);

impl Program {
    pub(crate) fn compile(t: &Term, interp: Interpretation) -> Program {
        let mut code = Vec::new();
        emit(&lower(t, interp), &mut code);
        Program(code)
    }

    #[inline]
    pub(crate) fn eval<O: Ops + ?Sized>(&self, ops: &O, env: &[Elem]) -> Elem {
        let mut stack = [0 as Elem; 64];
        let mut sp = 0;
        for ins in &self.0 {
            match *ins {
                Instr::Var(i) => {
                    stack[sp] = env[i as usize];
                    sp += 1;
                }
                Instr::Op(p) => {
                    let (a, b) = (stack[sp - 2], stack[sp - 1]);
                    sp -= 1;
                    stack[sp - 1] = if a == UNDEF || b == UNDEF { UNDEF } else { ops.apply(p, a, b) };
                }
            }
        }
        stack[0]
    }
}

/// Rewrites `R1`/`R2` into `·` and `*`: the single translation point.
fn lower(t: &Term, interp: Interpretation) -> Term {
    match t {
        Term::Var(i) => Term::Var(*i),
        Term::Apply(sym, l, r) => {
            let (l, r) = (lower(l, interp), lower(r, interp));
            let dot = |a, b| Term::apply(Symbol::Dot, a, b);
            match sym {
                Symbol::R1 => dot(r, l),
                Symbol::R2 => match interp {
                    Interpretation::OneOp => dot(l.clone(), dot(r, l)),
                    Interpretation::TwoOp => dot(Term::apply(Symbol::Star, l, r.clone()), r),
                },
                s => Term::apply(*s, l, r),
            }
        }
    }
}

fn emit(t: &Term, code: &mut Vec<Instr>) {
    match t {
        Term::Var(i) => code.push(Instr::Var(*i as u8)),
        Term::Apply(sym, l, r) => {
            emit(l, code);
            emit(r, code);
            code.push(Instr::Op(match sym {
                Symbol::Dot => Prim::Dot,
                Symbol::Div => Prim::Div,
                Symbol::Star => Prim::Star,
                Symbol::StarDiv => Prim::StarDiv,
                Symbol::R1 | Symbol::R2 => unreachable!("lowered"),
            }));
        }
    }
}

pub(crate) trait Ops {
    /// Result of `a p b`, or [`UNDEF`] when it is not known.
    fn apply(&self, p: Prim, a: Elem, b: Elem) -> Elem;
    fn order(&self) -> usize;
}

/// Complete tables for every primitive; the divisions are preimage divisions
/// (true divisions on right quasigroups).
#[derive(Debug, Clone)]
pub(crate) struct Tables {
    n: usize,
    dot: Vec<Elem>,
    div: Vec<Elem>,
    star: Vec<Elem>,
    star_div: Vec<Elem>,
    pub(crate) dot_rq: bool,
    pub(crate) star_rq: bool,
    pub(crate) interp: Interpretation,
}

impl Tables {
    pub(crate) fn new(s: &Structure) -> Tables {
        let (dot, star, interp) = match s {
            Structure::One(t) => (t, t.square_right(), Interpretation::OneOp),
            Structure::Two(s) => (s.dot(), s.star().clone(), Interpretation::TwoOp),
        };
        Tables::from_parts(dot, &star, interp)
    }

    pub(crate) fn from_parts(dot: &OperationTable, star: &OperationTable, interp: Interpretation) -> Tables {
        Tables {
            n: dot.order(),
            dot: dot.raw().to_vec(),
            div: dot.preimage_division().raw().to_vec(),
            star: star.raw().to_vec(),
            star_div: star.preimage_division().raw().to_vec(),
            dot_rq: dot.is_right_quasigroup(),
            star_rq: star.is_right_quasigroup(),
            interp,
        }
    }
}

impl Ops for Tables {
    #[inline]
    fn apply(&self, p: Prim, a: Elem, b: Elem) -> Elem {
        let i = a as usize * self.n + b as usize;
        match p {
            Prim::Dot => self.dot[i],
            Prim::Div => self.div[i],
            Prim::Star => self.star[i],
            Prim::StarDiv => self.star_div[i],
        }
    }

    fn order(&self) -> usize {
        self.n
    }
}

#[derive(Debug, Clone)]
pub(crate) struct CompiledIdentity {
    pub(crate) name: String,
    pub(crate) arity: usize,
    pub(crate) uses_div: bool,
    pub(crate) uses_star_div: bool,
    lhs: Program,
    rhs: Program,
}

impl CompiledIdentity {
    pub(crate) fn new(id: &Identity, interp: Interpretation) -> Self {
        // arity counts declared variables even if some side omits them
        let arity = id.arity().max(id.max_var().map_or(0, |v| v + 1));
        CompiledIdentity {
            name: id.name.clone(),
            arity,
            uses_div: id.uses(Symbol::Div),
            uses_star_div: id.uses(Symbol::StarDiv),
            lhs: Program::compile(&id.lhs, interp),
            rhs: Program::compile(&id.rhs, interp),
        }
    }

    /// First assignment in lexicographic order (first variable most
    /// significant) where both sides are defined and differ.
    pub(crate) fn first_violation<O: Ops + ?Sized>(&self, ops: &O) -> Option<(Vec<Elem>, Elem, Elem)> {
        let n = ops.order() as Elem;
        let mut env = vec![0 as Elem; self.arity.max(1)];
        loop {
            let l = self.lhs.eval(ops, &env);
            if l != UNDEF {
                let r = self.rhs.eval(ops, &env);
                if r != UNDEF && l != r {
                    env.truncate(self.arity);
                    return Some((env, l, r));
                }
            }
            if !advance(&mut env[..self.arity], n) {
                return None;
            }
        }
    }

    /// Both sides under one assignment.
    #[inline]
    pub(crate) fn sides<O: Ops + ?Sized>(&self, ops: &O, env: &[Elem]) -> (Elem, Elem) {
        (self.lhs.eval(ops, env), self.rhs.eval(ops, env))
    }

    #[inline]
    pub(crate) fn holds<O: Ops + ?Sized>(&self, ops: &O) -> bool {
        if self.arity > 8 {
            return self.first_violation(ops).is_none();
        }
        self.first_violation_fast(ops)
    }

    fn first_violation_fast<O: Ops + ?Sized>(&self, ops: &O) -> bool {
        let n = ops.order() as Elem;
        let mut env = [0 as Elem; 8];
        let k = self.arity;
        loop {
            let l = self.lhs.eval(ops, &env);
            if l != UNDEF {
                let r = self.rhs.eval(ops, &env);
                if r != UNDEF && l != r {
                    return false;
                }
            }
            if !advance(&mut env[..k], n) {
                return true;
            }
        }
    }
}

/// Odometer step; the last position moves fastest.
#[inline]
fn advance(env: &mut [Elem], n: Elem) -> bool {
    for v in env.iter_mut().rev() {
        *v += 1;
        if *v < n {
            return true;
        }
        *v = 0;
    }
    false
}
