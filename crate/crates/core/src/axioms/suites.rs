//! Named axiom systems and exhaustive checking.

use super::eval::{CompiledIdentity, Interpretation, Ops, Tables};
use super::term::{Identity, Symbol};
use crate::error::{Error, Result};
use crate::structure::Structure;
use serde::Serialize;
use std::fmt;
use std::sync::LazyLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Signature {
    OneOp,
    TwoOp,
}

impl Signature {
    pub fn interpretation(self) -> Interpretation {
        match self {
            Signature::OneOp => Interpretation::OneOp,
            Signature::TwoOp => Interpretation::TwoOp,
        }
    }
}

/// An axiom system. `guards` are the cancellation laws of the division the
/// axioms rely on; they are checked with the preimage division, and when
/// they fail the axioms that use that division are skipped.
#[derive(Debug, Clone)]
pub struct AxiomSuite {
    pub name: &'static str,
    pub signature: Signature,
    pub guards: Vec<Identity>,
    pub identities: Vec<Identity>,
}

impl AxiomSuite {
    pub fn all_identities(&self) -> impl Iterator<Item = &Identity> {
        self.guards.iter().chain(&self.identities)
    }

    pub fn compile(&self) -> CompiledSuite {
        let interp = self.signature.interpretation();
        CompiledSuite {
            name: self.name,
            signature: self.signature,
            guards: self.guards.iter().map(|i| CompiledIdentity::new(i, interp)).collect(),
            identities: self.identities.iter().map(|i| CompiledIdentity::new(i, interp)).collect(),
        }
    }
}

pub const SUITE_NAMES: [&str; 10] = [
    "rq",
    "s-rq",
    "quandle",
    "oriented-sq-R",
    "oriented-sq",
    "oriented-sq-min",
    "sq-def",
    "sq-prime",
    "sq",
    "sq-oneop",
];

fn ids(list: &[(&str, &str)]) -> Vec<Identity> {
    list.iter().map(|(n, t)| Identity::parse(*n, t).expect("catalogue identity parses")).collect()
}

const RQ: [(&str, &str); 2] = [("RQ1", "(xy)/y = x"), ("RQ2", "(x/y)y = x")];
const STAR_RQ: [(&str, &str); 2] = [("*RQ1", "(x*y)/*y = x"), ("*RQ2", "(x/*y)*y = x")];
const STAR_QUANDLE: [(&str, &str); 2] = [("*idempotent", "x*x = x"), ("*right-distributive", "(x*y)*z = (x*z)*(y*z)")];
const STAR_INVOLUTORY_QUANDLE: [(&str, &str); 3] =
    [("*idempotent", "x*x = x"), ("*involutory", "(x*y)*y = x"), ("*right-distributive", "(x*y)*z = (x*z)*(y*z)")];

fn catalogue() -> Vec<AxiomSuite> {
    let one = |name, axioms: Vec<Identity>| AxiomSuite {
        name,
        signature: Signature::OneOp,
        guards: ids(&RQ),
        identities: axioms,
    };
    let two = |name, extra: &[(&str, &str)]| {
        let mut axioms = ids(&STAR_QUANDLE);
        axioms.extend(ids(extra));
        AxiomSuite { name, signature: Signature::TwoOp, guards: ids(&STAR_RQ), identities: axioms }
    };
    let with_involutory_star = |rest: &[(&str, &str)]| {
        let mut v = ids(&STAR_INVOLUTORY_QUANDLE);
        v.extend(ids(rest));
        v
    };
    vec![
        one("rq", vec![]),
        one(
            "s-rq",
            ids(&[("S", "x/y = x(yx)"), ("S01", "(yx)(x(yx)) = y"), ("S02", "(x(yx))y = x"), ("S'", "xy = x/(y/x)")]),
        ),
        one("quandle", ids(&[("idempotent", "xx = x"), ("right-distributive", "(xy)z = (xz)(yz)")])),
        two(
            "oriented-sq-R",
            &[
                ("OS1", "R1(x,y)*z = R1(x*z,y*z)"),
                ("OS2", "R2(x,y)*z = R2(x*z,y*z)"),
                ("OS3", "(y*x)*z = (y*R1(x,z))*R2(x,z)"),
                ("OS4", "R1(x,y)*R2(x,y) = R2(y,x*y)"),
                ("OS5", "R2(x,y) = R1(y,x*y)"),
            ],
        ),
        two(
            "oriented-sq",
            &[
                ("OS1'", "(yx)*z = (y*z)(x*z)"),
                ("OS2'", "(x(yx))*z = (x*z)((y*z)(x*z))"),
                ("OS3'", OS3_PRIME),
                ("OS4'", "(yx)*((x*y)y) = (y*(x*y))(x*y)"),
            ],
        ),
        two("oriented-sq-min", &[("Oriented1", "(xy)*z = (x*z)(y*z)"), ("Oriented2", "(z*y)*x = (z*(xy))*((y*x)x)")]),
        one(
            "sq-def",
            with_involutory_star(&[
                ("S1a.1", "x = R1(y,R2(x,y))"),
                ("S1a.2", "x = R2(R2(x,y),R1(x,y))"),
                ("S1b.1", "y = R2(R1(x,y),x)"),
                ("S1b.2", "y = R1(R2(x,y),R1(x,y))"),
                ("S1c.1", "R1(x,y) = R2(y,R2(x,y))"),
                ("S1c.2", "R2(x,y) = R1(R1(x,y),x)"),
                ("S2", "(y*z)*R2(x,z) = (y*x)*R1(x,z)"),
                ("S3", "R1(x,y) = R2(y*x,x)"),
                ("S4", "R2(x,y) = R1(y*x,x)*R2(y*x,x)"),
                ("S5", "R1(x*y,z)*y = R1(x,z*y)"),
                ("S6", "R2(x*y,z) = R2(x,z*y)*y"),
                ("S1.1", "R2(x,y) = R1(R1(x,y),x)"),
                ("S1.2", "y = R2(R1(x,y),x)"),
            ]),
        ),
        one(
            "sq-prime",
            with_involutory_star(&[
                ("S1'", "y = (yx)(x(yx))"),
                ("S2'", "(y*z)*(x(zx)) = (y*x)*(zx)"),
                ("S3'", "yx = (y*x)(x(y*x))"),
                ("S4'", "x(yx) = (x(y*x))*((y*x)(x(y*x)))"),
                ("S5'", "(z(x*y))*y = (z*y)x"),
                ("S6'", "(x*y)(z(x*y)) = (x((z*y)x))*y"),
            ]),
        ),
        one(
            "sq",
            ids(&[
                ("S-again", "(x(yx))y = x"),
                ("def-of-quandle", "x*y = (xy)y"),
                ("Idempotency_2", "x*x = x"),
                ("distributive_2", "((xy)z)z = ((xz)z)((yz)z)"),
                ("ID3_2", "(x*z)*y = (x*(yz))*(z/y)"),
            ]),
        ),
        one(
            "sq-oneop",
            ids(&[
                ("S-again3", "(x(yx))y = x"),
                ("Idempotency_3", "(xx)x = x"),
                ("distributive_3", "((xy)z)z = ((xz)z)((yz)z)"),
                ("ID3_3", "(((xz)z)y)y = (((x(yz))(yz))(z/y))(z/y)"),
            ]),
        ),
    ]
}

/// The third oriented axiom with `R1(x,z) = zx` and `R2(x,z) = (x*z)z`
/// substituted into `(y*x)*z = (y*R1(x,z))*R2(x,z)`.
const OS3_PRIME: &str = "(y*x)*z = (y*(zx))*((x*z)z)";

/// The literal variant `(y*x)*z = (y*(zx))*(x(zx))`, which reads `R2(x,z)` as
/// `x(zx)`; kept so tests can show it is not equivalent.
pub fn os3_prime_literal() -> Identity {
    Identity::parse("OS3'-literal", "(y*x)*z = (y*(zx))*(x(zx))").unwrap()
}

static CATALOGUE: LazyLock<Vec<AxiomSuite>> = LazyLock::new(catalogue);
static COMPILED: LazyLock<Vec<CompiledSuite>> = LazyLock::new(|| CATALOGUE.iter().map(AxiomSuite::compile).collect());

pub fn suite(name: &str) -> Result<&'static AxiomSuite> {
    CATALOGUE.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

pub fn compiled_suite(name: &str) -> Result<&'static CompiledSuite> {
    COMPILED.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

/// A suite with every identity compiled; reuse it across many structures.
#[derive(Debug, Clone)]
pub struct CompiledSuite {
    pub name: &'static str,
    pub signature: Signature,
    pub(crate) guards: Vec<CompiledIdentity>,
    pub(crate) identities: Vec<CompiledIdentity>,
}

impl CompiledSuite {
    fn tables(&self, s: &Structure) -> Result<Tables> {
        match (self.signature, s) {
            (Signature::OneOp, Structure::One(_)) | (Signature::TwoOp, Structure::Two(_)) => Ok(Tables::new(s)),
            _ => Err(Error::SignatureMismatch(format!(
                "suite {} needs a {} structure",
                self.name,
                if self.signature == Signature::OneOp { "one-operation" } else { "two-operation" }
            ))),
        }
    }

    /// Pass/fail only; stops at the first violation.
    pub fn holds(&self, s: &Structure) -> Result<bool> {
        Ok(self.holds_on(&self.tables(s)?))
    }

    pub(crate) fn holds_on<O: Ops>(&self, ops: &O) -> bool {
        self.guards.iter().all(|g| g.holds(ops)) && self.identities.iter().all(|i| i.holds(ops))
    }

    /// Evaluates every identity and reports the first witness of each failure.
    pub fn check(&self, s: &Structure) -> Result<SuiteReport> {
        let t = self.tables(s)?;
        let mut violations = Vec::new();
        let mut skipped = Vec::new();
        let mut div_ok = true;
        let mut star_div_ok = true;
        for g in &self.guards {
            if let Some(v) = report(g, &t) {
                if g.uses_div {
                    div_ok = false;
                }
                if g.uses_star_div {
                    star_div_ok = false;
                }
                violations.push(v);
            }
        }
        for id in &self.identities {
            if (id.uses_div && !div_ok) || (id.uses_star_div && !star_div_ok) {
                skipped.push(id.name.clone());
            } else if let Some(v) = report(id, &t) {
                violations.push(v);
            }
        }
        Ok(SuiteReport { suite: self.name.to_string(), violations, skipped })
    }

    /// Names of the failing identities (guards included).
    pub fn failing(&self, s: &Structure) -> Result<Vec<String>> {
        Ok(self.check(s)?.violations.into_iter().map(|v| v.identity).collect())
    }
}

fn report(id: &CompiledIdentity, t: &Tables) -> Option<ViolationReport> {
    id.first_violation(t).map(|(w, l, r)| ViolationReport {
        identity: id.name.clone(),
        witness: w.iter().map(|&v| v as usize + 1).collect(),
        lhs: l as usize + 1,
        rhs: r as usize + 1,
    })
}

/// A failing instance; all values 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub identity: String,
    pub witness: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().enumerate().map(|(i, v)| format!("x{}={}", i + 1, v)).collect();
        write!(f, "FAIL {} at {}: lhs={} rhs={}", self.identity, w.join(","), self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub violations: Vec<ViolationReport>,
    /// Axioms not evaluated because the division they use does not exist.
    pub skipped: Vec<String>,
}

impl SuiteReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(ViolationReport),
}

/// Checks one identity on all `|X|^k` assignments. Divisions must exist.
pub fn check_identity(s: &Structure, id: &Identity) -> Result<Outcome> {
    let t = Tables::new(s);
    if matches!(s, Structure::One(_)) && id.uses(Symbol::StarDiv) && !t.dot_rq || id.uses(Symbol::Div) && !t.dot_rq {
        return Err(Error::SymbolUnavailable("/".into()));
    }
    if id.uses(Symbol::StarDiv) && !t.star_rq {
        return Err(Error::SymbolUnavailable("/*".into()));
    }
    let c = CompiledIdentity::new(id, t.interp);
    Ok(match report(&c, &t) {
        None => Outcome::Pass,
        Some(v) => Outcome::Fail(v),
    })
}

pub fn check_suite(s: &Structure, suite: &AxiomSuite) -> Result<SuiteReport> {
    suite.compile().check(s)
}
