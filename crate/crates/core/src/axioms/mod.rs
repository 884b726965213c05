//! Equational identities, the named axiom suites, and exhaustive checking.

pub(crate) mod eval;
mod props;
mod suites;
mod term;

pub use eval::Interpretation;
pub use props::{conjugation_2central_check, dual_structure, phi_involution_check, TwoCentralReport};
pub use suites::{
    check_identity, check_suite, compiled_suite, os3_prime_literal, suite, AxiomSuite, CompiledSuite, Outcome,
    Signature, SuiteReport, ViolationReport, SUITE_NAMES,
};
pub use term::{Identity, Symbol, Term};
