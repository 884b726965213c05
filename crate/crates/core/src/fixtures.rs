//! The computer-generated independence examples, embedded as named fixtures
//! and checked against their claimed axiom profiles.

use crate::axioms::{compiled_suite, ViolationReport};
use crate::enumerate::{enumerate_models, SearchConfig};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::structure::{property_flags, OperationTable, Structure, TwoOpStructure};
use serde::Serialize;
use std::fmt;

/// What a fixture is claimed to be.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Table(Structure),
    /// Every involutory model of `s-rq` up to this order.
    InvolutoryFamily(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub id: &'static str,
    pub claim: &'static str,
    pub subject: Subject,
    pub suite: &'static str,
    /// Identities the subject is claimed to fail, in suite order.
    pub fails: Vec<&'static str>,
    /// FNV-1a of the transcribed entries (unused for families).
    pub checksum: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub id: String,
    pub suite: String,
    pub expected: Vec<String>,
    pub observed: Vec<String>,
    pub ok: bool,
    /// First witness of each observed failure.
    pub witnesses: Vec<ViolationReport>,
    /// Members checked (1 for a single table).
    pub checked: usize,
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(",") };
        write!(
            f,
            "{} {}: suite {} expected fails [{}] observed [{}]",
            if self.ok { "OK" } else { "MISMATCH" },
            self.id,
            self.suite,
            list(&self.expected),
            list(&self.observed)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperReport {
    pub fixtures: Vec<FixtureReport>,
}

impl PaperReport {
    pub fn verified(&self) -> usize {
        self.fixtures.iter().filter(|r| r.ok).count()
    }

    pub fn all_ok(&self) -> bool {
        self.verified() == self.fixtures.len()
    }
}

impl fmt::Display for PaperReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.fixtures {
            writeln!(f, "{r}")?;
        }
        writeln!(f, "{}/{} OK", self.verified(), self.fixtures.len())
    }
}

pub fn checksum(s: &Structure) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for v in std::iter::once(s.order() as u16).chain(s.key()) {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

fn one(rows: &[&[usize]]) -> Structure {
    Structure::One(OperationTable::from_rows(rows).expect("fixture table"))
}

fn two(dot: &[&[usize]], star: &[&[usize]]) -> Structure {
    let t = |r| OperationTable::from_rows(r).expect("fixture table");
    Structure::Two(TwoOpStructure::new(t(dot), t(star)).expect("fixture pair"))
}

pub fn paper_fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            id: "oriented-pair-a",
            claim: "satisfies (Oriented1) but not (Oriented2)",
            subject: Subject::Table(two(&[&[1, 1, 1], &[1, 2, 3], &[3, 3, 3]], &[&[1, 3, 1], &[2, 2, 2], &[3, 1, 3]])),
            suite: "oriented-sq-min",
            fails: vec!["Oriented2"],
            checksum: 0x5870_0111_1fc2_f8dc,
        },
        Fixture {
            id: "oriented-pair-b",
            claim: "satisfies (Oriented2) but not (Oriented1)",
            subject: Subject::Table(two(&[&[2, 1, 1], &[2, 1, 1], &[2, 1, 1]], &[&[1, 1, 1], &[3, 2, 2], &[2, 3, 3]])),
            suite: "oriented-sq-min",
            fails: vec!["Oriented1"],
            checksum: 0xd889_c0c4_3dae_0f5c,
        },
        Fixture {
            id: "involutory-2",
            claim: "does not satisfy (S again3)",
            subject: Subject::Table(one(&[&[2, 1], &[1, 2]])),
            suite: "sq-oneop",
            fails: vec!["S-again3"],
            checksum: 0x7c25_e8ca_1caa_cd27,
        },
        Fixture {
            id: "idempotency-4",
            claim: "satisfies all the axioms but (Idempotency_3)",
            subject: Subject::Table(one(&[&[2, 3, 3, 2], &[4, 1, 1, 4], &[1, 4, 4, 1], &[3, 2, 2, 3]])),
            suite: "sq-oneop",
            fails: vec!["Idempotency_3"],
            checksum: 0x59c3_62ea_aa58_7d09,
        },
        Fixture {
            id: "distributive-6",
            claim: "satisfies all the axioms but (distributive_3)",
            subject: Subject::Table(one(&[
                &[1, 4, 6, 1, 1, 1],
                &[3, 2, 2, 3, 3, 3],
                &[2, 3, 3, 2, 2, 2],
                &[4, 1, 5, 5, 5, 4],
                &[5, 6, 4, 4, 4, 5],
                &[6, 5, 1, 6, 6, 6],
            ])),
            suite: "sq-oneop",
            fails: vec!["distributive_3"],
            checksum: 0x1955_5acc_264a_4513,
        },
        Fixture {
            id: "id3-5",
            claim: "satisfies all the axioms but (ID3_3)",
            subject: Subject::Table(one(&[
                &[1, 4, 5, 1, 1],
                &[3, 2, 2, 3, 3],
                &[2, 3, 3, 2, 2],
                &[4, 5, 1, 4, 4],
                &[5, 1, 4, 5, 5],
            ])),
            suite: "sq-oneop",
            fails: vec!["ID3_3"],
            checksum: 0x7ad6_8bae_73d5_f4fc,
        },
        Fixture {
            id: "involutory-family",
            claim: "Involutory S-right quasigroups are singquandles",
            subject: Subject::InvolutoryFamily(4),
            suite: "sq-oneop",
            fails: vec![],
            checksum: 0,
        },
    ]
}

/// Checks one fixture against its claim.
pub fn verify_fixture(f: &Fixture) -> Result<FixtureReport> {
    let suite = compiled_suite(f.suite)?;
    let members = match &f.subject {
        Subject::Table(s) => {
            if checksum(s) != f.checksum {
                return Err(Error::FixtureMismatch {
                    id: f.id.to_string(),
                    expected: vec![format!("checksum {:#018x}", f.checksum)],
                    observed: vec![format!("checksum {:#018x}", checksum(s))],
                });
            }
            vec![s.clone()]
        }
        Subject::InvolutoryFamily(max) => {
            let mut v = Vec::new();
            for n in 1..=*max {
                let models = enumerate_models(&SearchConfig::new(n, "s-rq").exec(Exec::Sequential))?.models;
                v.extend(models.into_iter().filter(|m| property_flags(m.dot()).is_involutory));
            }
            v
        }
    };
    let mut observed: Vec<String> = Vec::new();
    let mut witnesses = Vec::new();
    for m in &members {
        for w in suite.check(m)?.violations {
            if !observed.contains(&w.identity) {
                observed.push(w.identity.clone());
                witnesses.push(w);
            }
        }
    }
    let expected: Vec<String> = f.fails.iter().map(|s| s.to_string()).collect();
    Ok(FixtureReport {
        id: f.id.to_string(),
        suite: f.suite.to_string(),
        ok: observed == expected,
        expected,
        observed,
        witnesses,
        checked: members.len(),
    })
}

/// Like [`verify_fixture`] but a profile mismatch is an error.
pub fn require_fixture(f: &Fixture) -> Result<FixtureReport> {
    let r = verify_fixture(f)?;
    if r.ok {
        Ok(r)
    } else {
        Err(Error::FixtureMismatch { id: r.id, expected: r.expected, observed: r.observed })
    }
}

pub fn verify_paper_examples(exec: Exec) -> Result<PaperReport> {
    let fixtures = paper_fixtures();
    let reports = exec.map(&fixtures, verify_fixture);
    Ok(PaperReport { fixtures: reports.into_iter().collect::<Result<_>>()? })
}
