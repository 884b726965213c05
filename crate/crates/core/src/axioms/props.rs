//! Structural checks that accompany the suites.

use super::suites::compiled_suite;
use crate::error::{Error, Result};
use crate::structure::{OperationTable, RightQuasigroup, Structure};
use itertools::Itertools;
use serde::Serialize;

/// Whether `(x, y) ↦ (xy, y/x)` is an involution of `X × X`.
pub fn phi_involution_check(s: &RightQuasigroup) -> bool {
    let (m, d) = (s.mul(), s.div());
    let n = s.order();
    let phi = |x: usize, y: usize| (m.get(x, y), d.get(y, x));
    (0..n).cartesian_product(0..n).all(|(x, y)| {
        let (u, v) = phi(x, y);
        phi(u, v) == (x, y)
    })
}

/// `(X, /, ·)`.
pub fn dual_structure(s: &RightQuasigroup) -> RightQuasigroup {
    s.dual()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoCentralReport {
    /// Every square is central.
    pub two_central: bool,
    /// The conjugation quandle `x*y = y⁻¹xy` passes `s-rq`.
    pub conjugation_s_rq: bool,
    /// The group operation itself, as a right quasigroup, passes `s-rq`.
    pub group_s_rq: bool,
    pub trivial: bool,
}

/// Validates a group table and compares 2-centrality with the `s-rq` status
/// of its conjugation quandle.
pub fn conjugation_2central_check(g: &OperationTable) -> Result<TwoCentralReport> {
    let n = g.order();
    let e = (0..n)
        .find(|&e| (0..n).all(|x| g.get(e, x) == x && g.get(x, e) == x))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    let inv: Vec<usize> = (0..n)
        .map(|x| {
            (0..n).find(|&y| g.get(x, y) == e).ok_or_else(|| Error::NotAGroup(format!("{} has no inverse", x + 1)))
        })
        .collect::<Result<_>>()?;
    if let Some(((x, y), z)) = (0..n)
        .cartesian_product(0..n)
        .cartesian_product(0..n)
        .find(|&((x, y), z)| g.get(g.get(x, y), z) != g.get(x, g.get(y, z)))
    {
        return Err(Error::NotAGroup(format!("not associative at ({}, {}, {})", x + 1, y + 1, z + 1)));
    }
    let two_central = (0..n).cartesian_product(0..n).all(|(x, y)| {
        let y2 = g.get(y, y);
        g.get(x, y2) == g.get(y2, x)
    });
    let conj = OperationTable::from_fn(n, |x, y| g.get(g.get(inv[y], x), y))?;
    let srq = compiled_suite("s-rq")?;
    Ok(TwoCentralReport {
        two_central,
        conjugation_s_rq: srq.holds(&Structure::One(conj))?,
        group_s_rq: srq.holds(&Structure::One(g.clone()))?,
        trivial: n == 1,
    })
}
