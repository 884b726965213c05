//! Affine right quasigroups `x·y = f(x) + g(y) + c` over finite abelian
//! groups `Z_{n1} × … × Z_{nk}`, their singquandle conditions, and the
//! Alexander construction.
//!
//! Elements are tuples numbered in mixed radix with the first factor most
//! significant, so for `Z_n` the element `a` is table index `a` (printed
//! `a + 1`).

use crate::axioms::compiled_suite;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::structure::{derive_division, OperationTable, RightQuasigroup, Structure};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest group materialized as a table.
pub const DEFAULT_MAX_ELEMENTS: u64 = 4096;
/// Largest number of `(f, g, c)` candidates `search_affine` will visit.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::IllFormedEndomorphism(format!("cyclic factor {bad} must be at least 2")));
        }
        Ok(Self { factors })
    }

    /// `Z_n`; `Z_1` is the trivial group with no factors.
    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::NotAStructure),
            1 => Ok(Self { factors: vec![] }),
            n => Self::new(vec![n]),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn index(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.factors).fold(0, |acc, (&a, &n)| acc * n as usize + a as usize)
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut x = vec![0; self.rank()];
        for (slot, &n) in x.iter_mut().zip(&self.factors).rev() {
            *slot = (index % n as usize) as u64;
            index /= n as usize;
        }
        x
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order() as usize).map(|i| self.element(i))
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.factors).map(|((a, b), n)| (a + b) % n).collect()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, x: &[i64]) -> Result<Vec<u64>> {
        if x.len() != self.rank() {
            return Err(Error::IllFormedEndomorphism(format!(
                "element has {} coordinates, group rank is {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(x.iter().zip(&self.factors).map(|(&a, &n)| a.rem_euclid(n as i64) as u64).collect())
    }

    /// Number of admissible values for matrix entry `(i, j)`: the maps
    /// `Z_{nj} → Z_{ni}` are the multiples of `ni / gcd(ni, nj)`.
    fn entry_choices(&self, i: usize, j: usize) -> u64 {
        gcd(self.factors[i], self.factors[j])
    }
}

/// An endomorphism given by an integer matrix acting on coordinates.
/// Entry `(i, j)` is the image of generator `e_j` in factor `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    factors: Vec<u64>,
    m: Vec<Vec<u64>>,
}

impl Endomorphism {
    pub fn new(group: &AbelianGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let k = group.rank();
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::IllFormedEndomorphism(format!("expected a {k}×{k} matrix")));
        }
        let f = &group.factors;
        let mut m = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                let v = rows[i][j].rem_euclid(f[i] as i64) as u64;
                if !(v * f[j]).is_multiple_of(f[i]) {
                    return Err(Error::IllFormedEndomorphism(format!(
                        "entry ({}, {}) = {} does not map Z_{} into Z_{}",
                        i + 1,
                        j + 1,
                        rows[i][j],
                        f[j],
                        f[i]
                    )));
                }
                m[i][j] = v;
            }
        }
        Ok(Self { factors: f.clone(), m })
    }

    pub fn scalar(group: &AbelianGroup, s: i64) -> Self {
        let k = group.rank();
        let rows: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| if i == j { s } else { 0 }).collect()).collect();
        Self::new(group, &rows).expect("scalars are well defined")
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        Self::scalar(group, 1)
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.m
    }

    fn entries(&self) -> impl Iterator<Item = u64> + '_ {
        self.m.iter().flatten().copied()
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.m
            .iter()
            .zip(&self.factors)
            .map(|(row, &n)| row.iter().zip(x).fold(0, |acc, (&a, &b)| (acc + a * b) % n))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|v| v == 0)
    }

    /// The inverse, if the map is bijective: its matrix columns are the
    /// preimages of the generators.
    pub fn inverse(&self, group: &AbelianGroup) -> Option<Self> {
        let order = group.order() as usize;
        let mut preimage = vec![usize::MAX; order];
        for (i, x) in group.elements().enumerate() {
            let y = group.index(&self.apply(&x));
            if preimage[y] != usize::MAX {
                return None;
            }
            preimage[y] = i;
        }
        let k = group.rank();
        let mut m = vec![vec![0; k]; k];
        for j in 0..k {
            let mut e = group.zero();
            e[j] = 1;
            let col = group.element(preimage[group.index(&e)]);
            for i in 0..k {
                m[i][j] = col[i];
            }
        }
        Some(Self { factors: self.factors.clone(), m })
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64, u64) -> u64) -> Self {
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .zip(&self.factors)
            .map(|((a, b), &n)| a.iter().zip(b).map(|(&x, &y)| op(x, y, n)).collect())
            .collect();
        Self { factors: self.factors.clone(), m }
    }
}

impl Add for &Endomorphism {
    type Output = Endomorphism;
    fn add(self, rhs: &Endomorphism) -> Endomorphism {
        self.zip_with(rhs, |a, b, n| (a + b) % n)
    }
}

impl Sub for &Endomorphism {
    type Output = Endomorphism;
    fn sub(self, rhs: &Endomorphism) -> Endomorphism {
        self.zip_with(rhs, |a, b, n| (a + n - b) % n)
    }
}

impl Neg for &Endomorphism {
    type Output = Endomorphism;
    fn neg(self) -> Endomorphism {
        self.zip_with(self, |a, _, n| (n - a) % n)
    }
}

/// Composition: `(f * g)(x) = f(g(x))`.
impl Mul for &Endomorphism {
    type Output = Endomorphism;
    fn mul(self, rhs: &Endomorphism) -> Endomorphism {
        let k = self.m.len();
        let m = (0..k)
            .map(|i| {
                (0..k).map(|l| (0..k).fold(0, |acc, j| (acc + self.m[i][j] * rhs.m[j][l]) % self.factors[i])).collect()
            })
            .collect();
        Endomorphism { factors: self.factors.clone(), m }
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.m.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
        f.write_str(&rows.join(";"))
    }
}

impl Serialize for Endomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

/// `Aff(A, f, g, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AffineSpec {
    pub group: AbelianGroup,
    pub f: Endomorphism,
    pub g: Endomorphism,
    pub c: Vec<u64>,
}

impl AffineSpec {
    pub fn new(group: AbelianGroup, f: Endomorphism, g: Endomorphism, c: Vec<u64>) -> Result<Self> {
        if f.factors != group.factors || g.factors != group.factors || c.len() != group.rank() {
            return Err(Error::IllFormedEndomorphism("f, g and c must live on the same group".into()));
        }
        let c = c.iter().zip(group.factors()).map(|(a, n)| a % n).collect();
        Ok(Self { group, f, g, c })
    }

    /// Cyclic shorthand `Aff(Z_n, f, g, c)`.
    pub fn cyclic(n: u64, f: i64, g: i64, c: i64) -> Result<Self> {
        let group = AbelianGroup::cyclic(n)?;
        let c = group.reduce(&vec![c; group.rank()])?;
        Self::new(group.clone(), Endomorphism::scalar(&group, f), Endomorphism::scalar(&group, g), c)
    }

    fn key(&self) -> Vec<u64> {
        self.f.entries().chain(self.g.entries()).chain(self.c.iter().copied()).collect()
    }
}

impl fmt::Display for AffineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self.group.factors.iter().map(|n| n.to_string()).collect();
        let c: Vec<String> = self.c.iter().map(|v| v.to_string()).collect();
        writeln!(f, "group: {}", if factors.is_empty() { "1".into() } else { factors.join(",") })?;
        writeln!(f, "f: {}", self.f)?;
        writeln!(f, "g: {}", self.g)?;
        writeln!(f, "c: {}", c.join(","))
    }
}

pub fn build_affine(spec: &AffineSpec) -> Result<RightQuasigroup> {
    build_affine_bounded(spec, DEFAULT_MAX_ELEMENTS)
}

pub fn build_affine_bounded(spec: &AffineSpec, max_elements: u64) -> Result<RightQuasigroup> {
    let g = &spec.group;
    if g.order() > max_elements {
        return Err(Error::BudgetExceeded(format!("group of order {} exceeds bound {max_elements}", g.order())));
    }
    if spec.f.inverse(g).is_none() {
        return Err(Error::NotAutomorphism);
    }
    let n = g.order() as usize;
    let fx: Vec<Vec<u64>> = g.elements().map(|x| spec.f.apply(&x)).collect();
    let gy: Vec<Vec<u64>> = g.elements().map(|y| g.add(&spec.g.apply(&y), &spec.c)).collect();
    let table = OperationTable::from_fn(n, |x, y| g.index(&g.add(&fx[x], &gy[y])))?;
    derive_division(&table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AffineConditions {
    /// `x/y = x(yx)`: `fg²+f²−1 = g+fgf = (f+fg+1)(c) = 0`.
    pub s: bool,
    pub a1: bool,
    pub a2: bool,
    pub a3: bool,
    pub a4: bool,
    pub a5: bool,
    /// `g = 1−f` and `c = 0`.
    pub idempotent: bool,
    /// `g = 1−f`, `(1−f)(1+f²) = 0` and `c = 0`.
    pub idem_singquandle: bool,
}

impl AffineConditions {
    pub fn singquandle(&self) -> bool {
        self.a1 && self.a2 && self.a3 && self.a4 && self.a5
    }
}

/// Decides the conditions by matrix arithmetic on the generators.
pub fn check_affine_conditions(spec: &AffineSpec) -> AffineConditions {
    let (f, g, c) = (&spec.f, &spec.g, &spec.c);
    let one = Endomorphism::identity(&spec.group);
    let is_zero_elem = |x: &[u64]| x.iter().all(|&v| v == 0);
    let ff = f * f;
    let a1 = (&(&(f * g) * g) + &ff) - one.clone();
    let a2 = g + &(&(f * g) * f);
    let a3 = &one - &(&ff * &ff);
    let one_plus_f = &one + f;
    let a4 = &(&one_plus_f * g) - &(&one - &ff);
    let c_zero = is_zero_elem(c);
    let a5 = is_zero_elem(&one_plus_f.apply(c)) && is_zero_elem(&g.apply(c));
    let s_c = &(f + &(f * g)) + &one;
    let g_is_complement = *g == &one - f;
    let idem_poly = &(&one - f) * &(&one + &ff);
    AffineConditions {
        s: a1.is_zero() && a2.is_zero() && is_zero_elem(&s_c.apply(c)),
        a1: a1.is_zero(),
        a2: a2.is_zero(),
        a3: a3.is_zero(),
        a4: a4.is_zero(),
        a5,
        idempotent: g_is_complement && c_zero,
        idem_singquandle: g_is_complement && idem_poly.is_zero() && c_zero,
    }
}

impl Sub<Endomorphism> for Endomorphism {
    type Output = Endomorphism;
    fn sub(self, rhs: Endomorphism) -> Endomorphism {
        &self - &rhs
    }
}

/// Parameters of an Alexander singquandle; `t = (1−B)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderSpec {
    pub group: AbelianGroup,
    pub b: Endomorphism,
}

impl AlexanderSpec {
    pub fn t(&self) -> Endomorphism {
        let u = &Endomorphism::identity(&self.group) - &self.b;
        &u * &u
    }
}

/// `f = B²−B+1`, `g = B(1−B)`, `c = 0`, provided `1−(1−B)⁴ = 0` and
/// `B(1+(1−B)²) = 0`.
pub fn alexander_to_affine(a: &AlexanderSpec) -> Result<AffineSpec> {
    let one = Endomorphism::identity(&a.group);
    let b = &a.b;
    let u = &one - b;
    let u2 = &u * &u;
    if !(&one - &(&u2 * &u2)).is_zero() {
        return Err(Error::AlexanderConditionsFail("1-(1-B)^4 = 0".into()));
    }
    if !(b * &(&one + &u2)).is_zero() {
        return Err(Error::AlexanderConditionsFail("B(1+(1-B)^2) = 0".into()));
    }
    let f = &(&(b * b) - b) + &one;
    let g = b * &u;
    AffineSpec::new(a.group.clone(), f, g, a.group.zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// A1–A5.
    Singquandle,
    /// Idempotent singquandles.
    Idempotent,
    /// `x/y = x(yx)` only.
    SOnly,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singquandle" => Ok(SearchMode::Singquandle),
            "idempotent" => Ok(SearchMode::Idempotent),
            "s-only" => Ok(SearchMode::SOnly),
            other => Err(Error::Parse { line: 1, column: 1, message: format!("unknown search mode `{other}`") }),
        }
    }
}

/// Every endomorphism of the group, in lexicographic order of matrix entries.
pub fn endomorphisms(group: &AbelianGroup) -> Vec<Endomorphism> {
    let k = group.rank();
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let mut out = vec![Endomorphism { factors: group.factors.clone(), m: vec![vec![0; k]; k] }];
    for &(i, j) in &cells {
        let step = group.factors[i] / group.entry_choices(i, j);
        let choices = group.entry_choices(i, j);
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..choices).map(move |t| {
                    let mut e = e.clone();
                    e.m[i][j] = t * step;
                    e
                })
            })
            .collect();
    }
    out
}

/// Every `(f, g, c)` with `f` an automorphism that satisfies the mode's
/// conditions, in lexicographic order of `(f, g, c)` entries.
pub fn search_affine(group: &AbelianGroup, mode: SearchMode, budget: u64, exec: Exec) -> Result<Vec<AffineSpec>> {
    let k = group.rank();
    let end_count = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .try_fold(1u64, |acc, (i, j)| acc.checked_mul(group.entry_choices(i, j)));
    let bound = end_count.and_then(|e| match mode {
        SearchMode::Idempotent => Some(e),
        _ => e.checked_mul(e)?.checked_mul(group.order()),
    });
    match bound {
        Some(b) if b <= budget => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "affine candidates over {:?} exceed budget {budget}",
                group.factors
            )))
        }
    }
    let ends = endomorphisms(group);
    let auts: Vec<Endomorphism> = ends.iter().filter(|e| e.inverse(group).is_some()).cloned().collect();
    let one = Endomorphism::identity(group);
    let per_f = exec.map(&auts, |f| -> Vec<AffineSpec> {
        let keep = |spec: &AffineSpec| {
            let c = check_affine_conditions(spec);
            match mode {
                SearchMode::Singquandle => c.singquandle(),
                SearchMode::Idempotent => c.idem_singquandle,
                SearchMode::SOnly => c.s,
            }
        };
        match mode {
            SearchMode::Idempotent => {
                let spec = AffineSpec { group: group.clone(), f: f.clone(), g: &one - f, c: group.zero() };
                keep(&spec).then_some(spec).into_iter().collect()
            }
            _ => ends
                .iter()
                .flat_map(|g| group.elements().map(move |c| (g, c)))
                .map(|(g, c)| AffineSpec { group: group.clone(), f: f.clone(), g: g.clone(), c })
                .filter(keep)
                .collect(),
        }
    });
    let mut out: Vec<AffineSpec> = per_f.into_iter().flatten().collect();
    out.sort_by_key(AffineSpec::key);
    Ok(out)
}

/// For `Q = Aff(Z_n, f, 1−f, 0)`, the structure induced on
/// `Z_n / (1−f)(1+f²)Z_n`.
pub fn cyclic_idempotent_quotient(n: u64, f: i64) -> Result<AffineSpec> {
    let fr = f.rem_euclid(n as i64) as u64;
    if gcd(fr, n) != 1 {
        return Err(Error::NotAutomorphism);
    }
    let m = ((1 + n - fr) % n) as u128 * ((1 + (fr as u128 * fr as u128)) % n as u128) % n as u128;
    let d = gcd(n, m as u64);
    let fq = (fr % d) as i64;
    AffineSpec::cyclic(d, fq, 1 - fq, 0)
}

/// Table-level verdicts for the same structure, for cross-checking.
pub fn table_verdicts(spec: &AffineSpec) -> Result<(bool, bool, bool)> {
    let s = Structure::One(build_affine(spec)?.into_mul());
    Ok((
        compiled_suite("s-rq")?.holds(&s)?,
        compiled_suite("sq-oneop")?.holds(&s)?,
        crate::structure::property_flags(s.dot()).is_idempotent,
    ))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parses `group: …` / `f: …` / `g: …` / `c: …` (matrix rows separated by
/// `;`, entries by `,` or spaces).
pub fn parse_affine_spec(text: &str) -> Result<AffineSpec> {
    let mut fields: [Option<(usize, &str)>; 4] = [None; 4];
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, value) = t.split_once(':').ok_or_else(|| Error::Parse {
            line: i + 1,
            column: 1,
            message: "expected `key: value`".into(),
        })?;
        let slot = match key.trim() {
            "group" => 0,
            "f" => 1,
            "g" => 2,
            "c" => 3,
            other => return Err(Error::BadToken { line: i + 1, column: 1, token: other.into() }),
        };
        fields[slot] = Some((i + 1, value.trim()));
    }
    let get = |slot: usize, name: &str| {
        fields[slot].ok_or_else(|| Error::Parse { line: 1, column: 1, message: format!("missing `{name}:`") })
    };
    let (gl, gv) = get(0, "group")?;
    let group = parse_group(gv).map_err(|e| relocate(e, gl))?;
    let (fl, fv) = get(1, "f")?;
    let f = parse_matrix(&group, fv).map_err(|e| relocate(e, fl))?;
    let (hl, hv) = get(2, "g")?;
    let g = parse_matrix(&group, hv).map_err(|e| relocate(e, hl))?;
    let c = match fields[3] {
        Some((cl, cv)) => group.reduce(&parse_ints(cv).map_err(|e| relocate(e, cl))?)?,
        None => group.zero(),
    };
    AffineSpec::new(group, f, g, c)
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { column, message, .. } => Error::Parse { line, column, message },
        Error::BadToken { column, token, .. } => Error::BadToken { line, column, token },
        other => other,
    }
}

pub fn parse_group(text: &str) -> Result<AbelianGroup> {
    let ns: Vec<i64> = parse_ints(text)?;
    if ns.iter().any(|&n| n < 1) {
        return Err(Error::Parse { line: 1, column: 1, message: "group factors must be positive".into() });
    }
    let ns: Vec<u64> = ns.into_iter().filter(|&n| n != 1).map(|n| n as u64).collect();
    AbelianGroup::new(ns)
}

pub fn parse_matrix(group: &AbelianGroup, text: &str) -> Result<Endomorphism> {
    let rows: Vec<Vec<i64>> =
        text.split(';').filter(|r| !r.trim().is_empty()).map(parse_ints).collect::<Result<_>>()?;
    if group.rank() == 0 && rows.iter().all(|r| r.len() <= 1) {
        return Endomorphism::new(group, &[]);
    }
    Endomorphism::new(group, &rows)
}

pub fn parse_element(group: &AbelianGroup, text: &str) -> Result<Vec<u64>> {
    let v = parse_ints(text)?;
    if group.rank() == 0 {
        return Ok(vec![]);
    }
    group.reduce(&v)
}

fn parse_ints(text: &str) -> Result<Vec<i64>> {
    let cleaned = text.trim().trim_start_matches('(').trim_end_matches(')');
    cleaned
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse().map_err(|_| Error::BadToken {
                line: 1,
                column: text.find(t).map_or(1, |p| p + 1),
                token: t.to_string(),
            })
        })
        .collect()
}
