//! Operation tables and the basic predicates on them.

use crate::error::{Error, Result};
use itertools::Itertools;
use serde::Serialize;

/// Element indices; tables are stored 0-based.
pub type Elem = u16;

/// An `n × n` table with entry `(x, y)` equal to `x·y` (row = left argument).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperationTable {
    order: usize,
    entries: Vec<Elem>,
}

impl OperationTable {
    /// Builds a table from 0-based row-major entries.
    pub fn new(order: usize, entries: Vec<Elem>) -> Result<Self> {
        if order == 0 {
            return Err(Error::NotAStructure);
        }
        if order > Elem::MAX as usize || entries.len() != order * order {
            return Err(Error::NotSquare { row: entries.len() / order.max(1), len: entries.len(), order });
        }
        if let Some(pos) = entries.iter().position(|&v| v as usize >= order) {
            return Err(Error::EntryOutOfRange {
                row: pos / order + 1,
                column: pos % order + 1,
                value: entries[pos] as usize + 1,
                order,
            });
        }
        Ok(Self { order, entries })
    }

    /// Builds a table from 1-based rows, as printed in the literature.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::NotAStructure);
        }
        let mut entries = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::NotSquare { row: r + 1, len: row.len(), order });
            }
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > order {
                    return Err(Error::EntryOutOfRange { row: r + 1, column: c + 1, value: v, order });
                }
                entries.push((v - 1) as Elem);
            }
        }
        Ok(Self { order, entries })
    }

    /// Builds a table from a 0-based function `(x, y) -> x·y`.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::NotAStructure);
        }
        let entries = (0..order).cartesian_product(0..order).map(|(x, y)| f(x, y) as Elem).collect();
        Self::new(order, entries)
    }

    /// The projection `x·y = x`.
    pub fn projection(order: usize) -> Result<Self> {
        Self::from_fn(order, |x, _| x)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.order + y] as usize
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[Elem] {
        &self.entries
    }

    /// Rows with 1-based entries.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.order).map(|r| r.iter().map(|&v| v as usize + 1).collect()).collect()
    }

    /// Column `y` as the map `x ↦ x·y`.
    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.order).map(|x| self.get(x, y)).collect()
    }

    /// First column (0-based) that is not a permutation, with its repeated value.
    pub fn column_failure(&self) -> Option<(usize, usize)> {
        let n = self.order;
        for y in 0..n {
            let mut seen = vec![false; n];
            for x in 0..n {
                let v = self.get(x, y);
                if seen[v] {
                    return Some((y, v));
                }
                seen[v] = true;
            }
        }
        None
    }

    pub fn is_right_quasigroup(&self) -> bool {
        self.column_failure().is_none()
    }

    /// `x/y`: the least `z` with `z·y = x`, or `x` when there is none.
    ///
    /// On a right quasigroup this is the right division; elsewhere the
    /// cancellation laws fail for it, which is what the `rq` checks rely on.
    pub(crate) fn preimage_division(&self) -> OperationTable {
        let n = self.order;
        let mut entries = vec![Elem::MAX; n * n];
        for y in 0..n {
            for x in (0..n).rev() {
                entries[self.get(x, y) * n + y] = x as Elem;
            }
        }
        for (i, e) in entries.iter_mut().enumerate() {
            if *e == Elem::MAX {
                *e = (i / n) as Elem;
            }
        }
        OperationTable { order: n, entries }
    }

    /// The table `φ(x)·φ(y) = φ(x·y)` transported along the bijection `phi`.
    pub fn relabel(&self, phi: &[usize]) -> OperationTable {
        let n = self.order;
        let mut entries = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                entries[phi[x] * n + phi[y]] = phi[self.get(x, y)] as Elem;
            }
        }
        OperationTable { order: n, entries }
    }

    /// The squaring map `x ↦ x·x`.
    pub fn squaring(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.get(x, x)).collect()
    }

    /// `(x, y) ↦ (x·y)·y`.
    pub fn square_right(&self) -> OperationTable {
        let n = self.order;
        let entries = (0..n).cartesian_product(0..n).map(|(x, y)| self.get(self.get(x, y), y) as Elem).collect();
        OperationTable { order: n, entries }
    }
}

/// A right quasigroup `(X, ·, /)`; the division is always derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RightQuasigroup {
    mul: OperationTable,
    div: OperationTable,
}

impl RightQuasigroup {
    pub fn mul(&self) -> &OperationTable {
        &self.mul
    }

    pub fn div(&self) -> &OperationTable {
        &self.div
    }

    pub fn order(&self) -> usize {
        self.mul.order
    }

    pub fn into_mul(self) -> OperationTable {
        self.mul
    }

    /// `(X, /, ·)`.
    pub fn dual(&self) -> RightQuasigroup {
        RightQuasigroup { mul: self.div.clone(), div: self.mul.clone() }
    }
}

impl TryFrom<OperationTable> for RightQuasigroup {
    type Error = Error;

    fn try_from(mul: OperationTable) -> Result<Self> {
        derive_division(&mul)
    }
}

/// Derives `x/y = R_y⁻¹(x)`.
pub fn derive_division(mul: &OperationTable) -> Result<RightQuasigroup> {
    if let Some((y, v)) = mul.column_failure() {
        return Err(Error::NotRightQuasigroup { column: y + 1, value: v + 1 });
    }
    Ok(RightQuasigroup { mul: mul.clone(), div: mul.preimage_division() })
}

/// Two operations `(X, ·, *)` on one carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoOpStructure {
    dot: OperationTable,
    star: OperationTable,
}

impl TwoOpStructure {
    pub fn new(dot: OperationTable, star: OperationTable) -> Result<Self> {
        if dot.order != star.order {
            return Err(Error::OrderMismatch { left: dot.order, right: star.order });
        }
        Ok(Self { dot, star })
    }

    pub fn dot(&self) -> &OperationTable {
        &self.dot
    }

    pub fn star(&self) -> &OperationTable {
        &self.star
    }

    pub fn order(&self) -> usize {
        self.dot.order
    }

    /// `(X, ·, *)` with `x*y = (x·y)·y`, the oriented structure carried by a
    /// singquandle.
    pub fn from_singquandle(dot: &OperationTable) -> Self {
        Self { dot: dot.clone(), star: dot.square_right() }
    }
}

/// A one- or two-operation structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    One(OperationTable),
    Two(TwoOpStructure),
}

impl Structure {
    pub fn order(&self) -> usize {
        self.dot().order
    }

    pub fn dot(&self) -> &OperationTable {
        match self {
            Structure::One(t) => t,
            Structure::Two(s) => &s.dot,
        }
    }

    pub fn tables(&self) -> Vec<&OperationTable> {
        match self {
            Structure::One(t) => vec![t],
            Structure::Two(s) => vec![&s.dot, &s.star],
        }
    }

    pub fn relabel(&self, phi: &[usize]) -> Structure {
        match self {
            Structure::One(t) => Structure::One(t.relabel(phi)),
            Structure::Two(s) => Structure::Two(TwoOpStructure { dot: s.dot.relabel(phi), star: s.star.relabel(phi) }),
        }
    }

    /// Row-major entries of every table, concatenated; the canonical order of
    /// structures is the lexicographic order of this key.
    pub fn key(&self) -> Vec<Elem> {
        self.tables().into_iter().flat_map(|t| t.entries.iter().copied()).collect()
    }
}

impl From<OperationTable> for Structure {
    fn from(t: OperationTable) -> Self {
        Structure::One(t)
    }
}

impl From<TwoOpStructure> for Structure {
    fn from(s: TwoOpStructure) -> Self {
        Structure::Two(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropertyFlags {
    pub is_right_quasigroup: bool,
    pub is_permutation: bool,
    pub is_idempotent: bool,
    pub is_involutory: bool,
    pub is_right_distributive: bool,
    pub is_two_divisible: bool,
    pub is_projection: bool,
    pub is_quandle: bool,
}

pub fn property_flags(s: &OperationTable) -> PropertyFlags {
    let n = s.order;
    let all2 = |f: &dyn Fn(usize, usize) -> bool| (0..n).cartesian_product(0..n).all(|(x, y)| f(x, y));
    let is_right_quasigroup = s.is_right_quasigroup();
    let is_permutation = (0..n).all(|x| (0..n).all(|y| s.get(x, y) == s.get(x, 0)));
    let is_idempotent = (0..n).all(|x| s.get(x, x) == x);
    let is_involutory = all2(&|x, y| s.get(s.get(x, y), y) == x);
    let is_right_distributive = (0..n)
        .cartesian_product(0..n)
        .cartesian_product(0..n)
        .all(|((x, y), z)| s.get(s.get(x, y), z) == s.get(s.get(x, z), s.get(y, z)));
    let mut sq = s.squaring();
    sq.sort_unstable();
    let is_two_divisible = sq.iter().enumerate().all(|(i, &v)| i == v);
    PropertyFlags {
        is_right_quasigroup,
        is_permutation,
        is_idempotent,
        is_involutory,
        is_right_distributive,
        is_two_divisible,
        is_projection: is_idempotent && is_permutation,
        is_quandle: is_idempotent && is_right_distributive && is_right_quasigroup,
    }
}

/// Connected components: orbits of the group generated by the right
/// multiplications. Blocks are sorted, and listed by least element.
pub fn rmlt_orbits(s: &RightQuasigroup) -> Vec<Vec<usize>> {
    orbits_of(&s.mul)
}

pub(crate) fn orbits_of(t: &OperationTable) -> Vec<Vec<usize>> {
    let n = t.order;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, t.get(x, y)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if index[r] == usize::MAX {
            index[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[r]].push(x);
    }
    blocks
}

/// Lexicographically least bijection `φ` with `φ(x∘y) = φ(x)∘φ(y)` for every
/// operation of the structures, or `None`.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Result<Option<Vec<usize>>> {
    let (ta, tb) = (a.tables(), b.tables());
    if a.order() != b.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: b.order() });
    }
    if ta.len() != tb.len() {
        return Err(Error::SignatureMismatch("one-operation vs two-operation structure".into()));
    }
    Ok(Isomorphism::new(&ta, &tb).search())
}

struct Isomorphism<'a> {
    a: &'a [&'a OperationTable],
    b: &'a [&'a OperationTable],
    n: usize,
    sig_a: Vec<Vec<usize>>,
    sig_b: Vec<Vec<usize>>,
    phi: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Isomorphism<'a> {
    fn new(a: &'a [&'a OperationTable], b: &'a [&'a OperationTable]) -> Self {
        let n = a[0].order;
        let sig_a = (0..n).map(|x| element_signature(a, x)).collect();
        let sig_b = (0..n).map(|x| element_signature(b, x)).collect();
        Self { a, b, n, sig_a, sig_b, phi: vec![usize::MAX; n], used: vec![false; n] }
    }

    fn search(mut self) -> Option<Vec<usize>> {
        let mut ma = self.sig_a.clone();
        let mut mb = self.sig_b.clone();
        ma.sort();
        mb.sort();
        if ma != mb {
            return None;
        }
        if self.extend(0) {
            Some(self.phi)
        } else {
            None
        }
    }

    fn extend(&mut self, x: usize) -> bool {
        if x == self.n {
            return true;
        }
        for v in 0..self.n {
            if self.used[v] || self.sig_a[x] != self.sig_b[v] {
                continue;
            }
            self.phi[x] = v;
            self.used[v] = true;
            if self.consistent(x) && self.extend(x + 1) {
                return true;
            }
            self.used[v] = false;
            self.phi[x] = usize::MAX;
        }
        false
    }

    /// Checks every product among `0..=x` whose value is also mapped.
    fn consistent(&self, x: usize) -> bool {
        let phi = &self.phi;
        self.a.iter().zip(self.b).all(|(ta, tb)| {
            (0..=x).all(|u| {
                [(u, x), (x, u)].iter().all(|&(p, q)| {
                    let w = ta.get(p, q);
                    let image = tb.get(phi[p], phi[q]);
                    if phi[w] != usize::MAX {
                        phi[w] == image
                    } else {
                        // image must stay free for w
                        !self.used[image]
                    }
                })
            })
        })
    }
}

/// Isomorphism-invariant data of an element: idempotency and the sorted value
/// multiplicities of its column under each operation.
fn element_signature(tables: &[&OperationTable], x: usize) -> Vec<usize> {
    let mut sig = Vec::new();
    for t in tables {
        let n = t.order;
        sig.push((t.get(x, x) == x) as usize);
        let mut counts = vec![0usize; n];
        for z in 0..n {
            counts[t.get(z, x)] += 1;
        }
        counts.sort_unstable();
        sig.extend(counts);
        let mut row_counts = vec![0usize; n];
        for z in 0..n {
            row_counts[t.get(x, z)] += 1;
        }
        row_counts.sort_unstable();
        sig.extend(row_counts);
    }
    sig
}

/// True when no relabeling of `s` has a smaller canonical key.
pub fn is_lex_least(s: &Structure) -> bool {
    let n = s.order();
    let key = s.key();
    (0..n).permutations(n).all(|phi| s.relabel(&phi).key() >= key)
}
