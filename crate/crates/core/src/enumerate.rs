//! Exhaustive model search for the axiom suites.
//!
//! One-operation suites are right-quasigroup suites: cells are filled column
//! by column (top to bottom) with values not yet used in the column. For
//! two-operation suites `*` ranges over the quandles of the order that pass
//! the `*`-only axioms, and `·` is searched over raw tables. After every cell
//! each identity is evaluated on the partial table; an assignment whose two
//! sides are both known and differ prunes the branch.

use crate::axioms::eval::{CompiledIdentity, Ops, Prim, Tables, UNDEF};
use crate::axioms::{compiled_suite, CompiledSuite, Interpretation, Signature};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::structure::{is_lex_least, Elem, OperationTable, Structure, TwoOpStructure};
use serde::Serialize;
use std::cell::Cell;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

/// Search nodes visited before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
/// Models held in memory before giving up.
pub const MODEL_LIMIT: usize = 2_000_000;
pub const DEFAULT_MAX_ORDER_ONE_OP: usize = 6;
pub const DEFAULT_MAX_ORDER_TWO_OP: usize = 4;
/// Hard ceiling regardless of budget.
pub const MAX_ORDER: usize = 8;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub order: usize,
    pub suite: String,
    pub up_to_iso: bool,
    pub count_only: bool,
    pub exec: Exec,
    pub node_budget: u64,
    /// Overrides the per-signature default order limit.
    pub max_order: Option<usize>,
}

impl SearchConfig {
    pub fn new(order: usize, suite: &str) -> Self {
        SearchConfig {
            order,
            suite: suite.to_string(),
            up_to_iso: false,
            count_only: false,
            exec: Exec::default(),
            node_budget: DEFAULT_NODE_BUDGET,
            max_order: None,
        }
    }

    pub fn up_to_iso(mut self, yes: bool) -> Self {
        self.up_to_iso = yes;
        self
    }

    pub fn count_only(mut self, yes: bool) -> Self {
        self.count_only = yes;
        self
    }

    pub fn exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }
}

/// Models in canonical order (lexicographic in `Structure::key`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelStream {
    pub suite: String,
    pub order: usize,
    pub up_to_iso: bool,
    /// Empty when the search was run with `count_only`.
    #[serde(skip)]
    pub models: Vec<Structure>,
    pub count: usize,
}

pub fn enumerate_models(cfg: &SearchConfig) -> Result<ModelStream> {
    let suite = compiled_suite(&cfg.suite)?;
    let n = cfg.order;
    if n == 0 {
        return Err(Error::NotAStructure);
    }
    let limit = cfg.max_order.unwrap_or(match suite.signature {
        Signature::OneOp => DEFAULT_MAX_ORDER_ONE_OP,
        Signature::TwoOp => DEFAULT_MAX_ORDER_TWO_OP,
    });
    if n > limit.min(MAX_ORDER) {
        return Err(Error::BudgetExceeded(format!(
            "order {n} exceeds the limit {} for suite {}",
            limit.min(MAX_ORDER),
            suite.name
        )));
    }
    let budget = Budget::new(cfg.node_budget);
    let collect = cfg.up_to_iso || !cfg.count_only;
    let found = match suite.signature {
        Signature::OneOp => search_one_op(suite, n, collect, cfg.exec, &budget)?,
        Signature::TwoOp => search_two_op(suite, n, collect, cfg.exec, &budget)?,
    };
    let mut models = match found {
        Found::Count(count) => {
            return Ok(ModelStream {
                suite: suite.name.to_string(),
                order: n,
                up_to_iso: false,
                models: vec![],
                count: count as usize,
            })
        }
        Found::Models(m) => m,
    };
    debug_assert!(models.iter().all(|m| suite.holds(m).unwrap_or(false)));
    if cfg.up_to_iso {
        let keep = cfg.exec.map(&models, is_lex_least);
        models = models.into_iter().zip(keep).filter_map(|(m, k)| k.then_some(m)).collect();
    }
    models.sort_by_cached_key(Structure::key);
    let count = models.len();
    if cfg.count_only {
        models.clear();
    }
    Ok(ModelStream { suite: suite.name.to_string(), order: n, up_to_iso: cfg.up_to_iso, models, count })
}

struct Budget {
    limit: u64,
    used: AtomicU64,
    blown: AtomicBool,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0), blown: AtomicBool::new(false) }
    }

    /// Charges one node in batches to keep contention low.
    fn charge(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local == 1024 {
            let total = self.used.fetch_add(*local, Ordering::Relaxed) + *local;
            *local = 0;
            if total > self.limit {
                self.blown.store(true, Ordering::Relaxed);
            }
        }
        !self.blown.load(Ordering::Relaxed)
    }

    fn settle(&self, local: u64) {
        let total = self.used.fetch_add(local, Ordering::Relaxed) + local;
        if total > self.limit {
            self.blown.store(true, Ordering::Relaxed);
        }
    }

    fn blow(&self) {
        self.blown.store(true, Ordering::Relaxed);
    }

    fn check(&self) -> Result<()> {
        if self.blown.load(Ordering::Relaxed) {
            Err(Error::BudgetExceeded(format!("search exceeded {} nodes or {MODEL_LIMIT} stored models", self.limit)))
        } else {
            Ok(())
        }
    }
}

/// A table under construction. `·` may be partial; `*` is either derived
/// from `·` (one-op) or complete (two-op).
#[derive(Clone)]
struct Partial {
    n: usize,
    dot: Vec<Elem>,
    star: Option<(Vec<Elem>, Vec<Elem>)>,
}

/// Read access to a [`Partial`] that remembers an unfilled cell it hit.
struct Probe<'a> {
    p: &'a Partial,
    blocked: Cell<usize>,
}

impl Probe<'_> {
    fn dot(&self, a: Elem, b: Elem) -> Elem {
        let i = a as usize * self.p.n + b as usize;
        let v = self.p.dot[i];
        if v == UNDEF {
            self.blocked.set(i);
        }
        v
    }

    fn derived_star(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.dot(a, b);
        if ab == UNDEF {
            UNDEF
        } else {
            self.dot(ab, b)
        }
    }

    /// Least `z` with `op(z, b) = a`, or `a` when the column is complete
    /// and has no such `z`; unknown while undecided.
    fn preimage(&self, a: Elem, b: Elem, op: impl Fn(Elem, Elem) -> Elem) -> Elem {
        for z in 0..self.p.n as Elem {
            match op(z, b) {
                UNDEF => return UNDEF,
                v if v == a => return z,
                _ => {}
            }
        }
        a
    }
}

impl Ops for Probe<'_> {
    #[inline]
    fn apply(&self, p: Prim, a: Elem, b: Elem) -> Elem {
        let n = self.p.n;
        match (p, &self.p.star) {
            (Prim::Dot, _) => self.dot(a, b),
            (Prim::Div, _) => self.preimage(a, b, |z, b| self.dot(z, b)),
            (Prim::Star, None) => self.derived_star(a, b),
            (Prim::StarDiv, None) => self.preimage(a, b, |z, b| self.derived_star(z, b)),
            (Prim::Star, Some((s, _))) => s[a as usize * n + b as usize],
            (Prim::StarDiv, Some((_, d))) => d[a as usize * n + b as usize],
        }
    }

    fn order(&self) -> usize {
        self.p.n
    }
}

enum Sink {
    Collect(Vec<Vec<Elem>>),
    Count(u64),
}

/// A ground instance: identity index and assignment number.
type Item = (u16, u32);

enum Verdict {
    Holds,
    Fails,
    Blocked(usize),
}

/// Search state: the partial table plus, for every unfilled cell, the ground
/// instances waiting on it.
#[derive(Clone)]
struct State {
    p: Partial,
    watch: Vec<Vec<Item>>,
    used: Vec<u32>,
}

struct Searcher<'a> {
    checks: Vec<&'a CompiledIdentity>,
    /// Cells in fill order (column-major), as row-major indices.
    cells: Vec<usize>,
    permutation_columns: bool,
}

impl Searcher<'_> {
    fn judge(&self, p: &Partial, (id, code): Item, env: &mut [Elem]) -> Verdict {
        let c = self.checks[id as usize];
        let n = p.n as u32;
        let mut code = code;
        for slot in env[..c.arity].iter_mut().rev() {
            *slot = (code % n) as Elem;
            code /= n;
        }
        let probe = Probe { p, blocked: Cell::new(usize::MAX) };
        match c.sides(&probe, &env[..c.arity.max(1)]) {
            (l, r) if l != UNDEF && r != UNDEF => {
                if l == r {
                    Verdict::Holds
                } else {
                    Verdict::Fails
                }
            }
            _ => Verdict::Blocked(probe.blocked.get()),
        }
    }

    fn root(&self, p: Partial) -> Option<State> {
        let n = p.n;
        let mut st = State { watch: vec![Vec::new(); n * n], used: vec![0; n], p };
        for (i, v) in st.p.dot.iter().enumerate() {
            if *v != UNDEF {
                st.used[i % n] |= 1 << v;
            }
        }
        let mut env = [0; 16];
        for (id, c) in self.checks.iter().enumerate() {
            for code in 0..(n as u32).pow(c.arity as u32) {
                match self.judge(&st.p, (id as u16, code), &mut env) {
                    Verdict::Holds => {}
                    Verdict::Fails => return None,
                    Verdict::Blocked(cell) => st.watch[cell].push((id as u16, code)),
                }
            }
        }
        Some(st)
    }

    /// Fills `cell` with `v` and wakes its watchers; on success returns the
    /// trail of cells whose watch lists grew.
    fn place(&self, st: &mut State, cell: usize, v: Elem, trail: &mut Vec<usize>) -> bool {
        st.p.dot[cell] = v;
        let mark = trail.len();
        let mut env = [0; 16];
        let woken = std::mem::take(&mut st.watch[cell]);
        let mut ok = true;
        for &item in &woken {
            match self.judge(&st.p, item, &mut env) {
                Verdict::Holds => {}
                Verdict::Fails => {
                    ok = false;
                    break;
                }
                Verdict::Blocked(next) => {
                    st.watch[next].push(item);
                    trail.push(next);
                }
            }
        }
        st.watch[cell] = woken;
        if !ok {
            self.unplace(st, cell, trail, mark);
        }
        ok
    }

    fn unplace(&self, st: &mut State, cell: usize, trail: &mut Vec<usize>, mark: usize) {
        while trail.len() > mark {
            let c = trail.pop().expect("non-empty");
            st.watch[c].pop();
        }
        st.p.dot[cell] = UNDEF;
    }

    fn candidates(&self, st: &State, cell: usize) -> impl Iterator<Item = Elem> + '_ {
        let col = cell % st.p.n;
        let mask = if self.permutation_columns { st.used[col] } else { 0 };
        (0..st.p.n as Elem).filter(move |v| mask & (1 << v) == 0)
    }

    /// Depth-first from fill position `k`; appends complete tables to `out`.
    fn dfs(&self, st: &mut State, k: usize, trail: &mut Vec<usize>, budget: &Budget, local: &mut u64, out: &mut Sink) {
        if !budget.charge(local) {
            return;
        }
        if k == self.cells.len() {
            match out {
                Sink::Count(c) => *c += 1,
                Sink::Collect(v) => {
                    if v.len() >= MODEL_LIMIT {
                        budget.blow();
                    }
                    v.push(st.p.dot.clone())
                }
            }
            return;
        }
        let cell = self.cells[k];
        let col = cell % st.p.n;
        let values: Vec<Elem> = self.candidates(st, cell).collect();
        for v in values {
            let mark = trail.len();
            if self.place(st, cell, v, trail) {
                st.used[col] |= 1 << v;
                self.dfs(st, k + 1, trail, budget, local, out);
                st.used[col] &= !(1 << v);
                self.unplace(st, cell, trail, mark);
            }
        }
    }

    /// All consistent states after the first `depth` cells, in order.
    fn prefixes(&self, root: State, depth: usize) -> Vec<State> {
        let mut frontier = vec![root];
        for &cell in &self.cells[..depth] {
            let col = cell % frontier.first().map_or(1, |s| s.p.n);
            let mut next = Vec::new();
            for st in &frontier {
                for v in self.candidates(st, cell) {
                    let mut s2 = st.clone();
                    let mut trail = Vec::new();
                    if self.place(&mut s2, cell, v, &mut trail) {
                        s2.used[col] |= 1 << v;
                        next.push(s2);
                    }
                }
            }
            frontier = next;
        }
        frontier
    }

    fn run(&self, root: Partial, collect: bool, exec: Exec, budget: &Budget) -> Result<Sink> {
        let n = root.n;
        let empty = || if collect { Sink::Collect(Vec::new()) } else { Sink::Count(0) };
        let Some(root) = self.root(root) else { return Ok(empty()) };
        let depth = self.cells.len().min(n + 1);
        let starts = self.prefixes(root, depth);
        let chunks = exec.map(&starts, |start| {
            let mut st = start.clone();
            let mut out = empty();
            let mut local = 0;
            self.dfs(&mut st, depth, &mut Vec::new(), budget, &mut local, &mut out);
            budget.settle(local);
            out
        });
        budget.check()?;
        Ok(chunks.into_iter().fold(empty(), |acc, s| match (acc, s) {
            (Sink::Count(a), Sink::Count(b)) => Sink::Count(a + b),
            (Sink::Collect(mut a), Sink::Collect(b)) => {
                a.extend(b);
                Sink::Collect(a)
            }
            _ => unreachable!("one sink kind per run"),
        }))
    }
}

fn column_major(n: usize) -> Vec<usize> {
    (0..n).flat_map(|c| (0..n).map(move |r| r * n + c)).collect()
}

fn ordered_checks(suite: &CompiledSuite) -> Vec<&CompiledIdentity> {
    let mut checks: Vec<&CompiledIdentity> = suite.guards.iter().chain(&suite.identities).collect();
    checks.sort_by_key(|c| c.arity);
    checks
}

/// Found models, or only their number.
enum Found {
    Models(Vec<Structure>),
    Count(u64),
}

fn search_one_op(suite: &CompiledSuite, n: usize, collect: bool, exec: Exec, budget: &Budget) -> Result<Found> {
    let searcher = Searcher { checks: ordered_checks(suite), cells: column_major(n), permutation_columns: true };
    let root = Partial { n, dot: vec![UNDEF; n * n], star: None };
    Ok(match searcher.run(root, collect, exec, budget)? {
        Sink::Count(c) => Found::Count(c),
        Sink::Collect(tables) => Found::Models(
            tables.into_iter().map(|t| Structure::One(OperationTable::new(n, t).expect("valid entries"))).collect(),
        ),
    })
}

fn search_two_op(suite: &CompiledSuite, n: usize, collect: bool, exec: Exec, budget: &Budget) -> Result<Found> {
    let Found::Models(quandles) = search_one_op(compiled_suite("quandle")?, n, true, exec, budget)? else {
        unreachable!("collected")
    };
    let (mut models, mut count) = (Vec::new(), 0);
    for q in quandles {
        let star = q.dot().clone();
        let ops = Tables::from_parts(&star, &star, Interpretation::TwoOp);
        // `*`-only guards are decided by the quandle alone
        if !suite.guards.iter().all(|g| g.holds(&ops)) {
            continue;
        }
        let searcher = Searcher { checks: ordered_checks(suite), cells: column_major(n), permutation_columns: false };
        let star_div = star.preimage_division();
        let root = Partial { n, dot: vec![UNDEF; n * n], star: Some((star.raw().to_vec(), star_div.raw().to_vec())) };
        match searcher.run(root, collect, exec, budget)? {
            Sink::Count(c) => count += c,
            Sink::Collect(tables) => {
                for dot in tables {
                    models.push(Structure::Two(TwoOpStructure::new(OperationTable::new(n, dot)?, star.clone())?));
                }
                if models.len() > MODEL_LIMIT {
                    budget.blow();
                    budget.check()?;
                }
            }
        }
    }
    Ok(if collect { Found::Models(models) } else { Found::Count(count) })
}
