//! Colorings of diagrams by (oriented) singquandles.
//!
//! Every 4-valent vertex is a function of its two incoming colors: with
//! `x = color(a)` and `y = color(b)`,
//!
//! | vertex | `color(c)` | `color(d)` |
//! |---|---|---|
//! | `X+` | `x*y` | `y` |
//! | `X-` | `x/*y` | `y` |
//! | `S` (oriented) | `R2(x,y) = (x*y)·y` | `R1(x,y) = y·x` |
//! | `X` | `(x·y)·y` | `y` |
//! | `S` (unoriented) | `x·(y·x)` | `y·x` |

use super::diagram::{Orientation, SingularDiagram, VertexKind};
use crate::axioms::compiled_suite;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::structure::{Elem, OperationTable, Structure, TwoOpStructure};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Oriented,
    Unoriented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorOptions {
    /// Require the structure to pass `oriented-sq` / `sq` first.
    pub check_suite: bool,
    /// Count only colorings that use every element.
    pub surjective: bool,
    pub exec: Exec,
}

impl Default for ColorOptions {
    fn default() -> Self {
        ColorOptions { check_suite: true, surjective: false, exec: Exec::default() }
    }
}

/// Color of every arc, keyed by label; colors are 0-based.
pub type Coloring = BTreeMap<u32, usize>;

/// The vertex functions of a structure in one mode.
#[derive(Debug, Clone)]
pub struct Rules {
    n: usize,
    /// `(color(c), color(d))` indexed by `x * n + y`, per vertex kind.
    pos: Vec<(Elem, Elem)>,
    neg: Vec<(Elem, Elem)>,
    sing: Vec<(Elem, Elem)>,
    /// Operation tables whose right multiplications move colors along strands.
    moves: Vec<OperationTable>,
}

impl Rules {
    pub fn new(s: &Structure, mode: Mode, check_suite: bool) -> Result<Rules> {
        let n = s.order();
        let pairs = |f: &dyn Fn(usize, usize) -> (usize, usize)| -> Vec<(Elem, Elem)> {
            (0..n * n).map(|i| f(i / n, i % n)).map(|(c, d)| (c as Elem, d as Elem)).collect()
        };
        match mode {
            Mode::Oriented => {
                let two = match s {
                    Structure::Two(t) => t.clone(),
                    Structure::One(t) => TwoOpStructure::from_singquandle(t),
                };
                if check_suite {
                    require(&Structure::Two(two.clone()), "oriented-sq")?;
                }
                let (dot, star) = (two.dot(), two.star());
                let star_div = star.preimage_division();
                Ok(Rules {
                    n,
                    pos: pairs(&|x, y| (star.get(x, y), y)),
                    neg: pairs(&|x, y| (star_div.get(x, y), y)),
                    sing: pairs(&|x, y| (dot.get(star.get(x, y), y), dot.get(y, x))),
                    moves: vec![dot.clone(), star.clone()],
                })
            }
            Mode::Unoriented => {
                let Structure::One(dot) = s else {
                    return Err(Error::ModeMismatch("unoriented colorings need a one-operation singquandle".into()));
                };
                if check_suite {
                    require(s, "sq")?;
                }
                let unsigned = pairs(&|x, y| (dot.get(dot.get(x, y), y), y));
                Ok(Rules {
                    n,
                    pos: unsigned.clone(),
                    neg: unsigned,
                    sing: pairs(&|x, y| (dot.get(x, dot.get(y, x)), dot.get(y, x))),
                    moves: vec![dot.clone()],
                })
            }
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn table(&self, kind: VertexKind) -> &[(Elem, Elem)] {
        match kind {
            VertexKind::Pos | VertexKind::Unsigned => &self.pos,
            VertexKind::Neg => &self.neg,
            VertexKind::Sing => &self.sing,
            VertexKind::Free => unreachable!("free loops carry no rule"),
        }
    }

    /// Elements reachable from each other by moving along strands: orbits
    /// under the right multiplications of every operation.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        for t in &self.moves {
            for x in 0..n {
                for y in 0..n {
                    let (a, b) = (root(&mut parent, x), root(&mut parent, t.get(x, y)));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            groups.entry(root(&mut parent, x)).or_default().push(x);
        }
        groups.into_values().collect()
    }
}

fn root(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn require(s: &Structure, suite: &str) -> Result<()> {
    let report = compiled_suite(suite)?.check(s)?;
    if report.passes() {
        Ok(())
    } else {
        Err(Error::SuiteFailure { suite: suite.to_string(), violations: report.violations.len() })
    }
}

fn check_mode(d: &SingularDiagram, mode: Mode) -> Result<()> {
    match (mode, d.orientation()) {
        (Mode::Oriented, Orientation::Unoriented) => {
            Err(Error::ModeMismatch("diagram uses unoriented crossings".into()))
        }
        (Mode::Unoriented, Orientation::Oriented) => Err(Error::ModeMismatch("diagram uses signed crossings".into())),
        (Mode::Oriented, _) if !d.is_directed() => {
            Err(Error::ModeMismatch("diagram arcs are not consistently directed".into()))
        }
        _ => Ok(()),
    }
}

/// A crossing rule table and the vertex's four arcs.
type CompiledVertex<'a> = (&'a [(Elem, Elem)], [usize; 4]);

/// The diagram compiled against a rule set: arcs renumbered `0..m`.
struct Problem<'a> {
    n: usize,
    labels: Vec<u32>,
    /// One per 4-valent vertex.
    vertices: Vec<CompiledVertex<'a>>,
    /// Vertices touching each arc.
    touching: Vec<Vec<usize>>,
}

const FREE: Elem = Elem::MAX;

impl<'a> Problem<'a> {
    fn new(d: &SingularDiagram, rules: &'a Rules) -> Problem<'a> {
        let labels = d.arcs();
        let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut vertices = Vec::new();
        let mut touching = vec![Vec::new(); labels.len()];
        for v in d.vertices().iter().filter(|v| v.kind != VertexKind::Free) {
            let slots = [0, 1, 2, 3].map(|i| index[&v.arcs[i]]);
            for &s in &slots {
                if !touching[s].contains(&vertices.len()) {
                    touching[s].push(vertices.len());
                }
            }
            vertices.push((rules.table(v.kind), slots));
        }
        Problem { n: rules.n, labels, vertices, touching }
    }

    /// Propagates forced colors from the arcs in `queue`; false on conflict.
    /// Newly colored arcs are appended to `trail`.
    fn propagate(&self, colors: &mut [Elem], mut queue: Vec<usize>, trail: &mut Vec<usize>) -> bool {
        let n = self.n;
        while let Some(arc) = queue.pop() {
            for &vi in &self.touching[arc] {
                let (table, slots) = self.vertices[vi];
                let known = slots.map(|s| colors[s]);
                if known[0] != FREE && known[1] != FREE {
                    let (c, d) = table[known[0] as usize * n + known[1] as usize];
                    for (slot, v) in [(2, c), (3, d)] {
                        let s = slots[slot];
                        if colors[s] == FREE {
                            colors[s] = v;
                            trail.push(s);
                            queue.push(s);
                        } else if colors[s] != v {
                            return false;
                        }
                    }
                    continue;
                }
                // solve backwards when exactly one input pair fits
                let mut found: Option<(usize, usize)> = None;
                let mut several = false;
                for x in 0..n {
                    if known[0] != FREE && known[0] as usize != x {
                        continue;
                    }
                    for y in 0..n {
                        if known[1] != FREE && known[1] as usize != y {
                            continue;
                        }
                        let (c, d) = table[x * n + y];
                        let vals = [x as Elem, y as Elem, c, d];
                        if (0..4).all(|i| known[i] == FREE || known[i] == vals[i])
                            && (0..4).all(|i| (0..4).all(|j| slots[i] != slots[j] || vals[i] == vals[j]))
                        {
                            if found.is_some() {
                                several = true;
                                break;
                            }
                            found = Some((x, y));
                        }
                    }
                    if several {
                        break;
                    }
                }
                match (found, several) {
                    (None, _) => return false,
                    (Some((x, y)), false) => {
                        let (c, d) = table[x * n + y];
                        for (slot, v) in [(0, x as Elem), (1, y as Elem), (2, c), (3, d)] {
                            let s = slots[slot];
                            if colors[s] == FREE {
                                colors[s] = v;
                                trail.push(s);
                                queue.push(s);
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn satisfied(&self, colors: &[Elem]) -> bool {
        self.vertices.iter().all(|(table, s)| {
            let (c, d) = table[colors[s[0]] as usize * self.n + colors[s[1]] as usize];
            colors[s[2]] == c && colors[s[3]] == d
        })
    }

    fn surjective(&self, colors: &[Elem]) -> bool {
        let mut seen = vec![false; self.n];
        for &c in colors {
            seen[c as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Completes `colors` in every consistent way, calling `leaf` on each.
    fn search(&self, colors: &mut Vec<Elem>, leaf: &mut dyn FnMut(&[Elem])) {
        let Some(arc) = colors.iter().position(|&c| c == FREE) else {
            if self.satisfied(colors) {
                leaf(colors);
            }
            return;
        };
        for v in 0..self.n as Elem {
            let mut trail = vec![arc];
            colors[arc] = v;
            if self.propagate(colors, vec![arc], &mut trail) {
                self.search(colors, leaf);
            }
            for s in trail {
                colors[s] = FREE;
            }
        }
    }

    /// Roots for splitting the search: the colorings of the first branching arc.
    fn roots(&self, fixed: &[(usize, Elem)]) -> Vec<Vec<Elem>> {
        let mut colors = vec![FREE; self.labels.len()];
        let mut trail = Vec::new();
        for &(arc, v) in fixed {
            if colors[arc] != FREE && colors[arc] != v {
                return vec![];
            }
            colors[arc] = v;
        }
        if !self.propagate(&mut colors, fixed.iter().map(|f| f.0).collect(), &mut trail) {
            return vec![];
        }
        let Some(arc) = colors.iter().position(|&c| c == FREE) else { return vec![colors] };
        (0..self.n as Elem)
            .filter_map(|v| {
                let mut c = colors.clone();
                c[arc] = v;
                self.propagate(&mut c, vec![arc], &mut Vec::new()).then_some(c)
            })
            .collect()
    }

    fn count(&self, fixed: &[(usize, Elem)], surjective: bool, exec: Exec) -> u64 {
        let roots = self.roots(fixed);
        exec.map(&roots, |root| {
            let mut colors = root.clone();
            let mut total = 0u64;
            self.search(&mut colors, &mut |c| {
                if !surjective || self.surjective(c) {
                    total += 1;
                }
            });
            total
        })
        .into_iter()
        .sum()
    }

    fn to_coloring(&self, colors: &[Elem]) -> Coloring {
        self.labels.iter().zip(colors).map(|(&l, &c)| (l, c as usize)).collect()
    }
}

/// Number of colorings (all morphisms unless `surjective`).
pub fn count_colorings(d: &SingularDiagram, s: &Structure, mode: Mode) -> Result<u64> {
    count_colorings_with(d, s, mode, &ColorOptions::default())
}

pub fn count_colorings_with(d: &SingularDiagram, s: &Structure, mode: Mode, opts: &ColorOptions) -> Result<u64> {
    check_mode(d, mode)?;
    let rules = Rules::new(s, mode, opts.check_suite)?;
    Ok(count_with_rules(d, &rules, &[], opts.surjective, opts.exec))
}

/// Counts the colorings extending the given (label, 0-based color) pairs.
pub fn count_with_rules(
    d: &SingularDiagram,
    rules: &Rules,
    fixed: &[(u32, usize)],
    surjective: bool,
    exec: Exec,
) -> u64 {
    let p = Problem::new(d, rules);
    let Some(fixed) = resolve_labels(&p, fixed) else { return 0 };
    p.count(&fixed, surjective, exec)
}

fn resolve_labels(p: &Problem, fixed: &[(u32, usize)]) -> Option<Vec<(usize, Elem)>> {
    fixed.iter().map(|&(l, c)| p.labels.binary_search(&l).ok().filter(|_| c < p.n).map(|i| (i, c as Elem))).collect()
}

/// Every coloring, in lexicographic order of colors by increasing label.
pub fn enumerate_colorings(
    d: &SingularDiagram,
    s: &Structure,
    mode: Mode,
    opts: &ColorOptions,
) -> Result<Vec<Coloring>> {
    check_mode(d, mode)?;
    let rules = Rules::new(s, mode, opts.check_suite)?;
    let p = Problem::new(d, &rules);
    let roots = p.roots(&[]);
    let mut all: Vec<Vec<Elem>> = opts
        .exec
        .map(&roots, |root| {
            let mut colors = root.clone();
            let mut out = Vec::new();
            p.search(&mut colors, &mut |c| {
                if !opts.surjective || p.surjective(c) {
                    out.push(c.to_vec());
                }
            });
            out
        })
        .into_iter()
        .flatten()
        .collect();
    all.sort();
    Ok(all.iter().map(|c| p.to_coloring(c)).collect())
}

/// Reference counter: tries all `n^arcs` assignments.
pub fn brute_force_count(d: &SingularDiagram, rules: &Rules, surjective: bool) -> u64 {
    let p = Problem::new(d, rules);
    let m = p.labels.len();
    let n = p.n as u64;
    let mut total = 0;
    let mut colors = vec![0 as Elem; m];
    for mut code in 0..n.pow(m as u32) {
        for c in colors.iter_mut().rev() {
            *c = (code % n) as Elem;
            code /= n;
        }
        if p.satisfied(&colors) && (!surjective || p.surjective(&colors)) {
            total += 1;
        }
    }
    total
}
