//! Singular link diagrams in PD notation.
//!
//! One vertex per line:
//!
//! * `X+ a b c d` / `X- a b c d`: under-strand `a → c`, over-strand `b → d`;
//! * `X a b c d`: unoriented crossing, under-strand `a – c`, over `b – d`;
//! * `S a b c d`: singular crossing with strands `a → c` and `b → d`;
//! * `O a`: a crossingless circle.
//!
//! In oriented diagrams the first two slots of a crossing are incoming.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VertexKind {
    Pos,
    Neg,
    Unsigned,
    Sing,
    Free,
}

impl VertexKind {
    fn token(self) -> &'static str {
        match self {
            VertexKind::Pos => "X+",
            VertexKind::Neg => "X-",
            VertexKind::Unsigned => "X",
            VertexKind::Sing => "S",
            VertexKind::Free => "O",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Vertex {
    pub kind: VertexKind,
    pub arcs: Vec<u32>,
}

impl Vertex {
    pub fn new(kind: VertexKind, arcs: Vec<u32>) -> Self {
        Vertex { kind, arcs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Oriented,
    Unoriented,
    /// Only `S` and `O` vertices: usable in either mode.
    Unspecified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularDiagram {
    vertices: Vec<Vertex>,
    orientation: Orientation,
    /// Whether every arc runs from an outgoing to an incoming slot.
    directed: bool,
    components: usize,
}

impl SingularDiagram {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        let signed = vertices.iter().any(|v| matches!(v.kind, VertexKind::Pos | VertexKind::Neg));
        let unsigned = vertices.iter().any(|v| v.kind == VertexKind::Unsigned);
        let orientation = match (signed, unsigned) {
            (true, true) => return Err(Error::MixedOrientationSyntax),
            (true, false) => Orientation::Oriented,
            (false, true) => Orientation::Unoriented,
            (false, false) => Orientation::Unspecified,
        };
        // label -> (incoming slots, outgoing slots, free)
        let mut uses: BTreeMap<u32, (u32, u32, u32)> = BTreeMap::new();
        for v in &vertices {
            match v.kind {
                VertexKind::Free => {
                    uses.entry(v.arcs[0]).or_default().2 += 1;
                }
                _ => {
                    for (slot, &a) in v.arcs.iter().enumerate() {
                        let e = uses.entry(a).or_default();
                        if slot < 2 {
                            e.0 += 1;
                        } else {
                            e.1 += 1;
                        }
                    }
                }
            }
        }
        let mut directed = true;
        for (&label, &(i, o, f)) in &uses {
            match (i + o, f) {
                (0, 1) => {}
                (2, 0) => directed &= i == 1,
                (t, f) if t + f > 2 || f > 1 || (f == 1 && t > 0) => return Err(Error::DuplicateArcUse(label)),
                _ => return Err(Error::OpenStrand(label)),
            }
        }
        if orientation == Orientation::Oriented && !directed {
            let bad = uses.iter().find(|(_, &(i, o, f))| f == 0 && (i, o) != (1, 1)).map_or(0, |(&l, _)| l);
            return Err(Error::OpenStrand(bad));
        }
        let components = count_components(&vertices, &uses.keys().copied().collect::<Vec<_>>());
        Ok(SingularDiagram { vertices, orientation, directed, components })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Usable as an oriented diagram.
    pub fn is_directed(&self) -> bool {
        self.directed && self.orientation != Orientation::Unoriented
    }

    /// Number of link components μ.
    pub fn components(&self) -> usize {
        self.components
    }

    /// Arc labels in increasing order.
    pub fn arcs(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.vertices.iter().flat_map(|v| v.arcs.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn count(&self, kind: VertexKind) -> usize {
        self.vertices.iter().filter(|v| v.kind == kind).count()
    }

    /// Arc labels grouped by link component, each sorted, ordered by least label.
    pub fn component_arcs(&self) -> Vec<Vec<u32>> {
        let arcs = self.arcs();
        let (mut parent, _) = strand_union(&self.vertices, &arcs);
        let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (i, &a) in arcs.iter().enumerate() {
            groups.entry(find(&mut parent, i)).or_default().push(a);
        }
        let mut out: Vec<Vec<u32>> = groups.into_values().collect();
        out.sort();
        out
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn strand_union(vertices: &[Vertex], arcs: &[u32]) -> (Vec<usize>, BTreeMap<u32, usize>) {
    let index: BTreeMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    for v in vertices.iter().filter(|v| v.kind != VertexKind::Free) {
        for (s, t) in [(0, 2), (1, 3)] {
            let (a, b) = (find(&mut parent, index[&v.arcs[s]]), find(&mut parent, index[&v.arcs[t]]));
            parent[a.max(b)] = a.min(b);
        }
    }
    (parent, index)
}

fn count_components(vertices: &[Vertex], arcs: &[u32]) -> usize {
    let (mut parent, _) = strand_union(vertices, arcs);
    (0..arcs.len()).filter(|&i| find(&mut parent, i) == i).count()
}

impl fmt::Display for SingularDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            let labels: Vec<String> = v.arcs.iter().map(|a| a.to_string()).collect();
            writeln!(f, "{} {}", v.kind.token(), labels.join(" "))?;
        }
        Ok(())
    }
}

pub fn parse_pd(text: &str) -> Result<SingularDiagram> {
    let mut vertices = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = tokens_with_columns(line);
        let Some((col, head)) = tokens.next() else { continue };
        let bad = |column: usize, token: &str| Error::BadToken { line: ln + 1, column, token: token.to_string() };
        let (kind, arity) = match head {
            "X+" => (VertexKind::Pos, 4),
            "X-" => (VertexKind::Neg, 4),
            "X" => (VertexKind::Unsigned, 4),
            "S" => (VertexKind::Sing, 4),
            "O" => (VertexKind::Free, 1),
            other => return Err(bad(col, other)),
        };
        let mut arcs = Vec::with_capacity(arity);
        for (c, t) in tokens {
            match t.parse::<u32>() {
                Ok(a) if a > 0 && arcs.len() < arity => arcs.push(a),
                _ => return Err(bad(c, t)),
            }
        }
        if arcs.len() != arity {
            return Err(Error::Parse {
                line: ln + 1,
                column: line.trim_end().len() + 1,
                message: format!("`{head}` takes {arity} arc label(s)"),
            });
        }
        vertices.push(Vertex { kind, arcs });
    }
    SingularDiagram::new(vertices)
}

fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
}

/// Replaces every singular crossing by a regular one of the given sign
/// (`+1` or `-1`).
pub fn resolve(d: &SingularDiagram, sign: i8) -> Result<SingularDiagram> {
    if !d.is_directed() {
        return Err(Error::ModeMismatch("resolution needs an oriented diagram".into()));
    }
    let vertices = d
        .vertices
        .iter()
        .map(|v| match (v.kind, sign >= 0) {
            (VertexKind::Sing, true) => Vertex::new(VertexKind::Pos, v.arcs.clone()),
            (VertexKind::Sing, false) => {
                let a = &v.arcs;
                Vertex::new(VertexKind::Neg, vec![a[1], a[0], a[3], a[2]])
            }
            _ => v.clone(),
        })
        .collect();
    SingularDiagram::new(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TREFOIL: &str = "X+ 1 4 2 5\nX+ 3 6 4 1\nX+ 5 2 6 3\n";
    pub(crate) const SING_TREFOIL: &str = "S 1 4 2 5\nX+ 3 6 4 1\nX+ 5 2 6 3\n";

    #[test]
    fn unknot_and_trefoils() {
        let u = parse_pd("O 1").unwrap();
        assert_eq!((u.components(), u.vertices().len()), (1, 1));
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!((t.components(), t.count(VertexKind::Pos)), (1, 3));
        let s = parse_pd(SING_TREFOIL).unwrap();
        assert_eq!((s.components(), s.count(VertexKind::Sing), s.count(VertexKind::Pos)), (1, 1, 2));
        assert_eq!(s.orientation(), Orientation::Oriented);
    }

    #[test]
    fn resolutions() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(resolve(&t, 1).unwrap(), t);
        let s = parse_pd(SING_TREFOIL).unwrap();
        assert_eq!(resolve(&s, 1).unwrap(), t);
        let minus = resolve(&s, -1).unwrap();
        assert_eq!(minus.vertices()[0], Vertex::new(VertexKind::Neg, vec![4, 1, 5, 2]));
        assert_eq!(minus.count(VertexKind::Sing), 0);
    }

    #[test]
    fn hopf_link_has_two_components() {
        let h = parse_pd("X+ 1 3 2 4\nX+ 4 2 3 1\n").unwrap();
        assert_eq!(h.components(), 2);
        assert_eq!(h.component_arcs(), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_pd("X+ 1 1 1 2\nX+ 2 3 3 1"), Err(Error::DuplicateArcUse(1)));
        assert_eq!(parse_pd("X+ 1 2 3 4"), Err(Error::OpenStrand(1)));
        assert_eq!(parse_pd("X+ 1 2 1 2\nX 3 4 3 4"), Err(Error::MixedOrientationSyntax));
        assert_eq!(parse_pd("X+ 1 2 3 4\nX+ 2 1 4 3"), Err(Error::OpenStrand(1)));
        assert!(matches!(parse_pd("O 1\nY 2"), Err(Error::BadToken { line: 2, column: 1, .. })));
        assert!(matches!(parse_pd("X+ 1 2 x 4"), Err(Error::BadToken { line: 1, column: 8, .. })));
        assert!(matches!(parse_pd("S 1 2 2"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn unoriented_diagrams_need_no_direction() {
        let d = parse_pd("X 1 2 2 1\n").unwrap();
        assert_eq!(d.orientation(), Orientation::Unoriented);
        assert!(!d.is_directed());
        assert_eq!(d.components(), 1);
    }

    #[test]
    fn display_round_trips() {
        let s = parse_pd("# singular\nS 1 4 2 5\nX+ 3 6 4 1 # tail\nX+ 5 2 6 3\nO 7\n").unwrap();
        assert_eq!(parse_pd(&s.to_string()).unwrap(), s);
        assert_eq!(s.components(), 2);
    }
}
