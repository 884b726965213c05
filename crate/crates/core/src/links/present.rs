//! Finite presentations of the fundamental (sing)quandle of a diagram.

use super::coloring::Mode;
use super::diagram::{SingularDiagram, VertexKind};
use crate::axioms::eval::{CompiledIdentity, Interpretation, Tables};
use crate::axioms::{Identity, Symbol, Term};
use crate::error::Result;
use crate::structure::{Elem, Structure, TwoOpStructure};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Generators are arcs, with the two sides of every over-passing strand of a
/// regular crossing identified; each vertex contributes its crossing
/// relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    #[serde(serialize_with = "as_strings")]
    pub relations: Vec<Identity>,
    /// Generator index of every arc label.
    pub arc_generator: BTreeMap<u32, usize>,
}

fn as_strings<S: serde::Serializer>(rels: &[Identity], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rels.iter().map(|r| r.to_string()))
}

pub fn present(d: &SingularDiagram) -> Presentation {
    let arcs = d.arcs();
    let index: BTreeMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for v in d.vertices() {
        if matches!(v.kind, VertexKind::Pos | VertexKind::Neg | VertexKind::Unsigned) {
            let (a, b) = (find(&mut parent, index[&v.arcs[1]]), find(&mut parent, index[&v.arcs[3]]));
            parent[a.max(b)] = a.min(b);
        }
    }
    // roots are least indices, hence least labels
    let mut gen_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut generators = Vec::new();
    let mut arc_generator = BTreeMap::new();
    for (i, &a) in arcs.iter().enumerate() {
        let r = find(&mut parent, i);
        let g = *gen_of_root.entry(r).or_insert_with(|| {
            generators.push(format!("x{}", arcs[r]));
            generators.len() - 1
        });
        arc_generator.insert(a, g);
    }
    let var = |label: u32| Term::Var(arc_generator[&label]);
    let mut relations = Vec::new();
    for (k, v) in d.vertices().iter().enumerate() {
        let a = &v.arcs;
        let name = |suffix: &str| format!("v{}{suffix}", k + 1);
        let mut rel = |n: String, lhs: Term, rhs: Term| relations.push(Identity::new(n, lhs, rhs, generators.clone()));
        match v.kind {
            VertexKind::Pos | VertexKind::Unsigned => {
                rel(name(""), var(a[2]), Term::apply(Symbol::Star, var(a[0]), var(a[1])))
            }
            VertexKind::Neg => rel(name(""), var(a[2]), Term::apply(Symbol::StarDiv, var(a[0]), var(a[1]))),
            VertexKind::Sing => {
                rel(name(".c"), var(a[2]), Term::apply(Symbol::R2, var(a[0]), var(a[1])));
                rel(name(".d"), var(a[3]), Term::apply(Symbol::R1, var(a[0]), var(a[1])));
            }
            VertexKind::Free => {}
        }
    }
    Presentation { generators, relations, arc_generator }
}

impl Presentation {
    /// Assignments of generators satisfying every relation, by exhaustion.
    pub fn count_solutions(&self, s: &Structure, mode: Mode) -> Result<u64> {
        let (s, interp) = match (mode, s) {
            (Mode::Oriented, Structure::One(t)) => {
                (Structure::Two(TwoOpStructure::from_singquandle(t)), Interpretation::TwoOp)
            }
            (Mode::Oriented, _) => (s.clone(), Interpretation::TwoOp),
            (Mode::Unoriented, _) => (s.clone(), Interpretation::OneOp),
        };
        let tables = Tables::new(&s);
        let rels: Vec<CompiledIdentity> = self.relations.iter().map(|r| CompiledIdentity::new(r, interp)).collect();
        let n = s.order() as u64;
        let g = self.generators.len();
        let mut env = vec![0 as Elem; g.max(1)];
        let mut total = 0;
        for mut code in 0..n.pow(g as u32) {
            for e in env[..g].iter_mut().rev() {
                *e = (code % n) as Elem;
                code /= n;
            }
            if rels.iter().all(|r| {
                let (l, r) = r.sides(&tables, &env);
                l == r
            }) {
                total += 1;
            }
        }
        Ok(total)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gen: {}", self.generators.join(","))?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::{count_colorings, parse_pd};
    use crate::structure::OperationTable;

    #[test]
    fn unknot() {
        let p = present(&parse_pd("O 1").unwrap());
        assert_eq!(p.to_string(), "gen: x1\n");
    }

    #[test]
    fn trefoil() {
        let p = present(&parse_pd("X+ 1 4 2 5\nX+ 3 6 4 1\nX+ 5 2 6 3\n").unwrap());
        assert_eq!(p.to_string(), "gen: x1,x2,x4\nx2 = x1 * x4\nx4 = x2 * x1\nx1 = x4 * x2\n");
    }

    #[test]
    fn singular_trefoil() {
        let d = parse_pd("S 1 4 2 5\nX+ 3 6 4 1\nX+ 5 2 6 3\n").unwrap();
        let p = present(&d);
        assert_eq!(p.to_string(), "gen: x1,x2,x4,x5\nx2 = R2(x1,x4)\nx5 = R1(x1,x4)\nx4 = x2 * x1\nx1 = x5 * x2\n");
        let dihedral = OperationTable::from_fn(3, |x, y| (2 * y + 3 - x) % 3).unwrap();
        let s = Structure::Two(TwoOpStructure::new(OperationTable::projection(3).unwrap(), dihedral).unwrap());
        assert_eq!(p.count_solutions(&s, Mode::Oriented).unwrap(), count_colorings(&d, &s, Mode::Oriented).unwrap());
    }
}
