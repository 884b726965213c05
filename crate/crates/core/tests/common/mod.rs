//! Independent oracles shared by the integration tests. Nothing here calls
//! the search or propagation code it is used to check.
#![allow(dead_code)]

use itertools::Itertools;
use singq_core::links::{SingularDiagram, VertexKind};
use singq_core::{OperationTable, Structure, TwoOpStructure};

/// Every binary operation table of order `n`, in lexicographic order.
pub fn all_tables(n: usize) -> impl Iterator<Item = OperationTable> {
    let cells = n * n;
    (0..(n as u64).pow(cells as u32)).map(move |mut k| {
        let mut e = vec![0usize; cells];
        for c in (0..cells).rev() {
            e[c] = (k % n as u64) as usize;
            k /= n as u64;
        }
        OperationTable::from_fn(n, |x, y| e[x * n + y]).unwrap()
    })
}

/// Every right quasigroup of order `n`: each column a permutation.
pub fn all_rqs(n: usize) -> Vec<OperationTable> {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    (0..n)
        .map(|_| perms.iter())
        .multi_cartesian_product()
        .map(|cols| OperationTable::from_fn(n, |x, y| cols[y][x]).unwrap())
        .collect()
}

pub fn div(t: &OperationTable) -> OperationTable {
    let n = t.order();
    OperationTable::from_fn(n, |x, y| (0..n).find(|&z| t.get(z, y) == x).unwrap()).unwrap()
}

pub fn holds2(n: usize, f: impl Fn(usize, usize) -> bool) -> bool {
    (0..n).cartesian_product(0..n).all(|(x, y)| f(x, y))
}

/// Colorings counted by trying every assignment of colors to arcs.
///
/// `star` must be given in oriented mode. Crossing rules, for arcs
/// `a b c d` of a vertex:
/// * `X+`: `c = a*b`, `d = b`; `X-`: `c = a/*b`, `d = b`;
/// * oriented `S`: `c = (a*b)·b`, `d = b·a`;
/// * `X`: `c = (ab)b`, `d = b`; unoriented `S`: `c = a(ba)`, `d = ba`.
pub fn oracle_colorings(d: &SingularDiagram, dot: &OperationTable, star: Option<&OperationTable>) -> u64 {
    let n = dot.order();
    let arcs = d.arcs();
    let pos = |l: u32| arcs.binary_search(&l).unwrap();
    let star_div = star.map(div);
    let mut count = 0;
    let mut col = vec![0usize; arcs.len()];
    loop {
        let ok = d.vertices().iter().all(|v| {
            let c = |i: usize| col[pos(v.arcs[i])];
            let want = match v.kind {
                VertexKind::Free => return true,
                VertexKind::Pos => (star.unwrap().get(c(0), c(1)), c(1)),
                VertexKind::Neg => (star_div.as_ref().unwrap().get(c(0), c(1)), c(1)),
                VertexKind::Unsigned => (dot.get(dot.get(c(0), c(1)), c(1)), c(1)),
                VertexKind::Sing => match star {
                    Some(s) => (dot.get(s.get(c(0), c(1)), c(1)), dot.get(c(1), c(0))),
                    None => (dot.get(c(0), dot.get(c(1), c(0))), dot.get(c(1), c(0))),
                },
            };
            want == (c(2), c(3))
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == col.len() {
                return count;
            }
            col[i] += 1;
            if col[i] < n {
                break;
            }
            col[i] = 0;
            i += 1;
        }
    }
}

/// `*` = `(xy)y`, the quandle carried by a one-operation singquandle.
pub fn promote(dot: &OperationTable) -> Structure {
    let n = dot.order();
    let star = OperationTable::from_fn(n, |x, y| dot.get(dot.get(x, y), y)).unwrap();
    Structure::Two(TwoOpStructure::new(dot.clone(), star).unwrap())
}

/// Dihedral quandle `x*y = 2y − x mod n`.
pub fn dihedral(n: usize) -> OperationTable {
    OperationTable::from_fn(n, |x, y| (2 * y + n - x) % n).unwrap()
}
