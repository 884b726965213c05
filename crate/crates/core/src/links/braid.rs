//! Closed singular braids as PD diagrams, and pairs of braid words whose
//! closures differ by one Reidemeister-type move.
//!
//! Strands run upward. `σ_i` passes the left strand under the right one,
//! `τ_i` is a singular crossing of strands `i` and `i+1`.

use super::coloring::Mode;
use super::diagram::{SingularDiagram, Vertex, VertexKind};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    Sigma(usize),
    SigmaInv(usize),
    Tau(usize),
}

use Letter::{Sigma as S, SigmaInv as Si, Tau as T};

/// The closure of `word` on `strands` strands. Each letter with left-in arc
/// `a`, right-in `b`, left-out `l` and right-out `r` becomes
///
/// * `σ_i`: `X+ a b r l`, `σ_i⁻¹`: `X- b a l r`, `τ_i`: `S a b r l` (oriented);
/// * `σ_i`: `X a b r l`, `σ_i⁻¹`: `X b a l r`, `τ_i`: `S a b r l` (unoriented).
///
/// Untouched strands close up into free loops.
pub fn closure(strands: usize, word: &[Letter], mode: Mode) -> Result<SingularDiagram> {
    let mut cur: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut vertices = Vec::new();
    for (k, &letter) in word.iter().enumerate() {
        let i = match letter {
            S(i) | Si(i) | T(i) => i,
        };
        if i == 0 || i >= strands {
            return Err(Error::Parse {
                line: 1,
                column: k + 1,
                message: format!("generator index {i} outside 1..{}", strands - 1),
            });
        }
        let (a, b, l, r) = (cur[i - 1], cur[i], next, next + 1);
        next += 2;
        let regular =
            if mode == Mode::Oriented { [VertexKind::Pos, VertexKind::Neg] } else { [VertexKind::Unsigned; 2] };
        vertices.push(match letter {
            S(_) => Vertex::new(regular[0], vec![a, b, r, l]),
            Si(_) => Vertex::new(regular[1], vec![b, a, l, r]),
            T(_) => Vertex::new(VertexKind::Sing, vec![a, b, r, l]),
        });
        cur[i - 1] = l;
        cur[i] = r;
    }
    let rename: BTreeMap<u32, u32> = cur.iter().enumerate().map(|(j, &c)| (c, j as u32 + 1)).collect();
    for v in &mut vertices {
        for a in &mut v.arcs {
            if let Some(&r) = rename.get(a) {
                *a = r;
            }
        }
    }
    for (j, &c) in cur.iter().enumerate() {
        if c == j as u32 + 1 {
            vertices.push(Vertex::new(VertexKind::Free, vec![c]));
        }
    }
    SingularDiagram::new(compact(vertices))
}

/// Relabels arcs `1..m` in order of first appearance.
fn compact(mut vertices: Vec<Vertex>) -> Vec<Vertex> {
    let mut map: BTreeMap<u32, u32> = BTreeMap::new();
    for v in &mut vertices {
        for a in &mut v.arcs {
            let len = map.len() as u32;
            *a = *map.entry(*a).or_insert(len + 1);
        }
    }
    vertices
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovePair {
    pub name: &'static str,
    /// Whether the pair involves a singular crossing in the move itself.
    pub singular: bool,
    pub left: (usize, Vec<Letter>),
    pub right: (usize, Vec<Letter>),
}

impl MovePair {
    pub fn diagrams(&self, mode: Mode) -> Result<(SingularDiagram, SingularDiagram)> {
        Ok((closure(self.left.0, &self.left.1, mode)?, closure(self.right.0, &self.right.1, mode)?))
    }
}

fn pair(name: &'static str, singular: bool, left: (usize, &[Letter]), right: (usize, &[Letter])) -> MovePair {
    MovePair { name, singular, left: (left.0, left.1.to_vec()), right: (right.0, right.1.to_vec()) }
}

/// Diagram pairs related by a single move (up to planar isotopy).
pub fn move_pairs() -> Vec<MovePair> {
    vec![
        pair("R1 positive kink", false, (1, &[]), (2, &[S(1)])),
        pair("R1 negative kink", false, (1, &[]), (2, &[Si(1)])),
        pair("R1 on a torus link", false, (2, &[S(1), S(1), S(1)]), (3, &[S(1), S(1), S(1), S(2)])),
        pair("R2", false, (3, &[S(1), S(1)]), (3, &[S(1), S(2), Si(2), S(1)])),
        pair("R2 reversed", false, (2, &[S(1), S(1), S(1)]), (2, &[S(1), Si(1), S(1), S(1), S(1)])),
        pair("R3", false, (3, &[S(1), S(2), S(1), S(2)]), (3, &[S(2), S(1), S(2), S(2)])),
        pair("R3 negative", false, (3, &[Si(1), Si(2), Si(1), S(2)]), (3, &[Si(2), Si(1), Si(2), S(2)])),
        pair("R3 mixed", false, (3, &[S(1), S(2), Si(1), S(2)]), (3, &[Si(2), S(1), S(2), S(2)])),
        pair("R1 in a singular knot", true, (2, &[T(1), S(1), S(1)]), (3, &[T(1), S(1), S(1), Si(2)])),
        pair("singular commutes with positive", true, (2, &[T(1), S(1), S(1)]), (2, &[S(1), T(1), S(1)])),
        pair("singular commutes with negative", true, (3, &[Si(1), T(1), S(2)]), (3, &[T(1), Si(1), S(2)])),
        pair("singular passes under", true, (3, &[S(1), S(2), T(1), S(2)]), (3, &[T(2), S(1), S(2), S(2)])),
        pair("singular passes over", true, (3, &[T(1), S(2), S(1), S(2)]), (3, &[S(2), S(1), T(2), S(2)])),
        pair(
            "far singular crossings commute",
            true,
            (4, &[T(1), T(3), S(2), S(1), S(3)]),
            (4, &[T(3), T(1), S(2), S(1), S(3)]),
        ),
        pair("R2 around a singular crossing", true, (3, &[S(1), T(2), S(2), Si(1)]), (3, &[T(2), S(2)])),
    ]
}
