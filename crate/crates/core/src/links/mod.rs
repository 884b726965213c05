//! Singular link diagrams: PD codes, colorings, resolutions and presentations.

pub mod braid;
mod coloring;
mod diagram;
mod present;

pub use coloring::{
    brute_force_count, count_colorings, count_colorings_with, count_with_rules, enumerate_colorings, ColorOptions,
    Coloring, Mode, Rules,
};
pub use diagram::{parse_pd, resolve, Orientation, SingularDiagram, Vertex, VertexKind};
pub use present::{present, Presentation};
