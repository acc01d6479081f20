//! The derandomized graph on `P(r, 2d)` and the Fourier facts about its
//! independent sets.
//!
//! Vertices are elements of `P(r, 2d)` and `f ~ f + a(p^2 + 1)`. The noise
//! never hits 0 because 2 is not a square in F3, so there are no self-loops,
//! and shifting by the constants 1 and 2 splits the vertices into triangles.

mod analysis;
mod graph;
mod search;

pub use analysis::{
    fourier_concentration, independence_identity, self_edge_mass, triangle_partition_check,
    ConcentrationReport, IdentityReport, TriangleReport,
};
pub use graph::{DerandGraph, NoiseEntry, NoiseJson, VertexSubset};
pub use search::{exhaustive_mis, greedy_in_order, greedy_independent_set, MIS_DIM_LIMIT};
