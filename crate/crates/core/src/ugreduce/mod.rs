//! Unique Games instances with invertible linear constraints and their
//! reduction to coloring.
//!
//! Each `V` vertex gets a copy of `P(r, 2d)`, and `(v, f) ~ (w, g)` when some
//! `u` sees both and `g o pi_{u,w}^-1 - f o pi_{u,v}^-1 = a(p^2 + 1)`. A
//! satisfying labeling turns into the 3-coloring `(v, f) -> f(l(v))`, and an
//! independent set decodes back to a labeling through low-degree influences.

mod coloring;
mod decode;
mod instance;

pub use coloring::{
    completeness_color, CVertex, Coloring, ColoringInstance, CompletenessReport,
    EXPLICIT_VERTEX_LIMIT,
};
pub use decode::{soundness_decode, CloudSubset, DecodeReport, VertexDecode};
pub use instance::{
    compose_linear, compose_table, edge_satisfied, noisy_instance, planted_instance, point_map,
    random_instance, random_labeling, satisfied_fraction, Adjacency, GenParams, Labeling, UGEdge,
    UGInstance,
};
