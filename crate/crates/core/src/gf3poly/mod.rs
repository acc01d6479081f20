//! Arithmetic in F3 and in the polynomial spaces `P(r, d)`.

mod checks;
mod field;
mod matrix;
mod poly;
mod space;
mod table;

pub use checks::{
    dual_degree, dual_space, exact_independence, independence_guarantee, kwise_check, min_weight,
    random_poly, schwartz_zippel_min, verify_dual, DualReport, KwiseMode, KwiseReport,
    SchwartzZippelReport,
};
pub use field::{all_points, checked_pow3, point_from_index, point_index, pow3, Gf3};
pub use matrix::Mat;
pub use poly::{basis, Monomial, Poly};
pub use space::{PolySpace, ENUM_DIM_LIMIT};
pub use table::{inner_product, FnTable};

/// Evaluates `p` at `x`.
pub fn poly_eval(p: &Poly, x: &[Gf3]) -> crate::Result<Gf3> {
    p.eval(x)
}

pub fn poly_to_table(p: &Poly) -> FnTable {
    p.to_table()
}

pub fn table_to_poly(t: &FnTable) -> Poly {
    t.to_poly()
}

pub fn square_reduce(p: &Poly) -> Poly {
    p.square_reduce()
}
