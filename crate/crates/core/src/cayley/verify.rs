use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use super::noise::{affine_product, independent_rows};
use super::op::CayleyOp;
use crate::error::Result;
use crate::fourier::{coset_reps, omega_pow};
use crate::gf3poly::{exact_independence, pow3, FnTable, Gf3};

/// `lambda_r(alpha) = (-1/2)^|alpha|`, the eigenvalue of the full-space operator.
pub fn lambda_full(alpha: &FnTable) -> f64 {
    (-0.5f64).powi(alpha.support() as i32)
}

/// `E chi_alpha(a (p^2 + 1))` when `p` is uniform at each point of the support
/// of `alpha` independently: `Re prod_x g(alpha(x))` with
/// `g(1) = (omega^2 - 1)/3`, `g(2) = (omega - 1)/3`.
pub fn lambda_independent(alpha: &FnTable) -> f64 {
    let g1 = (omega_pow(2) - 1.0) / 3.0;
    let g2 = (omega_pow(1) - 1.0) / 3.0;
    alpha
        .values()
        .iter()
        .filter(|v| !v.is_zero())
        .fold(Complex64::new(1.0, 0.0), |acc, v| {
            acc * if *v == Gf3::ONE { g1 } else { g2 }
        })
        .re
}

#[derive(Clone, Debug, Serialize)]
pub struct EigvalTRow {
    pub coset_id: usize,
    pub support: usize,
    pub lambda_rd: f64,
    pub lambda_r: f64,
    /// Closed form under bounded independence; `None` past the independence range.
    pub independent_form: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigvalTReport {
    pub r: usize,
    pub d: usize,
    /// Supports up to this value satisfy `|alpha| <= 3^(d/2)`.
    pub small_support_limit: usize,
    pub rows: Vec<EigvalTRow>,
    /// `|lambda_rd| = |lambda_r|` on every small-support representative.
    pub equality_holds: bool,
    /// Same check restricted to `|alpha| <= 1`.
    pub equality_holds_weight_one: bool,
    /// `lambda_rd` equals the bounded-independence closed form wherever it applies.
    pub independent_form_holds: bool,
    /// `|lambda_rd| <= 3^(-|alpha|/2)` on every small-support representative.
    pub product_bound_holds: bool,
    /// Every eigenvalue is real.
    pub real: bool,
    /// Largest `|lambda_rd|` over representatives beyond the small-support range.
    pub max_large_support: f64,
    pub passed: bool,
}

/// Compares the eigenvalues of `T_{r,d}` with those of `T_r` on every representative.
#[allow(non_snake_case)]
pub fn verify_eigval_T(r: usize, d: usize, tol: f64) -> Result<EigvalTReport> {
    let op = CayleyOp::t_rd(r, d)?;
    let reps = coset_reps(r, 2 * d)?;
    // |alpha| <= 3^(d/2) with integer |alpha|
    let small_support_limit = (3f64.powf(d as f64 / 2.0) + 1e-9).floor() as usize;
    let indep = exact_independence(r, d);
    let mut rows = Vec::with_capacity(reps.len());
    let mut ok = (true, true, true, true, true);
    let mut max_large = 0.0f64;
    for rep in &reps.reps {
        let lam = op.eigenvalues()[rep.coset_id];
        ok.4 &= lam.im.abs() <= tol;
        let lam_r = lambda_full(&rep.beta);
        let form = (rep.support <= indep).then(|| lambda_independent(&rep.beta));
        if let Some(f) = form {
            ok.2 &= (lam.re - f).abs() <= tol;
        }
        if rep.support <= small_support_limit {
            let eq = (lam.norm() - lam_r.abs()).abs() <= tol;
            ok.0 &= eq;
            if rep.support <= 1 {
                ok.1 &= eq;
            }
            ok.3 &= lam.norm() <= 3f64.powf(-(rep.support as f64) / 2.0) + tol;
        } else {
            max_large = max_large.max(lam.norm());
        }
        rows.push(EigvalTRow {
            coset_id: rep.coset_id,
            support: rep.support,
            lambda_rd: lam.re,
            lambda_r: lam_r,
            independent_form: form,
        });
    }
    Ok(EigvalTReport {
        r,
        d,
        small_support_limit,
        rows,
        equality_holds: ok.0,
        equality_holds_weight_one: ok.1,
        independent_form_holds: ok.2,
        product_bound_holds: ok.3,
        real: ok.4,
        max_large_support: max_large,
        passed: ok.1 && ok.2 && ok.3 && ok.4,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EigvalSRow {
    pub coset_id: usize,
    pub support: usize,
    pub rho: f64,
    pub lower_bound: f64,
    pub p_acc: Ratio<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigvalSReport {
    pub r: usize,
    pub d: usize,
    pub rows: Vec<EigvalSRow>,
    /// `|rho| >= 1 - 2|alpha|/3^d` everywhere.
    pub lower_bound_holds: bool,
    /// `rho = (3/2) p_acc - 1/2` everywhere.
    pub acceptance_formula_holds: bool,
    pub passed: bool,
}

/// Checks the lower bound on the eigenvalues of `S_{r,d}` and the
/// acceptance-probability formula, against a direct count over `(l_1..l_d)`.
#[allow(non_snake_case)]
pub fn verify_eigval_S(r: usize, d: usize, tol: f64) -> Result<EigvalSReport> {
    let op = CayleyOp::s_rd(r, d)?;
    let reps = coset_reps(r, 2 * d)?;
    // tables of prod (l_i - 1)(l_i - 2) for every tuple, a = 1
    let mut products: Vec<FnTable> = Vec::new();
    for lin in independent_rows(d, r) {
        for code in 0..pow3(d) {
            let consts = crate::gf3poly::point_from_index(d, code);
            products.push(affine_product(r, &lin, &consts, Gf3::ONE));
        }
    }
    let n_tuples = products.len() as u64;
    let mut rows = Vec::with_capacity(reps.len());
    let (mut lb_ok, mut formula_ok) = (true, true);
    let scale = pow3(d) as f64;
    for rep in &reps.reps {
        let rho = op.eigenvalues()[rep.coset_id];
        let accepted = products
            .iter()
            .filter(|q| rep.beta.inner_product(q).expect("same r").is_zero())
            .count() as u64;
        let p_acc = Ratio::new(accepted, n_tuples);
        let formula = 1.5 * accepted as f64 / n_tuples as f64 - 0.5;
        let lower = 1.0 - 2.0 * rep.support as f64 / scale;
        lb_ok &= rho.norm() + tol >= lower;
        formula_ok &= (rho - Complex64::new(formula, 0.0)).norm() <= tol;
        rows.push(EigvalSRow {
            coset_id: rep.coset_id,
            support: rep.support,
            rho: rho.re,
            lower_bound: lower,
            p_acc,
        });
    }
    Ok(EigvalSReport {
        r,
        d,
        rows,
        lower_bound_holds: lb_ok,
        acceptance_formula_holds: formula_ok,
        passed: lb_ok && formula_ok,
    })
}
