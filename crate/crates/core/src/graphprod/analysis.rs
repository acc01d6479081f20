use num_rational::Ratio;
use serde::Serialize;

use super::graph::{DerandGraph, VertexSubset};
use crate::cayley::CayleyOp;
use crate::error::{Error, Result};
use crate::fourier::{coset_reps, fourier_transform, nearest_dictator, GroupFn, NearestDictator};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriangleReport {
    pub triangles: usize,
    /// `{f, f+1, f+2}` covers every vertex exactly once.
    pub partition: bool,
    /// Every pair inside every triple has positive weight.
    pub all_edges: bool,
    pub min_weight: Ratio<u64>,
    /// Certified upper bound on any independent set.
    pub bound: usize,
    pub passed: bool,
}

/// Checks that the constant shifts `{f, f+1, f+2}` partition the vertices into triangles.
pub fn triangle_partition_check(g: &DerandGraph) -> Result<TriangleReport> {
    let n = g.num_vertices();
    let s = g.space();
    // constants 1 and 2 have indices 1 and 2
    let mut seen = vec![false; n];
    let mut triangles = 0;
    let mut partition = true;
    let mut all_edges = true;
    let mut min_weight = Ratio::from_integer(1u64);
    for f in 0..n {
        if seen[f] {
            continue;
        }
        let tri = [f, s.add(f, 1), s.add(f, 2)];
        for &v in &tri {
            partition &= !seen[v];
            seen[v] = true;
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let w = g.edge_weight(tri[i], tri[j]);
            all_edges &= w > Ratio::from_integer(0);
            min_weight = min_weight.min(w);
        }
        triangles += 1;
    }
    partition &= seen.iter().all(|&b| b) && triangles * 3 == n;
    Ok(TriangleReport {
        triangles,
        partition,
        all_edges,
        min_weight,
        bound: triangles,
        passed: partition && all_edges,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub delta: f64,
    /// `sum_{alpha != 0} |A^_alpha|^2 Re E chi_alpha(a(p^2 + 1))`
    pub lhs: f64,
    /// `-delta^2`
    pub rhs: f64,
    pub gap: f64,
    /// `E X` for `Pr[T = alpha] = |A^_alpha|^2 / (delta - delta^2)`; `None` when that is undefined.
    pub ex: Option<f64>,
    /// `-delta / (1 - delta)`
    pub ex_expected: Option<f64>,
}

fn check_independent(g: &DerandGraph, a: &VertexSubset) -> Result<()> {
    if let Some((f, h)) = g.violation(a) {
        return Err(Error::NotIndependent(f.to_string(), h.to_string()));
    }
    Ok(())
}

fn indicator_fn(g: &DerandGraph, a: &VertexSubset) -> Result<GroupFn> {
    GroupFn::from_real(g.space(), &a.indicator())
}

/// The spectral identity satisfied by every independent set.
pub fn independence_identity(g: &DerandGraph, a: &VertexSubset) -> Result<IdentityReport> {
    check_independent(g, a)?;
    let op = CayleyOp::t_rd(g.r, g.d)?;
    let spec = fourier_transform(g.space(), &indicator_fn(g, a)?)?;
    let lhs: f64 = spec
        .coeffs
        .iter()
        .zip(op.eigenvalues())
        .skip(1)
        .map(|(c, lam)| c.norm_sqr() * lam.re)
        .sum();
    let delta = a.len() as f64 / a.universe() as f64;
    let rhs = -delta * delta;
    let var = delta - delta * delta;
    let (ex, ex_expected) = if var > 0.0 {
        (Some(lhs / var), Some(-delta / (1.0 - delta)))
    } else {
        (None, None)
    };
    Ok(IdentityReport {
        delta,
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
        ex,
        ex_expected,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub delta: f64,
    /// `1/3 - delta`
    pub eps: f64,
    /// `sum_{|alpha| > 1} |A^_alpha|^2`
    pub tail: f64,
    pub bound: f64,
    pub holds: bool,
    pub nearest: NearestDictator,
    /// `||A - B|| (delta - delta^2 - eps) / eps`, the constant that would make
    /// `||A - B|| = K eps / (delta - delta^2 - eps)` exact.
    pub fitted_k: Option<f64>,
}

/// Fourier mass above level 1 of an independent set, against `2 (1/3 - delta)`.
pub fn fourier_concentration(
    g: &DerandGraph,
    a: &VertexSubset,
    tol: f64,
) -> Result<ConcentrationReport> {
    check_independent(g, a)?;
    let f = indicator_fn(g, a)?;
    let spec = fourier_transform(g.space(), &f)?;
    let reps = coset_reps(g.r, 2 * g.d)?;
    let tail: f64 = spec
        .coeffs
        .iter()
        .enumerate()
        .filter(|(i, _)| reps.support(*i) > 1)
        .map(|(_, c)| c.norm_sqr())
        .sum();
    let delta = a.len() as f64 / a.universe() as f64;
    let eps = 1.0 / 3.0 - delta;
    let nearest = nearest_dictator(g.space(), &f)?;
    let denom = delta - delta * delta - eps;
    let fitted_k = (eps > 0.0 && denom > 0.0).then(|| nearest.distance * denom / eps);
    Ok(ConcentrationReport {
        delta,
        eps,
        tail,
        bound: 2.0 * eps,
        holds: tail <= 2.0 * eps + tol,
        nearest,
        fitted_k,
    })
}

/// `E_f A(f) A(f + eta)` averaged over the noise, computed pointwise; zero for independent sets.
pub fn self_edge_mass(g: &DerandGraph, a: &VertexSubset) -> Ratio<u64> {
    let mut num = 0u64;
    for f in a.iter() {
        for &(e, c) in &g.noise().support {
            if a.contains(g.space().add(f, e)) {
                num += c;
            }
        }
    }
    Ratio::new(num, g.denominator() * a.universe() as u64)
}
