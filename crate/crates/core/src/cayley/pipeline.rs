use num_complex::Complex64;
use serde::Serialize;

use super::op::{ApplyMode, CayleyOp};
use crate::error::{Error, Result};
use crate::fourier::{
    coset_reps, fourier_transform, influences, inverse_transform, GroupFn, SparseSpectrum,
};
use crate::gf3poly::{pow3, PolySpace};

/// Real part of the normalized inner product `E_f A(f) conj(B(f))`.
fn inner_re(a: &GroupFn, b: &GroupFn) -> Result<f64> {
    Ok(a.inner(b)?.re)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InterpolationReport {
    pub t: u32,
    pub original: f64,
    pub smoothed: f64,
    pub lhs: f64,
    pub bound: f64,
    pub holds: bool,
}

/// `|<A, T B> - <S^t A, T S^t B>|` against `2dt / 3^d`, all operators applied
/// by direct summation.
pub fn noise_interpolation_check(
    t_op: &CayleyOp,
    s_op: &CayleyOp,
    a: &GroupFn,
    b: &GroupFn,
    t: u32,
    tol: f64,
) -> Result<InterpolationReport> {
    let d = t_op.d;
    let original = inner_re(a, &t_op.apply(b, ApplyMode::Direct)?)?;
    let s = s_op.pow(t);
    let a1 = s.apply(a, ApplyMode::Direct)?;
    let b1 = s.apply(b, ApplyMode::Direct)?;
    let smoothed = inner_re(&a1, &t_op.apply(&b1, ApplyMode::Direct)?)?;
    let lhs = (original - smoothed).abs();
    let bound = 2.0 * d as f64 * t as f64 / pow3(d) as f64;
    Ok(InterpolationReport {
        t,
        original,
        smoothed,
        lhs,
        bound,
        holds: lhs <= bound + tol,
    })
}

/// `t = ceil(3^d ln(10/eps) / (2k))`.
pub fn pipeline_t(d: usize, eps: f64, k: usize) -> u32 {
    (pow3(d) as f64 * (10.0 / eps).ln() / (2.0 * k as f64)).ceil() as u32
}

/// `E xi(A)` with `xi(x) = max(-x, x - 1, 0)^2`: the squared distance from `[0, 1]`.
pub fn xi(x: f64) -> f64 {
    let m = (-x).max(x - 1.0).max(0.0);
    m * m
}

pub fn xi_mean(a: &GroupFn) -> f64 {
    a.values.iter().map(|v| xi(v.re)).sum::<f64>() / a.len() as f64
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineSide {
    pub mean_original: f64,
    pub mean_final: f64,
    /// `E xi(A_2)` on `P(r, 2d)` and `E xi(A_3)` on `F_r`.
    pub xi_smoothed: f64,
    pub xi_lifted: f64,
    /// `||A_1 - A_2||_2`
    pub truncation_error: f64,
    /// `max_x max_{k' <= k} Inf_x^{<=k'}(final) - Inf_x^{<=k'}(original)`
    pub max_influence_increase: f64,
    pub influences_original: Vec<f64>,
    pub influences_final: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub r: usize,
    pub d: usize,
    pub k: usize,
    pub eps: f64,
    pub t: u32,
    pub a: PipelineSide,
    pub b: PipelineSide,
    /// `<A, T_{r,d} B>`
    pub inner_original: f64,
    /// `<A_2, T_{r,d} B_2>` and `<A_3, T_r B_3>`, equal by bounded independence.
    pub inner_truncated: f64,
    pub inner_lifted: f64,
    /// `<calA, T_r calB>`
    pub inner_final: f64,
    pub mean_margin: f64,
    pub influence_margin: f64,
    pub inner_margin: f64,
    pub passed: bool,
}

/// Output of [`key_lemma_pipeline`]: the rounded functions on `F_r` and the report.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub a: GroupFn,
    pub b: GroupFn,
    pub report: PipelineReport,
}

/// Smooths `A, B` on `P(r, 2d)` with `S^t`, truncates to degree `k`, lifts to
/// `F_r`, takes real parts and clamps to `[0, 1]`, then checks the means,
/// the influences and the noisy inner product against the originals.
pub fn key_lemma_pipeline(a: &GroupFn, b: &GroupFn, eps: f64, k: usize) -> Result<PipelineOutput> {
    let (r, d2) = (a.r, a.d);
    if d2 % 2 != 0 || b.r != r || b.d != d2 {
        return Err(Error::InvalidParameter(
            "A and B must live on the same P(r, 2d)".into(),
        ));
    }
    let d = d2 / 2;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eps = {eps} must be in (0, 1)"
        )));
    }
    if k == 0 || (k * k) as f64 >= pow3(d) as f64 {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must satisfy 1 <= k < 3^(d/2)"
        )));
    }
    let full = PolySpace::full(r);
    full.require_enumerable()?;
    let group = PolySpace::new(r, d2)?;
    let t = pipeline_t(d, eps, k);
    let t_rd = CayleyOp::t_rd(r, d)?;
    let s_rd = CayleyOp::s_rd(r, d)?.pow(t);
    let t_full = CayleyOp::t_r(r)?;
    let reps = coset_reps(r, d2)?;

    let run = |f: &GroupFn| -> Result<(GroupFn, GroupFn, GroupFn, SparseSpectrum)> {
        let a1 = s_rd.apply(f, ApplyMode::Spectral)?;
        let low = fourier_transform(&group, &a1)?.filter(|c| reps.support(c) <= k);
        let a2 = inverse_transform(&group, &low)?.real_part();
        let lifted = SparseSpectrum::new(
            r,
            reps.reps
                .iter()
                .zip(&low.coeffs)
                .filter(|(_, c)| c.norm() > 0.0)
                .map(|(rep, c)| (rep.beta.clone(), *c))
                .collect(),
        )?;
        let a3 = lifted.to_group_fn(&full)?.real_part();
        Ok((a1, a2, a3, lifted))
    };
    let (a1, a2, a3, _) = run(a)?;
    let (b1, b2, b3, _) = run(b)?;
    let clamp = |f: &GroupFn| f.map(|v| Complex64::new(v.re.clamp(0.0, 1.0), 0.0));
    let (ca, cb) = (clamp(&a3), clamp(&b3));

    let side = |orig: &GroupFn,
                a1: &GroupFn,
                a2: &GroupFn,
                a3: &GroupFn,
                fin: &GroupFn|
     -> Result<PipelineSide> {
        let spec_o = fourier_transform(&group, orig)?;
        let spec_f = fourier_transform(&full, fin)?;
        let mut worst = f64::NEG_INFINITY;
        let mut inf_o = Vec::new();
        let mut inf_f = Vec::new();
        for kp in 1..=k {
            let io = influences(&group, &spec_o, kp)?;
            let iff = influences(&full, &spec_f, kp)?;
            for (x, y) in io.iter().zip(&iff) {
                worst = worst.max(y - x);
            }
            if kp == k {
                inf_o = io;
                inf_f = iff;
            }
        }
        Ok(PipelineSide {
            mean_original: orig.mean().re,
            mean_final: fin.mean().re,
            xi_smoothed: xi_mean(a2),
            xi_lifted: xi_mean(a3),
            truncation_error: a1.sub(a2)?.norm(2.0),
            max_influence_increase: worst,
            influences_original: inf_o,
            influences_final: inf_f,
        })
    };
    let sa = side(a, &a1, &a2, &a3, &ca)?;
    let sb = side(b, &b1, &b2, &b3, &cb)?;
    let inner_original = inner_re(a, &t_rd.apply(b, ApplyMode::Spectral)?)?;
    let inner_truncated = inner_re(&a2, &t_rd.apply(&b2, ApplyMode::Spectral)?)?;
    let inner_lifted = inner_re(&a3, &t_full.apply(&b3, ApplyMode::Spectral)?)?;
    let inner_final = inner_re(&ca, &t_full.apply(&cb, ApplyMode::Spectral)?)?;
    let mean_gap = (sa.mean_original - sa.mean_final)
        .abs()
        .max((sb.mean_original - sb.mean_final).abs());
    let inf_gap = sa.max_influence_increase.max(sb.max_influence_increase);
    let inner_gap = (inner_original - inner_final).abs();
    let report = PipelineReport {
        r,
        d,
        k,
        eps,
        t,
        inner_original,
        inner_truncated,
        inner_lifted,
        inner_final,
        mean_margin: eps - mean_gap,
        influence_margin: eps - inf_gap,
        inner_margin: eps - inner_gap,
        passed: mean_gap <= eps && inf_gap <= eps && inner_gap <= eps,
        a: sa,
        b: sb,
    };
    Ok(PipelineOutput {
        a: ca,
        b: cb,
        report,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct XiReport {
    pub norm: f64,
    /// `E_{f in F_r} xi(P(f))`
    pub full: f64,
    /// `E_{f in P(r, d)} xi(P(f))`
    pub subspace: f64,
    pub gap: f64,
}

/// Both xi-expectations of a real function given by its spectrum on `F_r`,
/// with no norm requirement.
pub fn xi_expectations(p: &SparseSpectrum, d: usize) -> Result<XiReport> {
    let full_space = PolySpace::full(p.r);
    let on_full = p.to_group_fn(&full_space)?;
    if !on_full.is_real(1e-9) {
        return Err(Error::InvalidParameter("P must be real-valued".into()));
    }
    let sub = p.to_group_fn(&PolySpace::new(p.r, d)?)?;
    let full = xi_mean(&on_full);
    let subspace = xi_mean(&sub);
    Ok(XiReport {
        norm: on_full.norm(2.0),
        full,
        subspace,
        gap: (full - subspace).abs(),
    })
}

/// [`xi_expectations`] for `||P||_2 <= 1`.
pub fn xi_gap_probe(p: &SparseSpectrum, d: usize) -> Result<XiReport> {
    let rep = xi_expectations(p, d)?;
    if rep.norm > 1.0 + 1e-9 {
        return Err(Error::NormViolation { norm: rep.norm });
    }
    Ok(rep)
}

/// A random real degree-1 function on `F_r` with `||P||_2 = 1`: a real
/// constant plus conjugate pairs on `e_x` and `2 e_x`.
pub fn random_unit_degree_one<R: rand::Rng + ?Sized>(r: usize, rng: &mut R) -> SparseSpectrum {
    use crate::gf3poly::{FnTable, Gf3};
    let n = pow3(r);
    let c0 = rng.gen_range(-1.0..1.0);
    let cs: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let mass = c0 * c0 + 2.0 * cs.iter().map(|c| c.norm_sqr()).sum::<f64>();
    let s = 1.0 / mass.sqrt();
    let mut terms = vec![(FnTable::zeros(r), Complex64::new(c0 * s, 0.0))];
    for (x, c) in cs.into_iter().enumerate() {
        terms.push((FnTable::indicator_at(r, x, Gf3::ONE), c * s));
        terms.push((FnTable::indicator_at(r, x, Gf3::TWO), c.conj() * s));
    }
    SparseSpectrum { r, terms }
}
