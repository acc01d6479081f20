use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{coset_reps, fourier_transform, GroupFn, SparseSpectrum};
use crate::gf3poly::{basis, FnTable, Gf3, PolySpace};

/// Coefficients below this magnitude are dropped when lifting.
const LIFT_EPS: f64 = 1e-14;

/// Reads the spectrum of `b` on `P(r, 2d)` as a function on all of `F_r`,
/// attaching each coefficient to its minimum-support representative.
pub fn lift(space: &PolySpace, b: &GroupFn) -> Result<SparseSpectrum> {
    let spec = fourier_transform(space, b)?;
    let reps = coset_reps(space.r(), space.d())?;
    let terms = reps
        .reps
        .iter()
        .zip(spec.coeffs)
        .filter(|(_, c)| c.norm() > LIFT_EPS)
        .map(|(rep, c)| (rep.beta.clone(), c))
        .collect();
    SparseSpectrum::new(space.r(), terms)
}

/// Is `sum_i alpha_i - beta_i` in `P(r, 2d)^perp = P(r, 2r - 2d - 1)`?
fn in_dual(t: &FnTable, d: usize) -> bool {
    let r = t.num_vars();
    if 2 * d >= 2 * r {
        return t.is_zero();
    }
    t.to_poly().degree().is_none_or(|deg| deg < 2 * r - 2 * d)
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub r: usize,
    pub d: usize,
    pub k: usize,
    pub max_support: usize,
    /// `2 k t <= 3^(d-1)`.
    pub hypothesis_holds: bool,
    /// `||B||_2k^2k` on `P(r, 2d)`: tuples whose signed sum lies in the dual.
    pub poly_side: f64,
    /// `||B'||_2k^2k` on `F_r`: tuples whose signed sum is zero.
    pub full_side: f64,
    pub gap: f64,
    pub tuples: u64,
    /// Tuples accepted by each constraint.
    pub poly_tuples: u64,
    pub full_tuples: u64,
}

impl MomentReport {
    pub fn poly_norm(&self) -> f64 {
        self.poly_side.max(0.0).powf(1.0 / (2 * self.k) as f64)
    }

    pub fn full_norm(&self) -> f64 {
        self.full_side.max(0.0).powf(1.0 / (2 * self.k) as f64)
    }
}

/// `2k`-th moments of `b` on `P(r, 2d)` and of its lift on `F_r`, both as
/// sums over tuples `(alpha_1, beta_1, ..., alpha_k, beta_k)` of terms.
pub fn moment_check(b: &SparseSpectrum, d: usize, k: usize) -> Result<MomentReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let r = b.r;
    if d > r {
        return Err(Error::DegreeOutOfRange {
            r,
            d: d as i64,
            min: 0,
            max: r as i64,
        });
    }
    let m = b.terms.len();
    let t = b.max_support();
    let hypothesis_holds = d >= 1 && 2 * k * t <= crate::gf3poly::pow3(d - 1);
    let tuples = (m as u64).pow(2 * k as u32);
    if tuples > 1 << 28 {
        return Err(Error::TooLarge {
            what: format!("{m}^{} term tuples", 2 * k),
            dim: m,
            limit: 1 << 28,
        });
    }
    // first index chooses alpha_1; the rest are enumerated per first index in parallel
    let parts: Vec<(Complex64, Complex64, u64, u64)> = (0..m.max(1))
        .into_par_iter()
        .filter(|_| m > 0)
        .map(|first| {
            let mut acc = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0, 0);
            let (beta, c) = &b.terms[first];
            let mut sum = beta.clone();
            recurse(b, d, k, 1, &mut sum, *c, &mut acc);
            acc
        })
        .collect();
    let (mut p, mut f, mut pt, mut ft) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0, 0);
    for (a, b2, c, e) in parts {
        p += a;
        f += b2;
        pt += c;
        ft += e;
    }
    Ok(MomentReport {
        r,
        d,
        k,
        max_support: t,
        hypothesis_holds,
        poly_side: p.re,
        full_side: f.re,
        gap: (p - f).norm(),
        tuples,
        poly_tuples: pt,
        full_tuples: ft,
    })
}

/// Position `pos` in `0..2k`: even positions are `alpha`s (added, coefficient),
/// odd positions `beta`s (subtracted, conjugate coefficient).
fn recurse(
    b: &SparseSpectrum,
    d: usize,
    k: usize,
    pos: usize,
    sum: &mut FnTable,
    prod: Complex64,
    acc: &mut (Complex64, Complex64, u64, u64),
) {
    if pos == 2 * k {
        if sum.is_zero() {
            acc.1 += prod;
            acc.3 += 1;
        }
        if in_dual(sum, d) {
            acc.0 += prod;
            acc.2 += 1;
        }
        return;
    }
    let sign = if pos.is_multiple_of(2) {
        Gf3::ONE
    } else {
        Gf3::TWO
    };
    for (beta, c) in &b.terms {
        let w = if pos.is_multiple_of(2) { *c } else { c.conj() };
        for x in beta.support_points() {
            sum.set(x, sum.get(x) + sign * beta.get(x));
        }
        recurse(b, d, k, pos + 1, sum, prod * w, acc);
        for x in beta.support_points() {
            sum.set(x, sum.get(x) - sign * beta.get(x));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonteCarloMoment {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// `E_{f in P(r, 2d)} |B(f)|^2k` by sampling uniform `f` and evaluating it at
/// the support points of the terms.
pub fn moment_monte_carlo(
    b: &SparseSpectrum,
    d: usize,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloMoment> {
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 samples".into()));
    }
    let r = b.r;
    let ev = b.evaluator();
    let mons = basis(r, (2 * d).min(2 * r))?;
    let evals: Vec<Vec<u8>> = ev
        .points()
        .iter()
        .map(|&x| {
            let pt = crate::gf3poly::point_from_index(r, x);
            mons.iter().map(|m| m.eval(&pt).value()).collect()
        })
        .collect();
    const CHUNK: usize = 4096;
    let n_chunks = samples.div_ceil(CHUNK);
    // chunk sums are combined in chunk order so the result does not depend on scheduling
    let partial: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let mut rng = crate::rng::stream(seed, ci as u64);
            let n = CHUNK.min(samples - ci * CHUNK);
            let mut coeffs = vec![0u8; mons.len()];
            let mut vals = vec![0u8; evals.len()];
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                for c in coeffs.iter_mut() {
                    *c = rng.gen_range(0..3);
                }
                for (v, row) in vals.iter_mut().zip(&evals) {
                    let acc: u32 = row.iter().zip(&coeffs).map(|(&a, &c)| (a * c) as u32).sum();
                    *v = (acc % 3) as u8;
                }
                let z = ev.eval(&vals).norm_sqr().powi(k as i32);
                s += z;
                s2 += z * z;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = partial
        .iter()
        .fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = s / n;
    let var = ((s2 / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok(MonteCarloMoment {
        mean,
        stderr: (var / n).sqrt(),
        samples,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypercontractivityReport {
    pub norm2: f64,
    pub norm4: f64,
    pub ratio: f64,
    /// `4t <= 3^(d-1)`, so both norms equal their full-space values.
    pub hypothesis_holds: bool,
}

/// `||A||_4 / ||A||_2` on `P(r, 2d)`, computed from the spectrum.
pub fn hypercontractivity_ratio(a: &SparseSpectrum, d: usize) -> Result<HypercontractivityReport> {
    let m2 = moment_check(a, d, 1)?;
    let m4 = moment_check(a, d, 2)?;
    let (norm2, norm4) = (m2.poly_norm(), m4.poly_norm());
    Ok(HypercontractivityReport {
        norm2,
        norm4,
        ratio: if norm2 > 0.0 { norm4 / norm2 } else { 0.0 },
        hypothesis_holds: m4.hypothesis_holds,
    })
}

/// A random sparse spectrum on `F_r` with `terms` distinct dual vectors of
/// support between 1 and `t`, and standard complex Gaussian-like coefficients.
pub fn random_sparse_spectrum<R: Rng + ?Sized>(
    r: usize,
    t: usize,
    terms: usize,
    rng: &mut R,
) -> SparseSpectrum {
    let n = crate::gf3poly::pow3(r);
    let mut out: Vec<(FnTable, Complex64)> = Vec::with_capacity(terms);
    while out.len() < terms {
        let w = rng.gen_range(1..=t.min(n));
        let mut beta = FnTable::zeros(r);
        while beta.support() < w {
            let x = rng.gen_range(0..n);
            beta.set(x, if rng.gen() { Gf3::ONE } else { Gf3::TWO });
        }
        if out.iter().any(|(b, _)| *b == beta) {
            continue;
        }
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        out.push((beta, c));
    }
    SparseSpectrum { r, terms: out }
}
