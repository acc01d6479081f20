use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::noise::{sample_noise, NoiseDist, OpKind};
use crate::error::{Error, Result};
use crate::fourier::{fourier_transform, inverse_transform, omega_pow, GroupFn};
use crate::gf3poly::{FnTable, PolySpace};

/// A Cayley operator `(M A)(f) = E_eta A(f + eta)`, raised to the power `t`.
#[derive(Clone, Debug)]
pub struct CayleyOp {
    pub kind: OpKind,
    pub r: usize,
    pub d: usize,
    pub t: u32,
    group: PolySpace,
    noise: NoiseDist,
    eigen: Vec<Complex64>,
}

/// How [`CayleyOp::apply`] computes its result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ApplyMode {
    /// Sums over the noise support `t` times.
    Direct,
    /// Multiplies the spectrum by the eigenvalues raised to `t`.
    Spectral,
}

impl CayleyOp {
    pub fn new(kind: OpKind, r: usize, d: usize) -> Result<CayleyOp> {
        let noise = NoiseDist::exact(kind, r, d)?;
        let group = noise.group_space()?;
        // eigenvalue = sum_eta mu(eta) omega^<y, eta> = N * conj(mu^(y))
        let mu = GroupFn::from_real(&group, &noise.weights(group.len()))?;
        let n = group.len() as f64;
        let eigen = fourier_transform(&group, &mu)?
            .coeffs
            .into_iter()
            .map(|c| c.conj() * n)
            .collect();
        Ok(CayleyOp {
            kind,
            r,
            d,
            t: 1,
            group,
            noise,
            eigen,
        })
    }

    pub fn t_f3() -> Result<CayleyOp> {
        CayleyOp::new(OpKind::T, 0, 0)
    }

    pub fn t_r(r: usize) -> Result<CayleyOp> {
        CayleyOp::new(OpKind::Tr, r, r)
    }

    pub fn t_rd(r: usize, d: usize) -> Result<CayleyOp> {
        CayleyOp::new(OpKind::Trd, r, d)
    }

    pub fn s_rd(r: usize, d: usize) -> Result<CayleyOp> {
        CayleyOp::new(OpKind::Srd, r, d)
    }

    /// The same operator applied `t` times.
    pub fn pow(&self, t: u32) -> CayleyOp {
        CayleyOp { t, ..self.clone() }
    }

    pub fn group(&self) -> &PolySpace {
        &self.group
    }

    pub fn noise(&self) -> &NoiseDist {
        &self.noise
    }

    /// Eigenvalue of the single operator (ignores `t`) on each coset id.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigen
    }

    /// Eigenvalue of `M^t` on `chi_alpha`.
    pub fn eigenvalue(&self, alpha: &FnTable) -> Result<Complex64> {
        let id = self.group.coset_id(alpha)?;
        Ok(self.eigen[id].powu(self.t))
    }

    /// `E_eta chi_alpha(eta)` summed directly over the noise support.
    pub fn eigenvalue_direct(&self, alpha: &FnTable) -> Result<Complex64> {
        let id = self.group.coset_id(alpha)?;
        let total = self.noise.total as f64;
        let lam: Complex64 = self
            .noise
            .support
            .iter()
            .map(|&(e, c)| omega_pow(self.group.pairing(id, e)) * (c as f64 / total))
            .sum();
        Ok(lam.powu(self.t))
    }

    pub fn apply(&self, a: &GroupFn, mode: ApplyMode) -> Result<GroupFn> {
        a.check_space(&self.group)?;
        match mode {
            ApplyMode::Direct => {
                let mut cur = a.clone();
                for _ in 0..self.t {
                    cur = self.apply_once(&cur);
                }
                Ok(cur)
            }
            ApplyMode::Spectral => {
                let mut s = fourier_transform(&self.group, a)?;
                for (c, lam) in s.coeffs.iter_mut().zip(&self.eigen) {
                    *c *= lam.powu(self.t);
                }
                inverse_transform(&self.group, &s)
            }
        }
    }

    fn apply_once(&self, a: &GroupFn) -> GroupFn {
        let total = self.noise.total as f64;
        let values = (0..a.len())
            .into_par_iter()
            .map(|f| {
                self.noise
                    .support
                    .iter()
                    .map(|&(e, c)| a.values[self.group.add(f, e)] * c as f64)
                    .sum::<Complex64>()
                    / total
            })
            .collect();
        GroupFn {
            r: a.r,
            d: a.d,
            values,
        }
    }
}

/// Monte Carlo estimate of a single eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenEstimate {
    pub mean: Complex64,
    /// Standard error of the mean, per component.
    pub stderr_re: f64,
    pub stderr_im: f64,
    pub samples: usize,
}

/// `E_eta chi_alpha(eta)` by sampling, usable when the noise support is too large to list.
pub fn eigenvalue_mc<R: Rng + ?Sized>(
    kind: OpKind,
    r: usize,
    d: usize,
    alpha: &FnTable,
    samples: usize,
    rng: &mut R,
) -> Result<EigenEstimate> {
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 samples".into()));
    }
    let want_r = if kind == OpKind::T { 0 } else { r };
    if alpha.num_vars() != want_r {
        return Err(Error::DimensionMismatch {
            expected: want_r,
            got: alpha.num_vars(),
        });
    }
    let (mut s, mut s2re, mut s2im) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
    for _ in 0..samples {
        let eta = sample_noise(kind, r, d, rng)?;
        let z = omega_pow(alpha.inner_product(&eta)?.value());
        s += z;
        s2re += z.re * z.re;
        s2im += z.im * z.im;
    }
    let n = samples as f64;
    let mean = s / n;
    let var = |s2: f64, m: f64| ((s2 / n - m * m) * n / (n - 1.0)).max(0.0);
    Ok(EigenEstimate {
        mean,
        stderr_re: (var(s2re, mean.re) / n).sqrt(),
        stderr_im: (var(s2im, mean.im) / n).sqrt(),
        samples,
    })
}
