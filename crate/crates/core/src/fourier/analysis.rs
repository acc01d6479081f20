use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::character::omega_pow;
use super::cosets::{small_support_functions, CosetTable};
use super::transform::{fourier_transform, GroupFn, Spectrum};
use crate::error::{Error, Result};
use crate::gf3poly::{independence_guarantee, FnTable, Gf3, PolySpace};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParsevalReport {
    /// `sum |A^(beta)|^2`
    pub lhs: f64,
    /// `E |A|^2`
    pub rhs: f64,
    pub gap: f64,
}

pub fn parseval_check(space: &PolySpace, a: &GroupFn) -> Result<ParsevalReport> {
    let lhs = fourier_transform(space, a)?.mass();
    let rhs = a.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / a.len() as f64;
    Ok(ParsevalReport {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
    })
}

/// Largest `k` accepted by [`influence`] on `P(r, d)`.
pub fn max_influence_degree(d: usize) -> usize {
    // k < 3^floor((d+1)/2) / 2
    (independence_guarantee(d) - 1) / 2
}

fn check_influence_degree(d: usize, k: usize) -> Result<()> {
    if k > max_influence_degree(d) {
        return Err(Error::InfluenceDegree {
            k,
            bound: independence_guarantee(d) as f64 / 2.0,
        });
    }
    Ok(())
}

/// Degree-`k` influence of the point `a` (an index into `F3^r`).
///
/// Below the degree bound every function of support at most `k` is the unique
/// minimum-support member of its coset, so the sum runs over those functions
/// directly and does not depend on how ties between representatives are broken.
pub fn influence(space: &PolySpace, spectrum: &Spectrum, a: usize, k: usize) -> Result<f64> {
    Ok(influences(space, spectrum, k)?[a])
}

/// Degree-`k` influences of every point of `F3^r`.
pub fn influences(space: &PolySpace, spectrum: &Spectrum, k: usize) -> Result<Vec<f64>> {
    check_influence_degree(space.d(), k)?;
    if spectrum.r != space.r() || spectrum.d != space.d() {
        return Err(Error::InvalidParameter(
            "spectrum from a different space".into(),
        ));
    }
    let mut inf = vec![0.0; space.num_points()];
    for beta in small_support_functions(space.r(), k) {
        let m = spectrum.coeff(space.coset_id(&beta)?).norm_sqr();
        for x in beta.support_points() {
            inf[x] += m;
        }
    }
    Ok(inf)
}

/// The dictator `f -> 1[f(x) in set]` on `space`.
pub fn dictator(space: &PolySpace, x: usize, set: &[Gf3]) -> Result<GroupFn> {
    let id = point_coset(space, x)?;
    GroupFn::from_fn(space, |g| {
        let v = Gf3::new(space.pairing(id, g));
        Complex64::new(if set.contains(&v) { 1.0 } else { 0.0 }, 0.0)
    })
}

/// Coset id of the indicator of `x`; pairing it with an element gives `f(x)`.
pub fn point_coset(space: &PolySpace, x: usize) -> Result<usize> {
    if x >= space.num_points() {
        return Err(Error::InvalidParameter(format!(
            "point index {x} out of range"
        )));
    }
    space.coset_id(&FnTable::indicator_at(space.r(), x, Gf3::ONE))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NearestDictator {
    pub point: usize,
    pub set: Vec<Gf3>,
    /// `||A - B||_2`
    pub distance: f64,
}

/// Exhaustive search over all Boolean dictators `1[f(x) in S]`.
///
/// Ties go to the smallest point, then to the first subset in the order
/// `{}, {0}, {1}, {0,1}, {2}, ...`.
pub fn nearest_dictator(space: &PolySpace, a: &GroupFn) -> Result<NearestDictator> {
    a.check_space(space)?;
    let n = a.len() as f64;
    let sq: f64 = a.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / n;
    let per_point: Vec<(f64, usize, u8)> = (0..space.num_points())
        .into_par_iter()
        .map(|x| {
            let id = point_coset(space, x).expect("point in range");
            // partial sums of Re A and counts over f(x) = c
            let mut sum = [0.0f64; 3];
            let mut cnt = [0usize; 3];
            for (g, v) in a.values.iter().enumerate() {
                let c = space.pairing(id, g) as usize;
                sum[c] += v.re;
                cnt[c] += 1;
            }
            let mut best = (f64::INFINITY, x, 0u8);
            for mask in 0u8..8 {
                let mut d2 = sq;
                for c in 0..3 {
                    if mask >> c & 1 == 1 {
                        d2 += (cnt[c] as f64 - 2.0 * sum[c]) / n;
                    }
                }
                if d2 < best.0 - 1e-12 {
                    best = (d2, x, mask);
                }
            }
            best
        })
        .collect();
    let mut best = per_point[0];
    for &p in &per_point[1..] {
        if p.0 < best.0 - 1e-12 {
            best = p;
        }
    }
    Ok(NearestDictator {
        point: best.1,
        set: (0..3u8)
            .filter(|c| best.2 >> c & 1 == 1)
            .map(Gf3::new)
            .collect(),
        distance: best.0.max(0.0).sqrt(),
    })
}

/// Largest deviation of `E[chi_beta conj(chi_beta')]` from the identity
/// matrix over all pairs of representatives.
pub fn orthonormality_gap(space: &PolySpace, reps: &CosetTable) -> Result<f64> {
    let tables: Vec<Vec<Complex64>> = reps
        .reps
        .iter()
        .map(|rep| super::character_table(space, &rep.beta))
        .collect::<Result<_>>()?;
    let n = space.len() as f64;
    let gap = (0..tables.len())
        .into_par_iter()
        .map(|i| {
            let mut worst = 0.0f64;
            for j in i..tables.len() {
                let ip: Complex64 = tables[i]
                    .iter()
                    .zip(&tables[j])
                    .map(|(a, b)| a * b.conj())
                    .sum::<Complex64>()
                    / n;
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - Complex64::new(want, 0.0)).norm());
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    Ok(gap)
}

/// `max |A^(-beta) - conj(A^(beta))|`; zero for real-valued `A`.
pub fn conjugate_symmetry_gap(space: &PolySpace, s: &Spectrum) -> f64 {
    (0..s.coeffs.len())
        .map(|i| (s.coeffs[space.neg(i)] - s.coeffs[i].conj()).norm())
        .fold(0.0, f64::max)
}

/// `E_mu chi_beta(eta)` for an explicit probability vector over the space.
pub fn character_mean(space: &PolySpace, coset: usize, weights: &[f64]) -> Complex64 {
    weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w != 0.0)
        .map(|(g, &w)| omega_pow(space.pairing(coset, g)) * w)
        .sum()
}
