//! Exhaustive checks on the spaces `P(r, d)`: duality, the Schwartz-Zippel
//! bound and bounded independence of random polynomials.

use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use super::field::{point_from_index, point_index, pow3, Gf3};
use super::poly::{basis, Monomial, Poly};
use super::space::PolySpace;
use crate::error::{Error, Result};

/// Degree of the dual space: `P(r, d)^perp = P(r, 2r - d - 1)`, `None` when
/// the dual is the zero space (`d = 2r`).
pub fn dual_degree(r: usize, d: usize) -> Result<Option<usize>> {
    if d > 2 * r {
        return Err(Error::DegreeOutOfRange {
            r,
            d: d as i64,
            min: 0,
            max: 2 * r as i64,
        });
    }
    Ok((2 * r).checked_sub(d + 1))
}

/// Basis of `P(r, d)^perp`; empty when the dual is `{0}`.
pub fn dual_space(r: usize, d: usize) -> Result<Vec<Monomial>> {
    match dual_degree(r, d)? {
        Some(dd) => basis(r, dd),
        None => Ok(Vec::new()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DualReport {
    pub r: usize,
    pub d: usize,
    pub dim_space: usize,
    pub dim_dual: usize,
    pub pairs_checked: usize,
    pub nonzero_pairs: usize,
    pub complementary: bool,
    pub passed: bool,
}

/// Checks every cross inner product between the bases of `P(r, d)` and
/// `P(r, 2r - d - 1)` and that the dimensions add up to `3^r`.
pub fn verify_dual(r: usize, d: usize) -> Result<DualReport> {
    let primal = basis(r, d)?;
    let dual = dual_space(r, d)?;
    let points: Vec<Vec<Gf3>> = (0..pow3(r)).map(|i| point_from_index(r, i)).collect();
    let tables = |ms: &[Monomial]| -> Vec<Vec<Gf3>> {
        ms.iter()
            .map(|m| points.iter().map(|x| m.eval(x)).collect())
            .collect()
    };
    let (pt, dt) = (tables(&primal), tables(&dual));
    let mut nonzero = 0;
    for a in &pt {
        for b in &dt {
            let ip: Gf3 = a.iter().zip(b).map(|(&x, &y)| x * y).sum();
            if !ip.is_zero() {
                nonzero += 1;
            }
        }
    }
    let complementary = primal.len() + dual.len() == pow3(r);
    Ok(DualReport {
        r,
        d,
        dim_space: primal.len(),
        dim_dual: dual.len(),
        pairs_checked: primal.len() * dual.len(),
        nonzero_pairs: nonzero,
        complementary,
        passed: nonzero == 0 && complementary,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SchwartzZippelReport {
    pub r: usize,
    pub d: usize,
    /// Minimum over nonzero `p` of the fraction of points where `p` is nonzero.
    pub min_fraction: Ratio<u64>,
    /// `3^(-d/2)`.
    pub bound: f64,
    pub witness: Poly,
    pub holds: bool,
    pub tight: bool,
}

/// Exhaustive minimum nonzero fraction over all nonzero `p` in `P(r, d)`.
pub fn schwartz_zippel_min(r: usize, d: usize) -> Result<SchwartzZippelReport> {
    let space = PolySpace::new(r, d)?;
    space.require_enumerable()?;
    let n_points = space.num_points();
    let mut best = (usize::MAX, 0usize);
    space.for_each_table(|idx, t| {
        if idx == 0 {
            return;
        }
        let nz = t.iter().filter(|v| !v.is_zero()).count();
        if nz < best.0 {
            best = (nz, idx);
        }
    })?;
    if best.0 == usize::MAX {
        return Err(Error::InvalidParameter(
            "space has no nonzero element".into(),
        ));
    }
    let min_fraction = Ratio::new(best.0 as u64, n_points as u64);
    let bound = 3f64.powf(-(d as f64) / 2.0);
    let value = best.0 as f64 / n_points as f64;
    Ok(SchwartzZippelReport {
        r,
        d,
        min_fraction,
        bound,
        witness: space.poly(best.1),
        holds: value >= bound - 1e-12,
        tight: (value - bound).abs() < 1e-12,
    })
}

/// Uniformly random element of `P(r, d)`.
pub fn random_poly<R: Rng + ?Sized>(r: usize, d: usize, rng: &mut R) -> Result<Poly> {
    let b = basis(r, d)?;
    let terms = b
        .into_iter()
        .map(|m| (m.exps().to_vec(), Gf3::new(rng.gen_range(0..3))));
    Poly::from_terms(r, d, terms)
}

/// Independence guaranteed for random elements of `P(r, d)`: `3^floor((d+1)/2)`.
pub fn independence_guarantee(d: usize) -> usize {
    pow3(d.div_ceil(2))
}

/// Minimum number of nonzero values of a nonzero element of `P(r, e)`, for `e <= 2r`.
pub fn min_weight(r: usize, e: usize) -> usize {
    let (a, b) = (e / 2, e % 2);
    if b == 0 {
        pow3(r - a)
    } else {
        2 * pow3(r - a - 1)
    }
}

/// Largest `k` such that a random element of `P(r, d)` is exactly `k`-wise independent.
///
/// This is one less than the minimum weight of the dual space. It agrees with
/// [`independence_guarantee`] for even `d` up to a factor of two, but for odd `d` it is
/// `3^((d+1)/2) - 1`: three points on a line already see only 9 of the 27 patterns of
/// an affine function.
pub fn exact_independence(r: usize, d: usize) -> usize {
    if d >= 2 * r {
        return pow3(r);
    }
    min_weight(r, 2 * r - d - 1) - 1
}

#[derive(Debug, Clone, Copy)]
pub enum KwiseMode {
    /// Enumerate every element of the space.
    Exact,
    /// Draw this many random polynomials.
    Sampled { samples: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct KwiseReport {
    pub r: usize,
    pub d: usize,
    pub points: Vec<usize>,
    pub guarantee: usize,
    pub within_guarantee: bool,
    pub exact_independence: usize,
    pub exact: bool,
    pub total: u64,
    /// Counts of each restriction pattern, indexed little-endian by the values on `points`.
    pub counts: Vec<u64>,
    pub uniform: bool,
    pub chi_squared: f64,
    pub degrees_of_freedom: usize,
}

/// Distribution of the restriction of a random `p` in `P(r, d)` to the point set `points`.
///
/// In exact mode `uniform` means every pattern occurs equally often. In sampled mode it
/// means the chi-squared statistic is below `dof + 3 sqrt(2 dof)`.
pub fn kwise_check<R: Rng + ?Sized>(
    r: usize,
    d: usize,
    points: &[Vec<Gf3>],
    mode: KwiseMode,
    rng: &mut R,
) -> Result<KwiseReport> {
    let space = PolySpace::new(r, d)?;
    let mut idxs = Vec::with_capacity(points.len());
    for x in points {
        if x.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: x.len(),
            });
        }
        idxs.push(point_index(x));
    }
    let mut sorted = idxs.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != idxs.len() {
        return Err(Error::InvalidParameter(
            "point set has repeated points".into(),
        ));
    }
    let patterns = pow3(idxs.len());
    let mut counts = vec![0u64; patterns];
    let pattern_of = |t: &[Gf3]| {
        idxs.iter()
            .rev()
            .fold(0usize, |acc, &i| acc * 3 + t[i].value() as usize)
    };
    let exact = matches!(mode, KwiseMode::Exact);
    match mode {
        KwiseMode::Exact => {
            space.for_each_table(|_, t| counts[pattern_of(t)] += 1)?;
        }
        KwiseMode::Sampled { samples } => {
            for _ in 0..samples {
                let c = space.random_coeffs(rng);
                let t = space.table_of_coeffs(&c);
                counts[pattern_of(t.values())] += 1;
            }
        }
    }
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / patterns as f64;
    let chi_squared = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum::<f64>();
    let dof = patterns - 1;
    let uniform = if exact {
        counts.iter().all(|&c| c == counts[0])
    } else {
        chi_squared <= dof as f64 + 3.0 * (2.0 * dof as f64).sqrt()
    };
    let guarantee = independence_guarantee(d);
    Ok(KwiseReport {
        r,
        d,
        points: idxs,
        guarantee,
        within_guarantee: points.len() <= guarantee,
        exact_independence: exact_independence(r, d),
        exact,
        total,
        counts,
        uniform,
        chi_squared,
        degrees_of_freedom: dof,
    })
}
