use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::character::omega_pow;
use super::transform::{GroupFn, Spectrum};
use crate::error::{Error, Result};
use crate::gf3poly::{FnTable, PolySpace};

/// A finite sum `sum_i c_i chi_{beta_i}` with explicit dual vectors.
///
/// Unlike [`Spectrum`] this needs no enumeration of the underlying space, so
/// it can describe functions on large `P(r, d)` or on `F_r` itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseSpectrum {
    pub r: usize,
    pub terms: Vec<(FnTable, Complex64)>,
}

impl SparseSpectrum {
    pub fn new(r: usize, terms: Vec<(FnTable, Complex64)>) -> Result<Self> {
        if let Some((b, _)) = terms.iter().find(|(b, _)| b.num_vars() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: b.num_vars(),
            });
        }
        Ok(SparseSpectrum { r, terms })
    }

    /// Maximum support of a dual vector.
    pub fn max_support(&self) -> usize {
        self.terms
            .iter()
            .map(|(b, _)| b.support())
            .max()
            .unwrap_or(0)
    }

    /// `sum |c_i|^2`; the squared 2-norm when the `beta_i` lie in distinct cosets.
    pub fn mass(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    /// Value at a function `f` given by its table.
    pub fn eval(&self, f: &[crate::gf3poly::Gf3]) -> Complex64 {
        self.terms
            .iter()
            .map(|(b, c)| {
                let ip: crate::gf3poly::Gf3 = b.values().iter().zip(f).map(|(&x, &y)| x * y).sum();
                c * omega_pow(ip.value())
            })
            .sum()
    }

    /// Evaluates only at the support points of the dual vectors, which is all
    /// the characters can see.
    pub fn evaluator(&self) -> SparseEvaluator {
        let mut points: Vec<usize> = self
            .terms
            .iter()
            .flat_map(|(b, _)| b.support_points())
            .collect();
        points.sort_unstable();
        points.dedup();
        let weights = self
            .terms
            .iter()
            .map(|(b, c)| (points.iter().map(|&x| b.get(x).value()).collect(), *c))
            .collect();
        SparseEvaluator { points, weights }
    }

    /// Dense restriction to the elements of `space`.
    pub fn to_group_fn(&self, space: &PolySpace) -> Result<GroupFn> {
        if space.r() != self.r {
            return Err(Error::DimensionMismatch {
                expected: self.r,
                got: space.r(),
            });
        }
        let mut ids = Vec::with_capacity(self.terms.len());
        for (b, c) in &self.terms {
            ids.push((space.coset_id(b)?, *c));
        }
        GroupFn::from_fn(space, |g| {
            ids.iter()
                .map(|&(id, c)| c * omega_pow(space.pairing(id, g)))
                .sum()
        })
    }

    /// Dense spectrum on `space`, merging terms that fall in the same coset.
    pub fn to_spectrum(&self, space: &PolySpace) -> Result<Spectrum> {
        let mut s = Spectrum::zero(space)?;
        for (b, c) in &self.terms {
            s.coeffs[space.coset_id(b)?] += c;
        }
        Ok(s)
    }
}

/// Precomputed evaluation of a [`SparseSpectrum`] at a few points.
#[derive(Clone, Debug)]
pub struct SparseEvaluator {
    points: Vec<usize>,
    weights: Vec<(Vec<u8>, Complex64)>,
}

impl SparseEvaluator {
    /// Points of `F3^r` whose values matter, in increasing order.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Value at a function whose values at [`Self::points`] are `vals`.
    pub fn eval(&self, vals: &[u8]) -> Complex64 {
        self.weights
            .iter()
            .map(|(b, c)| {
                let ip: u32 = b.iter().zip(vals).map(|(&x, &y)| (x * y) as u32).sum();
                c * omega_pow((ip % 3) as u8)
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3poly::Gf3;

    #[test]
    fn dense_and_pointwise_agree() {
        let space = PolySpace::new(2, 2).unwrap();
        let s = SparseSpectrum::new(
            2,
            vec![
                (
                    FnTable::indicator_at(2, 0, Gf3::ONE),
                    Complex64::new(0.5, 0.0),
                ),
                (
                    FnTable::indicator_at(2, 5, Gf3::TWO),
                    Complex64::new(0.0, 0.25),
                ),
            ],
        )
        .unwrap();
        let g = s.to_group_fn(&space).unwrap();
        let ev = s.evaluator();
        assert_eq!(ev.points(), &[0, 5]);
        for idx in [0, 17, 300, 728] {
            let t = space.table(idx);
            let direct = s.eval(t.values());
            let local: Vec<u8> = ev.points().iter().map(|&x| t.get(x).value()).collect();
            assert!((direct - g.values[idx]).norm() < 1e-12);
            assert!((direct - ev.eval(&local)).norm() < 1e-12);
        }
    }
}
