use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::character::omega_pow;
use crate::error::{Error, Result};
use crate::gf3poly::PolySpace;

/// A complex-valued function on an enumerable `P(r, d)`, indexed by element index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupFn {
    pub r: usize,
    pub d: usize,
    pub values: Vec<Complex64>,
}

impl GroupFn {
    pub fn new(space: &PolySpace, values: Vec<Complex64>) -> Result<Self> {
        let n = space.require_enumerable()?;
        if values.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: values.len(),
            });
        }
        Ok(GroupFn {
            r: space.r(),
            d: space.d(),
            values,
        })
    }

    pub fn from_fn<F: FnMut(usize) -> Complex64>(space: &PolySpace, f: F) -> Result<Self> {
        let n = space.require_enumerable()?;
        GroupFn::new(space, (0..n).map(f).collect())
    }

    pub fn from_real(space: &PolySpace, values: &[f64]) -> Result<Self> {
        GroupFn::new(
            space,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn constant(space: &PolySpace, c: Complex64) -> Result<Self> {
        GroupFn::from_fn(space, |_| c)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_space(&self, space: &PolySpace) -> Result<()> {
        if self.r != space.r() || self.d != space.d() {
            return Err(Error::InvalidParameter(format!(
                "function on P({}, {}) used with P({}, {})",
                self.r,
                self.d,
                space.r(),
                space.d()
            )));
        }
        Ok(())
    }

    fn check_same(&self, other: &GroupFn) -> Result<()> {
        if self.r != other.r || self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.len() as f64
    }

    /// `E[A conj(B)]`.
    pub fn inner(&self, other: &GroupFn) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            / self.len() as f64)
    }

    /// `(E |A|^p)^(1/p)`.
    pub fn norm(&self, p: f64) -> f64 {
        let m = self.values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / self.len() as f64;
        m.powf(1.0 / p)
    }

    pub fn add(&self, other: &GroupFn) -> Result<GroupFn> {
        self.check_same(other)?;
        Ok(self.map2(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &GroupFn) -> Result<GroupFn> {
        self.check_same(other)?;
        Ok(self.map2(other, |a, b| a - b))
    }

    pub fn scale(&self, c: Complex64) -> GroupFn {
        self.map(|v| v * c)
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> GroupFn {
        GroupFn {
            r: self.r,
            d: self.d,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    fn map2<F: Fn(Complex64, Complex64) -> Complex64>(&self, other: &GroupFn, f: F) -> GroupFn {
        GroupFn {
            r: self.r,
            d: self.d,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn real_part(&self) -> GroupFn {
        self.map(|v| Complex64::new(v.re, 0.0))
    }

    pub fn max_abs_diff(&self, other: &GroupFn) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.im.abs() <= tol)
    }

    /// Every value is 0 or 1 (within `tol`).
    pub fn is_boolean(&self, tol: f64) -> bool {
        self.is_real(tol)
            && self
                .values
                .iter()
                .all(|v| v.re.abs() <= tol || (v.re - 1.0).abs() <= tol)
    }
}

/// Fourier coefficients of a function on `P(r, d)`, indexed by coset id of
/// `F_r / P(r, d)^perp`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub r: usize,
    pub d: usize,
    pub coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn zero(space: &PolySpace) -> Result<Self> {
        Ok(Spectrum {
            r: space.r(),
            d: space.d(),
            coeffs: vec![Complex64::new(0.0, 0.0); space.require_enumerable()?],
        })
    }

    pub fn coeff(&self, coset: usize) -> Complex64 {
        self.coeffs[coset]
    }

    /// `sum |A^(beta)|^2`.
    pub fn mass(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Keeps only the cosets selected by `keep`.
    pub fn filter<F: Fn(usize) -> bool>(&self, keep: F) -> Spectrum {
        Spectrum {
            r: self.r,
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if keep(i) { c } else { Complex64::new(0.0, 0.0) })
                .collect(),
        }
    }

    /// Multiplies each coefficient by a per-coset factor.
    pub fn multiply(&self, factors: &[Complex64]) -> Result<Spectrum> {
        if factors.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                got: factors.len(),
            });
        }
        Ok(Spectrum {
            r: self.r,
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .zip(factors)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }
}

/// In-place transform over every base-3 coordinate: `out[y] = scale * sum_c a[c] omega^(sign * y c)`.
fn transform_in_place(a: &mut [Complex64], dim: usize, sign: u8, scale: f64) {
    let w1 = omega_pow(sign);
    let w2 = omega_pow(2 * sign);
    let mut stride = 1;
    for _ in 0..dim {
        let block = 3 * stride;
        for start in (0..a.len()).step_by(block) {
            for off in 0..stride {
                let i0 = start + off;
                let (i1, i2) = (i0 + stride, i0 + 2 * stride);
                let (a0, a1, a2) = (a[i0], a[i1], a[i2]);
                a[i0] = (a0 + a1 + a2) * scale;
                a[i1] = (a0 + a1 * w1 + a2 * w2) * scale;
                a[i2] = (a0 + a1 * w2 + a2 * w1) * scale;
            }
        }
        stride = block;
    }
}

/// `A^(beta) = E_g A(g) conj(chi_beta(g))` for every coset, by one 3-point
/// DFT per coordinate.
pub fn fourier_transform(space: &PolySpace, a: &GroupFn) -> Result<Spectrum> {
    a.check_space(space)?;
    let mut coeffs = a.values.clone();
    transform_in_place(&mut coeffs, space.dim(), 2, 1.0 / 3.0);
    Ok(Spectrum {
        r: a.r,
        d: a.d,
        coeffs,
    })
}

/// `A(f) = sum_beta A^(beta) chi_beta(f)`.
pub fn inverse_transform(space: &PolySpace, s: &Spectrum) -> Result<GroupFn> {
    if s.r != space.r() || s.d != space.d() {
        return Err(Error::InvalidParameter(
            "spectrum from a different space".into(),
        ));
    }
    let mut values = s.coeffs.clone();
    transform_in_place(&mut values, space.dim(), 1, 1.0);
    GroupFn::new(space, values)
}
