use std::collections::HashMap;
use std::sync::OnceLock;

use rand::Rng;

use super::field::{checked_pow3, pow3, Gf3};
use super::poly::{basis, Monomial, Poly};
use super::table::FnTable;
use crate::error::{Error, Result};

/// Largest space dimension enumerated exactly (`3^12 = 531441` elements).
pub const ENUM_DIM_LIMIT: usize = 12;

const ADD3: [u8; 5] = [0, 1, 2, 0, 1];

/// The subspace `P(r, d)` of functions `F3^r -> F3`, with a fixed basis and
/// precomputed monomial value tables.
///
/// Elements are addressed by the little-endian base-3 index of their
/// coefficient vector over [`PolySpace::basis`].
#[derive(Debug)]
pub struct PolySpace {
    r: usize,
    d: usize,
    basis: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
    mono_tables: Vec<Vec<Gf3>>,
    digits: OnceLock<Vec<u8>>,
}

impl Clone for PolySpace {
    fn clone(&self) -> Self {
        PolySpace::new(self.r, self.d).expect("valid parameters")
    }
}

impl PolySpace {
    pub fn new(r: usize, d: usize) -> Result<Self> {
        let basis = basis(r, d)?;
        let position = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let points: Vec<Vec<Gf3>> = super::field::all_points(r).collect();
        let mono_tables = basis
            .iter()
            .map(|m| points.iter().map(|x| m.eval(x)).collect())
            .collect();
        Ok(PolySpace {
            r,
            d,
            basis,
            position,
            mono_tables,
            digits: OnceLock::new(),
        })
    }

    /// All functions on `F3^r`, i.e. `P(r, 2r)`.
    pub fn full(r: usize) -> Self {
        PolySpace::new(r, 2 * r).expect("2r is always in range")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_points(&self) -> usize {
        pow3(self.r)
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn monomial_table(&self, j: usize) -> &[Gf3] {
        &self.mono_tables[j]
    }

    /// `3^dim`, if it fits in `u64`.
    pub fn size(&self) -> Option<u64> {
        checked_pow3(self.dim())
    }

    pub fn is_enumerable(&self) -> bool {
        self.dim() <= ENUM_DIM_LIMIT
    }

    /// Number of elements, or an error when the space exceeds the enumeration limit.
    pub fn require_enumerable(&self) -> Result<usize> {
        if self.is_enumerable() {
            Ok(pow3(self.dim()))
        } else {
            Err(Error::TooLarge {
                what: format!("P({}, {})", self.r, self.d),
                dim: self.dim(),
                limit: ENUM_DIM_LIMIT,
            })
        }
    }

    /// Number of elements of an enumerable space.
    pub fn len(&self) -> usize {
        self.require_enumerable().expect("space is enumerable")
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self, mut idx: usize) -> Vec<Gf3> {
        (0..self.dim())
            .map(|_| {
                let c = Gf3::new((idx % 3) as u8);
                idx /= 3;
                c
            })
            .collect()
    }

    pub fn index_of_coeffs(&self, coeffs: &[Gf3]) -> usize {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| acc * 3 + c.value() as usize)
    }

    pub fn poly(&self, idx: usize) -> Poly {
        self.poly_of_coeffs(&self.coeffs(idx))
    }

    pub fn poly_of_coeffs(&self, coeffs: &[Gf3]) -> Poly {
        let terms = self
            .basis
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, &c)| (m.exps().to_vec(), c));
        Poly::from_terms(self.r, self.d, terms).expect("basis monomials fit the space")
    }

    /// Coefficient vector of `p` over this basis.
    pub fn coeffs_of_poly(&self, p: &Poly) -> Result<Vec<Gf3>> {
        if p.num_vars() != self.r {
            return Err(Error::DimensionMismatch {
                expected: self.r,
                got: p.num_vars(),
            });
        }
        let mut out = vec![Gf3::ZERO; self.dim()];
        for (m, c) in p.terms() {
            let j = *self.position.get(m).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "monomial {m:?} is not in P({}, {})",
                    self.r, self.d
                ))
            })?;
            out[j] = c;
        }
        Ok(out)
    }

    pub fn index_of_poly(&self, p: &Poly) -> Result<usize> {
        Ok(self.index_of_coeffs(&self.coeffs_of_poly(p)?))
    }

    pub fn table(&self, idx: usize) -> FnTable {
        self.table_of_coeffs(&self.coeffs(idx))
    }

    pub fn table_of_coeffs(&self, coeffs: &[Gf3]) -> FnTable {
        let mut values = vec![Gf3::ZERO; self.num_points()];
        for (j, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (v, &m) in values.iter_mut().zip(&self.mono_tables[j]) {
                *v += c * m;
            }
        }
        FnTable::from_values(self.r, values).expect("length 3^r")
    }

    /// Index of the element whose value table is `t`; errors when `t` is not in the space.
    pub fn index_of_table(&self, t: &FnTable) -> Result<usize> {
        self.index_of_poly(&t.to_poly())
    }

    pub fn contains_table(&self, t: &FnTable) -> bool {
        t.num_vars() == self.r && t.to_poly().degree().is_none_or(|deg| deg <= self.d)
    }

    fn digits(&self) -> &[u8] {
        self.digits.get_or_init(|| {
            let n = self.len();
            let dim = self.dim();
            let mut out = vec![0u8; n * dim];
            for idx in 0..n {
                let mut v = idx;
                for j in 0..dim {
                    out[idx * dim + j] = (v % 3) as u8;
                    v /= 3;
                }
            }
            out
        })
    }

    /// Coefficient digits of element `idx` (enumerable spaces only).
    pub fn digit_slice(&self, idx: usize) -> &[u8] {
        let dim = self.dim();
        &self.digits()[idx * dim..(idx + 1) * dim]
    }

    /// Index of `a + b`.
    pub fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digit_slice(a), self.digit_slice(b));
        da.iter()
            .zip(db)
            .rev()
            .fold(0, |acc, (&x, &y)| acc * 3 + ADD3[(x + y) as usize] as usize)
    }

    /// Index of `-a`.
    pub fn neg(&self, a: usize) -> usize {
        self.digit_slice(a)
            .iter()
            .rev()
            .fold(0, |acc, &x| acc * 3 + [0, 2, 1][x as usize])
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `y_j = <beta, m_j>` over the basis: the character `chi_beta` read as a
    /// linear functional on coefficient vectors.
    pub fn functional(&self, beta: &FnTable) -> Result<Vec<Gf3>> {
        if beta.num_vars() != self.r {
            return Err(Error::DimensionMismatch {
                expected: self.r,
                got: beta.num_vars(),
            });
        }
        Ok(self
            .mono_tables
            .iter()
            .map(|m| beta.values().iter().zip(m).map(|(&b, &v)| b * v).sum())
            .collect())
    }

    /// Coset id of `beta + P^perp` (the index of [`PolySpace::functional`]).
    pub fn coset_id(&self, beta: &FnTable) -> Result<usize> {
        self.require_enumerable()?;
        Ok(self.index_of_coeffs(&self.functional(beta)?))
    }

    /// `<beta, f>` where `beta` has coset id `coset` and `f` has index `elem`.
    pub fn pairing(&self, coset: usize, elem: usize) -> u8 {
        let s: u32 = self
            .digit_slice(coset)
            .iter()
            .zip(self.digit_slice(elem))
            .map(|(&y, &c)| (y * c) as u32)
            .sum();
        (s % 3) as u8
    }

    /// Calls `f(idx, table)` for every element in index order, updating the
    /// value table incrementally.
    pub fn for_each_table<F: FnMut(usize, &[Gf3])>(&self, mut f: F) -> Result<()> {
        let n = self.require_enumerable()?;
        let dim = self.dim();
        let mut coeffs = vec![0u8; dim];
        let mut values = vec![Gf3::ZERO; self.num_points()];
        for idx in 0..n {
            f(idx, &values);
            // increment the little-endian counter; every touched digit adds its monomial once
            for (c, table) in coeffs.iter_mut().zip(&self.mono_tables) {
                for (v, &m) in values.iter_mut().zip(table) {
                    *v += m;
                }
                *c += 1;
                if *c < 3 {
                    break;
                }
                *c = 0;
            }
        }
        Ok(())
    }

    pub fn random_coeffs<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Gf3> {
        (0..self.dim())
            .map(|_| Gf3::new(rng.gen_range(0..3)))
            .collect()
    }

    pub fn random_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.gen_range(0..self.len())
    }
}
