use rand::Rng;
use serde::{Deserialize, Serialize};

use super::field::Gf3;
use crate::error::{Error, Result};

/// A dense matrix over F3, row-major. Serialized as a list of rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Gf3>>", into = "Vec<Vec<Gf3>>")]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Gf3>,
}

impl TryFrom<Vec<Vec<Gf3>>> for Mat {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Gf3>>) -> Result<Mat> {
        Mat::from_rows(rows)
    }
}

impl From<Mat> for Vec<Vec<Gf3>> {
    fn from(m: Mat) -> Self {
        (0..m.rows).map(|i| m.row(i).to_vec()).collect()
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Gf3::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gf3::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Gf3>>) -> Result<Mat> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Gf3 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Gf3) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Gf3] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Gf3]) -> Result<Vec<Gf3>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// Row echelon form by Gaussian elimination; returns the rank.
    fn eliminate(&mut self, companion: Option<&mut Mat>) -> usize {
        let mut comp = companion;
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(p, rank);
            if let Some(c) = comp.as_deref_mut() {
                c.swap_rows(p, rank);
            }
            let inv = self.get(rank, col).inv().expect("nonzero pivot");
            self.scale_row(rank, inv);
            if let Some(c) = comp.as_deref_mut() {
                c.scale_row(rank, inv);
            }
            for i in 0..self.rows {
                let f = self.get(i, col);
                if i != rank && !f.is_zero() {
                    self.axpy_row(i, rank, -f);
                    if let Some(c) = comp.as_deref_mut() {
                        c.axpy_row(i, rank, -f);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: Gf3) {
        for j in 0..self.cols {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    /// `row_i += c * row_k`
    fn axpy_row(&mut self, i: usize, k: usize, c: Gf3) {
        for j in 0..self.cols {
            let v = self.get(i, j) + c * self.get(k, j);
            self.set(i, j, v);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(None)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::SingularMatrix);
        }
        let mut a = self.clone();
        let mut inv = Mat::identity(self.rows);
        if a.eliminate(Some(&mut inv)) < self.rows {
            return Err(Error::SingularMatrix);
        }
        Ok(inv)
    }

    /// Uniformly random invertible `n x n` matrix, by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat {
        loop {
            let m = Mat::random(n, n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat {
            rows,
            cols,
            data: (0..rows * cols)
                .map(|_| Gf3::new(rng.gen_range(0..3)))
                .collect(),
        }
    }
}
