use serde::{Deserialize, Serialize};

use super::field::{point_index, pow3, Gf3};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A function `F3^r -> F3` stored densely, indexed little-endian by point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct FnTable {
    r: usize,
    values: Vec<Gf3>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    r: usize,
    values: Vec<Gf3>,
}

impl From<FnTable> for TableRepr {
    fn from(t: FnTable) -> Self {
        TableRepr {
            r: t.r,
            values: t.values,
        }
    }
}

impl TryFrom<TableRepr> for FnTable {
    type Error = String;
    fn try_from(t: TableRepr) -> std::result::Result<Self, String> {
        FnTable::from_values(t.r, t.values).map_err(|e| e.to_string())
    }
}

impl FnTable {
    pub fn zeros(r: usize) -> Self {
        FnTable {
            r,
            values: vec![Gf3::ZERO; pow3(r)],
        }
    }

    pub fn from_values(r: usize, values: Vec<Gf3>) -> Result<Self> {
        let expected = pow3(r);
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(FnTable { r, values })
    }

    /// `c * e_x`: the function equal to `c` at `x` and zero elsewhere.
    pub fn indicator(r: usize, x: &[Gf3], c: Gf3) -> Self {
        let mut t = FnTable::zeros(r);
        t.values[point_index(x)] = c;
        t
    }

    /// `c * e_x` for the point with index `idx`.
    pub fn indicator_at(r: usize, idx: usize, c: Gf3) -> Self {
        let mut t = FnTable::zeros(r);
        t.values[idx] = c;
        t
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Gf3] {
        &self.values
    }

    pub fn get(&self, idx: usize) -> Gf3 {
        self.values[idx]
    }

    pub fn set(&mut self, idx: usize, v: Gf3) {
        self.values[idx] = v;
    }

    /// Value at a point given by coordinates.
    pub fn at(&self, x: &[Gf3]) -> Result<Gf3> {
        if x.len() != self.r {
            return Err(Error::DimensionMismatch {
                expected: self.r,
                got: x.len(),
            });
        }
        Ok(self.values[point_index(x)])
    }

    /// Number of points where the function is nonzero.
    pub fn support(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn support_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check_same(&self, other: &FnTable) -> Result<()> {
        if self.r != other.r {
            return Err(Error::DimensionMismatch {
                expected: self.r,
                got: other.r,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FnTable) -> Result<FnTable> {
        self.check_same(other)?;
        Ok(FnTable {
            r: self.r,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &FnTable) -> Result<FnTable> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Gf3) -> FnTable {
        FnTable {
            r: self.r,
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn neg(&self) -> FnTable {
        self.scale(Gf3::TWO)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &FnTable) -> Result<FnTable> {
        self.check_same(other)?;
        Ok(FnTable {
            r: self.r,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a * b)
                .collect(),
        })
    }

    /// `<self, other> = sum_x self(x) other(x)` in F3.
    pub fn inner_product(&self, other: &FnTable) -> Result<Gf3> {
        self.check_same(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a * b)
            .sum())
    }

    /// Hamming distance.
    pub fn distance(&self, other: &FnTable) -> Result<usize> {
        self.check_same(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count())
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_table(self)
    }
}

/// `inner_product` as a free function.
pub fn inner_product(beta: &FnTable, f: &FnTable) -> Result<Gf3> {
    beta.inner_product(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_picks_value() {
        let f = FnTable::from_values(1, vec![Gf3::ONE, Gf3::TWO, Gf3::ZERO]).unwrap();
        for i in 0..3 {
            let e = FnTable::indicator_at(1, i, Gf3::ONE);
            assert_eq!(e.inner_product(&f).unwrap(), f.get(i));
        }
        assert_eq!(FnTable::zeros(1).inner_product(&f).unwrap(), Gf3::ZERO);
    }

    #[test]
    fn length_and_dimension_checks() {
        assert!(FnTable::from_values(2, vec![Gf3::ZERO; 8]).is_err());
        assert!(FnTable::zeros(1).inner_product(&FnTable::zeros(2)).is_err());
        assert!(serde_json::from_str::<FnTable>(r#"{"r":1,"values":[0,1]}"#).is_err());
    }

    #[test]
    fn zero_table_is_zero_poly() {
        assert!(FnTable::zeros(3).to_poly().is_zero());
        assert_eq!(Poly::zero(3, 6).to_table(), FnTable::zeros(3));
    }
}
