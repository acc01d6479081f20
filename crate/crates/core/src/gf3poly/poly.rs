use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{pow3, Gf3};
use super::table::FnTable;
use crate::error::{Error, Result};

/// Exponent vector of a monomial, each entry in `{0, 1, 2}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn new(exps: Vec<u8>) -> Result<Self> {
        if let Some(&e) = exps.iter().find(|&&e| e > 2) {
            return Err(Error::InvalidParameter(format!(
                "individual degree {e} exceeds 2"
            )));
        }
        Ok(Monomial(exps))
    }

    pub fn one(r: usize) -> Self {
        Monomial(vec![0; r])
    }

    /// `x_i^e` in `r` variables.
    pub fn var(r: usize, i: usize, e: u8) -> Self {
        let mut exps = vec![0; r];
        exps[i] = e;
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u8] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Little-endian base-3 index of the exponent vector.
    pub fn dense_index(&self) -> usize {
        self.0.iter().rev().fold(0, |acc, &e| acc * 3 + e as usize)
    }

    pub fn from_dense_index(r: usize, mut idx: usize) -> Self {
        let mut exps = Vec::with_capacity(r);
        for _ in 0..r {
            exps.push((idx % 3) as u8);
            idx /= 3;
        }
        Monomial(exps)
    }

    pub fn eval(&self, x: &[Gf3]) -> Gf3 {
        self.0
            .iter()
            .zip(x)
            .fold(Gf3::ONE, |acc, (&e, &xi)| acc * xi.pow(e as u32))
    }

    /// Product with exponents reduced by `x^3 = x` (an exponent `e >= 3` becomes `e - 2`).
    pub fn mul_reduced(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| {
                    let e = a + b;
                    if e >= 3 {
                        e - 2
                    } else {
                        e
                    }
                })
                .collect(),
        )
    }

    /// Graded order: total degree ascending, then exponent vectors in
    /// descending lexicographic order (so `x1` precedes `x2`).
    pub fn graded_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl TryFrom<Vec<u8>> for Monomial {
    type Error = String;
    fn try_from(v: Vec<u8>) -> std::result::Result<Self, String> {
        Monomial::new(v).map_err(|e| e.to_string())
    }
}

impl From<Monomial> for Vec<u8> {
    fn from(m: Monomial) -> Vec<u8> {
        m.0
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e == 2 {
                write!(f, "^2")?;
            }
        }
        Ok(())
    }
}

/// All monomials in `r` variables with total degree at most `d` and
/// individual degrees at most 2, in graded order.
pub fn basis(r: usize, d: usize) -> Result<Vec<Monomial>> {
    if d > 2 * r {
        return Err(Error::DegreeOutOfRange {
            r,
            d: d as i64,
            min: 0,
            max: 2 * r as i64,
        });
    }
    let mut out: Vec<Monomial> = (0..pow3(r))
        .map(|i| Monomial::from_dense_index(r, i))
        .filter(|m| m.degree() <= d)
        .collect();
    out.sort_by(|a, b| a.graded_cmp(b));
    Ok(out)
}

/// A polynomial over F3 in `r` variables with individual degrees at most 2
/// and total degree at most the declared bound `d`.
///
/// Zero coefficients are never stored, so the term map is canonical.
/// Equality compares the variable count and the terms; the declared bound
/// is bookkeeping for the space the polynomial is read in.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct Poly {
    r: usize,
    d: usize,
    terms: BTreeMap<Monomial, Gf3>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.graded_cmp(b.0));
        for (i, (m, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.value() == 1 {
                write!(f, "{m:?}")?;
            } else {
                write!(f, "{c}*{m:?}")?;
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(r: usize, d: usize) -> Self {
        Poly {
            r,
            d: d.min(2 * r),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(r: usize, d: usize, c: Gf3) -> Self {
        let mut p = Poly::zero(r, d);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(r), c);
        }
        p
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(r: usize, d: usize, i: usize) -> Self {
        let mut p = Poly::zero(r, d);
        p.terms.insert(Monomial::var(r, i, 1), Gf3::ONE);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(r: usize, d: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u8>, Gf3)>,
    {
        if d > 2 * r {
            return Err(Error::DegreeOutOfRange {
                r,
                d: d as i64,
                min: 0,
                max: 2 * r as i64,
            });
        }
        let mut p = Poly::zero(r, d);
        for (exps, c) in terms {
            if exps.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: exps.len(),
                });
            }
            let m = Monomial::new(exps)?;
            if m.degree() > d {
                return Err(Error::InvalidParameter(format!(
                    "monomial {m:?} has degree {} > {d}",
                    m.degree()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Gf3) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    /// Declared degree bound.
    pub fn degree_bound(&self) -> usize {
        self.d
    }

    /// Actual total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Gf3)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> Gf3 {
        self.terms.get(m).copied().unwrap_or(Gf3::ZERO)
    }

    /// Re-declares the degree bound, failing if a stored term exceeds it.
    pub fn with_bound(mut self, d: usize) -> Result<Self> {
        let d = d.min(2 * self.r);
        if let Some(deg) = self.degree() {
            if deg > d {
                return Err(Error::InvalidParameter(format!(
                    "polynomial of degree {deg} does not fit bound {d}"
                )));
            }
        }
        self.d = d;
        Ok(self)
    }

    pub fn eval(&self, x: &[Gf3]) -> Result<Gf3> {
        if x.len() != self.r {
            return Err(Error::DimensionMismatch {
                expected: self.r,
                got: x.len(),
            });
        }
        Ok(self.terms.iter().map(|(m, &c)| c * m.eval(x)).sum())
    }

    fn check_vars(&self, other: &Poly) -> Result<()> {
        if self.r != other.r {
            return Err(Error::DimensionMismatch {
                expected: self.r,
                got: other.r,
            });
        }
        Ok(())
    }

    /// Sum; the bound is the larger of the two bounds.
    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        out.d = self.d.max(other.d);
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Gf3) -> Poly {
        let mut out = Poly::zero(self.r, self.d);
        if !c.is_zero() {
            out.terms = self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), v * c))
                .collect();
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(Gf3::TWO)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    /// Product as functions, reduced with `x^3 = x`; the bound is `min(d1 + d2, 2r)`.
    pub fn mul_reduced(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut out = Poly::zero(self.r, self.d + other.d);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.mul_reduced(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// The canonical representative of `p^2`, a member of `P(r, 2d)`.
    pub fn square_reduce(&self) -> Poly {
        self.mul_reduced(self).expect("same variable count")
    }

    /// Dense value table over `F3^r`.
    pub fn to_table(&self) -> FnTable {
        let mut dense = vec![Gf3::ZERO; pow3(self.r)];
        for (m, &c) in &self.terms {
            dense[m.dense_index()] += c;
        }
        forward_transform(self.r, &mut dense);
        FnTable::from_values(self.r, dense).expect("length 3^r")
    }

    /// The unique polynomial with individual degrees at most 2 agreeing with
    /// `t`; declared bound `2r`.
    pub fn from_table(t: &FnTable) -> Poly {
        let r = t.num_vars();
        let mut dense = t.values().to_vec();
        inverse_transform(r, &mut dense);
        let mut p = Poly::zero(r, 2 * r);
        for (i, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::from_dense_index(r, i), c);
            }
        }
        p
    }
}

/// Coefficients (indexed by monomial dense index) to values, one variable at a time.
fn forward_transform(r: usize, a: &mut [Gf3]) {
    for i in 0..r {
        let stride = pow3(i);
        for base in 0..a.len() {
            if !(base / stride).is_multiple_of(3) {
                continue;
            }
            let (c0, c1, c2) = (a[base], a[base + stride], a[base + 2 * stride]);
            a[base] = c0;
            a[base + stride] = c0 + c1 + c2;
            a[base + 2 * stride] = c0 + c1 * Gf3::TWO + c2;
        }
    }
}

/// Values to coefficients: `c0 = v0`, `c1 = v2 - v1`, `c2 = -(v0 + v1 + v2)`.
fn inverse_transform(r: usize, a: &mut [Gf3]) {
    for i in 0..r {
        let stride = pow3(i);
        for base in 0..a.len() {
            if !(base / stride).is_multiple_of(3) {
                continue;
            }
            let (v0, v1, v2) = (a[base], a[base + stride], a[base + 2 * stride]);
            a[base] = v0;
            a[base + stride] = v2 - v1;
            a[base + 2 * stride] = -(v0 + v1 + v2);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u8>,
    coeff: Gf3,
}

/// JSON layout `{r, d, terms: [{exps, coeff}]}`.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    r: usize,
    d: usize,
    terms: Vec<TermRepr>,
}

impl From<Poly> for PolyRepr {
    fn from(p: Poly) -> Self {
        let mut terms: Vec<_> = p.terms.into_iter().collect();
        terms.sort_by(|a, b| a.0.graded_cmp(&b.0));
        PolyRepr {
            r: p.r,
            d: p.d,
            terms: terms
                .into_iter()
                .map(|(m, coeff)| TermRepr {
                    exps: m.into(),
                    coeff,
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyRepr> for Poly {
    type Error = String;
    fn try_from(p: PolyRepr) -> std::result::Result<Self, String> {
        Poly::from_terms(p.r, p.d, p.terms.into_iter().map(|t| (t.exps, t.coeff)))
            .map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3poly::field::all_points;

    fn x1_squared_plus_one() -> Poly {
        Poly::from_terms(2, 2, [(vec![2, 0], Gf3::ONE), (vec![0, 0], Gf3::ONE)]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let one = Poly::constant(3, 0, Gf3::ONE);
        for x in all_points(3) {
            assert_eq!(one.eval(&x).unwrap(), Gf3::ONE);
        }
        let p = x1_squared_plus_one();
        assert_eq!(p.eval(&[Gf3::ONE, Gf3::ZERO]).unwrap(), Gf3::TWO);
        assert!(p.eval(&[Gf3::ONE]).is_err());
    }

    #[test]
    fn x1x2_has_support_four() {
        let p = Poly::from_terms(2, 2, [(vec![1, 1], Gf3::ONE)]).unwrap();
        let support = all_points(2)
            .filter(|x| !p.eval(x).unwrap().is_zero())
            .count();
        assert_eq!(support, 4);
        assert_eq!(p.to_table().support(), 4);
    }

    #[test]
    fn basis_sizes() {
        let b = basis(2, 2).unwrap();
        let shown: Vec<String> = b.iter().map(|m| format!("{m:?}")).collect();
        assert_eq!(shown, ["1", "x1", "x2", "x1^2", "x1*x2", "x2^2"]);
        assert_eq!(basis(1, 2).unwrap().len(), 3);
        assert_eq!(basis(4, 3).unwrap().len(), 31);
        assert!(basis(2, 5).is_err());
    }

    #[test]
    fn square_examples() {
        let x1 = Poly::var(1, 1, 0);
        assert_eq!(
            x1.square_reduce(),
            Poly::from_terms(1, 2, [(vec![2], Gf3::ONE)]).unwrap()
        );
        let x1sq = Poly::from_terms(1, 2, [(vec![2], Gf3::ONE)]).unwrap();
        // x^4 and x^2 agree on F3, so the reduced square is x^2 again
        assert_eq!(x1sq.square_reduce(), x1sq);
        for c in Gf3::ALL {
            assert_eq!(c.pow(4), c.pow(2));
        }
    }

    #[test]
    fn zero_sum_drops_terms() {
        let p = x1_squared_plus_one();
        let z = p.add(&p.neg()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.terms().count(), 0);
    }

    #[test]
    fn point_indicator_formula() {
        // e_x = prod_i (1 - (X_i - x_i)^2)
        let r = 2;
        for x in all_points(r) {
            let mut p = Poly::constant(r, 2 * r, Gf3::ONE);
            for (i, &xi) in x.iter().enumerate() {
                let lin = Poly::var(r, 1, i).add(&Poly::constant(r, 0, -xi)).unwrap();
                let factor = Poly::constant(r, 0, Gf3::ONE)
                    .sub(&lin.square_reduce())
                    .unwrap();
                p = p.mul_reduced(&factor).unwrap();
            }
            assert_eq!(p.degree(), Some(2 * r));
            assert_eq!(p.to_table(), FnTable::indicator(r, &x, Gf3::ONE));
        }
    }

    #[test]
    fn json_layout() {
        let p = x1_squared_plus_one();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"r":2,"d":2,"terms":[{"exps":[0,0],"coeff":1},{"exps":[2,0],"coeff":1}]}"#
        );
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        let bad = r#"{"r":2,"d":1,"terms":[{"exps":[2,0],"coeff":1}]}"#;
        assert!(serde_json::from_str::<Poly>(bad).is_err());
    }
}
