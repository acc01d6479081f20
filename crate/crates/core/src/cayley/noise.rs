use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf3poly::{pow3, FnTable, Gf3, Mat, PolySpace};

/// Which of the four noise distributions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OpKind {
    /// Uniform on `{1, 2}` in F3.
    T,
    /// Uniform on nowhere-zero functions in `F_r`.
    Tr,
    /// `+-(p^2 + 1)` with `p` uniform in `P(r, d)`, on `P(r, 2d)`.
    Trd,
    /// `a * prod_i (l_i - 1)(l_i - 2)` on `P(r, 2d)`, with `a` in `{1, 2}` and
    /// affine `l_1..l_d` whose linear parts are independent.
    Srd,
}

impl OpKind {
    /// `(r, d)` of the group the noise lives on.
    pub fn group(self, r: usize, d: usize) -> (usize, usize) {
        match self {
            OpKind::T => (0, 0),
            OpKind::Tr => (r, 2 * r),
            OpKind::Trd | OpKind::Srd => (r, 2 * d),
        }
    }

    fn check(self, r: usize, d: usize) -> Result<()> {
        match self {
            OpKind::Trd | OpKind::Srd if 2 * d > 2 * r => Err(Error::DegreeOutOfRange {
                r,
                d: d as i64,
                min: 0,
                max: r as i64,
            }),
            OpKind::Srd if d == 0 => Err(Error::InvalidParameter(
                "S needs at least one linear form (d >= 1)".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Draws one noise element as a value table on `F3^r` (length 1 for `T`).
pub fn sample_noise<R: Rng + ?Sized>(
    kind: OpKind,
    r: usize,
    d: usize,
    rng: &mut R,
) -> Result<FnTable> {
    kind.check(r, d)?;
    let nonzero = |rng: &mut R| {
        if rng.gen::<bool>() {
            Gf3::ONE
        } else {
            Gf3::TWO
        }
    };
    Ok(match kind {
        OpKind::T => FnTable::from_values(0, vec![nonzero(rng)])?,
        OpKind::Tr => FnTable::from_values(r, (0..pow3(r)).map(|_| nonzero(rng)).collect())?,
        OpKind::Trd => {
            let p = crate::gf3poly::random_poly(r, d, rng)?.to_table();
            square_shift(&p, nonzero(rng))
        }
        OpKind::Srd => {
            let a = nonzero(rng);
            let lin = loop {
                let m = Mat::random(d, r, rng);
                if m.rank() == d {
                    break m;
                }
            };
            let consts: Vec<Gf3> = (0..d).map(|_| Gf3::new(rng.gen_range(0..3))).collect();
            affine_product(r, &lin, &consts, a)
        }
    })
}

/// `a (p^2 + 1)` pointwise.
fn square_shift(p: &FnTable, a: Gf3) -> FnTable {
    let values = p.values().iter().map(|&v| a * (v * v + Gf3::ONE)).collect();
    FnTable::from_values(p.num_vars(), values).expect("same length")
}

/// `a * prod_i (l_i - 1)(l_i - 2)` with `l_i(x) = <lin_i, x> + c_i`.
pub fn affine_product(r: usize, lin: &Mat, consts: &[Gf3], a: Gf3) -> FnTable {
    let values = crate::gf3poly::all_points(r)
        .map(|x| {
            let l = lin.mul_vec(&x).expect("r columns");
            l.iter()
                .zip(consts)
                .map(|(&h, &c)| {
                    let v = h + c;
                    (v - Gf3::ONE) * (v - Gf3::TWO)
                })
                .fold(a, |acc, f| acc * f)
        })
        .collect();
    FnTable::from_values(r, values).expect("length 3^r")
}

/// An explicit noise distribution: multiplicities over elements of the group.
#[derive(Clone, Debug)]
pub struct NoiseDist {
    pub kind: OpKind,
    /// Parameters the operator was built with.
    pub r: usize,
    pub d: usize,
    /// `(element index, multiplicity)` in increasing index order.
    pub support: Vec<(usize, u64)>,
    /// Number of draws enumerated; probabilities are `multiplicity / total`.
    pub total: u64,
}

impl NoiseDist {
    /// Enumerates every draw of the noise exactly.
    pub fn exact(kind: OpKind, r: usize, d: usize) -> Result<NoiseDist> {
        kind.check(r, d)?;
        let (gr, gd) = kind.group(r, d);
        let group = PolySpace::new(gr, gd)?;
        group.require_enumerable()?;
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        let mut push = |t: &FnTable| -> Result<()> {
            *counts.entry(group.index_of_table(t)?).or_default() += 1;
            Ok(())
        };
        match kind {
            OpKind::T | OpKind::Tr => {
                let n = pow3(gr);
                for mask in 0..(1u64 << n) {
                    let values = (0..n)
                        .map(|i| {
                            if mask >> i & 1 == 0 {
                                Gf3::ONE
                            } else {
                                Gf3::TWO
                            }
                        })
                        .collect();
                    push(&FnTable::from_values(gr, values)?)?;
                }
            }
            OpKind::Trd => {
                let ps = PolySpace::new(r, d)?;
                let mut tables = Vec::with_capacity(ps.require_enumerable()?);
                ps.for_each_table(|_, t| {
                    tables.push(FnTable::from_values(r, t.to_vec()).expect("3^r"))
                })?;
                for p in &tables {
                    for a in [Gf3::ONE, Gf3::TWO] {
                        push(&square_shift(p, a))?;
                    }
                }
            }
            OpKind::Srd => {
                for lin in independent_rows(d, r) {
                    for code in 0..pow3(d) {
                        let consts: Vec<Gf3> = crate::gf3poly::point_from_index(d, code);
                        for a in [Gf3::ONE, Gf3::TWO] {
                            push(&affine_product(r, &lin, &consts, a))?;
                        }
                    }
                }
            }
        }
        let total = counts.values().sum();
        Ok(NoiseDist {
            kind,
            r,
            d,
            support: counts.into_iter().collect(),
            total,
        })
    }

    pub fn group_space(&self) -> Result<PolySpace> {
        let (gr, gd) = self.kind.group(self.r, self.d);
        PolySpace::new(gr, gd)
    }

    pub fn probability(&self, elem: usize) -> Ratio<u64> {
        let c = self
            .support
            .binary_search_by_key(&elem, |&(e, _)| e)
            .map_or(0, |i| self.support[i].1);
        Ratio::new(c, self.total)
    }

    /// Dense probability vector over the group.
    pub fn weights(&self, group_len: usize) -> Vec<f64> {
        let mut w = vec![0.0; group_len];
        for &(e, c) in &self.support {
            w[e] = c as f64 / self.total as f64;
        }
        w
    }

    /// `eta` and `-eta` always carry equal mass.
    pub fn is_symmetric(&self, group: &PolySpace) -> bool {
        self.support
            .iter()
            .all(|&(e, c)| self.probability(group.neg(e)) == Ratio::new(c, self.total))
    }

    pub fn contains_zero(&self) -> bool {
        self.support.first().is_some_and(|&(e, _)| e == 0)
    }
}

/// All ordered `k`-tuples of linearly independent vectors in `F3^n`, as the rows of a matrix.
pub fn independent_rows(k: usize, n: usize) -> Vec<Mat> {
    let vectors: Vec<Vec<Gf3>> = (1..pow3(n))
        .map(|i| crate::gf3poly::point_from_index(n, i))
        .collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<Gf3>> = Vec::with_capacity(k);
    fn rec(vectors: &[Vec<Gf3>], k: usize, rows: &mut Vec<Vec<Gf3>>, out: &mut Vec<Mat>) {
        if rows.len() == k {
            out.push(Mat::from_rows(rows.clone()).expect("rectangular"));
            return;
        }
        for v in vectors {
            rows.push(v.clone());
            let m = Mat::from_rows(rows.clone()).expect("rectangular");
            if m.rank() == rows.len() {
                rec(vectors, k, rows, out);
            }
            rows.pop();
        }
    }
    rec(&vectors, k, &mut rows, &mut out);
    out
}
