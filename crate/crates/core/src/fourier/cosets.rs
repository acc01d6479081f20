use std::io::Write;

use rand::Rng;
use serde::Serialize;

use super::transform::Spectrum;
use crate::error::{Error, Result};
use crate::gf3poly::{dual_degree, FnTable, Gf3, PolySpace};

/// Upper limit on value tables scanned while searching for coset representatives.
pub const COSET_SCAN_BUDGET: u64 = 50_000_000;

/// A minimum-support member of a coset of `P(r, d)^perp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetRep {
    pub beta: FnTable,
    pub support: usize,
    pub coset_id: usize,
}

/// One representative per coset of `F_r / P(r, d)^perp`, indexed by coset id.
///
/// Each representative has minimum support in its coset; ties go to the
/// lexicographically smallest value table.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub r: usize,
    pub d: usize,
    pub reps: Vec<CosetRep>,
}

impl CosetTable {
    pub fn rep(&self, coset: usize) -> &CosetRep {
        &self.reps[coset]
    }

    pub fn support(&self, coset: usize) -> usize {
        self.reps[coset].support
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Writes `coset_id,support,re,im` rows for a spectrum.
    pub fn write_spectrum_csv<W: Write>(&self, spectrum: &Spectrum, out: W) -> Result<()> {
        if spectrum.coeffs.len() != self.reps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.reps.len(),
                got: spectrum.coeffs.len(),
            });
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["coset_id", "support", "re", "im"])?;
        for (rep, c) in self.reps.iter().zip(&spectrum.coeffs) {
            w.write_record([
                rep.coset_id.to_string(),
                rep.support.to_string(),
                format!("{:.17e}", c.re),
                format!("{:.17e}", c.im),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Calls `visit(support points, values)` for every table of support exactly
/// `w`, with supports in lexicographic order.
fn for_each_weight<F: FnMut(&[usize], &[Gf3])>(n_points: usize, w: usize, mut visit: F) {
    if w > n_points {
        return;
    }
    let mut combo: Vec<usize> = (0..w).collect();
    let mut vals = vec![Gf3::ONE; w];
    loop {
        for mask in 0..(1u64 << w) {
            for (i, v) in vals.iter_mut().enumerate() {
                *v = if mask >> i & 1 == 0 {
                    Gf3::ONE
                } else {
                    Gf3::TWO
                };
            }
            visit(&combo, &vals);
        }
        // advance to the next w-subset; stop after the last one
        let Some(i) = (0..w).rev().find(|&i| combo[i] < n_points - w + i) else {
            return;
        };
        combo[i] += 1;
        for j in i + 1..w {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

/// Minimum-support coset representatives of `F_r / P(r, d)^perp`.
///
/// Tables are scanned by increasing support, so the first weight at which a
/// coset is hit is its minimum support; within that weight the smallest table wins.
pub fn coset_reps(r: usize, d: usize) -> Result<CosetTable> {
    let space = PolySpace::new(r, d)?;
    let n_cosets = space.require_enumerable()?;
    let n_points = space.num_points();
    // coset id contributed by value c at point x
    let unit: Vec<[usize; 3]> = (0..n_points)
        .map(|x| {
            let one = space
                .coset_id(&FnTable::indicator_at(r, x, Gf3::ONE))
                .expect("enumerable");
            [0, one, space.neg(one)]
        })
        .collect();
    let mut best: Vec<Option<FnTable>> = vec![None; n_cosets];
    let mut found = 0usize;
    let mut scanned = 0u64;
    for w in 0..=n_points {
        scanned += binomial(n_points, w).saturating_mul(1 << w.min(63));
        if scanned > COSET_SCAN_BUDGET {
            return Err(Error::TooLarge {
                what: format!("coset scan of F_{r} / P({r}, {d})^perp"),
                dim: space.dim(),
                limit: crate::gf3poly::ENUM_DIM_LIMIT,
            });
        }
        let mut hit_this_weight: Vec<usize> = Vec::new();
        for_each_weight(n_points, w, |pts, vals| {
            let id = pts.iter().zip(vals).fold(0, |acc, (&x, v)| {
                space.add(acc, unit[x][v.value() as usize])
            });
            match &best[id] {
                Some(t) if t.support() < w => {}
                Some(t) => {
                    let cand = sparse_table(r, pts, vals);
                    if cand < *t {
                        best[id] = Some(cand);
                    }
                }
                None => {
                    best[id] = Some(sparse_table(r, pts, vals));
                    hit_this_weight.push(id);
                }
            }
        });
        found += hit_this_weight.len();
        if found == n_cosets {
            break;
        }
    }
    let reps = best
        .into_iter()
        .enumerate()
        .map(|(coset_id, t)| {
            let beta = t.expect("every coset is reached");
            CosetRep {
                support: beta.support(),
                beta,
                coset_id,
            }
        })
        .collect();
    Ok(CosetTable { r, d, reps })
}

fn sparse_table(r: usize, pts: &[usize], vals: &[Gf3]) -> FnTable {
    let mut t = FnTable::zeros(r);
    for (&x, &v) in pts.iter().zip(vals) {
        t.set(x, v);
    }
    t
}

/// Every function of support at most `k` on `F3^r`, in order of increasing support.
pub fn small_support_functions(r: usize, k: usize) -> Vec<FnTable> {
    let n = crate::gf3poly::pow3(r);
    let mut out = Vec::new();
    for w in 0..=k.min(n) {
        for_each_weight(n, w, |pts, vals| out.push(sparse_table(r, pts, vals)));
    }
    out
}

/// Result of a distance-to-dual computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualDistance {
    pub distance: usize,
    /// False when only a random sample of the dual was scanned, in which
    /// case `distance` is an upper bound.
    pub exact: bool,
}

/// `Delta(beta, P(r, d)^perp)` by enumerating the dual space.
pub fn distance_to_dual(beta: &FnTable, r: usize, d: usize) -> Result<usize> {
    if beta.num_vars() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: beta.num_vars(),
        });
    }
    let Some(dd) = dual_degree(r, d)? else {
        return Ok(beta.support());
    };
    let dual = PolySpace::new(r, dd)?;
    let mut best = usize::MAX;
    dual.for_each_table(|_, g| {
        let dist = beta.values().iter().zip(g).filter(|(a, b)| a != b).count();
        best = best.min(dist);
    })?;
    Ok(best)
}

/// Like [`distance_to_dual`], falling back to `samples` random dual elements
/// (plus zero) when the dual is too large to enumerate.
pub fn distance_to_dual_sampled<R: Rng + ?Sized>(
    beta: &FnTable,
    r: usize,
    d: usize,
    samples: usize,
    rng: &mut R,
) -> Result<DualDistance> {
    match distance_to_dual(beta, r, d) {
        Ok(distance) => Ok(DualDistance {
            distance,
            exact: true,
        }),
        Err(Error::TooLarge { .. }) => {
            let dd = dual_degree(r, d)?.expect("zero dual is always enumerable");
            let dual = PolySpace::new(r, dd)?;
            let mut best = beta.support();
            for _ in 0..samples {
                let g = dual.table_of_coeffs(&dual.random_coeffs(rng));
                best = best.min(beta.distance(&g)?);
            }
            Ok(DualDistance {
                distance: best,
                exact: false,
            })
        }
        Err(e) => Err(e),
    }
}
