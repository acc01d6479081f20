use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3poly::{FnTable, Gf3, Mat, Poly};

/// `f o M`, i.e. `x -> f(M x)`, expanded and reduced with `x^3 = x`.
pub fn compose_linear(f: &Poly, m: &Mat) -> Result<Poly> {
    let r = f.num_vars();
    if m.rows() != r || m.cols() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: m.rows(),
        });
    }
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    // x_i -> sum_j M_ij x_j
    let forms: Vec<Poly> = (0..r)
        .map(|i| {
            let terms = (0..r).filter(|&j| !m.get(i, j).is_zero()).map(|j| {
                let mut e = vec![0u8; r];
                e[j] = 1;
                (e, m.get(i, j))
            });
            Poly::from_terms(r, 1.min(2 * r), terms).expect("linear terms fit")
        })
        .collect();
    let one = Poly::constant(r, 0, Gf3::ONE);
    let mut out = Poly::zero(r, f.degree_bound());
    for (mono, c) in f.terms() {
        let mut term = one.clone();
        for (i, &e) in mono.exps().iter().enumerate() {
            for _ in 0..e {
                term = term.mul_reduced(&forms[i])?;
            }
        }
        out = out.add(&term.scale(c))?;
    }
    out.with_bound(f.degree_bound())
}

/// `x -> t(M x)` on value tables; the pointwise reference for [`compose_linear`].
pub fn compose_table(t: &FnTable, m: &Mat) -> Result<FnTable> {
    let r = t.num_vars();
    let perm = point_map(r, m)?;
    FnTable::from_values(r, perm.iter().map(|&y| t.get(y)).collect())
}

/// `x -> index of M x` over every point of `F3^r`.
pub fn point_map(r: usize, m: &Mat) -> Result<Vec<usize>> {
    crate::gf3poly::all_points(r)
        .map(|x| Ok(crate::gf3poly::point_index(&m.mul_vec(&x)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UGEdge {
    pub u: String,
    pub v: String,
    /// `pi_{u,v}`: maps a label of `v` to a label of `u`.
    pub matrix: Mat,
}

/// A bipartite Unique Games instance over the labels `F3^r` with invertible
/// linear constraints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UGInstance {
    pub r: usize,
    #[serde(rename = "U")]
    pub u: Vec<String>,
    #[serde(rename = "V")]
    pub v: Vec<String>,
    pub edges: Vec<UGEdge>,
}

/// Index-based view of an instance.
#[derive(Clone, Debug)]
pub struct Adjacency {
    pub u_index: HashMap<String, usize>,
    pub v_index: HashMap<String, usize>,
    /// `(u, v)` index pair of each edge.
    pub edges: Vec<(usize, usize)>,
    /// Edges incident to each `u`.
    pub by_u: Vec<Vec<usize>>,
    /// Edges incident to each `v`.
    pub by_v: Vec<Vec<usize>>,
}

impl UGInstance {
    /// Checks ids, dimensions and invertibility; returns the index view.
    pub fn validate(&self) -> Result<Adjacency> {
        let index = |ids: &[String], side: &str| -> Result<HashMap<String, usize>> {
            let mut m = HashMap::new();
            for (i, id) in ids.iter().enumerate() {
                if m.insert(id.clone(), i).is_some() {
                    return Err(Error::InvalidParameter(format!("duplicate {side} id {id}")));
                }
            }
            Ok(m)
        };
        let u_index = index(&self.u, "U")?;
        let v_index = index(&self.v, "V")?;
        if let Some(id) = self.u.iter().find(|id| v_index.contains_key(*id)) {
            return Err(Error::InvalidParameter(format!("id {id} is on both sides")));
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut by_u = vec![Vec::new(); self.u.len()];
        let mut by_v = vec![Vec::new(); self.v.len()];
        for (i, e) in self.edges.iter().enumerate() {
            let ui = *u_index
                .get(&e.u)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown U vertex {}", e.u)))?;
            let vi = *v_index
                .get(&e.v)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown V vertex {}", e.v)))?;
            if e.matrix.rows() != self.r || e.matrix.cols() != self.r {
                return Err(Error::DimensionMismatch {
                    expected: self.r,
                    got: e.matrix.rows(),
                });
            }
            if !e.matrix.is_invertible() {
                return Err(Error::SingularMatrix);
            }
            edges.push((ui, vi));
            by_u[ui].push(i);
            by_v[vi].push(i);
        }
        Ok(Adjacency {
            u_index,
            v_index,
            edges,
            by_u,
            by_v,
        })
    }

    /// Every `V` vertex has the same degree.
    pub fn is_right_regular(&self) -> bool {
        let mut deg: HashMap<&str, usize> = self.v.iter().map(|v| (v.as_str(), 0)).collect();
        for e in &self.edges {
            *deg.entry(e.v.as_str()).or_default() += 1;
        }
        let mut it = deg.values();
        let first = it.next().copied();
        it.all(|&d| Some(d) == first)
    }
}

/// A partial assignment of labels in `F3^r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub assignments: BTreeMap<String, Vec<Gf3>>,
}

impl Labeling {
    pub fn get(&self, id: &str) -> Option<&[Gf3]> {
        self.assignments.get(id).map(Vec::as_slice)
    }

    pub fn set(&mut self, id: &str, label: Vec<Gf3>) {
        self.assignments.insert(id.to_string(), label);
    }
}

/// `pi_{u,v}(l(v)) = l(u)`; unlabeled endpoints leave the edge unsatisfied.
pub fn edge_satisfied(e: &UGEdge, l: &Labeling) -> Result<bool> {
    match (l.get(&e.u), l.get(&e.v)) {
        (Some(lu), Some(lv)) => Ok(e.matrix.mul_vec(lv)? == lu),
        _ => Ok(false),
    }
}

pub fn satisfied_fraction(inst: &UGInstance, l: &Labeling) -> Result<Ratio<u64>> {
    if inst.edges.is_empty() {
        return Ok(Ratio::from_integer(1));
    }
    let mut ok = 0u64;
    for e in &inst.edges {
        ok += edge_satisfied(e, l)? as u64;
    }
    Ok(Ratio::new(ok, inst.edges.len() as u64))
}

/// Shape of generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub r: usize,
    pub n_u: usize,
    pub n_v: usize,
    /// Neighbours of each `U` vertex.
    pub u_degree: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            r: 2,
            n_u: 3,
            n_v: 6,
            u_degree: 4,
        }
    }
}

fn random_label<R: Rng + ?Sized>(r: usize, rng: &mut R) -> Vec<Gf3> {
    (0..r).map(|_| Gf3::new(rng.gen_range(0..3))).collect()
}

/// `U` ids, `V` ids and the `(u, v)` index pairs of the edges.
type Skeleton = (Vec<String>, Vec<String>, Vec<(usize, usize)>);

fn skeleton<R: Rng + ?Sized>(p: GenParams, rng: &mut R) -> Result<Skeleton> {
    if p.r == 0 || p.u_degree > p.n_v || p.n_u == 0 || p.n_v == 0 {
        return Err(Error::InvalidParameter(format!(
            "bad generator parameters {p:?}"
        )));
    }
    let u: Vec<String> = (0..p.n_u).map(|i| format!("u{i}")).collect();
    let v: Vec<String> = (0..p.n_v).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    let all: Vec<usize> = (0..p.n_v).collect();
    for ui in 0..p.n_u {
        let mut nb: Vec<usize> = all.choose_multiple(rng, p.u_degree).copied().collect();
        nb.sort_unstable();
        pairs.extend(nb.into_iter().map(|vi| (ui, vi)));
    }
    Ok((u, v, pairs))
}

/// A random instance together with a labeling satisfying every edge.
///
/// Planted labels are nonzero so that an invertible map between any two of
/// them exists.
pub fn planted_instance<R: Rng + ?Sized>(
    p: GenParams,
    rng: &mut R,
) -> Result<(UGInstance, Labeling)> {
    let (u, v, pairs) = skeleton(p, rng)?;
    let nonzero = |rng: &mut R| loop {
        let l = random_label(p.r, rng);
        if l.iter().any(|x| !x.is_zero()) {
            break l;
        }
    };
    let mut lab = Labeling::default();
    for id in u.iter().chain(&v) {
        lab.set(id, nonzero(rng));
    }
    let mut edges = Vec::with_capacity(pairs.len());
    for (ui, vi) in pairs {
        let (lu, lv) = (
            lab.get(&u[ui]).unwrap().to_vec(),
            lab.get(&v[vi]).unwrap().to_vec(),
        );
        let matrix = loop {
            let m = Mat::random_invertible(p.r, rng);
            if m.mul_vec(&lv)? == lu {
                break m;
            }
        };
        edges.push(UGEdge {
            u: u[ui].clone(),
            v: v[vi].clone(),
            matrix,
        });
    }
    Ok((
        UGInstance {
            r: p.r,
            u,
            v,
            edges,
        },
        lab,
    ))
}

/// Replaces each constraint by a fresh random invertible matrix with probability `rho`.
pub fn noisy_instance<R: Rng + ?Sized>(inst: &UGInstance, rho: f64, rng: &mut R) -> UGInstance {
    let mut out = inst.clone();
    for e in &mut out.edges {
        if rng.gen::<f64>() < rho {
            e.matrix = Mat::random_invertible(inst.r, rng);
        }
    }
    out
}

/// An instance with uniformly random constraints.
pub fn random_instance<R: Rng + ?Sized>(p: GenParams, rng: &mut R) -> Result<UGInstance> {
    let (u, v, pairs) = skeleton(p, rng)?;
    let edges = pairs
        .into_iter()
        .map(|(ui, vi)| UGEdge {
            u: u[ui].clone(),
            v: v[vi].clone(),
            matrix: Mat::random_invertible(p.r, rng),
        })
        .collect();
    Ok(UGInstance {
        r: p.r,
        u,
        v,
        edges,
    })
}

/// A uniformly random labeling of every vertex.
pub fn random_labeling<R: Rng + ?Sized>(inst: &UGInstance, rng: &mut R) -> Labeling {
    let mut l = Labeling::default();
    for id in inst.u.iter().chain(&inst.v) {
        l.set(id, random_label(inst.r, rng));
    }
    l
}
