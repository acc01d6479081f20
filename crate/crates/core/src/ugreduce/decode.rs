use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::coloring::{CVertex, ColoringInstance};
use super::instance::{satisfied_fraction, Labeling};
use crate::error::{Error, Result};
use crate::fourier::{fourier_transform, influences, GroupFn};
use crate::gf3poly::{point_from_index, point_index, Gf3};

/// A set of coloring-graph vertices, one membership vector per `V` vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloudSubset {
    pub members: Vec<Vec<bool>>,
}

impl CloudSubset {
    pub fn empty(c: &ColoringInstance) -> CloudSubset {
        CloudSubset {
            members: vec![vec![false; c.cloud_size()]; c.instance.v.len()],
        }
    }

    pub fn contains(&self, a: CVertex) -> bool {
        self.members[a.0][a.1]
    }

    pub fn insert(&mut self, a: CVertex) {
        self.members[a.0][a.1] = true;
    }

    pub fn len(&self) -> usize {
        self.members
            .iter()
            .map(|m| m.iter().filter(|&&b| b).count())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `{(v, f) : f(l(v)) = color}` for every labeled `v`.
    pub fn from_labeling(c: &ColoringInstance, l: &Labeling, color: Gf3) -> Result<CloudSubset> {
        let space = c.graph().space();
        let mut s = CloudSubset::empty(c);
        for (vi, id) in c.instance.v.iter().enumerate() {
            if let Some(lab) = l.get(id) {
                let pc = crate::fourier::point_coset(space, point_index(lab))?;
                for f in 0..space.len() {
                    if space.pairing(pc, f) == color.value() {
                        s.insert((vi, f));
                    }
                }
            }
        }
        Ok(s)
    }

    /// First adjacent pair inside the set.
    pub fn violation(&self, c: &ColoringInstance) -> Option<(CVertex, CVertex)> {
        (0..self.members.len())
            .flat_map(|v| (0..c.cloud_size()).map(move |f| (v, f)))
            .filter(|&a| self.contains(a))
            .find_map(|a| {
                c.neighbors(a)
                    .into_iter()
                    .find(|&b| self.contains(b))
                    .map(|b| (a, b))
            })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexDecode {
    pub id: String,
    pub mean: f64,
    pub in_j: bool,
    /// Points `x` (as label vectors) with `Inf_x^{<=k}(I_v) > delta`.
    pub candidates: Vec<Vec<Gf3>>,
    pub influence_sum: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecodeReport {
    pub mu: f64,
    pub delta: f64,
    pub k: usize,
    pub vertices: Vec<VertexDecode>,
    pub j_size: usize,
    /// `k / delta`
    pub list_bound: f64,
    pub list_bound_holds: bool,
    /// `(u, v, w)` triples with `v, w` in `J`.
    pub claim_triples: usize,
    pub claim_failures: usize,
    pub trials: usize,
    pub mean_satisfied: f64,
    pub min_satisfied: f64,
    pub max_satisfied: f64,
}

/// Decodes an independent set of the coloring graph into labelings of the
/// Unique Games instance and measures how many constraints they satisfy.
///
/// `J` holds the `v` whose slice has density at least `mu / 2`; each `v` in
/// `J` gets the candidate list of points with degree-`k` influence above
/// `delta`. Each trial labels `v` in `J` from its list and each `u` through a
/// random neighbour `w` in `J` as `pi_{u,w}(a)` for a random candidate `a` of `w`.
#[allow(clippy::too_many_arguments)]
pub fn soundness_decode(
    c: &ColoringInstance,
    indep: &CloudSubset,
    mu: f64,
    delta: f64,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<DecodeReport> {
    if let Some((a, b)) = indep.violation(c) {
        return Err(Error::NotIndependent(
            format!("({}, {})", c.instance.v[a.0], a.1),
            format!("({}, {})", c.instance.v[b.0], b.1),
        ));
    }
    if delta <= 0.0 {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    let space = c.graph().space();
    let inst = &c.instance;
    let r = inst.r;
    let cand_idx: Vec<Result<(f64, Vec<usize>, f64)>> = indep
        .members
        .par_iter()
        .map(|m| {
            let vals: Vec<f64> = m.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let spec = fourier_transform(space, &GroupFn::from_real(space, &vals)?)?;
            let inf = influences(space, &spec, k)?;
            let list = (0..inf.len()).filter(|&x| inf[x] > delta).collect();
            Ok((mean, list, inf.iter().sum()))
        })
        .collect();
    let mut vertices = Vec::with_capacity(inst.v.len());
    let mut lists: Vec<Option<Vec<usize>>> = Vec::with_capacity(inst.v.len());
    for (vi, res) in cand_idx.into_iter().enumerate() {
        let (mean, list, influence_sum) = res?;
        let in_j = mean >= mu / 2.0;
        vertices.push(VertexDecode {
            id: inst.v[vi].clone(),
            mean,
            in_j,
            candidates: if in_j {
                list.iter().map(|&x| point_from_index(r, x)).collect()
            } else {
                Vec::new()
            },
            influence_sum,
        });
        lists.push(in_j.then_some(list));
    }
    let list_bound = k as f64 / delta;
    let list_bound_holds = lists.iter().flatten().all(|l| l.len() as f64 <= list_bound);

    let adj = c.adjacency();
    let mut claim_triples = 0;
    let mut claim_failures = 0;
    for u in 0..inst.u.len() {
        for &ev in &adj.by_u[u] {
            for &ew in &adj.by_u[u] {
                let (v, w) = (adj.edges[ev].1, adj.edges[ew].1);
                let (Some(lv), Some(lw)) = (&lists[v], &lists[w]) else {
                    continue;
                };
                if ev >= ew {
                    continue;
                }
                claim_triples += 1;
                let image = |e: usize, x: usize| -> Vec<Gf3> {
                    inst.edges[e]
                        .matrix
                        .mul_vec(&point_from_index(r, x))
                        .expect("r coordinates")
                };
                let ok = lv
                    .iter()
                    .any(|&a| lw.iter().any(|&b| image(ev, a) == image(ew, b)));
                claim_failures += (!ok) as usize;
            }
        }
    }

    let fractions: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = crate::rng::stream(seed, trial as u64);
            let mut lab = Labeling::default();
            let mut chosen: Vec<Option<usize>> = vec![None; inst.v.len()];
            for (vi, l) in lists.iter().enumerate() {
                if let Some(x) = l.as_ref().and_then(|l| l.choose(&mut rng)) {
                    chosen[vi] = Some(*x);
                    lab.set(&inst.v[vi], point_from_index(r, *x));
                }
            }
            for u in 0..inst.u.len() {
                let options: Vec<usize> = adj.by_u[u]
                    .iter()
                    .copied()
                    .filter(|&e| {
                        lists[adj.edges[e].1]
                            .as_ref()
                            .is_some_and(|l| !l.is_empty())
                    })
                    .collect();
                if options.is_empty() {
                    continue;
                }
                let e = options[rng.gen_range(0..options.len())];
                let w = adj.edges[e].1;
                let l = lists[w].as_ref().expect("w in J");
                let a = l[rng.gen_range(0..l.len())];
                let label = inst.edges[e]
                    .matrix
                    .mul_vec(&point_from_index(r, a))
                    .expect("r coordinates");
                lab.set(&inst.u[u], label);
            }
            let frac = satisfied_fraction(inst, &lab).expect("valid labeling");
            *frac.numer() as f64 / *frac.denom() as f64
        })
        .collect();
    let n = fractions.len().max(1) as f64;
    Ok(DecodeReport {
        mu,
        delta,
        k,
        j_size: lists.iter().filter(|l| l.is_some()).count(),
        vertices,
        list_bound,
        list_bound_holds,
        claim_triples,
        claim_failures,
        trials,
        mean_satisfied: fractions.iter().sum::<f64>() / n,
        min_satisfied: fractions.iter().copied().fold(f64::INFINITY, f64::min),
        max_satisfied: fractions.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}
