use rand::seq::SliceRandom;

use super::graph::{DerandGraph, VertexSubset};
use crate::error::{Error, Result};

/// Largest vertex-space dimension accepted by [`exhaustive_mis`].
pub const MIS_DIM_LIMIT: usize = 7;

/// Greedy maximal independent set, scanning vertices in `order`.
pub fn greedy_in_order(g: &DerandGraph, order: &[usize]) -> VertexSubset {
    let mut s = VertexSubset::empty(g);
    let mut blocked = vec![false; g.num_vertices()];
    for &f in order {
        if blocked[f] || s.contains(f) {
            continue;
        }
        s.insert(f);
        blocked[f] = true;
        for h in g.neighbors(f) {
            blocked[h] = true;
        }
    }
    // vertices missing from `order` are still offered, so the result is maximal
    for f in 0..g.num_vertices() {
        if !blocked[f] {
            s.insert(f);
            blocked[f] = true;
            for h in g.neighbors(f) {
                blocked[h] = true;
            }
        }
    }
    s
}

/// Greedy maximal independent set over a seeded random vertex order.
pub fn greedy_independent_set(g: &DerandGraph, seed: u64) -> VertexSubset {
    let mut order: Vec<usize> = (0..g.num_vertices()).collect();
    order.shuffle(&mut crate::rng::seeded(seed));
    greedy_in_order(g, &order)
}

/// A maximum independent set by branch and bound over the triangles
/// `{f, f+1, f+2}`: each triangle contributes at most one vertex, which gives
/// the pruning bound.
pub fn exhaustive_mis(g: &DerandGraph) -> Result<VertexSubset> {
    let dim = g.space().dim();
    if dim > MIS_DIM_LIMIT {
        return Err(Error::TooLarge {
            what: "exhaustive maximum independent set".into(),
            dim,
            limit: MIS_DIM_LIMIT,
        });
    }
    let n = g.num_vertices();
    let s = g.space();
    let mut tri_of = vec![usize::MAX; n];
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    for f in 0..n {
        if tri_of[f] == usize::MAX {
            let t = [f, s.add(f, 1), s.add(f, 2)];
            for &v in &t {
                tri_of[v] = triangles.len();
            }
            triangles.push(t);
        }
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|f| g.neighbors(f).collect()).collect();
    let order: Vec<usize> = (0..n).collect();
    let mut best: Vec<usize> = greedy_in_order(g, &order).iter().collect();
    let mut state = Search {
        triangles: &triangles,
        adj: &adj,
        blocked: vec![0u32; n],
        chosen: Vec::new(),
        best: &mut best,
    };
    state.go(0);
    Ok(VertexSubset::from_indices(g, best))
}

struct Search<'a> {
    triangles: &'a [[usize; 3]],
    adj: &'a [Vec<usize>],
    /// number of chosen neighbours of each vertex
    blocked: Vec<u32>,
    chosen: Vec<usize>,
    best: &'a mut Vec<usize>,
}

impl Search<'_> {
    /// Returns true once the triangle bound is met, which ends the search.
    fn go(&mut self, i: usize) -> bool {
        if self.best.len() == self.triangles.len() {
            return true;
        }
        if i == self.triangles.len() {
            if self.chosen.len() > self.best.len() {
                *self.best = self.chosen.clone();
            }
            return self.best.len() == self.triangles.len();
        }
        let open = self.triangles[i..]
            .iter()
            .filter(|t| t.iter().any(|&v| self.blocked[v] == 0))
            .count();
        if self.chosen.len() + open <= self.best.len() {
            return false;
        }
        for &v in &self.triangles[i] {
            if self.blocked[v] != 0 {
                continue;
            }
            self.chosen.push(v);
            for &h in &self.adj[v] {
                self.blocked[h] += 1;
            }
            let done = self.go(i + 1);
            for &h in &self.adj[v] {
                self.blocked[h] -= 1;
            }
            self.chosen.pop();
            if done {
                return true;
            }
        }
        self.go(i + 1)
    }
}
