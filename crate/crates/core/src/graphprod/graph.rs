use std::io::Write;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cayley::{NoiseDist, OpKind};
use crate::error::{Error, Result};
use crate::fourier::point_coset;
use crate::gf3poly::{Gf3, PolySpace};

/// The graph on `P(r, 2d)` with `W(f, f') = Pr_{p, a}[f' = f + a(p^2 + 1)]`,
/// `p` uniform in `P(r, d)` and `a` uniform in `{1, 2}`.
#[derive(Clone, Debug)]
pub struct DerandGraph {
    pub r: usize,
    pub d: usize,
    space: PolySpace,
    noise: NoiseDist,
    /// Multiplicity of each group element as a difference `f' - f`.
    mult: Vec<u64>,
}

impl DerandGraph {
    pub fn new(r: usize, d: usize) -> Result<DerandGraph> {
        let noise = NoiseDist::exact(OpKind::Trd, r, d)?;
        let space = noise.group_space()?;
        let mut mult = vec![0u64; space.len()];
        for &(e, c) in &noise.support {
            mult[e] = c;
        }
        if mult[0] != 0 {
            return Err(Error::InvalidParameter("noise support contains 0".into()));
        }
        Ok(DerandGraph {
            r,
            d,
            space,
            noise,
            mult,
        })
    }

    pub fn space(&self) -> &PolySpace {
        &self.space
    }

    pub fn noise(&self) -> &NoiseDist {
        &self.noise
    }

    pub fn num_vertices(&self) -> usize {
        self.space.len()
    }

    /// `2 |P(r, d)|`, the common denominator of all edge weights.
    pub fn denominator(&self) -> u64 {
        self.noise.total
    }

    pub fn edge_weight(&self, f: usize, g: usize) -> Ratio<u64> {
        Ratio::new(self.mult[self.space.sub(g, f)], self.noise.total)
    }

    pub fn adjacent(&self, f: usize, g: usize) -> bool {
        self.mult[self.space.sub(g, f)] > 0
    }

    /// Distinct neighbours of `f`, in noise-support order.
    pub fn neighbors(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        self.noise
            .support
            .iter()
            .map(move |&(e, _)| self.space.add(f, e))
    }

    /// `{f : f(x) = a}`.
    pub fn dictator_set(&self, x: usize, a: Gf3) -> Result<VertexSubset> {
        let id = point_coset(&self.space, x)?;
        let mut s = VertexSubset::empty(self);
        for f in 0..self.num_vertices() {
            if self.space.pairing(id, f) == a.value() {
                s.insert(f);
            }
        }
        Ok(s)
    }

    /// Every dictator set, ordered by point then value.
    pub fn dictator_sets(&self) -> Result<Vec<((usize, Gf3), VertexSubset)>> {
        let mut out = Vec::new();
        for x in 0..self.space.num_points() {
            for a in Gf3::ALL {
                out.push(((x, a), self.dictator_set(x, a)?));
            }
        }
        Ok(out)
    }

    /// First adjacent pair inside `s`, if any.
    pub fn violation(&self, s: &VertexSubset) -> Option<(usize, usize)> {
        s.iter()
            .find_map(|f| self.neighbors(f).find(|&g| s.contains(g)).map(|g| (f, g)))
    }

    pub fn is_independent(&self, s: &VertexSubset) -> bool {
        self.violation(s).is_none()
    }

    /// Every vertex outside `s` has a neighbour in `s`.
    pub fn is_maximal(&self, s: &VertexSubset) -> bool {
        (0..self.num_vertices())
            .filter(|&f| !s.contains(f))
            .all(|f| self.neighbors(f).any(|g| s.contains(g)))
    }

    /// Writes `f_index,g_index,numerator,denominator` for every ordered edge.
    pub fn write_edges_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["f_index", "g_index", "numerator", "denominator"])?;
        let den = self.noise.total.to_string();
        for f in 0..self.num_vertices() {
            let mut row: Vec<(usize, u64)> = self
                .noise
                .support
                .iter()
                .map(|&(e, c)| (self.space.add(f, e), c))
                .collect();
            row.sort_unstable();
            for (g, c) in row {
                w.write_record([f.to_string(), g.to_string(), c.to_string(), den.clone()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Compact description of the noise support.
    pub fn noise_json(&self) -> NoiseJson {
        NoiseJson {
            r: self.r,
            d: self.d,
            denominator: self.noise.total,
            support: self
                .noise
                .support
                .iter()
                .map(|&(e, c)| NoiseEntry {
                    index: e,
                    numerator: c,
                    poly: self.space.poly(e),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NoiseJson {
    pub r: usize,
    pub d: usize,
    pub denominator: u64,
    pub support: Vec<NoiseEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NoiseEntry {
    pub index: usize,
    pub numerator: u64,
    pub poly: crate::gf3poly::Poly,
}

/// A set of vertices of a [`DerandGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SubsetJson", try_from = "SubsetJson")]
pub struct VertexSubset {
    pub r: usize,
    pub d: usize,
    members: Vec<bool>,
    len: usize,
}

#[derive(Serialize, Deserialize)]
struct SubsetJson {
    r: usize,
    d: usize,
    size: usize,
    members: Vec<usize>,
}

impl From<VertexSubset> for SubsetJson {
    fn from(s: VertexSubset) -> Self {
        SubsetJson {
            r: s.r,
            d: s.d,
            size: s.members.len(),
            members: s.iter().collect(),
        }
    }
}

impl TryFrom<SubsetJson> for VertexSubset {
    type Error = Error;

    fn try_from(j: SubsetJson) -> Result<Self> {
        let mut s = VertexSubset {
            r: j.r,
            d: j.d,
            members: vec![false; j.size],
            len: 0,
        };
        for f in j.members {
            if f >= j.size {
                return Err(Error::InvalidParameter(format!("vertex {f} out of range")));
            }
            s.insert(f);
        }
        Ok(s)
    }
}

impl VertexSubset {
    pub fn empty(g: &DerandGraph) -> VertexSubset {
        VertexSubset {
            r: g.r,
            d: g.d,
            members: vec![false; g.num_vertices()],
            len: 0,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(g: &DerandGraph, it: I) -> VertexSubset {
        let mut s = VertexSubset::empty(g);
        for f in it {
            s.insert(f);
        }
        s
    }

    pub fn contains(&self, f: usize) -> bool {
        self.members[f]
    }

    pub fn insert(&mut self, f: usize) {
        if !self.members[f] {
            self.members[f] = true;
            self.len += 1;
        }
    }

    pub fn remove(&mut self, f: usize) {
        if self.members[f] {
            self.members[f] = false;
            self.len -= 1;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    /// `|S| / |V|`
    pub fn fraction(&self) -> Ratio<u64> {
        Ratio::new(self.len as u64, self.members.len() as u64)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
    }

    /// Indicator as real values in vertex order.
    pub fn indicator(&self) -> Vec<f64> {
        self.members
            .iter()
            .map(|&m| if m { 1.0 } else { 0.0 })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_are_a_distribution() {
        let g = DerandGraph::new(2, 1).unwrap();
        assert_eq!(g.denominator(), 54);
        for f in [0, 5, 100, 728] {
            let total: Ratio<u64> = (0..g.num_vertices()).map(|h| g.edge_weight(f, h)).sum();
            assert_eq!(total, Ratio::from_integer(1));
            assert_eq!(g.edge_weight(f, f), Ratio::from_integer(0));
        }
        // f + 1 is reached by p = 0, a = 1
        assert!(g.edge_weight(0, 1) > Ratio::from_integer(0));
    }

    #[test]
    fn subset_json_roundtrip() {
        let g = DerandGraph::new(1, 1).unwrap();
        let s = VertexSubset::from_indices(&g, [0, 4, 9]);
        let j = serde_json::to_string(&s).unwrap();
        let back: VertexSubset = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
