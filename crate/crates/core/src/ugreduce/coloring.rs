use std::io::Write;

use serde::Serialize;

use super::instance::{edge_satisfied, point_map, Adjacency, Labeling, UGInstance};
use crate::error::{Error, Result};
use crate::gf3poly::{point_index, FnTable, PolySpace};
use crate::graphprod::DerandGraph;

/// Largest `|V| * |P(r, 2d)|` for which edges are listed explicitly.
pub const EXPLICIT_VERTEX_LIMIT: usize = 1 << 20;

/// The coloring graph on `V x P(r, 2d)`: `(v, f) ~ (w, g)` when some `u` is
/// adjacent to both and `g o pi_{u,w}^-1 - f o pi_{u,v}^-1` is a noise element.
///
/// Edges are answered by an oracle; nothing is materialized beyond one
/// permutation of `P(r, 2d)` per constraint.
#[derive(Clone, Debug)]
pub struct ColoringInstance {
    pub r: usize,
    pub d: usize,
    pub instance: UGInstance,
    adj: Adjacency,
    graph: DerandGraph,
    /// Per edge: `f -> f o pi^-1` and its inverse `h -> h o pi`, on element indices.
    compose_inv: Vec<Vec<usize>>,
    compose: Vec<Vec<usize>>,
}

/// A vertex of the coloring graph: `(index into V, element index of P(r, 2d))`.
pub type CVertex = (usize, usize);

/// Element-index permutation `f -> f o M` of an enumerable space.
fn compose_perm(space: &PolySpace, m: &crate::gf3poly::Mat) -> Result<Vec<usize>> {
    let pm = point_map(space.r(), m)?;
    let mut out = vec![0; space.len()];
    let mut err = None;
    space.for_each_table(|i, t| {
        if err.is_some() {
            return;
        }
        let values = pm.iter().map(|&y| t[y]).collect();
        let table = FnTable::from_values(space.r(), values).expect("3^r values");
        match space.index_of_table(&table) {
            Ok(j) => out[i] = j,
            Err(e) => err = Some(e),
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

impl ColoringInstance {
    pub fn new(instance: &UGInstance, d: usize) -> Result<ColoringInstance> {
        let adj = instance.validate()?;
        let graph = DerandGraph::new(instance.r, d)?;
        let mut compose_inv = Vec::with_capacity(instance.edges.len());
        let mut compose = Vec::with_capacity(instance.edges.len());
        for e in &instance.edges {
            compose_inv.push(compose_perm(graph.space(), &e.matrix.inverse()?)?);
            compose.push(compose_perm(graph.space(), &e.matrix)?);
        }
        Ok(ColoringInstance {
            r: instance.r,
            d,
            instance: instance.clone(),
            adj,
            graph,
            compose_inv,
            compose,
        })
    }

    pub fn graph(&self) -> &DerandGraph {
        &self.graph
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adj
    }

    pub fn cloud_size(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn num_vertices(&self) -> usize {
        self.instance.v.len() * self.cloud_size()
    }

    /// Element index of `f o pi_e^-1`.
    pub fn pull(&self, edge: usize, f: usize) -> usize {
        self.compose_inv[edge][f]
    }

    /// Element index of `h o pi_e`, the inverse of [`Self::pull`].
    pub fn push(&self, edge: usize, h: usize) -> usize {
        self.compose[edge][h]
    }

    pub fn is_edge(&self, a: CVertex, b: CVertex) -> bool {
        let (v, f) = a;
        let (w, g) = b;
        self.adj.by_v[v].iter().any(|&ev| {
            let u = self.adj.edges[ev].0;
            self.adj.by_u[u].iter().any(|&ew| {
                self.adj.edges[ew].1 == w && self.graph.adjacent(self.pull(ev, f), self.pull(ew, g))
            })
        })
    }

    /// Every neighbour of `(v, f)`, sorted and without repeats.
    pub fn neighbors(&self, a: CVertex) -> Vec<CVertex> {
        let (v, f) = a;
        let mut out = Vec::new();
        for &ev in &self.adj.by_v[v] {
            let u = self.adj.edges[ev].0;
            let h = self.pull(ev, f);
            for &ew in &self.adj.by_u[u] {
                let w = self.adj.edges[ew].1;
                for g2 in self.graph.neighbors(h) {
                    out.push((w, self.push(ew, g2)));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All edges `{a, b}` with `a < b`, sorted.
    pub fn explicit_edges(&self) -> Result<Vec<(CVertex, CVertex)>> {
        if self.num_vertices() > EXPLICIT_VERTEX_LIMIT {
            return Err(Error::TooLarge {
                what: "explicit coloring-graph edge list".into(),
                dim: self.graph.space().dim(),
                limit: EXPLICIT_VERTEX_LIMIT,
            });
        }
        let mut out = Vec::new();
        for v in 0..self.instance.v.len() {
            for f in 0..self.cloud_size() {
                for b in self.neighbors((v, f)) {
                    if (v, f) < b {
                        out.push(((v, f), b));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletenessReport {
    pub colored_vertices: usize,
    pub edges_checked: usize,
    pub violations: usize,
    /// Edge-by-edge checks of `f(l(v)) = (f o pi_{u,v}^-1)(l(u))`.
    pub identity_checks: usize,
    pub identity_failures: usize,
    pub proper: bool,
}

/// The coloring `(v, f) -> f(l(v))` for `v` in `s`, with a validity report.
#[derive(Clone, Debug)]
pub struct Coloring {
    pub vertices: Vec<usize>,
    /// `colors[i][f]` for `vertices[i]`.
    pub colors: Vec<Vec<u8>>,
    pub report: CompletenessReport,
}

impl Coloring {
    /// Writes `v_id,f_index,color` rows.
    pub fn write_csv<W: Write>(&self, c: &ColoringInstance, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["v_id", "f_index", "color"])?;
        for (i, &v) in self.vertices.iter().enumerate() {
            for (f, col) in self.colors[i].iter().enumerate() {
                w.write_record([c.instance.v[v].clone(), f.to_string(), col.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Colors `S x P(r, 2d)` by `(v, f) -> f(l(v))` and checks every edge inside it.
///
/// Fails when `l` leaves an edge at a vertex of `S` unsatisfied.
pub fn completeness_color(c: &ColoringInstance, l: &Labeling, s: &[String]) -> Result<Coloring> {
    let inst = &c.instance;
    let mut in_s = vec![false; inst.v.len()];
    for id in s {
        let vi = *c
            .adj
            .v_index
            .get(id)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown V vertex {id}")))?;
        in_s[vi] = true;
    }
    for e in &inst.edges {
        if in_s[c.adj.v_index[&e.v]] && !edge_satisfied(e, l)? {
            return Err(Error::UnsatisfiedEdge {
                u: e.u.clone(),
                v: e.v.clone(),
            });
        }
    }
    let space = c.graph.space();
    let vertices: Vec<usize> = (0..inst.v.len()).filter(|&v| in_s[v]).collect();
    let mut color_of = vec![Vec::new(); inst.v.len()];
    let mut colors = Vec::with_capacity(vertices.len());
    for &v in &vertices {
        let lv = l.get(&inst.v[v]).expect("checked above");
        let id = crate::fourier::point_coset(space, point_index(lv))?;
        let col: Vec<u8> = (0..space.len()).map(|f| space.pairing(id, f)).collect();
        color_of[v] = col.clone();
        colors.push(col);
    }
    let mut report = CompletenessReport {
        colored_vertices: vertices.len() * space.len(),
        edges_checked: 0,
        violations: 0,
        identity_checks: 0,
        identity_failures: 0,
        proper: true,
    };
    // f(l(v)) = (f o pi^-1)(l(u)) because pi(l(v)) = l(u)
    for (ei, e) in inst.edges.iter().enumerate() {
        let v = c.adj.v_index[&e.v];
        if !in_s[v] {
            continue;
        }
        let lu = l.get(&e.u).expect("edge satisfied");
        let idu = crate::fourier::point_coset(space, point_index(lu))?;
        for (f, &col) in color_of[v].iter().enumerate() {
            report.identity_checks += 1;
            if space.pairing(idu, c.pull(ei, f)) != col {
                report.identity_failures += 1;
            }
        }
    }
    for &v in &vertices {
        for f in 0..space.len() {
            for (w, g) in c.neighbors((v, f)) {
                if !in_s[w] || (w, g) < (v, f) {
                    continue;
                }
                report.edges_checked += 1;
                if color_of[v][f] == color_of[w][g] {
                    report.violations += 1;
                }
            }
        }
    }
    report.proper = report.violations == 0 && report.identity_failures == 0;
    Ok(Coloring {
        vertices,
        colors,
        report,
    })
}
