//! The split graph: every vertex `v` becomes an edge `v' -> v''` carrying `w(v)`.

use num_rational::BigRational;

use super::{PlanarNetwork, Point, Vertex, WeightMode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitEdgeClass {
    Split,
    Ordinary,
    Extra,
}

#[derive(Debug, Clone)]
pub struct SplitNetwork {
    /// Edge-weighted; sources are the new terminals `ŝ_i`, sinks `t̂_j`.
    pub network: PlanarNetwork,
    pub classes: Vec<SplitEdgeClass>,
    /// Origin vertex in `G` for each vertex of the split graph (`None` for `ŝ`, `t̂`).
    pub origin: Vec<Option<usize>>,
    pub in_copy: Vec<usize>,
    pub out_copy: Vec<usize>,
    pub split_edge: Vec<usize>,
}

pub fn split_vertices(g: &PlanarNetwork) -> Result<SplitNetwork> {
    if g.weight_mode != WeightMode::Vertex {
        return Err(Error::InvalidNetwork("split needs a vertex-weighted network".into()));
    }
    let four = BigRational::from_integer(4.into());
    let one = BigRational::from_integer(1.into());
    let mut vertices = Vec::new();
    let mut origin = Vec::new();
    let mut in_copy = Vec::new();
    let mut out_copy = Vec::new();
    for (i, v) in g.vertices.iter().enumerate() {
        let base = v.pos.scale(&four);
        in_copy.push(vertices.len());
        vertices.push(Vertex {
            id: format!("{}'", v.id),
            pos: base.clone(),
        });
        origin.push(Some(i));
        out_copy.push(vertices.len());
        vertices.push(Vertex {
            id: format!("{}''", v.id),
            pos: base.add(&Point::new(one.clone(), one.clone())),
        });
        origin.push(Some(i));
    }
    let mut edges = Vec::new();
    let mut classes = Vec::new();
    let mut weights = Vec::new();
    let mut split_edge = Vec::new();
    for i in 0..g.vertices.len() {
        split_edge.push(edges.len());
        edges.push((in_copy[i], out_copy[i]));
        classes.push(SplitEdgeClass::Split);
        weights.push(g.weights[i].clone());
    }
    for &(u, v) in &g.edges {
        edges.push((out_copy[u], in_copy[v]));
        classes.push(SplitEdgeClass::Ordinary);
        weights.push(None);
    }
    let mut sources = Vec::new();
    for (k, &s) in g.sources.iter().enumerate() {
        let hat = vertices.len();
        vertices.push(Vertex {
            id: format!("s^{}", k + 1),
            pos: g.vertices[s].pos.scale(&four).sub(&Point::new(one.clone(), one.clone())),
        });
        origin.push(None);
        edges.push((hat, in_copy[s]));
        classes.push(SplitEdgeClass::Extra);
        weights.push(None);
        sources.push(hat);
    }
    let mut sinks = Vec::new();
    let two = BigRational::from_integer(2.into());
    for (k, &t) in g.sinks.iter().enumerate() {
        let hat = vertices.len();
        vertices.push(Vertex {
            id: format!("t^{}", k + 1),
            pos: g.vertices[t].pos.scale(&four).add(&Point::new(two.clone(), two.clone())),
        });
        origin.push(None);
        edges.push((out_copy[t], hat));
        classes.push(SplitEdgeClass::Extra);
        weights.push(None);
        sinks.push(hat);
    }
    let mut network = PlanarNetwork::new(vertices, edges, sources, sinks, WeightMode::Edge)?;
    network.weights = weights;
    Ok(SplitNetwork {
        network,
        classes,
        origin,
        in_copy,
        out_copy,
        split_edge,
    })
}

impl SplitNetwork {
    /// Image of a path of `G` from `s_i` to `t_j` (1-based indices).
    pub fn lift_path(&self, i: usize, path: &[usize], j: usize) -> Vec<usize> {
        let mut out = vec![self.network.sources[i - 1]];
        for &v in path {
            out.push(self.in_copy[v]);
            out.push(self.out_copy[v]);
        }
        out.push(self.network.sinks[j - 1]);
        out
    }

    /// Inverse of [`SplitNetwork::lift_path`].
    pub fn project_path(&self, path: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &v in path {
            if let Some(o) = self.origin[v] {
                if out.last() != Some(&o) {
                    out.push(o);
                }
            }
        }
        out
    }

    /// Checks the degree conditions of a split graph.
    pub fn check_properties(&self) -> std::result::Result<(), String> {
        let g = &self.network;
        let nv = g.vertices.len();
        let mut indeg = vec![0usize; nv];
        let mut outdeg = vec![0usize; nv];
        let mut split_inc = vec![0usize; nv];
        for (e, &(u, v)) in g.edges.iter().enumerate() {
            outdeg[u] += 1;
            indeg[v] += 1;
            if self.classes[e] == SplitEdgeClass::Split {
                split_inc[u] += 1;
                split_inc[v] += 1;
            }
        }
        for &s in &g.sources {
            if outdeg[s] != 1 || indeg[s] != 0 {
                return Err(format!("source `{}` has degrees ({}, {})", g.vertex_id(s), indeg[s], outdeg[s]));
            }
        }
        for &t in &g.sinks {
            if indeg[t] != 1 || outdeg[t] != 0 {
                return Err(format!("sink `{}` has degrees ({}, {})", g.vertex_id(t), indeg[t], outdeg[t]));
            }
        }
        for v in 0..nv {
            if self.origin[v].is_some() && split_inc[v] != 1 {
                return Err(format!("vertex `{}` meets {} split edges", g.vertex_id(v), split_inc[v]));
            }
        }
        for v in 0..self.in_copy.len() {
            let (a, b) = (self.in_copy[v], self.out_copy[v]);
            if outdeg[a] != 1 || indeg[b] != 1 {
                return Err(format!("split edge of `{}` is not the only exit/entry", g.vertex_id(a)));
            }
        }
        Ok(())
    }
}
