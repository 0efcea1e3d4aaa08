//! Planar acyclic networks with ordered terminals.

pub mod geometry;
mod json;
mod split;

pub use geometry::Point;
pub use json::{network_from_json, network_to_json};
pub use split::{split_vertices, SplitEdgeClass, SplitNetwork};

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use rand::Rng;

use crate::error::{Error, Result};
use crate::semiring::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub pos: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightMode {
    Vertex,
    Edge,
}

/// A directed acyclic graph drawn in the plane with sources `s_1..s_n` and sinks `t_1..t_n'`.
///
/// Weights are indexed by vertex or by edge according to `weight_mode`;
/// `None` stands for the multiplicative unit of whatever semiring is in use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarNetwork {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub weight_mode: WeightMode,
    pub weights: Vec<Option<Value>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    Grid(usize, usize),
    HalfGrid(usize),
    /// Gessel–Viennot grid: `N` levels, `width` columns.
    GVGrid(usize, usize),
    /// Half-grid cut at height `n'`: vertices `(i,j)` with `j ≤ i ≤ n`, `j ≤ n'`.
    TruncatedHalfGrid(usize, usize),
}

impl PlanarNetwork {
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        sources: Vec<usize>,
        sinks: Vec<usize>,
        weight_mode: WeightMode,
    ) -> Result<PlanarNetwork> {
        let nv = vertices.len();
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvalidNetwork(format!("duplicate vertex id `{}`", v.id)));
            }
        }
        let mut edge_set = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= nv || v >= nv {
                return Err(Error::InvalidNetwork(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidNetwork(format!("loop at `{}`", vertices[u].id)));
            }
            if !edge_set.insert((u, v)) {
                return Err(Error::InvalidNetwork(format!(
                    "parallel edge {}->{}",
                    vertices[u].id, vertices[v].id
                )));
            }
        }
        for &t in sources.iter().chain(&sinks) {
            if t >= nv {
                return Err(Error::InvalidNetwork(format!("terminal {t} out of range")));
            }
        }
        let mut terms = sources.clone();
        terms.sort_unstable();
        if terms.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidNetwork("repeated source".into()));
        }
        let mut terms = sinks.clone();
        terms.sort_unstable();
        if terms.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidNetwork("repeated sink".into()));
        }
        let nw = match weight_mode {
            WeightMode::Vertex => nv,
            WeightMode::Edge => edges.len(),
        };
        Ok(PlanarNetwork {
            vertices,
            edges,
            sources,
            sinks,
            weight_mode,
            weights: vec![None; nw],
        })
    }

    pub fn n(&self) -> usize {
        self.sources.len()
    }

    pub fn n_prime(&self) -> usize {
        self.sinks.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.iter().position(|&e| e == (u, v))
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn out_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, e));
        }
        adj
    }

    pub fn in_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[v].push((u, e));
        }
        adj
    }

    /// Kahn order, or the vertices left on cycles.
    pub fn topological_order(&self) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for &(_, v) in &self.edges {
            indeg[v] += 1;
        }
        let adj = self.out_adjacency();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &(v, _) in &adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err((0..n).filter(|&v| indeg[v] > 0).collect())
        }
    }

    pub fn set_vertex_weight(&mut self, v: usize, w: Value) {
        assert_eq!(self.weight_mode, WeightMode::Vertex);
        self.weights[v] = Some(w);
    }

    pub fn set_edge_weight(&mut self, e: usize, w: Value) {
        assert_eq!(self.weight_mode, WeightMode::Edge);
        self.weights[e] = Some(w);
    }

    pub fn clear_weights(&mut self) {
        self.weights.iter_mut().for_each(|w| *w = None);
    }

    pub fn build_standard(kind: StandardKind) -> PlanarNetwork {
        match kind {
            StandardKind::Grid(n, np) => grid_like(n, |i| (1..=np).map(move |j| (i, j)).collect(), |j| (1, j), np),
            StandardKind::HalfGrid(n) => grid_like(n, |i| (1..=i).map(move |j| (i, j)).collect(), |j| (j, j), n),
            StandardKind::TruncatedHalfGrid(n, np) => {
                let np = np.min(n);
                grid_like(n, move |i| (1..=i.min(np)).map(move |j| (i, j)).collect(), |j| (j, j), np)
            }
            StandardKind::GVGrid(levels, width) => gv_grid(levels, width),
        }
    }

    /// Drops each edge independently with probability `1 - keep`; weights and terminals stay.
    pub fn random_subnetwork<R: Rng + ?Sized>(&self, rng: &mut R, keep: f64) -> PlanarNetwork {
        let mut out = self.clone();
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (e, &uv) in self.edges.iter().enumerate() {
            if rng.gen_bool(keep) {
                edges.push(uv);
                if self.weight_mode == WeightMode::Edge {
                    weights.push(self.weights[e].clone());
                }
            }
        }
        out.edges = edges;
        if self.weight_mode == WeightMode::Edge {
            out.weights = weights;
        }
        out
    }

    /// Subdivides every edge with a vertex carrying the edge weight.
    pub fn to_vertex_weighted(&self) -> PlanarNetwork {
        if self.weight_mode == WeightMode::Vertex {
            return self.clone();
        }
        let mut vertices = self.vertices.clone();
        let mut weights: Vec<Option<Value>> = vec![None; vertices.len()];
        let mut edges = Vec::new();
        let half = BigRational::new(1.into(), 2.into());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let mid = vertices.len();
            vertices.push(Vertex {
                id: format!("{}->{}", self.vertices[u].id, self.vertices[v].id),
                pos: self.vertices[u].pos.lerp(&self.vertices[v].pos, &half),
            });
            weights.push(self.weights[e].clone());
            edges.push((u, mid));
            edges.push((mid, v));
        }
        PlanarNetwork {
            vertices,
            edges,
            sources: self.sources.clone(),
            sinks: self.sinks.clone(),
            weight_mode: WeightMode::Vertex,
            weights,
        }
    }

    /// Mounts `upper` on top of `self`, identifying `self`'s sinks with `upper`'s sources.
    pub fn concatenate(&self, upper: &PlanarNetwork) -> Result<PlanarNetwork> {
        if self.n_prime() != upper.n() {
            return Err(Error::ArityMismatch(format!(
                "{} sinks below, {} sources above",
                self.n_prime(),
                upper.n()
            )));
        }
        if self.weight_mode != WeightMode::Edge || upper.weight_mode != WeightMode::Edge {
            return Err(Error::InvalidNetwork("concatenation needs edge weights".into()));
        }
        let top = self.vertices.iter().map(|v| v.pos.y.clone()).max();
        let bottom = upper.vertices.iter().map(|v| v.pos.y.clone()).min();
        let shift = match (top, bottom) {
            (Some(t), Some(b)) => t - b,
            _ => BigRational::from_integer(0.into()),
        };
        let mut vertices = self.vertices.clone();
        let mut map = vec![usize::MAX; upper.vertices.len()];
        for (k, &s) in upper.sources.iter().enumerate() {
            map[s] = self.sinks[k];
        }
        let mut ids: std::collections::HashSet<String> =
            vertices.iter().map(|v| v.id.clone()).collect();
        for (i, v) in upper.vertices.iter().enumerate() {
            if map[i] != usize::MAX {
                continue;
            }
            let mut id = v.id.clone();
            let mut k = 1;
            while ids.contains(&id) {
                id = format!("{}~{k}", v.id);
                k += 1;
            }
            ids.insert(id.clone());
            map[i] = vertices.len();
            vertices.push(Vertex {
                id,
                pos: Point::new(v.pos.x.clone(), &v.pos.y + &shift),
            });
        }
        let mut edges = self.edges.clone();
        let mut weights = self.weights.clone();
        for (e, &(u, v)) in upper.edges.iter().enumerate() {
            edges.push((map[u], map[v]));
            weights.push(upper.weights[e].clone());
        }
        let sinks = upper.sinks.iter().map(|&t| map[t]).collect();
        let mut out = PlanarNetwork::new(vertices, edges, self.sources.clone(), sinks, WeightMode::Edge)?;
        out.weights = weights;
        Ok(out)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if let Err(cyc) = self.topological_order() {
            report.cycle = cyc.iter().map(|&v| self.vertices[v].id.clone()).collect();
        }
        report.terminal_issues = self.check_terminal_order();
        report.crossings = self.check_crossings();
        report
    }

    fn terminal_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.sources.iter().rev().copied().collect();
        seq.extend(self.sinks.iter().copied());
        seq
    }

    fn check_terminal_order(&self) -> Vec<String> {
        let mut issues = Vec::new();
        let mut seq = self.terminal_sequence();
        seq.dedup();
        if seq.len() > 1 && seq.first() == seq.last() {
            seq.pop();
        }
        if seq.len() <= 2 {
            return issues;
        }
        let points: Vec<Point> = self.vertices.iter().map(|v| v.pos.clone()).collect();
        if geometry::all_collinear(&points) {
            let origin = &points[seq[0]];
            let Some(other) = points.iter().find(|p| *p != origin) else {
                return issues;
            };
            let dir = other.sub(origin);
            let params: Vec<BigRational> = seq
                .iter()
                .map(|&v| geometry::line_parameter(origin, &dir, &points[v]))
                .collect();
            let k = params.len();
            let mut signs = Vec::new();
            for i in 0..k {
                match params[(i + 1) % k].cmp(&params[i]) {
                    std::cmp::Ordering::Equal => {}
                    o => signs.push(o),
                }
            }
            let changes = (0..signs.len())
                .filter(|&i| signs[i] != signs[(i + 1) % signs.len()])
                .count();
            if changes > 2 {
                issues.push("collinear terminals are not in boundary order".into());
            }
            return issues;
        }
        let hull = geometry::convex_hull_cw(&points);
        let mut params = Vec::new();
        for &t in &seq {
            match geometry::boundary_position(&hull, &points[t]) {
                Some(p) => params.push(p),
                None => issues.push(format!(
                    "terminal `{}` is not on the boundary",
                    self.vertices[t].id
                )),
            }
        }
        if !issues.is_empty() {
            return issues;
        }
        let k = params.len();
        let descents = (0..k).filter(|&i| params[(i + 1) % k] < params[i]).count();
        let all_equal = params.windows(2).all(|w| w[0] == w[1]);
        if descents != 1 && !all_equal {
            issues.push(format!(
                "terminals are not in clockwise order s_n..s_1,t_1..t_n' ({descents} wraps)"
            ));
        }
        issues
    }

    fn check_crossings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let pos = |v: usize| &self.vertices[v].pos;
        let mut by_point: BTreeMap<&Point, usize> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(j) = by_point.insert(&v.pos, i) {
                out.push(format!(
                    "vertices `{}` and `{}` coincide",
                    self.vertices[j].id, v.id
                ));
            }
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            for w in 0..self.vertices.len() {
                if w != u && w != v && geometry::on_segment(pos(u), pos(v), pos(w)) {
                    out.push(format!(
                        "vertex `{}` lies on edge {}",
                        self.vertices[w].id,
                        self.edge_label(e)
                    ));
                }
            }
        }
        for e in 0..self.edges.len() {
            let (a, b) = self.edges[e];
            for f in e + 1..self.edges.len() {
                let (c, d) = self.edges[f];
                let shared = [a, b].iter().filter(|x| **x == c || **x == d).count();
                let bad = match shared {
                    0 => geometry::segments_intersect(pos(a), pos(b), pos(c), pos(d)),
                    1 => {
                        // Only overlap along a common line can go wrong here.
                        let (s, p, q) = if a == c {
                            (a, b, d)
                        } else if a == d {
                            (a, b, c)
                        } else if b == c {
                            (b, a, d)
                        } else {
                            (b, a, c)
                        };
                        geometry::orient(pos(s), pos(p), pos(q)) == std::cmp::Ordering::Equal
                            && (geometry::on_segment(pos(s), pos(p), pos(q))
                                || geometry::on_segment(pos(s), pos(q), pos(p)))
                    }
                    _ => true,
                };
                if bad {
                    out.push(format!(
                        "edges {} and {} cross",
                        self.edge_label(e),
                        self.edge_label(f)
                    ));
                }
            }
        }
        out
    }

    pub fn edge_label(&self, e: usize) -> String {
        let (u, v) = self.edges[e];
        format!("{}->{}", self.vertices[u].id, self.vertices[v].id)
    }
}

fn grid_like<F>(n: usize, column: F, sink: fn(usize) -> (usize, usize), np: usize) -> PlanarNetwork
where
    F: Fn(usize) -> Vec<(usize, usize)>,
{
    let mut vertices = Vec::new();
    let mut index = HashMap::new();
    for i in 1..=n {
        for (i, j) in column(i) {
            index.insert((i, j), vertices.len());
            vertices.push(Vertex {
                id: format!("({i},{j})"),
                pos: Point::from_ints(i as i64, j as i64),
            });
        }
    }
    let mut edges = Vec::new();
    let mut keys: Vec<&(usize, usize)> = index.keys().collect();
    keys.sort();
    for &(i, j) in keys {
        let u = index[&(i, j)];
        if let Some(&v) = index.get(&(i - 1, j)) {
            edges.push((u, v));
        }
        if let Some(&v) = index.get(&(i, j + 1)) {
            edges.push((u, v));
        }
    }
    edges.sort();
    let sources = (1..=n).map(|i| index[&(i, 1)]).collect();
    let sinks = (1..=np).map(|j| index[&sink(j)]).collect();
    PlanarNetwork::new(vertices, edges, sources, sinks, WeightMode::Vertex)
        .expect("grid construction is well formed")
}

/// Horizontal edges at level `h` carry the variable with index `h - 1`.
fn gv_grid(levels: usize, width: usize) -> PlanarNetwork {
    let mut vertices = Vec::new();
    let idx = |i: usize, j: usize| (j - 1) * width + (i - 1);
    for j in 1..=levels {
        for i in 1..=width {
            vertices.push(Vertex {
                id: format!("({i},{j})"),
                pos: Point::from_ints(i as i64, j as i64),
            });
        }
    }
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for j in 1..=levels {
        for i in 1..=width {
            if i < width {
                edges.push((idx(i, j), idx(i + 1, j)));
                weights.push(Some(Value::var(j - 1)));
            }
            if j < levels {
                edges.push((idx(i, j), idx(i, j + 1)));
                weights.push(None);
            }
        }
    }
    let sources = (1..=width).map(|i| idx(i, 1)).collect();
    let sinks = (1..=width).map(|i| idx(i, levels)).collect();
    let mut g = PlanarNetwork::new(vertices, edges, sources, sinks, WeightMode::Edge)
        .expect("grid construction is well formed");
    g.weights = weights;
    g
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Vertices left on directed cycles (empty when acyclic).
    pub cycle: Vec<String>,
    pub terminal_issues: Vec<String>,
    pub crossings: Vec<String>,
}

impl ValidationReport {
    pub fn acyclic(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn terminals_ok(&self) -> bool {
        self.terminal_issues.is_empty()
    }

    pub fn planar(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn is_ok(&self) -> bool {
        self.acyclic() && self.terminals_ok() && self.planar()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "acyclic: {}", self.acyclic())?;
        if !self.acyclic() {
            writeln!(f, "  cycle through: {}", self.cycle.join(", "))?;
        }
        writeln!(f, "terminal order: {}", self.terminals_ok())?;
        for i in &self.terminal_issues {
            writeln!(f, "  {i}")?;
        }
        write!(f, "planar drawing: {}", self.planar())?;
        for c in &self.crossings {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}
