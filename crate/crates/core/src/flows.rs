//! Flows, FG-values, double flows and the exchange along alternating paths.

use std::collections::{BTreeSet, HashMap};

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::network::{PlanarNetwork, WeightMode};
use crate::patterns::{cyclic_order, Couple, PlanarMatching, ProperPair, SetContext, Side};
use crate::semiring::{SemiringSpec, Value};

pub const DEFAULT_VERTEX_CAP: usize = 40;

/// Vertex-disjoint directed paths, the `k`-th joining the `k`-th source of `S_I`
/// to the `k`-th sink of `T_{I'}`. Index sets are 1-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flow {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

pub(crate) fn edge_lookup(g: &PlanarNetwork) -> HashMap<(usize, usize), usize> {
    g.edges.iter().enumerate().map(|(e, &uv)| (uv, e)).collect()
}

fn check_indices(g: &PlanarNetwork, i: &[usize], ip: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if i.len() != ip.len() {
        return Err(Error::SizeMismatch(format!("|I| = {} but |I'| = {}", i.len(), ip.len())));
    }
    let norm = |v: &[usize], bound: usize, what: &str| -> Result<Vec<usize>> {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != v.len() {
            return Err(Error::OutOfRange(format!("{what} repeats an index")));
        }
        if let Some(&bad) = s.iter().find(|&&x| x == 0 || x > bound) {
            return Err(Error::OutOfRange(format!("{what} contains {bad}, outside [{bound}]")));
        }
        Ok(s)
    };
    Ok((norm(i, g.n(), "I")?, norm(ip, g.n_prime(), "I'")?))
}

impl Flow {
    pub fn empty() -> Flow {
        Flow {
            sources: Vec::new(),
            sinks: Vec::new(),
            paths: Vec::new(),
        }
    }

    pub fn edges(&self, g: &PlanarNetwork) -> Result<BTreeSet<usize>> {
        let lookup = edge_lookup(g);
        let mut out = BTreeSet::new();
        for p in &self.paths {
            for w in p.windows(2) {
                let e = lookup.get(&(w[0], w[1])).ok_or_else(|| {
                    Error::NotAFlow(format!("no edge {}->{}", g.vertex_id(w[0]), g.vertex_id(w[1])))
                })?;
                out.insert(*e);
            }
        }
        Ok(out)
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.paths.iter().flatten().copied().collect()
    }

    /// `⊙` of the weights used, vertices or edges according to the network's mode.
    pub fn weight(&self, spec: &SemiringSpec, g: &PlanarNetwork) -> Result<Value> {
        let one = spec.one().ok_or(Error::EmptyProductWithoutOne)?;
        let mut acc = one;
        let slots: Vec<usize> = match g.weight_mode {
            WeightMode::Vertex => self.paths.iter().flatten().copied().collect(),
            WeightMode::Edge => self.edges(g)?.into_iter().collect(),
        };
        for s in slots {
            if let Some(w) = &g.weights[s] {
                acc = spec.mul(&acc, w)?;
            }
        }
        Ok(acc)
    }

    /// Checks directedness, endpoints and vertex-disjointness.
    pub fn check(&self, g: &PlanarNetwork) -> Result<()> {
        let (i, ip) = check_indices(g, &self.sources, &self.sinks)?;
        if i != self.sources || ip != self.sinks {
            return Err(Error::NotAFlow("index sets must be sorted".into()));
        }
        if self.paths.len() != i.len() {
            return Err(Error::NotAFlow(format!("{} paths for {} sources", self.paths.len(), i.len())));
        }
        self.edges(g)?;
        let mut seen = BTreeSet::new();
        for (k, p) in self.paths.iter().enumerate() {
            let (Some(&first), Some(&last)) = (p.first(), p.last()) else {
                return Err(Error::NotAFlow("empty path".into()));
            };
            if first != g.sources[i[k] - 1] || last != g.sinks[ip[k] - 1] {
                return Err(Error::NotAFlow(format!("path {} has wrong endpoints", k + 1)));
            }
            for &v in p {
                if !seen.insert(v) {
                    return Err(Error::NotAFlow(format!("vertex {} used twice", g.vertex_id(v))));
                }
            }
        }
        Ok(())
    }

    /// Rebuilds the flow with the given index sets from its edge set.
    pub fn from_edges(g: &PlanarNetwork, i: &[usize], ip: &[usize], edges: &BTreeSet<usize>) -> Result<Flow> {
        let (i, ip) = check_indices(g, i, ip)?;
        let mut next: HashMap<usize, usize> = HashMap::new();
        for &e in edges {
            let (u, v) = g.edges[e];
            if next.insert(u, v).is_some() {
                return Err(Error::NotAFlow(format!("two edges leave {}", g.vertex_id(u))));
            }
        }
        let mut paths = Vec::new();
        let mut used_edges = 0;
        for (k, &src) in i.iter().enumerate() {
            let mut v = g.sources[src - 1];
            let mut path = vec![v];
            while let Some(&w) = next.get(&v) {
                path.push(w);
                used_edges += 1;
                v = w;
                if path.len() > g.num_vertices() {
                    return Err(Error::NotAFlow("edge set contains a cycle".into()));
                }
            }
            if v != g.sinks[ip[k] - 1] {
                return Err(Error::NotAFlow(format!(
                    "path from source {src} ends at {}, expected sink {}",
                    g.vertex_id(v),
                    ip[k]
                )));
            }
            paths.push(path);
        }
        if used_edges != edges.len() {
            return Err(Error::NotAFlow("edges left over outside the paths".into()));
        }
        let flow = Flow {
            sources: i,
            sinks: ip,
            paths,
        };
        flow.check(g)?;
        Ok(flow)
    }

    pub fn to_json(&self, g: &PlanarNetwork) -> Json {
        let paths: Vec<Vec<&str>> = self
            .paths
            .iter()
            .map(|p| p.iter().map(|&v| g.vertex_id(v)).collect())
            .collect();
        json!({"I": self.sources, "Iprime": self.sinks, "paths": paths})
    }
}

struct Search {
    adj: Vec<Vec<usize>>,
    reach: Vec<Vec<u64>>,
    starts: Vec<usize>,
    ends: Vec<usize>,
    terminal: Vec<bool>,
    used: Vec<bool>,
    paths: Vec<Vec<usize>>,
}

impl Search {
    fn new(g: &PlanarNetwork, starts: Vec<usize>, ends: Vec<usize>) -> Search {
        let nv = g.num_vertices();
        let mut adj = g.out_adjacency().into_iter().map(|a| a.into_iter().map(|(v, _)| v).collect::<Vec<_>>()).collect::<Vec<_>>();
        for a in &mut adj {
            a.sort_by(|&x, &y| g.vertex_id(x).cmp(g.vertex_id(y)));
        }
        let words = nv.div_ceil(64).max(1);
        let mut reach = vec![vec![0u64; words]; nv];
        let order = g.topological_order().expect("flows need an acyclic network");
        for &u in order.iter().rev() {
            reach[u][u / 64] |= 1 << (u % 64);
            for k in 0..adj[u].len() {
                let v = adj[u][k];
                for w in 0..words {
                    let bits = reach[v][w];
                    reach[u][w] |= bits;
                }
            }
        }
        let mut terminal = vec![false; nv];
        for &v in starts.iter().chain(&ends) {
            terminal[v] = true;
        }
        Search {
            adj,
            reach,
            starts,
            ends,
            terminal,
            used: vec![false; nv],
            paths: Vec::new(),
        }
    }

    fn reaches(&self, u: usize, v: usize) -> bool {
        self.reach[u][v / 64] >> (v % 64) & 1 == 1
    }

    fn feasible_start(&self) -> bool {
        let mut count = HashMap::new();
        for (&s, &t) in self.starts.iter().zip(&self.ends) {
            *count.entry(s).or_insert(0) += 1;
            if t != s {
                *count.entry(t).or_insert(0) += 1;
            }
            if !self.reaches(s, t) {
                return false;
            }
        }
        count.values().all(|&c| c == 1)
    }

    fn route(&mut self, k: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
        if k == self.starts.len() {
            visit(&self.paths);
            return;
        }
        let (s, t) = (self.starts[k], self.ends[k]);
        self.used[s] = true;
        self.paths.push(vec![s]);
        if s == t {
            self.route(k + 1, visit);
        } else {
            self.extend(k, s, t, visit);
        }
        self.paths.pop();
        self.used[s] = false;
    }

    fn extend(&mut self, k: usize, u: usize, t: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
        for idx in 0..self.adj[u].len() {
            let v = self.adj[u][idx];
            if v == t {
                self.used[t] = true;
                self.paths[k].push(t);
                self.route(k + 1, visit);
                self.paths[k].pop();
                self.used[t] = false;
            } else if !self.used[v] && !self.terminal[v] && self.reaches(v, t) {
                self.used[v] = true;
                self.paths[k].push(v);
                self.extend(k, v, t, visit);
                self.paths[k].pop();
                self.used[v] = false;
            }
        }
    }
}

/// Calls `visit` on every `(I|I')`-flow, in lexicographic order of vertex ids along the paths.
pub fn for_each_flow<F>(g: &PlanarNetwork, i: &[usize], ip: &[usize], cap: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&Flow),
{
    let (i, ip) = check_indices(g, i, ip)?;
    if g.num_vertices() > cap {
        return Err(Error::TooLarge {
            vertices: g.num_vertices(),
            cap,
        });
    }
    if g.topological_order().is_err() {
        return Err(Error::InvalidNetwork("network has a directed cycle".into()));
    }
    let starts: Vec<usize> = i.iter().map(|&k| g.sources[k - 1]).collect();
    let ends: Vec<usize> = ip.iter().map(|&k| g.sinks[k - 1]).collect();
    let mut search = Search::new(g, starts, ends);
    if !search.feasible_start() {
        return Ok(());
    }
    let mut flow = Flow {
        sources: i,
        sinks: ip,
        paths: Vec::new(),
    };
    search.route(0, &mut |paths| {
        flow.paths = paths.to_vec();
        visit(&flow);
    });
    Ok(())
}

pub fn enumerate_flows_capped(g: &PlanarNetwork, i: &[usize], ip: &[usize], cap: usize) -> Result<Vec<Flow>> {
    let mut out = Vec::new();
    for_each_flow(g, i, ip, cap, |f| out.push(f.clone()))?;
    Ok(out)
}

/// All `(I|I')`-flows of a network with at most [`DEFAULT_VERTEX_CAP`] vertices.
pub fn enumerate_flows(g: &PlanarNetwork, i: &[usize], ip: &[usize]) -> Result<Vec<Flow>> {
    enumerate_flows_capped(g, i, ip, DEFAULT_VERTEX_CAP)
}

pub fn count_flows(g: &PlanarNetwork, i: &[usize], ip: &[usize], cap: usize) -> Result<usize> {
    let mut n = 0;
    for_each_flow(g, i, ip, cap, |_| n += 1)?;
    Ok(n)
}

pub fn fg_value_capped(spec: &SemiringSpec, g: &PlanarNetwork, i: &[usize], ip: &[usize], cap: usize) -> Result<Value> {
    let mut acc: Option<Value> = None;
    let mut err = None;
    for_each_flow(g, i, ip, cap, |f| {
        if err.is_some() {
            return;
        }
        if let Err(e) = f.weight(spec, g).and_then(|w| spec.add_into(&mut acc, &w)) {
            err = Some(e);
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    match acc {
        Some(v) => Ok(v),
        None => spec.neutral().ok_or(Error::EmptySumWithoutNeutral),
    }
}

/// `f(I|I')`: the `⊕` over all flows of their weights.
pub fn fg_value(spec: &SemiringSpec, g: &PlanarNetwork, i: &[usize], ip: &[usize]) -> Result<Value> {
    fg_value_capped(spec, g, i, ip, DEFAULT_VERTEX_CAP)
}

/// A flow for `(XA | X'A')` and one for `(X Ā | X' Ā')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleFlow {
    pub ctx: SetContext,
    pub pair: ProperPair,
    pub phi: Flow,
    pub phi_prime: Flow,
}

impl DoubleFlow {
    pub fn new(g: &PlanarNetwork, ctx: SetContext, pair: ProperPair, phi: Flow, phi_prime: Flow) -> Result<DoubleFlow> {
        pair.check(&ctx.y, &ctx.yp)?;
        let ((i, ip), (j, jp)) = ctx.args(&pair);
        if (phi.sources.clone(), phi.sinks.clone()) != (i, ip) || (phi_prime.sources.clone(), phi_prime.sinks.clone()) != (j, jp) {
            return Err(Error::NotAFlow("flows do not match the pair's index sets".into()));
        }
        phi.check(g)?;
        phi_prime.check(g)?;
        Ok(DoubleFlow {
            ctx,
            pair,
            phi,
            phi_prime,
        })
    }

    /// Every double flow for the pair.
    pub fn enumerate(g: &PlanarNetwork, ctx: &SetContext, pair: &ProperPair, cap: usize) -> Result<Vec<DoubleFlow>> {
        pair.check(&ctx.y, &ctx.yp)?;
        let ((i, ip), (j, jp)) = ctx.args(pair);
        let left = enumerate_flows_capped(g, &i, &ip, cap)?;
        if left.is_empty() {
            return Ok(Vec::new());
        }
        let right = enumerate_flows_capped(g, &j, &jp, cap)?;
        let mut out = Vec::with_capacity(left.len() * right.len());
        for a in &left {
            for b in &right {
                out.push(DoubleFlow {
                    ctx: ctx.clone(),
                    pair: pair.clone(),
                    phi: a.clone(),
                    phi_prime: b.clone(),
                });
            }
        }
        Ok(out)
    }

    pub fn weight(&self, spec: &SemiringSpec, g: &PlanarNetwork) -> Result<Value> {
        spec.mul(&self.phi.weight(spec, g)?, &self.phi_prime.weight(spec, g)?)
    }
}

/// Which terminal classes an alternating path joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TerminalClass {
    /// `Ŝ_A` and `Ŝ_Ā`.
    SourcesAcrossA,
    /// `Ŝ_A` and `T̂_{A'}`.
    SourceSinkInA,
    /// `T̂_{A'}` and `T̂_{Ā'}`.
    SinksAcrossA,
    /// `Ŝ_Ā` and `T̂_{Ā'}`.
    SourceSinkOutsideA,
}

/// A component of `E_φ △ E_φ'`, walked so that `φ`-edges point forward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub in_phi: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingPath {
    pub component: Component,
    pub couple: Couple,
    pub class: TerminalClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub circuits: Vec<Component>,
    pub paths: Vec<AlternatingPath>,
    pub matching: PlanarMatching,
}

impl Decomposition {
    pub fn path_of(&self, c: &Couple) -> Option<&AlternatingPath> {
        self.paths.iter().find(|p| p.couple == *c)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Colour {
    SourceA,
    SourceAbar,
    SinkA,
    SinkAbar,
}

fn classify(a: Colour, b: Colour) -> Option<TerminalClass> {
    use Colour::*;
    let (a, b) = if (a as u8) <= (b as u8) { (a, b) } else { (b, a) };
    match (a, b) {
        (SourceA, SourceAbar) => Some(TerminalClass::SourcesAcrossA),
        (SourceA, SinkA) => Some(TerminalClass::SourceSinkInA),
        (SinkA, SinkAbar) => Some(TerminalClass::SinksAcrossA),
        (SourceAbar, SinkAbar) => Some(TerminalClass::SourceSinkOutsideA),
        _ => None,
    }
}

/// Orients a walk so that `φ`-edges are forward; `None` when the walk mixes directions.
fn orient(g: &PlanarNetwork, mut vertices: Vec<usize>, mut edges: Vec<usize>, in_phi_of: &HashMap<usize, bool>) -> Option<Component> {
    let forward: Vec<bool> = edges
        .iter()
        .zip(&vertices)
        .map(|(&e, &v)| g.edges[e].0 == v)
        .collect();
    let in_phi: Vec<bool> = edges.iter().map(|e| in_phi_of[e]).collect();
    let agree = forward.iter().zip(&in_phi).all(|(f, p)| f == p);
    let disagree = forward.iter().zip(&in_phi).all(|(f, p)| f != p);
    if disagree && !agree {
        vertices.reverse();
        edges.reverse();
    } else if !agree {
        return None;
    }
    let in_phi = edges.iter().map(|e| in_phi_of[e]).collect();
    Some(Component { vertices, edges, in_phi })
}

/// Splits `E_φ △ E_φ'` into circuits and alternating paths and reads off `M(φ, φ')`.
pub fn decompose_double_flow(g: &PlanarNetwork, df: &DoubleFlow) -> Result<Decomposition> {
    let e1 = df.phi.edges(g)?;
    let e2 = df.phi_prime.edges(g)?;
    let mut in_phi: HashMap<usize, bool> = HashMap::new();
    for &e in e1.symmetric_difference(&e2) {
        in_phi.insert(e, e1.contains(&e));
    }
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut delta: Vec<usize> = in_phi.keys().copied().collect();
    delta.sort_unstable();
    for &e in &delta {
        let (u, v) = g.edges[e];
        incident.entry(u).or_default().push(e);
        incident.entry(v).or_default().push(e);
    }
    if let Some((v, es)) = incident.iter().find(|(_, es)| es.len() > 2) {
        return Err(Error::Construction(format!(
            "vertex {} meets {} edges of the symmetric difference",
            g.vertex_id(*v),
            es.len()
        )));
    }
    let mut terminal: HashMap<usize, (Side, usize, Colour)> = HashMap::new();
    for &i in &df.ctx.y {
        let c = if df.pair.a.contains(&i) { Colour::SourceA } else { Colour::SourceAbar };
        terminal.insert(g.sources[i - 1], (Side::Lower, i, c));
    }
    for &j in &df.ctx.yp {
        let c = if df.pair.ap.contains(&j) { Colour::SinkA } else { Colour::SinkAbar };
        terminal.insert(g.sinks[j - 1], (Side::Upper, j, c));
    }
    let mut done: BTreeSet<usize> = BTreeSet::new();
    let walk = |start: usize, first: usize, done: &mut BTreeSet<usize>| -> (Vec<usize>, Vec<usize>) {
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        let mut cur = start;
        let mut e = first;
        loop {
            done.insert(e);
            edges.push(e);
            let (u, v) = g.edges[e];
            cur = if u == cur { v } else { u };
            vertices.push(cur);
            match incident[&cur].iter().find(|&&f| !done.contains(&f)) {
                Some(&f) => e = f,
                None => break,
            }
        }
        (vertices, edges)
    };
    let mut paths = Vec::new();
    for (side, x) in cyclic_order(&df.ctx.y, &df.ctx.yp) {
        let v = match side {
            Side::Lower => g.sources[x - 1],
            Side::Upper => g.sinks[x - 1],
        };
        let Some(es) = incident.get(&v) else {
            return Err(Error::Construction(format!("terminal {} is not covered by the symmetric difference", g.vertex_id(v))));
        };
        if es.len() != 1 {
            return Err(Error::Construction(format!("terminal {} has degree {}", g.vertex_id(v), es.len())));
        }
        if done.contains(&es[0]) {
            continue;
        }
        let (vs, es) = walk(v, es[0], &mut done);
        let end = *vs.last().unwrap();
        let (Some(&(s0, x0, c0)), Some(&(s1, x1, c1))) = (terminal.get(&v), terminal.get(&end)) else {
            return Err(Error::Construction(format!("path from {} ends at a non-terminal", g.vertex_id(v))));
        };
        let class = classify(c0, c1).ok_or_else(|| {
            Error::Construction(format!("path joins {} and {} in a forbidden class", g.vertex_id(v), g.vertex_id(end)))
        })?;
        let component = orient(g, vs, es, &in_phi)
            .ok_or_else(|| Error::Construction("path mixes edge directions".into()))?;
        paths.push(AlternatingPath {
            component,
            couple: Couple::new((s0, x0), (s1, x1)),
            class,
        });
    }
    let mut circuits = Vec::new();
    for &e in &delta {
        if done.contains(&e) {
            continue;
        }
        let start = g.edges[e].0;
        let (mut vs, es) = walk(start, e, &mut done);
        if vs.last() != Some(&start) {
            return Err(Error::Construction("a component is neither a path nor a circuit".into()));
        }
        vs.pop();
        let mut vs_closed = vs.clone();
        vs_closed.push(start);
        let comp = orient(g, vs_closed, es, &in_phi)
            .ok_or_else(|| Error::Construction("circuit mixes edge directions".into()))?;
        circuits.push(comp);
    }
    let matching = PlanarMatching::from_couples(paths.iter().map(|p| p.couple));
    Ok(Decomposition {
        circuits,
        paths,
        matching,
    })
}

/// Swaps `φ` and `φ'` along the paths of the couples in `m0`.
pub fn exchange(g: &PlanarNetwork, df: &DoubleFlow, m0: &[Couple]) -> Result<DoubleFlow> {
    let dec = decompose_double_flow(g, df)?;
    let mut u: BTreeSet<usize> = BTreeSet::new();
    for c in m0 {
        let p = dec
            .path_of(c)
            .ok_or_else(|| Error::CoupleNotInMatching(format!("{c} not in {}", dec.matching)))?;
        u.extend(p.component.edges.iter().copied());
    }
    let e1: BTreeSet<usize> = df.phi.edges(g)?.symmetric_difference(&u).copied().collect();
    let e2: BTreeSet<usize> = df.phi_prime.edges(g)?.symmetric_difference(&u).copied().collect();
    let pair = df.pair.exchange(m0);
    let ((i, ip), (j, jp)) = df.ctx.args(&pair);
    let psi = Flow::from_edges(g, &i, &ip, &e1)?;
    let psi_prime = Flow::from_edges(g, &j, &jp, &e2)?;
    Ok(DoubleFlow {
        ctx: df.ctx.clone(),
        pair,
        phi: psi,
        phi_prime: psi_prime,
    })
}
