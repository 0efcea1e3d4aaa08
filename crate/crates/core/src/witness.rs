//! Unit-weight networks on which the relation of an unbalanced pair fails.
//!
//! For a planar perfect matching `M` on `Y ⊔ Y'` the network is drawn with
//! sources on a lower convex arc and sinks on an upper one. Every couple
//! becomes a thin path `L_π` with alternating edge directions; nested
//! horizontal paths are tied together by bridges, maximal ones by middle
//! bridges, and crossings of middle bridges with vertical paths are resolved
//! by splitting the crossing point. Elements of `X`, `X'` are first doubled
//! into adjacent couples and shrunk back afterwards.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::flows::count_flows;
use crate::network::{network_to_json, PlanarNetwork, Point, Vertex, WeightMode};
use crate::patterns::{feasible_matchings, is_balanced, Couple, PlanarMatching, ProperPair, SetContext, Side, TwoPattern};
use crate::relations::{evaluate_sq, RelationInstance};
use crate::semiring::{SemiringSpec, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// Edge of a horizontal path.
    Thin,
    LowerBridge,
    UpperBridge,
    /// Piece of a middle bridge.
    BEdge,
    /// Forward edge of a vertical path.
    VEdge,
    /// Backward edge of a vertical path created by splitting a crossing.
    Extra,
}

impl EdgeClass {
    pub fn is_thick(self) -> bool {
        matches!(self, EdgeClass::LowerBridge | EdgeClass::UpperBridge | EdgeClass::BEdge)
    }

    pub fn name(self) -> &'static str {
        match self {
            EdgeClass::Thin => "thin",
            EdgeClass::LowerBridge => "lower-bridge",
            EdgeClass::UpperBridge => "upper-bridge",
            EdgeClass::BEdge => "b-edge",
            EdgeClass::VEdge => "v-edge",
            EdgeClass::Extra => "extra",
        }
    }
}

#[derive(Debug, Clone)]
pub struct WitnessNetwork {
    pub network: PlanarNetwork,
    pub ctx: SetContext,
    pub matching: PlanarMatching,
    pub classes: Vec<EdgeClass>,
    /// Vertex sequence of every `L_π`, from its left (vertical: lower) end.
    pub segments: BTreeMap<Couple, Vec<usize>>,
    /// `(|Q|, |Q'|)`, the even vertices on maximal lower and upper paths.
    pub q: (usize, usize),
    /// Vertices that were sources or sinks `i'`, `i''` before shrinking, keyed by the merged terminal.
    pub merged: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Y(usize),
    XFirst(usize),
    XSecond(usize),
    Pad(usize),
}

fn slots(n: usize, x: &[usize], y: &[usize]) -> Vec<Slot> {
    let mut out = Vec::new();
    for i in 1..=n {
        if y.contains(&i) {
            out.push(Slot::Y(i));
        } else if x.contains(&i) {
            out.push(Slot::XFirst(i));
            out.push(Slot::XSecond(i));
        } else {
            out.push(Slot::Pad(i));
        }
    }
    out
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `k`-th of `total` points on `y = ±(x² − 1)`, `x ∈ (−1, 1)`.
fn arc_point(k: usize, total: usize, lower: bool) -> Point {
    let x = rat(2 * (k as i64 + 1), total as i64 + 1) - rat(1, 1);
    let y = &x * &x - rat(1, 1);
    Point::new(x, if lower { y } else { -y })
}

/// Parameters `(t, s)` of a proper crossing of `ab` and `cd`.
fn crossing(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<(BigRational, BigRational)> {
    let r = b.sub(a);
    let q = d.sub(c);
    let den = &r.x * &q.y - &r.y * &q.x;
    if den == rat(0, 1) {
        return None;
    }
    let w = c.sub(a);
    let t = (&w.x * &q.y - &w.y * &q.x) / &den;
    let s = (&w.x * &r.y - &w.y * &r.x) / &den;
    let zero = rat(0, 1);
    let one = rat(1, 1);
    (t > zero && t < one && s > zero && s < one).then_some((t, s))
}

#[derive(Default)]
struct Draft {
    ids: Vec<String>,
    pos: Vec<Point>,
    edges: Vec<(usize, usize, EdgeClass)>,
}

impl Draft {
    fn vertex(&mut self, id: String, p: Point) -> usize {
        self.ids.push(id);
        self.pos.push(p);
        self.ids.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize, c: EdgeClass) {
        self.edges.push((u, v, c));
    }
}

fn immediate_successors(couples: &[(usize, usize)], (a, b): (usize, usize)) -> Vec<(usize, usize)> {
    let inside: Vec<(usize, usize)> = couples.iter().copied().filter(|&(c, d)| a < c && d < b).collect();
    let mut out: Vec<(usize, usize)> = inside
        .iter()
        .copied()
        .filter(|&(c, d)| !inside.iter().any(|&(e, f)| e < c && d < f))
        .collect();
    out.sort_unstable();
    out
}

fn maximal(couples: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = couples
        .iter()
        .copied()
        .filter(|&(c, d)| !couples.iter().any(|&(e, f)| e < c && d < f))
        .collect();
    out.sort_unstable();
    out
}

/// Relabels a matching on `([m], [m'])` into `(Y, Y')`.
pub fn embed_matching(m: &PlanarMatching, y: &[usize], yp: &[usize]) -> PlanarMatching {
    PlanarMatching::from_couples(m.couples().map(|c| match *c {
        Couple::Lower(i, j) => Couple::Lower(y[i - 1], y[j - 1]),
        Couple::Upper(i, j) => Couple::Upper(yp[i - 1], yp[j - 1]),
        Couple::Vertical(i, j) => Couple::Vertical(y[i - 1], yp[j - 1]),
    }))
}

/// Builds the witness network for `M` over the context's sets.
pub fn build_witness_network(ctx: &SetContext, m: &PlanarMatching) -> Result<WitnessNetwork> {
    let ctx = SetContext::new(ctx.n, ctx.n_prime, &ctx.x, &ctx.y, &ctx.xp, &ctx.yp)?;
    m.check(&ctx.y, &ctx.yp)?;
    let mut eps = rat(1, 16);
    for _ in 0..40 {
        let w = draw(&ctx, m, &eps)?;
        let report = w.network.validate();
        if report.cycle.is_empty() && report.crossings.is_empty() && report.terminal_issues.is_empty() {
            return Ok(w);
        }
        eps /= rat(2, 1);
    }
    Err(Error::Construction("could not find a planar drawing".into()))
}

fn draw(ctx: &SetContext, m: &PlanarMatching, eps: &BigRational) -> Result<WitnessNetwork> {
    let lower_slots = slots(ctx.n, &ctx.x, &ctx.y);
    let upper_slots = slots(ctx.n_prime, &ctx.xp, &ctx.yp);
    let mut d = Draft::default();
    let name = |s: Slot, c: char| match s {
        Slot::Y(i) | Slot::Pad(i) => format!("{c}{i}"),
        Slot::XFirst(i) => format!("{c}{i}a"),
        Slot::XSecond(i) => format!("{c}{i}b"),
    };
    let lower_term: Vec<usize> = (0..lower_slots.len())
        .map(|k| d.vertex(name(lower_slots[k], 's'), arc_point(k, lower_slots.len(), true)))
        .collect();
    let upper_term: Vec<usize> = (0..upper_slots.len())
        .map(|k| d.vertex(name(upper_slots[k], 't'), arc_point(k, upper_slots.len(), false)))
        .collect();

    // Ranks of the non-padding slots; the doubled matching lives on ranks.
    let lower_ranks: Vec<usize> = (0..lower_slots.len()).filter(|&k| !matches!(lower_slots[k], Slot::Pad(_))).collect();
    let upper_ranks: Vec<usize> = (0..upper_slots.len()).filter(|&k| !matches!(upper_slots[k], Slot::Pad(_))).collect();
    if lower_ranks.len() != upper_ranks.len() {
        return Err(Error::InconsistentSets("doubled ground sets differ in size".into()));
    }
    let rank_of = |ranks: &[usize], sl: &[Slot], e: usize| -> usize {
        ranks.iter().position(|&k| matches!(sl[k], Slot::Y(i) if i == e)).unwrap() + 1
    };
    let mut lower: Vec<(usize, usize)> = Vec::new();
    let mut upper: Vec<(usize, usize)> = Vec::new();
    let mut vertical: Vec<(usize, usize)> = Vec::new();
    let mut origin: HashMap<Couple, Couple> = HashMap::new();
    let mut x_lower: Vec<(usize, usize)> = Vec::new();
    let mut x_upper: Vec<(usize, usize)> = Vec::new();
    for c in m.couples() {
        let rc = match *c {
            Couple::Lower(i, j) => {
                let p = (rank_of(&lower_ranks, &lower_slots, i), rank_of(&lower_ranks, &lower_slots, j));
                lower.push(p);
                Couple::Lower(p.0, p.1)
            }
            Couple::Upper(i, j) => {
                let p = (rank_of(&upper_ranks, &upper_slots, i), rank_of(&upper_ranks, &upper_slots, j));
                upper.push(p);
                Couple::Upper(p.0, p.1)
            }
            Couple::Vertical(i, j) => {
                let p = (rank_of(&lower_ranks, &lower_slots, i), rank_of(&upper_ranks, &upper_slots, j));
                vertical.push(p);
                Couple::Vertical(p.0, p.1)
            }
        };
        origin.insert(rc, *c);
    }
    for (r, &k) in lower_ranks.iter().enumerate() {
        if let Slot::XFirst(i) = lower_slots[k] {
            lower.push((r + 1, r + 2));
            x_lower.push((i, r + 1));
        }
    }
    for (r, &k) in upper_ranks.iter().enumerate() {
        if let Slot::XFirst(i) = upper_slots[k] {
            upper.push((r + 1, r + 2));
            x_upper.push((i, r + 1));
        }
    }
    let lt = |r: usize| lower_term[lower_ranks[r - 1]];
    let ut = |r: usize| upper_term[upper_ranks[r - 1]];

    // Horizontal paths: odd positions at even indices, ends odd.
    let mut seq: HashMap<Couple, Vec<usize>> = HashMap::new();
    let mut even: HashMap<Couple, Vec<usize>> = HashMap::new();
    let mut odd_inner: HashMap<Couple, Vec<usize>> = HashMap::new();
    for (side, list) in [(Side::Lower, &lower), (Side::Upper, &upper)] {
        for &(a, b) in list {
            let (ta, tb, tag) = match side {
                Side::Lower => (lt(a), lt(b), 'L'),
                Side::Upper => (ut(a), ut(b), 'U'),
            };
            let (pa, pb) = (d.pos[ta].clone(), d.pos[tb].clone());
            let len = b - a + 1;
            let mut s = vec![ta];
            for k in 1..len {
                let p = pa.lerp(&pb, &rat(k as i64, len as i64));
                s.push(d.vertex(format!("{tag}{a}-{b}.{k}"), p));
            }
            s.push(tb);
            for k in 0..s.len() - 1 {
                let (o, e) = if k % 2 == 0 { (s[k], s[k + 1]) } else { (s[k + 1], s[k]) };
                match side {
                    Side::Lower => d.edge(o, e, EdgeClass::Thin),
                    Side::Upper => d.edge(e, o, EdgeClass::Thin),
                }
            }
            let key = match side {
                Side::Lower => Couple::Lower(a, b),
                Side::Upper => Couple::Upper(a, b),
            };
            even.insert(key, s.iter().skip(1).step_by(2).copied().collect());
            odd_inner.insert(key, s[1..s.len() - 1].iter().skip(1).step_by(2).copied().collect());
            seq.insert(key, s);
        }
    }

    // Bridges between a path and its immediate successors.
    for (side, list) in [(Side::Lower, &lower), (Side::Upper, &upper)] {
        let key = |p: (usize, usize)| match side {
            Side::Lower => Couple::Lower(p.0, p.1),
            Side::Upper => Couple::Upper(p.0, p.1),
        };
        for &p in list {
            let w: Vec<usize> = immediate_successors(list, p).into_iter().flat_map(|s| even[&key(s)].clone()).collect();
            let o = &odd_inner[&key(p)];
            if w.len() != o.len() {
                return Err(Error::Construction(format!("bridge count mismatch under {p:?}")));
            }
            for (&a, &b) in w.iter().zip(o) {
                match side {
                    Side::Lower => d.edge(a, b, EdgeClass::LowerBridge),
                    Side::Upper => d.edge(b, a, EdgeClass::UpperBridge),
                }
            }
        }
    }

    let q: Vec<usize> = maximal(&lower).into_iter().flat_map(|p| even[&Couple::Lower(p.0, p.1)].clone()).collect();
    let qp: Vec<usize> = maximal(&upper).into_iter().flat_map(|p| even[&Couple::Upper(p.0, p.1)].clone()).collect();
    if q.len() != qp.len() {
        return Err(Error::Construction(format!("|Q| = {} but |Q'| = {}", q.len(), qp.len())));
    }
    let bridges: Vec<(usize, usize)> = q.iter().copied().zip(qp.iter().copied()).collect();

    // Crossings of middle bridges with vertical segments.
    let mut on_bridge: Vec<Vec<(BigRational, usize)>> = vec![Vec::new(); bridges.len()];
    let mut on_vertical: Vec<Vec<(BigRational, usize)>> = vec![Vec::new(); vertical.len()];
    let mut splits: Vec<(usize, usize)> = Vec::new();
    for (vi, &(a, b)) in vertical.iter().enumerate() {
        let (s, t) = (d.pos[lt(a)].clone(), d.pos[ut(b)].clone());
        for (bi, &(u, v)) in bridges.iter().enumerate() {
            let (pu, pv) = (d.pos[u].clone(), d.pos[v].clone());
            if let Some((tb, tv)) = crossing(&pu, &pv, &s, &t) {
                let lo = d.vertex(format!("z{a}-{b}/{bi}a"), pu.lerp(&pv, &(&tb - eps)));
                let hi = d.vertex(format!("z{a}-{b}/{bi}b"), pu.lerp(&pv, &(&tb + eps)));
                d.edge(lo, hi, EdgeClass::Extra);
                let k = splits.len();
                splits.push((lo, hi));
                on_bridge[bi].push((tb, k));
                on_vertical[vi].push((tv, k));
            }
        }
    }
    for (bi, &(u, v)) in bridges.iter().enumerate() {
        on_bridge[bi].sort();
        let mut cur = u;
        for &(_, k) in &on_bridge[bi] {
            d.edge(cur, splits[k].0, EdgeClass::BEdge);
            cur = splits[k].1;
        }
        d.edge(cur, v, EdgeClass::BEdge);
    }
    for (vi, &(a, b)) in vertical.iter().enumerate() {
        on_vertical[vi].sort();
        let mut s = vec![lt(a)];
        let mut cur = lt(a);
        for &(_, k) in &on_vertical[vi] {
            d.edge(cur, splits[k].1, EdgeClass::VEdge);
            s.push(splits[k].1);
            s.push(splits[k].0);
            cur = splits[k].0;
        }
        d.edge(cur, ut(b), EdgeClass::VEdge);
        s.push(ut(b));
        seq.insert(Couple::Vertical(a, b), s);
    }

    // Shrink the doubled terminals into the middle vertex of their 2-edge path.
    let mut removed = vec![false; d.ids.len()];
    let mut merged_lower: HashMap<usize, usize> = HashMap::new();
    let mut merged_upper: HashMap<usize, usize> = HashMap::new();
    for (list, key, tag, merged) in [
        (&x_lower, Side::Lower, 's', &mut merged_lower),
        (&x_upper, Side::Upper, 't', &mut merged_upper),
    ] {
        for &(i, r) in list {
            let c = match key {
                Side::Lower => Couple::Lower(r, r + 1),
                Side::Upper => Couple::Upper(r, r + 1),
            };
            let s = &seq[&c];
            removed[s[0]] = true;
            removed[s[2]] = true;
            d.ids[s[1]] = format!("{tag}{i}");
            merged.insert(i, s[1]);
        }
    }
    let mut index = vec![usize::MAX; d.ids.len()];
    let mut vertices = Vec::new();
    for v in 0..d.ids.len() {
        if !removed[v] {
            index[v] = vertices.len();
            vertices.push(Vertex {
                id: d.ids[v].clone(),
                pos: d.pos[v].clone(),
            });
        }
    }
    let mut edges = Vec::new();
    let mut classes = Vec::new();
    for &(u, v, c) in &d.edges {
        if !removed[u] && !removed[v] {
            edges.push((index[u], index[v]));
            classes.push(c);
        }
    }
    let terminal = |sl: &[Slot], terms: &[usize], merged: &HashMap<usize, usize>, i: usize| -> usize {
        let k = sl.iter().position(|s| matches!(*s, Slot::Y(e) | Slot::Pad(e) | Slot::XFirst(e) if e == i)).unwrap();
        match sl[k] {
            Slot::XFirst(_) => index[merged[&i]],
            _ => index[terms[k]],
        }
    };
    let sources: Vec<usize> = (1..=ctx.n).map(|i| terminal(&lower_slots, &lower_term, &merged_lower, i)).collect();
    let sinks: Vec<usize> = (1..=ctx.n_prime).map(|i| terminal(&upper_slots, &upper_term, &merged_upper, i)).collect();
    let network = PlanarNetwork::new(vertices, edges, sources, sinks, WeightMode::Vertex)?;
    let segments = seq
        .into_iter()
        .filter_map(|(rc, s)| origin.get(&rc).map(|c| (*c, s.iter().map(|&v| index[v]).collect())))
        .collect();
    let merged = merged_lower.values().chain(merged_upper.values()).map(|&v| index[v]).collect();
    Ok(WitnessNetwork {
        network,
        ctx: ctx.clone(),
        matching: m.clone(),
        classes,
        segments,
        q: (q.len(), qp.len()),
        merged,
    })
}

impl WitnessNetwork {
    pub fn num_middle_bridges(&self) -> usize {
        self.q.0
    }

    /// Degree and orientation law of the construction; returns the violations found.
    pub fn degree_law(&self) -> Vec<String> {
        let g = &self.network;
        let mut issues = Vec::new();
        let outs = g.out_adjacency();
        let ins = g.in_adjacency();
        let is_source: BTreeSet<usize> = g.sources.iter().copied().collect();
        let is_sink: BTreeSet<usize> = g.sinks.iter().copied().collect();
        for v in 0..g.num_vertices() {
            let id = &g.vertices[v].id;
            let (o, i) = (outs[v].len(), ins[v].len());
            if is_source.contains(&v) {
                if i != 0 || o > 1 {
                    issues.push(format!("source {id} has in/out degree {i}/{o}"));
                }
                continue;
            }
            if is_sink.contains(&v) {
                if o != 0 || i > 1 {
                    issues.push(format!("sink {id} has in/out degree {i}/{o}"));
                }
                continue;
            }
            let thick_in = ins[v].iter().filter(|&&(_, e)| self.classes[e].is_thick()).count();
            let thick_out = outs[v].iter().filter(|&&(_, e)| self.classes[e].is_thick()).count();
            let ok = (i == 2 && o == 1 && thick_in == 0 && thick_out == 1) || (i == 1 && o == 2 && thick_in == 1 && thick_out == 0);
            if !ok {
                issues.push(format!("inner vertex {id} breaks the two-thin-one-thick law"));
            }
        }
        // Thin components are exactly the paths L_π, with alternating directions.
        let edge_of: HashMap<(usize, usize), usize> = g.edges.iter().enumerate().map(|(e, &uv)| (uv, e)).collect();
        let mut thin_seen = BTreeSet::new();
        for (c, s) in &self.segments {
            let mut last: Option<bool> = None;
            for w in s.windows(2) {
                let (fwd, e) = match (edge_of.get(&(w[0], w[1])), edge_of.get(&(w[1], w[0]))) {
                    (Some(&e), _) => (true, e),
                    (_, Some(&e)) => (false, e),
                    _ => {
                        issues.push(format!("path of {c} is broken"));
                        break;
                    }
                };
                if self.classes[e].is_thick() {
                    issues.push(format!("path of {c} uses a thick edge"));
                }
                if last == Some(fwd) {
                    issues.push(format!("path of {c} does not alternate"));
                }
                last = Some(fwd);
                thin_seen.insert(e);
            }
        }
        let thin_total = self.classes.iter().filter(|c| !c.is_thick()).count();
        if thin_seen.len() != thin_total {
            issues.push(format!("{} thin edges lie outside the paths L_π", thin_total - thin_seen.len()));
        }
        issues
    }

    /// Thick edges entering and leaving the vertices of `L_π`.
    pub fn zin_zout(&self, c: &Couple) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let g = &self.network;
        let mut zin = BTreeSet::new();
        let mut zout = BTreeSet::new();
        if let Some(s) = self.segments.get(c) {
            let vs: BTreeSet<usize> = s.iter().copied().collect();
            for (e, &(u, v)) in g.edges.iter().enumerate() {
                if self.classes[e].is_thick() {
                    if vs.contains(&v) {
                        zin.insert(e);
                    }
                    if vs.contains(&u) {
                        zout.insert(e);
                    }
                }
            }
        }
        (zin, zout)
    }

    /// An order of the couples in which each one has `Z_in` or `Z_out` covered by its predecessors.
    pub fn processing_order(&self) -> Result<Vec<Couple>> {
        let g = &self.network;
        let mut covered: BTreeSet<usize> = BTreeSet::new();
        for &v in &self.merged {
            for (e, &(a, b)) in g.edges.iter().enumerate() {
                if a == v || b == v {
                    covered.insert(e);
                }
            }
        }
        let z: BTreeMap<Couple, (BTreeSet<usize>, BTreeSet<usize>)> =
            self.matching.couples().map(|c| (*c, self.zin_zout(c))).collect();
        let mut left: Vec<Couple> = self.matching.couples().copied().collect();
        let mut order = Vec::new();
        while !left.is_empty() {
            let Some(k) = left.iter().position(|c| {
                let (zi, zo) = &z[c];
                zi.is_subset(&covered) || zo.is_subset(&covered)
            }) else {
                return Err(Error::Construction(format!("no admissible processing order; stuck at {left:?}")));
            };
            let c = left.remove(k);
            covered.extend(z[&c].0.iter().copied());
            covered.extend(z[&c].1.iter().copied());
            order.push(c);
        }
        Ok(order)
    }

    pub fn to_json(&self) -> Json {
        let g = &self.network;
        let mut j = network_to_json(g, &SemiringSpec::Integers);
        let segments: serde_json::Map<String, Json> = self
            .segments
            .iter()
            .map(|(c, s)| (c.to_string(), json!(s.iter().map(|&v| g.vertices[v].id.clone()).collect::<Vec<_>>())))
            .collect();
        j["annotation"] = json!({
            "matching": self.matching.to_json(),
            "sets": self.ctx.to_json(),
            "edge_classes": self.classes.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "segments": segments,
            "middle_bridges": self.q.0,
        });
        j
    }
}

#[derive(Debug, Clone, Default)]
pub struct AuditReport {
    pub pairs_checked: usize,
    pub feasible_pairs: usize,
    /// (P1): a pair admitting `M` without unique flows on both sides.
    pub p1_failures: Vec<String>,
    /// (P2): a pair not admitting `M` with flows on both sides.
    pub p2_failures: Vec<String>,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.p1_failures.is_empty() && self.p2_failures.is_empty()
    }
}

fn all_pairs(y: &[usize], yp: &[usize]) -> Vec<ProperPair> {
    crate::patterns::proper_pairs(y.len(), yp.len())
        .into_iter()
        .map(|p| p.embed(y, yp))
        .collect()
}

/// Counts flows for every proper pair `(C, C')` and checks (P1) and (P2).
pub fn audit(w: &WitnessNetwork) -> Result<AuditReport> {
    let ctx = &w.ctx;
    let g = &w.network;
    let cap = g.num_vertices();
    let mut report = AuditReport::default();
    for pair in all_pairs(&ctx.y, &ctx.yp) {
        let feasible = feasible_matchings(&ctx.y, &ctx.yp, &pair)?.contains(&w.matching);
        let ((i, ip), (j, jp)) = ctx.args(&pair);
        let a = count_flows(g, &i, &ip, cap)?;
        let b = count_flows(g, &j, &jp, cap)?;
        report.pairs_checked += 1;
        if feasible {
            report.feasible_pairs += 1;
            if (a, b) != (1, 1) {
                report.p1_failures.push(format!("{pair}: flow counts ({a}, {b})"));
            }
        } else if a > 0 && b > 0 {
            report.p2_failures.push(format!("{pair}: flow counts ({a}, {b})"));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discriminating {
    pub matching: PlanarMatching,
    pub lhs_count: usize,
    pub rhs_count: usize,
}

/// A matching on `([m], [m'])` with different multiplicities on the two sides.
pub fn find_discriminating_matching(a0: &TwoPattern, b0: &TwoPattern) -> Result<Discriminating> {
    let report = is_balanced(a0, b0)?;
    match report.witness {
        Some((matching, lhs_count, rhs_count)) => Ok(Discriminating {
            matching,
            lhs_count,
            rhs_count,
        }),
        None => Err(Error::PatternsBalanced),
    }
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub witness: WitnessNetwork,
    pub discriminating: Discriminating,
    pub lhs: Value,
    pub rhs: Value,
}

impl Violation {
    pub fn to_json(&self) -> Json {
        json!({
            "matching": self.witness.matching.to_json(),
            "counts": [self.discriminating.lhs_count, self.discriminating.rhs_count],
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "network": self.witness.to_json(),
        })
    }
}

/// Builds the witness for an unbalanced pair and evaluates both sides over `ℤ` with unit weights.
pub fn demonstrate_violation(a0: &TwoPattern, b0: &TwoPattern, ctx: &SetContext) -> Result<Violation> {
    let disc = find_discriminating_matching(a0, b0)?;
    if ctx.m() != a0.m || ctx.m_prime() != a0.m_prime {
        return Err(Error::InconsistentSets(format!(
            "patterns live on ([{}], [{}]) but |Y| = {}, |Y'| = {}",
            a0.m,
            a0.m_prime,
            ctx.m(),
            ctx.m_prime()
        )));
    }
    let m = embed_matching(&disc.matching, &ctx.y, &ctx.yp);
    let witness = build_witness_network(ctx, &m)?;
    let cap = witness.network.num_vertices();
    let ri = RelationInstance::from_patterns(SemiringSpec::Integers, witness.network.clone(), ctx.clone(), a0, b0)?.with_cap(cap);
    let out = evaluate_sq(&ri)?;
    Ok(Violation {
        witness,
        discriminating: disc,
        lhs: out.lhs,
        rhs: out.rhs,
    })
}
