//! Both sides of a stable quadratic relation, symbolic stability checks and the flag-manifold identity.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::flows::{fg_value_capped, DEFAULT_VERTEX_CAP};
use crate::network::{PlanarNetwork, StandardKind, WeightMode};
use crate::patterns::{Family, SetContext, TwoPattern};
use crate::semiring::{SemiringSpec, Value};

/// Memoized `f(I|I')` on one network.
pub struct FgCache<'a> {
    spec: SemiringSpec,
    network: &'a PlanarNetwork,
    cap: usize,
    values: HashMap<(Vec<usize>, Vec<usize>), Value>,
}

impl<'a> FgCache<'a> {
    pub fn new(spec: SemiringSpec, network: &'a PlanarNetwork, cap: usize) -> FgCache<'a> {
        FgCache {
            spec,
            network,
            cap,
            values: HashMap::new(),
        }
    }

    pub fn spec(&self) -> &SemiringSpec {
        &self.spec
    }

    pub fn get(&mut self, i: &[usize], ip: &[usize]) -> Result<Value> {
        let key = (i.to_vec(), ip.to_vec());
        if let Some(v) = self.values.get(&key) {
            return Ok(v.clone());
        }
        let v = fg_value_capped(&self.spec, self.network, i, ip, self.cap)?;
        self.values.insert(key, v.clone());
        Ok(v)
    }
}

#[derive(Debug, Clone)]
pub struct RelationInstance {
    pub spec: SemiringSpec,
    pub network: PlanarNetwork,
    pub ctx: SetContext,
    pub lhs: Family,
    pub rhs: Family,
    /// Vertex cap passed to flow enumeration.
    pub cap: usize,
}

impl RelationInstance {
    pub fn new(spec: SemiringSpec, network: PlanarNetwork, ctx: SetContext, lhs: Family, rhs: Family) -> Result<RelationInstance> {
        for fam in [&lhs, &rhs] {
            if fam.y != ctx.y || fam.yp != ctx.yp {
                return Err(Error::InconsistentSets("family is not over the context's (Y, Y')".into()));
            }
            for pair in fam.members.keys() {
                pair.check(&ctx.y, &ctx.yp)?;
            }
        }
        if ctx.n != network.n() || ctx.n_prime != network.n_prime() {
            return Err(Error::InconsistentSets(format!(
                "context is over [{}]×[{}] but the network has {} sources and {} sinks",
                ctx.n,
                ctx.n_prime,
                network.n(),
                network.n_prime()
            )));
        }
        Ok(RelationInstance {
            spec,
            network,
            ctx,
            lhs,
            rhs,
            cap: DEFAULT_VERTEX_CAP,
        })
    }

    /// Embeds both patterns into the context's `(Y, Y')`.
    pub fn from_patterns(
        spec: SemiringSpec,
        network: PlanarNetwork,
        ctx: SetContext,
        a0: &TwoPattern,
        b0: &TwoPattern,
    ) -> Result<RelationInstance> {
        let lhs = a0.embed(&ctx.y, &ctx.yp)?;
        let rhs = b0.embed(&ctx.y, &ctx.yp)?;
        RelationInstance::new(spec, network, ctx, lhs, rhs)
    }

    pub fn with_cap(mut self, cap: usize) -> RelationInstance {
        self.cap = cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationOutcome {
    pub lhs: Value,
    pub rhs: Value,
    pub equal: bool,
}

impl RelationOutcome {
    pub fn to_json(&self, spec: &SemiringSpec) -> Json {
        json!({
            "lhs": crate::semiring::value_to_json(spec, &self.lhs),
            "rhs": crate::semiring::value_to_json(spec, &self.rhs),
            "equal": self.equal,
        })
    }
}

/// `⊕_{(A,A') ∈ 𝒜} f(XA|X'A') ⊙ f(XĀ|X'Ā')` for an arbitrary `f`.
pub fn side_value_with<F>(spec: &SemiringSpec, ctx: &SetContext, family: &Family, mut f: F) -> Result<Value>
where
    F: FnMut(&[usize], &[usize]) -> Result<Value>,
{
    let mut acc: Option<Value> = None;
    for (pair, &k) in &family.members {
        let ((i, ip), (j, jp)) = ctx.args(pair);
        let term = spec.mul(&f(&i, &ip)?, &f(&j, &jp)?)?;
        for _ in 0..k {
            spec.add_into(&mut acc, &term)?;
        }
    }
    match acc {
        Some(v) => Ok(v),
        None => spec.neutral().ok_or(Error::EmptySumWithoutNeutral),
    }
}

/// [`side_value_with`] for the FG-function of the cached network.
pub fn side_value(cache: &mut FgCache<'_>, ctx: &SetContext, family: &Family) -> Result<Value> {
    let spec = cache.spec().clone();
    side_value_with(&spec, ctx, family, |i, ip| cache.get(i, ip))
}

/// Evaluates both sides; semirings without a zero get the `∗` extension for empty flow sets.
pub fn evaluate_sq(ri: &RelationInstance) -> Result<RelationOutcome> {
    let spec = ri.spec.with_neutral();
    let mut cache = FgCache::new(spec.clone(), &ri.network, ri.cap);
    let lhs = side_value(&mut cache, &ri.ctx, &ri.lhs)?;
    let rhs = side_value(&mut cache, &ri.ctx, &ri.rhs)?;
    let equal = spec.equal(&lhs, &rhs);
    Ok(RelationOutcome { lhs, rhs, equal })
}

/// Puts one variable `w_<id>` on every vertex (or edge) and returns the matching semiring.
pub fn symbolic_weights(g: &PlanarNetwork) -> (PlanarNetwork, SemiringSpec) {
    let mut out = g.clone();
    let names: Vec<String> = match g.weight_mode {
        WeightMode::Vertex => g.vertices.iter().map(|v| format!("w_{}", v.id)).collect(),
        WeightMode::Edge => (0..g.edges.len()).map(|e| format!("w_{}", g.edge_label(e))).collect(),
    };
    out.weights = (0..names.len()).map(|k| Some(Value::var(k))).collect();
    (out, SemiringSpec::polynomial(names))
}

/// Which networks and contexts [`verify_symbolic`] samples.
#[derive(Debug, Clone)]
pub struct SymbolicConfig {
    pub max_vertices: usize,
    /// `None` runs every consistent context.
    pub contexts_per_network: Option<usize>,
    pub seed: u64,
    pub include_grids: bool,
    pub include_half_grids: bool,
    pub include_truncated: bool,
    /// Extra networks, tried whenever they have enough terminals.
    pub extra: Vec<(String, PlanarNetwork)>,
}

impl Default for SymbolicConfig {
    fn default() -> Self {
        SymbolicConfig {
            max_vertices: 25,
            contexts_per_network: Some(3),
            seed: 0,
            include_grids: true,
            include_half_grids: true,
            include_truncated: true,
            extra: Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SymbolicCase {
    pub network: String,
    pub ctx: SetContext,
    pub equal: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

#[derive(Debug, Clone, Default)]
pub struct SymbolicReport {
    pub cases: Vec<SymbolicCase>,
    /// Set when no standard network within the vertex budget fits the shape
    /// and the smallest fitting one was used instead.
    pub oversized: Option<String>,
}

impl SymbolicReport {
    pub fn all_equal(&self) -> bool {
        self.cases.iter().all(|c| c.equal)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "all_equal": self.all_equal(),
            "oversized": self.oversized,
            "cases": self.cases.iter().map(|c| json!({
                "network": c.network,
                "sets": c.ctx.to_json(),
                "equal": c.equal,
                "lhs_terms": c.lhs_terms,
                "rhs_terms": c.rhs_terms,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Smallest `(n, n')` admitting a consistent context for the shape `(m, m')`.
pub fn minimal_terminals(m: usize, m_prime: usize) -> (usize, usize) {
    if m >= m_prime {
        (m, m_prime + (m - m_prime) / 2)
    } else {
        (m + (m_prime - m) / 2, m_prime)
    }
}

fn vertex_count(kind: StandardKind) -> usize {
    match kind {
        StandardKind::Grid(a, b) => a * b,
        StandardKind::HalfGrid(a) => a * (a + 1) / 2,
        StandardKind::TruncatedHalfGrid(a, b) => (1..=a).map(|i| i.min(b)).sum(),
        StandardKind::GVGrid(l, w) => l * w,
    }
}

/// Standard networks with at least `n` sources and `n'` sinks; falls back to the
/// smallest truncated half-grid when nothing fits the budget.
pub fn standard_family(n: usize, np: usize, cfg: &SymbolicConfig) -> (Vec<(String, PlanarNetwork)>, Option<String>) {
    let mut kinds = Vec::new();
    let n = n.max(1);
    let np = np.max(1);
    if cfg.include_half_grids {
        let k = n.max(np);
        kinds.push(StandardKind::HalfGrid(k));
        kinds.push(StandardKind::HalfGrid(k + 1));
    }
    if cfg.include_grids {
        for a in n..=n + 1 {
            for b in np..=np + 1 {
                kinds.push(StandardKind::Grid(a, b));
            }
        }
    }
    if cfg.include_truncated && np < n {
        kinds.push(StandardKind::TruncatedHalfGrid(n, np));
        kinds.push(StandardKind::TruncatedHalfGrid(n + 1, np));
    }
    let mut out: Vec<(String, PlanarNetwork)> = kinds
        .iter()
        .filter(|&&k| vertex_count(k) <= cfg.max_vertices)
        .map(|&k| (format!("{k:?}"), PlanarNetwork::build_standard(k)))
        .collect();
    for (name, g) in &cfg.extra {
        if g.n() >= n && g.n_prime() >= np {
            out.push((name.clone(), g.clone()));
        }
    }
    if out.is_empty() {
        let k = if np < n {
            StandardKind::TruncatedHalfGrid(n, np)
        } else {
            StandardKind::HalfGrid(np)
        };
        let name = format!("{k:?}");
        return (vec![(name.clone(), PlanarNetwork::build_standard(k))], Some(name));
    }
    (out, None)
}

/// Compares both sides in `ℤ[w]` with one variable per vertex over a sample of networks and contexts.
pub fn verify_symbolic(a0: &TwoPattern, b0: &TwoPattern, cfg: &SymbolicConfig) -> Result<SymbolicReport> {
    if (a0.m, a0.m_prime) != (b0.m, b0.m_prime) {
        return Err(Error::SizeMismatch("patterns over different ground sets".into()));
    }
    let (m, mp) = (a0.m, a0.m_prime);
    let (n, np) = minimal_terminals(m, mp);
    let (networks, oversized) = standard_family(n, np, cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = SymbolicReport {
        cases: Vec::new(),
        oversized,
    };
    for (name, g) in networks {
        let (g, spec) = symbolic_weights(&g);
        let mut contexts = SetContext::enumerate(g.n(), g.n_prime(), m, mp);
        if let Some(k) = cfg.contexts_per_network {
            if contexts.len() > k {
                let first = contexts[0].clone();
                contexts.shuffle(&mut rng);
                contexts.truncate(k);
                if !contexts.contains(&first) {
                    contexts[0] = first;
                }
            }
        }
        let cap = g.num_vertices().max(DEFAULT_VERTEX_CAP);
        let mut cache = FgCache::new(spec.clone(), &g, cap);
        for ctx in contexts {
            let lhs = side_value(&mut cache, &ctx, &a0.embed(&ctx.y, &ctx.yp)?)?;
            let rhs = side_value(&mut cache, &ctx, &b0.embed(&ctx.y, &ctx.yp)?)?;
            let terms = |v: &Value| v.as_poly().map_or(0, |p| p.num_terms());
            report.cases.push(SymbolicCase {
                network: name.clone(),
                equal: spec.equal(&lhs, &rhs),
                lhs_terms: terms(&lhs),
                rhs_terms: terms(&rhs),
                ctx,
            });
        }
    }
    Ok(report)
}

/// Number of pairs `(i, j) ∈ I × J` with `i > j`.
pub fn inversions(i: &[usize], j: &[usize]) -> usize {
    i.iter().map(|&a| j.iter().filter(|&&b| a > b).count()).sum()
}

fn k_subsets(ground: &[usize], k: usize) -> Vec<Vec<usize>> {
    (0u64..(1 << ground.len()))
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..ground.len()).filter(|b| mask >> b & 1 == 1).map(|b| ground[b]).collect())
        .collect()
}

fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

/// `f(I) f(J) = Σ_K (−1)^{a + Inv((I−K)∪Z, (J−Z)∪K)} f((I−K)∪Z) f((J−Z)∪K)`
/// over `K ⊆ I−J` with `|K| = |Z|`, where `a = |Z| + Inv(I−J, J−I)`.
///
/// Inversions are counted with `I ∩ J` removed from both arguments. Common
/// elements only contribute a sign that does not depend on `K`, and leaving
/// them in breaks the identity (`I = 12, J = 13, Z = 3`).
pub fn flag_manifold_relation<F>(spec: &SemiringSpec, mut f: F, i: &[usize], j: &[usize], z: &[usize]) -> Result<RelationOutcome>
where
    F: FnMut(&[usize]) -> Result<Value>,
{
    if !spec.is_ring() {
        return Err(Error::RingRequired(spec.name()));
    }
    let norm = |v: &[usize]| {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.dedup();
        s
    };
    let (i, j, z) = (norm(i), norm(j), norm(z));
    if i.len() < j.len() {
        return Err(Error::BadParams("need |I| ≥ |J|".into()));
    }
    let j_minus_i = minus(&j, &i);
    if !z.iter().all(|x| j_minus_i.contains(x)) {
        return Err(Error::BadParams("Z must lie in J − I".into()));
    }
    let i_minus_j = minus(&i, &j);
    let common = minus(&i, &i_minus_j);
    let a = z.len() + inversions(&i_minus_j, &j_minus_i);
    let lhs = spec.mul(&f(&i)?, &f(&j)?)?;
    let mut rhs = spec.zero().ok_or_else(|| Error::RingRequired(spec.name()))?;
    for k in k_subsets(&i_minus_j, z.len()) {
        let left = sorted_union(&minus(&i, &k), &z);
        let right = sorted_union(&minus(&j, &z), &k);
        let term = spec.mul(&f(&left)?, &f(&right)?)?;
        let inv = inversions(&minus(&left, &common), &minus(&right, &common));
        rhs = if (a + inv).is_multiple_of(2) {
            spec.add(&rhs, &term)?
        } else {
            spec.sub(&rhs, &term)?
        };
    }
    let equal = spec.equal(&lhs, &rhs);
    Ok(RelationOutcome { lhs, rhs, equal })
}
