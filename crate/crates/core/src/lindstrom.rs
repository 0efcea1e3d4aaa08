//! Exact minors, flow matrices and the compiler from matrices to planar networks.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::flows::fg_value;
use crate::network::{PlanarNetwork, Point, Vertex, WeightMode};
use crate::patterns::{is_balanced, SetContext, TwoPattern};
use crate::relations::{side_value_with, RelationOutcome};
use crate::semiring::{parse_rational, SemiringSpec, Value};

/// `rows × cols` matrix with exact entries. Rows are indexed by sinks, columns by sources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub spec: SemiringSpec,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Value>>,
}

impl ExactMatrix {
    pub fn new(spec: SemiringSpec, entries: Vec<Vec<Value>>) -> Result<ExactMatrix> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch("ragged matrix".into()));
        }
        let entries = entries
            .iter()
            .map(|r| r.iter().map(|v| spec.coerce(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix {
            spec,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> ExactMatrix {
        let entries = rows.iter().map(|r| r.iter().map(|&x| Value::int(x)).collect()).collect();
        ExactMatrix::new(SemiringSpec::Integers, entries).expect("integer entries")
    }

    pub fn from_rationals(rows: Vec<Vec<BigRational>>) -> Result<ExactMatrix> {
        let entries = rows.into_iter().map(|r| r.into_iter().map(Value::Rat).collect()).collect();
        ExactMatrix::new(SemiringSpec::Rationals, entries)
    }

    pub fn zeros(spec: &SemiringSpec, rows: usize, cols: usize) -> Result<ExactMatrix> {
        let z = spec.zero().ok_or_else(|| Error::RingRequired(spec.name()))?;
        Ok(ExactMatrix {
            spec: spec.clone(),
            rows,
            cols,
            entries: vec![vec![z; cols]; rows],
        })
    }

    pub fn identity(spec: &SemiringSpec, r: usize) -> Result<ExactMatrix> {
        let mut m = ExactMatrix::zeros(spec, r, r)?;
        let one = spec.one().ok_or_else(|| Error::RingRequired(spec.name()))?;
        for k in 0..r {
            m.entries[k][k] = one.clone();
        }
        Ok(m)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let spec = &self.spec;
        let mut out = ExactMatrix::zeros(spec, self.rows, other.cols)?;
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = out.entries[r][c].clone();
                for k in 0..self.cols {
                    acc = spec.add(&acc, &spec.mul(&self.entries[r][k], &other.entries[k][c])?)?;
                }
                out.entries[r][c] = acc;
            }
        }
        Ok(out)
    }

    pub fn to_rationals(&self) -> Result<ExactMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.as_rat().ok_or_else(|| Error::NotInSemiring {
                        value: v.to_string(),
                        semiring: "rationals".into(),
                    }))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_rationals(rows)
    }

    pub fn equal(&self, other: &ExactMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| self.spec.equal(x, y)))
    }

    /// Row-major array of rational strings.
    pub fn to_json(&self) -> Json {
        Json::Array(
            self.entries
                .iter()
                .map(|r| Json::Array(r.iter().map(|v| json!(v.to_string())).collect()))
                .collect(),
        )
    }

    pub fn from_json(j: &Json) -> Result<ExactMatrix> {
        let rows = j
            .as_array()
            .or_else(|| j.get("rows").and_then(Json::as_array))
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("row must be an array".into()))?
                    .iter()
                    .map(|x| match x {
                        Json::String(s) => parse_rational(s),
                        Json::Number(n) => n
                            .as_i64()
                            .map(|i| BigRational::from_integer(i.into()))
                            .ok_or_else(|| Error::Parse(format!("entry {n} is not exact"))),
                        other => Err(Error::Parse(format!("bad entry {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if parsed.iter().flatten().all(|x| x.is_integer()) {
            let entries = parsed.into_iter().map(|r| r.into_iter().map(|x| Value::Int(x.to_integer())).collect()).collect();
            ExactMatrix::new(SemiringSpec::Integers, entries)
        } else {
            ExactMatrix::from_rationals(parsed)
        }
    }
}

/// Determinant by dynamic programming over the set of used columns.
fn det(spec: &SemiringSpec, m: &[Vec<Value>]) -> Result<Value> {
    let k = m.len();
    let zero = spec.zero().ok_or_else(|| Error::RingRequired(spec.name()))?;
    let one = spec.one().ok_or_else(|| Error::RingRequired(spec.name()))?;
    let mut dp: Vec<Option<Value>> = vec![None; 1 << k];
    dp[0] = Some(one);
    for mask in 0usize..(1 << k) {
        let Some(cur) = dp[mask].take() else { continue };
        let r = mask.count_ones() as usize;
        if r == k {
            dp[mask] = Some(cur);
            continue;
        }
        for c in 0..k {
            if mask >> c & 1 == 1 || spec.equal(&m[r][c], &zero) {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let mut term = spec.mul(&cur, &m[r][c])?;
            if above % 2 == 1 {
                term = spec.neg(&term)?;
            }
            spec.add_into(&mut dp[mask | 1 << c], &term)?;
        }
    }
    Ok(dp[(1 << k) - 1].take().unwrap_or(zero))
}

/// Minor with column set `I` and row set `I'` (1-based); the empty minor is 1.
pub fn minor(a: &ExactMatrix, cols: &[usize], rows: &[usize]) -> Result<Value> {
    if cols.len() != rows.len() {
        return Err(Error::SizeMismatch(format!("|I| = {} but |I'| = {}", cols.len(), rows.len())));
    }
    if cols.iter().any(|&c| c == 0 || c > a.cols) || rows.iter().any(|&r| r == 0 || r > a.rows) {
        return Err(Error::OutOfRange("minor index outside the matrix".into()));
    }
    let sub: Vec<Vec<Value>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| a.entries[r - 1][c - 1].clone()).collect())
        .collect();
    det(&a.spec, &sub)
}

/// Flag minors: rows `1..=|I|`.
pub fn flag_minor(a: &ExactMatrix, cols: &[usize]) -> Result<Value> {
    let rows: Vec<usize> = (1..=cols.len()).collect();
    minor(a, cols, &rows)
}

/// Entry `(j, i)` is the total weight of paths from `s_i` to `t_j`.
pub fn flow_matrix(g: &PlanarNetwork, spec: &SemiringSpec) -> Result<ExactMatrix> {
    let zero = spec.zero().ok_or_else(|| Error::RingRequired(spec.name()))?;
    let one = spec.one().ok_or_else(|| Error::RingRequired(spec.name()))?;
    let order = g
        .topological_order()
        .map_err(|_| Error::InvalidNetwork("network has a cycle".into()))?;
    let outs = g.out_adjacency();
    let weight = |k: usize| -> Result<Value> {
        match &g.weights[k] {
            Some(v) => spec.coerce(v),
            None => Ok(one.clone()),
        }
    };
    let (vw, ew): (Vec<Value>, Vec<Value>) = match g.weight_mode {
        WeightMode::Vertex => (
            (0..g.num_vertices()).map(weight).collect::<Result<_>>()?,
            vec![one.clone(); g.edges.len()],
        ),
        WeightMode::Edge => (
            vec![one.clone(); g.num_vertices()],
            (0..g.edges.len()).map(weight).collect::<Result<_>>()?,
        ),
    };
    let mut m = ExactMatrix::zeros(spec, g.n_prime(), g.n())?;
    for (i, &s) in g.sources.iter().enumerate() {
        let mut acc: Vec<Option<Value>> = vec![None; g.num_vertices()];
        acc[s] = Some(vw[s].clone());
        for &v in &order {
            let Some(x) = acc[v].clone() else { continue };
            for &(u, e) in &outs[v] {
                let term = spec.mul(&spec.mul(&x, &ew[e])?, &vw[u])?;
                spec.add_into(&mut acc[u], &term)?;
            }
        }
        for (j, &t) in g.sinks.iter().enumerate() {
            m.entries[j][i] = acc[t].clone().unwrap_or_else(|| zero.clone());
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Default)]
pub struct LindstromReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl LindstromReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=n).filter(|b| m >> (b - 1) & 1 == 1).collect())
        .collect()
}

/// Compares every minor of size `≤ size_cap` of the flow matrix with the FG-value.
pub fn verify_lindstrom(g: &PlanarNetwork, spec: &SemiringSpec, size_cap: usize) -> Result<LindstromReport> {
    if !spec.is_ring() {
        return Err(Error::RingRequired(spec.name()));
    }
    let f = flow_matrix(g, spec)?;
    let mut report = LindstromReport::default();
    for k in 0..=size_cap.min(g.n()).min(g.n_prime()) {
        for i in subsets(g.n(), k) {
            for ip in subsets(g.n_prime(), k) {
                let a = minor(&f, &i, &ip)?;
                let b = fg_value(spec, g, &i, &ip)?;
                report.checked += 1;
                if !spec.equal(&a, &b) {
                    report
                        .mismatches
                        .push(format!("{i:?}|{ip:?}: minor {} vs flows {}", spec.display(&a), spec.display(&b)));
                }
            }
        }
    }
    Ok(report)
}

/// One factor of the product: an elementary matrix of the given size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// `rows × cols`, zero off the diagonal.
    QuasiDiagonal { rows: usize, cols: usize, diag: Vec<BigRational> },
    /// Identity of order `r` with columns `i`, `i+1` exchanged.
    AdjacentSwap { r: usize, i: usize },
    /// Identity of order `r` with `x` at column `i`, row `i+1`.
    AdjacentAdd { r: usize, i: usize, x: BigRational },
}

fn rat_value(x: &BigRational) -> Value {
    Value::Rat(x.clone())
}

impl Factor {
    pub fn dims(&self) -> (usize, usize) {
        match *self {
            Factor::QuasiDiagonal { rows, cols, .. } => (rows, cols),
            Factor::AdjacentSwap { r, .. } | Factor::AdjacentAdd { r, .. } => (r, r),
        }
    }

    pub fn matrix(&self) -> ExactMatrix {
        let (rows, cols) = self.dims();
        let mut m = ExactMatrix::zeros(&SemiringSpec::Rationals, rows, cols).expect("rationals have a zero");
        let one = Value::Rat(BigRational::one());
        match self {
            Factor::QuasiDiagonal { diag, .. } => {
                for (k, d) in diag.iter().enumerate() {
                    m.entries[k][k] = rat_value(d);
                }
            }
            Factor::AdjacentSwap { r, i } => {
                for k in 0..*r {
                    m.entries[k][k] = one.clone();
                }
                m.entries[i - 1][i - 1] = Value::Rat(BigRational::zero());
                m.entries[*i][*i] = Value::Rat(BigRational::zero());
                m.entries[i - 1][*i] = one.clone();
                m.entries[*i][i - 1] = one.clone();
            }
            Factor::AdjacentAdd { r, i, x } => {
                for k in 0..*r {
                    m.entries[k][k] = one.clone();
                }
                m.entries[*i][i - 1] = rat_value(x);
            }
        }
        m
    }

    /// The gadget realizing this factor as a flow matrix: sources at `(k, 0)`, sinks at `(k, 2)`.
    pub fn gadget(&self) -> PlanarNetwork {
        let (rows, cols) = self.dims();
        let r = |n: i64| BigRational::from_integer(n.into());
        let mut vertices: Vec<Vertex> = (1..=cols)
            .map(|k| Vertex {
                id: format!("s{k}"),
                pos: Point::from_ints(k as i64, 0),
            })
            .collect();
        vertices.extend((1..=rows).map(|k| Vertex {
            id: format!("t{k}"),
            pos: Point::from_ints(k as i64, 2),
        }));
        let t = |k: usize| cols + k - 1;
        let s = |k: usize| k - 1;
        let mut edges: Vec<(usize, usize, BigRational)> = Vec::new();
        match self {
            Factor::QuasiDiagonal { diag, .. } => {
                for (k, d) in diag.iter().enumerate() {
                    if !d.is_zero() {
                        edges.push((s(k + 1), t(k + 1), d.clone()));
                    }
                }
            }
            Factor::AdjacentSwap { r: n, i } => {
                let hub = vertices.len();
                vertices.push(Vertex {
                    id: "v".into(),
                    pos: Point::new(r(2 * *i as i64 + 1) / r(2), r(1)),
                });
                for k in 1..=*n {
                    let w = if k == *i || k == i + 1 { -r(1) } else { r(1) };
                    edges.push((s(k), t(k), w));
                }
                for (a, b) in [(s(*i), hub), (s(i + 1), hub), (hub, t(*i)), (hub, t(i + 1))] {
                    edges.push((a, b, r(1)));
                }
            }
            Factor::AdjacentAdd { r: n, i, x } => {
                for k in 1..=*n {
                    edges.push((s(k), t(k), r(1)));
                }
                edges.push((s(*i), t(i + 1), x.clone()));
            }
        }
        let sources = (1..=cols).map(s).collect();
        let sinks = (1..=rows).map(t).collect();
        let mut g = PlanarNetwork::new(vertices, edges.iter().map(|&(a, b, _)| (a, b)).collect(), sources, sinks, WeightMode::Edge)
            .expect("gadgets are well formed");
        g.weights = edges.into_iter().map(|(_, _, w)| Some(Value::Rat(w))).collect();
        g
    }

    fn inverse(&self) -> Factor {
        match self {
            Factor::AdjacentAdd { r, i, x } => Factor::AdjacentAdd { r: *r, i: *i, x: -x.clone() },
            other => other.clone(),
        }
    }

    pub fn to_json(&self) -> Json {
        let s = |x: &BigRational| x.to_string();
        match self {
            Factor::QuasiDiagonal { rows, cols, diag } => {
                json!({"kind": "quasi-diagonal", "rows": rows, "cols": cols, "diag": diag.iter().map(s).collect::<Vec<_>>()})
            }
            Factor::AdjacentSwap { r, i } => json!({"kind": "adjacent-swap", "r": r, "i": i}),
            Factor::AdjacentAdd { r, i, x } => json!({"kind": "adjacent-add", "r": r, "i": i, "x": s(x)}),
        }
    }
}

/// Factors in product order: the matrix is `factors[0] · factors[1] · …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetChain {
    pub factors: Vec<Factor>,
}

impl GadgetChain {
    pub fn product(&self) -> Result<ExactMatrix> {
        let mut it = self.factors.iter();
        let first = it.next().ok_or_else(|| Error::Construction("empty chain".into()))?;
        let mut acc = first.matrix();
        for f in it {
            acc = acc.mul(&f.matrix())?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Json {
        Json::Array(self.factors.iter().map(Factor::to_json).collect())
    }
}

fn apply_left(a: &mut [Vec<BigRational>], f: &Factor) {
    match f {
        Factor::AdjacentSwap { i, .. } => a.swap(i - 1, *i),
        Factor::AdjacentAdd { i, x, .. } => {
            let src = a[i - 1].clone();
            for (dst, s) in a[*i].iter_mut().zip(&src) {
                *dst += x * s;
            }
        }
        Factor::QuasiDiagonal { .. } => unreachable!(),
    }
}

fn apply_right(a: &mut [Vec<BigRational>], f: &Factor) {
    for row in a.iter_mut() {
        match f {
            Factor::AdjacentSwap { i, .. } => row.swap(i - 1, *i),
            Factor::AdjacentAdd { i, x, .. } => {
                let add = x * &row[*i];
                row[i - 1] += add;
            }
            Factor::QuasiDiagonal { .. } => unreachable!(),
        }
    }
}

/// Adjacent-only elimination down to a quasi-diagonal matrix.
pub fn factorize(m: &ExactMatrix) -> Result<GadgetChain> {
    let q = m.to_rationals()?;
    let (rows, cols) = (q.rows, q.cols);
    let mut a: Vec<Vec<BigRational>> = q
        .entries
        .iter()
        .map(|r| r.iter().map(|v| v.as_rat().expect("rational")).collect())
        .collect();
    let mut left: Vec<Factor> = Vec::new();
    let mut right: Vec<Factor> = Vec::new();
    let do_left = |a: &mut Vec<Vec<BigRational>>, f: Factor, left: &mut Vec<Factor>| {
        apply_left(a, &f);
        left.push(f);
    };
    let do_right = |a: &mut Vec<Vec<BigRational>>, f: Factor, right: &mut Vec<Factor>| {
        apply_right(a, &f);
        right.push(f);
    };
    for k in 0..rows.min(cols) {
        let Some(c) = (k..cols).find(|&c| (k..rows).any(|r| !a[r][c].is_zero())) else {
            break;
        };
        for j in (k + 1..=c).rev() {
            do_right(&mut a, Factor::AdjacentSwap { r: cols, i: j }, &mut right);
        }
        for r in (k + 1..rows).rev() {
            if a[r][k].is_zero() {
                continue;
            }
            if a[r - 1][k].is_zero() {
                do_left(&mut a, Factor::AdjacentSwap { r: rows, i: r }, &mut left);
            } else {
                let x = -(&a[r][k] / &a[r - 1][k]);
                do_left(&mut a, Factor::AdjacentAdd { r: rows, i: r, x }, &mut left);
            }
        }
        for j in (k + 1..cols).rev() {
            if a[k][j].is_zero() {
                continue;
            }
            if a[k][j - 1].is_zero() {
                do_right(&mut a, Factor::AdjacentSwap { r: cols, i: j }, &mut right);
            } else {
                // Column j += x · column j-1, as a swap-conjugated adjacent addition.
                let x = -(&a[k][j] / &a[k][j - 1]);
                do_right(&mut a, Factor::AdjacentSwap { r: cols, i: j }, &mut right);
                do_right(&mut a, Factor::AdjacentAdd { r: cols, i: j, x }, &mut right);
                do_right(&mut a, Factor::AdjacentSwap { r: cols, i: j }, &mut right);
            }
        }
    }
    for (r, row) in a.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if r != c && !x.is_zero() {
                return Err(Error::Construction("elimination left an off-diagonal entry".into()));
            }
        }
    }
    let diag = (0..rows.min(cols)).map(|k| a[k][k].clone()).collect();
    let mut factors: Vec<Factor> = left.iter().map(Factor::inverse).collect();
    factors.push(Factor::QuasiDiagonal { rows, cols, diag });
    factors.extend(right.iter().rev().map(Factor::inverse));
    Ok(GadgetChain { factors })
}

/// An edge-weighted planar network whose flow matrix is `m`.
pub fn compile_matrix_to_network(m: &ExactMatrix) -> Result<(PlanarNetwork, GadgetChain)> {
    let chain = factorize(m)?;
    let mut it = chain.factors.iter().rev();
    let mut g = it.next().expect("chain has a quasi-diagonal factor").gadget();
    for f in it {
        g = g.concatenate(&f.gadget())?;
    }
    let mut kind = vec![None; g.num_vertices()];
    for (k, &s) in g.sources.iter().enumerate() {
        kind[s] = Some(format!("s{}", k + 1));
    }
    for (k, &t) in g.sinks.iter().enumerate() {
        kind[t] = Some(format!("t{}", k + 1));
    }
    let mut inner = 0;
    for (v, vx) in g.vertices.iter_mut().enumerate() {
        vx.id = match kind[v].take() {
            Some(id) => id,
            None => {
                inner += 1;
                format!("u{inner}")
            }
        };
    }
    Ok((g, chain))
}

/// Both sides of the relation for the minor function of `a`; only balanced pairs are accepted.
pub fn check_matrix_sq(a: &ExactMatrix, a0: &TwoPattern, b0: &TwoPattern, ctx: &SetContext) -> Result<RelationOutcome> {
    if !a.spec.is_ring() {
        return Err(Error::RingRequired(a.spec.name()));
    }
    if !is_balanced(a0, b0)?.balanced {
        return Err(Error::PatternsUnbalanced);
    }
    if ctx.n != a.cols || ctx.n_prime != a.rows {
        return Err(Error::InconsistentSets(format!(
            "context over [{}]×[{}] for a {}×{} matrix",
            ctx.n, ctx.n_prime, a.rows, a.cols
        )));
    }
    let lhs_f = a0.embed(&ctx.y, &ctx.yp)?;
    let rhs_f = b0.embed(&ctx.y, &ctx.yp)?;
    let lhs = side_value_with(&a.spec, ctx, &lhs_f, |i, ip| minor(a, i, ip))?;
    let rhs = side_value_with(&a.spec, ctx, &rhs_f, |i, ip| minor(a, i, ip))?;
    let equal = a.spec.equal(&lhs, &rhs);
    Ok(RelationOutcome { lhs, rhs, equal })
}
