//! Schur polynomials, semistandard tableaux and their flows on the Gessel-Viennot grid.
//!
//! Rows of a diagram are numbered from the bottom: row 1 is the longest.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::flows::Flow;
use crate::network::{PlanarNetwork, StandardKind};
use crate::semiring::{Monomial, Polynomial, SemiringSpec, Value};

/// `λ₁ ≥ … ≥ λ_r ≥ 0`; trailing zeros count towards the length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    pub parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadParams(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn zero(r: usize) -> Partition {
        Partition { parts: vec![0; r] }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Every partition of length `r` with parts at most `max_part`.
    pub fn all_within(r: usize, max_part: usize) -> Vec<Partition> {
        fn rec(r: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if cur.len() == r {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (0..=cap).rev() {
                cur.push(p);
                rec(r, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(r, max_part, &mut Vec::new(), &mut out);
        out
    }

    pub fn to_json(&self) -> Json {
        json!(self.parts)
    }

    pub fn from_json(j: &Json) -> Result<Partition> {
        let parts = j
            .as_array()
            .ok_or_else(|| Error::Parse("partition must be an array".into()))?
            .iter()
            .map(|x| x.as_u64().map(|v| v as usize).ok_or_else(|| Error::Parse(format!("bad part {x}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `A_λ = {λ_r + 1, λ_{r-1} + 2, …, λ₁ + r}`.
pub fn partition_to_set(lambda: &Partition, r: usize) -> Result<Vec<usize>> {
    if lambda.len() != r {
        return Err(Error::BadLength(format!("partition has {} parts, expected {r}", lambda.len())));
    }
    Ok((1..=r).map(|k| k + lambda.parts[r - k]).collect())
}

pub fn set_to_partition(a: &[usize]) -> Result<Partition> {
    let mut s = a.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != a.len() || s.first() == Some(&0) {
        return Err(Error::BadParams(format!("{a:?} is not a set of positive integers")));
    }
    let r = s.len();
    Partition::new((1..=r).map(|i| s[r - i] - (r + 1 - i)).collect())
}

/// Semistandard filling of `λ/μ`; `rows[i]` holds the entries of row `i + 1` from left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ssyt {
    pub lambda: Partition,
    pub mu: Partition,
    pub rows: Vec<Vec<usize>>,
}

fn check_shape(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.len() != mu.len() {
        return Err(Error::BadLength(format!("λ has {} parts but μ has {}", lambda.len(), mu.len())));
    }
    if lambda.parts.iter().zip(&mu.parts).any(|(l, m)| m > l) {
        return Err(Error::BadParams(format!("{:?} is not inside {:?}", mu.parts, lambda.parts)));
    }
    Ok(())
}

impl Ssyt {
    pub fn new(lambda: Partition, mu: Partition, rows: Vec<Vec<usize>>, n: usize) -> Result<Ssyt> {
        check_shape(&lambda, &mu)?;
        let t = Ssyt { lambda, mu, rows };
        t.check(n)?;
        Ok(t)
    }

    /// Entry in row `i` and column `c` (both 1-based), if the cell belongs to the skew diagram.
    pub fn entry(&self, i: usize, c: usize) -> Option<usize> {
        let (m, l) = (self.mu.parts[i - 1], self.lambda.parts[i - 1]);
        (c > m && c <= l).then(|| self.rows[i - 1][c - m - 1])
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let r = self.lambda.len();
        if self.rows.len() != r {
            return Err(Error::NotSemistandard(format!("{} rows for {r} parts", self.rows.len())));
        }
        for i in 1..=r {
            let row = &self.rows[i - 1];
            let want = self.lambda.parts[i - 1] - self.mu.parts[i - 1];
            if row.len() != want {
                return Err(Error::NotSemistandard(format!("row {i} has {} cells, expected {want}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::NotSemistandard(format!("entry {bad} outside [{n}]")));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::NotSemistandard(format!("row {i} decreases")));
            }
            if i > 1 {
                for c in self.mu.parts[i - 1] + 1..=self.lambda.parts[i - 1] {
                    if let (Some(up), Some(down)) = (self.entry(i, c), self.entry(i - 1, c)) {
                        if up <= down {
                            return Err(Error::NotSemistandard(format!("column {c} does not increase at row {i}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Exponent of `x_h` in `x^T`, for `h = 1..=n`.
    pub fn weight(&self, n: usize) -> Vec<i32> {
        let mut e = vec![0; n];
        for &v in self.rows.iter().flatten() {
            e[v - 1] += 1;
        }
        e
    }

    pub fn to_json(&self) -> Json {
        json!({
            "lambda": self.lambda.parts,
            "mu": self.mu.parts,
            "rows": self.rows,
            "row_order": "bottom-to-top",
        })
    }
}

/// All `n`-semistandard fillings of `λ/μ`.
pub fn enumerate_ssyt(lambda: &Partition, mu: &Partition, n: usize) -> Result<Vec<Ssyt>> {
    check_shape(lambda, mu)?;
    let mut out = Vec::new();
    visit_ssyt(lambda, mu, n, |rows| {
        out.push(Ssyt {
            lambda: lambda.clone(),
            mu: mu.clone(),
            rows: rows.to_vec(),
        })
    });
    Ok(out)
}

fn visit_ssyt<F: FnMut(&[Vec<usize>])>(lambda: &Partition, mu: &Partition, n: usize, mut visit: F) {
    let cells: Vec<(usize, usize)> = (1..=lambda.len())
        .flat_map(|i| (mu.parts[i - 1] + 1..=lambda.parts[i - 1]).map(move |c| (i, c)))
        .collect();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); lambda.len()];
    fn rec<F: FnMut(&[Vec<usize>])>(
        k: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        mu: &Partition,
        n: usize,
        rows: &mut Vec<Vec<usize>>,
        visit: &mut F,
    ) {
        let Some(&(i, c)) = cells.get(k) else {
            visit(rows);
            return;
        };
        let mut lo = rows[i - 1].last().copied().unwrap_or(1);
        if i > 1 && c > mu.parts[i - 2] && c <= lambda.parts[i - 2] {
            lo = lo.max(rows[i - 2][c - mu.parts[i - 2] - 1] + 1);
        }
        for v in lo..=n {
            rows[i - 1].push(v);
            rec(k + 1, cells, lambda, mu, n, rows, visit);
            rows[i - 1].pop();
        }
    }
    rec(0, &cells, lambda, mu, n, &mut rows, &mut visit);
}

/// Polynomial semiring in `x1, …, xn`.
pub fn schur_spec(n: usize) -> SemiringSpec {
    SemiringSpec::polynomial((1..=n).map(|h| format!("x{h}")))
}

/// `s_{λ/μ}(x₁, …, x_n)` as a sum over semistandard fillings.
pub fn schur_poly(lambda: &Partition, mu: &Partition, n: usize) -> Result<Value> {
    check_shape(lambda, mu)?;
    let mut counts: HashMap<Vec<i32>, u64> = HashMap::new();
    visit_ssyt(lambda, mu, n, |rows| {
        let mut e = vec![0; n];
        for &v in rows.iter().flatten() {
            e[v - 1] += 1;
        }
        *counts.entry(e).or_insert(0) += 1;
    });
    Ok(Value::Poly(Polynomial::from_terms(counts.into_iter().map(|(e, c)| {
        (Monomial::from_pairs(e.into_iter().enumerate()), BigInt::from(c))
    }))))
}

/// Ordinary Schur polynomial `s_λ`.
pub fn schur(lambda: &Partition, n: usize) -> Result<Value> {
    schur_poly(lambda, &Partition::zero(lambda.len()), n)
}

/// The grid with `n` levels wide enough for every sink of `A_λ`.
pub fn gv_grid_for(lambda: &Partition, n: usize) -> PlanarNetwork {
    PlanarNetwork::build_standard(StandardKind::GVGrid(n, (lambda.first() + lambda.len()).max(1)))
}

fn grid_width(g: &PlanarNetwork) -> usize {
    g.n()
}

/// `P_k` follows row `r + 1 - k`, taking one horizontal step at level `h` per entry `h`.
pub fn tableau_to_flow(t: &Ssyt, n: usize) -> Result<Flow> {
    check_shape(&t.lambda, &t.mu)?;
    t.check(n)?;
    let r = t.lambda.len();
    let width = (t.lambda.first() + r).max(1);
    let idx = |c: usize, h: usize| (h - 1) * width + (c - 1);
    let mut paths = Vec::with_capacity(r);
    for k in 1..=r {
        let row = &t.rows[r - k];
        let mut c = k + t.mu.parts[r - k];
        let mut path = vec![idx(c, 1)];
        for h in 1..=n {
            for _ in row.iter().filter(|&&v| v == h) {
                c += 1;
                path.push(idx(c, h));
            }
            if h < n {
                path.push(idx(c, h + 1));
            }
        }
        paths.push(path);
    }
    Ok(Flow {
        sources: partition_to_set(&t.mu, r)?,
        sinks: partition_to_set(&t.lambda, r)?,
        paths,
    })
}

/// Inverse of [`tableau_to_flow`] on a grid built by [`gv_grid_for`] or `GVGrid`.
pub fn flow_to_tableau(g: &PlanarNetwork, phi: &Flow, n: usize) -> Result<Ssyt> {
    phi.check(g).map_err(|e| Error::NotAFlow(e.to_string()))?;
    let width = grid_width(g);
    if g.num_vertices() != width * n {
        return Err(Error::NotAFlow(format!("network is not a grid with {n} levels")));
    }
    let coord = |v: usize| (v % width + 1, v / width + 1);
    let r = phi.sources.len();
    let mu = set_to_partition(&phi.sources)?;
    let lambda = set_to_partition(&phi.sinks)?;
    check_shape(&lambda, &mu).map_err(|e| Error::NotAFlow(e.to_string()))?;
    let mut rows = vec![Vec::new(); r];
    for (k, p) in phi.paths.iter().enumerate() {
        for w in p.windows(2) {
            let ((c0, h0), (c1, h1)) = (coord(w[0]), coord(w[1]));
            if h0 == h1 && c1 == c0 + 1 {
                rows[r - 1 - k].push(h0);
            } else if !(c0 == c1 && h1 == h0 + 1) {
                return Err(Error::NotAFlow("path leaves the grid directions".into()));
            }
        }
    }
    Ssyt::new(lambda, mu, rows, n).map_err(|e| Error::NotAFlow(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchurIdentity {
    /// `s(k,i) s(ℓ,j) = s(ℓ,i) s(k,j) + s(j-1,i) s(ℓ,k+1)` for `i < j ≤ k < ℓ`.
    TwoRowProduct { i: usize, j: usize, k: usize, l: usize },
    /// Three-term condensation for `λ` with `r ≥ 2` and `λ_r > 0`.
    Condensation(Partition),
    /// The two-row product with a fixed partition glued on: in front when its last part is
    /// at least `ℓ`, behind when `i` is at least its first part. Experimental.
    PrefixedTwoRow { prefix: Partition, i: usize, j: usize, k: usize, l: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    /// The six partitions, left to right.
    pub partitions: Vec<Partition>,
    pub lhs: Value,
    pub rhs: Value,
    pub equal: bool,
}

impl IdentityCheck {
    pub fn to_json(&self) -> Json {
        json!({
            "partitions": self.partitions.iter().map(Partition::to_json).collect::<Vec<_>>(),
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "equal": self.equal,
        })
    }
}

fn part(v: Vec<usize>) -> Partition {
    Partition { parts: v }
}

fn two_row(i: usize, j: usize, k: usize, l: usize) -> Result<[Partition; 6]> {
    if !(i < j && j <= k && k < l) {
        return Err(Error::BadParams(format!("need i < j ≤ k < ℓ, got ({i},{j},{k},{l})")));
    }
    Ok([
        part(vec![k, i]),
        part(vec![l, j]),
        part(vec![l, i]),
        part(vec![k, j]),
        part(vec![j - 1, i]),
        part(vec![l, k + 1]),
    ])
}

pub fn identity_partitions(kind: &SchurIdentity) -> Result<[Partition; 6]> {
    match kind {
        SchurIdentity::TwoRowProduct { i, j, k, l } => two_row(*i, *j, *k, *l),
        SchurIdentity::Condensation(lambda) => {
            let p = &lambda.parts;
            let r = p.len();
            if r < 2 || p[r - 1] == 0 {
                return Err(Error::BadParams(format!("need at least two parts, the last positive: {p:?}")));
            }
            Ok([
                part(p[..r - 1].to_vec()),
                part(p[1..].to_vec()),
                part(p[1..r - 1].to_vec()),
                part(p.clone()),
                part(p[1..].iter().map(|x| x - 1).collect()),
                part(p[..r - 1].iter().map(|x| x + 1).collect()),
            ])
        }
        SchurIdentity::PrefixedTwoRow { prefix, i, j, k, l } => {
            let base = two_row(*i, *j, *k, *l)?;
            let front = prefix.parts.last().is_none_or(|&last| last >= *l);
            if !front && *i < prefix.first() {
                return Err(Error::BadParams(format!(
                    "prefix {:?} fits neither in front nor behind",
                    prefix.parts
                )));
            }
            Ok(base.map(|b| {
                if front {
                    part(prefix.parts.iter().chain(&b.parts).copied().collect())
                } else {
                    part(b.parts.iter().chain(&prefix.parts).copied().collect())
                }
            }))
        }
    }
}

/// Expands the six Schur polynomials and compares `s₁s₂` with `s₃s₄ + s₅s₆`.
pub fn verify_schur_identity(kind: &SchurIdentity, n: usize) -> Result<IdentityCheck> {
    let ps = identity_partitions(kind)?;
    let spec = schur_spec(n);
    let s = ps.iter().map(|p| schur(p, n)).collect::<Result<Vec<_>>>()?;
    let lhs = spec.mul(&s[0], &s[1])?;
    let rhs = spec.add(&spec.mul(&s[2], &s[3])?, &spec.mul(&s[4], &s[5])?)?;
    let equal = spec.equal(&lhs, &rhs);
    Ok(IdentityCheck {
        partitions: ps.to_vec(),
        lhs,
        rhs,
        equal,
    })
}
