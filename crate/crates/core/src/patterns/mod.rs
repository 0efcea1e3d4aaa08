//! Proper pairs, 1- and 2-patterns, feasible matchings and the balancedness test.

mod context;
mod matching;
pub mod sampling;
mod stock;

pub use context::SetContext;
pub use matching::{cyclic_order, Couple, PlanarMatching, Side};
pub use stock::{stock_flag_pattern, stock_pattern, StockKind};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};

/// `(A, A')` with `A ⊆ Y`, `A' ⊆ Y'`, both kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProperPair {
    pub a: Vec<usize>,
    pub ap: Vec<usize>,
}

impl ProperPair {
    pub fn new(mut a: Vec<usize>, mut ap: Vec<usize>) -> ProperPair {
        a.sort_unstable();
        a.dedup();
        ap.sort_unstable();
        ap.dedup();
        ProperPair { a, ap }
    }

    /// Checks `A ⊆ Y`, `A' ⊆ Y'` and `|Y| - |Y'| = 2(|A| - |A'|)`.
    pub fn check(&self, y: &[usize], yp: &[usize]) -> Result<()> {
        if !self.a.iter().all(|x| y.contains(x)) || !self.ap.iter().all(|x| yp.contains(x)) {
            return Err(Error::NotProper(format!("{self} is not inside (Y, Y')")));
        }
        let lhs = y.len() as i64 - yp.len() as i64;
        let rhs = 2 * (self.a.len() as i64 - self.ap.len() as i64);
        if lhs != rhs {
            return Err(Error::NotProper(format!(
                "{self}: |Y|-|Y'| = {lhs} but 2(|A|-|A'|) = {rhs}"
            )));
        }
        Ok(())
    }

    pub fn is_white(&self, side: Side, x: usize) -> bool {
        match side {
            Side::Lower => self.a.binary_search(&x).is_ok(),
            Side::Upper => self.ap.binary_search(&x).is_ok(),
        }
    }

    /// Complements within `(Y, Y')`.
    pub fn complement(&self, y: &[usize], yp: &[usize]) -> ProperPair {
        ProperPair {
            a: y.iter().copied().filter(|x| !self.a.contains(x)).collect(),
            ap: yp.iter().copied().filter(|x| !self.ap.contains(x)).collect(),
        }
    }

    /// Flips colours on every element covered by the given couples.
    pub fn exchange<'a, I: IntoIterator<Item = &'a Couple>>(&self, couples: I) -> ProperPair {
        let mut a: BTreeSet<usize> = self.a.iter().copied().collect();
        let mut ap: BTreeSet<usize> = self.ap.iter().copied().collect();
        for c in couples {
            for (side, x) in c.ends() {
                let set = match side {
                    Side::Lower => &mut a,
                    Side::Upper => &mut ap,
                };
                if !set.remove(&x) {
                    set.insert(x);
                }
            }
        }
        ProperPair {
            a: a.into_iter().collect(),
            ap: ap.into_iter().collect(),
        }
    }

    /// Applies the order-preserving bijections `[m] -> Y`, `[m'] -> Y'`.
    pub fn embed(&self, y: &[usize], yp: &[usize]) -> ProperPair {
        ProperPair {
            a: self.a.iter().map(|&i| y[i - 1]).collect(),
            ap: self.ap.iter().map(|&j| yp[j - 1]).collect(),
        }
    }
}

fn set_string(s: &[usize]) -> String {
    if s.iter().all(|&x| x < 10) {
        s.iter().map(|x| x.to_string()).collect()
    } else {
        s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for ProperPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", set_string(&self.a), set_string(&self.ap))
    }
}

/// A multiset of proper pairs for `([m], [m'])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoPattern {
    pub m: usize,
    pub m_prime: usize,
    pub members: BTreeMap<ProperPair, usize>,
}

impl TwoPattern {
    pub fn new(m: usize, m_prime: usize) -> TwoPattern {
        TwoPattern {
            m,
            m_prime,
            members: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I>(m: usize, m_prime: usize, pairs: I) -> Result<TwoPattern>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<usize>)>,
    {
        let mut p = TwoPattern::new(m, m_prime);
        for (a, ap) in pairs {
            p.insert(ProperPair::new(a, ap), 1)?;
        }
        Ok(p)
    }

    pub fn ground(&self) -> (Vec<usize>, Vec<usize>) {
        ((1..=self.m).collect(), (1..=self.m_prime).collect())
    }

    pub fn insert(&mut self, pair: ProperPair, mult: usize) -> Result<()> {
        let (y, yp) = self.ground();
        pair.check(&y, &yp)?;
        if mult > 0 {
            *self.members.entry(pair).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn total(&self) -> usize {
        self.members.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProperPair, usize)> {
        self.members.iter().map(|(p, &k)| (p, k))
    }

    /// Multiset union.
    pub fn union(&self, other: &TwoPattern) -> Result<TwoPattern> {
        if (self.m, self.m_prime) != (other.m, other.m_prime) {
            return Err(Error::SizeMismatch("patterns over different ground sets".into()));
        }
        let mut out = self.clone();
        for (p, k) in other.iter() {
            *out.members.entry(p.clone()).or_insert(0) += k;
        }
        Ok(out)
    }

    /// Image under `γ_{Y,Y'}` as a family over `(Y, Y')`.
    pub fn embed(&self, y: &[usize], yp: &[usize]) -> Result<Family> {
        if y.len() != self.m || yp.len() != self.m_prime {
            return Err(Error::SizeMismatch(format!(
                "pattern on ([{}],[{}]) cannot embed into |Y|={}, |Y'|={}",
                self.m,
                self.m_prime,
                y.len(),
                yp.len()
            )));
        }
        let mut members = BTreeMap::new();
        for (p, k) in self.iter() {
            *members.entry(p.embed(y, yp)).or_insert(0) += k;
        }
        Ok(Family {
            y: y.to_vec(),
            yp: yp.to_vec(),
            members,
        })
    }

    pub fn to_json(&self) -> Json {
        let members: Vec<Json> = self
            .iter()
            .map(|(p, k)| json!({"A": p.a, "Aprime": p.ap, "mult": k}))
            .collect();
        json!({"m": self.m, "m_prime": self.m_prime, "members": members})
    }

    /// Reads the 2-pattern format, or a flag pattern `{"kind": "flag", "m", "p", "members": [{"A"}]}`.
    pub fn from_json(j: &Json) -> Result<TwoPattern> {
        let get_usize = |key: &str| -> Result<usize> {
            j.get(key)
                .and_then(Json::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("pattern needs `{key}`")))
        };
        let members = j
            .get("members")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Parse("pattern needs `members`".into()))?;
        let set = |v: Option<&Json>| -> Result<Vec<usize>> {
            match v {
                None => Ok(Vec::new()),
                Some(Json::Array(a)) => a
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("bad element {x}"))))
                    .collect(),
                Some(other) => Err(Error::Parse(format!("bad set {other}"))),
            }
        };
        let mult = |m: &Json| m.get("mult").and_then(Json::as_u64).unwrap_or(1) as usize;
        if j.get("kind").and_then(Json::as_str) == Some("flag") {
            let (m, p) = (get_usize("m")?, get_usize("p")?);
            let mut one = OnePattern::new(m, p);
            for mem in members {
                one.insert(set(mem.get("A"))?, mult(mem))?;
            }
            return Ok(flag_to_two_pattern(&one));
        }
        let mut out = TwoPattern::new(get_usize("m")?, get_usize("m_prime")?);
        for mem in members {
            out.insert(ProperPair::new(set(mem.get("A"))?, set(mem.get("Aprime"))?), mult(mem))?;
        }
        Ok(out)
    }
}

impl fmt::Display for TwoPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(p, k)| if k == 1 { p.to_string() } else { format!("{k}×{p}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A multiset of proper pairs over concrete ground sets `(Y, Y')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub y: Vec<usize>,
    pub yp: Vec<usize>,
    pub members: BTreeMap<ProperPair, usize>,
}

/// A multiset of `p`-subsets of `[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePattern {
    pub m: usize,
    pub p: usize,
    pub members: BTreeMap<Vec<usize>, usize>,
}

impl OnePattern {
    pub fn new(m: usize, p: usize) -> OnePattern {
        OnePattern {
            m,
            p,
            members: BTreeMap::new(),
        }
    }

    pub fn from_sets<I: IntoIterator<Item = Vec<usize>>>(m: usize, p: usize, sets: I) -> Result<OnePattern> {
        let mut out = OnePattern::new(m, p);
        for s in sets {
            out.insert(s, 1)?;
        }
        Ok(out)
    }

    pub fn insert(&mut self, mut a: Vec<usize>, mult: usize) -> Result<()> {
        a.sort_unstable();
        a.dedup();
        if a.len() != self.p || a.iter().any(|&x| x == 0 || x > self.m) {
            return Err(Error::NotProper(format!(
                "{} is not a {}-subset of [{}]",
                set_string(&a),
                self.p,
                self.m
            )));
        }
        if mult > 0 {
            *self.members.entry(a).or_insert(0) += mult;
        }
        Ok(())
    }
}

/// Sizes of `Y'` and `A'` for a flag pattern: `|p - q|` elements, all in `A'` iff `p ≥ q`.
pub fn flag_prime_sizes(m: usize, p: usize) -> (usize, bool) {
    let q = m - p;
    (p.abs_diff(q), p >= q)
}

pub fn flag_to_two_pattern(one: &OnePattern) -> TwoPattern {
    let (mp, all_white) = flag_prime_sizes(one.m, one.p);
    let ap: Vec<usize> = if all_white { (1..=mp).collect() } else { Vec::new() };
    let mut out = TwoPattern::new(one.m, mp);
    for (a, &k) in &one.members {
        out.insert(ProperPair::new(a.clone(), ap.clone()), k)
            .expect("flag members are proper by construction");
    }
    out
}

/// Feasible matchings of a proper pair: same-side couples bichromatic,
/// vertical couples monochromatic, no two chords crossing.
pub fn feasible_matchings(y: &[usize], yp: &[usize], pair: &ProperPair) -> Result<Vec<PlanarMatching>> {
    pair.check(y, yp)?;
    let order = cyclic_order(y, yp);
    let white: Vec<bool> = order.iter().map(|&(s, x)| pair.is_white(s, x)).collect();
    let raw = matching::noncrossing_matchings(order.len(), |a, b| {
        let same_side = order[a].0 == order[b].0;
        (white[a] != white[b]) == same_side
    });
    let mut out: Vec<PlanarMatching> = raw
        .into_iter()
        .map(|m| PlanarMatching::from_couples(m.into_iter().map(|(a, b)| Couple::new(order[a], order[b]))))
        .collect();
    out.sort();
    Ok(out)
}

/// Flag matchings: `q` nested bicoloured couples on `Y` leaving no element beneath a couple uncovered.
pub fn flag_feasible_matchings(y: &[usize], a: &[usize], p: usize, q: usize) -> Result<Vec<PlanarMatching>> {
    if a.len() != p || y.len() != p + q || p < q || !a.iter().all(|x| y.contains(x)) {
        return Err(Error::BadSizes(format!(
            "need |A| = p ≥ q = |Y| - p with A ⊆ Y (|Y|={}, |A|={}, p={p}, q={q})",
            y.len(),
            a.len()
        )));
    }
    let white: Vec<bool> = y.iter().map(|x| a.contains(x)).collect();
    let inner = |l: usize, r: usize| -> Vec<Vec<(usize, usize)>> {
        matching::noncrossing_matchings(r - l, |i, j| white[l + i] != white[l + j])
            .into_iter()
            .map(|m| m.into_iter().map(|(i, j)| (l + i, l + j)).collect())
            .collect()
    };
    fn top(
        l: usize,
        k: usize,
        inner: &dyn Fn(usize, usize) -> Vec<Vec<(usize, usize)>>,
        white: &[bool],
    ) -> Vec<Vec<(usize, usize)>> {
        if l == k {
            return vec![Vec::new()];
        }
        let mut out = top(l + 1, k, inner, white);
        let mut p = l + 1;
        while p < k {
            if white[l] != white[p] {
                let ins = inner(l + 1, p);
                if !ins.is_empty() {
                    let rest = top(p + 1, k, inner, white);
                    for a in &ins {
                        for b in &rest {
                            let mut m = vec![(l, p)];
                            m.extend_from_slice(a);
                            m.extend_from_slice(b);
                            out.push(m);
                        }
                    }
                }
            }
            p += 2;
        }
        out
    }
    let mut out: Vec<PlanarMatching> = top(0, y.len(), &inner, &white)
        .into_iter()
        .filter(|m| m.len() == q)
        .map(|m| PlanarMatching::from_couples(m.into_iter().map(|(i, j)| Couple::Lower(y[i], y[j]))))
        .collect();
    out.sort();
    Ok(out)
}

pub type MatchingMultiset = BTreeMap<PlanarMatching, usize>;

/// Union with multiplicity of the feasible matchings of every member, after embedding.
pub fn matching_multiset(y: &[usize], yp: &[usize], pattern: &TwoPattern) -> Result<MatchingMultiset> {
    let family = pattern.embed(y, yp)?;
    family_multiset(&family)
}

pub fn family_multiset(family: &Family) -> Result<MatchingMultiset> {
    let mut out = MatchingMultiset::new();
    for (pair, &k) in &family.members {
        for m in feasible_matchings(&family.y, &family.yp, pair)? {
            *out.entry(m).or_insert(0) += k;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    /// First matching (in couple order) whose multiplicities differ, with both counts.
    pub witness: Option<(PlanarMatching, usize, usize)>,
}

pub fn is_balanced(lhs: &TwoPattern, rhs: &TwoPattern) -> Result<BalanceReport> {
    if (lhs.m, lhs.m_prime) != (rhs.m, rhs.m_prime) {
        return Err(Error::SizeMismatch(format!(
            "patterns on ([{}],[{}]) and ([{}],[{}])",
            lhs.m, lhs.m_prime, rhs.m, rhs.m_prime
        )));
    }
    let (y, yp) = lhs.ground();
    let ma = matching_multiset(&y, &yp, lhs)?;
    let mb = matching_multiset(&y, &yp, rhs)?;
    let keys: BTreeSet<&PlanarMatching> = ma.keys().chain(mb.keys()).collect();
    for m in keys {
        let (ca, cb) = (ma.get(m).copied().unwrap_or(0), mb.get(m).copied().unwrap_or(0));
        if ca != cb {
            return Ok(BalanceReport {
                balanced: false,
                witness: Some((m.clone(), ca, cb)),
            });
        }
    }
    Ok(BalanceReport {
        balanced: true,
        witness: None,
    })
}

/// Every proper pair for `([m], [m'])`.
pub fn proper_pairs(m: usize, m_prime: usize) -> Vec<ProperPair> {
    let mut out = Vec::new();
    for amask in 0u32..(1 << m) {
        for bmask in 0u32..(1 << m_prime) {
            let a: Vec<usize> = (1..=m).filter(|i| amask >> (i - 1) & 1 == 1).collect();
            let ap: Vec<usize> = (1..=m_prime).filter(|j| bmask >> (j - 1) & 1 == 1).collect();
            if m as i64 - m_prime as i64 == 2 * (a.len() as i64 - ap.len() as i64) {
                out.push(ProperPair { a, ap });
            }
        }
    }
    out.sort();
    out
}
