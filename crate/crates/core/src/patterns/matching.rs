//! Non-crossing perfect matchings on `Y ⊔ Y'` in the circular two-level layout.
//!
//! `Y` sits on the lower half of a circle and `Y'` on the upper half, both
//! increasing from left to right, so the cyclic order is `Y` ascending followed
//! by `Y'` descending.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Lower,
    Upper,
}

/// A couple of a matching. Same-side couples store `i < j`;
/// `Vertical(i, j)` joins `i ∈ Y` with `j ∈ Y'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Couple {
    Lower(usize, usize),
    Upper(usize, usize),
    Vertical(usize, usize),
}

impl Couple {
    pub fn new(a: (Side, usize), b: (Side, usize)) -> Couple {
        match (a, b) {
            ((Side::Lower, i), (Side::Lower, j)) => Couple::Lower(i.min(j), i.max(j)),
            ((Side::Upper, i), (Side::Upper, j)) => Couple::Upper(i.min(j), i.max(j)),
            ((Side::Lower, i), (Side::Upper, j)) | ((Side::Upper, j), (Side::Lower, i)) => {
                Couple::Vertical(i, j)
            }
        }
    }

    pub fn ends(&self) -> [(Side, usize); 2] {
        match *self {
            Couple::Lower(i, j) => [(Side::Lower, i), (Side::Lower, j)],
            Couple::Upper(i, j) => [(Side::Upper, i), (Side::Upper, j)],
            Couple::Vertical(i, j) => [(Side::Lower, i), (Side::Upper, j)],
        }
    }

    pub fn contains(&self, side: Side, x: usize) -> bool {
        self.ends().contains(&(side, x))
    }

    pub fn to_json(&self) -> Json {
        match *self {
            Couple::Lower(i, j) => json!({"side": "lower", "pair": [i, j]}),
            Couple::Upper(i, j) => json!({"side": "upper", "pair": [i, j]}),
            Couple::Vertical(i, j) => json!({"side": "vertical", "pair": [i, j]}),
        }
    }

    pub fn from_json(j: &Json) -> Result<Couple> {
        let side = j.get("side").and_then(Json::as_str);
        let pair: Option<Vec<usize>> = j
            .get("pair")
            .and_then(Json::as_array)
            .map(|a| a.iter().filter_map(|x| x.as_u64().map(|x| x as usize)).collect());
        match (side, pair.as_deref()) {
            (Some("lower"), Some(&[i, j])) => Ok(Couple::new((Side::Lower, i), (Side::Lower, j))),
            (Some("upper"), Some(&[i, j])) => Ok(Couple::new((Side::Upper, i), (Side::Upper, j))),
            (Some("vertical"), Some(&[i, j])) => Ok(Couple::Vertical(i, j)),
            _ => Err(Error::Parse(format!("bad couple {j}"))),
        }
    }
}

impl fmt::Display for Couple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Couple::Lower(i, j) => write!(f, "{i}-{j}"),
            Couple::Upper(i, j) => write!(f, "{i}'-{j}'"),
            Couple::Vertical(i, j) => write!(f, "{i}-{j}'"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarMatching {
    couples: BTreeSet<Couple>,
}

impl PlanarMatching {
    pub fn from_couples<I: IntoIterator<Item = Couple>>(it: I) -> PlanarMatching {
        PlanarMatching {
            couples: it.into_iter().collect(),
        }
    }

    pub fn couples(&self) -> impl Iterator<Item = &Couple> {
        self.couples.iter()
    }

    pub fn len(&self) -> usize {
        self.couples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.couples.is_empty()
    }

    pub fn contains(&self, c: &Couple) -> bool {
        self.couples.contains(c)
    }

    pub fn lower(&self) -> Vec<(usize, usize)> {
        self.couples
            .iter()
            .filter_map(|c| match *c {
                Couple::Lower(i, j) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    pub fn upper(&self) -> Vec<(usize, usize)> {
        self.couples
            .iter()
            .filter_map(|c| match *c {
                Couple::Upper(i, j) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    pub fn vertical(&self) -> Vec<(usize, usize)> {
        self.couples
            .iter()
            .filter_map(|c| match *c {
                Couple::Vertical(i, j) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// The couple containing a given element.
    pub fn partner(&self, side: Side, x: usize) -> Option<Couple> {
        self.couples.iter().find(|c| c.contains(side, x)).copied()
    }

    /// Checks that this is a perfect non-crossing matching on `Y ⊔ Y'`.
    pub fn check(&self, y: &[usize], yp: &[usize]) -> Result<()> {
        let order = cyclic_order(y, yp);
        let pos: HashMap<(Side, usize), usize> =
            order.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut covered = vec![false; order.len()];
        let mut chords = Vec::new();
        for c in &self.couples {
            let [a, b] = c.ends();
            let (Some(&pa), Some(&pb)) = (pos.get(&a), pos.get(&b)) else {
                return Err(Error::NotPlanarMatching(format!("couple {c} leaves the ground set")));
            };
            for p in [pa, pb] {
                if covered[p] {
                    return Err(Error::NotPlanarMatching(format!("element covered twice by {c}")));
                }
                covered[p] = true;
            }
            chords.push((pa.min(pb), pa.max(pb)));
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::NotPlanarMatching("matching is not perfect".into()));
        }
        for (k, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[k + 1..] {
                if (a < c && c < b) != (a < d && d < b) {
                    return Err(Error::NotPlanarMatching("chords cross".into()));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Json {
        Json::Array(self.couples.iter().map(Couple::to_json).collect())
    }

    pub fn from_json(j: &Json) -> Result<PlanarMatching> {
        let arr = j.as_array().ok_or_else(|| Error::Parse("matching must be an array".into()))?;
        Ok(PlanarMatching::from_couples(
            arr.iter().map(Couple::from_json).collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl fmt::Display for PlanarMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.couples.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `Y` ascending, then `Y'` descending.
pub fn cyclic_order(y: &[usize], yp: &[usize]) -> Vec<(Side, usize)> {
    let mut v: Vec<(Side, usize)> = y.iter().map(|&i| (Side::Lower, i)).collect();
    v.extend(yp.iter().rev().map(|&j| (Side::Upper, j)));
    v
}

/// All non-crossing perfect matchings of `points` (in cyclic order) whose chords pass `valid`.
pub(crate) fn noncrossing_matchings<F>(n: usize, valid: F) -> Vec<Vec<(usize, usize)>>
where
    F: Fn(usize, usize) -> bool,
{
    fn rec<F: Fn(usize, usize) -> bool>(
        l: usize,
        r: usize,
        valid: &F,
        memo: &mut HashMap<(usize, usize), Vec<Vec<(usize, usize)>>>,
    ) -> Vec<Vec<(usize, usize)>> {
        if l >= r {
            return vec![Vec::new()];
        }
        if (r - l) % 2 == 1 {
            return Vec::new();
        }
        if let Some(v) = memo.get(&(l, r)) {
            return v.clone();
        }
        let mut out = Vec::new();
        let mut p = l + 1;
        while p < r {
            if valid(l, p) {
                let inner = rec(l + 1, p, valid, memo);
                if !inner.is_empty() {
                    let outer = rec(p + 1, r, valid, memo);
                    for a in &inner {
                        for b in &outer {
                            let mut m = Vec::with_capacity(a.len() + b.len() + 1);
                            m.push((l, p));
                            m.extend_from_slice(a);
                            m.extend_from_slice(b);
                            out.push(m);
                        }
                    }
                }
            }
            p += 2;
        }
        memo.insert((l, r), out.clone());
        out
    }
    let mut memo = HashMap::new();
    rec(0, n, &valid, &mut memo)
}
