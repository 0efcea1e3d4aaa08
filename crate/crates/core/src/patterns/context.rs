//! Terminal index sets `X, Y ⊆ [n]`, `X', Y' ⊆ [n']` that a relation is stated over.

use serde_json::{json, Value as Json};

use super::ProperPair;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetContext {
    pub n: usize,
    pub n_prime: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub xp: Vec<usize>,
    pub yp: Vec<usize>,
}

fn normalize(v: &[usize], bound: usize, what: &str) -> Result<Vec<usize>> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != v.len() {
        return Err(Error::InconsistentSets(format!("{what} has repeated elements")));
    }
    if let Some(&bad) = s.iter().find(|&&x| x == 0 || x > bound) {
        return Err(Error::OutOfRange(format!("{what} contains {bad}, outside [{bound}]")));
    }
    Ok(s)
}

pub(crate) fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub(crate) fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

fn subsets_of_size(ground: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(ground: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..ground.len() {
            if ground.len() - i < k - cur.len() {
                break;
            }
            cur.push(ground[i]);
            rec(ground, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(ground, k, 0, &mut cur, &mut out);
    out
}

impl SetContext {
    /// Checks ranges, `X ∩ Y = ∅`, `X' ∩ Y' = ∅` and `2|X| + |Y| = 2|X'| + |Y'|`.
    pub fn new(
        n: usize,
        n_prime: usize,
        x: &[usize],
        y: &[usize],
        xp: &[usize],
        yp: &[usize],
    ) -> Result<SetContext> {
        let x = normalize(x, n, "X")?;
        let y = normalize(y, n, "Y")?;
        let xp = normalize(xp, n_prime, "X'")?;
        let yp = normalize(yp, n_prime, "Y'")?;
        if x.iter().any(|e| y.contains(e)) {
            return Err(Error::InconsistentSets("X and Y intersect".into()));
        }
        if xp.iter().any(|e| yp.contains(e)) {
            return Err(Error::InconsistentSets("X' and Y' intersect".into()));
        }
        if 2 * x.len() + y.len() != 2 * xp.len() + yp.len() {
            return Err(Error::InconsistentSets(format!(
                "2|X|+|Y| = {} but 2|X'|+|Y'| = {}",
                2 * x.len() + y.len(),
                2 * xp.len() + yp.len()
            )));
        }
        Ok(SetContext { n, n_prime, x, y, xp, yp })
    }

    /// Flag context: `X' = [|X| + min(p, q)]` and `Y'` the next `|p - q|` sink indices.
    pub fn flag(n: usize, n_prime: usize, x: &[usize], y: &[usize], p: usize) -> Result<SetContext> {
        if p > y.len() {
            return Err(Error::BadSizes(format!("p = {p} exceeds |Y| = {}", y.len())));
        }
        let q = y.len() - p;
        let lo = x.len() + p.min(q);
        let mp = p.abs_diff(q);
        let xp: Vec<usize> = (1..=lo).collect();
        let yp: Vec<usize> = (lo + 1..=lo + mp).collect();
        SetContext::new(n, n_prime, x, y, &xp, &yp)
    }

    pub fn m(&self) -> usize {
        self.y.len()
    }

    pub fn m_prime(&self) -> usize {
        self.yp.len()
    }

    /// `(XA | X'A')` and `(X Ā | X' Ā')` for a pair over `(Y, Y')`.
    pub fn args(&self, pair: &ProperPair) -> ((Vec<usize>, Vec<usize>), (Vec<usize>, Vec<usize>)) {
        let abar = minus(&self.y, &pair.a);
        let apbar = minus(&self.yp, &pair.ap);
        (
            (union(&self.x, &pair.a), union(&self.xp, &pair.ap)),
            (union(&self.x, &abar), union(&self.xp, &apbar)),
        )
    }

    /// Every consistent context with `|Y| = m`, `|Y'| = m'` inside `[n] × [n']`.
    pub fn enumerate(n: usize, n_prime: usize, m: usize, m_prime: usize) -> Vec<SetContext> {
        let mut out = Vec::new();
        if m > n || m_prime > n_prime || (m + m_prime) % 2 == 1 {
            return out;
        }
        let all: Vec<usize> = (1..=n).collect();
        let allp: Vec<usize> = (1..=n_prime).collect();
        for y in subsets_of_size(&all, m) {
            let rest = minus(&all, &y);
            for xs in 0..=rest.len() {
                let twice = 2 * xs + m;
                if twice < m_prime || (twice - m_prime) % 2 == 1 {
                    continue;
                }
                let xps = (twice - m_prime) / 2;
                if xps + m_prime > n_prime {
                    continue;
                }
                for x in subsets_of_size(&rest, xs) {
                    for yp in subsets_of_size(&allp, m_prime) {
                        let restp = minus(&allp, &yp);
                        for xp in subsets_of_size(&restp, xps) {
                            out.push(SetContext {
                                n,
                                n_prime,
                                x: x.clone(),
                                y: y.clone(),
                                xp,
                                yp: yp.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Json {
        json!({"n": self.n, "n_prime": self.n_prime, "X": self.x, "Y": self.y, "Xprime": self.xp, "Yprime": self.yp})
    }

    pub fn from_json(j: &Json) -> Result<SetContext> {
        let set = |key: &str| -> Result<Vec<usize>> {
            match j.get(key) {
                None => Ok(Vec::new()),
                Some(Json::Array(a)) => a
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("bad element {x}"))))
                    .collect(),
                Some(other) => Err(Error::Parse(format!("bad set `{key}`: {other}"))),
            }
        };
        let (x, y, xp, yp) = (set("X")?, set("Y")?, set("Xprime")?, set("Yprime")?);
        let max_or = |v: &[usize], w: &[usize]| v.iter().chain(w).copied().max().unwrap_or(0);
        let n = j.get("n").and_then(Json::as_u64).map(|v| v as usize).unwrap_or(max_or(&x, &y));
        let n_prime = j
            .get("n_prime")
            .and_then(Json::as_u64)
            .map(|v| v as usize)
            .unwrap_or(max_or(&xp, &yp));
        SetContext::new(n, n_prime, &x, &y, &xp, &yp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistency_is_enforced() {
        SetContext::new(4, 4, &[4], &[1, 2, 3], &[1, 2], &[3]).unwrap();
        assert!(matches!(
            SetContext::new(4, 4, &[], &[1, 2, 3], &[1, 2], &[3]),
            Err(Error::InconsistentSets(_))
        ));
        assert!(matches!(
            SetContext::new(4, 4, &[1], &[1, 2], &[1, 2], &[]),
            Err(Error::InconsistentSets(_))
        ));
        assert!(matches!(SetContext::new(3, 3, &[], &[1, 2, 7], &[1], &[2]), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn flag_context() {
        let c = SetContext::flag(5, 5, &[], &[1, 3, 5], 2).unwrap();
        assert_eq!((c.xp.clone(), c.yp.clone()), (vec![1], vec![2]));
        let c = SetContext::flag(6, 6, &[2], &[1, 3, 5, 6], 2).unwrap();
        assert_eq!((c.xp.clone(), c.yp.clone()), (vec![1, 2, 3], vec![]));
        let ((i, ip), (j, jp)) = c.args(&ProperPair::new(vec![1, 5], vec![]));
        assert_eq!((i, ip, j, jp), (vec![1, 2, 5], vec![1, 2, 3], vec![2, 3, 6], vec![1, 2, 3]));
    }

    #[test]
    fn enumeration_is_consistent() {
        let all = SetContext::enumerate(4, 3, 2, 2);
        assert!(!all.is_empty());
        for c in &all {
            SetContext::new(c.n, c.n_prime, &c.x, &c.y, &c.xp, &c.yp).unwrap();
        }
        // Y: 6 choices; Y': 3; then |X| = |X'| ∈ {0, 1} with X' forced into the single leftover sink.
        assert_eq!(all.len(), 6 * 3 * (1 + 2));
    }
}
