//! Ready-made balanced pattern pairs.

use super::{flag_to_two_pattern, OnePattern, TwoPattern};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StockKind {
    /// `{13}` vs `{12, 23}` on `[3]`, `p = 2`.
    P3,
    /// `{13}` vs `{12, 14}` on `[4]`, `p = 2`.
    P4,
    /// `{135}` vs `{234, 125, 145}` on `[5]`, `p = 3`.
    Quintuple,
    /// `{A0} ∪ {C : Σ(C) - Σ(A0) + |Z| odd}` vs the even ones, `C` ranging over
    /// `p`-sets with `C ∩ (complement of A0) = Z`.
    AA4 { m: usize, p: usize, a0: Vec<usize>, z: Vec<usize> },
    /// `p`-sets `C` with `C ∩ Z = Z'`, split by the parity of `Σ(C)`.
    AA5 { m: usize, p: usize, z: Vec<usize>, zp: Vec<usize> },
    /// `{1|1}` vs `{2|1, 12|12}`.
    Dodgson,
    /// `{12|13, 23|13}` vs `{13|12, 13|23}`.
    Homogeneous3,
    /// `{13|13}` vs `{12|13, 23|13, 123|123}`.
    RowDecomposition3,
}

impl StockKind {
    /// The parameter-free kinds.
    pub fn fixed() -> Vec<StockKind> {
        vec![
            StockKind::P3,
            StockKind::P4,
            StockKind::Quintuple,
            StockKind::Dodgson,
            StockKind::Homogeneous3,
            StockKind::RowDecomposition3,
        ]
    }

    pub fn name(&self) -> String {
        match self {
            StockKind::P3 => "P3".into(),
            StockKind::P4 => "P4".into(),
            StockKind::Quintuple => "quintuple".into(),
            StockKind::AA4 { m, p, a0, z } => format!("AA4(m={m},p={p},A0={a0:?},Z={z:?})"),
            StockKind::AA5 { m, p, z, zp } => format!("AA5(m={m},p={p},Z={z:?},Z'={zp:?})"),
            StockKind::Dodgson => "dodgson".into(),
            StockKind::Homogeneous3 => "homogeneous3".into(),
            StockKind::RowDecomposition3 => "row-decomposition3".into(),
        }
    }
}

fn p_subsets(m: usize, p: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << m))
        .filter(|mask| mask.count_ones() as usize == p)
        .map(|mask| (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

fn sigma(s: &[usize]) -> usize {
    s.iter().sum()
}

fn sorted_set(v: &[usize], m: usize, what: &str) -> Result<Vec<usize>> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != v.len() || s.iter().any(|&x| x == 0 || x > m) {
        return Err(Error::BadParams(format!("{what} must be a subset of [{m}]")));
    }
    Ok(s)
}

/// Flag kinds as pairs of 1-patterns; `None` for genuinely two-sided kinds.
pub fn stock_flag_pattern(kind: &StockKind) -> Result<Option<(OnePattern, OnePattern)>> {
    let sets = |m, p, a: &[&[usize]]| OnePattern::from_sets(m, p, a.iter().map(|s| s.to_vec()));
    Ok(Some(match kind {
        StockKind::P3 => (sets(3, 2, &[&[1, 3]])?, sets(3, 2, &[&[1, 2], &[2, 3]])?),
        StockKind::P4 => (sets(4, 2, &[&[1, 3]])?, sets(4, 2, &[&[1, 2], &[1, 4]])?),
        StockKind::Quintuple => (
            sets(5, 3, &[&[1, 3, 5]])?,
            sets(5, 3, &[&[2, 3, 4], &[1, 2, 5], &[1, 4, 5]])?,
        ),
        StockKind::AA4 { m, p, a0, z } => {
            let (m, p) = (*m, *p);
            if p >= m || p < m - p {
                return Err(Error::BadParams(format!("AA4 needs m > p ≥ m - p (m={m}, p={p})")));
            }
            let a0 = sorted_set(a0, m, "A0")?;
            let z = sorted_set(z, m, "Z")?;
            if a0.len() != p {
                return Err(Error::BadParams("|A0| must equal p".into()));
            }
            if z.is_empty() || z.iter().any(|x| a0.contains(x)) {
                return Err(Error::BadParams("Z must be a nonempty subset of the complement of A0".into()));
            }
            let mut lhs = OnePattern::new(m, p);
            let mut rhs = OnePattern::new(m, p);
            lhs.insert(a0.clone(), 1)?;
            for c in p_subsets(m, p) {
                let outside: Vec<usize> = c.iter().copied().filter(|x| !a0.contains(x)).collect();
                if outside != z {
                    continue;
                }
                let parity = (sigma(&c) + z.len() + sigma(&a0)) % 2;
                if parity == 1 {
                    lhs.insert(c, 1)?;
                } else {
                    rhs.insert(c, 1)?;
                }
            }
            (lhs, rhs)
        }
        StockKind::AA5 { m, p, z, zp } => {
            let (m, p) = (*m, *p);
            if p > m || p < m - p {
                return Err(Error::BadParams(format!("AA5 needs p ≥ m - p (m={m}, p={p})")));
            }
            let q = m - p;
            let z = sorted_set(z, m, "Z")?;
            let zp = sorted_set(zp, m, "Z'")?;
            if z.is_empty() || z.len() + 1 > q {
                return Err(Error::BadParams(format!("AA5 needs 0 < |Z| ≤ q - 1 = {}", q as i64 - 1)));
            }
            if zp.iter().any(|x| !z.contains(x)) {
                return Err(Error::BadParams("Z' must be a subset of Z".into()));
            }
            let mut lhs = OnePattern::new(m, p);
            let mut rhs = OnePattern::new(m, p);
            for c in p_subsets(m, p) {
                let inside: Vec<usize> = c.iter().copied().filter(|x| z.contains(x)).collect();
                if inside != zp {
                    continue;
                }
                if sigma(&c) % 2 == 1 {
                    lhs.insert(c, 1)?;
                } else {
                    rhs.insert(c, 1)?;
                }
            }
            (lhs, rhs)
        }
        _ => return Ok(None),
    }))
}

pub fn stock_pattern(kind: &StockKind) -> Result<(TwoPattern, TwoPattern)> {
    if let Some((a, b)) = stock_flag_pattern(kind)? {
        return Ok((flag_to_two_pattern(&a), flag_to_two_pattern(&b)));
    }
    let pairs = |m, mp, ps: &[(&[usize], &[usize])]| {
        TwoPattern::from_pairs(m, mp, ps.iter().map(|(a, b)| (a.to_vec(), b.to_vec())))
    };
    match kind {
        StockKind::Dodgson => Ok((
            pairs(2, 2, &[(&[1], &[1])])?,
            pairs(2, 2, &[(&[2], &[1]), (&[1, 2], &[1, 2])])?,
        )),
        StockKind::Homogeneous3 => Ok((
            pairs(3, 3, &[(&[1, 2], &[1, 3]), (&[2, 3], &[1, 3])])?,
            pairs(3, 3, &[(&[1, 3], &[1, 2]), (&[1, 3], &[2, 3])])?,
        )),
        StockKind::RowDecomposition3 => Ok((
            pairs(3, 3, &[(&[1, 3], &[1, 3])])?,
            pairs(3, 3, &[(&[1, 2], &[1, 3]), (&[2, 3], &[1, 3]), (&[1, 2, 3], &[1, 2, 3])])?,
        )),
        _ => unreachable!("flag kinds handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::is_balanced;

    #[test]
    fn aa4_reduces_to_item_one() {
        let kind = StockKind::AA4 { m: 3, p: 2, a0: vec![1, 2], z: vec![3] };
        let (a, b) = stock_flag_pattern(&kind).unwrap().unwrap();
        assert_eq!(a.members.keys().cloned().collect::<Vec<_>>(), vec![vec![1, 2], vec![2, 3]]);
        assert_eq!(b.members.keys().cloned().collect::<Vec<_>>(), vec![vec![1, 3]]);
        let kind = StockKind::AA4 { m: 4, p: 2, a0: vec![1, 2], z: vec![3] };
        let (a, b) = stock_flag_pattern(&kind).unwrap().unwrap();
        assert_eq!(a.members.keys().cloned().collect::<Vec<_>>(), vec![vec![1, 2], vec![2, 3]]);
        assert_eq!(b.members.keys().cloned().collect::<Vec<_>>(), vec![vec![1, 3]]);
    }

    #[test]
    fn bad_params() {
        let kind = StockKind::AA4 { m: 4, p: 2, a0: vec![1, 2], z: vec![2] };
        assert!(matches!(stock_pattern(&kind), Err(Error::BadParams(_))));
        let kind = StockKind::AA5 { m: 5, p: 3, z: vec![1, 2], zp: vec![] };
        assert!(matches!(stock_pattern(&kind), Err(Error::BadParams(_))));
    }

    #[test]
    fn stock_pairs_are_balanced() {
        for kind in StockKind::fixed() {
            let (a, b) = stock_pattern(&kind).unwrap();
            assert!(is_balanced(&a, &b).unwrap().balanced, "{}", kind.name());
        }
    }

    #[test]
    fn aa_families_are_balanced() {
        for m in 2..=7usize {
            for p in m.div_ceil(2)..m {
                for a0 in p_subsets(m, p) {
                    let comp: Vec<usize> = (1..=m).filter(|x| !a0.contains(x)).collect();
                    for zmask in 1u32..(1 << comp.len()) {
                        let z: Vec<usize> = comp.iter().enumerate().filter(|(k, _)| zmask >> k & 1 == 1).map(|(_, &x)| x).collect();
                        let kind = StockKind::AA4 { m, p, a0: a0.clone(), z };
                        let (a, b) = stock_pattern(&kind).unwrap();
                        assert!(is_balanced(&a, &b).unwrap().balanced, "{}", kind.name());
                    }
                }
            }
            for p in m.div_ceil(2)..=m {
                let q = m - p;
                if q < 2 {
                    continue;
                }
                for zmask in 1u32..(1 << m) {
                    let z: Vec<usize> = (1..=m).filter(|i| zmask >> (i - 1) & 1 == 1).collect();
                    if z.len() > q - 1 {
                        continue;
                    }
                    for zpmask in 0u32..(1 << z.len()) {
                        let zp: Vec<usize> = z.iter().enumerate().filter(|(k, _)| zpmask >> k & 1 == 1).map(|(_, &x)| x).collect();
                        let kind = StockKind::AA5 { m, p, z: z.clone(), zp };
                        let (a, b) = stock_pattern(&kind).unwrap();
                        assert!(is_balanced(&a, &b).unwrap().balanced, "{}", kind.name());
                    }
                }
            }
        }
    }
}
