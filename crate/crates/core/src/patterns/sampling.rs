//! Seeded random pattern pairs.
//!
//! Balanced pairs come mostly from a parity construction: fix the colours of
//! fewer than `(m+m')/2` elements, take every proper pair consistent with them
//! and split by `χ = Σ(A) + Σ(A') + |A| mod 2`. Exchanging along the first
//! couple avoiding the fixed elements flips `χ` and keeps the matching, which
//! pairs up the two sides.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{is_balanced, proper_pairs, stock_flag_pattern, stock_pattern, ProperPair, Side, StockKind, TwoPattern};

#[derive(Debug, Clone)]
pub struct SampledPair {
    pub lhs: TwoPattern,
    pub rhs: TwoPattern,
    pub origin: String,
}

fn random_shape<R: Rng>(rng: &mut R, max_total: usize) -> (usize, usize) {
    loop {
        let m = rng.gen_range(0..=max_total);
        let mp = rng.gen_range(0..=max_total - m);
        if (m + mp) % 2 == 0 && m + mp >= 2 {
            return (m, mp);
        }
    }
}

/// Splits the proper pairs consistent with a partial colouring by `χ`.
pub fn parity_pair(m: usize, mp: usize, fixed: &[((Side, usize), bool)]) -> (TwoPattern, TwoPattern) {
    let mut odd = TwoPattern::new(m, mp);
    let mut even = TwoPattern::new(m, mp);
    for pair in proper_pairs(m, mp) {
        if fixed.iter().any(|&((s, x), w)| pair.is_white(s, x) != w) {
            continue;
        }
        let chi: usize = pair.a.iter().sum::<usize>() + pair.ap.iter().sum::<usize>() + pair.a.len();
        let side = if chi % 2 == 1 { &mut odd } else { &mut even };
        side.insert(pair, 1).expect("proper by construction");
    }
    (odd, even)
}

fn random_parity<R: Rng>(rng: &mut R, m: usize, mp: usize) -> (TwoPattern, TwoPattern) {
    let k = (m + mp) / 2;
    let mut elems: Vec<(Side, usize)> = (1..=m).map(|i| (Side::Lower, i)).collect();
    elems.extend((1..=mp).map(|j| (Side::Upper, j)));
    loop {
        let lo = k.saturating_sub(3);
        let size = rng.gen_range(lo..k);
        elems.shuffle(rng);
        let fixed: Vec<((Side, usize), bool)> = elems[..size].iter().map(|&e| (e, rng.gen_bool(0.5))).collect();
        let (a, b) = parity_pair(m, mp, &fixed);
        if !(a.is_empty() && b.is_empty()) {
            return if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        }
    }
}

fn random_pair<R: Rng>(rng: &mut R, m: usize, mp: usize) -> ProperPair {
    proper_pairs(m, mp).choose(rng).cloned().expect("shape admits proper pairs")
}

fn random_stock<R: Rng>(rng: &mut R, max_total: usize) -> Option<(TwoPattern, TwoPattern, String)> {
    let m = rng.gen_range(3..=max_total.min(8));
    let p = rng.gen_range(m.div_ceil(2)..m);
    let (mp, _) = super::flag_prime_sizes(m, p);
    if m + mp > max_total {
        return None;
    }
    let kind = if rng.gen_bool(0.5) {
        let mut all: Vec<usize> = (1..=m).collect();
        all.shuffle(rng);
        let a0: Vec<usize> = all[..p].to_vec();
        let rest = &all[p..];
        let zlen = rng.gen_range(1..=rest.len());
        StockKind::AA4 { m, p, a0, z: rest[..zlen].to_vec() }
    } else {
        let q = m - p;
        if q < 2 {
            return None;
        }
        let mut all: Vec<usize> = (1..=m).collect();
        all.shuffle(rng);
        let zlen = rng.gen_range(1..q);
        let z = all[..zlen].to_vec();
        let zp: Vec<usize> = z.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        StockKind::AA5 { m, p, z, zp }
    };
    stock_flag_pattern(&kind).ok()?;
    let (a, b) = stock_pattern(&kind).ok()?;
    (!(a.is_empty() && b.is_empty())).then(|| (a, b, kind.name()))
}

/// A balanced pair with `m + m' ≤ max_total`.
pub fn random_balanced<R: Rng>(rng: &mut R, max_total: usize) -> SampledPair {
    loop {
        let roll = rng.gen_range(0..10);
        let (mut lhs, mut rhs, mut origin) = if roll < 2 {
            match random_stock(rng, max_total) {
                Some(t) => t,
                None => continue,
            }
        } else if roll < 3 {
            let fixed = StockKind::fixed();
            let kind = fixed.choose(rng).unwrap();
            let (a, b) = stock_pattern(kind).unwrap();
            if a.m + a.m_prime > max_total {
                continue;
            }
            (a, b, kind.name())
        } else {
            let (m, mp) = random_shape(rng, max_total);
            let (a, b) = random_parity(rng, m, mp);
            if rng.gen_bool(0.2) {
                let (c, d) = random_parity(rng, m, mp);
                (a.union(&c).unwrap(), b.union(&d).unwrap(), "parity union".into())
            } else {
                (a, b, "parity".into())
            }
        };
        if rng.gen_bool(0.25) {
            let pad = random_pair(rng, lhs.m, lhs.m_prime);
            lhs.insert(pad.clone(), 1).unwrap();
            rhs.insert(pad, 1).unwrap();
            origin.push_str(" + padding");
        }
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut lhs, &mut rhs);
        }
        return SampledPair { lhs, rhs, origin };
    }
}

/// An unbalanced pair with `m + m' ≤ max_total`, by rejection.
pub fn random_unbalanced<R: Rng>(rng: &mut R, max_total: usize) -> SampledPair {
    loop {
        let (lhs, rhs, origin) = if rng.gen_bool(0.3) {
            let b = random_balanced(rng, max_total);
            let mut lhs = b.lhs;
            let members: Vec<ProperPair> = lhs.members.keys().cloned().collect();
            let Some(victim) = members.choose(rng) else { continue };
            let k = lhs.members[victim];
            if k == 1 {
                lhs.members.remove(victim);
            } else {
                lhs.members.insert(victim.clone(), k - 1);
            }
            (lhs, b.rhs, format!("{} minus one member", b.origin))
        } else {
            let (m, mp) = random_shape(rng, max_total);
            let pairs = proper_pairs(m, mp);
            let make = |rng: &mut R| {
                let mut p = TwoPattern::new(m, mp);
                for _ in 0..rng.gen_range(0..=3) {
                    let pair = pairs.choose(rng).unwrap().clone();
                    p.insert(pair, rng.gen_range(1..=2)).unwrap();
                }
                p
            };
            let a = make(rng);
            let b = make(rng);
            (a, b, "random".into())
        };
        if lhs.is_empty() && rhs.is_empty() {
            continue;
        }
        if !is_balanced(&lhs, &rhs).unwrap().balanced {
            return SampledPair { lhs, rhs, origin };
        }
    }
}
