//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#![allow(clippy::type_complexity)]

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planar_flows::basis::{
    laurent_expand, reconstruct_value, weights_from_intervals, BasisAssignment, BasisCase, Choice, Reconstructor,
};
use planar_flows::flows::{decompose_double_flow, exchange, fg_value, DoubleFlow, TerminalClass};
use planar_flows::lindstrom::{check_matrix_sq, compile_matrix_to_network, flow_matrix, verify_lindstrom, ExactMatrix};
use planar_flows::network::{split_vertices, PlanarNetwork, StandardKind};
use planar_flows::patterns::sampling::{random_balanced, random_unbalanced};
use planar_flows::patterns::{
    feasible_matchings, flag_feasible_matchings, is_balanced, matching_multiset, proper_pairs, stock_pattern,
    Couple, MatchingMultiset, PlanarMatching, ProperPair, SetContext, Side, StockKind, TwoPattern,
};
use planar_flows::relations::{minimal_terminals, symbolic_weights, verify_symbolic, SymbolicConfig};
use planar_flows::schur::{
    enumerate_ssyt, flow_to_tableau, gv_grid_for, partition_to_set, tableau_to_flow, verify_schur_identity,
    Partition, SchurIdentity, Ssyt,
};
use planar_flows::semiring::{SemiringSpec, Value};
use planar_flows::witness::{audit, demonstrate_violation};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> (TwoPattern, TwoPattern) {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    (TwoPattern::from_json(&j["lhs"]).unwrap(), TwoPattern::from_json(&j["rhs"]).unwrap())
}

/// `"1-2 3-1'"`: couples separated by spaces, primes mark `Y'`.
fn matching(s: &str) -> PlanarMatching {
    let end = |t: &str| match t.strip_suffix('\'') {
        Some(x) => (Side::Upper, x.parse::<usize>().unwrap()),
        None => (Side::Lower, t.parse::<usize>().unwrap()),
    };
    PlanarMatching::from_couples(s.split_whitespace().map(|c| {
        let (a, b) = c.split_once('-').unwrap();
        Couple::new(end(a), end(b))
    }))
}

fn multiset(ms: &[&str]) -> MatchingMultiset {
    let mut out = MatchingMultiset::new();
    for m in ms {
        *out.entry(matching(m)).or_insert(0) += 1;
    }
    out
}

fn sorted(ms: &[&str]) -> Vec<PlanarMatching> {
    let mut v: Vec<PlanarMatching> = ms.iter().map(|m| matching(m)).collect();
    v.sort();
    v
}

fn ground(p: &TwoPattern) -> (Vec<usize>, Vec<usize>) {
    ((1..=p.m).collect(), (1..=p.m_prime).collect())
}

fn two_sided_item(file: &str, per_pair: &[(&[usize], &[usize], &[&str])], union: &[&str]) -> Check {
    let (a0, b0) = fixture(file);
    let (y, yp) = ground(&a0);
    for (a, ap, expected) in per_pair {
        let got = feasible_matchings(&y, &yp, &ProperPair::new(a.to_vec(), ap.to_vec())).unwrap();
        ensure!(got == sorted(expected), "{file}: M({a:?}|{ap:?}) = {got:?}");
    }
    let want = multiset(union);
    ensure!(matching_multiset(&y, &yp, &a0).unwrap() == want, "{file}: left multiset");
    ensure!(matching_multiset(&y, &yp, &b0).unwrap() == want, "{file}: right multiset");
    ensure!(is_balanced(&a0, &b0).unwrap().balanced, "{file}: not balanced");
    Ok(String::new())
}

fn flag_item(file: &str, p: usize, per_set: &[(&[usize], &[&str])]) -> Check {
    let (a0, b0) = fixture(file);
    let y: Vec<usize> = (1..=a0.m).collect();
    for (a, expected) in per_set {
        let got = flag_feasible_matchings(&y, a, p, a0.m - p).unwrap();
        ensure!(got == sorted(expected), "{file}: M({a:?}) = {got:?}");
    }
    let (y, yp) = ground(&a0);
    ensure!(
        matching_multiset(&y, &yp, &a0).unwrap() == matching_multiset(&y, &yp, &b0).unwrap(),
        "{file}: multisets differ"
    );
    ensure!(is_balanced(&a0, &b0).unwrap().balanced, "{file}: not balanced");
    Ok(String::new())
}

fn criterion_1() -> Check {
    flag_item("item1_p3.json", 2, &[(&[1, 2], &["2-3"]), (&[2, 3], &["1-2"]), (&[1, 3], &["1-2", "2-3"])])?;
    flag_item(
        "item2_p4.json",
        2,
        &[(&[1, 2], &["1-4 2-3"]), (&[1, 4], &["1-2 3-4"]), (&[1, 3], &["1-4 2-3", "1-2 3-4"])],
    )?;
    flag_item(
        "item3_quintuple.json",
        3,
        &[
            (&[2, 3, 4], &["1-2 4-5"]),
            (&[1, 2, 5], &["1-4 2-3", "2-3 4-5"]),
            (&[1, 4, 5], &["1-2 3-4", "2-5 3-4"]),
            (&[1, 3, 5], &["1-2 4-5", "1-4 2-3", "2-3 4-5", "1-2 3-4", "2-5 3-4"]),
        ],
    )?;
    let homogeneous = ["1-2 1'-2' 3-3'", "1-2 2'-3' 3-1'", "2-3 1'-2' 1-3'", "2-3 2'-3' 1-1'"];
    two_sided_item(
        "item6_homogeneous.json",
        &[
            (&[2, 3], &[1, 3], &["1-2 1'-2' 3-3'", "1-2 2'-3' 3-1'"]),
            (&[1, 2], &[1, 3], &["2-3 1'-2' 1-3'", "2-3 2'-3' 1-1'"]),
            (&[1, 3], &[2, 3], &["1-2 1'-2' 3-3'", "2-3 1'-2' 1-3'"]),
            (&[1, 3], &[1, 2], &["1-2 2'-3' 3-1'", "2-3 2'-3' 1-1'"]),
        ],
        &homogeneous,
    )?;
    two_sided_item(
        "item7_dodgson.json",
        &[
            (&[1], &[1], &["1-1' 2-2'", "1-2 1'-2'"]),
            (&[2], &[1], &["1-2 1'-2'"]),
            (&[1, 2], &[1, 2], &["1-1' 2-2'"]),
        ],
        &["1-1' 2-2'", "1-2 1'-2'"],
    )?;
    let mut row = homogeneous.to_vec();
    row.push("1-1' 2-2' 3-3'");
    two_sided_item(
        "item7_row_decomposition.json",
        &[
            (&[1, 3], &[1, 3], &row),
            (&[2, 3], &[1, 3], &["1-2 2'-3' 3-1'", "1-2 1'-2' 3-3'"]),
            (&[1, 2], &[1, 3], &["2-3 1'-2' 1-3'", "2-3 2'-3' 1-1'"]),
            (&[1, 2, 3], &[1, 2, 3], &["1-1' 2-2' 3-3'"]),
        ],
        &row,
    )?;
    Ok("items 1, 2, 3, 6, 7 (Dodgson and row decomposition)".into())
}

/// Fixed stock pairs plus parametric ones with `m + m' ≤ 8`.
fn stock_pairs() -> Vec<(String, TwoPattern, TwoPattern)> {
    let mut kinds = StockKind::fixed();
    for m in 3..=6usize {
        for p in m.div_ceil(2)..m {
            if 2 * p > 8 {
                continue;
            }
            let a0: Vec<usize> = (1..=p).collect();
            for z in [vec![], vec![m]] {
                kinds.push(StockKind::AA4 { m, p, a0: a0.clone(), z });
            }
            kinds.push(StockKind::AA5 { m, p, z: vec![1, m], zp: vec![1] });
            kinds.push(StockKind::AA5 { m, p, z: vec![2], zp: vec![] });
        }
    }
    kinds
        .into_iter()
        .filter_map(|k| stock_pattern(&k).ok().map(|(a, b)| (k.name(), a, b)))
        .filter(|(_, a, b)| !(a.is_empty() && b.is_empty()) && a.m + a.m_prime <= 8)
        .collect()
}

fn criterion_2() -> Check {
    let cfg = SymbolicConfig::default();
    let mut cases = 0;
    let mut oversized = 0;
    let stock = stock_pairs();
    for (name, a, b) in &stock {
        ensure!(is_balanced(a, b).unwrap().balanced, "stock {name} is not balanced");
        let r = verify_symbolic(a, b, &cfg).map_err(|e| format!("{name}: {e}"))?;
        ensure!(!r.cases.is_empty() && r.all_equal(), "stock {name}: {}", r.to_json());
        cases += r.cases.len();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..200 {
        let s = random_balanced(&mut rng, 8);
        ensure!(s.lhs.m + s.lhs.m_prime <= 8, "sample {k} too large");
        ensure!(is_balanced(&s.lhs, &s.rhs).unwrap().balanced, "sample {k} ({}) is not balanced", s.origin);
        let cfg = SymbolicConfig { seed: k, ..SymbolicConfig::default() };
        let r = verify_symbolic(&s.lhs, &s.rhs, &cfg).map_err(|e| format!("sample {k}: {e}"))?;
        ensure!(!r.cases.is_empty() && r.all_equal(), "sample {k}: {} vs {}", s.lhs, s.rhs);
        cases += r.cases.len();
        oversized += usize::from(r.oversized.is_some());
    }
    Ok(format!(
        "{} stock + 200 random pairs, {cases} symbolic cases equal ({oversized} shapes on the smallest fitting network)",
        stock.len()
    ))
}

fn sample_contexts(rng: &mut ChaCha8Rng, m: usize, mp: usize, k: usize) -> Vec<SetContext> {
    let (n, np) = minimal_terminals(m, mp);
    let mut out = SetContext::enumerate(n, np, m, mp);
    out.truncate(1);
    let mut wider = SetContext::enumerate(n + 1, np + 1, m, mp);
    wider.shuffle(rng);
    out.extend(wider.into_iter().take(k - 1));
    out
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4048);
    let mut checked = 0;
    let mut with_x = 0;
    for k in 0..200 {
        let s = random_unbalanced(&mut rng, 8);
        ensure!(!is_balanced(&s.lhs, &s.rhs).unwrap().balanced, "sample {k} is balanced");
        for ctx in sample_contexts(&mut rng, s.lhs.m, s.lhs.m_prime, 3) {
            let v = demonstrate_violation(&s.lhs, &s.rhs, &ctx).map_err(|e| format!("sample {k}: {e}"))?;
            let counts = (v.discriminating.lhs_count, v.discriminating.rhs_count);
            ensure!(
                v.lhs == Value::Int(BigInt::from(counts.0)) && v.rhs == Value::Int(BigInt::from(counts.1)),
                "sample {k}: values {}/{} vs counts {counts:?}",
                v.lhs,
                v.rhs
            );
            ensure!(counts.0 != counts.1, "sample {k}: equal counts");
            let val = v.witness.network.validate();
            ensure!(val.is_ok(), "sample {k}: witness fails validation: {val}");
            let a = audit(&v.witness).unwrap();
            ensure!(a.ok(), "sample {k}: audit {a:?}");
            checked += 1;
            with_x += usize::from(!ctx.x.is_empty() || !ctx.xp.is_empty());
        }
    }
    Ok(format!("200 unbalanced pairs, {checked} witnesses ({with_x} with nonempty X or X')"))
}

fn lindstrom_corpus(rng: &mut ChaCha8Rng) -> Vec<PlanarNetwork> {
    let mut kinds: Vec<StandardKind> = (1..=5).map(StandardKind::HalfGrid).collect();
    for a in 1..=5 {
        for b in 1..=5 {
            if a * b <= 20 {
                kinds.push(StandardKind::Grid(a, b));
            }
        }
    }
    kinds.extend([
        StandardKind::TruncatedHalfGrid(5, 2),
        StandardKind::TruncatedHalfGrid(5, 3),
        StandardKind::TruncatedHalfGrid(6, 3),
        StandardKind::GVGrid(3, 4),
        StandardKind::GVGrid(4, 5),
    ]);
    let mut out = Vec::new();
    for k in kinds {
        let g = PlanarNetwork::build_standard(k);
        assert!(g.num_vertices() <= 20);
        out.push(g.random_subnetwork(rng, 0.75));
        out.push(g);
    }
    out
}

fn random_matrix(rng: &mut ChaCha8Rng) -> ExactMatrix {
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let rows = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    if rng.gen_bool(0.25) {
                        BigRational::from_integer(0.into())
                    } else {
                        BigRational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into())
                    }
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rationals(rows).unwrap()
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut minors = 0;
    let corpus = lindstrom_corpus(&mut rng);
    for (k, g) in corpus.iter().enumerate() {
        let mut gi = g.clone();
        for w in gi.weights.iter_mut() {
            *w = Some(Value::int(rng.gen_range(-3..=3)));
        }
        let r = verify_lindstrom(&gi, &SemiringSpec::Integers, usize::MAX).unwrap();
        ensure!(r.ok(), "network {k} over integers: {:?}", r.mismatches);
        let (gp, poly) = symbolic_weights(g);
        let rp = verify_lindstrom(&gp, &poly, usize::MAX).unwrap();
        ensure!(rp.ok(), "network {k} over polynomials: {:?}", rp.mismatches);
        minors += r.checked + rp.checked;
    }
    for k in 0..100 {
        let m = random_matrix(&mut rng);
        let (g, _) = compile_matrix_to_network(&m).map_err(|e| format!("matrix {k}: {e}"))?;
        ensure!(g.validate().is_ok(), "matrix {k}: compiled network invalid");
        let f = flow_matrix(&g, &SemiringSpec::Rationals).unwrap();
        ensure!(f.equal(&m), "matrix {k}: round trip {:?} vs {:?}", f.to_json(), m.to_json());
    }
    Ok(format!("{} networks, {minors} minors; 100 compiled matrices round-trip", corpus.len()))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let stock = stock_pairs();
    for (name, a, b) in &stock {
        let (n0, np0) = minimal_terminals(a.m, a.m_prime);
        for t in 0..50 {
            let (n, np) = (n0 + rng.gen_range(0..=1), np0 + rng.gen_range(0..=1));
            let ctx = SetContext::enumerate(n, np, a.m, a.m_prime).choose(&mut rng).cloned().unwrap();
            let rows: Vec<Vec<i64>> = (0..np).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let mat = ExactMatrix::from_ints(&rows);
            let out = check_matrix_sq(&mat, a, b, &ctx).map_err(|e| format!("{name} #{t}: {e}"))?;
            ensure!(out.equal, "{name} #{t}: {} vs {} on {rows:?}", out.lhs, out.rhs);
        }
    }
    Ok(format!("{} stock pairs × 50 integer matrices", stock.len()))
}

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn contained(mu: &Partition, lambda: &Partition) -> bool {
    mu.parts.iter().zip(&lambda.parts).all(|(a, b)| a <= b)
}

fn criterion_6() -> Check {
    let t = Ssyt::new(
        part(&[6, 5, 3, 3, 2]),
        part(&[2, 2, 1, 1, 0]),
        vec![vec![1, 3, 3, 5], vec![2, 4, 4], vec![1, 3], vec![2, 6], vec![2, 5]],
        6,
    )
    .unwrap();
    let g = gv_grid_for(&t.lambda, 6);
    let flow = tableau_to_flow(&t, 6).unwrap();
    let v = |c: usize, h: usize| g.vertex_index(&format!("({c},{h})")).unwrap();
    let path = |pts: &[(usize, usize)]| pts.iter().map(|&(c, h)| v(c, h)).collect::<Vec<_>>();
    let displayed = vec![
        path(&[(1, 1), (1, 2), (2, 2), (2, 3), (2, 4), (2, 5), (3, 5), (3, 6)]),
        path(&[(3, 1), (3, 2), (4, 2), (4, 3), (4, 4), (4, 5), (4, 6), (5, 6)]),
        path(&[(4, 1), (5, 1), (5, 2), (5, 3), (6, 3), (6, 4), (6, 5), (6, 6)]),
        path(&[(6, 1), (6, 2), (7, 2), (7, 3), (7, 4), (8, 4), (9, 4), (9, 5), (9, 6)]),
        path(&[(7, 1), (8, 1), (8, 2), (8, 3), (9, 3), (10, 3), (10, 4), (10, 5), (11, 5), (11, 6)]),
    ];
    ensure!(flow.paths == displayed, "displayed tableau maps to {:?}", flow.paths);
    ensure!(flow_to_tableau(&g, &flow, 6).unwrap() == t, "inverse map");

    let mut shapes = 0;
    for r in 1..=3 {
        let all = Partition::all_within(r, 3);
        for lambda in &all {
            for mu in all.iter().filter(|mu| contained(mu, lambda)) {
                for n in 1..=4 {
                    let g = gv_grid_for(lambda, n);
                    let i = partition_to_set(mu, r).unwrap();
                    let ip = partition_to_set(lambda, r).unwrap();
                    let tableaux = enumerate_ssyt(lambda, mu, n).unwrap();
                    let flows = planar_flows::flows::enumerate_flows_capped(&g, &i, &ip, g.num_vertices()).unwrap();
                    ensure!(tableaux.len() == flows.len(), "{lambda:?}/{mu:?}, N={n}");
                    let images: BTreeSet<Vec<Vec<usize>>> =
                        tableaux.iter().map(|t| tableau_to_flow(t, n).unwrap().paths).collect();
                    ensure!(images.len() == flows.len(), "{lambda:?}/{mu:?}, N={n}: map not injective");
                    ensure!(flows.iter().all(|f| images.contains(&f.paths)), "{lambda:?}/{mu:?}, N={n}: not onto");
                    shapes += 1;
                }
            }
        }
    }

    let mut tworow = 0;
    for l in 1..=5 {
        for k in 1..l {
            for j in 1..=k {
                for i in 1..j {
                    for n in 1..=4 {
                        let c = verify_schur_identity(&SchurIdentity::TwoRowProduct { i, j, k, l }, n).unwrap();
                        ensure!(c.equal, "two-row ({i},{j},{k},{l}), N={n}");
                        tworow += 1;
                    }
                }
            }
        }
    }
    let mut cond = 0;
    for r in 2..=4 {
        for lambda in Partition::all_within(r, 4).into_iter().filter(|p| p.parts[r - 1] > 0) {
            for n in 1..=4 {
                let c = verify_schur_identity(&SchurIdentity::Condensation(lambda.clone()), n).unwrap();
                ensure!(c.equal, "condensation {:?}, N={n}", lambda.parts);
                cond += 1;
            }
        }
    }
    Ok(format!("displayed flow; {shapes} bijection cases; {tworow} two-row and {cond} condensation checks"))
}

fn random_weights(g: &mut PlanarNetwork, spec: &SemiringSpec, rng: &mut ChaCha8Rng) {
    for w in g.weights.iter_mut() {
        *w = Some(match spec {
            SemiringSpec::TropicalInt => Value::int(rng.gen_range(-5..=5)),
            _ => Value::rat(rng.gen_range(1..=9), rng.gen_range(1..=5)),
        });
    }
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n)).map(|m| (1..=n).filter(|b| m >> (b - 1) & 1 == 1).collect()).collect()
}

fn prefix(k: usize) -> Vec<usize> {
    (1..=k).collect()
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let specs = [SemiringSpec::PositiveRationals, SemiringSpec::TropicalInt];
    for spec in &specs {
        for n in 1..=6 {
            let mut g = PlanarNetwork::build_standard(StandardKind::HalfGrid(n));
            random_weights(&mut g, spec, &mut rng);
            let a = BasisAssignment::from_function(BasisCase::FlagIntervals(n), spec.clone(), |i, ip| fg_value(spec, &g, i, ip))
                .unwrap();
            let back = weights_from_intervals(&a).unwrap();
            for (k, (x, y)) in g.weights.iter().zip(&back.weights).enumerate() {
                let (x, y) = (x.as_ref().unwrap(), y.as_ref().unwrap());
                ensure!(spec.equal(x, y), "{} n={n}: weight {k}: {} vs {}", spec.name(), x, y);
            }
            if n <= 5 {
                let mut small = Reconstructor::new(&a);
                let mut large = Reconstructor::new(&a).with_choice(Choice::Largest);
                for s in subsets(n) {
                    let want = fg_value(spec, &g, &s, &prefix(s.len())).unwrap();
                    ensure!(spec.equal(&small.value(&s, &[]).unwrap(), &want), "{} n={n}: f({s:?})", spec.name());
                    ensure!(spec.equal(&large.value(&s, &[]).unwrap(), &want), "{} n={n}: f({s:?}), largest pivot", spec.name());
                }
            }
        }
    }
    let mut pairs = 0;
    for spec in &specs {
        let mut g = PlanarNetwork::build_standard(StandardKind::Grid(4, 3));
        random_weights(&mut g, spec, &mut rng);
        let case = BasisCase::PressedDoubleIntervals(g.n(), g.n_prime());
        let a = BasisAssignment::from_function(case, spec.clone(), |i, ip| fg_value(spec, &g, i, ip)).unwrap();
        for s in subsets(g.n()) {
            for sp in subsets(g.n_prime()).into_iter().filter(|sp| sp.len() == s.len()) {
                let want = fg_value(spec, &g, &s, &sp).unwrap();
                let got = reconstruct_value(&a, &s, &sp).unwrap();
                ensure!(spec.equal(&got, &want), "{} Grid(4,3): f({s:?}|{sp:?})", spec.name());
                pairs += 1;
            }
        }
    }
    let mut expansions = 0;
    for n in 1..=5 {
        let spec = SemiringSpec::PositiveRationals;
        let mut g = PlanarNetwork::build_standard(StandardKind::HalfGrid(n));
        random_weights(&mut g, &spec, &mut rng);
        let a = BasisAssignment::from_function(BasisCase::FlagIntervals(n), spec.clone(), |i, ip| fg_value(&spec, &g, i, ip))
            .unwrap();
        for s in subsets(n).into_iter().filter(|s| !s.is_empty()) {
            let e = laurent_expand(&s, n).unwrap();
            let bad: Vec<i32> = e.exponents().filter(|x| !(-1..=2).contains(x)).collect();
            ensure!(bad.is_empty(), "n={n}, f({s:?}): exponents {bad:?}");
            let want = fg_value(&spec, &g, &s, &prefix(s.len())).unwrap();
            ensure!(spec.equal(&e.evaluate(&a).unwrap(), &want), "n={n}: expansion of f({s:?}) misevaluates");
            expansions += 1;
        }
    }
    Ok(format!("round trips n ≤ 6, flag reconstruction n ≤ 5, {pairs} Grid(4,3) pairs, {expansions} expansions"))
}

fn expected_class(pair: &ProperPair, c: &Couple) -> TerminalClass {
    match *c {
        Couple::Lower(..) => TerminalClass::SourcesAcrossA,
        Couple::Upper(..) => TerminalClass::SinksAcrossA,
        Couple::Vertical(i, _) if pair.a.contains(&i) => TerminalClass::SourceSinkInA,
        Couple::Vertical(..) => TerminalClass::SourceSinkOutsideA,
    }
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let kinds = [
        StandardKind::HalfGrid(2),
        StandardKind::HalfGrid(3),
        StandardKind::HalfGrid(4),
        StandardKind::Grid(2, 2),
        StandardKind::Grid(2, 3),
        StandardKind::Grid(3, 3),
        StandardKind::Grid(3, 4),
        StandardKind::Grid(2, 5),
        StandardKind::TruncatedHalfGrid(5, 2),
    ];
    let mut nets = Vec::new();
    for k in kinds {
        let g = PlanarNetwork::build_standard(k);
        nets.push(g.random_subnetwork(&mut rng, 0.8));
        nets.push(g);
    }
    let (mut doubles, mut exchanges) = (0usize, 0usize);
    for (k, g) in nets.iter().enumerate() {
        ensure!(g.num_vertices() <= 12, "network {k} too large");
        let h = &split_vertices(g).unwrap().network;
        let cap = h.num_vertices();
        for m in 0..=g.n() {
            for mp in 0..=g.n_prime() {
                if m + mp == 0 || (m + mp) % 2 == 1 {
                    continue;
                }
                for ctx in SetContext::enumerate(g.n(), g.n_prime(), m, mp) {
                    for pair in proper_pairs(m, mp) {
                        let pair = pair.embed(&ctx.y, &ctx.yp);
                        for df in DoubleFlow::enumerate(h, &ctx, &pair, cap).unwrap() {
                            let dec = decompose_double_flow(h, &df).map_err(|e| format!("network {k}: {e}"))?;
                            ensure!(dec.paths.len() == (m + mp) / 2, "network {k}: {} paths", dec.paths.len());
                            for p in &dec.paths {
                                ensure!(p.class == expected_class(&pair, &p.couple), "network {k}: class of {}", p.couple);
                            }
                            let mut parts: Vec<usize> = dec
                                .paths
                                .iter()
                                .map(|p| &p.component)
                                .chain(&dec.circuits)
                                .flat_map(|c| c.edges.iter().copied())
                                .collect();
                            parts.sort_unstable();
                            let (e1, e2) = (df.phi.edges(h).unwrap(), df.phi_prime.edges(h).unwrap());
                            let delta: Vec<usize> = e1.symmetric_difference(&e2).copied().collect();
                            ensure!(parts == delta, "network {k}: components do not partition the difference");
                            let union = |d: &DoubleFlow| {
                                let mut v: Vec<usize> =
                                    d.phi.edges(h).unwrap().into_iter().chain(d.phi_prime.edges(h).unwrap()).collect();
                                v.sort_unstable();
                                v
                            };
                            let before = union(&df);
                            let couples: Vec<Couple> = dec.matching.couples().copied().collect();
                            for mask in 0u32..(1 << couples.len()) {
                                let m0: Vec<Couple> =
                                    (0..couples.len()).filter(|b| mask >> b & 1 == 1).map(|b| couples[b]).collect();
                                let ex = exchange(h, &df, &m0).unwrap();
                                ensure!(union(&ex) == before, "network {k}: exchange changes the edge multiset");
                                ensure!(exchange(h, &ex, &m0).unwrap() == df, "network {k}: exchange is not an involution");
                                exchanges += 1;
                            }
                            doubles += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{} networks, {doubles} double flows, {exchanges} exchanges", nets.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 8] = [
        ("fixture suite", criterion_1, 1),
        ("soundness", criterion_2, 300),
        ("necessity", criterion_3, 300),
        ("Lindström equivalence", criterion_4, 120),
        ("check_matrix_sq", criterion_5, 60),
        ("Schur suite", criterion_6, 180),
        ("basis and Laurent", criterion_7, 120),
        ("double-flow algebra", criterion_8, 120),
    ];
    let mut failed = 0;
    for (k, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; took {:.1}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {} ({name}): PASS [{:.2}s] {detail}", k + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{:.2}s] {why}", k + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
