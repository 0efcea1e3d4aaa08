//! Balancedness of pattern pairs and the matchings behind the verdict.

use planar_flows::patterns::{flag_to_two_pattern, is_balanced, matching_multiset, OnePattern, TwoPattern};

fn show(name: &str, a: &TwoPattern, b: &TwoPattern) {
    let (y, yp): (Vec<usize>, Vec<usize>) = ((1..=a.m).collect(), (1..=a.m_prime).collect());
    println!("{name}: {a} vs {b}");
    for (label, p) in [("  left ", a), ("  right", b)] {
        let ms = matching_multiset(&y, &yp, p).unwrap();
        let parts: Vec<String> = ms.iter().map(|(m, k)| format!("{k}×{m}")).collect();
        println!("{label}: {}", parts.join(" + "));
    }
    let r = is_balanced(a, b).unwrap();
    match r.witness {
        None => println!("  balanced"),
        Some((m, ca, cb)) => println!("  unbalanced at {m}: {ca} vs {cb}"),
    }
}

fn main() {
    let flag = |m, p, sets: &[&[usize]]| {
        flag_to_two_pattern(&OnePattern::from_sets(m, p, sets.iter().map(|s| s.to_vec())).unwrap())
    };
    show("P3", &flag(3, 2, &[&[1, 3]]), &flag(3, 2, &[&[1, 2], &[2, 3]]));
    show("P3 without 23", &flag(3, 2, &[&[1, 3]]), &flag(3, 2, &[&[1, 2]]));
    let dodgson_l = TwoPattern::from_pairs(2, 2, [(vec![1], vec![1])]).unwrap();
    let dodgson_r = TwoPattern::from_pairs(2, 2, [(vec![2], vec![1]), (vec![1, 2], vec![1, 2])]).unwrap();
    show("Dodgson", &dodgson_l, &dodgson_r);
}
