//! A counterexample network for the unbalanced pair ({13}, {12}).

use planar_flows::network::network_to_json;
use planar_flows::patterns::{flag_to_two_pattern, OnePattern, SetContext};
use planar_flows::semiring::SemiringSpec;
use planar_flows::witness::{audit, demonstrate_violation};

fn main() {
    let a0 = flag_to_two_pattern(&OnePattern::from_sets(3, 2, [vec![1, 3]]).unwrap());
    let b0 = flag_to_two_pattern(&OnePattern::from_sets(3, 2, [vec![1, 2]]).unwrap());
    let ctx = SetContext::new(3, 2, &[], &[1, 2, 3], &[1], &[2]).unwrap();
    let v = demonstrate_violation(&a0, &b0, &ctx).unwrap();
    println!("discriminating matching {}", v.witness.matching);
    println!("left side {} vs right side {}", v.lhs, v.rhs);
    let a = audit(&v.witness).unwrap();
    println!("audit: {} pairs, {} admit the matching, ok = {}", a.pairs_checked, a.feasible_pairs, a.ok());
    println!("{}", serde_json::to_string_pretty(&network_to_json(&v.witness.network, &SemiringSpec::Integers)).unwrap());
}
