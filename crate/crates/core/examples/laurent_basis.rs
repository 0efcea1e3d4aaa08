//! Flag interval values determine the whole function, as Laurent polynomials in those values.

use planar_flows::basis::{laurent_expand, reconstruct_value, weights_from_intervals, BasisAssignment, BasisCase};
use planar_flows::flows::fg_value;
use planar_flows::semiring::{SemiringSpec, Value};

fn main() {
    let n = 3;
    let spec = SemiringSpec::PositiveRationals;
    let vals = [2, 3, 5, 4, 9, 6];
    let mut it = vals.iter();
    let a = BasisAssignment::from_function(BasisCase::FlagIntervals(n), spec.clone(), |i, _| {
        Ok(if i.is_empty() { Value::int(1) } else { Value::int(*it.next().unwrap()) })
    })
    .unwrap();
    println!("basis {}", a.to_json());
    let g = weights_from_intervals(&a).unwrap();
    for target in [vec![1, 3], vec![2, 3], vec![2]] {
        let r = reconstruct_value(&a, &target, &[]).unwrap();
        let direct = fg_value(&spec, &g, &target, &(1..=target.len()).collect::<Vec<_>>()).unwrap();
        println!("f({target:?}) = {r} (half-grid: {direct})");
        println!("  {}", laurent_expand(&target, n).unwrap().to_json());
    }
}
