//! The three-term relation in the max-plus semiring on a weighted half-grid.

use planar_flows::network::{PlanarNetwork, StandardKind};
use planar_flows::patterns::{stock_pattern, SetContext, StockKind};
use planar_flows::relations::{evaluate_sq, RelationInstance};
use planar_flows::semiring::{SemiringSpec, Value};

fn main() {
    let spec = SemiringSpec::TropicalInt;
    let mut g = PlanarNetwork::build_standard(StandardKind::HalfGrid(4));
    for (v, w) in [3, -1, 4, 1, -5, 9, 2, -6, 5, 3].into_iter().enumerate() {
        g.set_vertex_weight(v, Value::int(w));
    }
    let (a0, b0) = stock_pattern(&StockKind::P3).unwrap();
    let contexts = SetContext::enumerate(g.n(), g.n_prime(), a0.m, a0.m_prime);
    println!("{} contexts for {a0} vs {b0}", contexts.len());
    for ctx in contexts.iter().take(8) {
        let ri = RelationInstance::from_patterns(spec.clone(), g.clone(), ctx.clone(), &a0, &b0).unwrap();
        let out = evaluate_sq(&ri).unwrap();
        println!(
            "X={:?} Y={:?} X'={:?} Y'={:?}: max = {} / {}  equal: {}",
            ctx.x, ctx.y, ctx.xp, ctx.yp, out.lhs, out.rhs, out.equal
        );
    }
}
