//! Decomposing a double flow into alternating paths and exchanging along one of them.

use planar_flows::flows::{decompose_double_flow, exchange, DoubleFlow};
use planar_flows::network::{split_vertices, PlanarNetwork, StandardKind};
use planar_flows::patterns::{ProperPair, SetContext};

fn main() {
    let g = PlanarNetwork::build_standard(StandardKind::Grid(3, 3));
    let h = split_vertices(&g).unwrap().network;
    let ctx = SetContext::new(3, 3, &[], &[1, 2, 3], &[1], &[2]).unwrap();
    let pair = ProperPair::new(vec![1, 3], vec![2]);
    let dfs = DoubleFlow::enumerate(&h, &ctx, &pair, h.num_vertices()).unwrap();
    println!("{} double flows for {pair} on the split 3×3 grid", dfs.len());
    let df = &dfs[dfs.len() / 2];
    let dec = decompose_double_flow(&h, df).unwrap();
    println!("matching {}, {} circuit(s)", dec.matching, dec.circuits.len());
    for p in &dec.paths {
        println!("  {}: {:?}, {} edges", p.couple, p.class, p.component.edges.len());
    }
    let first = *dec.matching.couples().next().unwrap();
    let ex = exchange(&h, df, &[first]).unwrap();
    println!("after exchanging along {first}: pair {}", ex.pair);
    let back = exchange(&h, &ex, &[first]).unwrap();
    println!("exchanging again restores the original: {}", back == *df);
}
