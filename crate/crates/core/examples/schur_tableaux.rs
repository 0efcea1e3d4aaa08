//! Semistandard tableaux as lattice-path flows, and a two-row Schur identity.

use planar_flows::schur::{
    enumerate_ssyt, gv_grid_for, schur_poly, schur_spec, tableau_to_flow, verify_schur_identity, Partition,
    SchurIdentity,
};

fn main() {
    let n = 3;
    let lambda = Partition::new(vec![2, 1]).unwrap();
    let mu = Partition::zero(2);
    let g = gv_grid_for(&lambda, n);
    for t in enumerate_ssyt(&lambda, &mu, n).unwrap() {
        let f = tableau_to_flow(&t, n).unwrap();
        let paths: Vec<Vec<&str>> = f.paths.iter().map(|p| p.iter().map(|&v| g.vertex_id(v)).collect()).collect();
        println!("{:?} -> {:?}", t.rows, paths);
    }
    let spec = schur_spec(n);
    println!("s_(2,1) = {}", spec.display(&schur_poly(&lambda, &mu, n).unwrap()));
    let c = verify_schur_identity(&SchurIdentity::TwoRowProduct { i: 1, j: 2, k: 3, l: 4 }, n).unwrap();
    let shapes: Vec<Vec<usize>> = c.partitions.iter().map(|p| p.parts.clone()).collect();
    println!("s{:?} s{:?} = s{:?} s{:?} + s{:?} s{:?}: {}", shapes[0], shapes[1], shapes[2], shapes[3], shapes[4], shapes[5], c.equal);
}
