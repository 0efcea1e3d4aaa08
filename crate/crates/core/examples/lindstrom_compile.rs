//! Compiling a rational matrix into a planar network and reading it back through its minors.

use planar_flows::flows::fg_value;
use planar_flows::lindstrom::{compile_matrix_to_network, flow_matrix, minor, ExactMatrix};
use planar_flows::semiring::{SemiringSpec, Value};

fn main() {
    let m = ExactMatrix::new(
        SemiringSpec::Rationals,
        vec![
            vec![Value::int(2), Value::int(-1), Value::int(0)],
            vec![Value::rat(1, 2), Value::int(3), Value::int(4)],
        ],
    )
    .unwrap();
    let (g, chain) = compile_matrix_to_network(&m).unwrap();
    println!("{} factors, {} vertices, {} edges", chain.factors.len(), g.num_vertices(), g.edges.len());
    for f in &chain.factors {
        println!("  {}", f.to_json());
    }
    let spec = SemiringSpec::Rationals;
    println!("flow matrix {}", flow_matrix(&g, &spec).unwrap().to_json());
    let (cols, rows) = ([1, 3], [1, 2]);
    println!(
        "minor {cols:?}|{rows:?} = {}, flow value = {}",
        minor(&m, &cols, &rows).unwrap(),
        fg_value(&spec, &g, &cols, &rows).unwrap()
    );
}
