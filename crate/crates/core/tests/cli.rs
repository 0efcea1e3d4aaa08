use std::path::PathBuf;
use std::process::{Command, Output};

use planar_flows::basis::{weights_from_intervals, BasisAssignment};
use planar_flows::flows::fg_value;
use planar_flows::semiring::value_to_json;
use serde_json::{json, Value as Json};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn sqflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqflow")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str], code: i32) -> Json {
    let out = sqflow(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn texts(j: &Json, key: &str) -> Vec<String> {
    j[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| {
            assert_eq!(m["mult"], json!(1));
            m["text"].as_str().unwrap().to_string()
        })
        .collect()
}

fn check_balanced(file: &str, expected: &[&str]) {
    let j = run_json(&["check-balance", "--patterns", &fixture(file)], 0);
    assert_eq!(j["verdict"], json!("balanced"));
    assert_eq!(j["witness"], Json::Null);
    assert_eq!(texts(&j, "lhs_matchings"), expected);
    assert_eq!(texts(&j, "rhs_matchings"), expected);
}

#[test]
fn check_balance_p3() {
    // The vertical couple carries the element left over by the flag couple.
    check_balanced("item1_p3.json", &["{1-2, 3-1'}", "{2-3, 1-1'}"]);
}

#[test]
fn check_balance_p4() {
    check_balanced("item2_p4.json", &["{1-2, 3-4}", "{1-4, 2-3}"]);
}

#[test]
fn check_balance_quintuple() {
    check_balanced(
        "item3_quintuple.json",
        &[
            "{1-2, 3-4, 5-1'}",
            "{1-2, 4-5, 3-1'}",
            "{1-4, 2-3, 5-1'}",
            "{2-3, 4-5, 1-1'}",
            "{2-5, 3-4, 1-1'}",
        ],
    );
}

#[test]
fn check_balance_homogeneous() {
    check_balanced(
        "item6_homogeneous.json",
        &["{1-2, 1'-2', 3-3'}", "{1-2, 2'-3', 3-1'}", "{2-3, 1'-2', 1-3'}", "{2-3, 2'-3', 1-1'}"],
    );
}

#[test]
fn check_balance_dodgson_and_row_decomposition() {
    check_balanced("item7_dodgson.json", &["{1-2, 1'-2'}", "{1-1', 2-2'}"]);
    check_balanced(
        "item7_row_decomposition.json",
        &[
            "{1-2, 1'-2', 3-3'}",
            "{1-2, 2'-3', 3-1'}",
            "{2-3, 1'-2', 1-3'}",
            "{2-3, 2'-3', 1-1'}",
            "{1-1', 2-2', 3-3'}",
        ],
    );
}

#[test]
fn check_balance_unbalanced_exits_1() {
    let j = run_json(&["check-balance", "--patterns", &fixture("unbalanced_13_vs_12.json")], 1);
    assert_eq!(j["verdict"], json!("unbalanced"));
    assert_eq!(j["witness"]["text"], json!("{1-2, 3-1'}"));
    assert_eq!((j["witness"]["lhs_count"].clone(), j["witness"]["rhs_count"].clone()), (json!(1), json!(0)));
}

#[test]
fn witness_network_and_counts() {
    let dir = std::env::temp_dir().join(format!("sqflow-witness-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let net = dir.join("net.json");
    let args = [
        "witness",
        "--patterns",
        &fixture("unbalanced_13_vs_12.json"),
        "--sets",
        &fixture("sets_flag3.json"),
        "--network-out",
        net.to_str().unwrap(),
    ];
    let j = run_json(&args, 1);
    assert_eq!((j["lhs"].clone(), j["rhs"].clone()), (json!("1"), json!("0")));
    assert_eq!(j["counts"], json!([1, 0]));
    let v = run_json(&["validate-network", "--network", net.to_str().unwrap()], 0);
    assert_eq!(v["ok"], json!(true));
    let one = run_json(
        &["eval-fg", "--network", net.to_str().unwrap(), "--args", &fixture("args_12_12.json")],
        0,
    );
    assert!(one["value"].is_u64());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn witness_on_balanced_patterns_exits_0() {
    let j = run_json(&["witness", "--patterns", &fixture("item1_p3.json"), "--sets", &fixture("sets_flag3.json")], 0);
    assert_eq!(j["balanced"], json!(true));
}

#[test]
fn eval_fg_counts_the_unique_flag_flow() {
    let j = run_json(&["eval-fg", "--network", &fixture("halfgrid3.json"), "--args", &fixture("args_12_12.json")], 0);
    assert_eq!(j["value"], json!(1));
    let p = run_json(
        &[
            "eval-fg",
            "--network",
            &fixture("halfgrid3.json"),
            "--args",
            &fixture("args_12_12.json"),
            "--semiring",
            "polynomial",
        ],
        0,
    );
    assert_eq!(
        p["value"],
        json!([{"coeff": 1, "monomial": {"w_(1,1)": 1, "w_(2,1)": 1, "w_(2,2)": 1}}])
    );
}

#[test]
fn verify_relation_over_several_semirings() {
    let p3 = run_json(
        &[
            "verify-relation",
            "--patterns",
            &fixture("item1_p3.json"),
            "--semiring",
            "tropical-int",
            "--network",
            &fixture("halfgrid4_tropical.json"),
        ],
        0,
    );
    assert_eq!(p3["all_equal"], json!(true));
    assert!(p3["cases"].as_array().unwrap().len() > 10);
    for (file, net) in [
        ("item2_p4.json", "halfgrid4_tropical.json"),
        ("item6_homogeneous.json", "grid33.json"),
        ("item7_row_decomposition.json", "grid33.json"),
    ] {
        let j = run_json(
            &["verify-relation", "--patterns", &fixture(file), "--network", &fixture(net), "--semiring", "integers"],
            0,
        );
        assert_eq!(j["all_equal"], json!(true), "{file}");
    }
    let dodgson = run_json(
        &[
            "verify-relation",
            "--patterns",
            &fixture("item7_dodgson.json"),
            "--semiring",
            "polynomial",
            "--network",
            &fixture("grid33.json"),
            "--sets",
            &fixture("sets_dodgson_grid33.json"),
        ],
        0,
    );
    assert_eq!(dodgson["cases"].as_array().unwrap().len(), 1);
    assert_eq!(dodgson["cases"][0]["equal"], json!(true));
}

#[test]
fn verify_relation_fails_for_unbalanced_patterns() {
    let j = run_json(
        &["verify-relation", "--patterns", &fixture("unbalanced_13_vs_12.json"), "--network", &fixture("halfgrid3.json")],
        1,
    );
    assert_eq!(j["all_equal"], json!(false));
}

#[test]
fn verify_relation_sampling_follows_the_seed() {
    let args = |seed: &'static str| {
        vec![
            "verify-relation".to_string(),
            "--patterns".into(),
            fixture("item1_p3.json"),
            "--semiring".into(),
            "tropical-int".into(),
            "--network".into(),
            fixture("halfgrid4_tropical.json"),
            "--max-contexts".into(),
            "4".into(),
            "--seed".into(),
            seed.into(),
        ]
    };
    let run = |seed| {
        let a = args(seed);
        sqflow(&a.iter().map(String::as_str).collect::<Vec<_>>()).stdout
    };
    assert_eq!(run("7"), run("7"));
    let j: Json = serde_json::from_slice(&run("7")).unwrap();
    assert_eq!(j["cases"].as_array().unwrap().len(), 4);
}

#[test]
fn compile_matrix_round_trips() {
    let j = run_json(&["compile-matrix", "--matrix", &fixture("matrix_3x3.json")], 0);
    assert_eq!(j["round_trip"], json!(true));
    assert_eq!(j["flow_matrix"], json!([["2", "-1", "0"], ["1/2", "3", "4"], ["0", "5", "-2/3"]]));
    assert_eq!(j["network"]["sources"], json!(["s1", "s2", "s3"]));
}

#[test]
fn schur_identities() {
    let j = run_json(&["schur", "--identity", "tworow", "--params", "1,2,3,4", "--n", "3"], 0);
    assert_eq!(j["equal"], json!(true));
    let c = run_json(&["schur", "--identity", "condensation", "--params", "3,2,1", "--n", "3"], 0);
    assert_eq!(c["equal"], json!(true));
    assert_eq!(c["partitions"][3], json!([3, 2, 1]));
    let bad = sqflow(&["schur", "--identity", "tworow", "--params", "2,1,3,4", "--n", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("i < j"));
}

#[test]
fn reconstruct_agrees_with_the_half_grid() {
    let j = run_json(&["reconstruct", "--basis", &fixture("basis_flag4.json"), "--target", "1,3"], 0);
    let text = std::fs::read_to_string(fixture("basis_flag4.json")).unwrap();
    let a = BasisAssignment::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    let g = weights_from_intervals(&a).unwrap();
    let v = fg_value(&a.spec, &g, &[1, 3], &[1, 2]).unwrap();
    assert_eq!(j["value"], value_to_json(&a.spec, &v));
    assert_eq!(j["value"], json!("38/3"));
}

#[test]
fn validate_network_reports_crossings() {
    let ok = run_json(&["validate-network", "--network", &fixture("grid33.json")], 0);
    assert_eq!(ok["ok"], json!(true));
    let bad = run_json(&["validate-network", "--network", &fixture("crossing.json")], 1);
    assert_eq!(bad["planar"], json!(false));
    assert_eq!(bad["crossings"], json!(["edges s1->t2 and s2->t1 cross"]));
}

#[test]
fn output_is_byte_stable_and_out_matches_stdout() {
    let args = ["witness", "--patterns", &fixture("unbalanced_13_vs_12.json"), "--sets", &fixture("sets_flag3.json")];
    let a = sqflow(&args);
    let b = sqflow(&args);
    assert_eq!(a.stdout, b.stdout);
    let path = std::env::temp_dir().join(format!("sqflow-out-{}.json", std::process::id()));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let c = sqflow(&with_out);
    assert_eq!(c.status.code(), Some(1));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn usage_errors() {
    let missing = sqflow(&["check-balance"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(missing.stdout.is_empty());
    assert!(!missing.stderr.is_empty());
    let bad_ring = sqflow(&[
        "eval-fg",
        "--network",
        &fixture("halfgrid3.json"),
        "--args",
        &fixture("args_12_12.json"),
        "--semiring",
        "octonions",
    ]);
    assert_eq!(bad_ring.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_ring.stderr).contains("unknown semiring"));
}
