use std::path::PathBuf;
use std::process::{Command, Output};

use invariant_orders::io::{parse_relation_capped, RelationJson};
use invariant_orders::relation::Relation;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn invord(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => fixture(f),
            None => a.to_string(),
        })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_invord"))
        .args(&args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn preorder_extension_summary() {
    let o = invord(&[
        "extend-preorder",
        "--action",
        "@double_swap.json",
        "--relation",
        "@double_swap_order.json",
        "--summary",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0~1 < 2~3\n");
}

#[test]
fn preorder_extension_json_round_trips() {
    let o = invord(&[
        "extend-preorder",
        "--action",
        "@double_swap.json",
        "--relation",
        "@double_swap_order.json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["summary"], "0~1 < 2~3");
    let r = parse_relation_capped(&stdout(&o), 32).unwrap();
    let levels = Relation::from_levels(r.universe().clone(), &[vec![0, 1], vec![2, 3]]).unwrap();
    assert_eq!(r, levels);
}

#[test]
fn powerset_chain_and_round_trip() {
    let o = invord(&["powerset-order", "--action", "@c3.json", "--summary"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "∅ < {0}~{1}~{2} < {0,1}~{0,2}~{1,2} < {0,1,2}\n"
    );

    let o = invord(&["powerset-order", "--action", "@c3.json"]);
    let text = stdout(&o);
    let r = parse_relation_capped(&text, 32).unwrap();
    assert_eq!(r.size(), 8);
    let again = invariant_orders::io::to_json(&RelationJson::from_relation(&r).with_summary(&r));
    assert_eq!(again, text);
}

#[test]
fn powerset_dot() {
    let o = invord(&["powerset-order", "--action", "@c3.json", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph hasse {"));
    assert!(dot.contains("n1 [label=\"{0}~{1}~{2}\"];"));
    assert!(dot.contains("n4 -> n7;"));
}

#[test]
fn cone_check_zero_combo_exits_one() {
    let o = invord(&["cone-check", "--cone", "@cone_line.json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["kind"], "ZeroCombo");
    assert_eq!(v["lambda"], serde_json::json!([1, 1]));
}

#[test]
fn cone_check_positive_weight() {
    let o = invord(&["cone-check", "--cone", "@cone_pointed.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["kind"], "PositiveWeight");
    assert_eq!(v["weight"], serde_json::json!(["1/1", "1/1"]));
}

#[test]
fn cone_member_reports_gap() {
    let o = invord(&[
        "cone-member",
        "--cone",
        "@cone_even.json",
        "--vector",
        "1,1",
        "--bound",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["member"], true);
    assert_eq!(
        v["certificate"]["coefficients"],
        serde_json::json!(["1/2", "1/2"])
    );
    assert_eq!(v["bounded"]["kind"], "NotFound");

    let o = invord(&[
        "cone-member",
        "--cone",
        "@cone_pointed.json",
        "--vector",
        "-1,0",
    ]);
    let v = json(&o);
    assert_eq!(v["member"], false);
    assert_eq!(
        v["certificate"]["weight"],
        serde_json::json!(["1/1", "0/1"])
    );
}

#[test]
fn cone_extend_and_separate() {
    let o = invord(&["cone-extend", "--cone", "@cone_pointed.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["rows"][0], serde_json::json!(["1/1", "1/1"]));

    let o = invord(&[
        "cone-separate",
        "--cone",
        "@cone_axis.json",
        "--x",
        "0,0",
        "--y",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        json(&o)["rows"],
        serde_json::json!([["0/1", "1/1"], ["1/1", "0/1"]])
    );

    let o = invord(&[
        "cone-separate",
        "--cone",
        "@cone_axis.json",
        "--x",
        "2,0",
        "--y",
        "0,0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["kind"], "Combo");

    let o = invord(&["cone-extend", "--cone", "@cone_line.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["kind"], "ZeroCombo");
}

#[test]
fn leqg_pair_with_witness() {
    let o = invord(&[
        "leqg",
        "--action",
        "@double_swap.json",
        "--relation",
        "@double_swap_order.json",
        "--pair",
        "1,2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["related"], true);
    assert_eq!(v["elements"].as_array().unwrap().len(), 2);

    let o = invord(&[
        "leqg",
        "--action",
        "@double_swap.json",
        "--relation",
        "@double_swap_order.json",
        "--pair",
        "2,1",
    ]);
    assert_eq!(json(&o)["related"], false);
}

#[test]
fn leqg_full_relation() {
    let o = invord(&[
        "leqg",
        "--action",
        "@double_swap.json",
        "--relation",
        "@double_swap_order.json",
        "--summary",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0~1 < 2~3\n");
}

#[test]
fn extension_step_and_rejection() {
    let o = invord(&[
        "extend-linear",
        "--action",
        "@double_swap.json",
        "--relation",
        "@double_swap_order.json",
        "--pair",
        "0,3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = parse_relation_capped(&stdout(&o), 16).unwrap();
    assert!(r.contains(0, 3) && r.contains(1, 2) && !r.contains(0, 1));

    let o = invord(&[
        "extend-linear",
        "--action",
        "@double_swap.json",
        "--relation",
        "@double_swap_order.json",
        "--pair",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["error"], "Inadmissible");
    assert_eq!(v["reverse"], serde_json::json!([1, 0]));
}

#[test]
fn orbit_condition_failure_has_witness() {
    let o = invord(&[
        "extend-linear",
        "--action",
        "@swap.json",
        "--relation",
        "@equality2.json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["error"], "OrbitCondition");
    assert_eq!(v["orbit"], serde_json::json!([0, 1]));
}

#[test]
fn labelled_linear_extension() {
    let o = invord(&[
        "extend-linear",
        "--action",
        "@trivial3.json",
        "--relation",
        "@chain3.json",
        "--summary",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a < b < c\n");
}

#[test]
fn orbits_and_simg() {
    let o = invord(&["orbits", "--action", "@double_swap.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["orbits"], serde_json::json!([[0, 1], [2, 3]]));
    assert_eq!(v["orbitCondition"], false);

    let o = invord(&["simg", "--action", "@c3.json", "--summary"]);
    assert_eq!(stdout(&o), "0~1~2\n");
    let o = invord(&["simg", "--action", "@swap.json", "--pair", "0,1"]);
    assert_eq!(json(&o)["related"], true);
}

#[test]
fn strong_invariance_reports() {
    let o = invord(&[
        "strong-invariance",
        "--action",
        "@double_swap.json",
        "--relation",
        "@double_swap_order.json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["stronglyInvariant"], false);
}

#[test]
fn check_and_export_dot() {
    let o = invord(&["check", "--relation", "@chain3.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["kind"], "partial-order");
    assert_eq!(v["antisymmetric"], true);

    let o = invord(&[
        "check",
        "--relation",
        "@chain3.json",
        "--action",
        "@trivial3.json",
    ]);
    assert_eq!(json(&o)["invariant"], true);

    let o = invord(&["export-dot", "--relation", "@chain3.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n0 [label=\"a\"];"));
    assert!(stdout(&o).contains("n0 -> n1;"));
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        vec!["check", "--relation", "@truncated.json"],
        vec!["orbits", "--action", "@not_bijection.json"],
        vec!["orbits", "--action", "@s3.json"],
        vec!["orbits", "--action", "@missing.json"],
        vec![
            "cone-member",
            "--cone",
            "@cone_pointed.json",
            "--vector",
            "1,x",
        ],
        vec![
            "cone-member",
            "--cone",
            "@cone_pointed.json",
            "--vector",
            "1,2,3",
        ],
        vec![
            "leqg",
            "--action",
            "@swap.json",
            "--relation",
            "@chain3.json",
        ],
        vec!["simg", "--action", "@swap.json", "--pair", "0,9"],
        vec!["no-such-command"],
    ] {
        let o = invord(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let runs: &[&[&str]] = &[
        &["powerset-order", "--action", "@c3.json"],
        &[
            "extend-linear",
            "--action",
            "@trivial3.json",
            "--relation",
            "@chain3.json",
        ],
        &[
            "cone-separate",
            "--cone",
            "@cone_axis.json",
            "--x",
            "0,0",
            "--y",
            "0,1",
        ],
        &["orbits", "--action", "@double_swap.json"],
    ];
    for args in runs {
        let a = invord(args);
        let b = invord(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
