use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlogflow"))
        .args(args)
        .env_remove("DLOGFLOW_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn counts_trees() {
    let out = run(&["trees", "--count", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "9");
    let out = run(&["trees", "--count", "4", "--list", "--format", "json"]);
    let doc = json(&out);
    assert_eq!(doc["count"], 4);
    assert_eq!(doc["trees"].as_array().unwrap().len(), 4);
}

#[test]
fn phi_table_csv() {
    let out = run(&["phi-table", "--max-vertices", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "tree,v,alpha,phi");
    assert_eq!(
        &rows[1..],
        ["(),1,1,1", "(()),2,1,-1/2", "((())),3,1,1/3", "(()()),3,2,1/6"]
    );
}

#[test]
fn psi_table_json() {
    let out = run(&["psi-table", "--max-vertices", "2", "--format", "json"]);
    let doc = json(&out);
    assert_eq!(doc[1]["tree"], "(())");
    let psi: Vec<&str> = doc[1]["psi"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(psi, ["0", "-1/2", "1/2"]);
}

#[test]
fn order_poly_and_bernoulli() {
    let out = run(&["order-poly", "--tree", "(())", "--format", "json"]);
    let doc = json(&out);
    assert_eq!(doc["counts"], serde_json::json!(["0", "0", "1"]));
    let out = run(&["bernoulli", "--n", "12"]);
    assert!(stdout(&out).starts_with("B_12 = -691/2730"));
}

#[test]
fn series_commands() {
    let map = data("quadratic.json");
    let inv = json(&run(&["invert", "--map", &map, "--trunc", "5"]));
    let coeffs: Vec<&str> = inv["components"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coeff"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["1", "-1", "2", "-5", "14"]);
    assert_eq!(inv, json(&run(&["invert", "--map", &map, "--trunc", "5", "--trees"])));
    assert_eq!(inv, json(&run(&["flow", "--map", &map, "--trunc", "5", "--t", "-1"])));

    let a = json(&run(&["dlog", "--map", &map, "--trunc", "4"]));
    assert_eq!(a, json(&run(&["dlog", "--map", &map, "--trunc", "4", "--trees"])));
    assert_eq!(a["components"][0][2]["coeff"], "3/2");

    let sym = json(&run(&["flow", "--map", &map, "--trunc", "3", "--symbolic"]));
    assert_eq!(
        sym["components"][0][2]["coeff"]["t_poly"],
        serde_json::json!(["0", "-1", "1"])
    );

    let p = json(&run(&[
        "ptree",
        "--tree",
        "(()())",
        "--system",
        &data("square.json"),
        "--trunc",
        "5",
    ]));
    assert_eq!(p["components"][0][0]["exps"], serde_json::json!([4]));
    assert_eq!(p["components"][0][0]["coeff"], "1");
}

#[test]
fn two_variable_inverse_text() {
    let out = run(&["invert", "--map", &data("triangular.json"), "--format", "text"]);
    assert_eq!(stdout(&out).trim(), "(z1 - z2^2, z2)");
}

#[test]
fn verify_suites_exit_zero() {
    let out = run(&["verify", "--suite", "omega", "--max-vertices", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("omega: 111/111 passed"));
    let out = run(&[
        "verify",
        "--suite",
        "keylemma",
        "--max-vertices",
        "4",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    let doc = json(&out);
    assert_eq!(doc["seed"], 3);
    assert_eq!(doc["cases"].as_array().unwrap().len(), 20);
}

#[test]
fn seed_from_environment_is_reproducible() {
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_dlogflow"))
            .args(["verify", "--suite", "flowgroup", "--trunc", "4", "--format", "json"])
            .env("DLOGFLOW_SEED", "17")
            .output()
            .unwrap()
    };
    let (a, b) = (go(), go());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 17);
}

#[test]
fn contract_violations_exit_two() {
    let out = run(&["dlog", "--map", &data("square.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("identity"));
    assert_eq!(run(&["order-poly", "--tree", "(()"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["flow", "--map", &data("quadratic.json"), "--t", "1/0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["invert", "--map", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn config_and_tables_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dlogflow.toml");
    let tables = dir.path().join("tables.json");
    std::fs::write(
        &cfg,
        format!("max_vertices = 2\nformat = \"json\"\ntables = {:?}\n", tables),
    )
    .unwrap();
    let out = run(&["phi-table", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out).as_array().unwrap().len(), 2);
    assert!(tables.exists());
    let out = run(&[
        "phi-table",
        "--config",
        cfg.to_str().unwrap(),
        "--max-vertices",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&out).lines().count(), 5);

    std::fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(
        run(&["trees", "--count", "2", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
