//! End-to-end runs of the binary: output schema and exit codes.

use std::process::{Command, Output as ProcOutput};

use serde_json::Value;

fn run(args: &[&str]) -> (Value, i32) {
    let out: ProcOutput = Command::new(env!("CARGO_BIN_EXE_nambu"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    let value: Value = serde_json::from_str(stdout.trim())
        .unwrap_or_else(|e| panic!("non-JSON output for {args:?}: {e}\n{stdout}"));
    (value, out.status.code().unwrap_or(-1))
}

fn assert_schema(v: &Value) {
    let obj = v.as_object().expect("output is an object");
    assert!(obj.contains_key("status"));
    assert!(obj.contains_key("command"));
    assert!(obj.contains_key("result"));
    for key in obj.keys() {
        assert!(
            ["status", "command", "result", "witness", "citation"].contains(&key.as_str()),
            "unexpected key {key}"
        );
    }
}

#[test]
fn bracket_of_the_product_potential() {
    let (v, code) = run(&[
        "bracket",
        "--n",
        "3",
        "--potential",
        "t1*t2*t3*t4",
        "--args",
        "t2",
        "--args",
        "t3",
        "--args",
        "t4",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "-t2*t3*t4");
}

#[test]
fn torus_bracket_from_the_command_line() {
    let (v, code) = run(&[
        "bracket", "--n", "3", "--q", "2", "--kappa", "1,0,0", "--args", "x1", "--args", "x2",
        "--args", "x3",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "2*x1^2*x2*x3");
}

#[test]
fn verify_axioms_passes_on_the_product_potential() {
    let (v, code) = run(&[
        "verify", "axioms", "--n", "3", "--potential", "t1*t2*t3*t4", "--samples", "5",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["fundamental_identity"]["failures"], 0);
}

#[test]
fn center_accepts_the_potential_and_rejects_a_generator() {
    let (v, code) = run(&[
        "center", "--n", "3", "--potential", "t1^4+t2^4+t3^4+t4^4", "--f",
        "t1^4+t2^4+t3^4+t4^4",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    let (v, code) = run(&["center", "--n", "3", "--potential", "t4", "--f", "t1"]);
    assert_schema(&v);
    assert_eq!(code, 1);
}

#[test]
fn singularity_reports_dimension_and_verdict() {
    let (v, code) = run(&["singularity", "--potential", "t1^4+t2^4+t3^4"]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 27);
    let (v, code) = run(&["singularity", "--potential", "5*t1*t2*t3"]);
    assert_schema(&v);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["dimension"], "infinite");
}

#[test]
fn valuation_subcommands() {
    let (v, code) = run(&[
        "valuation", "check", "--q", "2", "--n", "3", "--weights", "1,0,0", "--w", "0",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    let (v, code) = run(&[
        "valuation", "check", "--potential", "t4", "--n", "3", "--weights", "1,1,1,1", "--w",
        "0",
    ]);
    assert_schema(&v);
    assert_eq!(code, 1);
    let (v, code) = run(&[
        "valuation", "value", "--q", "1", "--n", "3", "--weights", "-1,0,0", "--f", "x1^2+x2",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"], -2);
    let (v, code) = run(&[
        "valuation", "gr", "--q", "2", "--n", "3", "--weights", "1,1,1", "--w", "0", "--args",
        "x1", "--args", "x2", "--args", "x3",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "2*x1*x2*x3");
}

#[test]
fn torus_subcommands() {
    let (v, code) = run(&["torus", "normalize", "--q", "5", "--kappa", "2,4,6"]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["kappa"], serde_json::json!([2, 0, 0]));
    assert!(v["witness"].is_array());

    let (_, code) = run(&["torus", "iso", "--q", "2", "--kappa", "0,0,0", "--q2", "-2", "--kappa2", "0,0,0"]);
    assert_eq!(code, 0);
    let (_, code) = run(&["torus", "iso", "--q", "2", "--kappa", "0,0,0", "--q2", "3", "--kappa2", "0,0,0"]);
    assert_eq!(code, 1);

    let (v, code) = run(&["torus", "embed", "--from-q", "6", "--to-q", "2"]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert!(v["witness"]["images"].is_array());

    let (v, code) = run(&["torus", "embed", "--from-k", "2", "--to-k", "3"]);
    assert_schema(&v);
    assert_eq!(code, 3);
    let (v, code) = run(&["torus", "embed", "--from-k", "3", "--to-k", "2"]);
    assert_schema(&v);
    assert_eq!(code, 1);
    assert_eq!(v["citation"], "Cor 4.9");
}

#[test]
fn cross_family_embeddings_through_the_cli() {
    let (v, code) = run(&["torus", "embed", "--from-q", "6", "--to-k", "2"]);
    assert_schema(&v);
    assert_eq!(code, 1);
    assert_eq!(v["citation"], "Cor 5.9(1)");
    let (v, code) = run(&["torus", "embed", "--from-k", "2", "--to-q", "6"]);
    assert_schema(&v);
    assert_eq!(code, 1);
    assert_eq!(v["citation"], "Lem 4.8(1)");
    let (_, code) = run(&["torus", "embed", "--from-k", "1", "--to-q", "6"]);
    assert_eq!(code, 3);
}

#[test]
fn gamma_and_depth_width() {
    let (v, code) = run(&["gamma", "--n", "2", "--d0", "3", "--xi", "1", "--w", "3"]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cap"], "ground-field");
    assert!(v["witness"]["weights"].is_array());

    let (v, code) = run(&["gamma", "--k", "4", "--n", "3", "--w", "2"]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cap"], "subalgebra-x1");

    let (v, code) = run(&["gamma", "--q", "2", "--n", "3", "--w", "1"]);
    assert_schema(&v);
    assert_eq!(code, 3);

    let (v, code) = run(&["depth-width", "--q", "2", "--n", "3"]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["depth"], 0);
    assert_eq!(v["result"]["width"], 1);

    let (v, code) = run(&["depth-width", "--n", "2", "--d0", "0", "--xi", "1"]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["depth"], 1);
}

#[test]
fn aut_and_groups() {
    let (v, code) = run(&["aut", "fermat", "--n", "3", "--d0", "3", "--xi", "0"]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], "24696");
    assert_eq!(v["result"]["semidirect"], true);

    let (v, code) = run(&[
        "aut", "verify", "--n", "3", "--d0", "2", "--sigma", "2,1,3,4", "--e", "0,0,0,0",
        "--modulus", "12",
    ]);
    assert_schema(&v);
    assert_eq!(code, 1);

    let (v, code) = run(&["groups", "enumerate", "--label", "g1", "--n", "3", "--d0", "2"]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 216);

    let (v, code) = run(&["groups", "enumerate", "--label", "g2", "--n", "3", "--d0", "2"]);
    assert_schema(&v);
    assert_eq!(code, 2);
}

#[test]
fn pde_subcommands() {
    let (v, code) = run(&["pde", "decide", "--a", "2*t1*t2*t3", "--b", "3*t1*t2*t3"]);
    assert_schema(&v);
    assert_eq!(code, 1);
    assert_eq!(v["citation"], "Cor 7.4(1)");

    let (v, code) = run(&["pde", "decide", "--a", "2*t1*t2*t3", "--b", "6*t1*t2*t3"]);
    assert_schema(&v);
    assert_eq!(code, 0);

    let (v, code) = run(&[
        "pde", "verify", "--a", "t1*t2*t3", "--b", "2*t1*t2*t3", "--y", "t1^2", "--y", "t2",
        "--y", "t3",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);

    let (v, code) = run(&[
        "pde", "compose", "--a", "t1*t2*t3", "--b", "2*t1*t2*t3", "--c", "4*t1*t2*t3", "--y",
        "t1^2", "--y", "t2", "--y", "t3", "--z", "t1^2", "--z", "t2", "--z", "t3",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["witness"][0], "t1^4");
}

#[test]
fn epsilon_morphism_scalar() {
    let (v, code) = run(&[
        "epsilon-morphism", "--n", "2", "--potential", "t1^4+t2^4+t3^4", "--images", "2*t1",
        "--images", "2*t2", "--images", "2*t3",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["e"], "2");
}

#[test]
fn descriptor_files_match_inline_flags() {
    let path = std::env::temp_dir().join("nambu-descriptor-test.json");
    std::fs::write(&path, r#"{ "n": 3, "potential": "t1*t2*t3*t4", "kind": "full" }"#)
        .expect("write descriptor");
    let (v, code) = run(&[
        "bracket",
        "--descriptor",
        path.to_str().unwrap(),
        "--args",
        "t2",
        "--args",
        "t3",
        "--args",
        "t4",
    ]);
    assert_schema(&v);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "-t2*t3*t4");
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_with_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_nambu"))
        .args(["bracket", "--n", "3"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_format_renders_lines() {
    let out = Command::new(env!("CARGO_BIN_EXE_nambu"))
        .args(["--format", "text", "singularity", "--potential", "t1^3+t2^3+t3^3"])
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("status: ok"), "{stdout}");
}
