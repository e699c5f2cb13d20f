use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_polylin")).args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::String(text));
    (out.status.code().unwrap(), value)
}

fn write(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("polylin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const ID_2D1: &str = r#"{"source":"2D1","target":"2D1","matrix":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#;

#[test]
fn square_has_four_columns() {
    let sq = write("sq.json", r#"{"name":"SQ","vertices":[[0,0],[1,0],[0,1],[1,1]]}"#);
    let (code, out) = run(&["poly", "columns", "--in", &sq]);
    assert_eq!(code, 0);
    assert_eq!(out["count"], 4);
    assert_eq!(out["columns"].as_array().unwrap().len(), 4);
}

#[test]
fn tangent_dimension_of_t2() {
    let t2 = write("t2.json", r#"{"vertices":[[1,0],[0,1],[-1,-1]]}"#);
    let (code, out) = run(&["hom", "tangent-dim", "--in", &t2]);
    assert_eq!(code, 0);
    assert_eq!(out, json!({"dim": 3, "predicted": 3}));
}

#[test]
fn decompose_identity_on_double_segment() {
    let f = write("id2.json", ID_2D1);
    let (code, out) = run(&["tame", "decompose", "--hom", &f]);
    assert_eq!(code, 0);
    assert_eq!(out["psi"], "1");
    assert_eq!(out["eta"], json!(["1", "Y"]));
}

#[test]
fn decomposition_recipe_evaluates_back() {
    let f = r#"{"source":"2D1","target":"2D1","matrix":[["1","0","0"],["2","1","0"],["1","1","1"]]}"#;
    let (code, recipe) = run(&["tame", "decompose", "--hom", f, "--recipe"]);
    assert_eq!(code, 0);
    let (code, out) = run(&["tame", "recipe", "--recipe", &recipe.to_string()]);
    assert_eq!(code, 0);
    assert_eq!(out["matrix"], json!([["1", "0", "0"], ["2", "1", "0"], ["1", "1", "1"]]));
}

#[test]
fn poly_queries() {
    assert_eq!(run(&["poly", "points", "--in", "T1"]).1["count"], 4);
    assert_eq!(run(&["poly", "facets", "--in", "T2"]).1["count"], 3);
    assert_eq!(run(&["poly", "symmetries", "--in", "SQ"]).1["count"], 8);
    assert_eq!(run(&["poly", "hilbert", "--in", "SQ", "--degree", "3"]).1["value"], 16);
    assert_eq!(run(&["poly", "dilate", "--in", "T2", "--factor", "2"]).1["lattice_points"].as_array().unwrap().len(), 10);
    assert_eq!(run(&["poly", "pyramid", "--in", "T1"]).1["pyramids"][0]["apex"], json!([0, 1]));
    let (_, rels) = run(&["poly", "relations", "--in", "T2", "--degree", "2", "--check-up-to", "3"]);
    assert_eq!(rels["count"], 0);
    assert_eq!(rels["generated"], false);
    assert_eq!(run(&["poly", "info", "--in", "SQ"]).1["generation_degree"], 2);
}

#[test]
fn hom_queries() {
    let (_, e) = run(&["auto", "elementary", "--in", "SQ", "--column", "0,-1", "--lambda", "1"]);
    let e = e.to_string();
    assert_eq!(run(&["hom", "check", "--hom", &e]).1["homomorphism"], true);
    assert_eq!(run(&["hom", "rank", "--hom", &e]).1["rank"], 4);
    assert_eq!(run(&["hom", "idempotent", "--hom", &e]).1["idempotent"], false);
    let (_, inv) = run(&["auto", "elementary", "--in", "SQ", "--column", "0,-1", "--lambda", "-1"]);
    let (_, id) = run(&["hom", "compose", "--outer", &inv.to_string(), "--inner", &e]);
    assert_eq!(id["matrix"][1], json!(["0", "1", "0", "0"]));
    assert_eq!(run(&["hom", "equations", "--source", "SQ", "--target", "D1"]).1["count"], 3);
    let swap = r#"{"source":"SQ","target":"SQ","matrix":[["0","0","0","1"],["0","1","0","0"],["0","0","1","0"],["1","0","0","0"]]}"#;
    assert_eq!(run(&["hom", "check", "--hom", swap]).1["homomorphism"], true);
}

#[test]
fn automorphisms() {
    let (code, t) = run(&["auto", "toric", "--in", "D1", "--xi", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(t["matrix"], json!([["3", "0"], ["0", "6"]]));
    let spec = r#"{"toric":["1","1","2"],"blocks":[{"facet":2,"lambdas":[{"v":[0,-1],"lambda":"1"}]}]}"#;
    let (code, _) = run(&["auto", "normal-form", "--in", "SQ", "--spec", spec]);
    assert_eq!(code, 0);
}

#[test]
fn tame_constructors() {
    let (_, r) = run(&["tame", "retract", "--in", "SQ", "--face", r#"{"vertices":[[0,0],[1,0]]}"#]);
    assert_eq!(r["matrix"], json!([["1", "0", "0", "0"], ["0", "0", "1", "0"]]));
    let (_, fibs) = run(&["tame", "fibrations", "--in", "SQ"]);
    assert!(fibs["count"].as_u64().unwrap() >= 2);
    let fib = r#"{"w":[[0,1]],"H_point":[0,0],"H_basis":[[1,0]]}"#;
    let (_, e) = run(&["tame", "fib-retract", "--in", "D1x2D1", "--fibration", fib, "--idempotent"]);
    assert_eq!(e["idempotent"], true);
    let f = r#"{"source":"D1","target":"2D1","matrix":[["1","0"],["0","1"],["0","0"]]}"#;
    let (_, star) = run(&["tame", "star", "--f", f, "--g", f]);
    assert_eq!(star["matrix"], json!([["1", "0"], ["0", "0"], ["0", "1"]]));
    let (_, b) = run(&["tame", "blowup", "--hom", ID_2D1, "--c", "2"]);
    assert_eq!(b["source"]["vertices"], json!([[0], [4]]));
    let (_, x) = run(&["tame", "extend", "--in", r#"{"vertices":[[0]]}"#, "--apex", "0", "--target", "2D1",
        "--image", r#"[{"exponents":[1],"coeff":"2"}]"#]);
    assert_eq!(x["matrix"], json!([["0"], ["2"], ["0"]]));
    let (_, c) = run(&["tame", "change", "--hom", ID_2D1, "--change", r#"{"source":"D1"}"#]);
    assert_eq!(c["matrix"], json!([["1", "0"], ["0", "1"], ["0", "0"]]));
    let alpha = r#"[{"barycentric":[2,0],"value":[3,1]},{"barycentric":[0,2],"value":[1,5]}]"#;
    let (_, a) = run(&["tame", "factor-affine", "--c", "2", "--n", "1", "--alpha", alpha]);
    assert_eq!(a, json!({"v": [1, 1], "beta": [[1, 0], [0, 2]]}));
}

#[test]
fn prime_field_session() {
    let (code, t) = run(&["--field", "Fp", "-p", "5", "auto", "toric", "--in", "D1", "--xi", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(t["matrix"], json!([["3", "0"], ["0", "1"]]));
    assert_eq!(t["field"], "F5");
}

#[test]
fn error_classes() {
    let (code, out) = run(&["tame", "decompose", "--hom", r#"{"source":"2D1","target":"2D1","matrix":[["1","0","0"],["0","0","0"],["0","0","1"]]}"#]);
    assert_eq!((code, out["error"].as_str()), (2, Some("ZeroGeneratorImage")));
    let midpoint = r#"[{"barycentric":[2,0],"value":[1,0]},{"barycentric":[0,2],"value":[0,1]}]"#;
    let (code, out) = run(&["tame", "factor-affine", "--c", "2", "--n", "1", "--alpha", midpoint]);
    assert_eq!((code, out["error"].as_str()), (2, Some("NotIntegralAffine")));
    let f5 = r#"{"field":"F5","source":"D1","target":"D1","matrix":[["1","0"],["0","1"]]}"#;
    let (code, out) = run(&["hom", "check", "--hom", f5]);
    assert_eq!((code, out["error"].as_str()), (1, Some("FieldMismatch")));
    let (code, out) = run(&["poly", "info", "--in", "{\"vertices\": "]);
    assert_eq!((code, out["error"].as_str()), (1, Some("MalformedJson")));
    let (code, out) = run(&["poly", "frobnicate"]);
    assert_eq!((code, out["error"].as_str()), (1, Some("UsageError")));
    let bad = r#"{"op":"homothetic_blowup","args":{"c":2},"children":[{"op":"minkowski_star"}]}"#;
    let (code, out) = run(&["tame", "recipe", "--recipe", bad]);
    assert_eq!(code, 2);
    assert_eq!(out["path"], "/homothetic_blowup/0:minkowski_star");
}

#[test]
fn registry_names_resolve() {
    let reg = write("reg.json", r#"[{"name":"Seg3","vertices":[[0],[3]]}]"#);
    let (code, out) = run(&["--load", &reg, "poly", "points", "--in", "Seg3"]);
    assert_eq!(code, 0);
    assert_eq!(out["count"], 4);
    let f = r#"{"source":"Seg3","target":"Seg3","matrix":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}"#;
    assert_eq!(run(&["--load", &reg, "hom", "check", "--hom", f]).1["homomorphism"], true);
    let dup = write("dup.json", r#"[{"name":"A","vertices":[[0]]},{"name":"A","vertices":[[1]]}]"#);
    assert_eq!(run(&["--load", &dup, "poly", "points", "--in", "A"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["poly", "symmetries", "--in", "T1"]);
    let b = run(&["poly", "symmetries", "--in", "T1"]);
    assert_eq!(a, b);
}
