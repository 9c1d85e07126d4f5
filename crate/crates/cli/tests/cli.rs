use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn clm(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_clm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn clm");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(bytes));
    })
}

#[test]
fn identity_for_u3_k1() {
    let out = clm(&["identity", "--u", "3", "--k", "1"], None);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["lhs"], serde_json::json!(6));
    assert_eq!(v["rhs"], serde_json::json!(6));
    assert_eq!(v["equal"], Value::Bool(true));
}

#[test]
fn identity_sweep_as_csv() {
    let out = clm(
        &[
            "identity", "--max-u", "3", "--max-k", "2", "--format", "text",
        ],
        None,
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "u,k,lhs,rhs,equal");
    assert_eq!(lines.len(), 1 + 6);
    assert!(lines.contains(&"3,1,6,6,true"));
}

#[test]
fn classify_graph_of_identity() {
    let out = clm(
        &["classify", "--sigma", "1", &data("graph_identity_2x2.json")],
        None,
    );
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["status"], "stable");
    assert_eq!(v["semistable_interval"], serde_json::json!([0, 2]));
}

#[test]
fn classify_reads_stdin_and_fractional_sigma() {
    let input = std::fs::read(data("graph_identity_2x2.json")).unwrap();
    let out = clm(&["classify", "--sigma", "1/2"], Some(&input));
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["sigma"], "1/2");
    assert_eq!(v["status"], "stable");
}

#[test]
fn invalid_collineation_is_rejected_with_violations() {
    let out = clm(&["chain-from-cc", &data("invalid_cc.json")], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = json(&out.stderr);
    assert_eq!(err["error"], "invalid-collineation");
    let clauses: Vec<&str> = err["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["clause"].as_str().unwrap())
        .collect();
    assert!(clauses.contains(&"nonzero-stage"));
}

#[test]
fn malformed_json_is_a_parse_error() {
    let out = clm(&["classify", "--sigma", "1"], Some(b"{not json"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stderr)["error"], "parse");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(clm(&["no-such-command"], None).status.code(), Some(2));
    assert_eq!(
        clm(&["classify", "--sigma", "x/y"], Some(b""))
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        clm(&["identity", "--u", "0", "--k", "1"], None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn collineate_then_chain_then_validate() {
    let cc = clm(&["collineate", &data("diag_family.json")], None);
    assert!(cc.status.success());
    let v = json(&cc.stdout);
    let ranks: Vec<u64> = v["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["rank"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, vec![1, 1]);

    let chain = clm(&["chain-from-cc"], Some(&cc.stdout));
    assert!(chain.status.success());
    let report = clm(&["chain-validate"], Some(&chain.stdout));
    assert!(report.status.success());
    let r = json(&report.stdout);
    assert_eq!(r["violations"], serde_json::json!([]));
    assert_eq!(r["total_degree"], serde_json::json!(2));
    assert_eq!(r["shape"], serde_json::json!([[1, 0], [0, 1]]));

    let back = clm(&["cc-from-chain"], Some(&chain.stdout));
    assert!(back.status.success());
    assert_eq!(json(&back.stdout), v);
}

#[test]
fn chain_validate_reports_broken_chains() {
    let chain = br#"{
      "ctx": {"dim_v": 1, "dim_w": 1, "u": 1},
      "components": [
        {"ambient": 2, "basis": {"rows": 1, "cols": 2, "entries": [["1", "0"]]}, "split": {"dim_v": 1, "dim_w": 1}}
      ]
    }"#;
    let out = clm(&["chain-validate"], Some(chain));
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out.stdout);
    assert!(
        !r["violations"].as_array().unwrap().is_empty()
            || !r["structural"].as_array().unwrap().is_empty()
    );
}

#[test]
fn halphen_output_has_staircase_shape() {
    let input = br#"{"matrix": {"rows": 3, "cols": 3, "entries": [["2","1","1"],["1","3","1"],["1","1","4"]]}}"#;
    let out = clm(&["halphen"], Some(input));
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["is_halphen"], Value::Bool(true));
    assert_eq!(v["ranks"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["shape"], serde_json::json!([[2, 0], [1, 1], [0, 2]]));
}

#[test]
fn dims_for_two_by_two() {
    let out = clm(&["dims", "--dim-v", "2", "--dim-w", "2", "--u", "2"], None);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["dim_quotient"], serde_json::json!(3));
    let text = clm(
        &[
            "dims", "--dim-v", "2", "--dim-w", "2", "--u", "2", "--format", "text",
        ],
        None,
    );
    assert!(String::from_utf8(text.stdout).unwrap().contains("Sec_k"));
}

#[test]
fn skew_dims_need_equal_dimensions() {
    let out = clm(
        &[
            "dims", "--dim-v", "3", "--dim-w", "2", "--u", "2", "--flavor", "skew",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out.stderr)["error"].is_string());
}

#[test]
fn isotropy_of_v() {
    let input = br#"{"ambient": 4, "basis": {"rows": 2, "cols": 4, "entries": [["1","0","0","0"],["0","1","0","0"]]}, "split": {"dim_v": 2, "dim_w": 2}}"#;
    let out = clm(&["isotropy", "--kind", "symmetric"], Some(input));
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["isotropic"], Value::Bool(true));
    assert_eq!(v["v_intersection_dim"], serde_json::json!(2));
}

#[test]
fn weights_of_a_generic_plane() {
    let input = br#"{"ambient": 4, "basis": {"rows": 2, "cols": 4, "entries": [["1","0","1","2"],["0","1","3","5"]]}, "split": {"dim_v": 2, "dim_w": 2}}"#;
    let out = clm(&["weights"], Some(input));
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["orbit_degree"], serde_json::json!(2));
    assert_eq!(v["weights"], serde_json::json!([-2, 0, 2]));
}

#[test]
fn snake_oil_series() {
    let out = clm(&["snake-oil", "--j", "2", "--k", "1", "--order", "8"], None);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["snake_oil"]["equal"], Value::Bool(true));
    assert_eq!(
        v["snake_oil"]["lhs"],
        serde_json::json!([0, 0, 1, 3, 6, 10, 15, 21, 28])
    );
    assert_eq!(
        v["generating_function"]["target"],
        serde_json::json!([1, 3, 6, 10, 15, 21, 28, 36, 45])
    );
}

#[test]
fn classify_random_is_seeded() {
    let a = clm(&["classify", "--random", "5", "--seed", "7"], None);
    let b = clm(&["classify", "--random", "5", "--seed", "7"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
