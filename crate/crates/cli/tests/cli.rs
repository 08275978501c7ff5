//! End-to-end checks of the binary: exit codes, determinism of JSON output,
//! and the worked condensation example.

use std::process::Command;

fn skelcat(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_skelcat"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).to_string(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn check_ring_pass_and_fail_codes() {
    let (_, code) = skelcat(&["check-ring", "--catalog", "RepS3"]);
    assert_eq!(code, 0);
    let (_, code) = skelcat(&["check-ring", "--catalog", "NoSuchRing"]);
    assert_eq!(code, 2);
    // a broken ring from a file exits 1
    let dir = std::env::temp_dir().join("skelcat-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(
        &path,
        r#"{"labels":["1","g"],"unit":0,"dual":[0,1],"N":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#,
    )
    .unwrap();
    let (_, code) = skelcat(&["check-ring", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn condense_rep_s3_matches_worked_example() {
    let (out, code) = skelcat(&["condense", "--catalog", "RepS3", "--algebra", "A+C"]);
    assert_eq!(code, 0);
    assert!(out.contains("condensed rank: 2"));
    assert!(out.contains("E(c0) = A+C"));
    assert!(out.contains("E(c1) = B+C"));
    assert!(out.contains("⊗ -"));
}

#[test]
fn verify_hopf_reports_antipode_order() {
    let (out, code) = skelcat(&["verify-hopf", "--builtin", "2+tau"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS"));
    assert!(out.contains("antipode order: Some(10)"));
}

#[test]
fn json_reports_are_byte_identical_for_fixed_seed() {
    let args = ["check-pentagon", "--builtin", "DZn(2)", "--json", "--seed", "9"];
    let (a, code_a) = skelcat(&args);
    let (b, code_b) = skelcat(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(a, b);
    assert!(a.contains("\"schema_version\": 1"));
}

#[test]
fn bimodule_table_renders() {
    let (out, code) = skelcat(&["bimodule-product", "--table", "--dz2"]);
    assert_eq!(code, 0);
    assert!(out.contains("2M1,1"));
    assert!(out.contains("multiplicity 1 on (Z2x0, Z2x0)"));
}

#[test]
fn su2k_and_simple_check() {
    let (out, code) = skelcat(&["su2k", "--k", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("simple: true"));
    let (out, code) = skelcat(&["simple-check", "--class", "omega_p_k(3,2,1)"]);
    assert_eq!(code, 0);
    assert!(out.contains("simple: false"));
}
