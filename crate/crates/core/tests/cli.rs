use std::path::PathBuf;
use std::process::{Command, Output};

use fundpoly::cli::io::{poly_from_doc, CoefficientList, FactoredDocument, WitnessDocument};
use fundpoly::explorer::verify_witness;
use fundpoly::scalar::qi;
use fundpoly::{interpolation, Rational};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/golden");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn fundpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fundpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn coefficients(v: &Value) -> CoefficientList {
    serde_json::from_value(v["coefficients"].clone()).unwrap()
}

#[test]
fn analyze_reports_independence_and_witness() {
    let out = fundpoly(&["analyze", &fixture("triangle.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["independent"], true);
    assert_eq!(v["poised"], true);
    assert!(v["dependence"].is_null());

    let out = fundpoly(&["analyze", &fixture("collinear_triple.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["independent"], false);
    assert_eq!(v["dependence"]["kind"], "collinear-overload");
    assert_eq!(v["max_collinear"]["count"], 3);

    let v = json_of(&fundpoly(&["analyze", &fixture("grid3.json")]));
    assert_eq!(v["dependence"]["kind"], "cubic-intersection");
}

#[test]
fn malformed_inputs_exit_two() {
    for name in ["malformed.json", "duplicate.json", "bad_coord.json", "missing.json"] {
        let out = fundpoly(&["analyze", &fixture(name)]);
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
    assert_eq!(fundpoly(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(fundpoly(&["--help"]).status.code(), Some(0));
    assert_eq!(fundpoly(&["--version"]).status.code(), Some(0));
}

#[test]
fn fundamental_triangle_lines() {
    let out = fundpoly(&["fundamental", &fixture("triangle.json"), "--node", "0", "--mode", "lines"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verified"], true);
    let f: FactoredDocument = serde_json::from_value(v["factored"].clone()).unwrap();
    let f = f.to_factored().unwrap();
    assert_eq!(f.to_string(), "-1·(x + y - 1)");
    assert_eq!(poly_from_doc(1, &coefficients(&v)).unwrap(), f.expand(1).unwrap());
    assert_eq!(poly_from_doc(1, &coefficients(&v)).unwrap().to_string(), "1 - x - y");
}

#[test]
fn fundamental_circle_lines_conics() {
    let out = fundpoly(&[
        "fundamental",
        &fixture("circle_origin.json"),
        "--node",
        "0",
        "--mode",
        "lines-conics",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let f: FactoredDocument = serde_json::from_value(v["factored"].clone()).unwrap();
    assert_eq!(f.to_factored().unwrap().to_string(), "-1·(x^2 + y^2 - 1)");
    assert_eq!(poly_from_doc(2, &coefficients(&v)).unwrap().to_string(), "1 - x^2 - y^2");
}

#[test]
fn fundamental_negative_and_invalid() {
    let out = fundpoly(&["fundamental", &fixture("collinear_triple.json"), "--node", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["reason"].as_str().unwrap().contains("n+2 collinear"));

    let out = fundpoly(&["fundamental", &fixture("triangle.json"), "--node", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // six nodes exceed the 2n+1 bound of lines mode at n = 2
    let out = fundpoly(&["fundamental", &fixture("circle_origin.json"), "--node", "0", "--mode", "lines"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fundamental_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sketch.svg");
    let out = fundpoly(&[
        "fundamental",
        &fixture("triangle.json"),
        "--node",
        "1",
        "--mode",
        "lines",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn interpolate_round_trip() {
    let out = fundpoly(&["interpolate", &fixture("triangle.json"), &fixture("triangle_values.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let p = poly_from_doc(1, &coefficients(&v)).unwrap();
    assert_eq!(p.to_string(), "1 + x + 2*y");
    let x = fundpoly::cli::io::NodeSetDocument::parse(&std::fs::read_to_string(fixture("triangle.json")).unwrap())
        .unwrap()
        .1;
    let c: Vec<Rational> = [1, 2, 3].map(qi).to_vec();
    assert!(interpolation::verify_interpolant(&p, &x, &c));

    let v = json_of(&fundpoly(&["interpolate", &fixture("triangle.json"), &fixture("zero_values.json")]));
    assert!(coefficients(&v).is_empty());

    let out = fundpoly(&["interpolate", &fixture("collinear_triple.json"), &fixture("triangle_values.json")]);
    assert_eq!(out.status.code(), Some(1));
    let out = fundpoly(&["interpolate", &fixture("triangle.json"), &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_and_verify_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let out = fundpoly(&["search", "--mode", "lines", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    let w = WitnessDocument::parse(&written).unwrap();
    assert!(verify_witness(&w));
    assert_eq!(serde_json::to_string_pretty(&WitnessDocument::from_witness(&w)).unwrap() + "\n", written);
    assert_eq!(fundpoly(&["verify-witness", path.to_str().unwrap()]).status.code(), Some(0));

    let mut doc: WitnessDocument = serde_json::from_str(&written).unwrap();
    doc.node_index = 1;
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(fundpoly(&["verify-witness", path.to_str().unwrap()]).status.code(), Some(1));

    assert_eq!(fundpoly(&["search", "--mode", "lines", "--n", "1"]).status.code(), Some(2));
    assert_eq!(fundpoly(&["search", "--mode", "lines-conics", "--n", "2"]).status.code(), Some(2));
    let out = fundpoly(&["search", "--mode", "lines", "--n", "2", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["status"], "none within budget");
}

#[test]
fn golden_witnesses_verify() {
    for name in ["lines_n2.json", "lines_conics_n3.json"] {
        let out = fundpoly(&["verify-witness", &golden(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn text_format() {
    let out = fundpoly(&["analyze", &fixture("triangle.json"), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1-independent (poised)"));
}
