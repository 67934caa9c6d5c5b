use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sturmcert::arith::rational::int;
use sturmcert::expansion::{linear_combine, pointwise_multiply};
use sturmcert::generators::{classical_degree1, ClassicalForm};
use sturmcert::{io, SiegelExpansion};
use tempfile::TempDir;

fn sturmcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturmcert")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn e4_cubed_minus_e6_squared(bound: u64) -> SiegelExpansion {
    let e4 = classical_degree1(ClassicalForm::E4, bound);
    let e6 = classical_degree1(ClassicalForm::E6, bound);
    let e4_3 = pointwise_multiply(&pointwise_multiply(&e4, &e4).unwrap(), &e4).unwrap();
    let e6_2 = pointwise_multiply(&e6, &e6).unwrap();
    linear_combine(&[(int(1), &e4_3), (int(-1), &e6_2)]).unwrap()
}

#[test]
fn bound_examples() {
    let out = sturmcert(&["bound", "--degree", "2", "--weight", "10", "--prime", "7"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["slope"], "10/1");
    assert_eq!(v["bound"], "1/1");
    assert_eq!(v["cutoff"], 1);
    assert_eq!(v["prime_class"], "p_ge_5");

    let v = stdout_json(&sturmcert(&["bound", "--degree", "3", "--weight", "0", "--prime", "5"]));
    assert_eq!(v["bound"], "0/1");
    assert_eq!(v["cutoff"], 0);

    let v = stdout_json(&sturmcert(&["bound", "--degree", "6", "--weight", "1", "--prime", "5", "--slope-only"]));
    assert_eq!(v["slope"], "405/128");
    assert!(v.get("bound").is_none());

    let v = stdout_json(&sturmcert(&["bound", "--degree", "2", "--weight", "12", "--prime", "3"]));
    assert_eq!(v["slope"], "9/1");
    assert_eq!(v["cutoff"], 1);
}

#[test]
fn bound_rejects_composite_prime() {
    let out = sturmcert(&["bound", "--degree", "2", "--weight", "10", "--prime", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["code"].is_string());
    assert!(err["message"].is_string());
}

#[test]
fn check_congruent_identity() {
    let dir = TempDir::new().unwrap();
    let lhs = write(&dir, "lhs.json", &io::siegel_to_string(&e4_cubed_minus_e6_squared(4)));
    let delta = classical_degree1(ClassicalForm::Delta, 4).scale(&int(1728));
    let rhs = write(&dir, "rhs.json", &io::siegel_to_string(&delta));
    let cert_path = dir.path().join("cert.json");
    let out = sturmcert(&["check", "--lhs", s(&lhs), "--rhs", s(&rhs), "--prime", "5", "--out", s(&cert_path)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert = io::certificate_from_str(&fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert.verdict.as_str(), "congruent");
}

#[test]
fn check_refutes_with_witness() {
    let dir = TempDir::new().unwrap();
    let delta = write(&dir, "delta.json", &io::siegel_to_string(&classical_degree1(ClassicalForm::Delta, 3)));
    let zero = write(&dir, "zero.json", &io::siegel_to_string(&SiegelExpansion::zero(1, 12, 3)));
    let out = sturmcert(&["check", "--lhs", s(&delta), "--rhs", s(&zero), "--prime", "11"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "not_congruent");
    assert_eq!(v["witness"], serde_json::json!([[2]]));
}

#[test]
fn check_truncation_insufficient() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &io::siegel_to_string(&SiegelExpansion::one(2, 0)));
    let text = fs::read_to_string(&f).unwrap().replace("\"weight\": 0", "\"weight\": 35");
    let f = write(&dir, "f.json", &text);
    let out = sturmcert(&["check", "--lhs", s(&f), "--rhs", s(&f), "--prime", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "TruncationInsufficient");
}

#[test]
fn integrality_of_delta() {
    let dir = TempDir::new().unwrap();
    let delta = write(&dir, "delta.json", &io::siegel_to_string(&classical_degree1(ClassicalForm::Delta, 3)));
    let out = sturmcert(&["integrality", "--in", s(&delta)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "integral");

    let half = classical_degree1(ClassicalForm::Delta, 3).scale(&sturmcert::arith::rational::rational(1, 2));
    let half = write(&dir, "half.json", &io::siegel_to_string(&half));
    let out = sturmcert(&["integrality", "--in", s(&half), "--prime", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn order_of_delta() {
    let dir = TempDir::new().unwrap();
    let delta = write(&dir, "delta.json", &io::siegel_to_string(&classical_degree1(ClassicalForm::Delta, 5)));
    let v = stdout_json(&sturmcert(&["order", "--in", s(&delta), "--prime", "5"]));
    assert_eq!(v["order"], "exact");
    assert_eq!(v["value"], 0);
    let e4 = write(&dir, "e4.json", &io::siegel_to_string(&classical_degree1(ClassicalForm::E4, 5)));
    let v = stdout_json(&sturmcert(&["order", "--in", s(&e4), "--prime", "5"]));
    assert_eq!(v["order"], "not_vanishing");
}

#[test]
fn theta_e8() {
    let out = sturmcert(&["theta", "--lattice", "E8", "--degree", "1", "--diag-bound", "2"]);
    assert!(out.status.success());
    let f: SiegelExpansion = io::siegel_from_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let values: Vec<String> = f.iter().map(|(_, c)| c.to_string()).collect();
    assert_eq!(values, ["1", "240", "2160"]);
}

#[test]
fn theta_from_lattice_dir() {
    let dir = TempDir::new().unwrap();
    let fixture = sturmcert::EvenLattice::e8().to_json();
    write(&dir, "mine.json", &fixture);
    let from_dir = sturmcert(&[
        "theta", "--lattice", "mine", "--lattice-dir", s(dir.path()), "--degree", "1", "--diag-bound", "2",
    ]);
    let from_catalog = sturmcert(&["theta", "--lattice", "E8", "--degree", "1", "--diag-bound", "2"]);
    assert!(from_dir.status.success());
    assert_eq!(from_dir.stdout, from_catalog.stdout);
}

#[test]
fn restrict_n1_matches_z0() {
    let dir = TempDir::new().unwrap();
    let theta = dir.path().join("theta.json");
    let fj = dir.path().join("fj.json");
    let restricted = dir.path().join("r.json");
    assert!(sturmcert(&["theta", "--lattice", "E8", "--degree", "2", "--diag-bound", "2", "--out", s(&theta)])
        .status
        .success());
    assert!(sturmcert(&["fj", "--in", s(&theta), "--index", "1", "--out", s(&fj)]).status.success());
    let out = sturmcert(&["restrict", "--in", s(&fj), "--N", "1", "--alpha", "0", "--beta", "0", "--out", s(&restricted)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let f: SiegelExpansion = io::siegel_from_str(&fs::read_to_string(&theta).unwrap()).unwrap();
    let r: SiegelExpansion<sturmcert::CyclotomicInteger> =
        io::siegel_from_str(&fs::read_to_string(&restricted).unwrap()).unwrap();
    let mut z0 = std::collections::BTreeMap::<i64, i128>::new();
    for (t, c) in f.iter() {
        if t.get(1, 1) == 2 && t.get(0, 0) <= 2 * r.truncation() as i64 {
            *z0.entry(t.get(0, 0)).or_default() += c.to_string().parse::<i128>().unwrap();
        }
    }
    let got: Vec<(i64, String)> = r.iter().map(|(t, c)| (t.get(0, 0) / 2, c.as_integer().unwrap().to_string())).collect();
    let expected: Vec<(i64, String)> =
        z0.into_iter().filter(|(_, v)| *v != 0).map(|(k, v)| (k, v.to_string())).collect();
    assert_eq!(got, expected);
}

#[test]
fn restrict_rejects_wrong_denominator() {
    let dir = TempDir::new().unwrap();
    let theta = dir.path().join("theta.json");
    let fj = dir.path().join("fj.json");
    sturmcert(&["theta", "--lattice", "E8", "--degree", "2", "--diag-bound", "1", "--out", s(&theta)]);
    sturmcert(&["fj", "--in", s(&theta), "--index", "1", "--out", s(&fj)]);
    let out = sturmcert(&["restrict", "--in", s(&fj), "--N", "3", "--alpha", "1/2", "--beta", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let ok = sturmcert(&["restrict", "--in", s(&fj), "--N", "3", "--alpha", "-1/3", "--beta", "2/3"]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
}

#[test]
fn det_a_n3() {
    let out = sturmcert(&["det-a", "--N", "3", "--prime", "7"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["norm"], "3");
    assert_eq!(v["residues"][0]["prime"], 7);
    assert_eq!(v["residues"][0]["nonzero"], true);
}

#[test]
fn error_json_has_code() {
    let out = sturmcert(&["theta", "--lattice", "no-such-lattice", "--degree", "1", "--diag-bound", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "InvalidLattice");

    let out = sturmcert(&["bound", "--degree", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "InvalidArgument");

    let out = sturmcert(&["order", "--in", "/nonexistent/file.json", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(serde_json::from_slice::<Value>(&out.stderr).unwrap()["code"].is_string());
}

#[test]
fn output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let theta = dir.path().join(format!("theta{i}.json"));
            let fj = dir.path().join(format!("fj{i}.json"));
            sturmcert(&["theta", "--lattice", "E8", "--degree", "2", "--diag-bound", "2", "--out", s(&theta)]);
            sturmcert(&["fj", "--in", s(&theta), "--index", "1", "--out", s(&fj)]);
            let mut bytes = fs::read(&theta).unwrap();
            bytes.extend(fs::read(&fj).unwrap());
            bytes.extend(sturmcert(&["restrict", "--in", s(&fj), "--N", "3", "--alpha", "1/3", "--beta", "2/3"]).stdout);
            bytes
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}
