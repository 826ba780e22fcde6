use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

const S3: &str = "csp-spec 1\nn 4\nell 2\nimage g1 (1 2)\nimage g2 (2 3)\nsamples 2000\n";
const KLEIN: &str = "csp-spec 1\nn 4\nell 2\nimage g1 (1 2)(3 4)\nimage g2 (1 3)(2 4)\n";

fn csp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_csp")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn spec_file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn witness_then_verify() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "s3.spec", S3);
    let cert = dir.path().join("s3.cert");
    assert_eq!(csp(&["witness", s(&spec), "-o", s(&cert)]).0, 0);
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.contains("\nstatus VALID\n"));
    assert_eq!(csp(&["verify", s(&cert)]).0, 0);

    let tampered = dir.path().join("tampered.cert");
    fs::write(&tampered, text.replacen("p0-order 12", "p0-order 13", 1)).unwrap();
    assert_ne!(csp(&["verify", s(&tampered)]).0, 0);
}

#[test]
fn same_seed_same_bytes() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "s3.spec", S3);
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    csp(&["witness", s(&spec), "-o", s(&a), "--seed", "7"]);
    csp(&["witness", s(&spec), "-o", s(&b), "--seed", "7"]);
    csp(&["witness", s(&spec), "-o", s(&c), "--seed", "8"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let n3 = spec_file(&dir, "n3.spec", "csp-spec 1\nn 3\nell 2\nimage g1 (1 2)\n");
    assert_eq!(csp(&["witness", s(&n3)]).0, 2);
    let missing = dir.path().join("missing.spec");
    assert_eq!(csp(&["witness", s(&missing)]).0, 2);
    let s3 = spec_file(&dir, "s3.spec", S3);
    assert_eq!(csp(&["witness", s(&s3), "--ell", "4"]).0, 2);
    assert_eq!(csp(&["witness", s(&s3), "--cap", "5"]).0, 3);
    let klein = spec_file(&dir, "klein.spec", KLEIN);
    assert_eq!(csp(&["witness", s(&klein), "--cap", "10"]).0, 3);
}

#[test]
fn a_center_gives_an_invalid_certificate() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "p.spec", "csp-spec 1\nn 4\nell 2\nimage g1 (1 2)(4 5)\nimage g2 (2 3)\nsamples 500\n");
    let cert = dir.path().join("p.cert");
    assert_eq!(csp(&["witness", s(&spec), "-o", s(&cert), "--direct"]).0, 4);
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.contains("status INVALID p-centerless"));
    assert_eq!(csp(&["verify", s(&cert)]).0, 4);
}

#[test]
fn birman_and_json() {
    let dir = TempDir::new().unwrap();
    let klein = spec_file(&dir, "klein.spec", KLEIN);
    let (code, out) = csp(&["birman", s(&klein), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 2);
}

#[test]
fn intermediate_dumps() {
    let dir = TempDir::new().unwrap();
    let spec = spec_file(&dir, "s3.spec", S3);
    let dump = dir.path().join("dump");
    assert_eq!(csp(&["witness", s(&spec), "--emit-intermediate", s(&dump)]).0, 0);
    for f in ["orbit.txt", "q.txt", "p0.txt"] {
        assert!(dump.join(f).exists(), "{f}");
    }
    let (code, _) = csp(&["centerless", s(&spec), "--emit-intermediate", s(&dump)]);
    assert_eq!(code, 0);
    assert!(dump.join("r.txt").exists() && dump.join("s.txt").exists());
}
