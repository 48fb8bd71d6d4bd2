use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

use linsofic_core::almosthom::io::{read_hom, read_json, write_hom, write_json};
use linsofic_core::almosthom::{FiniteGroup, LengthMode};
use linsofic_core::exactfield::{finite_field, Field};
use linsofic_core::matspace::{matrix_to_json, perm_matrix, Permutation};
use linsofic_core::verify::gen::regular_rep;

fn linsofic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linsofic")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn schedule_prints_the_stage_count() {
    let o = linsofic(&["schedule", "--delta", "1/4", "--eps", "1/64"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["stages"], json!(2));
    let o = linsofic(&["schedule", "--delta", "1/2", "--eps", "1/64"]);
    assert_eq!(stdout_json(&o)["stages"], json!(0));
}

#[test]
fn verify_writes_a_repeatable_report() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let args = ["verify", "--suite", "prop-kron-rank", "--seed", "11", "--no-timing", "--out", p(&out)];
    let o = linsofic(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let first = fs::read_to_string(&out).unwrap();
    let report: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(report["pass"], json!(true));
    assert_eq!(report["suites"][0]["id"], json!("prop-kron-rank"));
    assert!(report["suites"][0].get("wall_ms").is_none());
    assert_eq!(code(&linsofic(&args)), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), first);
}

#[test]
fn verify_reads_a_config_and_flags_override_it() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.json");
    write_json(&cfg, &json!({"suites": ["prop-iota-bounds"], "seed": 3, "count": 10, "fields": ["F_2", "Q"]})).unwrap();
    let o = linsofic(&["verify", "--config", p(&cfg), "--seed", "4"]);
    assert_eq!(code(&o), 0);
    let report = stdout_json(&o);
    assert_eq!(report["seed"], json!(4));
    assert_eq!(report["suites"][0]["instances"], json!(20));
    assert_eq!(report["suites"][0]["fields"], json!(["F_2", "Q"]));
}

#[test]
fn bad_verify_input_exits_with_two() {
    assert_eq!(code(&linsofic(&["verify", "--suite", "prop-iota-bounds"])), 2);
    assert_eq!(code(&linsofic(&["verify", "--suite", "no-such-suite", "--seed", "1"])), 2);
    assert_eq!(code(&linsofic(&["verify"])), 2);
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.json");
    write_json(&cfg, &json!({"suites": ["prop-iota-bounds"], "seed": 1, "colour": "red"})).unwrap();
    assert_eq!(code(&linsofic(&["verify", "--config", p(&cfg)])), 2);
}

#[test]
fn report_of_a_cycle() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("cycle.json");
    let cycle = perm_matrix(&Field::rationals(), &Permutation::new(vec![1, 2, 3, 4, 0]).unwrap());
    write_json(&path, &matrix_to_json(&cycle)).unwrap();
    let o = linsofic(&["report", p(&path)]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["kind"], json!("length"));
    assert_eq!(v["report"]["len_rank"], json!({"num": 4, "den": 5}));
    assert_eq!(v["report"]["iota1"], json!({"num": 1, "den": 5}));
}

fn s3_regular(dir: &Path, field: &Field) -> std::path::PathBuf {
    let path = dir.join("s3.json");
    write_hom(&path, &regular_rep(&FiniteGroup::symmetric(3), field, 0, LengthMode::Jordan).unwrap()).unwrap();
    path
}

#[test]
fn amplify_and_convert_write_homs_and_traces() {
    let dir = TempDir::new().unwrap();
    let hom = s3_regular(dir.path(), &Field::prime(5).unwrap());
    let amp = dir.path().join("amp.json");
    let o = linsofic(&["amplify", p(&hom), "--stages", "1", "--out", p(&amp)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_hom(&amp).unwrap().dim, 36);
    assert!(read_json(&dir.path().join("amp.trace.json")).is_ok());

    let rank = dir.path().join("rank.json");
    let o = linsofic(&["convert", p(&hom), "--to", "rank", "--eps", "1/8", "--out", p(&rank)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_hom(&rank).unwrap().mode, LengthMode::Rank);

    let o = linsofic(&["report", p(&rank)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["kind"], json!("quality"));
}

#[test]
fn amplify_needs_a_stage_count_or_a_target() {
    let dir = TempDir::new().unwrap();
    let hom = s3_regular(dir.path(), &Field::prime(3).unwrap());
    let out = dir.path().join("out.json");
    assert_eq!(code(&linsofic(&["amplify", p(&hom), "--delta", "1/4", "--out", p(&out)])), 2);
    assert!(!out.exists());
}

#[test]
fn restrict_scales_the_dimension_by_the_degree() {
    let dir = TempDir::new().unwrap();
    let hom = s3_regular(dir.path(), &finite_field(2, 2).unwrap());
    let out = dir.path().join("restricted.json");
    let o = linsofic(&["restrict", p(&hom), "--out", p(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_hom(&out).unwrap();
    assert_eq!(r.dim, 12);
    assert_eq!(r.field.name(), "F_2");
}

#[test]
fn freeprod_writes_zeta_and_certificate() {
    let dir = TempDir::new().unwrap();
    let c2 = dir.path().join("c2.json");
    write_json(&c2, &FiniteGroup::cyclic(2).to_json()).unwrap();
    let out = dir.path().join("zeta");
    let o = linsofic(&["freeprod", p(&c2), p(&c2), "-r", "1", "--seed", "5", "--field", "F_5", "--out", p(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let cert = read_json(&out.join("certificate.json")).unwrap();
    assert_eq!(cert["radius"], json!(1));
    let zeta = read_hom(&out.join("zeta.json")).unwrap();
    assert_eq!(zeta.dim.to_string(), cert["dim"].to_string());
}
