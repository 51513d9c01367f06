use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hitset::instance::format::parse_instance;
use hitset::instance::reduction::{CnfFormula, reduction_info};
use hitset::solution::parse_solution;
use tempfile::TempDir;

fn hitset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitset")).args(args).output().expect("binary runs")
}

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/sweep_walkthrough.instance")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.inst");
    let res = hitset(&["generate", "hrvl", "--lines", "4", "--pairs", "5", "--seed", "1", "-o", s(&out)]);
    assert!(res.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let inst = parse_instance(&text).unwrap();
    assert_eq!(inst.len(), 14);
    assert_eq!(hitset::instance::format::serialize_instance(&inst), text);

    let stdout = hitset(&["generate", "hrvl", "--lines", "4", "--pairs", "5", "--seed", "1"]).stdout;
    assert_eq!(String::from_utf8(stdout).unwrap(), text);
}

#[test]
fn bad_family_is_a_usage_error() {
    let res = hitset(&["generate", "hexagons"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("hrvl"));
}

#[test]
fn sat3_reduction_segment_count() {
    let dir = TempDir::new().unwrap();
    let cnf = dir.path().join("f.cnf");
    let text = "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";
    fs::write(&cnf, text).unwrap();
    let out = dir.path().join("s.inst");
    assert!(hitset(&["generate", "sat3", "--cnf", s(&cnf), "-o", s(&out)]).status.success());
    let inst = parse_instance(&fs::read_to_string(&out).unwrap()).unwrap();
    let horizontal = inst.members().filter(|o| o.orientation().is_horizontal()).count();
    let (n, m) = (3, 2);
    assert_eq!(horizontal, 4 * m * n + 4 * n);
    assert_eq!(reduction_info(&CnfFormula::parse_dimacs(text).unwrap()).horizontal_segments, horizontal);

    assert_eq!(hitset(&["generate", "sat3"]).status.code(), Some(2));
}

#[test]
fn walkthrough_needs_eight_points() {
    let dir = TempDir::new().unwrap();
    let sol = dir.path().join("w.sol");
    let json = dir.path().join("w.json");
    let res = hitset(&["solve", s(&golden()), "--solver", "hrvl", "-o", s(&sol), "--json", s(&json)]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let set = parse_solution(&fs::read_to_string(&sol).unwrap()).unwrap().set;
    assert_eq!(set.len(), 8);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report[0]["size"], 8);
    assert_eq!(report[0]["solver"], "hrvl");
    assert!(report[0].get("opt").is_none());
    assert!(hitset(&["verify", s(&golden()), s(&sol)]).status.success());
}

#[test]
fn solve_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.sol"), dir.path().join("b.sol"));
    for out in [&a, &b] {
        assert!(hitset(&["solve", s(&golden()), "-o", s(out)]).status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn vlhs_report_carries_oracle_ratio() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("v.inst");
    let json = dir.path().join("v.json");
    for seed in 0..6 {
        let seed = seed.to_string();
        let args = ["generate", "vlhs", "--lines", "3", "--segments", "6", "--grid", "10", "--seed", &seed, "-o", s(&inst)];
        assert!(hitset(&args).status.success());
        let res = hitset(&["solve", s(&inst), "--solver", "vlhs53", "--oracle", "--json", s(&json)]);
        assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
        let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
        let ratio = report[0]["ratio_opt"].as_f64().unwrap();
        assert!(ratio <= 5.0 / 3.0 + 1e-9, "seed {seed}: ratio {ratio}");
        assert!(report[0]["v"].is_u64() && report[0]["h"].is_u64());
    }
}

#[test]
fn trifree_refuses_a_triangle() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("t.inst");
    fs::write(&inst, "hitset-instance 1\nunion seg 0 0 4 0\nunion seg 0 0 2 2\nunion seg 4 0 2 2\n").unwrap();
    let res = hitset(&["solve", s(&inst), "--solver", "trifree"]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("triangle"));
}

#[test]
fn missed_union_fails_verification() {
    let dir = TempDir::new().unwrap();
    let sol = dir.path().join("bad.sol");
    fs::write(&sol, "hitset-solution 1\nsolver hand\npoint 2 0\n").unwrap();
    assert_eq!(hitset(&["verify", s(&golden()), s(&sol)]).status.code(), Some(3));
}

#[test]
fn oracle_size_guard() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("big.inst");
    let args = ["generate", "trifree-segments", "--count", "60", "--grid", "40", "--axis-only", "--seed", "3", "-o", s(&inst)];
    assert!(hitset(&args).status.success());
    assert_eq!(hitset(&["solve", s(&inst), "--oracle"]).status.code(), Some(4));
    assert!(hitset(&["solve", s(&inst)]).status.success());
}

#[test]
fn batch_jobs_write_one_solution_each() {
    let dir = TempDir::new().unwrap();
    let mut paths = Vec::new();
    for seed in 0..4 {
        let p = dir.path().join(format!("i{seed}.inst"));
        assert!(hitset(&["generate", "L-pairs", "--seed", &seed.to_string(), "-o", s(&p)]).status.success());
        paths.push(p);
    }
    let out = dir.path().join("sols");
    let mut args = vec!["solve", "--jobs", "3", "-o", s(&out)];
    args.extend(paths.iter().map(|p| s(p)));
    let res = hitset(&args);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    for seed in 0..4 {
        assert!(out.join(format!("i{seed}.sol")).exists());
    }
    let table = String::from_utf8(res.stdout).unwrap();
    let order: Vec<_> = (0..4).map(|i| table.find(&format!("i{i}.inst")).unwrap()).collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn plot_marks() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("e.inst");
    fs::write(&empty, "hitset-instance 1\n").unwrap();
    let svg = dir.path().join("e.svg");
    assert!(hitset(&["plot", s(&empty), "-o", s(&svg)]).status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && !text.contains("<line") && !text.contains("<circle"));

    assert!(hitset(&["plot", s(&golden()), "-o", s(&svg)]).status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<line").count(), 19);
    assert_eq!(text.matches("<circle").count(), 0);

    let sol = dir.path().join("w.sol");
    assert!(hitset(&["solve", s(&golden()), "-o", s(&sol)]).status.success());
    assert!(hitset(&["plot", s(&golden()), s(&sol), "-o", s(&svg)]).status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), 8);
    assert_eq!(text.matches(r#"class="triple""#).count(), 3);
}
