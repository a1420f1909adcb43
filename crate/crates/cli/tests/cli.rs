use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn geodiscord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodiscord"))
        .args(args)
        .output()
        .expect("spawn geodiscord")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

/// Value printed on the `name = ...` line.
fn value(out: &str, name: &str) -> f64 {
    let prefix = format!("{name} = ");
    let line = out
        .lines()
        .find(|l| l.starts_with(&prefix))
        .unwrap_or_else(|| panic!("{out}"));
    line[prefix.len()..]
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

fn rows(path: &Path) -> Vec<[f64; 3]> {
    let mut r = csv::Reader::from_path(path).unwrap();
    assert_eq!(r.headers().unwrap(), vec!["param", "gd", "ggqd"]);
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            [0, 1, 2].map(|i| rec[i].parse::<f64>().unwrap())
        })
        .collect()
}

#[test]
fn compute_bell_state() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bell.txt", "X\n0.5 0 0 0.5\n0.5 0 0 0\n");
    let o = geodiscord(&["compute", &f]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(value(&out, "gd"), 0.5);
    assert_eq!(value(&out, "ggqd"), 0.5);
    assert!(out.contains("[analytic_x]"), "{out}");
}

#[test]
fn compute_maximally_mixed_dm4() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("DM4\n");
    for i in 0..4 {
        for j in 0..4 {
            text.push_str(if i == j { "0.25 0\n" } else { "0 0\n" });
        }
    }
    let f = write(&dir, "mixed.txt", &text);
    for method in ["analytic", "numeric", "brute"] {
        let o = geodiscord(&["compute", &f, "--method", method]);
        assert!(o.status.success(), "{method}");
        let out = stdout(&o);
        assert_eq!(value(&out, "gd"), 0.0, "{method}");
        assert_eq!(value(&out, "ggqd"), 0.0, "{method}");
    }
}

#[test]
fn brute_force_agrees_with_closed_form() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "x.txt", "X\n0.35 0.3 0.2 0.15\n0.1 0 0.05 0\n");
    let a = stdout(&geodiscord(&["compute", &f, "--method", "analytic"]));
    let b = stdout(&geodiscord(&["compute", &f, "--method", "brute"]));
    assert!(b.contains("[brute_force]"), "{b}");
    for m in ["gd", "ggqd"] {
        assert!((value(&a, m) - value(&b, m)).abs() <= 1e-4, "{m}: {a}\n{b}");
        assert!(value(&b, m) >= value(&a, m) - 1e-12, "{m}");
    }
}

#[test]
fn measure_flag_selects_lines() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "x.txt", "X\n0.4 0.1 0.1 0.4\n0.2 0 0.05 0\n");
    let out = stdout(&geodiscord(&["compute", &f, "--measure", "ggqd"]));
    assert!(out.contains("ggqd = ") && !out.contains("\ngd = "), "{out}");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "X\n0.5 0 zero 0.5\n0 0 0 0\n");
    let o = geodiscord(&["compute", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2, column 7"), "{err}");

    let invalid = write(&dir, "invalid.txt", "X\n0.5 0 0 0.5\n0.7 0 0 0\n");
    assert_eq!(geodiscord(&["compute", &invalid]).status.code(), Some(3));

    assert_eq!(
        geodiscord(&["compute", &bad, "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        geodiscord(&["compute", "/nonexistent/state.txt"])
            .status
            .code(),
        Some(2)
    );

    let o = geodiscord(&[
        "sweep",
        "--example",
        "ex3",
        "--range",
        "0:1:5",
        "--out",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(o.status.code(), Some(4));
    // ex1 excludes a = 0.
    let out = dir.path().join("ex1.csv");
    let o = geodiscord(&[
        "sweep",
        "--example",
        "ex1",
        "--range",
        "0:1:5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_ex3_minimum() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ex3.csv");
    let o = geodiscord(&[
        "sweep",
        "--example",
        "ex3",
        "--range",
        "0:1:101",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let r = rows(&out);
    assert_eq!(r.len(), 101);
    let min = r.iter().min_by(|a, b| a[2].total_cmp(&b[2])).unwrap();
    assert_eq!(min[0], 0.5);
    assert!((min[2] - 5.0 / 36.0).abs() < 1e-12);
    for row in &r {
        assert!(row[2] >= row[1] - 1e-12, "{row:?}");
    }
}

#[test]
fn sweep_ex1_measures_coincide() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ex1.csv");
    let o = geodiscord(&[
        "sweep",
        "--example",
        "ex1",
        "--range",
        "0.01:1:100",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    for row in rows(&out) {
        assert!((row[1] - row[2]).abs() < 1e-12, "{row:?}");
    }
}

#[test]
fn sweep_ex5_starts_from_initial_state() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ex5.csv");
    let o = geodiscord(&[
        "sweep",
        "--example",
        "ex5",
        "--range",
        "0:5:51",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let r = rows(&out);
    assert_eq!(r[0][0], 0.0);
    assert!((r[0][2] - 0.0198).abs() < 1e-12, "{:?}", r[0]);
    assert!(r[50][2] < r[0][2]);
}

#[test]
fn sweep_output_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = geodiscord(&[
            "sweep",
            "--example",
            "ex4",
            "--range",
            "0:2:41",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    for row in rows(&a) {
        assert!(row[2] >= row[1] - 1e-12, "{row:?}");
    }
}

#[test]
fn verify_small_run() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.txt");
    let o = geodiscord(&[
        "verify",
        "--seed",
        "3",
        "--trials",
        "4",
        "--tol",
        "1e-3",
        "--grid",
        "16:32:4:0.25",
        "--out",
        report.to_str().unwrap(),
    ]);
    let out = stdout(&o);
    let saved = std::fs::read_to_string(&report).unwrap();
    assert_eq!(out, saved);
    for label in ["(a)", "(b)", "(d)", "(e)"] {
        let line = out.lines().find(|l| l.starts_with(label)).unwrap();
        assert!(line.contains("4/4 pass"), "{line}");
    }
    // (c) is reported honestly; a failure there sets exit code 1.
    let c = out.lines().find(|l| l.starts_with("(c)")).unwrap();
    let expected = if c.ends_with("[ok]") { 0 } else { 1 };
    assert_eq!(o.status.code(), Some(expected), "{out}");

    assert_eq!(
        geodiscord(&["verify", "--trials", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        geodiscord(&["verify", "--grid", "1:2"]).status.code(),
        Some(2)
    );
}
