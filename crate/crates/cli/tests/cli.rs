use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn movnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_movnorm"))
        .args(args)
        .env_remove("MOVNORM_SEED")
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, json: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, json).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

const IDENTITY: &str = r#"{"dim": 2, "re": [[1, 0], [0, 1]]}"#;
const ZERO: &str = r#"{"dim": 2, "re": [[0, 0], [0, 0]]}"#;
const PROJECTION: &str = r#"{"dim": 2, "re": [[1, 0], [0, 0]]}"#;

#[test]
fn curve_rows() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", IDENTITY);
    let out = stdout(&movnorm(&["curve", arg(&id), "--steps", "2"]));
    assert_eq!(out, "lambda,m,am\n0,1,1\n1,0,1\n");

    let zero = write(&dir, "zero.json", ZERO);
    let out = stdout(&movnorm(&["curve", arg(&zero), "--steps", "2"]));
    assert_eq!(out, "lambda,m,am\n0,0,0\n1,1,2\n");

    let d = write(&dir, "d.json", r#"{"dim": 2, "re": [[0.5, 0], [0, -0.5]]}"#);
    let out = stdout(&movnorm(&[
        "curve",
        arg(&d),
        "--lambda-max",
        "0.25",
        "--steps",
        "2",
    ]));
    assert_eq!(out.lines().last(), Some("0.25,0.75,1"));
}

#[test]
fn curve_file_round_trips_exactly() {
    let dir = TempDir::new().unwrap();
    let x = write(
        &dir,
        "x.json",
        r#"{"dim": 2, "re": [[0.3, -0.2], [0.1, 0.4]], "im": [[0.05, 0], [0, -0.1]]}"#,
    );
    let csv = dir.path().join("c.csv");
    let o = movnorm(&["curve", arg(&x), "--steps", "7", "--out", arg(&csv)]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());

    let m = movnorm_cli::read_matrix(&x).unwrap();
    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    for row in rows {
        let v: Vec<f64> = row.split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(v[1], movnorm::moving_norm(&m, v[0]).unwrap());
        assert_eq!(v[2], v[1] + v[0]);
    }
}

#[test]
fn horizon_output() {
    let dir = TempDir::new().unwrap();
    let value = |json: &str| -> serde_json::Value {
        let p = write(&dir, "h.json", json);
        serde_json::from_str(&stdout(&movnorm(&["horizon", arg(&p), "--json"]))).unwrap()
    };
    let h = value(IDENTITY);
    assert_eq!(h["value"], 1.0);
    assert_eq!(h["flat_at_one"], true);
    let h = value(ZERO);
    assert!((h["value"].as_f64().unwrap() - 0.5).abs() < 1e-8);
    assert_eq!(h["flat_at_one"], false);
    let h = value(PROJECTION);
    assert!((h["value"].as_f64().unwrap() - 0.5).abs() < 1e-8);
    assert_eq!(h["flat_at_one"], true);

    let p = write(&dir, "p.json", PROJECTION);
    let text = stdout(&movnorm(&["horizon", arg(&p)]));
    assert!(text.contains("flat_at_one true"), "{text}");
}

#[test]
fn classify_output() {
    let dir = TempDir::new().unwrap();
    let report = |json: &str| -> serde_json::Value {
        let p = write(&dir, "c.json", json);
        serde_json::from_str(&stdout(&movnorm(&["classify", arg(&p), "--json"]))).unwrap()
    };
    let r = report(PROJECTION);
    for key in ["ne", "monotone", "fne", "fne_via_horizon"] {
        assert_eq!(r[key], true, "{key}");
    }
    let r = report(r#"{"dim": 2, "re": [[-1, 0], [0, -1]]}"#);
    assert_eq!(r["ne"], true);
    for key in ["monotone", "fne", "fne_via_horizon"] {
        assert_eq!(r[key], false, "{key}");
    }
    let c = -std::f64::consts::FRAC_1_SQRT_2;
    let r = report(&format!(
        r#"{{"dim": 2, "re": [[{c}, {s}], [{t}, {c}]]}}"#,
        s = -c,
        t = c
    ));
    assert_eq!(r["ne"], true);
    assert_eq!(r["monotone"], false);
    assert_eq!(r["fne"], false);

    let r = report(r#"{"dim": 1, "re": [[3]]}"#);
    assert_eq!(r["ne"], false);
    assert!(r["horizon"].is_null());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(movnorm(&["horizon", arg(&missing)]).status.code(), Some(2));

    let garbage = write(&dir, "g.json", "{not json");
    assert_eq!(movnorm(&["horizon", arg(&garbage)]).status.code(), Some(2));

    let ragged = write(&dir, "r.json", r#"{"dim": 2, "re": [[1, 0], [0]]}"#);
    let o = movnorm(&["classify", arg(&ragged)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("movnorm: "));

    let big = write(&dir, "b.json", r#"{"dim": 1, "re": [[1.5]]}"#);
    assert_eq!(movnorm(&["horizon", arg(&big)]).status.code(), Some(4));

    let id = write(&dir, "id.json", IDENTITY);
    let o = movnorm(&["curve", arg(&id), "--steps", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str, seed: Option<&str>| -> Vec<u8> {
        let out = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_movnorm"));
        cmd.args(["verify", "--dims", "2,3", "--trials", "3", "--out"])
            .arg(&out)
            .env_remove("MOVNORM_SEED");
        if let Some(s) = seed {
            cmd.env("MOVNORM_SEED", s);
        }
        let o = cmd.output().unwrap();
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
        fs::read(out).unwrap()
    };
    let a = run("a.json", Some("7"));
    let b = run("b.json", Some("7"));
    assert_eq!(a, b);
    assert_ne!(a, run("c.json", Some("8")));

    let via_flag = dir.path().join("flag.json");
    let o = movnorm(&[
        "verify",
        "--dims",
        "2,3",
        "--trials",
        "3",
        "--seed",
        "7",
        "--out",
        arg(&via_flag),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read(via_flag).unwrap(), a);

    let reports: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 25);
}
