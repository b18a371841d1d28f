//! The qt binary end to end: exit codes, formats and deterministic output.

use std::process::{Command, Output};

use app_cli::Report;

fn qt(args: &[&str]) -> Output {
    let cache = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_qt"))
        .args(args)
        .env("QT_OFFLINE", "1")
        .env("QT_CACHE_DIR", cache.path())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const Z6_CURVE: &str = "5x^6+21x^5-63x^4-49x^3+294x^2-343";

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qt(&["suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(qt(&["weil", "label", "2.5.zz"]).status.code(), Some(2));
    assert_eq!(qt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qt(&["curve", "certify", "--f", "x^2+1", "--claim", "2"]).status.code(), Some(2));
    assert_eq!(qt(&["--help"]).status.code(), Some(0));
}

#[test]
fn offline_fetch_exits_3() {
    let o = qt(&["fetch", "av", "--q", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache miss"));
    assert_eq!(qt(&["newform", "check", "11.2.a.a"]).status.code(), Some(3));
}

#[test]
fn weil_commands() {
    let o = qt(&["--format", "json", "weil", "label", "2.5.f_q"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.data["f1"], "72");
    let o = qt(&["--format", "json", "weil", "enum", "--q", "5", "--divides", "72"]);
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.data["count"], 1);
    let o = qt(&["weil", "gcd", "--q", "2", "--ell", "3", "--geom-square"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max_gcd: \"9\""));
}

#[test]
fn verify_commands() {
    let o = qt(&["verify", "fixed-points", "--disc", "6", "--modulus", "2,3,4,5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("D4 mod 4"));
    assert_eq!(qt(&["verify", "mod4", "--disc", "6", "--height", "6"]).status.code(), Some(0));
}

#[test]
fn curve_certify_verdicts() {
    let ok = qt(&["curve", "certify", "--f", Z6_CURVE, "--claim", "6"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = qt(&["curve", "certify", "--f", Z6_CURVE, "--claim", "5", "--pmax", "50"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
    let json = qt(&["curve", "certify", "--f", r#"{"f": [-343, 0, 294, -49, -63, 21, 5]}"#, "--claim", "6"]);
    assert_eq!(json.status.code(), Some(0));
}

#[test]
fn family_commands() {
    let o = qt(&["family", "eval", "--t", "3/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(qt(&["family", "eval", "--t", "-7/5"]).status.code(), Some(0));
    assert_eq!(qt(&["family", "eval", "--t", "1"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("ts.txt");
    std::fs::write(&list, "# parameters\n3/2\n-5/7\n\n11\n").unwrap();
    let o = qt(&["family", "check", "--t-list", list.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 checks, 0 failed"));
    std::fs::write(&list, "2\n0\n").unwrap();
    assert_eq!(qt(&["family", "check", "--t-list", list.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn newform_check_from_fixture_and_file() {
    let o = qt(&["--format", "json", "newform", "check", "243.2.a.d", "--primes", "2,13"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    let d = &r.data["243.2.a.d"];
    assert_eq!(d["torsion_bound"], "3");
    assert_eq!(d["quaternion_disc"], "6");
    assert_eq!(d["pqm"], true);

    // A truncated record is inconclusive, which is a check failure.
    let rec = newform_check::builtin_records().into_iter().find(|r| r.label == "972.2.a.e").unwrap();
    let mut doc = rec.to_json();
    doc["ap"].as_object_mut().unwrap().retain(|p, _| p.parse::<u64>().unwrap() < 50);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(qt(&["newform", "check", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn suite_reports_are_byte_identical() {
    for name in ["weil-bounds", "table2", "family"] {
        let a = qt(&["suite", name, "--format", "json"]);
        let b = qt(&["suite", name, "--format", "json"]);
        assert_eq!(a.status.code(), Some(0), "{name}");
        assert_eq!(a.stdout, b.stdout, "{name}");
        let r = Report::from_json(&stdout(&a)).unwrap();
        assert_eq!(r.suite, name);
        assert!(r.passed());
    }
}
