use std::process::{Command, Output};

use modrep_cli::build::RepFile;
use modrep_cli::report::Table;
use modrep_cli::verify::VerifyOutput;
use modrep_core::repcheck::suites::build_rep;
use modrep_core::{CycNum, RepLabel};

fn modrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modrep")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_psu2_json() {
    let o = modrep(&["build", "--prime", "5", "--rep", "psu2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let f: RepFile = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((f.schema, f.dim, f.s.len(), f.t.len()), (1, 2, 2, 2));
    assert_eq!(f.t[0], CycNum::root_power(5, -1));
    assert_eq!(f.t[1], CycNum::root_power(5, -4));
}

#[test]
fn build_rejects_split_prime() {
    let o = modrep(&["build", "--prime", "7", "--rep", "psu3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 mod 3"));
    assert_eq!(code(&modrep(&["build", "--prime", "9", "--rep", "psu2"])), 2);
}

#[test]
fn build_unfolded_dims() {
    let o = modrep(&["build", "--prime", "5", "--rep", "unfolded", "--format", "json"]);
    let f: RepFile = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(f.dim, 25);
    assert!(f.s.iter().all(|r| r.len() == 25));
}

#[test]
fn build_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    for (r, label, extra) in [
        ("11", "psu3", None),
        ("7", "psu2conj", None),
        ("5", "unfolded", Some("120")),
        ("17", "psu2", None),
    ] {
        let path = dir.path().join(format!("{label}_{r}.json"));
        let mut args = vec!["build", "--prime", r, "--rep", label, "--format", "json", "--out", path.to_str().unwrap()];
        if let Some(m) = extra {
            args.extend(["--field-order", m]);
        }
        assert_eq!(code(&modrep(&args)), 0);
        let f: RepFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let back = f.to_rep().unwrap();
        let fresh = build_rep(r.parse().unwrap(), label.parse::<RepLabel>().unwrap()).unwrap();
        assert_eq!(back.label, fresh.label);
        assert!(back.s.equals(&fresh.s) && back.t.equals(&fresh.t), "{label} at {r}");
        assert_eq!(back.basis_labels, fresh.basis_labels);
        if extra.is_some() {
            assert_eq!(f.field_order, 120);
        }
    }
}

#[test]
fn build_bad_field_order() {
    assert_eq!(code(&modrep(&["build", "--prime", "5", "--rep", "psu2", "--field-order", "7"])), 2);
}

#[test]
fn build_csv() {
    let o = modrep(&["build", "--prime", "5", "--rep", "psu2", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "matrix,row,col,re,im");
    assert_eq!(lines.len(), 1 + 4 + 2);
}

#[test]
fn verify_theorem2_r5() {
    let o = modrep(&["verify", "--prime", "5", "--suite", "theorem2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: VerifyOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.passed);
    assert_eq!(v.reports[0].epsilon, Some(-1));
    let pretty = stdout(&modrep(&["verify", "--prime", "5", "--suite", "theorem2"]));
    assert!(pretty.contains("epsilon = -1"));
}

#[test]
fn verify_identities_sweep() {
    let o = modrep(&["verify", "--primes", "5..50", "--suite", "identities", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: VerifyOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.reports.len(), 13);
}

#[test]
fn verify_theorem2_sweep_skips_split_primes() {
    let o = modrep(&["verify", "--primes", "5..13", "--suite", "theorem2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: VerifyOutput = serde_json::from_str(&stdout(&o)).unwrap();
    let primes: Vec<u64> = v.reports.iter().map(|r| r.prime).collect();
    assert_eq!(primes, vec![5, 11]);
    assert_eq!(v.skipped.iter().map(|s| s.prime).collect::<Vec<_>>(), vec![7, 13]);
}

#[test]
fn verify_parity_dims() {
    let o = modrep(&["verify", "--prime", "5", "--suite", "parity", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: VerifyOutput = serde_json::from_str(&stdout(&o)).unwrap();
    let (p, m) = v.reports[0].parity_dims.unwrap();
    assert_eq!(p + m, 25);
    assert!(m > 0);
}

#[test]
fn resource_guard_exit_code() {
    let o = modrep(&["verify", "--prime", "11", "--suite", "relations", "--rep", "unfolded"]);
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_modrep"))
        .args(["verify", "--prime", "5", "--suite", "relations", "--rep", "psu2"])
        .env("MODREP_MAX_EXACT_DIM", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn float_mode_labels_tolerance() {
    let o = Command::new(env!("CARGO_BIN_EXE_modrep"))
        .args(["verify", "--prime", "5", "--suite", "relations", "--rep", "psu2", "--mode", "float", "--format", "json"])
        .env("MODREP_MAX_EXACT_DIM", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let v: VerifyOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.tolerance, Some(1e-9));
    let c = v.reports[0].find("psu2.commutant_irreducible").unwrap();
    assert!(!c.exact && c.passed);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&modrep(&["verify", "--suite", "parity"])), 2);
    assert_eq!(code(&modrep(&["verify", "--prime", "5", "--suite", "nope"])), 2);
    assert_eq!(code(&modrep(&["verify", "--primes", "9..5"])), 2);
}

#[test]
fn report_rows() {
    let o = modrep(&["report", "--primes", "5..11", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let t: Table = serde_json::from_str(&stdout(&o)).unwrap();
    let r5 = t.rows.iter().find(|r| r.prime == 5).unwrap();
    let c2 = r5.proportionality_squared.as_ref().unwrap();
    assert_eq!(c2.exact, CycNum::from_int(1, 5));
    assert_eq!(r5.parity_dims, Some((13, 12)));
    let r11 = t.rows.iter().find(|r| r.prime == 11).unwrap();
    assert_eq!(r11.epsilon, Some(1));
    assert_eq!(r11.commutant.get("psu2"), Some(&1));
}

#[test]
fn report_from_verify_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let o = modrep(&["verify", "--prime", "11", "--suite", "theorem2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = modrep(&["report", "--input", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("11,1,"), "{row}");
}

#[test]
fn report_empty_input() {
    let dir = tempfile::tempdir().unwrap();
    for content in ["", "[]"] {
        let path = dir.path().join("empty.json");
        std::fs::write(&path, content).unwrap();
        let o = modrep(&["report", "--input", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code(&o), 0);
        let t: Table = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(t.rows.is_empty());
    }
}
