use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mobius-fq"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// One small invocation per subcommand.
const INVOCATIONS: [&[&str]; 16] = [
    &["pnt", "--field", "3", "--lmax", "6"],
    &["mobius-sums", "--field", "2", "--nmax", "10"],
    &["divisor-moments", "--field", "3", "--nmax", "6"],
    &["hayes-lfunc", "--field", "3", "--l", "1", "--Q", "1,0,1"],
    &["rh-check", "--field", "2", "--l", "2", "--Q", "1,1,0,1"],
    &["euler-check", "--field", "2", "--l", "1", "--Q", "0,0,1"],
    &["principal-check", "--field", "3", "--l", "1", "--Q", "0,1,1"],
    &["logderiv-check", "--field", "2", "--l", "2", "--Q", "1,1,1"],
    &["linear-corr", "--field", "2", "--n", "12", "--domain", "all", "--reduction"],
    &["quad-corr", "--field", "3", "--n", "7", "--linear"],
    &["hankel-corr", "--field", "3", "--n", "7", "--cross-check"],
    &["vaughan-audit", "--field", "2", "--n", "10", "--u", "2", "--v", "2", "--samples", "4"],
    &["gauss-sums", "--field", "5", "--n", "4", "--samples", "20", "--linear"],
    &["isotropic", "--field", "3", "--n", "6", "--r", "2", "--samples", "10"],
    &["rank-stats", "--field", "3", "--n", "6", "--k", "2", "--h", "3", "--samples", "400"],
    &["exponent-sweep", "--experiment", "linear", "--field", "2", "--nmin", "6", "--nmax", "10", "--samples", "8"],
];

#[test]
fn pnt_example() {
    let o = run(&["pnt", "--field", "2", "--lmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# mobius-fq "));
    assert_eq!(lines[1], "l,sum,q_pow_l");
    assert_eq!(lines[11], "10,1024,1024");
}

#[test]
fn rh_check_example() {
    let o = run(&["rh-check", "--field", "2", "--l", "1", "--Q", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // The single non-principal character has L = 1 - z.
    assert_eq!(text.lines().nth(2).unwrap(), "1,1.000000000000,0.000000000000,1.000000000000,1,1");
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["pnt", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(run(&["pnt", "--field", "4^1"]).status.code(), Some(2));
    assert_eq!(run(&["pnt", "--budget", "0"]).status.code(), Some(2));
    assert_eq!(run(&["quad-corr", "--field", "2", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn budget_errors_exit_two() {
    let o = run(&["linear-corr", "--n", "12", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn header_names_the_run() {
    let o = run(&["mobius-sums", "--field", "3", "--seed", "17", "--budget", "99999", "--nmax", "5"]);
    let text = stdout(&o);
    let first = text.lines().next().unwrap();
    for part in ["mobius-fq 0.1.0", "command=mobius-sums", "field=3", "seed=17", "budget=99999", "\"nmax\":5"] {
        assert!(first.contains(part), "{first}");
    }
}

fn run_to(dir: &Path, name: &str, args: &[&str], extra: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let o = bin()
        .args(args)
        .args(extra)
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    fs::read(path).unwrap()
}

#[test]
fn every_subcommand_is_deterministic_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in INVOCATIONS.iter().enumerate() {
        for format in ["csv", "json"] {
            let one = run_to(dir.path(), &format!("{i}-1.{format}"), args, &["--workers", "1", "--seed", "3", "--format", format]);
            let many = run_to(dir.path(), &format!("{i}-4.{format}"), args, &["--workers", "4", "--seed", "3", "--format", format]);
            assert_eq!(one, many, "{args:?} {format}");
            assert!(!one.is_empty());
        }
    }
}

#[test]
fn config_file_defaults_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"command": "pnt", "field": "3", "lmax": 4, "seed": 8}"#).unwrap();
    let cfg = cfg.to_string_lossy().into_owned();
    let o = run(&["--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# mobius-fq 0.1.0 command=pnt field=3 seed=8"));
    assert_eq!(text.lines().last().unwrap(), "4,81,81");
    let o = run(&["pnt", "--config", &cfg, "--lmax", "2", "--field", "2"]);
    let text = stdout(&o);
    assert!(text.contains("field=2"));
    assert_eq!(text.lines().last().unwrap(), "2,4,4");

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"lmax": 4, "colour": "red"}"#).unwrap();
    let o = run(&["pnt", "--config", &bad.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_has_header_and_data() {
    let o = run(&["linear-corr", "--n", "6", "--format", "json", "--seed", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["header"]["command"], "linear-corr");
    assert_eq!(v["header"]["seed"], 1);
    assert_eq!(v["data"]["terms"], 64);
}

#[test]
fn empty_sweep_has_header_only() {
    let o = run(&["exponent-sweep", "--experiment", "hankel", "--field", "3", "--nmin", "4", "--nmax", "8", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}
