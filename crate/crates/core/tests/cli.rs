//! End-to-end runs of the `invsq` binary.

use std::process::{Command, Output};

fn invsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invsq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn toy_example_gives_one_eigenvalue_near_minus_one() {
    let o = invsq(&["--format", "csv", "eigenvalues", "--family", "toy", "--m", "0.5", "--lambda", "0.3183098861"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,re,im");
    assert_eq!(lines.len(), 2);
    let re: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((re + 1.0).abs() < 1e-8);
}

#[test]
fn schrodinger_example_and_empty_spectrum() {
    let o = invsq(&["--format", "csv", "eigenvalues", "--family", "schrodinger", "--m", "0.5", "--kappa", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let re: f64 = stdout(&o).lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((re + 1.0).abs() < 1e-12);
    let o = invsq(&["eigenvalues", "--family", "toy", "--m", "0.5", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"rows\":[]"));
    assert!(stdout(&o).starts_with("{\"schema\":1,"));
}

#[test]
fn exit_codes() {
    assert_eq!(invsq(&["eigenvalues", "--family", "toy", "--m", "1.5", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(invsq(&["eigenvalues", "--family", "toy", "--m", "x", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(invsq(&["verify", "no-such-suite"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("invsq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("tight.toml");
    std::fs::write(&config, "[tolerances]\nresolvent_routes = 1e-9\n").unwrap();
    let o = invsq(&["--config", config.to_str().unwrap(), "verify", "resolvent-routes"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("achieved"));
    std::fs::write(&config, "[grid]\nnodes = 4\nx_min = 1.0\nx_max = 2.0\n").unwrap();
    assert_eq!(invsq(&["--config", config.to_str().unwrap(), "phase", "--alpha", "0", "1"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["--format", "csv", "flow", "--family", "toy", "--m", "0.3,2", "--lambda", "1,1", "--tau", "-1", "1"];
    let a = invsq(&args);
    let b = invsq(&["--threads", "1"].iter().chain(args.iter()).copied().collect::<Vec<_>>());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn phase_example_and_output_file() {
    let path = std::env::temp_dir().join(format!("invsq-phase-{}.csv", std::process::id()));
    let o = invsq(&["--format", "csv", "--output", path.to_str().unwrap(), "phase", "--alpha", "-1", "2", "--steps", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let phases: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(phases, ["solid", "solid", "transition", "liquid", "gas", "gas", "gas"]);
}

#[test]
fn verify_weighted_resolvent_passes() {
    let o = invsq(&["--format", "csv", "verify", "weighted-resolvent"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(",pass,"));
}
