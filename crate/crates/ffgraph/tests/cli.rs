use std::path::Path;
use std::process::{Command, Output};

fn ffgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffgraph")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn map_writes_csv_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("map.csv");
    let o = ffgraph(&[
        "map", "--L", "21", "--mu", "0:2:3", "--gamma", "0.5:1:2", "--quantities", "E0,parity", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "L,mu,gamma,E0,parity,status");
    assert_eq!(text.lines().count(), 7);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("map.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["command"], "map");
}

#[test]
fn formats_carry_the_same_rows() {
    let args = ["map", "--L", "10", "--mu", "0.5:1.5:2", "--gamma", "0.3:0.6:2", "--quantities", "gap"];
    let jsonl = stdout(&ffgraph(&[&args[..], &["--format", "jsonl"]].concat()));
    let lines: Vec<serde_json::Value> = jsonl.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    let keys: Vec<&String> = lines[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["L", "mu", "gamma", "gap", "status"]);
    let gp = stdout(&ffgraph(&[&args[..], &["--format", "gnuplot"]].concat()));
    assert_eq!(gp.split("\n\n").count(), 2);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"L": 7, "mu": "0.5", "gamma": "0.2", "quantities": "E0", "boundary": "free"}"#).unwrap();
    let from_file = stdout(&ffgraph(&["map", "--config", cfg.to_str().unwrap()]));
    assert!(from_file.lines().nth(1).unwrap().starts_with("7,0.5,0.2,"));
    let overridden = stdout(&ffgraph(&["map", "--config", cfg.to_str().unwrap(), "--L", "9"]));
    assert!(overridden.lines().nth(1).unwrap().starts_with("9,0.5,0.2,"));
    std::fs::write(&cfg, r#"{"colour": "blue"}"#).unwrap();
    assert_eq!(code(&ffgraph(&["map", "--config", cfg.to_str().unwrap()])), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&ffgraph(&["--help"])), 0);
    assert_eq!(code(&ffgraph(&["map", "--unknown"])), 1);
    assert_eq!(code(&ffgraph(&["map", "--L", "5"])), 1);
    assert_eq!(code(&ffgraph(&["map", "--L", "5", "--mu", "0", "--gamma", "0", "--range", "9"])), 1);
    assert_eq!(code(&ffgraph(&["map", "--L", "5", "--mu", "0", "--gamma", "0", "--boundary", "open"])), 1);
    assert_eq!(code(&ffgraph(&["collapse", "--input", "/nonexistent/table.csv"])), 2);
    let unwritable = Path::new("/nonexistent/dir/out.csv");
    assert_eq!(code(&ffgraph(&["tdl", "--L", "10", "--mu", "2", "--gamma", "1", "--out", unwritable.to_str().unwrap()])), 2);
}

#[test]
fn oracle_check_passes() {
    let o = ffgraph(&["oracle-check", "--L", "2:6:1", "--samples", "5", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["parity_mismatches"], 0);
}

#[test]
fn spectrum_boundary_tdl_and_collapse_run() {
    let o = ffgraph(&["spectrum", "--L", "6", "--mu", "0.5", "--gamma", "0.3", "--range", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 7);

    let o = ffgraph(&["boundary", "--L", "2", "--boundary", "free", "--mu", "-2:2:401", "--gamma", "0.6"]);
    let rows: Vec<f64> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(rows.len(), 2);
    for mu in rows {
        assert!((mu.abs() - 0.8).abs() < 1e-8);
    }

    let o = ffgraph(&["tdl", "--L", "101", "--mu", "1", "--gamma", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with("singular"));

    let dir = tempfile::tempdir().unwrap();
    let curves = dir.path().join("curves.csv");
    let o = ffgraph(&["scaling", "--L", "31,61", "--gamma", "1.5", "--x", "-5:5:11", "--grid", "21", "--out", curves.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = ffgraph(&["collapse", "--input", curves.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "L,mu,gamma,x,h_over_L2,status");
    assert_eq!(text.lines().count(), 23);
}

#[test]
fn presets_resolve() {
    let o = ffgraph(&["tdl", "--preset", "fidelity-map", "--mu", "2", "--gamma", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("1001,2.0,1.0,"));
    assert_eq!(code(&ffgraph(&["tdl", "--preset", "nope"])), 1);
}
