use std::fs;
use std::process::{Command, Output};

fn becml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_becml")).args(args).output().expect("spawn becml")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = becml(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn bounds_grid_has_21_rows() {
    let csv = stdout_ok(&["bounds", "--n", "1024", "--k", "512", "--eps", "0.40:0.50:0.005"]);
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 21);
    for r in &rows {
        let s: f64 = r[1].parse().unwrap();
        let b: f64 = r[2].parse().unwrap();
        assert!(s <= b, "{r:?}");
    }
    assert!(csv.lines().any(|l| l == "# n=1024 k=512"));
}

#[test]
fn thresholds_regular_3_6() {
    let csv = stdout_ok(&["thresholds", "--regular", "3,6"]);
    let rows = data_rows(&csv);
    assert_eq!(rows, vec![vec!["regular-3-6", "0.4294", "0.4882", "0.5000"]]);
}

#[test]
fn raptor_sim_cer_is_nonincreasing() {
    let csv = stdout_ok(&[
        "raptor-sim", "--k", "32", "--n", "64", "--delta", "0:8:2", "--errors", "20", "--max-trials", "2000",
        "--seed", "5",
    ]);
    let cer: Vec<f64> = data_rows(&csv).iter().map(|r| r[3].parse().unwrap()).collect();
    assert_eq!(cer.len(), 5);
    assert!(cer.windows(2).all(|w| w[1] <= w[0]), "{cer:?}");
}

#[test]
fn replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.txt");
    let code_s = code.to_str().unwrap();
    stdout_ok(&["construct", "--family", "regular", "--n", "96", "--seed", "4", "--out", code_s]);
    let args = [
        "simulate", "--code", code_s, "--eps", "0.3:0.45:0.05", "--errors", "30", "--max-trials", "3000",
        "--seed", "11", "--random-codeword",
    ];
    let a = stdout_ok(&args);
    let b = stdout_ok(&args);
    assert_eq!(a, b);
    assert!(a.contains("# seed=11"));
}

#[test]
fn command_line_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# sweep\nn = 100\nk = 50\neps = 0.1:0.3:0.1\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let from_file = stdout_ok(&["bounds", "--config", cfg_s]);
    assert_eq!(data_rows(&from_file).len(), 3);
    let overridden = stdout_ok(&["bounds", "--config", cfg_s, "--eps", "0.2"]);
    let rows = data_rows(&overridden);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "0.2");
    assert!(overridden.contains("# n=100 k=50"));
}

#[test]
fn raptor_symbol_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sym = dir.path().join("sym.txt");
    let info = "1011001110001111010101100011101001010011";
    stdout_ok(&[
        "raptor-encode", "--k", "40", "--n", "80", "--info", info, "--out", sym.to_str().unwrap(),
    ]);
    // keep the header and every symbol from ESI 20 on
    let text = fs::read_to_string(&sym).unwrap();
    let kept: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with('#') || l.split_whitespace().next().unwrap().parse::<u32>().unwrap() >= 20)
        .collect();
    fs::write(&sym, kept.join("\n")).unwrap();
    let decoded = stdout_ok(&["raptor-decode", "--k", "40", "--n", "80", "--symbols", sym.to_str().unwrap()]);
    assert_eq!(decoded.trim(), info);
}

#[test]
fn bad_input_exits_nonzero() {
    let out = becml(&["bounds", "--n", "10", "--k", "5", "--eps", "0.1", "--bogus"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert!(!becml(&["frobnicate"]).status.success());
    assert!(!becml(&["bounds", "--n", "10", "--k", "5", "--eps", "0.5:0.1:0.1"]).status.success());
}
