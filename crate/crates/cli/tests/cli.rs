use std::fs;
use std::process::{Command, Output};

fn ffd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffd")).args(args).env_remove("FFD_CONFIG").output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn cf_expand_rational() {
    let o = ffd(&["cf", "expand", "--num", "T^2+1", "--den", "T", "--q", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("[T, T]"));
}

#[test]
fn word_gen_main4_positions() {
    let o = ffd(&["word", "gen", "--type", "main4", "--w", "5", "--N", "30"]);
    assert!(o.status.success());
    let row = stdout(&o).lines().next().unwrap().to_string();
    let cs: Vec<usize> = row.char_indices().filter(|&(_, c)| c == 'c').map(|(i, _)| i + 1).collect();
    assert_eq!(cs, vec![1, 5, 25]);
}

#[test]
fn verify_main4_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = ffd(&["verify", "main4", "--w", "5", "--jmax", "3", "--out", d]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify_main4.json")).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    let csv = fs::read_to_string(dir.path().join("verify_main4.stages.csv")).unwrap();
    assert!(csv.starts_with("j,"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(ffd(&["cf", "frobnicate"]).status.code(), Some(1));
    assert_eq!(ffd(&["cf", "expand", "--num", "T^^2", "--q", "3"]).status.code(), Some(1));
    // precondition: periodic quotient word
    let o = ffd(&["verify", "main2", "--spec", r#"{"type":"periodic","period":["T"]}"#, "--N", "64"]);
    assert_eq!(o.status.code(), Some(2));
    // precondition: main4 below its threshold
    assert_eq!(ffd(&["verify", "main4", "--w", "3", "--jmax", "1"]).status.code(), Some(2));
    // failed verdict: an impossible tolerance
    let o = ffd(&["verify", "main4", "--w", "5", "--jmax", "1", "--tol-star", "0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn config_file_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    fs::write(&path, r#"{"field":{"p":2,"e":1,"modulus":[0,1]},"precision":20,"seed":7}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ffd"))
        .args(["--format", "json", "cf", "expand", "--num", "T^2+1", "--den", "T"])
        .env("FFD_CONFIG", &path)
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["field"]["p"], 2);
    assert_eq!(v["config"]["seed"], 7);
    // flags win over the file
    let o = Command::new(env!("CARGO_BIN_EXE_ffd"))
        .args(["--format", "json", "--q", "5", "cf", "expand", "--num", "T", "--den", "1"])
        .env("FFD_CONFIG", &path)
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["field"]["p"], 5);
}

#[test]
fn threads_do_not_change_reports() {
    let a = ffd(&["--threads", "1", "--format", "json", "verify", "main4", "--w", "5", "--jmax", "2"]);
    let b = ffd(&["--threads", "3", "--format", "json", "verify", "main4", "--w", "5", "--jmax", "2"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn word_and_exponent_commands() {
    let o = ffd(&["word", "complexity", "--type", "fibonacci", "--N", "200", "--n", "1-5"]);
    assert!(o.status.success());
    // Sturmian: p(n) = n + 1
    for (n, line) in stdout(&o).lines().skip(2).enumerate() {
        let cells: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cells[1], (n + 2).to_string());
    }
    let o = ffd(&["word", "dio", "--type", "thue_morse", "--N", "64"]);
    assert!(stdout(&o).starts_with("Diô = 5/3"), "{}", stdout(&o));
    let o = ffd(&["exp", "wn", "--number", r#"{"type":"rational","num":"1","den":"T"}"#, "--h", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = ffd(&["series", "roots", "--a", "1", "--b", "0", "--c=-T^2-1", "--precision", "8"]);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn liouville_commands() {
    let o = ffd(&["liouville", "check", "--case", "quadratic_pair", "--alpha", "1;T;1", "--beta", "1;T;2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("holds"));
    let o = ffd(&["--q", "2", "liouville", "sweep", "--max-height", "1", "--random", "50"]);
    assert_eq!(o.status.code(), Some(0));
}
