use std::path::PathBuf;
use std::process::{Command, Output};

fn sp4r(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sp4r")).args(args).output().unwrap()
}

fn jc_config() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/jc.cfg").to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sp4r-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn jc_spectrum_matches_golden() {
    let out = sp4r(&["spectrum", "--config", &jc_config()]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/jc_spectrum.csv")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn spectrum_rows_are_plus_minus_sqrt() {
    let out = sp4r(&["spectrum", "--config", &jc_config()]);
    let text = String::from_utf8(out.stdout).unwrap();
    for (n, line) in text.lines().skip(1).enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        let (p, q): (f64, f64) = (f[2].parse().unwrap(), f[3].parse().unwrap());
        let want = (n as f64 + 1.0).sqrt();
        assert!((p - want).abs() < 1e-12 && (q + want).abs() < 1e-12, "{line}");
        assert_eq!(f[4], "true");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = scratch("out");
    let path = dir.join("jc.csv");
    let out = sp4r(&["spectrum", "--config", &jc_config(), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = sp4r(&["spectrum", "--config", &jc_config()]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn dumped_config_reproduces_the_run() {
    let dir = scratch("dump");
    let dumped = sp4r(&["spectrum", "--config", &jc_config(), "--dump-config"]);
    assert_eq!(dumped.status.code(), Some(0));
    let path = dir.join("dumped.cfg");
    std::fs::write(&path, &dumped.stdout).unwrap();
    let again = sp4r(&["spectrum", "--config", path.to_str().unwrap(), "--dump-config"]);
    assert_eq!(again.stdout, dumped.stdout);
    let a = sp4r(&["spectrum", "--config", &jc_config()]).stdout;
    let b = sp4r(&["spectrum", "--config", path.to_str().unwrap()]).stdout;
    assert_eq!(a, b);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn custom_model_falls_back_to_pipeline() {
    let dir = scratch("custom");
    let path = dir.join("custom.cfg");
    // JC written out by hand; b is a spectator mode.
    std::fs::write(&path, "model = custom\nomega0 = 1\nomega1 = 1\nkappa2 = 1\ngamma1 = 1\ncutoff_a = 30\ncutoff_b = 12\nn_max = 4\n").unwrap();
    let out = sp4r(&["spectrum", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().lines().count() > 1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_commands_exit_codes() {
    assert_eq!(sp4r(&["verify", "algebra", "--cutoff", "8", "--margin", "2"]).status.code(), Some(0));
    assert_eq!(sp4r(&["verify", "model", "jc", "--cutoff", "30", "--n-max", "6"]).status.code(), Some(0));
    assert_eq!(sp4r(&["verify", "model", "mjc", "--set", "lambda2=0.4", "--cutoff", "20", "--n-max", "6"]).status.code(), Some(0));
    assert_eq!(sp4r(&["verify", "model", "rabi"]).status.code(), Some(2));
    assert_eq!(sp4r(&["verify", "tilting", "--cutoff", "8", "--margin", "2", "--phases", "1"]).status.code(), Some(1));
}

#[test]
fn csv_format_has_header() {
    let out = sp4r(&["verify", "algebra", "--cutoff", "8", "--margin", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("residual"));
    assert!(text.lines().count() > 40);
}

#[test]
fn coherent_and_wavefunction() {
    let out = sp4r(&["coherent", "--kind", "su11", "--k", "0.5", "--xi", "0.3,0.1", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,re,im,oracle_re,oracle_im,abs_err"));
    let max_err = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap()).fold(0.0, f64::max);
    assert!(max_err < 1e-8, "{max_err}");
    let out = sp4r(&["coherent", "--kind", "su2", "--j", "1.5", "--xi", "0.2,0", "--n", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);

    let out = sp4r(&["wavefunction", "--nl", "0", "--mn", "0", "--rho", "0", "--phi", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let row = String::from_utf8(out.stdout).unwrap().lines().nth(1).unwrap().to_string();
    let re: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
    assert!((re - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-12, "{row}");
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(sp4r(&[]).status.code(), Some(2));
    assert_eq!(sp4r(&["spectrum"]).status.code(), Some(2));
    assert_eq!(sp4r(&["spectrum", "--config", "/nonexistent/x.cfg"]).status.code(), Some(2));
    assert_eq!(sp4r(&["coherent", "--kind", "su3", "--k", "1", "--xi", "0.1"]).status.code(), Some(2));
    let out = sp4r(&["spectrum", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
