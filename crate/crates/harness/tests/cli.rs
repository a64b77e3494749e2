use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_ahb");

fn write_config(dir: &std::path::Path, body: &str) -> std::path::PathBuf {
    let p = dir.join("cfg.toml");
    std::fs::write(&p, body).unwrap();
    p
}

const FREDHOLM: &str = r#"
name = "cli"

[problem]
kind = "fredholm"
nodes = 100

[regularizer]
kind = "quadratic"

[noise]
kind = "absolute"
levels = [0.01]
seed = 2

[[method]]
kind = "ahb"
tau = 1.01
beta_cap = inf
mu0 = 0.0196
step = "constant"

[[method]]
kind = "nu"
tau = 1.01
nu = 3
gamma_scale = 0.99
"#;

#[test]
fn run_check_and_list() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), FREDHOLM);
    let out = dir.path().join("out");

    let st = Command::new(BIN).arg("list-problems").output().unwrap();
    assert!(st.status.success());
    assert!(String::from_utf8_lossy(&st.stdout).contains("elliptic"));

    let st = Command::new(BIN).args(["check", "--config"]).arg(&cfg).output().unwrap();
    assert!(st.status.success());
    assert!(String::from_utf8_lossy(&st.stdout).contains("PASS fredholm adjoint"));

    let st = Command::new(BIN)
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .args(["--jobs", "2", "--seed", "5"])
        .output()
        .unwrap();
    assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 3);
    assert!(summary.lines().skip(1).all(|l| l.contains(",5,")));

    let st = Command::new(BIN)
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .args(["--max-iter", "2"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
}

#[test]
fn bad_config_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &FREDHOLM.replace("nodes = 100", "nodes = 100\nnode = 3"));
    let st = Command::new(BIN).args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&st.stderr).contains("unknown field"));
}

#[test]
fn elliptic_check_runs_taylor_test() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"
name = "ell"
[problem]
kind = "elliptic"
grid = 10
[regularizer]
kind = "tv"
kappa = 10
pdhg_iters = 50
[noise]
kind = "absolute"
levels = [0.001]
seed = 1
[[method]]
kind = "landweber"
tau = 1.05
mu0 = 0.005
mu1 = 80
eta = 0.01
step = "adaptive"
"#;
    let cfg = write_config(dir.path(), body);
    let st = Command::new(BIN).args(["check", "--config"]).arg(&cfg).output().unwrap();
    let stdout = String::from_utf8_lossy(&st.stdout);
    assert!(st.status.success(), "{stdout}");
    assert!(stdout.contains("PASS elliptic taylor"));
}
