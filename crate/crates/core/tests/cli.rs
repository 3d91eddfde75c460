use std::path::Path;
use std::process::{Command, Output};

fn varbudget(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_varbudget")).args(args).output().expect("spawn varbudget")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const SMALL: &[&str] = &["--pattern", "shock", "--policy", "restarted-ogd", "--sigma", "0.3", "--reps", "5", "--seed", "7"];

#[test]
fn run_writes_one_row() {
    let mut args = vec!["run"];
    args.extend_from_slice(SMALL);
    args.extend_from_slice(&["--horizon", "500"]);
    let o = varbudget(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], varbudget::harness::CSV_HEADER);
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("shock,restarted-ogd,grad,0.3,500,5,"));
}

#[test]
fn sweep_is_byte_identical_and_refits() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let mut args = vec!["sweep"];
        args.extend_from_slice(SMALL);
        args.extend_from_slice(&["--horizons", "200,400,800,1600", "--out", out.to_str().unwrap()]);
        assert_eq!(varbudget(&args).status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let fit_row = text.lines().last().unwrap();
    let fields: Vec<&str> = fit_row.split(',').collect();
    assert!(fields[4].is_empty() && !fields[9].is_empty());

    let o = varbudget(&["fit", "--in", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let refit = stdout(&o);
    let refit_fields: Vec<&str> = refit.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(refit_fields[9..], fields[9..]);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    std::fs::write(&cfg, "pattern = linear\npolicy = fixed-ogd:0.01\nsigma = 1\nhorizon = 300\nreps = 3\n").unwrap();
    let o = varbudget(&["run", "--config", cfg.to_str().unwrap(), "--sigma", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("linear,fixed-ogd:0.01,grad,0.1,300,3,"));
}

#[test]
fn invalid_config_exits_1() {
    for args in [
        vec!["run", "--pattern", "shock", "--policy", "ogd", "--feedback", "cost", "--horizon", "100"],
        vec!["run", "--pattern", "tsunami", "--policy", "ogd", "--horizon", "100"],
        vec!["run", "--pattern", "shock", "--policy", "ogd", "--horizon", "100", "--reps", "0"],
        vec!["run", "--pattern", "shock", "--policy", "ogd"],
        vec!["run", "--bogus-flag"],
        vec!["sweep", "--pattern", "shock", "--policy", "ogd", "--horizons", "300,200,400"],
    ] {
        let o = varbudget(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn numeric_fault_exits_2_and_still_writes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.csv");
    let o = varbudget(&[
        "run", "--pattern", "shock", "--policy", "restarted-ogd", "--sigma", "1e308", "--horizon", "50", "--reps", "3",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn gen_emits_a_loadable_sequence() {
    let dir = tempfile::tempdir().unwrap();
    for pattern in ["shock", "decay", "linear", "adv-convex", "adv-strong", "ogd-failure", "oracle-gap"] {
        let path = dir.path().join(format!("{pattern}.seq"));
        let o = varbudget(&["gen", "--pattern", pattern, "--horizon", "400", "--seed", "3", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{pattern}: {}", String::from_utf8_lossy(&o.stderr));
        let seq = load(&path);
        assert_eq!(seq.horizon(), 400);
    }
}

fn load(path: &Path) -> varbudget::FunctionSequence {
    let file = std::io::BufReader::new(std::fs::File::open(path).unwrap());
    varbudget::seqfile::read_sequence(file).unwrap()
}
