use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gcgt(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcgt"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_then_make_random_tests() {
    let dir = tempfile::tempdir().unwrap();
    let o = gcgt(dir.path(), &["generate-graph", "--family", "cycle:4", "--out", "g.txt"]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("g.txt")).unwrap(), "4 4\n0 1\n1 2\n2 3\n0 3\n");

    let o = gcgt(
        dir.path(),
        &["make-tests", "--graph", "g.txt", "--method", "random", "--d", "1", "--tau", "5", "--seed", "4", "--out", "t.txt"],
    );
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("t.txt")).unwrap();
    assert!(text.starts_with("4 5\n"), "{text}");
}

#[test]
fn check_disjunct_reports_verdict_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("single.txt"), "3 3\n0\n1\n2\n").unwrap();
    let o = gcgt(dir.path(), &["check-disjunct", "--tests", "single.txt", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "DISJUNCT");

    fs::write(dir.path().join("pair.txt"), "3 2\n0 1\n2\n").unwrap();
    let o = gcgt(dir.path(), &["check-disjunct", "--tests", "pair.txt", "--d", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o);
    let (e, b) = line.trim().split_once(" | ").expect("witness line");
    let (e, b): (usize, usize) = (e.parse().unwrap(), b.parse().unwrap());
    assert!(matches!((e, b), (0, 1) | (1, 0)), "{line}");
}

#[test]
fn run_and_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.txt"), "4 3\n0 1 3\n0 2 3\n2\n").unwrap();
    let o = gcgt(dir.path(), &["run-tests", "--tests", "t.txt", "--defective", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "100");
    let o = gcgt(dir.path(), &["decode", "--tests", "t.txt", "--outcomes", "100"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn malformed_input_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.txt"), "3 2\n0 7\n1\n").unwrap();
    let o = gcgt(dir.path(), &["check-disjunct", "--tests", "bad.txt", "--d", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(gcgt(dir.path(), &["no-such-command"]).status.code(), Some(2));
    let o = gcgt(dir.path(), &["decode", "--tests", "missing.txt", "--outcomes", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn experiment_replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let o = gcgt(
        dir.path(),
        &[
            "experiment", "random-failures", "--graph", "fat_tree:4", "--d", "2", "--taus", "0:40:10", "--trials", "20",
            "--seed", "11", "--out", "a.csv", "--manifest", "m.json",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = gcgt(dir.path(), &["--threads", "1", "experiment", "replay", "--manifest", "m.json", "--out", "b.csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let a = fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.csv")).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("family,params,method,d,tau,trials,successes,p_hat,stderr,seed\n"));
    assert_eq!(text.lines().count(), 1 + 3 * 5);

    let o = gcgt(dir.path(), &["plot", "--csv", "a.csv", "--out-dir", "plots"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svgs: Vec<_> = fs::read_dir(dir.path().join("plots")).unwrap().collect();
    assert_eq!(svgs.len(), 1);
}

#[test]
fn lab_ruin_prints_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let o = gcgt(dir.path(), &["lab", "ruin", "--gamma", "0.4", "--a", "3", "--b", "2", "--trials", "2000", "--seed", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2, "{out}");
    let header: Vec<&str> = lines[0].split(',').collect();
    let row: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(header.len(), row.len());
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()].parse::<f64>().unwrap();
    assert!((col("bound") - col("oracle")).abs() < 1e-12);
    assert!((col("empirical") - col("bound")).abs() < 4.0 * col("stderr").max(0.01));
}
