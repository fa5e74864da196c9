use std::path::Path;
use std::process::{Command, Output};

fn pp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pp")).current_dir(dir).args(args).output().expect("run pp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn construct_writes_explicit_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = pp(dir.path(), &["construct", "abelian:cyclic:2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("|P| = 8, |Q| = 16"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 17);

    let o = pp(dir.path(), &["construct", "counterexample:3", "-o", "ce3.pp"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let file = std::fs::read_to_string(dir.path().join("ce3.pp")).unwrap();
    assert!(file.contains("ppiped 9"));

    let o = pp(dir.path(), &["construct", "group:heis:2", "-o", "h.pp"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("strong"));
}

#[test]
fn round_trip_for_catalog_specs() {
    let dir = tempfile::tempdir().unwrap();
    for (i, spec) in ["abelian:cyclic:3", "abelian:prod:cyclic:2,cyclic:2", "group:S3", "coset:heis:2,F=center,Gamma=4"]
        .iter()
        .enumerate()
    {
        let name = format!("s{i}.pp");
        assert_eq!(code(&pp(dir.path(), &["construct", spec, "-o", &name])), 0, "{spec}");
        let o = pp(dir.path(), &["verify", &name]);
        assert_eq!(code(&o), 0, "{spec}: {}", stdout(&o));
    }
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    pp(dir.path(), &["construct", "abelian:cyclic:3", "-o", "c3.pp"]);
    let text = std::fs::read_to_string(dir.path().join("c3.pp")).unwrap();
    // drop the last oct, one line of a full Euclidean orbit
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    std::fs::write(dir.path().join("cut.pp"), lines.join("\n")).unwrap();
    let o = pp(dir.path(), &["verify", "cut.pp"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    assert_eq!(code(&pp(dir.path(), &["verify", "cut.pp", "--expect", "fail"])), 0);

    std::fs::write(dir.path().join("bad.pp"), "ppiped 3\n0 1 2\n").unwrap();
    let o = pp(dir.path(), &["verify", "bad.pp"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&pp(dir.path(), &["verify", "nosuch:1"])), 2);
    assert_eq!(code(&pp(dir.path(), &["verify", "group:S3", "--expect", "weak"])), 0);
    assert_eq!(code(&pp(dir.path(), &["verify", "group:S3", "--expect", "strong"])), 1);
}

#[test]
fn analyze_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    pp(dir.path(), &["construct", "counterexample:3", "-o", "ce3.pp"]);
    let o = pp(dir.path(), &["analyze", "ce3.pp"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("nil: false"));
    assert!(text.contains("s = 1: does not split") && text.contains("s = 2: does not split"));
    assert_eq!(code(&pp(dir.path(), &["analyze", "ce3.pp", "--expect", "nil"])), 1);
    assert_eq!(code(&pp(dir.path(), &["analyze", "abelian:cyclic:4", "--expect", "nil"])), 0);

    let o = pp(dir.path(), &["analyze", "group:S3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--quotient"));
    let o = pp(dir.path(), &["analyze", "group:S3", "--quotient"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("6 -> 2 points"));

    let o = pp(dir.path(), &["analyze", "ce3.pp", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nil"], false);
    assert_eq!(v["base"], serde_json::json!([3]));
}

#[test]
fn norm_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = pp(dir.path(), &["norm", "abelian:cyclic:4", "const:1", "--order", "2"]);
    assert_eq!(stdout(&o), "64.0000000000 0.00000000000 2.82842712475\n");
    let o = pp(dir.path(), &["norm", "abelian:cyclic:4", "delta:0", "--order", "3"]);
    assert_eq!(stdout(&o), "1.00000000000 0.00000000000 1.00000000000\n");
    let o = pp(dir.path(), &["norm", "abelian:cyclic:16", "random", "--oracle", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("oracle ") && lines[1].ends_with(" agree"));
    assert_eq!(lines[0].split(' ').nth(2), lines[1].split(' ').nth(1));

    std::fs::write(dir.path().join("f.txt"), "1 0\n-1 0\n1 0\n").unwrap();
    let o = pp(dir.path(), &["norm", "abelian:cyclic:3", "f.txt"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&pp(dir.path(), &["norm", "abelian:cyclic:4", "f.txt"])), 2);
    assert_eq!(code(&pp(dir.path(), &["norm", "abelian:cyclic:4", "const:1", "--order", "4"])), 2);
}

#[test]
fn determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = pp(dir.path(), &["norm", "abelian:cyclic:8", "random", "--order", "3", "--seed", "3"]);
    let b = pp(dir.path(), &["norm", "abelian:cyclic:8", "random", "--order", "3", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let a = pp(dir.path(), &["analyze", "counterexample:5"]);
    let b = pp(dir.path(), &["analyze", "counterexample:5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn embed_resolves_the_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    pp(dir.path(), &["construct", "counterexample:3", "-o", "ce3.pp"]);
    let o = pp(dir.path(), &["embed", "ce3.pp", "cyclic:9", "-o", "emb.pp", "--expect", "nil"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let emb = stdout(&o);
    assert!(emb.contains("nil: true"));
    // the descriptor reloads to the same analysis
    let again = pp(dir.path(), &["analyze", "emb.pp"]);
    assert!(emb.ends_with(&stdout(&again)));

    let base = stdout(&pp(dir.path(), &["analyze", "ce3.pp"]));
    let strip = |t: &str| -> Vec<String> {
        t.lines()
            .filter(|l| l.starts_with("s = ") || l.starts_with("nil"))
            .map(|l| l.split(':').next().unwrap().to_string())
            .collect()
    };
    assert_eq!(strip(&base), strip(&stdout(&again)));

    let o = pp(dir.path(), &["embed", "ce3.pp", "cyclic:2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("injective"));
    let o = pp(dir.path(), &["embed", "ce3.pp", "cyclic:3"]);
    assert!(stdout(&o).contains("nil: false"));
}
