use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use twolayer::Sentence;

fn twolayer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twolayer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn word_of_a_file_and_of_stdin() {
    let o = twolayer(&["word", &data("knuth10.net")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "12;122;122\n");

    let mut child = Command::new(env!("CARGO_BIN_EXE_twolayer"))
        .args(["word", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"n=4\n(1,2) (3,4)\n(1,3) (2,4)\n\nn=4\n(1,2) (3,4)\n-\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "122\n12;12\n");
}

#[test]
fn sentence_to_network_and_back() {
    let o = twolayer(&["net", "--n", "10", "12;122;122"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.txt");
    fs::write(&path, stdout(&o)).unwrap();
    let o = twolayer(&["word", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "12;122;122\n");
}

#[test]
fn list_to_file_matches_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rs13.txt");
    let o = twolayer(&[
        "list",
        "--n",
        "13",
        "--set",
        "RS",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.last(), Some(&"# count=212"));
    // sentence order compares word by word
    let parsed: Vec<Sentence> = lines[..lines.len() - 1]
        .iter()
        .map(|l| l.parse().unwrap())
        .collect();
    assert!(parsed.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(
        stdout(&twolayer(&["count", "--n", "13", "--set", "RS"])),
        "212\n"
    );
    assert_eq!(
        stdout(&twolayer(&["count", "--n", "13", "--set", "G"])),
        "568504\n"
    );
}

#[test]
fn export_writes_one_file_per_class() {
    for (n, expected) in [(16, 211), (17, 609)] {
        let dir = tempfile::tempdir().unwrap();
        let o = twolayer(&[
            "export",
            "--n",
            &n.to_string(),
            "--set",
            "R",
            "--dir",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), expected);
        let first = dir.path().join(format!("{n}_1_{}.net", {
            let list = stdout(&twolayer(&["list", "--n", &n.to_string(), "--set", "R"]));
            list.lines().next().unwrap().to_string()
        }));
        assert!(first.exists(), "{}", first.display());
    }
}

#[test]
fn table_formats_and_identities() {
    let o = twolayer(&["table", "--max", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.starts_with("n,G,S,RG,RS,R\n"));
    assert!(csv.contains("\n8,764,188,61,15,12\n"), "{csv}");
    let o = twolayer(&["table", "--min", "5", "--max", "6", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|R_n|"));
}

#[test]
fn verify_prints_a_matrix() {
    let o = twolayer(&["verify", "--max-n", "5", "--conjecture", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.contains("PASS")), "{out}");
    assert!(out.contains("no subsumption n=6"));
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.net");
    fs::write(&bad, "n=4\n(1,2) (3,4)\n(1,5)\n").unwrap();
    let o = twolayer(&["word", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    assert_eq!(
        twolayer(&["word", "/nonexistent/file.net"]).status.code(),
        Some(1)
    );
    assert_eq!(twolayer(&["count", "--n", "4"]).status.code(), Some(2));
    assert_eq!(
        twolayer(&["list", "--n", "4", "--set", "G", "--jobs", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(twolayer(&["net", "--n", "5", "122"]).status.code(), Some(2));
    assert_eq!(
        twolayer(&["list", "--n", "30", "--set", "S"]).status.code(),
        Some(3)
    );
    assert_eq!(
        twolayer(&["export", "--n", "5", "--set", "G"])
            .status
            .code(),
        Some(2)
    );
}
