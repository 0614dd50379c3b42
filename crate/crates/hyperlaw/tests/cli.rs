use std::path::Path;
use std::process::{Command, Output};

fn hyperlaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlaw")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sample_then_census_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    let out = hyperlaw(&["sample", "--d", "1", "--p", "1/n", "--n", "300", "--seed", "9", "--out", path(&file)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let h = hyperlaw::format::parse_hypergraph(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!((h.d(), h.n()), (1, 300));

    let census = hyperlaw(&["census", "--input", path(&file), "--l", "2"]);
    assert!(census.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&census)).unwrap();
    let counts = json["counts"].as_object().unwrap();
    let isolated = (0..300).filter(|&v| h.degree(v) == 0).count() as u64;
    assert_eq!(counts["v()"].as_u64().unwrap(), isolated);
}

#[test]
fn hex_and_decimal_seeds_agree() {
    let a = hyperlaw(&["sample", "--d", "2", "--p", "n^(-2)", "--n", "40", "--seed", "0x1f"]);
    let b = hyperlaw(&["sample", "--d", "2", "--p", "n^(-2)", "--n", "40", "--seed", "31"]);
    let c = hyperlaw(&["sample", "--d", "2", "--p", "n^(-2)", "--n", "40", "--seed", "32"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn classify_prints_clause() {
    let out = hyperlaw(&["classify", "--d", "1", "--p", "2*n^(-2)"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("clause: (ii)(a)"));
    let out = hyperlaw(&["classify", "--d", "2", "--p", "(2*log(n)+2*loglog(n))/n^2"]);
    assert!(stdout(&out).contains("clause: (ii)(b)"), "{}", stdout(&out));
    let out = hyperlaw(&["classify", "--d", "2", "--p", "(2*log(n)+loglog(n))/n^2"]);
    assert!(stdout(&out).contains("clause: (i)(f)"), "{}", stdout(&out));
}

#[test]
fn exit_codes() {
    assert_eq!(hyperlaw(&["--help"]).status.code(), Some(0));
    assert_eq!(hyperlaw(&["classify", "--d", "1", "--p", "n^("]).status.code(), Some(1));
    assert_eq!(hyperlaw(&["classify", "--d", "1"]).status.code(), Some(1));
    assert_eq!(hyperlaw(&["census", "--input", "/nonexistent/file"]).status.code(), Some(1));

    let base = ["verify", "--d", "1", "--p", "2*n^(-2)", "--n", "1000", "--seed", "7"];
    let ok = hyperlaw(&[&base[..], &["--trials", "3000"]].concat());
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let strict = hyperlaw(&[&base[..], &["--trials", "300", "--tv-tol", "0", "--rel-tol", "0"]].concat());
    assert_eq!(strict.status.code(), Some(2));
}

#[test]
fn verify_csv_report() {
    let out = hyperlaw(&[
        "verify", "--d", "1", "--p", "2*n^(-2)", "--n", "200,400", "--trials", "200", "--format", "csv",
    ]);
    let text = stdout(&out);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "n"));
    assert_eq!(rows.records().count(), 2);
}

#[test]
fn efgame_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    // a triangle and a path on three vertices
    std::fs::write(&a, "1 3\n0 1\n0 2\n1 2\n").unwrap();
    std::fs::write(&b, "1 3\n0 1\n1 2\n").unwrap();
    let out = hyperlaw(&["efgame", path(&a), path(&a), "--k", "3"]);
    assert!(out.status.success());
    let same = stdout(&out);
    let out = hyperlaw(&["efgame", path(&a), path(&b), "--k", "3", "--spoiler-move"]);
    assert!(out.status.success());
    assert_ne!(same, stdout(&out));
}

#[test]
fn catalog_json() {
    let out = hyperlaw(&["catalog", "--d", "1", "--l", "3"]);
    let rows: Vec<hyperlaw::format::CatalogEntry> = serde_json::from_str(&stdout(&out)).unwrap();
    let mut autos: Vec<u128> = rows.iter().map(|r| r.a).collect();
    autos.sort();
    assert_eq!(autos, [2, 6]);
}
