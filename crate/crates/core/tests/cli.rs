use std::path::Path;
use std::process::{Command, Output};

use cyclic_ldpc::alist::parse_alist;
use cyclic_ldpc::search::CodeRecord;

const T51: &str = "1+x^3+x^6+x^{12}+x^{17}+x^{24}+x^{27}+x^{34}+x^{39}+x^{45}+x^{48}";
const T93: &str = "1+x^2+x^8+x^{31}+x^{32}+x^{35}+x^{47}";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-ldpc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn records(o: &Output) -> Vec<CodeRecord> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in {report}"))
}

#[test]
fn cosets_listing() {
    let o = run(&["cosets", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{0}\n{1,2}\n");
    let o = run(&["cosets", "--n", "21", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn factor_listing() {
    let o = run(&["factor", "--n", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let degrees: Vec<&str> = text.lines().map(|l| l.split(", ").nth(2).unwrap()).collect();
    assert_eq!(degrees, ["1", "3", "3"]);

    let o = run(&["factor", "--n", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("even"), "{}", stderr(&o));
}

#[test]
fn search_at_printed_hamming_parameters() {
    let o = run(&["search", "--n", "7", "--rmin", "0.4", "--d", "2", "--delta", "1"]);
    assert!(o.status.success());
    let ks: Vec<usize> = records(&o).iter().map(|r| r.k).collect();
    // 4-dimensional codes have r_theta = 2, which the strict bound r > d = 2 excludes
    assert_eq!(ks, [3, 3]);
    assert!(stderr(&o).contains("records=2"));
}

#[test]
fn search_finds_hamming_with_admitting_bounds() {
    let o = run(&["search", "--n", "7", "--rmin", "0.4", "--d", "1", "--delta", "2"]);
    let recs = records(&o);
    assert!(recs.iter().any(|r| r.k == 4 && r.g.to_string() == "1+x+x^3"));
}

#[test]
fn search_difference_set_code() {
    let o = run(&["search", "--n", "21", "--rmin", "0.5", "--d", "5"]);
    assert!(o.status.success());
    assert!(!records(&o).iter().any(|r| r.k == 11 && r.weight == 5));

    let o = run(&["search", "--n", "21", "--rmin", "0.5", "--d", "4", "--delta", "1"]);
    let recs = records(&o);
    assert!(recs.iter().any(|r| r.k == 11 && r.weight == 5 && r.orthogonal));
}

#[test]
fn over_constrained_search() {
    let o = run(&["search", "--n", "9", "--rmin", "0.9", "--d", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
}

#[test]
fn search_budget_reports_partial() {
    let o = run(&["search", "--n", "63", "--delta", "6", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("partial=true"));
    assert!(stderr(&o).contains("nodes=5"));
}

#[test]
fn catalog_reruns_add_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("codes.jsonl");
    let cat = cat.to_str().unwrap();
    let args = ["search", "--n", "45", "--rmin", "0.2", "--d", "2", "--delta", "4", "--catalog", cat];
    let first = run(&args);
    assert!(first.status.success());
    let n = records(&first).len();
    assert!(n > 0);
    assert!(stderr(&first).contains(&format!("catalog_added={n} ")));
    let second = run(&args);
    assert!(stderr(&second).contains(&format!("catalog_added=0 catalog_skipped={n}")));
    assert_eq!(std::fs::read_to_string(cat).unwrap().lines().count(), n);
}

#[test]
fn analyze_table_rows() {
    let o = run(&["analyze", "--u", T93, "--n", "93", "--budget", "1"]);
    assert!(o.status.success());
    let r = stdout(&o);
    assert_eq!(field(&r, "(n,k)"), "(93,47)");
    assert_eq!(field(&r, "weight"), "7");
    assert_eq!(field(&r, "orthogonal"), "true");
    assert_eq!(field(&r, "idempotent"), "false");

    let o = run(&["analyze", "--u", T51, "--n", "51", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k"], 26);
    assert_eq!(v["dmin"], 10);
    assert_eq!(v["bch_run"], 9);
    assert_eq!(v["bch_bound"], 10);
}

#[test]
fn analyze_rejects_bad_input() {
    let o = run(&["analyze", "--u", "1", "--n", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dimension zero"));
    let o = run(&["analyze", "--u", "1+y", "--n", "7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn export_alist_full_and_reduced() {
    let o = run(&["export-alist", "--u", "1+x+x^2+x^4", "--n", "7"]);
    assert!(o.status.success());
    let h = parse_alist(&stdout(&o)).unwrap();
    assert_eq!((h.rows(), h.cols()), (7, 7));
    assert!(h.row_weights().iter().all(|&w| w == 4));

    let o = run(&["export-alist", "--u", "1+x+x^2+x^4", "--n", "7", "--reduced"]);
    let h = parse_alist(&stdout(&o)).unwrap();
    assert_eq!((h.rows(), h.to_dense().rank()), (3, 3));

    let o = run(&["export-alist", "--u", "1", "--n", "4"]);
    assert_eq!(stdout(&o), "4 4\n1 1\n1 1 1 1\n1 1 1 1\n1\n2\n3\n4\n1\n2\n3\n4\n");
}

#[test]
fn export_from_record_file() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("rec.jsonl");
    let o = run(&["search", "--n", "21", "--rmin", "0.5", "--d", "4", "--delta", "1"]);
    std::fs::write(&rec, stdout(&o)).unwrap();
    let first = &records(&o)[0];
    let out = dir.path().join("h.alist");
    let o = run(&[
        "export-alist",
        "--record",
        rec.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let h = parse_alist(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(h.rows(), 21);
    assert!(h.row_weights().iter().all(|&w| w == first.weight));
}

#[test]
fn simulate_high_snr_and_determinism() {
    let args = ["simulate", "--u", "1+x+x^2+x^4", "--n", "7", "--snr", "20", "--max-frames", "10000"];
    let a = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    let out = stdout(&a);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("ebn0_db,frames,frame_errors,fer,ber,avg_iterations"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[1..3], ["10000", "0"]);
    assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);

    let noisy = ["simulate", "--u", "1+x+x^2+x^4", "--n", "7", "--snr", "-1,1.5", "--seed", "9", "--max-frames", "3000"];
    assert_eq!(stdout(&run(&noisy)), stdout(&run(&noisy)));
    let seq = [&["--sequential"][..], &noisy[..]].concat();
    assert_eq!(stdout(&run(&seq)), stdout(&run(&noisy)));
}

#[test]
fn simulate_from_alist_matches_polynomial_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.alist");
    let f = file.to_str().unwrap();
    run(&["export-alist", "--u", "1+x+x^2+x^4", "--n", "7", "--out", f]);
    let common = ["--snr", "2", "--seed", "4", "--max-frames", "2000"];
    let a = run(&[&["simulate", "--alist", f][..], &common[..]].concat());
    let b = run(&[&["simulate", "--u", "1+x+x^2+x^4", "--n", "7"][..], &common[..]].concat());
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn simulate_missing_file() {
    let o = run(&["simulate", "--alist", "/nonexistent/h.alist", "--snr", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr(&o);
    assert!(e.starts_with("error: /nonexistent/h.alist"), "{e}");
    assert!(!Path::new("/nonexistent/h.alist").exists());
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["search"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--u", "1+x", "--n", "3", "--snr", "1", "--decoder", "bogus"]).status.code(), Some(2));
    assert!(run(&["--help"]).status.success());
}
