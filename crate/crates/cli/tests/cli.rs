use depcross_cli::{run_from_args, EXIT_CONFIG, EXIT_INPUT, EXIT_OK};
use std::path::{Path, PathBuf};
use std::process::Command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(format!("{name}.txt")).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_from_args(std::iter::once("depcross").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn body(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn empty_input_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.txt", "");
    let (code, out, _) = run(&["analyze", &empty]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(body(&out), vec![depcross::io::CSV_COLUMNS.join(",")]);
    assert!(out.starts_with("# tool: depcross "));
    assert!(out.contains("# seed: 1\n"));
}

#[test]
fn bad_sentences_are_fatal_unless_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = write(dir.path(), "mixed.txt", "id=bad\nn=3\n1 2\n\nid=good\nn=3\n1 2\n2 3\n");
    let (code, out, err) = run(&["analyze", &mixed]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("bad"), "{err}");
    let (code, out, err) = run(&["analyze", &mixed, "--skip-bad"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.starts_with("skipped: "));
    let rows = body(&out);
    assert_eq!(rows.len(), 2);
    assert!(rows[1].starts_with("good,3,"));
    let (code, _, _) = run(&["analyze", "/nonexistent/file.txt"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn configuration_errors() {
    let input = data("woman-in-situ");
    for bad in [
        vec!["analyze", &input, "--max-exhaustive-n", "13"],
        vec!["analyze", &input, "--max-exhaustive-n", "3"],
        vec!["analyze", &input, "--samples", "0"],
        vec!["analyze", &input, "--alpha", "1.5"],
        vec!["analyze", &input, "--emit", "xml"],
        vec!["analyze", &input, "--bogus"],
        vec!["verify", "--n-max", "9"],
        vec!["simulate", "--n-min", "2"],
        vec!["curve", &input, "--samples", "0"],
    ] {
        assert_eq!(run(&bad).0, EXIT_CONFIG, "{bad:?}");
    }
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("analyze"));
}

#[test]
fn json_carries_exact_values() {
    let (code, out, _) = run(&["analyze", &data("woman-in-situ"), "--emit", "json"]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["metadata"]["command"], "analyze");
    let s = &doc["sentences"][0];
    assert_eq!(s["sentence_id"], "woman-in-situ");
    assert_eq!(s["mean_k2"]["exact"], "24/7");
    assert_eq!(s["r"], 548);
    assert_eq!(s["method"], "exhaustive");
    assert!(s["seed"].is_null());
    assert!((s["e_c_given_d"]["value"].as_f64().unwrap() - 2.8).abs() < 0.05);
}

#[test]
fn conllu_input_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let text = "# sent_id = tiny\n1\ta\t_\t_\t_\t_\t2\tdet\t_\t_\n2\tb\t_\t_\t_\t_\t0\troot\t_\t_\n3\t.\t_\t_\t_\t_\t2\tpunct\t_\t_\n\n";
    let path = write(dir.path(), "tiny.conllu", text);
    let (code, out, _) = run(&["analyze", &path]);
    assert_eq!(code, EXIT_OK);
    assert!(body(&out)[1].starts_with("tiny,3,"));
    let (_, out, _) = run(&["analyze", &path, "--drop-punct"]);
    assert!(body(&out)[1].starts_with("tiny,2,"));
    let (code, _, _) = run(&["analyze", &path, "--format", "edgelist"]);
    assert_eq!(code, EXIT_INPUT);
}

fn curve_rows(out: &str) -> Vec<(u64, u64, f64)> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(out.as_bytes());
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn curve_of_the_relative_clause_tree() {
    let (code, out, _) = run(&["curve", &data("woman-in-situ")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# E0_D: 16\n"));
    assert!(out.contains("# E0_C: 3\n"));
    let rows = curve_rows(&out);
    assert_eq!(rows.first().unwrap().0, 7);
    assert_eq!(rows.last().unwrap().0, 25);
    assert_eq!(rows.iter().map(|r| r.1).sum::<u64>(), 5040);
    let r15 = rows.iter().find(|r| r.0 == 15).unwrap();
    assert_eq!(r15.1, 548);
    // weighted mean of the curve is E0[C]
    let mean: f64 = rows.iter().map(|r| r.1 as f64 * r.2).sum::<f64>() / 5040.0;
    assert!((mean - 3.0).abs() < 1e-9);
}

#[test]
fn curve_of_a_star_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let star = write(dir.path(), "star.txt", "id=s\nn=6\n1 2\n1 3\n1 4\n1 5\n1 6\n");
    let (code, out, _) = run(&["curve", &star, "--sentence", "s"]);
    assert_eq!(code, EXIT_OK);
    assert!(curve_rows(&out).iter().all(|r| r.2 == 0.0));
    let (code, _, err) = run(&["curve", &star, "--sentence", "missing"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("missing"));
}

#[test]
fn exact_curve_refuses_large_trees() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("n=13\n");
    for v in 2..=13 {
        text += &format!("{} {v}\n", v - 1);
    }
    let path = write(dir.path(), "path.txt", &text);
    let (code, _, err) = run(&["curve", &path, "--exact"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("n = 13") || err.contains("13"), "{err}");
    let (code, out, _) = run(&["curve", &path, "--samples", "20000"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# method: monte_carlo (20000 samples)"));
}

#[test]
fn simulate_boundary_and_sampling() {
    let (code, out, _) = run(&["simulate", "--n-min", "3", "--n-max", "4", "--trials", "500"]);
    assert_eq!(code, EXIT_OK);
    let rows = body(&out);
    assert_eq!(rows[0], "n,E0_linear,E0_quasi,E_E0_random,sampled_mean,sampled_se,note");
    assert_eq!(rows[1], "3,0,0,0,0,0,no crossings possible below n = 4");
    assert!(rows[2].starts_with("4,0.3333333333333333,0.3333333333333333,0.25,"));
    let again = run(&["simulate", "--n-min", "3", "--n-max", "4", "--trials", "500"]).1;
    assert_eq!(out, again);
}

#[test]
fn verify_small_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.csv");
    let (code, stdout, _) = run(&["verify", "--n-max", "5", "--identity-n-max", "12", "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.contains("# failed_checks: 0\n"));
    assert!(text.contains("self_test_forged_k2_detected,6,1,0,pass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_depcross");
    let ok = Command::new(bin).args(["analyze", &data("woman-extraposed")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("woman-extraposed,7,3.4,1,10,9,7,25,3,0.22,2.2,0.13,1.1,0.011,0.69,0.75,0.43,1,102,exhaustive,,"));
    let usage = Command::new(bin).args(["analyze", "--samples", "x"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let missing = Command::new(bin).args(["analyze", "/nonexistent"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
}
