//! Black-box tests of the `seqram` binary: exit codes and rendered output
//! for every subcommand, against both healthy and deliberately damaged
//! rule files.

use std::path::PathBuf;
use std::process::Command;

use seqram::cli::EMBEDDED_EXAMPLE;
use seqram::rulefile::RuleFile;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_seqram"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

struct Fixture {
    _dir: tempfile::TempDir,
    path: PathBuf,
}

impl Fixture {
    fn str_path(&self) -> &str {
        self.path.to_str().unwrap()
    }
}

fn write_fixture(name: &str, contents: &str) -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    Fixture { _dir: dir, path }
}

fn worked_example_file() -> Fixture {
    write_fixture("beverages.json", EMBEDDED_EXAMPLE)
}

#[test]
fn validate_accepts_the_worked_example() {
    let f = worked_example_file();
    let (code, stdout, _) = run(&["validate", f.str_path()]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("monotonicity: ok"));
    assert!(stdout.contains("non-degeneracy: ok"));
    assert!(stdout.contains("completeness: ok"));
}

#[test]
fn validate_rejects_a_degenerate_file_with_exit_one() {
    let mut doc = RuleFile::parse(EMBEDDED_EXAMPLE).unwrap();
    doc.attention
        .retain(|e| !(e.menu == ["A", "B"] && e.consider == ["A"]));
    let f = write_fixture("degenerate.json", &doc.to_json().unwrap());
    let (code, stdout, _) = run(&["validate", f.str_path()]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("total mass 0.9"));
}

#[test]
fn malformed_json_exits_two() {
    let f = write_fixture("broken.json", "{ not json");
    let (code, _, stderr) = run(&["validate", f.str_path()]);
    assert_eq!(code, 2, "{stderr}");
    assert!(stderr.contains("parse error"));
}

#[test]
fn unknown_alternative_exits_two() {
    let f = worked_example_file();
    let (code, _, stderr) = run(&["ram", f.str_path(), "--menu", "A,Z"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown alternative"));
}

#[test]
fn uncovered_menu_exits_one() {
    // a file that stores only the full menu: pairs are uncovered
    let mut doc = RuleFile::parse(EMBEDDED_EXAMPLE).unwrap();
    doc.attention.retain(|e| e.menu.len() == 3);
    let f = write_fixture("sparse.json", &doc.to_json().unwrap());
    let (code, _, stderr) = run(&["ram", f.str_path(), "--menu", "A,D"]);
    assert_eq!(code, 1, "{stderr}");
    assert!(stderr.contains("does not cover"));
}

#[test]
fn ram_prints_the_worked_distribution() {
    let f = worked_example_file();
    let (code, stdout, _) = run(&["ram", f.str_path(), "--menu", "A,B,D"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("0.600000"), "{stdout}");
    assert!(stdout.contains("0.400000"));

    let (code, stdout, _) = run(&["--exact", "ram", f.str_path(), "--menu", "A,B"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("0.900000000000"), "{stdout}");
}

#[test]
fn seq_traces_stages_and_reaches_the_compound_probability() {
    let f = worked_example_file();
    let (code, stdout, _) = run(&["seq", f.str_path(), "--order", "A,B,D"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("stage"), "{stdout}");
    assert!(stdout.contains("0.810000"), "{stdout}");

    // right nesting reshuffles the stages but stays a distribution
    let (code, stdout, _) = run(&[
        "seq",
        f.str_path(),
        "--order",
        "A,B,D",
        "--assoc",
        "right",
        "--no-choice",
        "bye",
    ]);
    assert_eq!(code, 0, "{stdout}");
}

#[test]
fn compare_reports_the_tournament_advantage() {
    let f = worked_example_file();
    let (code, stdout, _) = run(&["compare", f.str_path(), "--order", "A,B,D"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("SEQ-dominant"), "{stdout}");
    assert!(stdout.contains("0.810000"));
    assert!(stdout.contains("0.600000"));
    assert!(stdout.contains("0.210000"));
}

#[test]
fn sweep_prints_the_exact_break_even() {
    let (code, stdout, _) = run(&[
        "sweep",
        "--p-grid",
        "0.7",
        "--n",
        "3",
        "--uplift",
        "threshold",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("0.765286"), "{stdout}");
    assert!(stdout.contains("homogeneous"));
    assert!(stdout.contains("threshold"));
}

#[test]
fn search_on_full_attention_rules_confirms_equivalence() {
    let (code, stdout, _) = run(&[
        "search",
        "--hypothesis",
        "equivalence",
        "--trials",
        "25",
        "--seed",
        "11",
        "--family",
        "full-attention",
    ]);
    assert_eq!(code, 0, "{stdout}");
    let violations = stdout
        .lines()
        .find(|l| l.trim_start().starts_with("violations"))
        .expect("violations row");
    assert!(violations.trim_end().ends_with('0'), "{stdout}");
}

#[test]
fn search_rejects_unknown_hypothesis_names() {
    let (code, _, stderr) = run(&["search", "--hypothesis", "levitation"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown hypothesis"));
}

#[test]
fn axioms_surface_the_substantive_regularity_failure() {
    let f = worked_example_file();
    let (code, stdout, _) = run(&["axioms", f.str_path()]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("A4"), "{stdout}");
    assert!(stdout.contains("FAILED"));
    assert!(stdout.contains("A4 witness: pi(D"));
}

#[test]
fn reproduce_exits_zero_with_every_quantity_matched() {
    let (code, stdout, _) = run(&["reproduce"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("reproduction ok"));
    assert!(!stdout.contains("NO"));
    let (code, stdout, _) = run(&["--exact", "--csv", "reproduce"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("quantity,reference,computed,match"), "{stdout}");
}

#[test]
fn csv_mode_is_machine_readable() {
    let f = worked_example_file();
    let (code, stdout, _) = run(&["--csv", "ram", f.str_path(), "--menu", "A,B"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "alternative,probability");
    assert_eq!(lines[1], "A,0.900000");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["seq", "nonexistent.json"]);
    assert_eq!(code, 2); // missing required --order
}
