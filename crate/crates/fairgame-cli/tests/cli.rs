//! End-to-end tests of the `fairgame` binary: output text, exit codes, and
//! determinism across reruns and acceleration settings.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const ESCAPE_PAIR_FILE: &str = "\
fairgame v1
vertex q1 p1
vertex q2 p1
vertex q3 p1
vertex q4 p1
vertex q5 p0
vertex q6 p0
vertex q7 p0
edge q1 q1
edge q1 q2
edge q2 q2
edge q2 q3 live
edge q3 q3
edge q3 q6
edge q4 q4
edge q4 q3
edge q5 q1
edge q5 q3
edge q6 q2
edge q6 q7
edge q7 q4
condition rabin
G1: q1 q4
R1: q2 q5
G2: q3
R2: q1 q4 q7
";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write_game(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("test file written");
    path
}

#[test]
fn solve_prints_the_named_winning_region() {
    let dir = tempfile::tempdir().unwrap();
    let game = write_game(dir.path(), "escape.game", ESCAPE_PAIR_FILE);
    let out = run(&["solve", game.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "winning: q1 q2 q3 q4 q5 q6 q7\n");
}

#[test]
fn acceleration_and_reruns_leave_the_output_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let game = write_game(dir.path(), "escape.game", ESCAPE_PAIR_FILE);
    let file = game.to_str().unwrap();
    let baseline = run(&["solve", file, "--frames"]);
    assert!(baseline.status.success());
    for accel in ["0", "2", "4", "16"] {
        let out = run(&["solve", file, "--frames", "--accel", accel]);
        assert!(out.status.success());
        assert_eq!(out.stdout, baseline.stdout, "accel {accel}");
    }
    let rerun = run(&["solve", file, "--frames"]);
    assert_eq!(rerun.stdout, baseline.stdout);
}

#[test]
fn exit_codes_separate_usage_parse_and_validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&[]).status.code(), Some(1), "missing subcommand is usage");
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let broken = write_game(dir.path(), "broken.game", "not a game\n");
    let out = run(&["solve", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "parse errors are validation failures");

    let no_pairs = write_game(
        dir.path(),
        "nopairs.game",
        "fairgame v1\nvertex a p0\nedge a a\ncondition rabin\n",
    );
    let out = run(&["solve", no_pairs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let escape = write_game(dir.path(), "escape.game", ESCAPE_PAIR_FILE);
    let out = run(&["solve", escape.to_str().unwrap(), "--jobs", "0"]);
    assert_eq!(out.status.code(), Some(1), "a zero worker cap is a usage error");
}

#[test]
fn check_cross_validates_small_games_against_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let escape = write_game(dir.path(), "escape.game", ESCAPE_PAIR_FILE);
    let out = run(&["check", escape.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("check passed"));

    let bench = dir.path().join("bench.game");
    let out = run(&["bench", "--seed", "11", "--n", "7", "--k", "2", "--out", bench.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["check", bench.to_str().unwrap()]);
    assert!(out.status.success(), "generated games agree with the oracle");
}

#[test]
fn bench_is_deterministic_and_produces_solvable_files() {
    let first = run(&["bench", "--seed", "5", "--n", "9", "--k", "2"]);
    let second = run(&["bench", "--seed", "5", "--n", "9", "--k", "2"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let dir = tempfile::tempdir().unwrap();
    let game = write_game(dir.path(), "bench.game", &stdout(&first));
    let out = run(&["solve", game.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("winning:"));
}

#[test]
fn derand_preserves_the_almost_sure_region() {
    let dir = tempfile::tempdir().unwrap();
    let mdp = dir.path().join("mdp.game");
    let out = run(&["bench", "--mdp", "--seed", "3", "--n", "7", "--out", mdp.to_str().unwrap()]);
    assert!(out.status.success());

    let direct = run(&["solve", mdp.to_str().unwrap()]);
    assert!(direct.status.success());

    let reduced = dir.path().join("reduced.game");
    let out = run(&["derand", mdp.to_str().unwrap(), "--out", reduced.to_str().unwrap()]);
    assert!(out.status.success());
    let via_reduction = run(&["solve", reduced.to_str().unwrap()]);
    assert!(via_reduction.status.success());
    assert_eq!(via_reduction.stdout, direct.stdout);

    // Derandomizing a deterministic file is the identity.
    let twice = run(&["derand", reduced.to_str().unwrap()]);
    assert_eq!(stdout(&twice), std::fs::read_to_string(&reduced).unwrap());

    // The stochastic file itself also passes the oracle cross-check.
    let out = run(&["check", mdp.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn strategy_files_hold_a_move_per_winning_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let game = write_game(dir.path(), "escape.game", ESCAPE_PAIR_FILE);
    let strat = dir.path().join("strategy.txt");
    let out = run(&["solve", game.to_str().unwrap(), "--strategy", strat.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&strat).unwrap();
    assert!(text.contains("q6 -> q7"), "frozen escape move, got:\n{text}");
    assert!(text.contains("q5 -> q3"), "frozen escape move, got:\n{text}");
}

#[test]
fn steps_prints_the_work_table() {
    let dir = tempfile::tempdir().unwrap();
    let game = write_game(dir.path(), "escape.game", ESCAPE_PAIR_FILE);
    let out = run(&["steps", game.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("steps:"));
    assert!(text.contains("steps.total="));
    assert!(text.contains("iter."));
}

#[test]
fn stats_adds_machine_readable_lines_after_the_tables() {
    let dir = tempfile::tempdir().unwrap();
    let game = write_game(dir.path(), "escape.game", ESCAPE_PAIR_FILE);
    let out = run(&["solve", game.to_str().unwrap(), "--stats"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("winning:"));
    assert!(text.contains("steps:\n"));
    assert!(text.contains("steps.total="));
}
