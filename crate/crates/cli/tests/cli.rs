use std::io::Write;
use std::process::{Command, Output, Stdio};

fn nonrep(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nonrep"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRIANGLE: &str = "graph undirected\n# three colours\nedge a b L1\nedge b c L2\nedge c a L3\n";
const SINGLES: &str =
    "..3.2.6..9..3.5..1..18.64....81.29..7.......8..67.82....26.95..8..2.3..9..5.1.3..";

#[test]
fn triangle_cycles_list_three_edges() {
    let o = nonrep(&["graph", "cycles", "-"], TRIANGLE);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "edge a b L1\nedge b c L2\nedge c a L3\n");
}

#[test]
fn reach_and_shortest() {
    let path = "graph directed\nedge a b 1\nedge b c 1\n";
    let o = nonrep(
        &["graph", "reach", "-", "--from", "a", "--label", "1"],
        path,
    );
    assert_eq!(stdout(&o), "edge a b 1\n");
    let o = nonrep(
        &["graph", "shortest", "-", "--from", "a", "--to", "c"],
        path,
    );
    assert_eq!(o.status.code(), Some(1));
    let o = nonrep(
        &["graph", "shortest", "-", "--from", "a", "--to", "c"],
        TRIANGLE,
    );
    assert_eq!(stdout(&o), "length 1\nedge a c L3\n");
}

#[test]
fn simple_path_and_cycles() {
    let square = "graph undirected\nedge a b 0\nedge b c 1\nedge c d 0\nedge d a 1\n";
    let o = nonrep(
        &[
            "graph",
            "simple-path",
            "-",
            "--from",
            "a",
            "--to",
            "c",
            "--format",
            "structured",
        ],
        square,
    );
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["length"], 2);
    let o = nonrep(&["graph", "simple-cycles", "-"], square);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn directed_simple_path_is_refused() {
    let o = nonrep(
        &[
            "graph",
            "simple-path",
            "-",
            "--from",
            "a",
            "--to",
            "b",
            "--directed",
        ],
        TRIANGLE,
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NP-complete"));
}

#[test]
fn solve_prints_trace_and_grid() {
    let o = nonrep(&["sudoku", "solve", "-", "--trace"], SINGLES);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.lines().next().unwrap().starts_with("nakedSingle") || out.starts_with("hiddenSingle")
    );
    assert!(out.contains(
        "483921657967345821251876493548132976729564138136798245372689514814253769695417382"
    ));
    assert!(out.ends_with("solved tier 0\n"));
}

#[test]
fn tier_cap_can_leave_a_puzzle_stuck() {
    let hard = "4.....8.5.3..........7......2.....6.....8.4......1.......6.3.7.5..2.....1.4......";
    let o = nonrep(&["sudoku", "solve", "-", "--max-tier", "0"], hard);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("stuck"));
}

#[test]
fn generation_is_deterministic() {
    let a = nonrep(&["sudoku", "generate", "--seed", "9", "--count", "2"], "");
    let b = nonrep(&["sudoku", "generate", "--seed", "9", "--count", "2"], "");
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 2);
}

#[test]
fn grade_rejects_multiple_solutions() {
    let o = nonrep(&["sudoku", "grade", "-"], &".".repeat(81));
    assert_eq!(o.status.code(), Some(1));
    let o = nonrep(&["sudoku", "grade", "-"], SINGLES);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn stats_are_the_same_for_any_job_count() {
    let one = nonrep(
        &[
            "sudoku",
            "stats",
            "--count",
            "12",
            "--seed",
            "5",
            "--jobs",
            "1",
            "--format",
            "structured",
        ],
        "",
    );
    let two = nonrep(
        &[
            "sudoku",
            "stats",
            "--count",
            "12",
            "--seed",
            "5",
            "--jobs",
            "2",
            "--format",
            "structured",
        ],
        "",
    );
    assert_eq!(one.stdout, two.stdout);
    let j: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(j["total"], 12);
    assert_eq!(j["published_unsolvable_fraction"], 0.044);
}

#[test]
fn fixture_reports_edge_count() {
    let o = nonrep(
        &["sudoku", "fixture", "--box", "3", "--format", "structured"],
        "",
    );
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["bivalueEdges"], 84);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        nonrep(&["sudoku", "solve", "-", "--bogus"], SINGLES)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nonrep(&["graph", "cycles", "-"], "graph sideways\n")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nonrep(&["sudoku", "solve", "-"], "12").status.code(),
        Some(2)
    );
}

#[test]
fn help_names_the_input_format() {
    for sub in [
        ["graph", "cycles"],
        ["graph", "simple-path"],
        ["sudoku", "solve"],
        ["sudoku", "grade"],
    ] {
        let o = nonrep(&[sub[0], sub[1], "--help"], "");
        assert!(stdout(&o).contains("INPUT is a"), "{sub:?}");
    }
}
