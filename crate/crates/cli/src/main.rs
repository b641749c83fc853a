//! `nonrep`: nonrepetitive path queries on labeled graphs, and a rule-based
//! Sudoku solver, generator and grader built on them.

use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nonrep::graph::{Dir, EdgeId, FlagLabeledGraph, Label, VertexId};
use nonrep::nr::NrGraph;
use nonrep::simple::{nonrep_simple_path, simple_cycle_edges};
use nonrep::sudoku::gen::{
    self, batch_stats_with, dense_bivalue_fixture, generate, Execution, Grade, GradeError,
};
use nonrep::sudoku::{solve, Board, Outcome};

#[derive(Parser)]
#[command(
    name = "nonrep",
    version,
    about = "Nonrepetitive paths in labeled graphs, and Sudoku rules built on them"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Queries on flag-labeled graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Solve, generate and grade Sudoku puzzles.
    #[command(subcommand)]
    Sudoku(SudokuCmd),
}

const GRAPH_FORMAT: &str =
    "INPUT is a graph file (`-` for stdin): a first line `graph directed` or \
`graph undirected`, then `edge <u> <v> <label>` or `flagedge <u> <v> <labelAtU> <labelAtV>` lines; \
`#` starts a comment.";

const BOARD_FORMAT: &str = "INPUT is a board (`-` for stdin): 81 characters of digits and `.`/`0` for a \
9x9 grid (whitespace ignored), or a header `B n` followed by n*n whitespace-separated values for box side B.";

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// JSON
    Structured,
}

#[derive(Args)]
struct Out {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Edges lying on some closed nonrepetitive walk, one per line.
    #[command(after_help = GRAPH_FORMAT)]
    Cycles {
        input: String,
        #[command(flatten)]
        out: Out,
    },
    /// Edge traversals reachable by nonrepetitive walks that leave FROM by an edge labeled LABEL there, those first edges included.
    #[command(after_help = GRAPH_FORMAT)]
    Reach {
        input: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        label: String,
        #[command(flatten)]
        out: Out,
    },
    /// A shortest nonrepetitive walk from FROM to TO; exit 1 if none.
    #[command(after_help = GRAPH_FORMAT)]
    Shortest {
        input: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        out: Out,
    },
    /// A nonrepetitive simple path from FROM to TO in an undirected graph; exit 1 if none.
    #[command(after_help = GRAPH_FORMAT)]
    SimplePath {
        input: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Ask for the directed problem (refused: it is NP-complete).
        #[arg(long)]
        directed: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Edges lying on some nonrepetitive simple cycle of an undirected graph.
    #[command(after_help = GRAPH_FORMAT)]
    SimpleCycles {
        input: String,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum SudokuCmd {
    /// Apply rules up to a tier; prints the final board. Exit 1 when stuck or contradictory.
    #[command(after_help = BOARD_FORMAT)]
    Solve {
        input: String,
        /// 0 singles, 1 local, 2 matching, 3 bilocation, 4 bivalue and mixed.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(0..=4))]
        max_tier: u8,
        /// Print one line per applied deduction.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Random uniquely solvable puzzles; with --count N, seeds SEED..SEED+N.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "box", default_value_t = 3)]
        box_side: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Drop the 180-degree symmetry of the clue set.
        #[arg(long)]
        asymmetric: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Difficulty tier 0-4, or `unsolvable` when the rules get stuck. Exit 1 unless the solution is unique.
    #[command(after_help = BOARD_FORMAT)]
    Grade {
        input: String,
        #[command(flatten)]
        out: Out,
    },
    /// Generate and grade a batch; reports tier counts beside the published fractions.
    Stats {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "box", default_value_t = 3)]
        box_side: usize,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Board whose bivalue graph has many edges: a full grid minus the diagonal boxes and one digit.
    Fixture {
        #[arg(long = "box", default_value_t = 3)]
        box_side: usize,
        #[command(flatten)]
        out: Out,
    },
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load_graph(path: &str) -> Result<FlagLabeledGraph> {
    FlagLabeledGraph::parse(&read_input(path)?).with_context(|| format!("parsing graph {path}"))
}

fn load_board(path: &str) -> Result<Board> {
    Board::parse(&read_input(path)?).with_context(|| format!("parsing board {path}"))
}

fn vertex(g: &FlagLabeledGraph, name: &str) -> Result<VertexId> {
    g.vertex_by_name(name)
        .with_context(|| format!("no vertex named {name}"))
}

fn label(g: &FlagLabeledGraph, name: &str) -> Result<Label> {
    g.label_by_name(name)
        .with_context(|| format!("no label named {name}"))
}

fn edge_json(g: &FlagLabeledGraph, id: EdgeId, dir: Dir) -> Value {
    let e = g.edge(id);
    let (t, h) = (dir.tail(), dir.head());
    json!({
        "id": id,
        "from": g.vertex_name(e.endpoint(t)),
        "to": g.vertex_name(e.endpoint(h)),
        "labelFrom": g.label_name(e.label_at(t)),
        "labelTo": g.label_name(e.label_at(h)),
    })
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output {
            text,
            json,
            code: 0,
        }
    }

    fn code(mut self, code: u8) -> Output {
        self.code = code;
        self
    }
}

fn edge_list(g: &FlagLabeledGraph, edges: &[(EdgeId, Dir)]) -> Output {
    let text = edges
        .iter()
        .map(|&(e, d)| g.edge_line(e, d) + "\n")
        .collect();
    let json = Value::Array(edges.iter().map(|&(e, d)| edge_json(g, e, d)).collect());
    Output::ok(text, json)
}

fn walk(g: &FlagLabeledGraph, path: Option<Vec<(EdgeId, Dir)>>) -> Output {
    match path {
        None => Output::ok("no path\n".into(), json!({ "found": false })).code(1),
        Some(p) => {
            let body = edge_list(g, &p);
            Output::ok(
                format!("length {}\n{}", p.len(), body.text),
                json!({ "found": true, "length": p.len(), "edges": body.json }),
            )
        }
    }
}

fn refuse_directed() -> Result<Output> {
    bail!("simple nonrepetitive paths in directed graphs are NP-complete; only undirected graphs are supported")
}

fn run_graph(cmd: GraphCmd) -> Result<(Output, Format)> {
    Ok(match cmd {
        GraphCmd::Cycles { input, out } => {
            let g = load_graph(&input)?;
            let nr = NrGraph::build(&g)?;
            let edges: Vec<_> = nr
                .cyclic_edges()
                .into_iter()
                .map(|e| (e, Dir::Forward))
                .collect();
            (edge_list(&g, &edges), out.format)
        }
        GraphCmd::Reach {
            input,
            from,
            label: l,
            out,
        } => {
            let g = load_graph(&input)?;
            let (v, x) = (vertex(&g, &from)?, label(&g, &l)?);
            let reached: Vec<_> = NrGraph::build(&g)?
                .reachable_edges(v, x)
                .into_iter()
                .map(|r| (r.edge, r.dir))
                .collect();
            (edge_list(&g, &reached), out.format)
        }
        GraphCmd::Shortest {
            input,
            from,
            to,
            out,
        } => {
            let g = load_graph(&input)?;
            let (s, t) = (vertex(&g, &from)?, vertex(&g, &to)?);
            (
                walk(&g, NrGraph::build(&g)?.shortest_path(s, t)),
                out.format,
            )
        }
        GraphCmd::SimplePath {
            input,
            from,
            to,
            directed,
            out,
        } => {
            if directed {
                return refuse_directed().map(|o| (o, out.format));
            }
            let g = load_graph(&input)?;
            if g.is_directed() {
                return refuse_directed().map(|o| (o, out.format));
            }
            let (s, t) = (vertex(&g, &from)?, vertex(&g, &to)?);
            (walk(&g, nonrep_simple_path(&g, s, t)?), out.format)
        }
        GraphCmd::SimpleCycles { input, out } => {
            let g = load_graph(&input)?;
            if g.is_directed() {
                bail!("simple nonrepetitive cycles in directed graphs are NP-complete; only undirected graphs are supported");
            }
            let edges: Vec<_> = simple_cycle_edges(&g)?
                .into_iter()
                .map(|e| (e, Dir::Forward))
                .collect();
            (edge_list(&g, &edges), out.format)
        }
    })
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Solved => "solved",
        Outcome::Stuck => "stuck",
        Outcome::Contradiction => "contradiction",
    }
}

fn board_text(b: &Board) -> String {
    b.to_text().trim_end().to_string()
}

fn run_sudoku(cmd: SudokuCmd) -> Result<(Output, Format)> {
    Ok(match cmd {
        SudokuCmd::Solve {
            input,
            max_tier,
            trace,
            out,
        } => {
            let board = load_board(&input)?;
            let t = solve(&board, max_tier);
            let geo = board.geometry();
            let mut text = String::new();
            if trace {
                for d in &t.deductions {
                    text += &d.trace_line(geo);
                    text.push('\n');
                }
            }
            text += &format!(
                "{}\n{} tier {}\n",
                board_text(&t.board),
                outcome_name(t.outcome),
                t.difficulty_tier()
            );
            let mut j = json!({
                "outcome": outcome_name(t.outcome),
                "tier": t.difficulty_tier(),
                "board": board_text(&t.board),
                "steps": t.deductions.len(),
            });
            if trace {
                j["deductions"] = serde_json::to_value(&t.deductions)?;
            }
            let code = if t.outcome == Outcome::Solved { 0 } else { 1 };
            (Output::ok(text, j).code(code), out.format)
        }
        SudokuCmd::Generate {
            seed,
            box_side,
            count,
            asymmetric,
            out,
        } => {
            let mut text = String::new();
            let mut reports = Vec::new();
            for s in seed..seed.saturating_add(count) {
                let rep = generate(box_side, s, !asymmetric)?;
                text += &board_text(&rep.puzzle);
                text.push('\n');
                reports.push(serde_json::to_value(&rep)?);
            }
            let j = if count == 1 {
                reports.pop().unwrap_or(Value::Null)
            } else {
                Value::Array(reports)
            };
            (Output::ok(text, j), out.format)
        }
        SudokuCmd::Grade { input, out } => {
            let board = load_board(&input)?;
            match gen::grade(&board) {
                Ok(g) => {
                    let j = match g {
                        Grade::Tier(t) => json!({ "grade": t }),
                        Grade::Unsolvable => json!({ "grade": "unsolvable" }),
                    };
                    (Output::ok(format!("{g}\n"), j), out.format)
                }
                Err(GradeError::NotUnique(k)) => {
                    let msg = if k == 0 {
                        "no solution"
                    } else {
                        "more than one solution"
                    };
                    (
                        Output::ok(format!("{msg}\n"), json!({ "grade": null, "solutions": k }))
                            .code(1),
                        out.format,
                    )
                }
                Err(e) => return Err(e.into()),
            }
        }
        SudokuCmd::Stats {
            count,
            seed,
            box_side,
            jobs,
            out,
        } => {
            if count == 0 {
                bail!("--count must be at least 1");
            }
            let stats = match jobs {
                Some(0) => bail!("--jobs must be at least 1"),
                Some(1) => batch_stats_with(count, seed, box_side, Execution::Sequential)?,
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()?
                    .install(|| batch_stats_with(count, seed, box_side, Execution::Parallel))?,
                None => batch_stats_with(count, seed, box_side, Execution::Parallel)?,
            };
            (
                Output::ok(format!("{stats}\n"), serde_json::to_value(&stats)?),
                out.format,
            )
        }
        SudokuCmd::Fixture { box_side, out } => {
            let f = dense_bivalue_fixture(box_side)?;
            let edges = gen::fixture_bivalue_edges(box_side)?;
            let text = format!("{}\n", f.to_text().trim_end());
            (
                Output::ok(
                    text,
                    json!({ "board": board_text(&f), "bivalueEdges": edges }),
                ),
                out.format,
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Graph(c) => run_graph(c),
        Cmd::Sudoku(c) => run_sudoku(c),
    };
    match result {
        Ok((out, format)) => {
            let body = match format {
                Format::Text => out.text,
                Format::Structured => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&out.json).expect("json values serialize")
                ),
            };
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
