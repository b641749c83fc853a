//! Backtracking solution counting, symmetric puzzle generation, grading and
//! the batch experiment.

use std::fmt;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::rules::build_bivalue_graph;
use super::{bit, digits, solve, Board, BoardError, Cell, Digit, Geometry, Outcome};

pub const RESTART_LIMIT: u32 = 10_000;

pub const PUBLISHED_UNSOLVABLE: f64 = 0.044;
pub const PUBLISHED_NONLOCAL: f64 = 0.116;
/// Share of the puzzles that local rules leave stuck which the nonlocal rules solve.
pub const PUBLISHED_NONLOCAL_RECOVERY: f64 = 0.725;

struct Search<'g> {
    geo: &'g Geometry,
    cap: usize,
    count: usize,
    first: Option<Vec<Digit>>,
}

impl Search<'_> {
    fn go(&mut self, values: &[Digit], cands: &[u64]) {
        let mut best: Option<(u32, Cell)> = None;
        for c in 0..values.len() {
            if values[c] == 0 {
                let k = cands[c].count_ones();
                if best.is_none_or(|(bk, _)| k < bk) {
                    best = Some((k, c));
                    if k <= 1 {
                        break;
                    }
                }
            }
        }
        let Some((k, c)) = best else {
            self.count += 1;
            if self.first.is_none() {
                self.first = Some(values.to_vec());
            }
            return;
        };
        if k == 0 {
            return;
        }
        for d in digits(cands[c]) {
            let (mut v2, mut c2) = (values.to_vec(), cands.to_vec());
            v2[c] = d;
            c2[c] = 0;
            let mut dead = false;
            for &p in self.geo.peers(c) {
                if v2[p] == 0 {
                    c2[p] &= !bit(d);
                    dead |= c2[p] == 0;
                }
            }
            if !dead {
                self.go(&v2, &c2);
            }
            if self.count >= self.cap {
                return;
            }
        }
    }
}

fn search(board: &Board, cap: usize) -> (usize, Option<Vec<Digit>>) {
    if cap == 0 || board.unplaced().any(|c| board.candidates(c) == 0) {
        return (0, None);
    }
    let geo = board.geometry();
    let mut s = Search {
        geo,
        cap,
        count: 0,
        first: None,
    };
    let cands: Vec<u64> = (0..geo.cells).map(|c| board.candidates(c)).collect();
    s.go(board.values(), &cands);
    (s.count.min(cap), s.first)
}

/// Completions of `board` that respect its candidate sets, saturating at `cap`.
pub fn count_solutions(board: &Board, cap: usize) -> usize {
    search(board, cap).0
}

/// The completion of `board` if there is exactly one.
pub fn unique_solution(board: &Board) -> Option<Board> {
    match search(board, 2) {
        (1, Some(values)) => {
            Some(Board::from_values(board.box_side(), &values).expect("a solution is a valid grid"))
        }
        _ => None,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("generation supports box sides 2 and 3, not {0}")]
    UnsupportedBox(usize),
    #[error("no consistent fill after {0} restarts")]
    RestartLimit(u32),
}

#[derive(Clone, Debug, Serialize)]
pub struct GenReport {
    #[serde(serialize_with = "as_text")]
    pub puzzle: Board,
    #[serde(serialize_with = "as_text")]
    pub solution: Board,
    /// Chosen cell and its partner (`None` for the centre or when not symmetric).
    pub insertion_order: Insertions,
    pub clue_count: usize,
    pub seed: u64,
    pub box_size: usize,
    pub restarts: u32,
    pub minimal: bool,
}

fn as_text<S: serde::Serializer>(b: &Board, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(b.to_text().trim_end())
}

fn pick<R: Rng>(rng: &mut R, len: usize) -> usize {
    rng.gen_range(0..len as u32) as usize
}

fn place_random<R: Rng>(board: &mut Board, c: Cell, rng: &mut R) -> bool {
    let options: Vec<Digit> = digits(board.candidates(c)).collect();
    if options.is_empty() {
        return false;
    }
    let d = options[pick(rng, options.len())];
    board.place(c, d).is_ok()
}

/// Chosen cell and its 180-degree partner, in insertion order.
type Insertions = Vec<(Cell, Option<Cell>)>;

/// Random filled grid plus the cells chosen to build it, or `None` when the
/// fill ran into a contradiction.
fn fill_attempt<R: Rng>(b: usize, symmetric: bool, rng: &mut R) -> Option<(Board, Insertions)> {
    let mut board = Board::empty(b).expect("supported size");
    let last = board.geometry().cells - 1;
    let mut order = Vec::new();
    while !board.is_complete() {
        let open: Vec<Cell> = board.unplaced().collect();
        let c = open[pick(rng, open.len())];
        let partner = (symmetric && last - c != c).then_some(last - c);
        if !place_random(&mut board, c, rng) {
            return None;
        }
        if let Some(p) = partner.filter(|&p| !board.is_placed(p)) {
            if !place_random(&mut board, p, rng) {
                return None;
            }
        }
        order.push((c, partner));
        let t = solve(&board, 0);
        if t.outcome == Outcome::Contradiction {
            return None;
        }
        board = t.board;
    }
    Some((board, order))
}

/// Random puzzle with a unique solution: fill by random symmetric choices
/// plus singles, keep the chosen cells as clues, then try emptying each
/// chosen pair in order, keeping removals that preserve uniqueness.
pub fn generate(b: usize, seed: u64, symmetric: bool) -> Result<GenReport, GenError> {
    if !(2..=3).contains(&b) {
        return Err(GenError::UnsupportedBox(b));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut restarts = 0;
    let (solution, order) = loop {
        if let Some(found) = fill_attempt(b, symmetric, &mut rng) {
            break found;
        }
        restarts += 1;
        if restarts > RESTART_LIMIT {
            return Err(GenError::RestartLimit(RESTART_LIMIT));
        }
    };
    let mut clues = vec![0 as Digit; solution.geometry().cells];
    for &(c, p) in &order {
        clues[c] = solution.values()[c];
        if let Some(p) = p {
            clues[p] = solution.values()[p];
        }
    }
    for &(c, p) in &order {
        let mut trial = clues.clone();
        trial[c] = 0;
        if let Some(p) = p {
            trial[p] = 0;
        }
        let board = Board::from_values(b, &trial).expect("subset of a solution");
        if count_solutions(&board, 2) == 1 {
            clues = trial;
        }
    }
    let puzzle = Board::from_values(b, &clues).expect("subset of a solution");
    Ok(GenReport {
        clue_count: puzzle.placed_count(),
        puzzle,
        solution,
        insertion_order: order,
        seed,
        box_size: b,
        restarts,
        minimal: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Tier(u8),
    Unsolvable,
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Tier(t) => write!(f, "{t}"),
            Grade::Unsolvable => f.write_str("unsolvable"),
        }
    }
}

impl Serialize for Grade {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Grade::Tier(t) => s.serialize_u8(*t),
            Grade::Unsolvable => s.serialize_str("unsolvable"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradeError {
    #[error("puzzle has {0} solutions; grading needs exactly one")]
    NotUnique(usize),
    #[error("rules reached a contradiction on a puzzle with a unique solution")]
    Contradiction,
}

fn grade_trusted(puzzle: &Board) -> Result<Grade, GradeError> {
    let t = solve(puzzle, 4);
    match t.outcome {
        Outcome::Solved => Ok(Grade::Tier(t.difficulty_tier())),
        Outcome::Stuck => Ok(Grade::Unsolvable),
        Outcome::Contradiction => Err(GradeError::Contradiction),
    }
}

/// Hardest rule tier needed by the solver, or `Unsolvable` when it gets stuck.
pub fn grade(puzzle: &Board) -> Result<Grade, GradeError> {
    match count_solutions(puzzle, 2) {
        1 => grade_trusted(puzzle),
        k => Err(GradeError::NotUnique(k)),
    }
}

/// Seed of puzzle `index` in a batch started from `seed`.
pub fn puzzle_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.next_u64()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the ambient rayon pool; same as `Sequential` without the
    /// `parallel` feature.
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatchStats {
    pub total: usize,
    pub box_size: usize,
    pub seed: u64,
    /// Puzzles per grade: tiers 0 to 4.
    pub tier_histogram: [usize; 5],
    pub unsolvable_count: usize,
    pub unsolvable_fraction: f64,
    /// Solved, but only with bilocation or bivalue rules (tier 3 or 4).
    pub nonlocal_needed_count: usize,
    pub nonlocal_needed_fraction: f64,
    pub nonlocal_of_solvable: f64,
    /// Of the puzzles local rules leave stuck, the share nonlocal rules solve.
    pub nonlocal_recovery: f64,
    /// Puzzles whose grading hit a contradiction; always 0 for sound rules.
    pub contradictions: usize,
    pub restarts: u64,
    pub published_unsolvable_fraction: f64,
    pub published_nonlocal_fraction: f64,
    pub published_nonlocal_recovery: f64,
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

impl BatchStats {
    fn from_results(
        seed: u64,
        b: usize,
        results: &[(Result<Grade, GradeError>, u32)],
    ) -> BatchStats {
        let mut hist = [0; 5];
        let (mut unsolvable, mut contradictions, mut restarts) = (0, 0, 0u64);
        for (g, r) in results {
            restarts += u64::from(*r);
            match g {
                Ok(Grade::Tier(t)) => hist[usize::from(*t)] += 1,
                Ok(Grade::Unsolvable) => unsolvable += 1,
                Err(_) => contradictions += 1,
            }
        }
        let total = results.len();
        let nonlocal = hist[3] + hist[4];
        BatchStats {
            total,
            box_size: b,
            seed,
            tier_histogram: hist,
            unsolvable_count: unsolvable,
            unsolvable_fraction: ratio(unsolvable, total),
            nonlocal_needed_count: nonlocal,
            nonlocal_needed_fraction: ratio(nonlocal, total),
            nonlocal_of_solvable: ratio(nonlocal, total - unsolvable - contradictions),
            nonlocal_recovery: ratio(nonlocal, nonlocal + unsolvable),
            contradictions,
            restarts,
            published_unsolvable_fraction: PUBLISHED_UNSOLVABLE,
            published_nonlocal_fraction: PUBLISHED_NONLOCAL,
            published_nonlocal_recovery: PUBLISHED_NONLOCAL_RECOVERY,
        }
    }
}

impl fmt::Display for BatchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pct = |x: f64| format!("{:.1}%", 100.0 * x);
        writeln!(f, "puzzles            {}", self.total)?;
        writeln!(f, "box                {}", self.box_size)?;
        writeln!(f, "seed               {}", self.seed)?;
        for (t, k) in self.tier_histogram.iter().enumerate() {
            writeln!(f, "tier {t}             {k}")?;
        }
        writeln!(f, "stuck              {}", self.unsolvable_count)?;
        writeln!(
            f,
            "unsolvable         {:>6}  (published {})",
            pct(self.unsolvable_fraction),
            pct(self.published_unsolvable_fraction)
        )?;
        writeln!(
            f,
            "nonlocal needed    {:>6}  (published {})",
            pct(self.nonlocal_needed_fraction),
            pct(self.published_nonlocal_fraction)
        )?;
        writeln!(
            f,
            "nonlocal recovery  {:>6}  (published {})",
            pct(self.nonlocal_recovery),
            pct(self.published_nonlocal_recovery)
        )?;
        writeln!(f, "contradictions     {}", self.contradictions)?;
        write!(f, "restarts           {}", self.restarts)
    }
}

fn evaluate(b: usize, seed: u64, index: u64) -> (Result<Grade, GradeError>, u32) {
    match generate(b, puzzle_seed(seed, index), true) {
        Ok(rep) => (grade_trusted(&rep.puzzle), rep.restarts),
        Err(_) => (Err(GradeError::Contradiction), RESTART_LIMIT),
    }
}

/// Generates and grades `n` puzzles of box side `b`; puzzle `i` uses
/// [`puzzle_seed`]`(seed, i)`, so the result does not depend on `exec`.
pub fn batch_stats_with(
    n: usize,
    seed: u64,
    b: usize,
    exec: Execution,
) -> Result<BatchStats, GenError> {
    if !(2..=3).contains(&b) {
        return Err(GenError::UnsupportedBox(b));
    }
    let results: Vec<_> = match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n as u64)
                .into_par_iter()
                .map(|i| evaluate(b, seed, i))
                .collect()
        }
        _ => (0..n as u64).map(|i| evaluate(b, seed, i)).collect(),
    };
    Ok(BatchStats::from_results(seed, b, &results))
}

pub fn batch_stats(n: usize, seed: u64) -> BatchStats {
    batch_stats_with(n, seed, 3, Execution::Parallel).expect("box side 3 is supported")
}

/// A uniquely solvable board with a dense bivalue graph: a canonical full
/// grid with every copy of digit 1 and the `b` main-diagonal boxes emptied.
pub fn dense_bivalue_fixture(b: usize) -> Result<Board, BoardError> {
    if !(2..=5).contains(&b) {
        return Err(BoardError::UnsupportedBox(b));
    }
    let n = b * b;
    let mut values = vec![0 as Digit; n * n];
    for r in 0..n {
        for c in 0..n {
            let v = ((r % b) * b + r / b + c) % n + 1;
            let diagonal = r / b == c / b;
            if v != 1 && !diagonal {
                values[r * n + c] = v as Digit;
            }
        }
    }
    Board::from_values(b, &values)
}

/// Edge count of the bivalue graph of [`dense_bivalue_fixture`]`(b)`.
pub fn fixture_bivalue_edges(b: usize) -> Result<usize, BoardError> {
    Ok(build_bivalue_graph(&dense_bivalue_fixture(b)?).edges.len())
}
