use serde::Serialize;

use super::rules::Analysis;
use super::{Board, Deduction, RuleId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Outcome {
    Solved,
    Stuck,
    Contradiction,
}

#[derive(Clone, Debug)]
pub struct SolveTrace {
    pub initial: Board,
    pub deductions: Vec<Deduction>,
    pub outcome: Outcome,
    pub board: Board,
}

impl SolveTrace {
    /// Highest tier among the applied deductions; 0 for an empty trace.
    pub fn difficulty_tier(&self) -> u8 {
        self.deductions
            .iter()
            .map(|d| d.rule.tier())
            .max()
            .unwrap_or(0)
    }

    /// Applies the trace to the initial board again.
    pub fn replay(&self) -> Board {
        let mut b = self.initial.clone();
        for d in &self.deductions {
            if b.apply(d).is_err() {
                break;
            }
        }
        b
    }
}

/// Applies one deduction at a time from the cheapest rule that fires, going
/// back to the first rule after each, until the board is solved, no rule up
/// to `max_tier` fires, or a contradiction shows up.
pub fn solve(board: &Board, max_tier: u8) -> SolveTrace {
    let mut cur = board.clone();
    let mut deductions = Vec::new();
    let outcome = loop {
        if cur.is_complete() {
            break Outcome::Solved;
        }
        if cur.contradiction().is_some() {
            break Outcome::Contradiction;
        }
        let an = Analysis::new(&cur);
        let next = RuleId::ALL
            .iter()
            .filter(|r| r.tier() <= max_tier)
            .find_map(|&r| an.first(r));
        drop(an);
        let Some(d) = next else { break Outcome::Stuck };
        let applied = cur.apply(&d);
        deductions.push(d);
        if applied.is_err() {
            break Outcome::Contradiction;
        }
    };
    SolveTrace {
        initial: board.clone(),
        deductions,
        outcome,
        board: cur,
    }
}
