//! Rule-based Sudoku solving on `B^2 x B^2` grids, with puzzle generation and
//! grading on top.

mod board;
pub mod gen;
pub mod rules;
mod solver;

use std::fmt;

use serde::Serialize;

pub use board::{
    apply_deduction, bit, digits, verify_solution, Board, BoardError, Cell, Contradiction, Digit,
    Geometry, MAX_BOX,
};
pub use solver::{solve, Outcome, SolveTrace};

/// Every rule the solver knows, in scheduling order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum RuleId {
    NakedSingle,
    HiddenSingle,
    IntersectionTriple,
    BoxLine,
    HiddenPair,
    MatchingDigitGrid,
    MatchingGroup,
    BilocationCycle,
    BilocationRepetitive,
    BilocationConflicting,
    BivalueCycle,
    BivalueRepetitive,
    BivalueConflicting,
    MixedConflicting,
}

impl RuleId {
    pub const ALL: [RuleId; 14] = [
        RuleId::NakedSingle,
        RuleId::HiddenSingle,
        RuleId::IntersectionTriple,
        RuleId::BoxLine,
        RuleId::HiddenPair,
        RuleId::MatchingDigitGrid,
        RuleId::MatchingGroup,
        RuleId::BilocationCycle,
        RuleId::BilocationRepetitive,
        RuleId::BilocationConflicting,
        RuleId::BivalueCycle,
        RuleId::BivalueRepetitive,
        RuleId::BivalueConflicting,
        RuleId::MixedConflicting,
    ];

    /// 0 singles, 1 other local, 2 matching, 3 bilocation, 4 bivalue and mixed.
    pub fn tier(self) -> u8 {
        use RuleId::*;
        match self {
            NakedSingle | HiddenSingle => 0,
            IntersectionTriple | BoxLine | HiddenPair => 1,
            MatchingDigitGrid | MatchingGroup => 2,
            BilocationCycle | BilocationRepetitive | BilocationConflicting => 3,
            BivalueCycle | BivalueRepetitive | BivalueConflicting | MixedConflicting => 4,
        }
    }

    pub fn name(self) -> &'static str {
        use RuleId::*;
        match self {
            NakedSingle => "nakedSingle",
            HiddenSingle => "hiddenSingle",
            IntersectionTriple => "intersectionTriple",
            BoxLine => "boxLine",
            HiddenPair => "hiddenPair",
            MatchingDigitGrid => "matchingDigitGrid",
            MatchingGroup => "matchingGroup",
            BilocationCycle => "bilocationCycle",
            BilocationRepetitive => "bilocationRepetitive",
            BilocationConflicting => "bilocationConflicting",
            BivalueCycle => "bivalueCycle",
            BivalueRepetitive => "bivalueRepetitive",
            BivalueConflicting => "bivalueConflicting",
            MixedConflicting => "mixedConflicting",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a rule fired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Witness {
    Group {
        group: usize,
    },
    Intersection {
        box_group: usize,
        line_group: usize,
    },
    /// Graph edges `(cell, cell, digit)`: the cyclic edges at the cell, or
    /// the edge closing a repetitive cycle.
    Edges {
        edges: Vec<(Cell, Cell, Digit)>,
    },
    /// Two cells of one group forced to the same digit from one start.
    Conflict {
        start: Cell,
        digit: Digit,
        cells: [Cell; 2],
        value: Digit,
        group: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deduction {
    pub rule: RuleId,
    pub placements: Vec<(Cell, Digit)>,
    pub eliminations: Vec<(Cell, Digit)>,
    pub witness: Option<Witness>,
    pub contradiction: bool,
}

impl Deduction {
    pub fn place(rule: RuleId, placements: Vec<(Cell, Digit)>) -> Deduction {
        Deduction {
            rule,
            placements,
            eliminations: Vec::new(),
            witness: None,
            contradiction: false,
        }
    }

    pub fn eliminate(rule: RuleId, eliminations: Vec<(Cell, Digit)>) -> Deduction {
        Deduction {
            rule,
            placements: Vec::new(),
            eliminations,
            witness: None,
            contradiction: false,
        }
    }

    pub fn contradiction(rule: RuleId) -> Deduction {
        Deduction {
            rule,
            placements: Vec::new(),
            eliminations: Vec::new(),
            witness: None,
            contradiction: true,
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Deduction {
        self.witness = Some(w);
        self
    }

    pub fn is_empty(&self) -> bool {
        !self.contradiction && self.placements.is_empty() && self.eliminations.is_empty()
    }

    /// One stable, whitespace-separated line: rule, then `place`, `elim`,
    /// `contradiction` and `witness` fields as present.
    pub fn trace_line(&self, geo: &Geometry) -> String {
        let mut s = self.rule.name().to_string();
        let list = |items: &[(Cell, Digit)], sep: char| {
            items
                .iter()
                .map(|&(c, d)| format!("{}{sep}{d}", geo.cell_name(c)))
                .collect::<Vec<_>>()
                .join(",")
        };
        if !self.placements.is_empty() {
            s += &format!(" place={}", list(&self.placements, '='));
        }
        if !self.eliminations.is_empty() {
            s += &format!(" elim={}", list(&self.eliminations, '-'));
        }
        if self.contradiction {
            s += " contradiction";
        }
        match &self.witness {
            None => {}
            Some(Witness::Group { group }) => s += &format!(" witness={}", geo.group_name(*group)),
            Some(Witness::Intersection {
                box_group,
                line_group,
            }) => {
                s += &format!(
                    " witness={}&{}",
                    geo.group_name(*box_group),
                    geo.group_name(*line_group)
                )
            }
            Some(Witness::Edges { edges }) => {
                let e: Vec<String> = edges
                    .iter()
                    .map(|&(a, b, d)| format!("{}-{}:{d}", geo.cell_name(a), geo.cell_name(b)))
                    .collect();
                s += &format!(" witness={}", e.join(","));
            }
            Some(Witness::Conflict {
                start,
                digit,
                cells,
                value,
                group,
            }) => {
                s += &format!(
                    " witness={}:{digit}->{},{}={value}@{}",
                    geo.cell_name(*start),
                    geo.cell_name(cells[0]),
                    geo.cell_name(cells[1]),
                    geo.group_name(*group)
                )
            }
        }
        s
    }
}
