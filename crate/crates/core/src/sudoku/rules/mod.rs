//! Deduction rules. Each rule scans a board and reports the deductions it
//! finds, in scan order; only deductions that change the board are reported.

mod graphs;
mod local;
mod matching;
mod nonlocal;

use std::sync::OnceLock;

pub use graphs::{
    build_bilocation_graph, build_bipartite_bivalue_graph, build_bivalue_graph, BilocationGraph,
    BipartiteBivalueGraph, BivalueGraph, OverlinkedPair,
};
pub use nonlocal::cycle_restriction;

use crate::nr::NrGraph;
use crate::sudoku::{Board, Deduction, RuleId, Witness};

/// Receives each deduction; returning `false` stops the scan.
pub(crate) type Sink<'s> = &'s mut dyn FnMut(Deduction) -> bool;

pub(crate) struct Bilocation {
    pub graph: BilocationGraph,
    pub nr: NrGraph,
}

pub(crate) struct Bivalue {
    pub graph: BipartiteBivalueGraph,
    pub nr: NrGraph,
}

/// One board plus the graphs built from it on first use, so the rules of a
/// tier share them.
pub struct Analysis<'b> {
    board: &'b Board,
    bilocation: OnceLock<Result<Bilocation, Deduction>>,
    bivalue: OnceLock<Bivalue>,
}

impl<'b> Analysis<'b> {
    pub fn new(board: &'b Board) -> Self {
        Analysis {
            board,
            bilocation: OnceLock::new(),
            bivalue: OnceLock::new(),
        }
    }

    pub fn board(&self) -> &Board {
        self.board
    }

    /// The bilocation graph, or the contradiction its construction found.
    pub(crate) fn bilocation(&self) -> Result<&Bilocation, &Deduction> {
        self.bilocation
            .get_or_init(|| match build_bilocation_graph(self.board) {
                Ok(graph) => {
                    let nr = NrGraph::build(&graph.graph).expect("bilocation graph has no loops");
                    Ok(Bilocation { graph, nr })
                }
                Err(pair) => Err(
                    Deduction::contradiction(RuleId::BilocationCycle).with_witness(
                        Witness::Edges {
                            edges: pair
                                .digits
                                .iter()
                                .map(|&d| (pair.cells.0, pair.cells.1, d))
                                .collect(),
                        },
                    ),
                ),
            })
            .as_ref()
    }

    pub(crate) fn bivalue(&self) -> &Bivalue {
        self.bivalue.get_or_init(|| {
            let graph = build_bipartite_bivalue_graph(self.board);
            let nr = NrGraph::build(&graph.graph).expect("bipartite graph has no loops");
            Bivalue { graph, nr }
        })
    }

    /// Runs `rule`, feeding deductions to `sink` until it returns `false`.
    pub(crate) fn scan(&self, rule: RuleId, sink: Sink) {
        use RuleId::*;
        let b = self.board;
        match rule {
            NakedSingle => local::naked_single(b, sink),
            HiddenSingle => local::hidden_single(b, sink),
            IntersectionTriple => local::intersection_triple(b, sink),
            BoxLine => local::box_line(b, sink),
            HiddenPair => local::hidden_pair(b, sink),
            MatchingDigitGrid => matching::digit_grid(b, sink),
            MatchingGroup => matching::group(b, sink),
            BilocationCycle => nonlocal::bilocation_cycle(self, sink),
            BilocationRepetitive => nonlocal::bilocation_repetitive(self, sink),
            BilocationConflicting => nonlocal::bilocation_conflicting(self, sink),
            BivalueCycle => nonlocal::bivalue_cycle(self, sink),
            BivalueRepetitive => nonlocal::bivalue_repetitive(self, sink),
            BivalueConflicting => nonlocal::bivalue_conflicting(self, sink),
            MixedConflicting => nonlocal::mixed_conflicting(self, sink),
        }
    }

    pub fn first(&self, rule: RuleId) -> Option<Deduction> {
        let mut found = None;
        self.scan(rule, &mut |d| {
            found = Some(d);
            false
        });
        found
    }

    pub fn all(&self, rule: RuleId) -> Vec<Deduction> {
        let mut out = Vec::new();
        self.scan(rule, &mut |d| {
            out.push(d);
            true
        });
        out
    }
}

/// Every firing of `rule` on `board`.
pub fn find_deductions(board: &Board, rule: RuleId) -> Vec<Deduction> {
    Analysis::new(board).all(rule)
}
