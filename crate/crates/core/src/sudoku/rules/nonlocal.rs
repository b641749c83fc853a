//! Cycle, repetitive-cycle and conflicting-path rules over the bilocation
//! graph and the bipartite bivalue graph.
//!
//! Both graphs encode forcing chains. In the bilocation graph, if a path's
//! first cell does not hold the first edge's label, every later cell holds the
//! label of the edge that reached it. In the bipartite bivalue graph, if the
//! first cell holds the first label, every later cell avoids the digit of the
//! `(group, digit)` vertex that reached it, so holds its other candidate.

use std::collections::BTreeSet;

use super::{Analysis, Sink};
use crate::graph::{Label, VertexId};
use crate::nr::NrGraph;
use crate::sudoku::{bit, digits, Board, Cell, Deduction, Digit, Geometry, RuleId, Witness};

/// Labels `v` is restricted to by nonrepetitive closed walks through it.
///
/// A walk leaving `v` by label `a` and returning by label `b != a` forces `v`
/// to one of `a`, `b`; such a walk exists exactly when the exit node of
/// `(v, a)` and the entry node of `(v, b)` share a strong component. Returns
/// the intersection of all such pairs (possibly empty), or `None` when no
/// pair closes.
pub fn cycle_restriction(nr: &NrGraph, v: VertexId) -> Option<BTreeSet<Label>> {
    let ports = nr.ports(v);
    let mut allowed: Option<BTreeSet<Label>> = None;
    for a in ports {
        for b in ports {
            if a.label == b.label || !nr.same_component(a.output, b.input) {
                continue;
            }
            let pair = BTreeSet::from([a.label, b.label]);
            allowed = Some(match allowed {
                None => pair,
                Some(cur) => cur.intersection(&pair).copied().collect(),
            });
        }
    }
    allowed
}

fn digit(l: Label) -> Digit {
    l.0 as Digit
}

pub(super) fn bilocation_cycle(an: &Analysis, sink: Sink) {
    let board = an.board;
    let bl = match an.bilocation() {
        Ok(bl) => bl,
        Err(ded) => {
            sink(ded.clone());
            return;
        }
    };
    for c in board.unplaced() {
        let Some(allowed) = cycle_restriction(&bl.nr, c) else {
            continue;
        };
        let keep: u64 = allowed.iter().map(|&l| bit(digit(l))).fold(0, |a, b| a | b);
        let witness = Witness::Edges {
            edges: bl
                .graph
                .edges
                .iter()
                .copied()
                .filter(|&(a, b, d)| (a == c || b == c) && keep & bit(d) != 0)
                .collect(),
        };
        let ded = match allowed.len() {
            0 => Deduction::contradiction(RuleId::BilocationCycle),
            1 => Deduction::place(
                RuleId::BilocationCycle,
                vec![(c, digit(*allowed.first().unwrap()))],
            ),
            _ => {
                let elim: Vec<_> = digits(board.candidates(c) & !keep)
                    .map(|d| (c, d))
                    .collect();
                if elim.is_empty() {
                    continue;
                }
                Deduction::eliminate(RuleId::BilocationCycle, elim)
            }
        };
        if !sink(ded.with_witness(witness)) {
            return;
        }
    }
}

pub(super) fn bivalue_cycle(an: &Analysis, sink: Sink) {
    let board = an.board;
    let geo = board.geometry();
    let bv = an.bivalue();
    for v in bv.graph.cells..bv.graph.graph.vertex_count() {
        let (g, d) = bv.graph.group_digit_of(v).expect("group-digit vertex");
        let Some(allowed) = cycle_restriction(&bv.nr, v) else {
            continue;
        };
        let cells: Vec<Cell> = allowed
            .iter()
            .filter_map(|&l| bv.graph.label_cell(l))
            .collect();
        let ded = match cells.len() {
            0 => Deduction::contradiction(RuleId::BivalueCycle),
            1 => Deduction::place(RuleId::BivalueCycle, vec![(cells[0], d)]),
            _ => {
                let elim: Vec<_> = geo
                    .group(g)
                    .iter()
                    .copied()
                    .filter(|c| !cells.contains(c) && board.is_candidate(*c, d))
                    .map(|c| (c, d))
                    .collect();
                if elim.is_empty() {
                    continue;
                }
                Deduction::eliminate(RuleId::BivalueCycle, elim)
            }
        };
        let witness = match cells[..] {
            [a, b] => Witness::Edges {
                edges: vec![(a, b, d)],
            },
            _ => Witness::Group { group: g },
        };
        if !sink(ded.with_witness(witness)) {
            return;
        }
    }
}

pub(super) fn bilocation_repetitive(an: &Analysis, sink: Sink) {
    let Ok(bl) = an.bilocation() else { return };
    for c in an.board.unplaced() {
        for port in bl.nr.ports(c) {
            let back = bl
                .nr
                .reachable_edges(c, port.label)
                .into_iter()
                .find(|r| r.to == c && r.far_label == port.label);
            if let Some(r) = back {
                let d = digit(port.label);
                let ded = Deduction::place(RuleId::BilocationRepetitive, vec![(c, d)])
                    .with_witness(Witness::Edges {
                        edges: vec![(r.from, c, d)],
                    });
                if !sink(ded) {
                    return;
                }
            }
        }
    }
}

pub(super) fn bivalue_repetitive(an: &Analysis, sink: Sink) {
    let bv = an.bivalue();
    for c in bivalued(an.board) {
        for port in bv.nr.ports(c) {
            let back = bv
                .nr
                .reachable_edges(c, port.label)
                .into_iter()
                .find(|r| r.to == c && r.far_label == port.label);
            if back.is_some() {
                let d = digit(port.label);
                let ded = Deduction::eliminate(RuleId::BivalueRepetitive, vec![(c, d)]);
                if !sink(ded) {
                    return;
                }
            }
        }
    }
}

fn bivalued(board: &Board) -> impl Iterator<Item = Cell> + '_ {
    board
        .unplaced()
        .filter(|&c| board.candidates(c).count_ones() == 2)
}

/// Per-(group, digit) masks of cells forced to that digit; reports the first
/// pair of distinct cells of one group forced to the same digit.
struct Buckets<'a> {
    geo: &'a Geometry,
    masks: Vec<u64>,
}

impl<'a> Buckets<'a> {
    fn new(geo: &'a Geometry) -> Self {
        Buckets {
            geo,
            masks: vec![0; geo.group_count() * geo.n],
        }
    }

    fn insert(&mut self, c: Cell, d: Digit) -> Option<(Cell, Cell, usize)> {
        let (groups, pos) = (self.geo.groups_of(c), self.geo.positions_of(c));
        for k in 0..3 {
            let slot = groups[k] * self.geo.n + usize::from(d) - 1;
            let others = self.masks[slot] & !(1u64 << pos[k]);
            if others != 0 {
                let other = self.geo.group(groups[k])[others.trailing_zeros() as usize];
                return Some((other, c, groups[k]));
            }
            self.masks[slot] |= 1 << pos[k];
        }
        None
    }
}

/// Cells forced by the bilocation chains from `(c, d)` under "c is not d".
fn bilocation_forcings(nr: &NrGraph, c: Cell, d: Digit) -> Vec<(Cell, Digit)> {
    nr.reachable_edges(c, Label(u32::from(d)))
        .into_iter()
        .filter(|r| r.to != c)
        .map(|r| (r.to, digit(r.far_label)))
        .collect()
}

/// Cells forced by the bivalue chains from `(c, d)` under "c is d".
fn bivalue_forcings(
    board: &Board,
    nr: &NrGraph,
    cells: usize,
    c: Cell,
    d: Digit,
) -> Vec<(Cell, Digit)> {
    nr.reachable_edges(c, Label(u32::from(d)))
        .into_iter()
        .filter(|r| r.to < cells && r.to != c)
        .map(|r| {
            let other = board.candidates(r.to) & !bit(digit(r.far_label));
            (r.to, other.trailing_zeros() as Digit + 1)
        })
        .collect()
}

fn first_conflict(
    geo: &Geometry,
    forced: impl IntoIterator<Item = (Cell, Digit)>,
) -> Option<([Cell; 2], Digit, usize)> {
    let mut buckets = Buckets::new(geo);
    forced
        .into_iter()
        .find_map(|(c, d)| buckets.insert(c, d).map(|(a, b, g)| ([a, b], d, g)))
}

pub(super) fn bilocation_conflicting(an: &Analysis, sink: Sink) {
    let Ok(bl) = an.bilocation() else { return };
    let geo = an.board.geometry();
    for c in an.board.unplaced() {
        for port in bl.nr.ports(c) {
            let d = digit(port.label);
            let Some((cells, value, group)) =
                first_conflict(geo, bilocation_forcings(&bl.nr, c, d))
            else {
                continue;
            };
            let ded = Deduction::place(RuleId::BilocationConflicting, vec![(c, d)]).with_witness(
                Witness::Conflict {
                    start: c,
                    digit: d,
                    cells,
                    value,
                    group,
                },
            );
            if !sink(ded) {
                return;
            }
        }
    }
}

pub(super) fn bivalue_conflicting(an: &Analysis, sink: Sink) {
    let bv = an.bivalue();
    let board = an.board;
    for c in bivalued(board) {
        for d in digits(board.candidates(c)) {
            let forced = bivalue_forcings(board, &bv.nr, bv.graph.cells, c, d);
            let Some((cells, value, group)) = first_conflict(board.geometry(), forced) else {
                continue;
            };
            let ded = Deduction::eliminate(RuleId::BivalueConflicting, vec![(c, d)]).with_witness(
                Witness::Conflict {
                    start: c,
                    digit: d,
                    cells,
                    value,
                    group,
                },
            );
            if !sink(ded) {
                return;
            }
        }
    }
}

/// For a bivalued cell `{d, e}`, "c is not d" means "c is e": bilocation
/// chains from `(c, d)` and bivalue chains from `(c, e)` hold together, and
/// a conflict among their forcings (or with `c = e`) places `d`.
pub(super) fn mixed_conflicting(an: &Analysis, sink: Sink) {
    let Ok(bl) = an.bilocation() else { return };
    let bv = an.bivalue();
    let board = an.board;
    for c in bivalued(board) {
        let pair: Vec<Digit> = digits(board.candidates(c)).collect();
        for (d, e) in [(pair[0], pair[1]), (pair[1], pair[0])] {
            let biloc = bilocation_forcings(&bl.nr, c, d);
            let bival = bivalue_forcings(board, &bv.nr, bv.graph.cells, c, e);
            if biloc.is_empty() || bival.is_empty() {
                continue;
            }
            let forced = std::iter::once((c, e)).chain(biloc).chain(bival);
            let Some((cells, value, group)) = first_conflict(board.geometry(), forced) else {
                continue;
            };
            let ded = Deduction::place(RuleId::MixedConflicting, vec![(c, d)]).with_witness(
                Witness::Conflict {
                    start: c,
                    digit: d,
                    cells,
                    value,
                    group,
                },
            );
            if !sink(ded) {
                return;
            }
        }
    }
}
