//! Rules that look at one group, or one box/line intersection, at a time.

use super::Sink;
use crate::sudoku::{bit, digits, Board, Cell, Deduction, Digit, RuleId, Witness};

pub(super) fn naked_single(board: &Board, sink: Sink) {
    for c in board.unplaced() {
        let m = board.candidates(c);
        if m.count_ones() == 1 {
            let d = m.trailing_zeros() as Digit + 1;
            if !sink(Deduction::place(RuleId::NakedSingle, vec![(c, d)])) {
                return;
            }
        }
    }
}

pub(super) fn hidden_single(board: &Board, sink: Sink) {
    let geo = board.geometry();
    for g in 0..geo.group_count() {
        for d in 1..=geo.n as Digit {
            let pos = board.positions(g, d);
            if pos.count_ones() == 1 {
                let c = geo.group(g)[pos.trailing_zeros() as usize];
                let ded = Deduction::place(RuleId::HiddenSingle, vec![(c, d)])
                    .with_witness(Witness::Group { group: g });
                if !sink(ded) {
                    return;
                }
            }
        }
    }
}

/// Box/line pairs that intersect, as `(box group, line group, shared cells)`.
fn intersections(board: &Board) -> Vec<(usize, usize, Vec<Cell>)> {
    let geo = board.geometry();
    let (b, n) = (geo.b, geo.n);
    let mut out = Vec::new();
    for bx in 0..n {
        let bg = 2 * n + bx;
        let (r0, c0) = ((bx / b) * b, (bx % b) * b);
        for r in r0..r0 + b {
            out.push((bg, r, (c0..c0 + b).map(|c| r * n + c).collect()));
        }
        for c in c0..c0 + b {
            out.push((bg, n + c, (r0..r0 + b).map(|r| r * n + c).collect()));
        }
    }
    out
}

fn effective(
    board: &Board,
    cells: impl IntoIterator<Item = Cell>,
    mask: u64,
) -> Vec<(Cell, Digit)> {
    let mut out = Vec::new();
    for c in cells {
        for d in digits(board.candidates(c) & mask) {
            out.push((c, d));
        }
    }
    out
}

/// Within a box/line intersection whose `k >= 2` open cells are the only
/// homes, inside the line or the box, of exactly `k` digits: those cells take
/// no other digit, and the `k` digits leave the other group too.
pub(super) fn intersection_triple(board: &Board, sink: Sink) {
    let geo = board.geometry();
    for (bg, lg, shared) in intersections(board) {
        let open: Vec<Cell> = shared
            .iter()
            .copied()
            .filter(|&c| !board.is_placed(c))
            .collect();
        if open.len() < 2 {
            continue;
        }
        let in_open = |c: Cell| open.contains(&c);
        for (inside, other) in [(lg, bg), (bg, lg)] {
            let mut forced = 0u64;
            for d in 1..=geo.n as Digit {
                let homes: Vec<Cell> = geo
                    .group(inside)
                    .iter()
                    .copied()
                    .filter(|&c| board.is_candidate(c, d))
                    .collect();
                if !homes.is_empty() && homes.iter().all(|&c| in_open(c)) {
                    forced |= bit(d);
                }
            }
            if forced.count_ones() as usize != open.len() {
                continue;
            }
            let mut elim = effective(board, open.iter().copied(), !forced);
            elim.extend(effective(
                board,
                geo.group(other)
                    .iter()
                    .copied()
                    .filter(|&c| !shared.contains(&c)),
                forced,
            ));
            if elim.is_empty() {
                continue;
            }
            let ded = Deduction::eliminate(RuleId::IntersectionTriple, elim).with_witness(
                Witness::Intersection {
                    box_group: bg,
                    line_group: lg,
                },
            );
            if !sink(ded) {
                return;
            }
        }
    }
}

/// A digit confined to the intersection within one group leaves the other.
pub(super) fn box_line(board: &Board, sink: Sink) {
    let geo = board.geometry();
    for (bg, lg, shared) in intersections(board) {
        for (inside, other) in [(bg, lg), (lg, bg)] {
            for d in 1..=geo.n as Digit {
                let homes: Vec<Cell> = geo
                    .group(inside)
                    .iter()
                    .copied()
                    .filter(|&c| board.is_candidate(c, d))
                    .collect();
                if homes.is_empty() || !homes.iter().all(|c| shared.contains(c)) {
                    continue;
                }
                let elim = effective(
                    board,
                    geo.group(other)
                        .iter()
                        .copied()
                        .filter(|c| !shared.contains(c)),
                    bit(d),
                );
                if elim.is_empty() {
                    continue;
                }
                let ded = Deduction::eliminate(RuleId::BoxLine, elim).with_witness(
                    Witness::Intersection {
                        box_group: bg,
                        line_group: lg,
                    },
                );
                if !sink(ded) {
                    return;
                }
            }
        }
    }
}

pub(super) fn hidden_pair(board: &Board, sink: Sink) {
    let geo = board.geometry();
    for g in 0..geo.group_count() {
        let pos: Vec<u64> = (1..=geo.n as Digit)
            .map(|d| board.positions(g, d))
            .collect();
        for x in 0..geo.n {
            if pos[x].count_ones() != 2 {
                continue;
            }
            for y in x + 1..geo.n {
                if pos[y] != pos[x] {
                    continue;
                }
                let keep = bit(x as Digit + 1) | bit(y as Digit + 1);
                let m = pos[x];
                let cells = [m.trailing_zeros() as usize, 63 - m.leading_zeros() as usize]
                    .map(|i| geo.group(g)[i]);
                let elim = effective(board, cells, !keep);
                if elim.is_empty() {
                    continue;
                }
                let ded = Deduction::eliminate(RuleId::HiddenPair, elim)
                    .with_witness(Witness::Group { group: g });
                if !sink(ded) {
                    return;
                }
            }
        }
    }
}
