//! Placements that cannot extend to a full placement of one digit across the
//! grid, or to a full solution of one group, via forbidden matching edges.

use super::Sink;
use crate::matching::{forbidden_edges, max_bipartite_matching, BipartiteInstance};
use crate::sudoku::{Board, Cell, Deduction, Digit, RuleId, Witness};

/// Eliminations for the forbidden edges of `inst`, whose edges map to
/// `(cell, digit)` through `meaning`; `None` if no perfect matching exists.
fn forbidden_placements(
    board: &Board,
    inst: &BipartiteInstance,
    meaning: &[(Cell, Digit)],
) -> Option<Vec<(Cell, Digit)>> {
    let m = max_bipartite_matching(inst);
    if m.size() < inst.left_size() {
        return None;
    }
    let forbidden = forbidden_edges(inst, &m);
    Some(
        meaning
            .iter()
            .zip(forbidden)
            .filter(|&(&(c, _), f)| f && !board.is_placed(c))
            .map(|(&p, _)| p)
            .collect(),
    )
}

pub(super) fn digit_grid(board: &Board, sink: Sink) {
    let geo = board.geometry();
    let n = geo.n;
    for d in 1..=n as Digit {
        let mut edges = Vec::new();
        let mut meaning = Vec::new();
        for c in 0..geo.cells {
            if board.value(c) == Some(d) || board.is_candidate(c, d) {
                edges.push((geo.row(c), geo.col(c)));
                meaning.push((c, d));
            }
        }
        let inst = BipartiteInstance::new(n, n, edges).expect("one edge per cell");
        let ded = match forbidden_placements(board, &inst, &meaning) {
            None => Deduction::contradiction(RuleId::MatchingDigitGrid),
            Some(elim) if elim.is_empty() => continue,
            Some(elim) => Deduction::eliminate(RuleId::MatchingDigitGrid, elim),
        };
        if !sink(ded) {
            return;
        }
    }
}

pub(super) fn group(board: &Board, sink: Sink) {
    let geo = board.geometry();
    let n = geo.n;
    for g in 0..geo.group_count() {
        let mut edges = Vec::new();
        let mut meaning = Vec::new();
        for (i, &c) in geo.group(g).iter().enumerate() {
            for d in 1..=n as Digit {
                if board.value(c) == Some(d) || board.is_candidate(c, d) {
                    edges.push((usize::from(d) - 1, i));
                    meaning.push((c, d));
                }
            }
        }
        let inst = BipartiteInstance::new(n, n, edges).expect("one edge per cell and digit");
        let ded = match forbidden_placements(board, &inst, &meaning) {
            None => Deduction::contradiction(RuleId::MatchingGroup),
            Some(elim) if elim.is_empty() => continue,
            Some(elim) => Deduction::eliminate(RuleId::MatchingGroup, elim),
        };
        if !sink(ded.with_witness(Witness::Group { group: g })) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::find_deductions;
    use super::*;
    use crate::sudoku::bit;

    #[test]
    fn naked_pair_in_a_row_is_found_by_group_matching() {
        // r1c1 and r1c2 both hold {1,2}; every other row cell must drop 1 and 2
        let rows = ["..3456...", "789......"];
        let b = Board::parse(&format!("{}{}", rows.concat(), ".".repeat(63))).unwrap();
        assert_eq!(b.candidates(0), bit(1) | bit(2));
        let ds = find_deductions(&b, RuleId::MatchingGroup);
        let row = ds
            .iter()
            .find(|d| d.witness == Some(Witness::Group { group: 0 }))
            .unwrap();
        let mut got = row.eliminations.clone();
        got.sort_unstable();
        assert_eq!(got, vec![(6, 1), (6, 2), (7, 1), (7, 2), (8, 1), (8, 2)]);
    }

    #[test]
    fn permutation_matrix_gives_nothing() {
        let solved =
            "534678912672195348198342567859761423426853791713924856961537284287419635345286179";
        let b = Board::parse(solved).unwrap();
        assert!(find_deductions(&b, RuleId::MatchingDigitGrid).is_empty());
        assert!(find_deductions(&b, RuleId::MatchingGroup).is_empty());
    }
}
