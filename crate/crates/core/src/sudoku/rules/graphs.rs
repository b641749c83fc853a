//! The three graphs the nonlocal rules run on.

use std::collections::{BTreeSet, HashMap};

use crate::graph::{Directedness, FlagLabeledGraph, Label, VertexId};
use crate::sudoku::{digits, Board, Cell, Digit};

/// Unfilled cells, with an edge `(c1, c2; d)` when `c1` and `c2` are the only
/// two cells of some group that can still hold `d`. Vertex ids are cell
/// indices; label `d` is `Label(d)`.
#[derive(Clone, Debug)]
pub struct BilocationGraph {
    pub graph: FlagLabeledGraph,
    /// `(c1, c2, d)` with `c1 < c2`, one per edge of `graph`, same order.
    pub edges: Vec<(Cell, Cell, Digit)>,
}

/// A cell pair joined by three or more bilocation labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlinkedPair {
    pub cells: (Cell, Cell),
    pub digits: Vec<Digit>,
}

pub fn build_bilocation_graph(board: &Board) -> Result<BilocationGraph, OverlinkedPair> {
    let geo = board.geometry();
    let mut set = BTreeSet::new();
    for g in 0..geo.group_count() {
        for d in 1..=geo.n as Digit {
            let pos = board.positions(g, d);
            if pos.count_ones() == 2 {
                let a = geo.group(g)[pos.trailing_zeros() as usize];
                let b = geo.group(g)[(63 - pos.leading_zeros()) as usize];
                set.insert((a.min(b), a.max(b), d));
            }
        }
    }
    let mut per_pair: HashMap<(Cell, Cell), Vec<Digit>> = HashMap::new();
    for &(a, b, d) in &set {
        per_pair.entry((a, b)).or_default().push(d);
    }
    if let Some((&cells, ds)) = per_pair
        .iter()
        .filter(|(_, ds)| ds.len() >= 3)
        .min_by_key(|(k, _)| **k)
    {
        return Err(OverlinkedPair {
            cells,
            digits: ds.clone(),
        });
    }
    let mut graph = FlagLabeledGraph::with_vertices(Directedness::Undirected, geo.cells);
    let edges: Vec<_> = set.into_iter().collect();
    for &(a, b, d) in &edges {
        graph
            .add_edge(a, b, Label(u32::from(d)))
            .expect("cells are vertices");
    }
    Ok(BilocationGraph { graph, edges })
}

/// Bivalued cells, with an edge `(c1, c2; d)` when they share a group and
/// both admit `d`. One edge per `(c1, c2, d)` even if they share two groups.
#[derive(Clone, Debug)]
pub struct BivalueGraph {
    pub graph: FlagLabeledGraph,
    pub edges: Vec<(Cell, Cell, Digit)>,
}

pub fn build_bivalue_graph(board: &Board) -> BivalueGraph {
    let geo = board.geometry();
    let bivalued: Vec<Cell> = board
        .unplaced()
        .filter(|&c| board.candidates(c).count_ones() == 2)
        .collect();
    let mut set = BTreeSet::new();
    for (i, &a) in bivalued.iter().enumerate() {
        for &b in &bivalued[i + 1..] {
            if geo.shares_group(a, b) {
                for d in digits(board.candidates(a) & board.candidates(b)) {
                    set.insert((a, b, d));
                }
            }
        }
    }
    let mut graph = FlagLabeledGraph::with_vertices(Directedness::Undirected, geo.cells);
    let edges: Vec<_> = set.into_iter().collect();
    for &(a, b, d) in &edges {
        graph
            .add_edge(a, b, Label(u32::from(d)))
            .expect("cells are vertices");
    }
    BivalueGraph { graph, edges }
}

/// Bivalued cells joined to `(group, digit)` vertices. The flag at a cell is
/// the digit, `Label(d)`; the flag at `(g, d)` names the cell,
/// `Label(n + 1 + c)`. Two steps through a `(g, d)` vertex are one bivalue
/// edge, and flag nonrepetition at both kinds of vertex matches label
/// nonrepetition in the bivalue graph.
#[derive(Clone, Debug)]
pub struct BipartiteBivalueGraph {
    pub graph: FlagLabeledGraph,
    /// Vertices `0..cells` are cells; the rest are `(group, digit)` pairs.
    pub cells: usize,
    pub group_digit: Vec<(usize, Digit)>,
    pub n: usize,
}

impl BipartiteBivalueGraph {
    pub fn cell_label(&self, c: Cell) -> Label {
        Label((self.n + 1 + c) as u32)
    }

    pub fn label_cell(&self, l: Label) -> Option<Cell> {
        (l.0 as usize).checked_sub(self.n + 1)
    }

    /// The `(group, digit)` behind vertex `v`, if it is not a cell.
    pub fn group_digit_of(&self, v: VertexId) -> Option<(usize, Digit)> {
        v.checked_sub(self.cells).map(|i| self.group_digit[i])
    }
}

pub fn build_bipartite_bivalue_graph(board: &Board) -> BipartiteBivalueGraph {
    let geo = board.geometry();
    let n = geo.n;
    let mut graph = FlagLabeledGraph::with_vertices(Directedness::Undirected, geo.cells);
    let mut index: HashMap<(usize, Digit), VertexId> = HashMap::new();
    let mut group_digit = Vec::new();
    for c in board.unplaced() {
        let m = board.candidates(c);
        if m.count_ones() != 2 {
            continue;
        }
        for g in geo.groups_of(c) {
            for d in digits(m) {
                let v = *index.entry((g, d)).or_insert_with(|| {
                    group_digit.push((g, d));
                    graph.add_vertex()
                });
                graph
                    .add_flag_edge(c, v, Label(u32::from(d)), Label((n + 1 + c) as u32))
                    .expect("vertices exist");
            }
        }
    }
    BipartiteBivalueGraph {
        graph,
        cells: geo.cells,
        group_digit,
        n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sudoku::bit;

    fn admits(board: &Board, c: Cell, d: Digit) -> bool {
        board.candidates(c) & bit(d) != 0
    }

    fn board(s: &str) -> Board {
        Board::parse(s).unwrap()
    }

    const PUZZLE: &str =
        "4.....8.5.3..........7......2.....6.....8.4......1.......6.3.7.5..2.....1.4......";

    #[test]
    fn bilocation_edges_are_deduplicated_and_bounded() {
        let b = board(PUZZLE);
        let g = build_bilocation_graph(&b).unwrap();
        assert!(g.edges.len() <= 243);
        let mut sorted = g.edges.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), g.edges.len());
        for &(a, c, d) in &g.edges {
            assert!(admits(&b, a, d) && admits(&b, c, d));
        }
    }

    #[test]
    fn bivalued_cell_has_six_bipartite_edges() {
        let rows = ["123568...", ".........", ".........", "......94."];
        let b = board(&format!("{}{}", rows.concat(), ".".repeat(45)));
        let bip = build_bipartite_bivalue_graph(&b);
        let bivalued: Vec<Cell> = b
            .unplaced()
            .filter(|&c| b.candidates(c).count_ones() == 2)
            .collect();
        assert_eq!(bivalued, vec![6, 7]);
        for c in bivalued {
            assert_eq!(bip.graph.incident(c).len(), 6);
        }
        assert!(bip.graph.vertex_count() <= 4 * 81);
        assert!(bip.graph.edge_count() <= 6 * 81);
    }

    #[test]
    fn shared_digit_gives_bivalue_edge() {
        let rows = ["123568...", ".........", ".........", "......94."];
        let b = board(&format!("{}{}", rows.concat(), ".".repeat(45)));
        assert_eq!(b.candidates(6), bit(4) | bit(7));
        assert_eq!(b.candidates(7), bit(7) | bit(9));
        let g = build_bivalue_graph(&b);
        assert_eq!(g.edges, vec![(6, 7, 7)]);
    }
}
