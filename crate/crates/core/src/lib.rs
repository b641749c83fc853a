pub mod graph;
pub mod matching;
pub mod nr;
pub mod scc;
pub mod simple;
pub mod sudoku;
