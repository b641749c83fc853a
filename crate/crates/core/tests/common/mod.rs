//! Independent oracles and corpora shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nonrep::graph::{Dir, Directedness, EdgeId, FlagLabeledGraph, Label, VertexId};
use nonrep::sudoku::gen::{generate, puzzle_seed};
use nonrep::sudoku::Board;

pub type Traversal = (EdgeId, Dir);

/// Random graph on at most `max_n` vertices and `labels` labels, no loops.
/// With `flags`, each end of an edge draws its own label.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    directed: bool,
    max_n: usize,
    labels: u32,
    flags: bool,
) -> FlagLabeledGraph {
    let dir = if directed {
        Directedness::Directed
    } else {
        Directedness::Undirected
    };
    let n = rng.gen_range(2..=max_n as u32) as usize;
    let mut g = FlagLabeledGraph::with_vertices(dir, n);
    let m = rng.gen_range(0..=(2 * n) as u32);
    for _ in 0..m {
        let u = rng.gen_range(0..n as u32) as usize;
        let v = rng.gen_range(0..n as u32) as usize;
        if u == v {
            continue;
        }
        let lu = Label(rng.gen_range(0..labels));
        if flags {
            let lv = Label(rng.gen_range(0..labels));
            g.add_flag_edge(u, v, lu, lv).unwrap();
        } else {
            g.add_edge(u, v, lu).unwrap();
        }
    }
    g
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn traversals(g: &FlagLabeledGraph) -> Vec<Traversal> {
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        out.push((e, Dir::Forward));
        if !g.is_directed() {
            out.push((e, Dir::Backward));
        }
    }
    out
}

fn tail(g: &FlagLabeledGraph, (e, d): Traversal) -> (VertexId, Label) {
    let edge = g.edge(e);
    (edge.endpoint(d.tail()), edge.label_at(d.tail()))
}

fn head(g: &FlagLabeledGraph, (e, d): Traversal) -> (VertexId, Label) {
    let edge = g.edge(e);
    (edge.endpoint(d.head()), edge.label_at(d.head()))
}

/// The walk state graph: one state per edge traversal, with a move to every
/// traversal that leaves the arrival vertex by a different flag label.
pub struct StateGraph {
    pub states: Vec<Traversal>,
    pub next: Vec<Vec<usize>>,
}

impl StateGraph {
    pub fn new(g: &FlagLabeledGraph) -> StateGraph {
        let states = traversals(g);
        let next = states
            .iter()
            .map(|&t| {
                let (w, arrive) = head(g, t);
                (0..states.len())
                    .filter(|&j| {
                        let (x, leave) = tail(g, states[j]);
                        x == w && leave != arrive
                    })
                    .collect()
            })
            .collect();
        StateGraph { states, next }
    }

    fn closure(&self, starts: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut queue: VecDeque<usize> = starts.into_iter().collect();
        for &s in &queue {
            seen[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            for &t in &self.next[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Edges some traversal of which can be repeated by a longer walk.
    pub fn cyclic_edges(&self) -> Vec<EdgeId> {
        let mut out = BTreeSet::new();
        for (i, &(e, _)) in self.states.iter().enumerate() {
            if self.closure(self.next[i].iter().copied())[i] {
                out.insert(e);
            }
        }
        out.into_iter().collect()
    }

    pub fn reachable(&self, g: &FlagLabeledGraph, v: VertexId, x: Label) -> BTreeSet<Traversal> {
        let starts = (0..self.states.len()).filter(|&i| tail(g, self.states[i]) == (v, x));
        let seen = self.closure(starts);
        (0..self.states.len())
            .filter(|&i| seen[i])
            .map(|i| self.states[i])
            .collect()
    }
}

/// The obvious construction: per vertex, an in node and an out node for each
/// label, with in(x) -> out(y) for every x != y; reachability by BFS.
pub struct QuadraticNr {
    nodes: usize,
    adj: Vec<Vec<usize>>,
    port: Vec<std::collections::HashMap<Label, (usize, usize)>>,
    connector: Vec<(Traversal, usize, usize)>,
}

impl QuadraticNr {
    pub fn new(g: &FlagLabeledGraph) -> QuadraticNr {
        let mut port = vec![std::collections::HashMap::new(); g.vertex_count()];
        let mut nodes = 0;
        for (v, p) in port.iter_mut().enumerate() {
            for f in g.incident(v) {
                let l = g.flag_label(*f);
                p.entry(l).or_insert_with(|| {
                    nodes += 2;
                    (nodes - 2, nodes - 1)
                });
            }
        }
        let mut adj = vec![Vec::new(); nodes];
        for p in &port {
            for (&x, &(inp, _)) in p {
                for (&y, &(_, out)) in p {
                    if x != y {
                        adj[inp].push(out);
                    }
                }
            }
        }
        let mut connector = Vec::new();
        for t in traversals(g) {
            let (u, lu) = tail(g, t);
            let (w, lw) = head(g, t);
            let a = port[u][&lu].1;
            let b = port[w][&lw].0;
            adj[a].push(b);
            connector.push((t, a, b));
        }
        QuadraticNr {
            nodes,
            adj,
            port,
            connector,
        }
    }

    fn reach(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn cyclic_edges(&self) -> Vec<EdgeId> {
        let mut out = BTreeSet::new();
        for &((e, _), a, b) in &self.connector {
            if self.reach(b)[a] {
                out.insert(e);
            }
        }
        out.into_iter().collect()
    }

    pub fn reachable(&self, v: VertexId, x: Label) -> BTreeSet<Traversal> {
        let Some(&(_, out)) = self.port[v].get(&x) else {
            return BTreeSet::new();
        };
        let seen = self.reach(out);
        self.connector
            .iter()
            .filter(|&&(_, a, _)| seen[a])
            .map(|&(t, _, _)| t)
            .collect()
    }
}

/// Whether a nonrepetitive path with distinct vertices joins `p` to `q`, by
/// exhaustive DFS. Small graphs only.
pub fn simple_path_exists(g: &FlagLabeledGraph, p: VertexId, q: VertexId) -> bool {
    fn dfs(
        g: &FlagLabeledGraph,
        at: VertexId,
        last: Option<Label>,
        q: VertexId,
        used: &mut Vec<bool>,
    ) -> bool {
        if at == q {
            return true;
        }
        for f in g.incident(at) {
            let e = g.edge(f.edge);
            if last == Some(e.label_at(f.end)) {
                continue;
            }
            let w = e.endpoint(f.end.other());
            if used[w] {
                continue;
            }
            used[w] = true;
            let found = dfs(g, w, Some(e.label_at(f.end.other())), q, used);
            used[w] = false;
            if found {
                return true;
            }
        }
        false
    }
    let mut used = vec![false; g.vertex_count()];
    used[p] = true;
    dfs(g, p, None, q, &mut used)
}

/// Clue grid of the `i`-th corpus puzzle.
pub fn corpus_puzzle(i: usize) -> Board {
    generate(3, puzzle_seed(CORPUS_SEED, i as u64), true)
        .unwrap()
        .puzzle
}

pub const CORPUS_SEED: u64 = 20_240_611;

/// 200 generated 9x9 puzzles, shared across tests in one binary.
pub fn corpus() -> &'static [Board] {
    static CORPUS: OnceLock<Vec<Board>> = OnceLock::new();
    CORPUS.get_or_init(|| (0..200).map(corpus_puzzle).collect())
}

/// Backtracking solution independent of the library: plain row-major search.
pub fn brute_solution(board: &Board) -> Option<Vec<u8>> {
    let n = board.size();
    let b = board.box_side();
    let mut v = board.values().to_vec();
    fn ok(v: &[u8], n: usize, b: usize, c: usize, d: u8) -> bool {
        let (r, col) = (c / n, c % n);
        (0..n).all(|i| v[r * n + i] != d && v[i * n + col] != d) && {
            let (r0, c0) = (r / b * b, col / b * b);
            (0..b).all(|i| (0..b).all(|j| v[(r0 + i) * n + c0 + j] != d))
        }
    }
    fn go(v: &mut Vec<u8>, n: usize, b: usize, from: usize) -> bool {
        let Some(c) = (from..v.len()).find(|&c| v[c] == 0) else {
            return true;
        };
        for d in 1..=n as u8 {
            if ok(v, n, b, c, d) {
                v[c] = d;
                if go(v, n, b, c + 1) {
                    return true;
                }
                v[c] = 0;
            }
        }
        false
    }
    go(&mut v, n, b, 0).then_some(v)
}
