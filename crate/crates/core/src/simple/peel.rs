//! Existence of a nonrepetitive simple cycle by repeatedly deleting edges that
//! cannot lie on one.
//!
//! Three deletions are safe:
//! - every edge at a vertex whose flags all carry one label;
//! - bridges;
//! - every edge at a vertex `z` such that each component of `G - z` meets `z`
//!   through edges of a single label. A cycle through `z` stays inside one
//!   component of `G - z` apart from `z`, so it would enter and leave `z` with
//!   the same label.
//!
//! The first two alone are not enough: two triangles sharing a vertex `c`,
//! one with both `c`-flags red and the other with both blue, survive them but
//! have no such cycle. With the third rule the process stops with no edges
//! left exactly when no nonrepetitive simple cycle exists (a theorem of Yeo on
//! edge-coloured graphs without colour-separating cut vertices).

use std::collections::HashMap;

use crate::graph::{EdgeId, FlagLabeledGraph, GraphError, Label, VertexId};

pub fn has_nonrep_simple_cycle(g: &FlagLabeledGraph) -> Result<bool, GraphError> {
    g.require_undirected()?;
    g.reject_self_loops()?;
    let mut alive = vec![true; g.edge_count()];
    loop {
        let mut changed = false;
        for v in 0..g.vertex_count() {
            changed |= kill_monochrome_vertex(g, &mut alive, v);
        }
        for e in bridges(g, &alive) {
            alive[e] = false;
            changed = true;
        }
        for z in 0..g.vertex_count() {
            changed |= kill_separating_vertex(g, &mut alive, z);
        }
        if !changed {
            return Ok(alive.iter().any(|&a| a));
        }
    }
}

fn live_flags(g: &FlagLabeledGraph, alive: &[bool], v: VertexId) -> Vec<(EdgeId, Label)> {
    g.incident(v)
        .iter()
        .filter(|f| alive[f.edge])
        .map(|&f| (f.edge, g.flag_label(f)))
        .collect()
}

fn kill_monochrome_vertex(g: &FlagLabeledGraph, alive: &mut [bool], v: VertexId) -> bool {
    let flags = live_flags(g, alive, v);
    let Some(&(_, first)) = flags.first() else {
        return false;
    };
    if flags.iter().any(|&(_, l)| l != first) {
        return false;
    }
    for (e, _) in flags {
        alive[e] = false;
    }
    true
}

fn kill_separating_vertex(g: &FlagLabeledGraph, alive: &mut [bool], z: VertexId) -> bool {
    let flags = live_flags(g, alive, z);
    if flags.is_empty() {
        return false;
    }
    let mut dsu = Dsu::new(g.vertex_count());
    for (id, e) in g.edges().iter().enumerate() {
        if alive[id] && e.u != z && e.v != z {
            dsu.union(e.u, e.v);
        }
    }
    let mut seen: HashMap<usize, Label> = HashMap::new();
    for &(e, label) in &flags {
        let edge = g.edge(e);
        let w = if edge.u == z { edge.v } else { edge.u };
        let root = dsu.find(w);
        if *seen.entry(root).or_insert(label) != label {
            return false;
        }
    }
    for (e, _) in flags {
        alive[e] = false;
    }
    true
}

/// Bridges of the live multigraph, by iterative lowpoint DFS over edge ids.
fn bridges(g: &FlagLabeledGraph, alive: &[bool]) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut clock = 0;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        order[root] = clock;
        low[root] = clock;
        clock += 1;
        // (vertex, edge used to enter it, next incidence position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
            let inc = g.incident(v);
            if *pos < inc.len() {
                let f = inc[*pos];
                *pos += 1;
                if !alive[f.edge] || f.edge == via {
                    continue;
                }
                let w = g.edge(f.edge).endpoint(f.end.other());
                if order[w] == usize::MAX {
                    order[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, f.edge, 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > order[parent] {
                        out.push(via);
                    }
                }
            }
        }
    }
    out
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}
