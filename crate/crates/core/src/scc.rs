//! Compact digraphs, strongly connected components and reachability.

/// Adjacency in compressed sparse row form. Arc `i` is the `i`-th entry of
/// the arc list passed to [`Digraph::from_arcs`] after a stable sort by tail,
/// so per-node successor order follows insertion order.
#[derive(Clone, Debug, Default)]
pub struct Digraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    arc_ids: Vec<usize>,
}

impl Digraph {
    pub fn from_arcs(node_count: usize, arcs: &[(usize, usize)]) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for &(a, _) in arcs {
            offsets[a + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; arcs.len()];
        let mut arc_ids = vec![0; arcs.len()];
        for (id, &(a, b)) in arcs.iter().enumerate() {
            targets[fill[a]] = b;
            arc_ids[fill[a]] = id;
            fill[a] += 1;
        }
        Digraph {
            offsets,
            targets,
            arc_ids,
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// `(target, original arc index)` pairs leaving `v`.
    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.arc_ids[range].iter().copied())
    }

    /// Marks every node reachable from `sources` (sources included).
    pub fn reachable_from(&self, sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut stack: Vec<usize> = Vec::new();
        for s in sources {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(v) = stack.pop() {
            for &w in self.successors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Tarjan's algorithm without recursion. Returns the component id of every
/// node; ids are assigned in reverse topological order of the condensation,
/// so component 0 is a sink.
pub fn strongly_connected_components(g: &Digraph) -> Vec<u32> {
    const UNVISITED: usize = usize::MAX;
    let n = g.node_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![u32::MAX; n];
    let mut stack: Vec<usize> = Vec::new();
    // (node, position within its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0u32;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = g.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}
