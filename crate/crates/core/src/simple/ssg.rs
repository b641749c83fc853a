//! Skew-symmetric graphs and regular (r-) reachability.
//!
//! Nodes come in pairs `(2i, 2i+1)` and `sigma(x) = x ^ 1`. Arcs are always
//! added with their mirror `sigma(b) -> sigma(a)`, and a mirror pair occupies
//! arc indices `(2j, 2j+1)`. A path is regular when it never visits both `x`
//! and `sigma(x)`, except for the source pair itself.
//!
//! Regular reachability from `s` to `sigma(s)` reduces to an augmenting path:
//! take one vertex per node, match every pair except the source pair, and turn
//! each arc `a -> b` into the undirected edge `{sigma(a), b}`. The source pair
//! is replaced by one free terminal per out-arc of `s`.

use std::collections::HashMap;

use crate::graph::{EdgeId, FlagLabeledGraph, GraphError, VertexId};
use crate::matching::Blossom;

#[inline]
pub fn sigma(x: usize) -> usize {
    x ^ 1
}

#[derive(Clone, Debug)]
pub struct SkewSymmetricGraph {
    node_count: usize,
    source: usize,
    arcs: Vec<(usize, usize)>,
    tags: Vec<Option<usize>>,
}

/// A regular `s`..`sigma(s)` path: its nodes and the arcs taken between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularPath {
    pub nodes: Vec<usize>,
    pub arcs: Vec<usize>,
}

impl SkewSymmetricGraph {
    /// `pairs` node pairs; `source` is any node, its pair is the source pair.
    pub fn new(pairs: usize, source: usize) -> Self {
        assert!(source < 2 * pairs, "source {source} out of range");
        SkewSymmetricGraph {
            node_count: 2 * pairs,
            source,
            arcs: Vec::new(),
            tags: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn tag(&self, arc: usize) -> Option<usize> {
        self.tags[arc]
    }

    /// Adds `a -> b` and its mirror; returns the index of `a -> b`.
    pub fn add_arc_pair(&mut self, a: usize, b: usize, tag: Option<usize>) -> usize {
        assert!(a < self.node_count && b < self.node_count);
        let id = self.arcs.len();
        self.arcs.push((a, b));
        self.arcs.push((sigma(b), sigma(a)));
        self.tags.push(tag);
        self.tags.push(tag);
        id
    }

    /// Every arc's mirror is present.
    pub fn is_skew_symmetric(&self) -> bool {
        let set: std::collections::HashSet<_> = self.arcs.iter().copied().collect();
        self.arcs
            .iter()
            .all(|&(a, b)| set.contains(&(sigma(b), sigma(a))))
    }

    /// A regular path from the source to its mirror, if one exists.
    pub fn r_reach(&self) -> Option<RegularPath> {
        let s = self.source;
        let ss = sigma(s);
        if let Some(i) = self.arcs.iter().position(|&(a, b)| a == s && b == ss) {
            return Some(RegularPath {
                nodes: vec![s, ss],
                arcs: vec![i],
            });
        }
        let in_source_pair = |x: usize| x == s || x == ss;

        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_arc: HashMap<(usize, usize), usize> = HashMap::new();
        let mut add = |x: usize, y: usize, arc: usize, edges: &mut Vec<(usize, usize)>| {
            if x == y {
                return;
            }
            let key = (x.min(y), x.max(y));
            edge_arc.entry(key).or_insert_with(|| {
                edges.push(key);
                arc
            });
        };
        let mut terminals = Vec::new();
        let mut next = self.node_count;
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            if a == s {
                if !in_source_pair(b) {
                    let t = next;
                    next += 1;
                    terminals.push((t, i));
                    add(t, b, i, &mut edges);
                }
            } else if !in_source_pair(a) && !in_source_pair(b) {
                add(sigma(a), b, i, &mut edges);
            }
        }
        let mut blossom = Blossom::new(next, &[edges.as_slice(), &self.pair_edges()].concat());
        for x in (0..self.node_count).step_by(2) {
            if !in_source_pair(x) {
                blossom.set_matched(x, x + 1);
            }
        }
        let terminal_arc: HashMap<usize, usize> = terminals.iter().copied().collect();
        for &(t, _) in &terminals {
            let Some(mut path) = blossom.augment_from(t) else {
                continue;
            };
            path.reverse();
            // t_i, m1, sigma(m1), m2, sigma(m2), ..., t_j
            let inner = &path[1..path.len() - 1];
            debug_assert!(inner.len() % 2 == 0);
            let mut nodes = vec![s];
            let mut arcs = vec![terminal_arc[&t]];
            for (k, pair) in inner.chunks(2).enumerate() {
                debug_assert_eq!(pair[1], sigma(pair[0]));
                let m = pair[0];
                if k > 0 {
                    let prev = *nodes.last().unwrap();
                    let key = (sigma(prev).min(m), sigma(prev).max(m));
                    arcs.push(self.oriented(edge_arc[&key], prev, m));
                }
                nodes.push(m);
            }
            let last = *nodes.last().unwrap();
            let t_end = *path.last().unwrap();
            // the closing arc last -> sigma(s) mirrors s -> sigma(last)
            arcs.push(terminal_arc[&t_end] ^ 1);
            debug_assert_eq!(self.arcs[*arcs.last().unwrap()], (last, ss));
            nodes.push(ss);
            return Some(RegularPath { nodes, arcs });
        }
        None
    }

    fn pair_edges(&self) -> Vec<(usize, usize)> {
        (0..self.node_count)
            .step_by(2)
            .filter(|&x| x != self.source & !1)
            .map(|x| (x, x + 1))
            .collect()
    }

    /// The arc of the mirror pair containing `arc` that runs `from -> to`.
    fn oriented(&self, arc: usize, from: usize, to: usize) -> usize {
        if self.arcs[arc] == (from, to) {
            arc
        } else {
            debug_assert_eq!(self.arcs[arc ^ 1], (from, to));
            arc ^ 1
        }
    }

    /// Exhaustive search for a regular path; exponential, for tests.
    pub fn r_reach_brute(&self) -> bool {
        let s = self.source;
        let mut out = vec![Vec::new(); self.node_count];
        for &(a, b) in &self.arcs {
            out[a].push(b);
        }
        fn go(out: &[Vec<usize>], v: usize, target: usize, used: &mut [bool]) -> bool {
            for &w in &out[v] {
                if w == target {
                    return true;
                }
                if used[w] || used[sigma(w)] {
                    continue;
                }
                used[w] = true;
                if go(out, w, target, used) {
                    return true;
                }
                used[w] = false;
            }
            false
        }
        let mut used = vec![false; self.node_count];
        used[s] = true;
        used[sigma(s)] = true;
        go(&out, s, sigma(s), &mut used)
    }
}

/// Node of `(v, bit)` in the graph built by [`build_ssg`].
fn node(v: VertexId, bit: usize) -> usize {
    2 * v + bit
}

fn bit_of(
    g: &FlagLabeledGraph,
    label: crate::graph::Label,
    edge: EdgeId,
) -> Result<usize, GraphError> {
    match g.label_name(label).as_ref() {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(GraphError::NotBinary { edge }),
    }
}

/// Skew-symmetric graph of an undirected edge-labeled graph with labels `0`
/// and `1`, for paths from `p` starting with label `a` to `q` ending with
/// label `b`. Node `(v, x)` means "at `v`, last label `x`"; the source pair is
/// the last one. Arc tags are edge ids of `g`.
pub fn build_ssg(
    g: &FlagLabeledGraph,
    p: VertexId,
    q: VertexId,
    a: usize,
    b: usize,
) -> Result<SkewSymmetricGraph, GraphError> {
    g.require_undirected()?;
    let n = g.vertex_count();
    for v in [p, q] {
        if v >= n {
            return Err(GraphError::UnknownVertex(v.to_string()));
        }
    }
    let mut ssg = SkewSymmetricGraph::new(n + 1, 2 * n);
    for (id, e) in g.edges().iter().enumerate() {
        let l = bit_of(g, e.label_u, id)?;
        if bit_of(g, e.label_v, id)? != l {
            return Err(GraphError::NotBinary { edge: id });
        }
        if e.is_loop() {
            continue;
        }
        // arriving by label l forbids leaving by l
        ssg.add_arc_pair(node(e.u, 1 - l), node(e.v, l), Some(id));
    }
    let s = ssg.source();
    ssg.add_arc_pair(s, node(p, 1 - a), None);
    ssg.add_arc_pair(s, node(q, 1 - b), None);
    Ok(ssg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn node_count_is_two_n_plus_two() {
        let g = FlagLabeledGraph::parse("graph undirected\nedge a b 0\nedge b c 1\n").unwrap();
        let ssg = build_ssg(&g, 0, 2, 0, 1).unwrap();
        assert_eq!(ssg.node_count(), 2 * 3 + 2);
        assert!(ssg.is_skew_symmetric());
    }

    #[test]
    fn alternating_path_is_regular_reachable() {
        let g = FlagLabeledGraph::parse("graph undirected\nedge a b 0\nedge b c 1\n").unwrap();
        let ssg = build_ssg(&g, 0, 2, 0, 1).unwrap();
        let r = ssg.r_reach().unwrap();
        let tags: Vec<_> = r.arcs.iter().filter_map(|&i| ssg.tag(i)).collect();
        assert_eq!(tags, vec![0, 1]);
        // wrong end labels: nothing
        assert!(build_ssg(&g, 0, 2, 1, 1).unwrap().r_reach().is_none());
    }

    #[test]
    fn repeated_label_blocks() {
        let g = FlagLabeledGraph::parse("graph undirected\nedge a b 0\nedge b c 0\n").unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert!(build_ssg(&g, 0, 2, a, b).unwrap().r_reach().is_none());
            }
        }
    }

    #[test]
    fn non_binary_label_rejected() {
        let g = FlagLabeledGraph::parse("graph undirected\nedge a b 7\n").unwrap();
        assert!(matches!(
            build_ssg(&g, 0, 1, 0, 0),
            Err(GraphError::NotBinary { edge: 0 })
        ));
    }

    fn check_path(g: &SkewSymmetricGraph, r: &RegularPath) {
        assert_eq!(r.nodes.first(), Some(&g.source()));
        assert_eq!(r.nodes.last(), Some(&sigma(g.source())));
        assert_eq!(r.arcs.len() + 1, r.nodes.len());
        for (k, &arc) in r.arcs.iter().enumerate() {
            assert_eq!(g.arcs()[arc], (r.nodes[k], r.nodes[k + 1]));
        }
        let mut seen = std::collections::HashSet::new();
        for &x in &r.nodes[1..r.nodes.len() - 1] {
            assert!(seen.insert(x / 2), "pair of {x} visited twice");
        }
    }

    proptest! {
        #[test]
        fn matches_brute_force(pairs in 2usize..7, raw in prop::collection::vec((0usize..14, 0usize..14), 0..14)) {
            let n = 2 * pairs;
            let mut g = SkewSymmetricGraph::new(pairs, n - 2);
            for (a, b) in raw {
                let (a, b) = (a % n, b % n);
                g.add_arc_pair(a, b, None);
            }
            let fast = g.r_reach();
            prop_assert_eq!(fast.is_some(), g.r_reach_brute());
            if let Some(r) = fast {
                check_path(&g, &r);
            }
        }
    }
}
