//! Bipartite maximum matching and per-edge classification against all
//! maximum matchings.

use crate::scc::{strongly_connected_components, Digraph};

use super::MatchingError;

#[derive(Clone, Debug)]
pub struct BipartiteInstance {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
    /// Per left vertex, `(right vertex, edge index)` in edge order.
    adj: Vec<Vec<(usize, usize)>>,
}

impl BipartiteInstance {
    pub fn new(
        left: usize,
        right: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, MatchingError> {
        let mut adj = vec![Vec::new(); left];
        let mut seen = std::collections::HashSet::new();
        for (i, &(l, r)) in edges.iter().enumerate() {
            if l >= left || r >= right {
                return Err(MatchingError::IndexOutOfRange { edge: i });
            }
            if !seen.insert((l, r)) {
                return Err(MatchingError::DuplicateEdge { edge: i });
            }
            adj[l].push((r, i));
        }
        Ok(BipartiteInstance {
            left,
            right,
            edges,
            adj,
        })
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
    /// Indices of matched edges, ascending.
    pub edges: Vec<usize>,
}

impl BipartiteMatching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// In every maximum matching.
    Mandatory,
    /// In no maximum matching.
    Forbidden,
    Optional,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClassification {
    pub classes: Vec<EdgeClass>,
    pub matching_size: usize,
    /// False when no perfect matching exists; classes are then relative to
    /// maximum matchings.
    pub perfect: bool,
}

fn kuhn(inst: &BipartiteInstance, skip: Option<usize>) -> BipartiteMatching {
    fn augment(
        inst: &BipartiteInstance,
        skip: Option<usize>,
        l: usize,
        visited: &mut [bool],
        left_mate: &mut [Option<(usize, usize)>],
        right_mate: &mut [Option<usize>],
    ) -> bool {
        for &(r, e) in &inst.adj[l] {
            if Some(e) == skip || visited[r] {
                continue;
            }
            visited[r] = true;
            let free = match right_mate[r] {
                None => true,
                Some(other) => augment(inst, skip, other, visited, left_mate, right_mate),
            };
            if free {
                left_mate[l] = Some((r, e));
                right_mate[r] = Some(l);
                return true;
            }
        }
        false
    }

    let mut left_mate: Vec<Option<(usize, usize)>> = vec![None; inst.left];
    let mut right_mate = vec![None; inst.right];
    let mut visited = vec![false; inst.right];
    for l in 0..inst.left {
        visited.iter_mut().for_each(|v| *v = false);
        augment(inst, skip, l, &mut visited, &mut left_mate, &mut right_mate);
    }
    let mut edges: Vec<usize> = left_mate.iter().flatten().map(|&(_, e)| e).collect();
    edges.sort_unstable();
    BipartiteMatching {
        left_mate: left_mate.iter().map(|m| m.map(|(r, _)| r)).collect(),
        right_mate,
        edges,
    }
}

/// Maximum-cardinality matching by augmenting paths, scanning left vertices
/// in index order and their edges in instance order.
pub fn max_bipartite_matching(inst: &BipartiteInstance) -> BipartiteMatching {
    kuhn(inst, None)
}

/// Marks the edges that belong to no maximum matching, given one maximum
/// matching `m`.
///
/// Orient matched edges left to right and the rest right to left. An
/// unmatched edge can be swapped in exactly when it closes an alternating
/// cycle (both ends in one strong component) or extends an even alternating
/// path from a free vertex.
pub fn forbidden_edges(inst: &BipartiteInstance, m: &BipartiteMatching) -> Vec<bool> {
    let n = inst.left + inst.right;
    let matched: std::collections::HashSet<usize> = m.edges.iter().copied().collect();
    let mut arcs = Vec::with_capacity(inst.edges.len());
    for (i, &(l, r)) in inst.edges.iter().enumerate() {
        if matched.contains(&i) {
            arcs.push((l, inst.left + r));
        } else {
            arcs.push((inst.left + r, l));
        }
    }
    let forward = Digraph::from_arcs(n, &arcs);
    let comp = strongly_connected_components(&forward);

    let free_right = (0..inst.right)
        .filter(|&r| m.right_mate[r].is_none())
        .map(|r| inst.left + r);
    let from_free_right = forward.reachable_from(free_right);
    let reversed: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (b, a)).collect();
    let backward = Digraph::from_arcs(n, &reversed);
    let free_left = (0..inst.left).filter(|&l| m.left_mate[l].is_none());
    let to_free_left = backward.reachable_from(free_left);

    inst.edges
        .iter()
        .enumerate()
        .map(|(i, &(l, r))| {
            if matched.contains(&i) {
                return false;
            }
            let rn = inst.left + r;
            !(comp[l] == comp[rn] || from_free_right[rn] || to_free_left[l])
        })
        .collect()
}

/// Classifies each edge as mandatory, forbidden or optional with respect to
/// maximum matchings. Mandatory edges are found by removing each matched
/// edge and re-solving.
pub fn classify_edges(inst: &BipartiteInstance) -> Result<EdgeClassification, MatchingError> {
    if inst.left == 0 && inst.right == 0 {
        return Err(MatchingError::EmptyInstance);
    }
    let m = max_bipartite_matching(inst);
    let forbidden = forbidden_edges(inst, &m);
    let mut classes: Vec<EdgeClass> = forbidden
        .iter()
        .map(|&f| {
            if f {
                EdgeClass::Forbidden
            } else {
                EdgeClass::Optional
            }
        })
        .collect();
    for &e in &m.edges {
        if kuhn(inst, Some(e)).size() < m.size() {
            classes[e] = EdgeClass::Mandatory;
        }
    }
    Ok(EdgeClassification {
        classes,
        matching_size: m.size(),
        perfect: m.size() == inst.left && m.size() == inst.right,
    })
}
