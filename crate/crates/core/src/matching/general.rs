//! Maximum matching in general graphs by Edmonds' blossom contraction.

const NONE: usize = usize::MAX;

/// Blossom search state over a fixed simple undirected graph.
#[derive(Clone, Debug)]
pub(crate) struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom {
    /// Parallel edges and loops in `edges` are ignored.
    pub(crate) fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a != b && !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    /// Seeds the search with a matching; the pairs must be graph edges.
    pub(crate) fn set_matched(&mut self, a: usize, b: usize) {
        debug_assert!(self.adj[a].contains(&b));
        self.mate[a] = b;
        self.mate[b] = a;
    }

    #[cfg(test)]
    pub(crate) fn mate(&self, v: usize) -> Option<usize> {
        (self.mate[v] != NONE).then_some(self.mate[v])
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches for an augmenting path from the free vertex `root`; returns its
    /// other end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for u in 0..n {
                        if self.in_blossom[self.base[u]] {
                            self.base[u] = cur;
                            if !self.used[u] {
                                self.used[u] = true;
                                queue.push_back(u);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Finds and applies an augmenting path from `root`, returning the path's
    /// vertices from its far end back to `root`.
    pub(crate) fn augment_from(&mut self, root: usize) -> Option<Vec<usize>> {
        if self.mate[root] != NONE {
            return None;
        }
        let end = self.find_path(root)?;
        let mut path = Vec::new();
        let mut v = end;
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            path.push(v);
            path.push(pv);
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
        Some(path)
    }

    pub(crate) fn maximize(&mut self) {
        for v in 0..self.adj.len() {
            if self.mate[v] == NONE {
                self.augment_from(v);
            }
        }
    }

    pub(crate) fn into_mates(self) -> Vec<Option<usize>> {
        self.mate
            .into_iter()
            .map(|m| (m != NONE).then_some(m))
            .collect()
    }
}

/// Maximum-cardinality matching of the undirected graph on `n` vertices;
/// entry `v` of the result is `v`'s partner.
pub fn max_general_matching(n: usize, edges: &[(usize, usize)]) -> Vec<Option<usize>> {
    let mut b = Blossom::new(n, edges);
    b.maximize();
    b.into_mates()
}

pub fn matching_size(mates: &[Option<usize>]) -> usize {
    mates.iter().flatten().count() / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    #[test]
    fn triangle_and_pentagon() {
        assert_eq!(matching_size(&max_general_matching(3, &cycle(3))), 1);
        assert_eq!(matching_size(&max_general_matching(5, &cycle(5))), 2);
        assert_eq!(matching_size(&max_general_matching(6, &cycle(6))), 3);
    }

    #[test]
    fn blossom_needs_contraction() {
        // pentagon 0..4 with a pendant path off vertex 4; naive search stalls
        let mut edges = cycle(5);
        edges.extend([(4, 5), (0, 6), (6, 7)]);
        assert_eq!(matching_size(&max_general_matching(8, &edges)), 4);
    }

    #[test]
    fn augment_from_returns_a_valid_alternating_path() {
        let mut b = Blossom::new(4, &[(0, 1), (1, 2), (2, 3)]);
        b.set_matched(1, 2);
        let path = b.augment_from(0).unwrap();
        assert_eq!(path, vec![3, 2, 1, 0]);
        assert_eq!(b.mate(0), Some(1));
        assert_eq!(b.mate(3), Some(2));
    }

    fn brute_max(n: usize, edges: &[(usize, usize)]) -> usize {
        let m = edges.len();
        let mut best = 0;
        for mask in 0u32..1 << m {
            let mut used = vec![false; n];
            let mut ok = true;
            let mut count = 0;
            for (i, &(a, b)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if a == b || used[a] || used[b] {
                        ok = false;
                        break;
                    }
                    used[a] = true;
                    used[b] = true;
                    count += 1;
                }
            }
            if ok {
                best = best.max(count);
            }
        }
        best
    }

    proptest! {
        #[test]
        fn equals_brute_force(n in 1usize..13, raw in prop::collection::btree_set((0usize..12, 0usize..12), 0..16)) {
            let edges: Vec<_> = raw.into_iter()
                .map(|(a, b)| (a % n, b % n))
                .filter(|&(a, b)| a < b)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let mates = max_general_matching(n, &edges);
            for (v, m) in mates.iter().enumerate() {
                if let Some(w) = *m {
                    prop_assert_eq!(mates[w], Some(v));
                    prop_assert!(edges.contains(&(v.min(w), v.max(w))));
                }
            }
            prop_assert_eq!(matching_size(&mates), brute_max(n, &edges));
        }
    }
}
