//! Exhaustive enumeration of nonrepetitive simple paths and cycles, for small
//! graphs only. Used to cross-check the polynomial algorithms.

use std::collections::BTreeSet;

use crate::graph::{Dir, EdgeId, End, FlagLabeledGraph, GraphError, Label, VertexId};

pub const DEFAULT_ORACLE_BOUND: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleQuery {
    Paths { from: VertexId, to: VertexId },
    Cycles,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    /// Every path as `(edge, direction)` steps, in discovery order.
    Paths(Vec<Vec<(EdgeId, Dir)>>),
    /// Every cycle as its ascending edge set.
    Cycles(Vec<Vec<EdgeId>>),
}

pub fn oracle_enumerate(
    g: &FlagLabeledGraph,
    query: OracleQuery,
    bound: usize,
) -> Result<OracleAnswer, GraphError> {
    if g.vertex_count() > bound {
        return Err(GraphError::TooLarge {
            actual: g.vertex_count(),
            bound,
        });
    }
    let walker = Walker { g };
    match query {
        OracleQuery::Paths { from, to } => {
            for v in [from, to] {
                if v >= g.vertex_count() {
                    return Err(GraphError::UnknownVertex(v.to_string()));
                }
            }
            let mut out = Vec::new();
            if from == to {
                out.push(Vec::new());
            } else {
                let mut on_path = vec![false; g.vertex_count()];
                on_path[from] = true;
                walker.paths(from, None, to, &mut on_path, &mut Vec::new(), &mut out);
            }
            Ok(OracleAnswer::Paths(out))
        }
        OracleQuery::Cycles => {
            let mut found = BTreeSet::new();
            for s in 0..g.vertex_count() {
                walker.cycles_from(s, &mut found);
            }
            Ok(OracleAnswer::Cycles(found.into_iter().collect()))
        }
    }
}

struct Walker<'a> {
    g: &'a FlagLabeledGraph,
}

impl Walker<'_> {
    /// Steps leaving `v`: `(edge, dir, label at v, head, label at head)`.
    fn steps(
        &self,
        v: VertexId,
    ) -> impl Iterator<Item = (EdgeId, Dir, Label, VertexId, Label)> + '_ {
        self.g.incident(v).iter().filter_map(move |f| {
            let dir = match f.end {
                End::U => Dir::Forward,
                End::V if self.g.is_directed() => return None,
                End::V => Dir::Backward,
            };
            let e = self.g.edge(f.edge);
            if e.is_loop() {
                return None;
            }
            Some((
                f.edge,
                dir,
                e.label_at(dir.tail()),
                e.endpoint(dir.head()),
                e.label_at(dir.head()),
            ))
        })
    }

    fn paths(
        &self,
        v: VertexId,
        arrived: Option<Label>,
        target: VertexId,
        on_path: &mut [bool],
        cur: &mut Vec<(EdgeId, Dir)>,
        out: &mut Vec<Vec<(EdgeId, Dir)>>,
    ) {
        for (e, dir, leave, w, enter) in self.steps(v) {
            if Some(leave) == arrived || on_path[w] {
                continue;
            }
            cur.push((e, dir));
            if w == target {
                out.push(cur.clone());
            } else {
                on_path[w] = true;
                self.paths(w, Some(enter), target, on_path, cur, out);
                on_path[w] = false;
            }
            cur.pop();
        }
    }

    /// Cycles whose smallest vertex is `s`.
    fn cycles_from(&self, s: VertexId, found: &mut BTreeSet<Vec<EdgeId>>) {
        for (e, _, first, w, enter) in self.steps(s) {
            if w < s {
                continue;
            }
            let mut on_path = vec![false; self.g.vertex_count()];
            on_path[s] = true;
            on_path[w] = true;
            let mut cur = vec![e];
            self.close(s, first, w, enter, &mut on_path, &mut cur, found);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn close(
        &self,
        s: VertexId,
        first: Label,
        v: VertexId,
        arrived: Label,
        on_path: &mut [bool],
        cur: &mut Vec<EdgeId>,
        found: &mut BTreeSet<Vec<EdgeId>>,
    ) {
        for (e, _, leave, w, enter) in self.steps(v) {
            if leave == arrived || cur.contains(&e) {
                continue;
            }
            if w == s {
                if enter != first {
                    let mut set = cur.clone();
                    set.push(e);
                    set.sort_unstable();
                    found.insert(set);
                }
                continue;
            }
            if w < s || on_path[w] {
                continue;
            }
            on_path[w] = true;
            cur.push(e);
            self.close(s, first, w, enter, on_path, cur, found);
            cur.pop();
            on_path[w] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> FlagLabeledGraph {
        FlagLabeledGraph::parse(text).unwrap()
    }

    #[test]
    fn square_has_one_cycle_and_two_paths() {
        let h = g("graph undirected\nedge a b r\nedge b c b\nedge c d r\nedge d a b\n");
        assert_eq!(
            oracle_enumerate(&h, OracleQuery::Cycles, 12).unwrap(),
            OracleAnswer::Cycles(vec![vec![0, 1, 2, 3]])
        );
        let OracleAnswer::Paths(p) =
            oracle_enumerate(&h, OracleQuery::Paths { from: 0, to: 2 }, 12).unwrap()
        else {
            unreachable!()
        };
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn directed_two_cycle() {
        let h = g("graph directed\nedge a b x\nedge b a y\n");
        assert_eq!(
            oracle_enumerate(&h, OracleQuery::Cycles, 12).unwrap(),
            OracleAnswer::Cycles(vec![vec![0, 1]])
        );
    }

    #[test]
    fn bound_is_enforced() {
        let h = g("graph undirected\nedge a b 0\nedge b c 0\n");
        assert_eq!(
            oracle_enumerate(&h, OracleQuery::Cycles, 2),
            Err(GraphError::TooLarge {
                actual: 3,
                bound: 2
            })
        );
    }
}
