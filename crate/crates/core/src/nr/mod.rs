//! The nonrepetitive-walk transformation.
//!
//! Every vertex of a flag-labeled graph is replaced by a reachability gadget
//! over its distinct flag labels, and every edge becomes a connector arc from
//! the exit node of its label at the tail to the entry node of its label at
//! the head (two connectors for an undirected edge). Ordinary paths of the
//! resulting digraph project onto walks of the input in which consecutive
//! edges meet at differently-labeled flags, and every such walk lifts back.

mod gadget;

use std::collections::VecDeque;
use std::sync::OnceLock;

pub use gadget::{build_reachability_gadget, Gadget};

use crate::graph::{Dir, Edge, EdgeId, FlagLabeledGraph, GraphError, Label, VertexId};
use crate::scc::{strongly_connected_components, Digraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Entry node for a label; connector arcs arrive here.
    In,
    /// Exit node for a label; connector arcs leave from here.
    Out,
    /// Node of a recursive sub-gadget.
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeOrigin {
    pub vertex: VertexId,
    pub label: Option<Label>,
    pub side: Side,
}

/// Entry and exit node of one label at one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Port {
    pub label: Label,
    pub input: usize,
    pub output: usize,
}

/// An edge traversal reachable by a nonrepetitive walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReachedEdge {
    pub edge: EdgeId,
    pub dir: Dir,
    pub from: VertexId,
    pub to: VertexId,
    /// Label of the flag at `to`.
    pub far_label: Label,
}

#[derive(Debug)]
pub struct NrGraph {
    directed: bool,
    edges: Vec<Edge>,
    digraph: Digraph,
    arcs: Vec<(usize, usize)>,
    arc_edge: Vec<Option<(EdgeId, Dir)>>,
    origin: Vec<NodeOrigin>,
    /// Per vertex, ports sorted by label.
    ports: Vec<Vec<Port>>,
    /// Per edge, the connector arc for each traversal direction.
    connectors: Vec<[Option<usize>; 2]>,
    scc: OnceLock<Vec<u32>>,
}

fn dir_slot(dir: Dir) -> usize {
    match dir {
        Dir::Forward => 0,
        Dir::Backward => 1,
    }
}

impl NrGraph {
    pub fn build(g: &FlagLabeledGraph) -> Result<NrGraph, GraphError> {
        g.reject_self_loops()?;
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        let mut origin: Vec<NodeOrigin> = Vec::new();
        let mut ports: Vec<Vec<Port>> = Vec::with_capacity(g.vertex_count());

        for v in 0..g.vertex_count() {
            let groups = g.group_flags_unchecked(v);
            if groups.is_empty() {
                ports.push(Vec::new());
                continue;
            }
            let first = origin.len();
            let mut next = first;
            let (inputs, outputs) = gadget::wire_gadget(groups.len(), &mut next, &mut arcs);
            origin.resize(
                next,
                NodeOrigin {
                    vertex: v,
                    label: None,
                    side: Side::Internal,
                },
            );
            let mut vp: Vec<Port> = groups
                .iter()
                .enumerate()
                .map(|(i, (label, _))| {
                    origin[inputs[i]] = NodeOrigin {
                        vertex: v,
                        label: Some(*label),
                        side: Side::In,
                    };
                    origin[outputs[i]] = NodeOrigin {
                        vertex: v,
                        label: Some(*label),
                        side: Side::Out,
                    };
                    Port {
                        label: *label,
                        input: inputs[i],
                        output: outputs[i],
                    }
                })
                .collect();
            vp.sort_by_key(|p| p.label);
            ports.push(vp);
        }

        let gadget_arcs = arcs.len();
        let mut arc_edge = vec![None; gadget_arcs];
        let mut connectors = vec![[None, None]; g.edge_count()];
        let directions: &[Dir] = if g.is_directed() {
            &[Dir::Forward]
        } else {
            &[Dir::Forward, Dir::Backward]
        };
        let find = |v: VertexId, label: Label| -> Port {
            let vp = &ports[v];
            vp[vp
                .binary_search_by_key(&label, |p| p.label)
                .expect("every flag label has a port")]
        };
        for (id, e) in g.edges().iter().enumerate() {
            for &dir in directions {
                let (tail, head) = (dir.tail(), dir.head());
                let a = find(e.endpoint(tail), e.label_at(tail)).output;
                let b = find(e.endpoint(head), e.label_at(head)).input;
                connectors[id][dir_slot(dir)] = Some(arcs.len());
                arcs.push((a, b));
                arc_edge.push(Some((id, dir)));
            }
        }

        Ok(NrGraph {
            directed: g.is_directed(),
            edges: g.edges().to_vec(),
            digraph: Digraph::from_arcs(origin.len(), &arcs),
            arcs,
            arc_edge,
            origin,
            ports,
            connectors,
            scc: OnceLock::new(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.origin.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn origin(&self, node: usize) -> NodeOrigin {
        self.origin[node]
    }

    pub fn ports(&self, v: VertexId) -> &[Port] {
        &self.ports[v]
    }

    pub fn port(&self, v: VertexId, label: Label) -> Option<Port> {
        let vp = self.ports.get(v)?;
        vp.binary_search_by_key(&label, |p| p.label)
            .ok()
            .map(|i| vp[i])
    }

    /// Connector arc `(exit node, entry node)` for an edge traversal; `None`
    /// for the backward direction of a directed edge.
    pub fn connector(&self, edge: EdgeId, dir: Dir) -> Option<(usize, usize)> {
        self.connectors[edge][dir_slot(dir)].map(|a| self.arcs[a])
    }

    fn directions(&self) -> &'static [Dir] {
        if self.directed {
            &[Dir::Forward]
        } else {
            &[Dir::Forward, Dir::Backward]
        }
    }

    /// Component ids of the nodes, sinks first. Computed once.
    pub fn component_ids(&self) -> &[u32] {
        self.scc
            .get_or_init(|| strongly_connected_components(&self.digraph))
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        let c = self.component_ids();
        c[a] == c[b]
    }

    /// Traversals whose connector arc lies inside a strongly connected component.
    pub fn cyclic_arcs(&self) -> Vec<(EdgeId, Dir)> {
        let mut out = Vec::new();
        for id in 0..self.edges.len() {
            for &dir in self.directions() {
                let (a, b) = self.connector(id, dir).expect("connector exists");
                if self.same_component(a, b) {
                    out.push((id, dir));
                }
            }
        }
        out
    }

    /// Edges lying on some closed nonrepetitive walk, ascending.
    pub fn cyclic_edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.cyclic_arcs().into_iter().map(|(e, _)| e).collect();
        out.dedup();
        out
    }

    /// Every edge traversal usable by a nonrepetitive walk that starts at `v`
    /// with a first flag labeled `x`. The starting traversals are included.
    pub fn reachable_edges(&self, v: VertexId, x: Label) -> Vec<ReachedEdge> {
        let Some(port) = self.port(v, x) else {
            return Vec::new();
        };
        let seen = self.digraph.reachable_from([port.output]);
        let mut out = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            for &dir in self.directions() {
                let (a, _) = self.connector(id, dir).expect("connector exists");
                if seen[a] {
                    out.push(ReachedEdge {
                        edge: id,
                        dir,
                        from: e.endpoint(dir.tail()),
                        to: e.endpoint(dir.head()),
                        far_label: e.label_at(dir.head()),
                    });
                }
            }
        }
        out
    }

    /// Nodes reachable from the exit node of `(v, x)`; empty if no such port.
    pub fn reach_from_port(&self, v: VertexId, x: Label) -> Vec<bool> {
        match self.port(v, x) {
            Some(p) => self.digraph.reachable_from([p.output]),
            None => vec![false; self.node_count()],
        }
    }

    /// A nonrepetitive walk from `src` to `dst` with the fewest edges, as
    /// edge traversals. `Some(vec![])` when `src == dst`.
    pub fn shortest_path(&self, src: VertexId, dst: VertexId) -> Option<Vec<(EdgeId, Dir)>> {
        if src == dst {
            return Some(Vec::new());
        }
        const UNSEEN: usize = usize::MAX;
        let n = self.node_count();
        let mut dist = vec![UNSEEN; n];
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut queue = VecDeque::new();
        for p in self.ports.get(src)? {
            dist[p.output] = 0;
            queue.push_back(p.output);
        }
        let mut done = vec![false; n];
        while let Some(node) = queue.pop_front() {
            if done[node] {
                continue;
            }
            done[node] = true;
            let o = self.origin[node];
            if o.vertex == dst && o.side == Side::In {
                let mut walk = Vec::new();
                let mut cur = node;
                while let Some((prev, arc)) = pred[cur] {
                    if let Some(t) = self.arc_edge[arc] {
                        walk.push(t);
                    }
                    cur = prev;
                }
                walk.reverse();
                return Some(walk);
            }
            for (next, arc) in self.digraph.out_arcs(node) {
                let w = usize::from(self.arc_edge[arc].is_some());
                let nd = dist[node] + w;
                if dist[next] == UNSEEN || nd < dist[next] {
                    dist[next] = nd;
                    pred[next] = Some((node, arc));
                    if w == 0 {
                        queue.push_front(next);
                    } else {
                        queue.push_back(next);
                    }
                }
            }
        }
        None
    }
}

pub fn build_nr(g: &FlagLabeledGraph) -> Result<NrGraph, GraphError> {
    NrGraph::build(g)
}

/// Edges of `g` that lie on a closed nonrepetitive walk.
pub fn cyclic_edges(g: &FlagLabeledGraph) -> Result<Vec<EdgeId>, GraphError> {
    Ok(NrGraph::build(g)?.cyclic_edges())
}

pub fn reachable_edges(
    g: &FlagLabeledGraph,
    v: VertexId,
    x: Label,
) -> Result<Vec<ReachedEdge>, GraphError> {
    if v >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(v.to_string()));
    }
    Ok(NrGraph::build(g)?.reachable_edges(v, x))
}

pub fn shortest_nonrepetitive_path(
    g: &FlagLabeledGraph,
    src: VertexId,
    dst: VertexId,
) -> Result<Option<Vec<(EdgeId, Dir)>>, GraphError> {
    for v in [src, dst] {
        if v >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(v.to_string()));
        }
    }
    Ok(NrGraph::build(g)?.shortest_path(src, dst))
}

/// Relabels every edge by its own id, so nonrepetitive walks of the result are
/// exactly the walks of `g` that never immediately reverse along an edge.
pub fn no_reversal_view(g: &FlagLabeledGraph) -> Result<FlagLabeledGraph, GraphError> {
    g.require_undirected()?;
    let mut view = g.relabeled(|id, _| (Label(id as u32), Label(id as u32)));
    view.set_label_names((0..g.edge_count()).map(|i| format!("e{i}")).collect());
    Ok(view)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Directedness;

    fn parse(text: &str) -> FlagLabeledGraph {
        FlagLabeledGraph::parse(text).unwrap()
    }

    #[test]
    fn labeled_triangle_is_fully_cyclic() {
        let g = parse("graph directed\nedge a b L1\nedge b c L2\nedge c a L3\n");
        let nr = NrGraph::build(&g).unwrap();
        assert_eq!(nr.cyclic_edges(), vec![0, 1, 2]);
    }

    #[test]
    fn forced_repetition_kills_the_cycle() {
        let g = parse("graph directed\nedge a b L1\nedge b c L1\nedge c a L2\n");
        assert!(cyclic_edges(&g).unwrap().is_empty());
    }

    #[test]
    fn single_edge_is_acyclic() {
        let g = parse("graph directed\nedge a b L1\n");
        let nr = NrGraph::build(&g).unwrap();
        let comp = nr.component_ids();
        let mut ids = comp.to_vec();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), nr.node_count());
    }

    #[test]
    fn self_loops_are_rejected() {
        let g = parse("graph undirected\nedge a a x\n");
        assert!(matches!(
            NrGraph::build(&g),
            Err(GraphError::SelfLoop { edge: 0 })
        ));
    }

    #[test]
    fn reach_follows_label_changes() {
        let g = parse("graph directed\nedge a b 1\nedge b c 2\n");
        let a = g.vertex_by_name("a").unwrap();
        let l1 = g.label_by_name("1").unwrap();
        let r = reachable_edges(&g, a, l1).unwrap();
        assert_eq!(r.iter().map(|e| e.edge).collect::<Vec<_>>(), vec![0, 1]);

        let g = parse("graph directed\nedge a b 1\nedge b c 1\n");
        let r = reachable_edges(&g, a, l1).unwrap();
        assert_eq!(r.iter().map(|e| e.edge).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn reach_with_unknown_label_is_empty() {
        let g = parse("graph directed\nedge a b 1\nedge b c 2\n");
        let l2 = g.label_by_name("2").unwrap();
        assert!(reachable_edges(&g, 0, l2).unwrap().is_empty());
    }

    #[test]
    fn shortest_avoids_repetition() {
        let g = parse("graph directed\nedge a b 1\nedge b c 2\n");
        let p = shortest_nonrepetitive_path(&g, 0, 2).unwrap().unwrap();
        assert_eq!(p, vec![(0, Dir::Forward), (1, Dir::Forward)]);

        let g = parse("graph directed\nedge a b 1\nedge b c 1\nedge a d 1\nedge d c 2\n");
        let (a, c) = (
            g.vertex_by_name("a").unwrap(),
            g.vertex_by_name("c").unwrap(),
        );
        let p = shortest_nonrepetitive_path(&g, a, c).unwrap().unwrap();
        assert_eq!(p.iter().map(|t| t.0).collect::<Vec<_>>(), vec![2, 3]);

        assert_eq!(shortest_nonrepetitive_path(&g, a, a).unwrap(), Some(vec![]));
        assert_eq!(shortest_nonrepetitive_path(&g, c, a).unwrap(), None);
    }

    #[test]
    fn no_reversal_view_of_an_edge_and_a_triangle() {
        let g = parse("graph undirected\nedge a b x\n");
        let view = no_reversal_view(&g).unwrap();
        assert!(cyclic_edges(&view).unwrap().is_empty());
        // without the view the back-and-forth walk repeats x, so also acyclic
        assert!(cyclic_edges(&g).unwrap().is_empty());

        let g = parse("graph undirected\nedge a b x\nedge b c x\nedge c a x\n");
        assert!(cyclic_edges(&g).unwrap().is_empty());
        let view = no_reversal_view(&g).unwrap();
        assert_eq!(cyclic_edges(&view).unwrap(), vec![0, 1, 2]);
        assert_eq!(view.label_name(view.edge(2).label_u), "e2");

        let d = FlagLabeledGraph::new(Directedness::Directed);
        assert!(matches!(
            no_reversal_view(&d),
            Err(GraphError::RequiresUndirected)
        ));
    }

    #[test]
    fn undirected_edges_get_two_connectors() {
        let g = parse("graph undirected\nedge a b x\nedge b c y\n");
        let nr = NrGraph::build(&g).unwrap();
        for e in 0..2 {
            for dir in [Dir::Forward, Dir::Backward] {
                let (a, b) = nr.connector(e, dir).unwrap();
                assert_eq!(nr.origin(a).side, Side::Out);
                assert_eq!(nr.origin(b).side, Side::In);
            }
        }
    }

    #[test]
    fn flag_labels_are_compared_per_vertex() {
        // a -(p|q)- b -(r|p)- c : at b the flags are q and r, so the walk continues
        let g = parse("graph directed\nflagedge a b p q\nflagedge b c r p\n");
        let p = g.label_by_name("p").unwrap();
        let r = reachable_edges(&g, 0, p).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].far_label, p);
    }
}
