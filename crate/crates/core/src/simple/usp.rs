//! Reduction of an undirected labeled graph to one with labels 0 and 1 that
//! preserves nonrepetitive simple paths between original vertices.
//!
//! A vertex with `k` distinct labels becomes a centre plus two vertices
//! `(v,i,0)`, `(v,i,1)` per label `i`:
//!
//! ```text
//! centre -1- (v,i,0)      centre -0- (v,i,1)      (v,i,0) -1- (v,i,1)
//! ```
//!
//! and each original edge `{v,w}` becomes `(v,i,0) -0- (w,j,0)` for its flag
//! labels `i` at `v` and `j` at `w`.

use crate::graph::{Directedness, EdgeId, FlagLabeledGraph, GraphError, Label, VertexId};

pub const ZERO: Label = Label(0);
pub const ONE: Label = Label(1);

#[derive(Clone, Debug)]
pub struct UspGraph {
    pub graph: FlagLabeledGraph,
    /// Centre vertex of each original vertex.
    pub center: Vec<VertexId>,
    /// Original edge behind each reduced edge, for the label-0 connector edges.
    pub edge_origin: Vec<Option<EdgeId>>,
}

pub fn build_usp(g: &FlagLabeledGraph) -> Result<UspGraph, GraphError> {
    g.require_undirected()?;
    g.reject_self_loops()?;
    let mut out = FlagLabeledGraph::new(Directedness::Undirected);
    let mut edge_origin = Vec::new();
    let mut center = Vec::with_capacity(g.vertex_count());
    // per original vertex: (label, (v,i,0))
    let mut zero_side: Vec<Vec<(Label, VertexId)>> = Vec::with_capacity(g.vertex_count());

    let mut connect = |out: &mut FlagLabeledGraph, a, b, l, origin| {
        out.add_edge(a, b, l).expect("vertices exist");
        edge_origin.push(origin);
    };
    for v in 0..g.vertex_count() {
        let c = out.add_vertex();
        center.push(c);
        let mut sides = Vec::new();
        for (label, _) in g.group_flags_unchecked(v) {
            let a = out.add_vertex();
            let b = out.add_vertex();
            connect(&mut out, c, a, ONE, None);
            connect(&mut out, c, b, ZERO, None);
            connect(&mut out, a, b, ONE, None);
            sides.push((label, a));
        }
        sides.sort_by_key(|s| s.0);
        zero_side.push(sides);
    }
    let side = |v: VertexId, l: Label| {
        let s = &zero_side[v];
        s[s.binary_search_by_key(&l, |x| x.0)
            .expect("flag label has a gadget")]
        .1
    };
    for (id, e) in g.edges().iter().enumerate() {
        let (a, b) = (side(e.u, e.label_u), side(e.v, e.label_v));
        connect(&mut out, a, b, ZERO, Some(id));
    }
    out.set_label_names(vec!["0".into(), "1".into()]);
    Ok(UspGraph {
        graph: out,
        center,
        edge_origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_label_vertex_gets_five_vertices() {
        let g = FlagLabeledGraph::parse("graph undirected\nedge a b x\nedge a c y\n").unwrap();
        let usp = build_usp(&g).unwrap();
        // a: 2 labels -> 5, b and c: 1 label -> 3 each
        assert_eq!(usp.graph.vertex_count(), 5 + 3 + 3);
    }

    #[test]
    fn single_edge_has_the_one_zero_one_path() {
        let g = FlagLabeledGraph::parse("graph undirected\nedge p q 5\n").unwrap();
        let usp = build_usp(&g).unwrap();
        let (p, q) = (usp.center[0], usp.center[1]);
        let ug = &usp.graph;
        let find = |a: VertexId, b: VertexId, l: Label| {
            ug.edges()
                .iter()
                .any(|e| e.label_u == l && ((e.u == a && e.v == b) || (e.u == b && e.v == a)))
        };
        // (p,5,0) is the first gadget vertex after p's centre
        let (p0, q0) = (p + 1, q + 1);
        assert!(find(p, p0, ONE));
        assert!(find(p0, q0, ZERO));
        assert!(find(q0, q, ONE));
        assert_eq!(usp.edge_origin.iter().flatten().count(), 1);
    }

    #[test]
    fn directed_input_is_refused() {
        let g = FlagLabeledGraph::parse("graph directed\nedge a b x\n").unwrap();
        assert!(matches!(build_usp(&g), Err(GraphError::RequiresUndirected)));
    }
}
