//! Nonrepetitive simple paths and cycles in undirected flag-labeled graphs.
//!
//! Paths go through [`usp::build_usp`] and a skew-symmetric graph per choice
//! of end labels; regular reachability there is one augmenting-path search
//! in a general matching instance.

mod oracle;
mod peel;
pub mod ssg;
pub mod usp;

pub use oracle::{oracle_enumerate, OracleAnswer, OracleQuery, DEFAULT_ORACLE_BOUND};
pub use peel::has_nonrep_simple_cycle;
pub use ssg::{build_ssg, RegularPath, SkewSymmetricGraph};
pub use usp::{build_usp, UspGraph};

use crate::graph::{Dir, EdgeId, FlagLabeledGraph, GraphError, VertexId};

/// A shortest nonrepetitive simple path from `p` to `q` among the ones the
/// search finds, as `(edge, direction)` steps; `Some(vec![])` when `p == q`.
///
/// The witness is shortest among the four end-label combinations tried, not
/// necessarily the globally shortest path.
pub fn nonrep_simple_path(
    g: &FlagLabeledGraph,
    p: VertexId,
    q: VertexId,
) -> Result<Option<Vec<(EdgeId, Dir)>>, GraphError> {
    g.require_undirected()?;
    g.reject_self_loops()?;
    for v in [p, q] {
        if v >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(v.to_string()));
        }
    }
    if p == q {
        return Ok(Some(Vec::new()));
    }
    let usp = build_usp(g)?;
    let mut best: Option<Vec<(EdgeId, Dir)>> = None;
    for a in 0..2 {
        for b in 0..2 {
            let ssg = build_ssg(&usp.graph, usp.center[p], usp.center[q], a, b)?;
            let Some(r) = ssg.r_reach() else { continue };
            let path = project(g, &usp, &ssg, &r, p);
            if best.as_ref().is_none_or(|cur| path.len() < cur.len()) {
                best = Some(path);
            }
        }
    }
    Ok(best)
}

pub fn nonrep_simple_path_exists(
    g: &FlagLabeledGraph,
    p: VertexId,
    q: VertexId,
) -> Result<bool, GraphError> {
    Ok(nonrep_simple_path(g, p, q)?.is_some())
}

/// Maps a regular path of the skew-symmetric graph back to edges of `g`,
/// oriented to start at `p`.
fn project(
    g: &FlagLabeledGraph,
    usp: &UspGraph,
    ssg: &SkewSymmetricGraph,
    r: &RegularPath,
    p: VertexId,
) -> Vec<(EdgeId, Dir)> {
    let mut steps = Vec::new();
    for &arc in &r.arcs {
        let Some(ue) = ssg.tag(arc) else { continue };
        let Some(ge) = usp.edge_origin[ue] else {
            continue;
        };
        let tail = ssg.arcs()[arc].0 / 2;
        let dir = if usp.graph.edge(ue).u == tail {
            Dir::Forward
        } else {
            Dir::Backward
        };
        steps.push((ge, dir));
    }
    let starts_at_p = steps
        .first()
        .is_some_and(|&(e, d)| g.edge(e).endpoint(d.tail()) == p);
    if !starts_at_p {
        steps.reverse();
        for s in &mut steps {
            s.1 = s.1.flip();
        }
    }
    steps
}

/// Edges lying on some nonrepetitive simple cycle, ascending.
///
/// Edge `{u,v}` with labels `x` at `u` and `y` at `v` is on such a cycle iff
/// a nonrepetitive simple `u`..`v` path avoids it and leaves `u` and enters
/// `v` with other labels; the test drops every edge carrying `x` at `u` or `y`
/// at `v` and asks for any path.
pub fn simple_cycle_edges(g: &FlagLabeledGraph) -> Result<Vec<EdgeId>, GraphError> {
    g.require_undirected()?;
    g.reject_self_loops()?;
    let mut out = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let blocked = |f: EdgeId| {
            let o = g.edge(f);
            f == id
                || (o.u == e.u && o.label_u == e.label_u)
                || (o.v == e.u && o.label_v == e.label_u)
                || (o.u == e.v && o.label_u == e.label_v)
                || (o.v == e.v && o.label_v == e.label_v)
        };
        let (sub, _) = g.edge_subgraph(|f| !blocked(f));
        if nonrep_simple_path_exists(&sub, e.u, e.v)? {
            out.push(id);
        }
    }
    Ok(out)
}
