//! Flag-labeled multigraphs, the substrate for every analysis in the crate.
//!
//! A *flag* is a (vertex, incident edge) pair. Each edge carries one label per
//! endpoint; an ordinary edge-labeled graph is the case where both labels of
//! every edge agree. Vertex names and label names are interned to dense
//! integers so the algorithms compare labels in constant time.
//!
//! Text format, one directive per line, `#` starting a comment:
//!
//! ```text
//! graph undirected
//! edge a b L1
//! flagedge b c x y
//! ```

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

/// An interned edge or flag label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Directedness {
    Directed,
    Undirected,
}

/// Which endpoint of an edge a flag sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    U,
    V,
}

impl End {
    pub fn other(self) -> End {
        match self {
            End::U => End::V,
            End::V => End::U,
        }
    }
}

/// Orientation in which an edge is traversed: `Forward` goes `u -> v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    /// The endpoint a traversal in this direction leaves from.
    pub fn tail(self) -> End {
        match self {
            Dir::Forward => End::U,
            Dir::Backward => End::V,
        }
    }

    pub fn head(self) -> End {
        self.tail().other()
    }

    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    pub edge: EdgeId,
    pub end: End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub label_u: Label,
    pub label_v: Label,
}

impl Edge {
    pub fn endpoint(&self, end: End) -> VertexId {
        match end {
            End::U => self.u,
            End::V => self.v,
        }
    }

    pub fn label_at(&self, end: End) -> Label {
        match end {
            End::U => self.label_u,
            End::V => self.label_v,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge {edge} is a self-loop; loops are not supported by this analysis")]
    SelfLoop { edge: EdgeId },
    #[error("this operation requires an undirected graph")]
    RequiresUndirected,
    #[error("edge {edge} has a label outside {{0, 1}}")]
    NotBinary { edge: EdgeId },
    #[error("graph has {actual} vertices, above the enumeration bound of {bound}")]
    TooLarge { actual: usize, bound: usize },
    #[error("gadget needs at least one label")]
    EmptyGadget,
}

/// Directed or undirected multigraph with a label on every flag.
#[derive(Clone, Debug)]
pub struct FlagLabeledGraph {
    directedness: Directedness,
    vertex_names: Vec<Option<String>>,
    vertex_lookup: HashMap<String, VertexId>,
    label_names: Vec<String>,
    label_lookup: HashMap<String, Label>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<Flag>>,
}

impl PartialEq for FlagLabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.directedness == other.directedness
            && self.edges == other.edges
            && self.vertex_count() == other.vertex_count()
            && (0..self.vertex_count()).all(|v| self.vertex_name(v) == other.vertex_name(v))
            && self.edges.iter().all(|e| {
                self.label_name(e.label_u) == other.label_name(e.label_u)
                    && self.label_name(e.label_v) == other.label_name(e.label_v)
            })
    }
}

impl FlagLabeledGraph {
    pub fn new(directedness: Directedness) -> Self {
        FlagLabeledGraph {
            directedness,
            vertex_names: Vec::new(),
            vertex_lookup: HashMap::new(),
            label_names: Vec::new(),
            label_lookup: HashMap::new(),
            edges: Vec::new(),
            incidence: Vec::new(),
        }
    }

    /// A graph with `n` anonymous vertices named by their index.
    pub fn with_vertices(directedness: Directedness, n: usize) -> Self {
        let mut g = Self::new(directedness);
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    pub fn directedness(&self) -> Directedness {
        self.directedness
    }

    pub fn is_directed(&self) -> bool {
        self.directedness == Directedness::Directed
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.vertex_names.push(None);
        self.incidence.push(Vec::new());
        self.incidence.len() - 1
    }

    /// Returns the existing vertex if the name is already in use.
    pub fn add_named_vertex(&mut self, name: &str) -> VertexId {
        if let Some(&v) = self.vertex_lookup.get(name) {
            return v;
        }
        let v = self.add_vertex();
        self.vertex_names[v] = Some(name.to_string());
        self.vertex_lookup.insert(name.to_string(), v);
        v
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> Cow<'_, str> {
        match self.vertex_names.get(v) {
            Some(Some(name)) => Cow::Borrowed(name.as_str()),
            _ => Cow::Owned(v.to_string()),
        }
    }

    /// Interns a label name. Interned labels are numbered from zero, so do not
    /// mix them with raw numeric labels in the same graph.
    pub fn intern_label(&mut self, name: &str) -> Label {
        if let Some(&l) = self.label_lookup.get(name) {
            return l;
        }
        let l = Label(self.label_names.len() as u32);
        self.label_names.push(name.to_string());
        self.label_lookup.insert(name.to_string(), l);
        l
    }

    pub fn label_by_name(&self, name: &str) -> Option<Label> {
        self.label_lookup.get(name).copied()
    }

    pub fn label_name(&self, label: Label) -> Cow<'_, str> {
        match self.label_names.get(label.0 as usize) {
            Some(name) => Cow::Borrowed(name.as_str()),
            None => Cow::Owned(label.0.to_string()),
        }
    }

    pub fn add_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        label: Label,
    ) -> Result<EdgeId, GraphError> {
        self.add_flag_edge(u, v, label, label)
    }

    pub fn add_flag_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        label_u: Label,
        label_v: Label,
    ) -> Result<EdgeId, GraphError> {
        for x in [u, v] {
            if x >= self.vertex_count() {
                return Err(GraphError::UnknownVertex(x.to_string()));
            }
        }
        let id = self.edges.len();
        self.edges.push(Edge {
            u,
            v,
            label_u,
            label_v,
        });
        self.incidence[u].push(Flag {
            edge: id,
            end: End::U,
        });
        self.incidence[v].push(Flag {
            edge: id,
            end: End::V,
        });
        Ok(id)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Flags at `v` in edge insertion order. A loop contributes two flags.
    pub fn incident(&self, v: VertexId) -> &[Flag] {
        &self.incidence[v]
    }

    pub fn flag_label(&self, flag: Flag) -> Label {
        self.edges[flag.edge].label_at(flag.end)
    }

    /// True when both flags of every edge carry the same label.
    pub fn is_edge_labeled(&self) -> bool {
        self.edges.iter().all(|e| e.label_u == e.label_v)
    }

    pub fn first_self_loop(&self) -> Option<EdgeId> {
        self.edges.iter().position(Edge::is_loop)
    }

    pub(crate) fn reject_self_loops(&self) -> Result<(), GraphError> {
        match self.first_self_loop() {
            Some(edge) => Err(GraphError::SelfLoop { edge }),
            None => Ok(()),
        }
    }

    pub(crate) fn require_undirected(&self) -> Result<(), GraphError> {
        if self.is_directed() {
            Err(GraphError::RequiresUndirected)
        } else {
            Ok(())
        }
    }

    /// Partitions the flags at `v` by label, labels in first-occurrence order.
    /// Direction is ignored here; gadget wiring honours it later.
    pub fn group_flags_by_label(&self, v: VertexId) -> Result<Vec<(Label, Vec<Flag>)>, GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::UnknownVertex(v.to_string()));
        }
        Ok(self.group_flags_unchecked(v))
    }

    pub(crate) fn group_flags_unchecked(&self, v: VertexId) -> Vec<(Label, Vec<Flag>)> {
        let mut slot: HashMap<Label, usize> = HashMap::new();
        let mut groups: Vec<(Label, Vec<Flag>)> = Vec::new();
        for &flag in &self.incidence[v] {
            let label = self.flag_label(flag);
            let i = *slot.entry(label).or_insert_with(|| {
                groups.push((label, Vec::new()));
                groups.len() - 1
            });
            groups[i].1.push(flag);
        }
        groups
    }

    /// Same vertices and edges with the edges in `keep` only; edge ids are renumbered
    /// densely and the returned vector maps new ids back to old ones.
    pub fn edge_subgraph(&self, keep: impl Fn(EdgeId) -> bool) -> (FlagLabeledGraph, Vec<EdgeId>) {
        let mut g = FlagLabeledGraph {
            directedness: self.directedness,
            vertex_names: self.vertex_names.clone(),
            vertex_lookup: self.vertex_lookup.clone(),
            label_names: self.label_names.clone(),
            label_lookup: self.label_lookup.clone(),
            edges: Vec::new(),
            incidence: vec![Vec::new(); self.vertex_count()],
        };
        let mut back = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if keep(id) {
                g.add_flag_edge(e.u, e.v, e.label_u, e.label_v)
                    .expect("vertices are shared with the parent graph");
                back.push(id);
            }
        }
        (g, back)
    }

    /// Copy of the graph with both flags of each edge relabelled.
    pub(crate) fn relabeled(
        &self,
        mut label_of: impl FnMut(EdgeId, &Edge) -> (Label, Label),
    ) -> FlagLabeledGraph {
        let mut g = self.edge_subgraph(|_| false).0;
        g.label_names.clear();
        g.label_lookup.clear();
        for (id, e) in self.edges.iter().enumerate() {
            let (a, b) = label_of(id, e);
            g.add_flag_edge(e.u, e.v, a, b).expect("same vertex set");
        }
        g
    }

    pub(crate) fn set_label_names(&mut self, names: Vec<String>) {
        self.label_lookup = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Label(i as u32)))
            .collect();
        self.label_names = names;
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<FlagLabeledGraph> = None;
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            let err = |message: String| GraphError::Parse {
                line: line_no,
                message,
            };
            match tokens[0] {
                "graph" => {
                    if graph.is_some() {
                        return Err(err("duplicate `graph` header".into()));
                    }
                    if tokens.len() != 2 {
                        return Err(err("expected `graph directed` or `graph undirected`".into()));
                    }
                    let d = match tokens[1] {
                        "directed" => Directedness::Directed,
                        "undirected" => Directedness::Undirected,
                        other => return Err(err(format!("unknown directedness `{other}`"))),
                    };
                    graph = Some(FlagLabeledGraph::new(d));
                }
                kw @ ("edge" | "flagedge") => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| err("edge before the `graph` header".into()))?;
                    let want = if kw == "edge" { 4 } else { 5 };
                    if tokens.len() != want {
                        return Err(err(format!(
                            "`{kw}` takes {} fields, found {}",
                            want - 1,
                            tokens.len() - 1
                        )));
                    }
                    let u = g.add_named_vertex(tokens[1]);
                    let v = g.add_named_vertex(tokens[2]);
                    let lu = g.intern_label(tokens[3]);
                    let lv = if kw == "edge" {
                        lu
                    } else {
                        g.intern_label(tokens[4])
                    };
                    g.add_flag_edge(u, v, lu, lv)
                        .expect("vertices were just added");
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        graph.ok_or(GraphError::Parse {
            line: last_line.max(1),
            message: "missing `graph` header".into(),
        })
    }

    /// Canonical text form; `parse` of the output reproduces the graph.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// One line describing an edge in file syntax, optionally reversed.
    pub fn edge_line(&self, id: EdgeId, dir: Dir) -> String {
        let e = &self.edges[id];
        let (a, b) = (e.endpoint(dir.tail()), e.endpoint(dir.head()));
        let (la, lb) = (e.label_at(dir.tail()), e.label_at(dir.head()));
        if la == lb {
            format!(
                "edge {} {} {}",
                self.vertex_name(a),
                self.vertex_name(b),
                self.label_name(la)
            )
        } else {
            format!(
                "flagedge {} {} {} {}",
                self.vertex_name(a),
                self.vertex_name(b),
                self.label_name(la),
                self.label_name(lb)
            )
        }
    }
}

impl fmt::Display for FlagLabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.directedness {
            Directedness::Directed => "directed",
            Directedness::Undirected => "undirected",
        };
        writeln!(f, "graph {kind}")?;
        for id in 0..self.edges.len() {
            writeln!(f, "{}", self.edge_line(id, Dir::Forward))?;
        }
        Ok(())
    }
}

impl FromStr for FlagLabeledGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_single_directed_edge() {
        let g = FlagLabeledGraph::parse("graph directed\nedge a b L1\n").unwrap();
        assert!(g.is_directed());
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        let e = g.edge(0);
        assert_eq!(g.vertex_name(e.u), "a");
        assert_eq!(g.vertex_name(e.v), "b");
        assert_eq!(g.label_name(e.label_u), "L1");
        assert!(g.is_edge_labeled());
    }

    #[test]
    fn multi_edges_are_kept() {
        let g = FlagLabeledGraph::parse("graph undirected\nedge a b 0\nedge b a 0\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert_ne!(g.edge(0), g.edge(1));
    }

    #[test]
    fn bad_directedness_names_line_one() {
        let err = FlagLabeledGraph::parse("graph sideways\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("# c\ngraph directed\ngraph directed\n", 3),
            ("graph directed\nedge a b\n", 2),
            ("edge a b c\n", 1),
            ("graph undirected\n\nvertex a\n", 3),
        ];
        for (text, line) in cases {
            match FlagLabeledGraph::parse(text) {
                Err(GraphError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
        assert!(FlagLabeledGraph::parse("").is_err());
    }

    #[test]
    fn comments_and_flag_edges() {
        let text = "# header comment\ngraph undirected # trailing\nflagedge p q x y\n";
        let g = FlagLabeledGraph::parse(text).unwrap();
        let e = g.edge(0);
        assert_eq!(g.label_name(e.label_u), "x");
        assert_eq!(g.label_name(e.label_v), "y");
        assert!(!g.is_edge_labeled());
        assert_eq!(g.to_text(), "graph undirected\nflagedge p q x y\n");
    }

    #[test]
    fn star_groups_in_first_occurrence_order() {
        let mut g = FlagLabeledGraph::with_vertices(Directedness::Undirected, 4);
        g.add_edge(0, 1, Label(1)).unwrap();
        g.add_edge(0, 2, Label(1)).unwrap();
        g.add_edge(0, 3, Label(2)).unwrap();
        let groups = g.group_flags_by_label(0).unwrap();
        let summary: Vec<(Label, Vec<EdgeId>)> = groups
            .into_iter()
            .map(|(l, fs)| (l, fs.into_iter().map(|f| f.edge).collect()))
            .collect();
        assert_eq!(summary, vec![(Label(1), vec![0, 1]), (Label(2), vec![2])]);
    }

    #[test]
    fn isolated_vertex_has_no_groups() {
        let g = FlagLabeledGraph::with_vertices(Directedness::Directed, 1);
        assert!(g.group_flags_by_label(0).unwrap().is_empty());
        assert!(matches!(
            g.group_flags_by_label(5),
            Err(GraphError::UnknownVertex(_))
        ));
    }

    #[test]
    fn grouping_ignores_direction() {
        let mut g = FlagLabeledGraph::with_vertices(Directedness::Directed, 3);
        g.add_edge(0, 1, Label(1)).unwrap();
        g.add_edge(1, 2, Label(1)).unwrap();
        let groups = g.group_flags_by_label(1).unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].1.len(), 2);
    }

    fn arb_graph() -> impl Strategy<Value = String> {
        (
            any::<bool>(),
            prop::collection::vec(
                (0..6usize, 0..6usize, 0..4usize, 0..4usize, any::<bool>()),
                0..12,
            ),
        )
            .prop_map(|(directed, edges)| {
                let mut s = format!(
                    "graph {}\n",
                    if directed { "directed" } else { "undirected" }
                );
                for (u, v, a, b, flag) in edges {
                    if flag && a != b {
                        s.push_str(&format!("flagedge v{u} v{v} L{a} L{b}\n"));
                    } else {
                        s.push_str(&format!("edge v{u} v{v} L{a}\n"));
                    }
                }
                s
            })
    }

    proptest! {
        #[test]
        fn canonical_text_round_trips(text in arb_graph()) {
            let g = FlagLabeledGraph::parse(&text).unwrap();
            prop_assert_eq!(g.to_text(), text.clone());
            prop_assert_eq!(FlagLabeledGraph::parse(&g.to_text()).unwrap(), g);
        }

        #[test]
        fn groups_partition_incident_flags(text in arb_graph()) {
            let g = FlagLabeledGraph::parse(&text).unwrap();
            for v in 0..g.vertex_count() {
                let groups = g.group_flags_by_label(v).unwrap();
                let total: usize = groups.iter().map(|(_, fs)| fs.len()).sum();
                prop_assert_eq!(total, g.incident(v).len());
                let degree: usize = g.edges().iter()
                    .map(|e| (e.u == v) as usize + (e.v == v) as usize)
                    .sum();
                prop_assert_eq!(total, degree);
                for (label, flags) in &groups {
                    prop_assert!(flags.iter().all(|&f| g.flag_label(f) == *label));
                }
            }
        }
    }
}
