use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::label::{Label, Mark};
use super::GraphError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: NodeId,
    pub target: NodeId,
    pub label: Label,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// Node declaration accepted by [`HostGraph::build`].
#[derive(Clone, Debug)]
pub struct NodeSpec {
    pub name: String,
    pub label: Label,
}

impl NodeSpec {
    pub fn new(name: impl Into<String>, label: Label) -> Self {
        NodeSpec { name: name.into(), label }
    }
}

/// Edge declaration accepted by [`HostGraph::build`]; endpoints refer to node names.
#[derive(Clone, Debug)]
pub struct EdgeSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub label: Label,
}

impl EdgeSpec {
    pub fn new(
        name: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        label: Label,
    ) -> Self {
        EdgeSpec { name: name.into(), source: source.into(), target: target.into(), label }
    }
}

/// Directed multigraph with labelled, optionally marked nodes and edges.
///
/// Loops and parallel edges are allowed. Every edge endpoint is a node of the
/// graph; the mutating methods refuse to break that.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HostGraph {
    nodes: BTreeMap<NodeId, Node>,
    edges: BTreeMap<EdgeId, Edge>,
    node_names: BTreeMap<String, NodeId>,
    edge_names: BTreeMap<String, EdgeId>,
    next_node: u32,
    next_edge: u32,
}

impl HostGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from named node and edge declarations.
    pub fn build(
        nodes: impl IntoIterator<Item = NodeSpec>,
        edges: impl IntoIterator<Item = EdgeSpec>,
    ) -> Result<Self, GraphError> {
        let mut g = HostGraph::new();
        for n in nodes {
            g.add_named_node(n.name, n.label)?;
        }
        for e in edges {
            let source = g
                .node_by_name(&e.source)
                .ok_or_else(|| GraphError::UnknownEndpoint(e.source.clone()))?;
            let target = g
                .node_by_name(&e.target)
                .ok_or_else(|| GraphError::UnknownEndpoint(e.target.clone()))?;
            g.add_named_edge(e.name, source, target, e.label)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(&id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> + '_ {
        self.nodes.iter().map(|(&id, n)| (id, n))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().map(|(&id, e)| (id, e))
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        self.nodes.contains_key(&id)
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.node_names.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.get(name).copied()
    }

    /// Number of edges whose target is `v`. A loop counts once.
    pub fn indegree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.require_node(v)?;
        Ok(self.edges.values().filter(|e| e.target == v).count())
    }

    /// Number of edges whose source is `v`. A loop counts once.
    pub fn outdegree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.require_node(v)?;
        Ok(self.edges.values().filter(|e| e.source == v).count())
    }

    /// Edges with `v` as source or target, each listed once.
    pub fn incident_edges(&self, v: NodeId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .filter(move |(_, e)| e.source == v || e.target == v)
            .map(|(&id, _)| id)
    }

    /// Edges from `source` to `target`.
    pub fn edges_between(
        &self,
        source: NodeId,
        target: NodeId,
    ) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges()
            .filter(move |(_, e)| e.source == source && e.target == target)
    }

    pub fn has_edge(&self, source: NodeId, target: NodeId) -> bool {
        self.edges_between(source, target).next().is_some()
    }

    /// Adds a node under a fresh generated name.
    pub fn add_node(&mut self, label: Label) -> Result<NodeId, GraphError> {
        let name = self.fresh_node_name();
        self.add_named_node(name, label)
    }

    pub fn add_named_node(
        &mut self,
        name: impl Into<String>,
        label: Label,
    ) -> Result<NodeId, GraphError> {
        let name = name.into();
        check_node_mark(&name, label.mark)?;
        if self.node_names.contains_key(&name) {
            return Err(GraphError::DuplicateId(name));
        }
        let id = NodeId(self.next_node);
        self.next_node += 1;
        self.node_names.insert(name.clone(), id);
        self.nodes.insert(id, Node { name, label });
        Ok(id)
    }

    /// Adds an edge under a fresh generated name.
    pub fn add_edge(
        &mut self,
        source: NodeId,
        target: NodeId,
        label: Label,
    ) -> Result<EdgeId, GraphError> {
        let name = self.fresh_edge_name();
        self.add_named_edge(name, source, target, label)
    }

    pub fn add_named_edge(
        &mut self,
        name: impl Into<String>,
        source: NodeId,
        target: NodeId,
        label: Label,
    ) -> Result<EdgeId, GraphError> {
        let name = name.into();
        check_edge_mark(&name, label.mark)?;
        for end in [source, target] {
            if !self.nodes.contains_key(&end) {
                return Err(GraphError::UnknownEndpoint(end.to_string()));
            }
        }
        if self.edge_names.contains_key(&name) {
            return Err(GraphError::DuplicateId(name));
        }
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edge_names.insert(name.clone(), id);
        self.edges.insert(id, Edge { name, source, target, label });
        Ok(id)
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Edge, GraphError> {
        let edge = self.edges.remove(&id).ok_or(GraphError::UnknownEdge(id))?;
        self.edge_names.remove(&edge.name);
        Ok(edge)
    }

    /// Removes an isolated node. Fails with `DanglingEdge` if edges are still incident.
    pub fn remove_node(&mut self, id: NodeId) -> Result<Node, GraphError> {
        self.require_node(id)?;
        if let Some(e) = self.incident_edges(id).next() {
            return Err(GraphError::DanglingEdge(e));
        }
        let node = self.nodes.remove(&id).expect("checked above");
        self.node_names.remove(&node.name);
        Ok(node)
    }

    pub fn relabel_node(&mut self, id: NodeId, label: Label) -> Result<(), GraphError> {
        let node = self.nodes.get_mut(&id).ok_or(GraphError::UnknownNode(id))?;
        check_node_mark(&node.name, label.mark)?;
        node.label = label;
        Ok(())
    }

    pub fn relabel_edge(&mut self, id: EdgeId, label: Label) -> Result<(), GraphError> {
        let edge = self.edges.get_mut(&id).ok_or(GraphError::UnknownEdge(id))?;
        check_edge_mark(&edge.name, label.mark)?;
        edge.label = label;
        Ok(())
    }

    fn require_node(&self, v: NodeId) -> Result<(), GraphError> {
        if self.nodes.contains_key(&v) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(v))
        }
    }

    fn fresh_node_name(&self) -> String {
        let mut k = self.next_node;
        loop {
            let name = format!("n{k}");
            if !self.node_names.contains_key(&name) {
                return name;
            }
            k += 1;
        }
    }

    fn fresh_edge_name(&self) -> String {
        let mut k = self.next_edge;
        loop {
            let name = format!("e{k}");
            if !self.edge_names.contains_key(&name) {
                return name;
            }
            k += 1;
        }
    }
}

fn check_node_mark(name: &str, mark: Option<Mark>) -> Result<(), GraphError> {
    match mark {
        Some(m) if !m.allowed_on_node() => Err(GraphError::IllegalMark { item: name.to_owned(), mark: m }),
        _ => Ok(()),
    }
}

fn check_edge_mark(name: &str, mark: Option<Mark>) -> Result<(), GraphError> {
    match mark {
        Some(m) if !m.allowed_on_edge() => Err(GraphError::IllegalMark { item: name.to_owned(), mark: m }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> HostGraph {
        HostGraph::build(
            ["n1", "n2", "n3", "n4"].map(|n| NodeSpec::new(n, Label::empty())),
            [("e1", "n1", "n2"), ("e2", "n2", "n3"), ("e3", "n3", "n4"), ("e4", "n4", "n1")]
                .map(|(e, s, t)| EdgeSpec::new(e, s, t, Label::empty())),
        )
        .unwrap()
    }

    #[test]
    fn empty_build() {
        let g = HostGraph::build([], []).unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn cycle_degrees() {
        let g = cycle4();
        assert_eq!(g.edge_count(), 4);
        for v in g.node_ids() {
            assert_eq!(g.indegree(v).unwrap(), 1);
            assert_eq!(g.outdegree(v).unwrap(), 1);
        }
    }

    #[test]
    fn unknown_endpoint() {
        let err = HostGraph::build(
            [NodeSpec::new("a", Label::empty())],
            [EdgeSpec::new("e", "a", "n9", Label::empty())],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::UnknownEndpoint("n9".into()));
    }

    #[test]
    fn duplicate_ids() {
        let err = HostGraph::build(
            [NodeSpec::new("a", Label::empty()), NodeSpec::new("a", Label::empty())],
            [],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::DuplicateId("a".into()));
    }

    #[test]
    fn illegal_marks() {
        let err = HostGraph::build([NodeSpec::new("a", Label::marked(vec![], Mark::Dashed))], [])
            .unwrap_err();
        assert!(matches!(err, GraphError::IllegalMark { .. }));
        let err = HostGraph::build(
            [NodeSpec::new("a", Label::empty())],
            [EdgeSpec::new("e", "a", "a", Label::marked(vec![], Mark::Grey))],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::IllegalMark { .. }));
    }

    #[test]
    fn loop_counts_once_each_way() {
        let mut g = HostGraph::new();
        let v = g.add_node(Label::empty()).unwrap();
        assert_eq!(g.indegree(v).unwrap(), 0);
        g.add_edge(v, v, Label::empty()).unwrap();
        assert_eq!(g.indegree(v).unwrap(), 1);
        assert_eq!(g.outdegree(v).unwrap(), 1);
        assert_eq!(g.incident_edges(v).count(), 1);
    }

    #[test]
    fn unknown_node_degree() {
        let g = HostGraph::new();
        assert_eq!(g.indegree(NodeId(3)), Err(GraphError::UnknownNode(NodeId(3))));
    }

    #[test]
    fn remove_node_with_edges_refused() {
        let mut g = cycle4();
        let n1 = g.node_by_name("n1").unwrap();
        assert!(matches!(g.remove_node(n1), Err(GraphError::DanglingEdge(_))));
        let e1 = g.edge_by_name("e1").unwrap();
        let e4 = g.edge_by_name("e4").unwrap();
        g.remove_edge(e1).unwrap();
        g.remove_edge(e4).unwrap();
        g.remove_node(n1).unwrap();
        assert_eq!(g.node_count(), 3);
        assert!(g.node_by_name("n1").is_none());
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let mut g = HostGraph::new();
        g.add_named_node("n0", Label::empty()).unwrap();
        g.add_named_node("n1", Label::empty()).unwrap();
        let v = g.add_node(Label::empty()).unwrap();
        assert_eq!(g.node(v).unwrap().name, "n2");
    }
}
