#![allow(dead_code)]

use gp2::graph::{Atom, HostGraph, Label, Mark, NodeId};
use proptest::prelude::*;

pub fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![(-2i64..3).prop_map(Atom::Int), "[a-c]{0,2}".prop_map(Atom::Str)]
}

pub fn list() -> impl Strategy<Value = Vec<Atom>> {
    prop::collection::vec(atom(), 0..3)
}

fn mark(options: &'static [Option<Mark>]) -> impl Strategy<Value = Option<Mark>> {
    proptest::sample::select(options)
}

const NODE_MARKS: &[Option<Mark>] = &[None, None, None, Some(Mark::Red), Some(Mark::Grey), Some(Mark::Blue)];
const EDGE_MARKS: &[Option<Mark>] = &[None, None, None, Some(Mark::Dashed), Some(Mark::Green)];

fn label(list: Vec<Atom>, mark: Option<Mark>) -> Label {
    Label { list, mark }
}

/// Labelled, marked multigraphs with up to `max_nodes` nodes and loops.
pub fn graph(max_nodes: usize, labels: bool) -> impl Strategy<Value = HostGraph> {
    (1..=max_nodes)
        .prop_flat_map(move |n| {
            let nodes = prop::collection::vec((list(), mark(NODE_MARKS)), n);
            let edges = prop::collection::vec((0..n, 0..n, list(), mark(EDGE_MARKS)), 0..=2 * n);
            (nodes, edges)
        })
        .prop_map(move |(nodes, edges)| {
            let mut g = HostGraph::new();
            let ids: Vec<NodeId> = nodes
                .into_iter()
                .map(|(l, m)| {
                    let l = if labels { label(l, m) } else { Label::empty() };
                    g.add_node(l).unwrap()
                })
                .collect();
            for (s, t, l, m) in edges {
                let l = if labels { label(l, m) } else { Label::empty() };
                g.add_edge(ids[s], ids[t], l).unwrap();
            }
            g
        })
}

/// The same graph with its nodes and edges created in another order.
pub fn shuffled(g: &HostGraph, node_order: &[usize], edge_order: &[usize]) -> HostGraph {
    let nodes: Vec<_> = g.nodes().collect();
    let edges: Vec<_> = g.edges().collect();
    let mut h = HostGraph::new();
    let mut map = std::collections::HashMap::new();
    for &i in node_order {
        let (id, n) = nodes[i];
        map.insert(id, h.add_node(n.label.clone()).unwrap());
    }
    for &i in edge_order {
        let (_, e) = edges[i];
        h.add_edge(map[&e.source], map[&e.target], e.label.clone()).unwrap();
    }
    h
}

/// A graph with a node/edge permutation to rebuild it in.
pub fn graph_and_permutation(max_nodes: usize) -> impl Strategy<Value = (HostGraph, Vec<usize>, Vec<usize>)> {
    graph(max_nodes, true).prop_flat_map(|g| {
        let n: Vec<usize> = (0..g.node_count()).collect();
        let e: Vec<usize> = (0..g.edge_count()).collect();
        (Just(g), Just(n).prop_shuffle(), Just(e).prop_shuffle())
    })
}
