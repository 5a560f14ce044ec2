use rand::Rng;

use crate::graph::{HostGraph, Label, NodeId};

/// A random unlabelled graph with 1 to `max_nodes` nodes. Edge density varies
/// per graph; loops and parallel edges occur occasionally.
pub fn random_graph(rng: &mut impl Rng, max_nodes: usize) -> HostGraph {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let p: f64 = rng.gen_range(0.1..0.6);
    let mut g = HostGraph::new();
    let ids: Vec<NodeId> = (0..n).map(|_| g.add_node(Label::empty()).expect("unmarked label")).collect();
    for &v in &ids {
        for &w in &ids {
            let chance = if v == w { p / 5.0 } else { p };
            if rng.gen_bool(chance) {
                g.add_edge(v, w, Label::empty()).expect("nodes exist");
                if rng.gen_bool(0.05) {
                    g.add_edge(v, w, Label::empty()).expect("nodes exist");
                }
            }
        }
    }
    g
}

/// A random loop-free graph whose edges all point from lower to higher
/// creation order, so it has no directed cycle.
pub fn random_dag(rng: &mut impl Rng, max_nodes: usize) -> HostGraph {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let p: f64 = rng.gen_range(0.1..0.7);
    let mut g = HostGraph::new();
    let ids: Vec<NodeId> = (0..n).map(|_| g.add_node(Label::empty()).expect("unmarked label")).collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(ids[i], ids[j], Label::empty()).expect("nodes exist");
            }
        }
    }
    g
}

/// Every simple digraph on `n` unlabelled nodes, loops included: one graph
/// per subset of the `n * n` ordered pairs.
pub fn all_digraphs(n: usize) -> Vec<HostGraph> {
    assert!(n <= 4, "{n} nodes give too many digraphs");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let mut g = HostGraph::new();
            let ids: Vec<NodeId> = (0..n).map(|_| g.add_node(Label::empty()).expect("unmarked label")).collect();
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    g.add_edge(ids[i], ids[j], Label::empty()).expect("nodes exist");
                }
            }
            g
        })
        .collect()
}

/// [`all_digraphs`] for every node count up to `max_nodes`.
pub fn all_digraphs_upto(max_nodes: usize) -> Vec<HostGraph> {
    (0..=max_nodes).flat_map(all_digraphs).collect()
}
