use std::collections::{BTreeSet, HashSet};

use crate::graph::{Atom, HostGraph, Label, NodeId};

/// Ordered pairs of distinct nodes with no edge from the first to the second.
pub fn nonedge_count(g: &HostGraph) -> usize {
    let linked: HashSet<(NodeId, NodeId)> =
        g.edges().filter(|(_, e)| !e.is_loop()).map(|(_, e)| (e.source, e.target)).collect();
    let n = g.node_count();
    n * n.saturating_sub(1) - linked.len()
}

/// The colour of a coloured label: its last atom, if that is an integer.
pub fn colour(label: &Label) -> Option<i64> {
    match label.list.last() {
        Some(Atom::Int(i)) => Some(*i),
        _ => None,
    }
}

/// Sum of node colours; `None` if some node is uncoloured.
pub fn colour_sum(g: &HostGraph) -> Option<i64> {
    g.nodes().map(|(_, n)| colour(&n.label)).sum()
}

/// The distinct node colours; `None` if some node is uncoloured.
pub fn colours_set(g: &HostGraph) -> Option<BTreeSet<i64>> {
    g.nodes().map(|(_, n)| colour(&n.label)).collect()
}
