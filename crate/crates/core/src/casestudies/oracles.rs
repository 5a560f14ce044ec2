use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{HostGraph, Label, NodeId};

use super::metrics::colour;

/// Adds one unlabelled edge `v -> w` for every pair of distinct nodes where
/// `w` is reachable from `v` and no edge `v -> w` exists yet.
pub fn oracle_transitive_closure(g: &HostGraph) -> HostGraph {
    let ids: Vec<NodeId> = g.node_ids().collect();
    let index: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = ids.len();
    let mut reach = vec![vec![false; n]; n];
    let mut linked = vec![vec![false; n]; n];
    for (_, e) in g.edges() {
        let (s, t) = (index[&e.source], index[&e.target]);
        reach[s][t] = true;
        linked[s][t] = true;
    }
    // pair closure until nothing changes
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if !reach[i][j] {
                    continue;
                }
                for k in 0..n {
                    if reach[j][k] && !reach[i][k] {
                        reach[i][k] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    let mut h = g.clone();
    for i in 0..n {
        for j in 0..n {
            if i != j && reach[i][j] && !linked[i][j] {
                h.add_edge(ids[i], ids[j], Label::empty()).expect("nodes exist");
            }
        }
    }
    h
}

/// Whether the graph has a directed cycle, loops included.
pub fn oracle_is_cyclic(g: &HostGraph) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        New,
        Open,
        Done,
    }
    let mut succ: BTreeMap<NodeId, Vec<NodeId>> = g.node_ids().map(|v| (v, Vec::new())).collect();
    for (_, e) in g.edges() {
        succ.get_mut(&e.source).expect("source exists").push(e.target);
    }
    let mut state: BTreeMap<NodeId, State> = g.node_ids().map(|v| (v, State::New)).collect();
    for root in g.node_ids() {
        if state[&root] != State::New {
            continue;
        }
        state.insert(root, State::Open);
        let mut stack = vec![(root, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if i < succ[&v].len() {
                stack.push((v, i + 1));
                let w = succ[&v][i];
                match state[&w] {
                    State::Open => return true,
                    State::New => {
                        state.insert(w, State::Open);
                        stack.push((w, 0));
                    }
                    State::Done => {}
                }
            } else {
                state.insert(v, State::Done);
            }
        }
    }
    false
}

/// Whether `result` is `original` with an integer colour appended to every
/// node label, distinct colours on the ends of every non-loop edge, and
/// nothing else changed. Node and edge names must correspond.
pub fn check_colouring(original: &HostGraph, result: &HostGraph) -> bool {
    if original.node_count() != result.node_count() || original.edge_count() != result.edge_count() {
        return false;
    }
    let mut colours = BTreeMap::new();
    for (_, n) in original.nodes() {
        let Some(r) = result.node_by_name(&n.name).and_then(|v| result.node(v)) else { return false };
        let Some(c) = colour(&r.label) else { return false };
        if r.label.mark.is_some() || r.label.list[..r.label.list.len() - 1] != n.label.list[..] {
            return false;
        }
        colours.insert(n.name.as_str(), c);
    }
    let mut remaining: BTreeSet<_> = result.edge_ids().collect();
    for (_, e) in original.edges() {
        let Some(id) = result.edge_by_name(&e.name) else { return false };
        let r = result.edge(id).expect("named edge exists");
        let name = |g: &HostGraph, v| g.node(v).expect("endpoint").name.clone();
        let (s, t) = (name(original, e.source), name(original, e.target));
        if name(result, r.source) != s || name(result, r.target) != t || r.label != e.label {
            return false;
        }
        if s != t && colours[s.as_str()] == colours[t.as_str()] {
            return false;
        }
        remaining.remove(&id);
    }
    remaining.is_empty()
}
