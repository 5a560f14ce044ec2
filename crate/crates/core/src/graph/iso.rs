//! Direct isomorphism test by backtracking over node bijections.
//!
//! This is kept deliberately separate from [`super::canon`] so the two can be
//! cross-checked against each other.

use std::collections::HashMap;

use super::host::HostGraph;
use super::label::Label;

struct Indexed {
    labels: Vec<Label>,
    /// (source index, target index) -> sorted labels of the parallel edges.
    adj: HashMap<(usize, usize), Vec<Label>>,
    invariant: Vec<(Label, usize, usize, Vec<Label>)>,
}

fn index(g: &HostGraph) -> Indexed {
    let ids: Vec<_> = g.node_ids().collect();
    let pos: HashMap<_, _> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let labels: Vec<Label> = g.nodes().map(|(_, n)| n.label.clone()).collect();
    let mut adj: HashMap<(usize, usize), Vec<Label>> = HashMap::new();
    let mut indeg = vec![0; ids.len()];
    let mut outdeg = vec![0; ids.len()];
    for (_, e) in g.edges() {
        let (s, t) = (pos[&e.source], pos[&e.target]);
        outdeg[s] += 1;
        indeg[t] += 1;
        adj.entry((s, t)).or_default().push(e.label.clone());
    }
    for v in adj.values_mut() {
        v.sort();
    }
    let invariant = (0..ids.len())
        .map(|i| {
            let loops = adj.get(&(i, i)).cloned().unwrap_or_default();
            (labels[i].clone(), indeg[i], outdeg[i], loops)
        })
        .collect();
    Indexed { labels, adj, invariant }
}

/// True iff a label- and mark-preserving bijection on nodes and edges exists
/// that respects sources and targets. Node and edge names are ignored.
pub fn isomorphic(g: &HostGraph, h: &HostGraph) -> bool {
    if g.node_count() != h.node_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let a = index(g);
    let b = index(h);
    let mut inv_a: Vec<_> = a.invariant.clone();
    let mut inv_b: Vec<_> = b.invariant.clone();
    inv_a.sort();
    inv_b.sort();
    if inv_a != inv_b {
        return false;
    }
    let n = a.labels.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(&a, &b, 0, &mut map, &mut used)
}

fn edge_labels(x: &Indexed, s: usize, t: usize) -> &[Label] {
    x.adj.get(&(s, t)).map(Vec::as_slice).unwrap_or(&[])
}

fn extend(a: &Indexed, b: &Indexed, u: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if u == map.len() {
        return true;
    }
    for cand in 0..map.len() {
        if used[cand] || a.invariant[u] != b.invariant[cand] {
            continue;
        }
        let consistent = (0..u).all(|w| {
            let cw = map[w];
            edge_labels(a, u, w) == edge_labels(b, cand, cw)
                && edge_labels(a, w, u) == edge_labels(b, cw, cand)
        });
        if !consistent {
            continue;
        }
        map[u] = cand;
        used[cand] = true;
        if extend(a, b, u + 1, map, used) {
            return true;
        }
        used[cand] = false;
    }
    map[u] = usize::MAX;
    false
}
