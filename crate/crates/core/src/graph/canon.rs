//! Canonical forms for host graphs.
//!
//! Colour refinement followed by individualisation of one vertex per
//! non-singleton cell. Every discrete partition gives a node ordering; the
//! key is the lexicographically least encoding over all of them. Branching
//! skips a vertex when swapping it with an already tried vertex of the same
//! cell is an automorphism, which keeps highly symmetric graphs (isolated
//! nodes, cliques) linear.

use std::collections::HashMap;

use super::host::HostGraph;
use super::label::Label;
use super::GraphError;

/// Largest node count accepted by [`canonical_key`].
pub const MAX_CANONICAL_NODES: usize = 64;

/// Isomorphism-invariant key of a host graph: node labels in canonical order
/// followed by the sorted edge list over canonical positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    nodes: Vec<Label>,
    edges: Vec<(u32, u32, Label)>,
}

impl CanonicalKey {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Rebuilds a graph with nodes `n0..` and edges `e0..` in canonical order.
    pub fn to_graph(&self) -> HostGraph {
        let mut g = HostGraph::new();
        for (i, l) in self.nodes.iter().enumerate() {
            g.add_named_node(format!("n{i}"), l.clone()).expect("fresh names");
        }
        let ids: Vec<_> = g.node_ids().collect();
        for (i, (s, t, l)) in self.edges.iter().enumerate() {
            g.add_named_edge(format!("e{i}"), ids[*s as usize], ids[*t as usize], l.clone())
                .expect("endpoints exist");
        }
        g
    }
}

struct Prepared {
    labels: Vec<Label>,
    edges: Vec<(usize, usize, Label)>,
    /// Per node: (direction, edge label rank, other endpoint). 0 = out, 1 = in, 2 = loop.
    incidence: Vec<Vec<(u8, u32, usize)>>,
    adj: HashMap<(usize, usize), Vec<u32>>,
    node_rank: Vec<u32>,
}

fn dense_ranks<T: Ord>(items: &[T]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| items[a].cmp(&items[b]));
    let mut ranks = vec![0; items.len()];
    let mut r = 0;
    for w in 0..order.len() {
        if w > 0 && items[order[w]] != items[order[w - 1]] {
            r += 1;
        }
        ranks[order[w]] = r;
    }
    ranks
}

fn prepare(g: &HostGraph) -> Prepared {
    let ids: Vec<_> = g.node_ids().collect();
    let pos: HashMap<_, _> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let labels: Vec<Label> = g.nodes().map(|(_, n)| n.label.clone()).collect();
    let edges: Vec<(usize, usize, Label)> = g
        .edges()
        .map(|(_, e)| (pos[&e.source], pos[&e.target], e.label.clone()))
        .collect();
    let edge_labels: Vec<&Label> = edges.iter().map(|e| &e.2).collect();
    let edge_rank = dense_ranks(&edge_labels);
    let mut incidence = vec![Vec::new(); labels.len()];
    let mut adj: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
    for (k, (s, t, _)) in edges.iter().enumerate() {
        let r = edge_rank[k];
        if s == t {
            incidence[*s].push((2, r, *s));
        } else {
            incidence[*s].push((0, r, *t));
            incidence[*t].push((1, r, *s));
        }
        adj.entry((*s, *t)).or_default().push(r);
    }
    for v in adj.values_mut() {
        v.sort_unstable();
    }
    let node_rank = dense_ranks(&labels);
    Prepared { labels, edges, incidence, adj, node_rank }
}

fn colour_count(colours: &[u32]) -> usize {
    colours.iter().max().map_or(0, |&m| m as usize + 1)
}

fn refine(p: &Prepared, mut colours: Vec<u32>) -> Vec<u32> {
    let mut count = colour_count(&colours);
    loop {
        let sigs: Vec<(u32, Vec<(u8, u32, u32)>)> = (0..colours.len())
            .map(|v| {
                let mut nb: Vec<_> = p.incidence[v]
                    .iter()
                    .map(|&(d, r, w)| (d, r, colours[w]))
                    .collect();
                nb.sort_unstable();
                (colours[v], nb)
            })
            .collect();
        let next = dense_ranks(&sigs);
        let next_count = colour_count(&next);
        if next_count == count {
            return next;
        }
        count = next_count;
        colours = next;
    }
}

fn individualise(p: &Prepared, colours: &[u32], v: usize) -> Vec<u32> {
    let sigs: Vec<(u32, bool)> = colours.iter().enumerate().map(|(u, &c)| (c, u != v)).collect();
    refine(p, dense_ranks(&sigs))
}

fn adj(p: &Prepared, s: usize, t: usize) -> &[u32] {
    p.adj.get(&(s, t)).map(Vec::as_slice).unwrap_or(&[])
}

/// True iff the transposition of `u` and `v` is an automorphism.
fn swappable(p: &Prepared, u: usize, v: usize) -> bool {
    if p.node_rank[u] != p.node_rank[v] {
        return false;
    }
    if adj(p, u, u) != adj(p, v, v) || adj(p, u, v) != adj(p, v, u) {
        return false;
    }
    (0..p.labels.len())
        .filter(|&w| w != u && w != v)
        .all(|w| adj(p, u, w) == adj(p, v, w) && adj(p, w, u) == adj(p, w, v))
}

fn encode(p: &Prepared, colours: &[u32]) -> CanonicalKey {
    let mut nodes = vec![Label::empty(); p.labels.len()];
    for (v, &c) in colours.iter().enumerate() {
        nodes[c as usize] = p.labels[v].clone();
    }
    let mut edges: Vec<(u32, u32, Label)> = p
        .edges
        .iter()
        .map(|(s, t, l)| (colours[*s], colours[*t], l.clone()))
        .collect();
    edges.sort();
    CanonicalKey { nodes, edges }
}

fn search(p: &Prepared, colours: Vec<u32>, best: &mut Option<CanonicalKey>) {
    let n = colours.len();
    let count = colour_count(&colours);
    if count == n {
        let key = encode(p, &colours);
        if best.as_ref().is_none_or(|b| key < *b) {
            *best = Some(key);
        }
        return;
    }
    let mut sizes = vec![0usize; count];
    for &c in &colours {
        sizes[c as usize] += 1;
    }
    let target = sizes.iter().position(|&s| s > 1).expect("partition not discrete") as u32;
    let cell: Vec<usize> = (0..n).filter(|&v| colours[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| swappable(p, u, v)) {
            continue;
        }
        tried.push(v);
        search(p, individualise(p, &colours, v), best);
    }
}

/// Canonical key: equal for two graphs iff they are isomorphic.
pub fn canonical_key(g: &HostGraph) -> Result<CanonicalKey, GraphError> {
    let n = g.node_count();
    if n > MAX_CANONICAL_NODES {
        return Err(GraphError::SizeLimitExceeded { nodes: n, limit: MAX_CANONICAL_NODES });
    }
    if n == 0 {
        return Ok(CanonicalKey { nodes: Vec::new(), edges: Vec::new() });
    }
    let p = prepare(g);
    let start = refine(&p, p.node_rank.clone());
    let mut best = None;
    search(&p, start, &mut best);
    Ok(best.expect("at least one leaf"))
}
