//! The matcher against brute-force enumeration of node and edge tuples.

mod common;

use std::collections::BTreeSet;

use gp2::casestudies::Case;
use gp2::graph::{Atom, EdgeId, HostGraph, NodeId};
use gp2::rule::{apply_match, find_matches, Rule};
use proptest::prelude::*;

type Image = (Vec<NodeId>, Vec<EdgeId>);

fn engine(rule: &Rule, g: &HostGraph) -> BTreeSet<Image> {
    find_matches(rule, g).unwrap().into_iter().map(|m| (m.node_images, m.edge_images)).collect()
}

fn unmarked_node(g: &HostGraph, v: NodeId) -> bool {
    g.node(v).unwrap().label.mark.is_none()
}

fn unmarked_edges(g: &HostGraph) -> Vec<EdgeId> {
    g.edges().filter(|(_, e)| e.label.mark.is_none()).map(|(id, _)| id).collect()
}

fn ends(g: &HostGraph, e: EdgeId) -> (NodeId, NodeId) {
    let e = g.edge(e).unwrap();
    (e.source, e.target)
}

fn last_int(g: &HostGraph, v: NodeId) -> Option<i64> {
    match g.node(v).unwrap().label.list.last() {
        Some(Atom::Int(i)) => Some(*i),
        _ => None,
    }
}

/// Two distinct unmarked edges `v1 -> v2 -> v3` over distinct unmarked nodes.
fn two_paths(g: &HostGraph) -> Vec<Image> {
    let edges = unmarked_edges(g);
    let mut out = Vec::new();
    for &e1 in &edges {
        for &e2 in &edges {
            let ((a, b), (c, d)) = (ends(g, e1), ends(g, e2));
            if e1 == e2 || b != c || a == b || b == d || a == d {
                continue;
            }
            if [a, b, d].iter().all(|&v| unmarked_node(g, v)) {
                out.push((vec![a, b, d], vec![e1, e2]));
            }
        }
    }
    out
}

/// One unmarked non-loop edge between unmarked nodes.
fn single_edges(g: &HostGraph) -> Vec<Image> {
    unmarked_edges(g)
        .into_iter()
        .filter_map(|e| {
            let (a, b) = ends(g, e);
            (a != b && unmarked_node(g, a) && unmarked_node(g, b)).then(|| (vec![a, b], vec![e]))
        })
        .collect()
}

fn naive_link(g: &HostGraph) -> BTreeSet<Image> {
    two_paths(g).into_iter().filter(|(v, _)| !g.has_edge(v[0], v[2])).collect()
}

fn naive_series(g: &HostGraph) -> BTreeSet<Image> {
    two_paths(g).into_iter().filter(|(v, _)| g.incident_edges(v[1]).count() == 2).collect()
}

fn naive_parallel(g: &HostGraph) -> BTreeSet<Image> {
    let mut out = BTreeSet::new();
    for (v, e1) in single_edges(g) {
        for (w, e2) in single_edges(g) {
            if v == w && e1 != e2 {
                out.insert((v.clone(), vec![e1[0], e2[0]]));
            }
        }
    }
    out
}

fn naive_delete(g: &HostGraph) -> BTreeSet<Image> {
    single_edges(g).into_iter().filter(|(v, _)| g.indegree(v[0]).unwrap() == 0).collect()
}

fn naive_inc(g: &HostGraph) -> BTreeSet<Image> {
    single_edges(g)
        .into_iter()
        .filter(|(v, _)| {
            let (a, b) = (last_int(g, v[0]), last_int(g, v[1]));
            a.is_some() && a == b
        })
        .collect()
}

fn naive_mark(g: &HostGraph) -> BTreeSet<Image> {
    g.node_ids().filter(|&v| unmarked_node(g, v)).map(|v| (vec![v], vec![])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn link_matches(g in common::graph(5, true)) {
        prop_assert_eq!(engine(&Case::TransClosure.rule("link"), &g), naive_link(&g));
    }

    #[test]
    fn series_matches(g in common::graph(5, true)) {
        prop_assert_eq!(engine(&Case::SeriesParallel.rule("series"), &g), naive_series(&g));
    }

    #[test]
    fn parallel_matches(g in common::graph(5, true)) {
        prop_assert_eq!(engine(&Case::SeriesParallel.rule("parallel"), &g), naive_parallel(&g));
    }

    #[test]
    fn delete_matches(g in common::graph(5, true)) {
        prop_assert_eq!(engine(&Case::CycleCheck.rule("delete"), &g), naive_delete(&g));
    }

    #[test]
    fn inc_matches(g in common::graph(5, true)) {
        prop_assert_eq!(engine(&Case::Colouring.rule("inc"), &g), naive_inc(&g));
    }

    #[test]
    fn mark_matches(g in common::graph(5, true)) {
        prop_assert_eq!(engine(&Case::Colouring.rule("mark"), &g), naive_mark(&g));
    }

    #[test]
    fn application_counts(g in common::graph(5, true)) {
        for (case, name, dv, de) in [
            (Case::TransClosure, "link", 0i64, 1i64),
            (Case::SeriesParallel, "series", -1, -1),
            (Case::SeriesParallel, "parallel", 0, -1),
            (Case::SeriesParallel, "delete", -2, -1),
            (Case::CycleCheck, "delete", 0, -1),
        ] {
            let rule = case.rule(name);
            for m in find_matches(&rule, &g).unwrap() {
                let h = apply_match(&rule, &g, &m).unwrap();
                prop_assert_eq!(h.node_count() as i64, g.node_count() as i64 + dv, "{}", name);
                prop_assert_eq!(h.edge_count() as i64, g.edge_count() as i64 + de, "{}", name);
            }
        }
    }
}
