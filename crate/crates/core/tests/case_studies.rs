//! Properties of the four case studies, checked rule by rule and on whole runs.

mod common;

use gp2::casestudies::{
    colour_sum, gen_series_parallel, harness, nonedge_count, oracle_is_cyclic, random_dag, random_graph, Case,
};
use gp2::graph::{isomorphic, HostGraph};
use gp2::interp::{run, trace, ExecConfig, Outcome};
use gp2::lang::{parse_host_graph, parse_rule};
use gp2::rule::{apply_match, find_matches};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coloured(g: &HostGraph) -> HostGraph {
    let init = Case::Colouring.program_with_main("mark!; init!").unwrap();
    run(&init, g, &ExecConfig::default()).outcome.graph().unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sums_equal_edge_count(g in common::graph(6, true)) {
        let ins: usize = g.node_ids().map(|v| g.indegree(v).unwrap()).sum();
        let outs: usize = g.node_ids().map(|v| g.outdegree(v).unwrap()).sum();
        prop_assert_eq!(ins, g.edge_count());
        prop_assert_eq!(outs, g.edge_count());
    }

    #[test]
    fn link_removes_one_nonedge(g in common::graph(5, false)) {
        let link = Case::TransClosure.rule("link");
        for m in find_matches(&link, &g).unwrap() {
            let h = apply_match(&link, &g, &m).unwrap();
            prop_assert_eq!(nonedge_count(&h) + 1, nonedge_count(&g));
        }
    }

    #[test]
    fn inc_raises_colour_sum_by_one(g in common::graph(5, false)) {
        let g = coloured(&g);
        let inc = Case::Colouring.rule("inc");
        let before = colour_sum(&g).unwrap();
        for m in find_matches(&inc, &g).unwrap() {
            let h = apply_match(&inc, &g, &m).unwrap();
            prop_assert_eq!(colour_sum(&h).unwrap(), before + 1);
        }
    }

    #[test]
    fn delete_preserves_cyclicity(g in common::graph(5, false)) {
        let delete = Case::CycleCheck.rule("delete");
        let cyclic = oracle_is_cyclic(&g);
        for m in find_matches(&delete, &g).unwrap() {
            prop_assert_eq!(oracle_is_cyclic(&apply_match(&delete, &g, &m).unwrap()), cyclic);
        }
    }

    #[test]
    fn reduce_shrinks_the_graph(g in common::graph(5, false)) {
        for name in ["series", "parallel"] {
            let r = Case::SeriesParallel.rule(name);
            for m in find_matches(&r, &g).unwrap() {
                let h = apply_match(&r, &g, &m).unwrap();
                prop_assert!(h.node_count() + h.edge_count() < g.node_count() + g.edge_count());
            }
        }
    }
}

/// A nonempty acyclic graph has a node without incoming edges.
#[test]
fn dags_have_sources() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let g = random_dag(&mut rng, 8);
        assert!(!oracle_is_cyclic(&g));
        assert!(g.node_ids().any(|v| g.indegree(v).unwrap() == 0));
    }
}

/// After `delete!` an acyclic graph has no edges left; a cyclic one has.
#[test]
fn delete_loop_leaves_edges_iff_cyclic() {
    let p = Case::CycleCheck.program_with_main("delete!").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for seed in 0..300 {
        let g = random_graph(&mut rng, 7);
        let h = run(&p, &g, &ExecConfig::seeded(seed)).outcome.graph().unwrap().clone();
        assert_eq!(h.edge_count() > 0, oracle_is_cyclic(&g));
    }
}

#[test]
fn tail_cycle_trace() {
    let g = Case::CycleCheck.input("tail-cycle").graph();
    let r = trace(&Case::CycleCheck.program(), &g, &ExecConfig::default());
    let seen: Vec<(String, usize)> = r.trace.iter().map(|t| (t.rule.clone(), t.edge_count)).collect();
    let want = [("delete", 4), ("delete", 3), ("edge", 3), ("red", 6)];
    assert_eq!(seen, want.map(|(r, e)| (r.to_owned(), e)));
    let h = r.outcome.graph().unwrap();
    assert_eq!(h.node_count(), 5);
    assert_eq!(h.edges().filter(|(_, e)| e.label.mark.is_some()).count(), 1);
}

#[test]
fn diamond_tail_trace() {
    let g = Case::CycleCheck.input("diamond-tail").graph();
    for seed in 0..20 {
        let r = trace(&Case::CycleCheck.program(), &g, &ExecConfig::seeded(seed));
        let counts: Vec<usize> = r.trace.iter().map(|t| t.edge_count).collect();
        assert_eq!(counts, [4, 3, 2, 1, 0, 6]);
        assert_eq!(r.trace.last().unwrap().rule, "blue");
    }
}

#[test]
fn transclosure_of_four_cycle() {
    let g = Case::TransClosure.input("cycle4").graph();
    let complete = parse_host_graph(
        "node a empty\nnode b empty\nnode c empty\nnode d empty\n\
         edge e1 a b empty\nedge e2 b a empty\nedge e3 a c empty\nedge e4 c a empty\n\
         edge e5 a d empty\nedge e6 d a empty\nedge e7 b c empty\nedge e8 c b empty\n\
         edge e9 b d empty\nedge e10 d b empty\nedge e11 c d empty\nedge e12 d c empty\n",
    )
    .unwrap();
    for seed in 0..20 {
        let r = run(&Case::TransClosure.program(), &g, &ExecConfig::seeded(seed));
        assert_eq!(r.steps, 8);
        assert!(isomorphic(r.outcome.graph().unwrap(), &complete));
    }
}

#[test]
fn series_parallel_graphs_are_accepted() {
    let p = Case::SeriesParallel.program();
    for seed in 0..50 {
        let (term, g) = gen_series_parallel(seed, 10);
        let r = run(&p, &g, &ExecConfig::seeded(seed));
        assert!(r.outcome.graph().is_some_and(HostGraph::is_empty), "{term}");
    }
    let bridge = Case::SeriesParallel.input("bridge").graph();
    assert_eq!(run(&p, &bridge, &ExecConfig::default()).outcome, Outcome::Fail);
}

#[test]
fn conditional_rule_from_prose() {
    let rule = parse_rule(
        "rule bridge(x, y: list; n: int)
           [ node 1 x node 2 n node 3 y #grey edge e1 1 3 empty edge e2 3 2 empty ]
           =>
           [ node 1 x:y node 2 n * n edge e3 1 2 7 #dashed ]
           interface = {1, 2}
           where n < 0 and not edge(1, 2)",
    )
    .unwrap();
    let g = parse_host_graph("node a \"s\"\nnode b -4\nnode c 1:2 #grey\nedge e1 a c empty\nedge e2 c b empty\n").unwrap();
    let ms = find_matches(&rule, &g).unwrap();
    assert_eq!(ms.len(), 1);
    let h = apply_match(&rule, &g, &ms[0]).unwrap();
    let want = parse_host_graph("node a \"s\":1:2\nnode b 16\nedge e a b 7 #dashed\n").unwrap();
    assert!(isomorphic(&h, &want));

    for blocked in [
        "node a 1\nnode b 4\nnode c 0 #grey\nedge e1 a c empty\nedge e2 c b empty\n",
        "node a 1\nnode b -4\nnode c 0\nedge e1 a c empty\nedge e2 c b empty\n",
        "node a 1\nnode b -4\nnode c 0 #grey\nedge e1 a c empty\nedge e2 c b empty\nedge e3 a b 9\n",
        "node a 1\nnode b -4\nnode c 0 #grey\nedge e1 a c empty\nedge e2 c b empty\nedge e3 c c empty\n",
        "node a 1\nnode b \"n\"\nnode c 0 #grey\nedge e1 a c empty\nedge e2 c b empty\n",
    ] {
        assert!(find_matches(&rule, &parse_host_graph(blocked).unwrap()).unwrap().is_empty(), "{blocked}");
    }
}

#[test]
fn golden_files() {
    for case in Case::ALL {
        let check = harness::golden_outcomes(case);
        assert!(check.passed(), "{check}: {:?}", check.failures);
    }
}

#[test]
fn interpreter_laws() {
    let check = harness::interpreter_laws();
    assert!(check.passed(), "{check}: {:?}", check.failures);
}

#[test]
fn small_harness_runs() {
    for check in [
        harness::transclosure_oracle(2, 20, 5, 1),
        harness::colouring_invariants(20, 5, 1),
        harness::cyclecheck_equivalence(2, 20, 5, 1),
        harness::series_parallel(20, 8, 5, 1),
        harness::reduce_confluence(20, 6, 1),
    ] {
        assert!(check.passed(), "{check}: {:?}", check.failures);
    }
}
