//! `link!` on a 4-cycle: eight applications produce the complete graph.

use gp2::casestudies::{nonedge_count, oracle_transitive_closure, Case};
use gp2::graph::isomorphic;
use gp2::interp::{trace, ExecConfig};

fn main() {
    let program = Case::TransClosure.program();
    let cycle = Case::TransClosure.input("cycle4").graph();
    println!("nonedges before: {}", nonedge_count(&cycle));

    let r = trace(&program, &cycle, &ExecConfig::seeded(7));
    for rec in &r.trace {
        println!("{rec}");
    }
    let closed = r.outcome.graph().expect("link! always succeeds");
    println!("steps: {}, nonedges after: {}", r.steps, nonedge_count(closed));
    println!("matches oracle: {}", isomorphic(closed, &oracle_transitive_closure(&cycle)));
}
