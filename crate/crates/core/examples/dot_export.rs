//! Renders the coloured result of a run as Graphviz.

use gp2::casestudies::Case;
use gp2::dot::to_dot;
use gp2::interp::{run, ExecConfig};

fn main() {
    let g = Case::CycleCheck.input("tail-cycle").graph();
    let r = run(&Case::CycleCheck.program(), &g, &ExecConfig::default());
    print!("{}", to_dot(r.outcome.graph().unwrap()));
}
