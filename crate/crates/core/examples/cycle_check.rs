//! `if Cyclic then P else Q`: the test runs on a copy, so `P` and `Q` see
//! the input graph unchanged.

use gp2::casestudies::{oracle_is_cyclic, Case};
use gp2::interp::{trace, ExecConfig};

fn main() {
    let program = Case::CycleCheck.program();
    for input in Case::CycleCheck.inputs() {
        let g = input.graph();
        let r = trace(&program, &g, &ExecConfig::default());
        println!("{} (cyclic: {})", input.name, oracle_is_cyclic(&g));
        for rec in &r.trace {
            println!("  {rec}");
        }
        let h = r.outcome.graph().expect("CycleCheck succeeds");
        let marked: Vec<_> = h.edges().filter_map(|(_, e)| e.label.mark).collect();
        println!("  marker loops: {marked:?}");
    }
}
