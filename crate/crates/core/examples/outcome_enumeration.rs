//! `run` picks one execution; `outcomes` collects all of them up to
//! isomorphism, with the step counts that reach each.

use gp2::interp::{outcomes, run, ExecConfig};
use gp2::lang::{load_program, parse_host_graph};

const PROGRAM: &str = "Main = (red or blue); try grow then skip else fail
rule red(x: list)
  [ node 1 x ] => [ node 1 x #red ]
  interface = {1}
rule blue(x: list)
  [ node 1 x ] => [ node 1 x #blue ]
  interface = {1}
rule grow(x: list)
  [ node 1 x #red ] => [ node 1 x #red node 2 0 edge e1 1 2 empty ]
  interface = {1}";

fn main() {
    let program = load_program(PROGRAM).expect("program is well formed");
    let g = parse_host_graph("node a 1\nnode b 2\n").unwrap();

    for seed in 0..3 {
        let r = run(&program, &g, &ExecConfig::seeded(seed));
        println!("seed {seed}: {}", if r.outcome.is_success() { "success" } else { "fail" });
    }

    let all = outcomes(&program, &g, 100).unwrap();
    for class in &all.successes {
        println!("success after {:?} steps:", class.steps);
        print!("{}", class.graph);
    }
    println!("can fail: {} (after {:?} steps)", all.fails(), all.fail_steps);
}
