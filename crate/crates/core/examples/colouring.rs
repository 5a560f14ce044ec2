//! Different executions of `Colouring` can end in different colourings.

use gp2::casestudies::{check_colouring, colour_sum, colours_set, Case};
use gp2::interp::{outcomes, run, ExecConfig};

fn main() {
    let program = Case::Colouring.program();
    let path = Case::Colouring.input("path3").graph();

    for seed in 0..4 {
        let r = run(&program, &path, &ExecConfig::seeded(seed));
        let g = r.outcome.graph().expect("colouring succeeds");
        println!(
            "seed {seed}: {} steps, colours {:?}, sum {:?}, valid {}",
            r.steps,
            colours_set(g).unwrap(),
            colour_sum(g).unwrap(),
            check_colouring(&path, g)
        );
    }

    let all = outcomes(&program, &path, 10_000).unwrap();
    println!("{} colourings up to isomorphism:", all.successes.len());
    for class in &all.successes {
        println!("steps {:?}", class.steps);
        print!("{}", class.graph);
    }
}
