//! Series-parallel recognition by reduction: generated graphs reduce to a
//! single edge and succeed, a bridge graph gets stuck and fails.

use gp2::casestudies::{gen_series_parallel, normal_forms, Case};
use gp2::interp::{outcomes, run, ExecConfig, Outcome};

fn main() {
    let program = Case::SeriesParallel.program();
    for seed in 0..5 {
        let (term, g) = gen_series_parallel(seed, 8);
        let r = run(&program, &g, &ExecConfig::seeded(seed));
        let verdict = if r.outcome.is_success() { "accepted" } else { "rejected" };
        println!("{term}: {} edges, {verdict} in {} steps", term.edge_count(), r.steps);
    }

    let bridge = Case::SeriesParallel.input("bridge").graph();
    let set = outcomes(&program, &bridge, 10_000).unwrap();
    println!("bridge: fails {}, successes {}", set.fails(), set.successes.len());
    assert_eq!(run(&program, &bridge, &ExecConfig::default()).outcome, Outcome::Fail);

    let reduce = [Case::SeriesParallel.rule("series"), Case::SeriesParallel.rule("parallel")];
    let (_, g) = gen_series_parallel(42, 10);
    let forms = normal_forms(&reduce, &g, 100_000).unwrap();
    println!("normal forms of a 10-edge graph under {{series, parallel}}: {}", forms.len());
}
