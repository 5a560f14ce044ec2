//! Invariant suites for the case studies, shared by `gp2 verify` and the
//! acceptance tests.

use std::fmt;
use std::ops::Range;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{canonical_key, isomorphic, HostGraph, Label, NodeId};
use crate::interp::{outcomes, run, trace, ExecConfig, OutcomeSet};
use crate::lang::{print_command, CoreProgram, Decl};
use crate::rule::find_matches;

use super::{
    all_digraphs_upto, check_colouring, colour_sum, colours_set, gen_series_parallel, nonedge_count, normal_forms,
    oracle_is_cyclic, oracle_transitive_closure, random_graph, Case,
};

/// Fuel for every execution in the suites; no corpus program comes close.
pub const FUEL: u64 = 10_000;
/// State cap for normal form searches.
pub const NORMAL_FORM_CAP: usize = 100_000;

const KEPT_FAILURES: usize = 8;

/// Result of one named property check over many cases.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub elapsed: Duration,
}

impl Check {
    fn run(name: &str, body: impl FnOnce(&mut Check)) -> Check {
        let mut c = Check {
            name: name.to_owned(),
            cases: 0,
            failures: Vec::new(),
            failure_count: 0,
            elapsed: Duration::ZERO,
        };
        let start = Instant::now();
        body(&mut c);
        c.elapsed = start.elapsed();
        c
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg.into());
        }
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.cases > 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} cases, {:.2?})", self.name, self.cases, self.elapsed)?;
        if self.cases == 0 {
            write!(f, "\n  no cases were checked")?;
        }
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        if self.failure_count > self.failures.len() {
            write!(f, "\n  ... {} more", self.failure_count - self.failures.len())?;
        }
        Ok(())
    }
}

fn cfg(seed: u64) -> ExecConfig {
    ExecConfig::seeded(seed).with_fuel(FUEL)
}

fn explore(c: &mut Check, p: &CoreProgram, g: &HostGraph, what: &str) -> Option<OutcomeSet> {
    match outcomes(p, g, FUEL) {
        Ok(set) => Some(set),
        Err(e) => {
            c.fail(format!("{what}: {e}"));
            None
        }
    }
}

fn complete_graph(n: usize) -> HostGraph {
    let mut g = HostGraph::new();
    let ids: Vec<NodeId> = (0..n).map(|_| g.add_node(Label::empty()).expect("unmarked label")).collect();
    for &v in &ids {
        for &w in &ids {
            if v != w {
                g.add_edge(v, w, Label::empty()).expect("nodes exist");
            }
        }
    }
    g
}

/// TransClosure on the 4-cycle: the complete graph on four nodes after
/// exactly eight `link` steps, in seeded runs and in every enumerated execution.
pub fn cycle4_transclosure(seeds: Range<u64>) -> Check {
    Check::run("TransClosure on the 4-cycle gives K4 in 8 steps", |c| {
        let p = Case::TransClosure.program();
        let g = Case::TransClosure.input("cycle4").graph();
        let k4 = complete_graph(4);
        for seed in seeds {
            c.cases += 1;
            let r = trace(&p, &g, &cfg(seed));
            let Some(h) = r.outcome.graph() else {
                c.fail(format!("seed {seed}: {}", r.outcome));
                continue;
            };
            c.expect(isomorphic(h, &k4), || format!("seed {seed}: result is not K4"));
            c.expect(r.applications == 8, || format!("seed {seed}: {} applications", r.applications));
            c.expect(r.trace.iter().all(|t| t.rule == "link"), || format!("seed {seed}: non-link step"));
        }
        c.cases += 1;
        if let Some(set) = explore(c, &p, &g, "cycle4") {
            c.expect(set.successes.len() == 1 && isomorphic(&set.successes[0].graph, &k4), || {
                format!("{} success classes", set.successes.len())
            });
            c.expect(set.all_steps() == [8].into(), || format!("step counts {:?}", set.all_steps()));
            c.expect(!set.fails() && !set.diverges, || "some execution fails or diverges".into());
        }
    })
}

/// TransClosure never needs more than |V|^2 applications, and each one
/// removes exactly one non-edge.
pub fn transclosure_bound(count: usize, max_nodes: usize, seed: u64) -> Check {
    Check::run("TransClosure uses at most |V|^2 link steps", |c| {
        let p = Case::TransClosure.program();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..count {
            let g = random_graph(&mut rng, max_nodes);
            let n = g.node_count() as u64;
            for s in 0..3 {
                c.cases += 1;
                let r = run(&p, &g, &cfg(s));
                let Some(h) = r.outcome.graph() else {
                    c.fail(format!("graph {i} seed {s}: {}", r.outcome));
                    continue;
                };
                c.expect(r.applications <= n * n, || format!("graph {i}: {} steps on {n} nodes", r.applications));
                let removed = (nonedge_count(&g) - nonedge_count(h)) as u64;
                c.expect(removed == r.applications, || {
                    format!("graph {i}: {} steps but {removed} non-edges closed", r.applications)
                });
            }
        }
    })
}

/// TransClosure agrees with the pair-closure oracle: exhaustively on every
/// digraph up to `max_small` nodes, and on random graphs (exhaustively up to
/// four nodes, by seeded runs above that).
pub fn transclosure_oracle(max_small: usize, count: usize, max_nodes: usize, seed: u64) -> Check {
    Check::run("TransClosure result equals the closure oracle", |c| {
        let p = Case::TransClosure.program();
        let mut graphs = all_digraphs_upto(max_small);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        graphs.extend((0..count).map(|_| random_graph(&mut rng, max_nodes)));
        for (i, g) in graphs.iter().enumerate() {
            c.cases += 1;
            let want = canonical_key(&oracle_transitive_closure(g)).expect("small graph");
            if g.node_count() <= 4 {
                if let Some(set) = explore(c, &p, g, &format!("graph {i}")) {
                    c.expect(set.success_keys() == [want.clone()].into(), || {
                        format!("graph {i}: {} classes, not the closure", set.successes.len())
                    });
                    c.expect(set.len() == set.successes.len(), || format!("graph {i}: fails or diverges"));
                }
            }
            for s in 0..5 {
                let r = run(&p, g, &cfg(s));
                let ok = r.outcome.graph().is_some_and(|h| canonical_key(h).ok() == Some(want.clone()));
                c.expect(ok, || format!("graph {i} seed {s}: {}", r.outcome));
            }
        }
    })
}

/// Every Colouring outcome on random graphs is a proper colouring with
/// colours 1..n and respects the step bounds.
pub fn colouring_invariants(count: usize, max_nodes: usize, seed: u64) -> Check {
    Check::run("Colouring outcomes are proper and within the step bounds", |c| {
        let p = Case::Colouring.program();
        let inc = Case::Colouring.rule("inc");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..count {
            c.cases += 1;
            let g = random_graph(&mut rng, max_nodes);
            let Some(set) = explore(c, &p, &g, &format!("graph {i}")) else { continue };
            c.expect(set.len() == set.successes.len() && !set.successes.is_empty(), || {
                format!("graph {i}: not every execution succeeds")
            });
            let v = g.node_count() as u64;
            let inc_bound = v * (v + 1) / 2 - v;
            for class in &set.successes {
                let h = &class.graph;
                let colours = colours_set(h).unwrap_or_default();
                let n = colours.len() as i64;
                c.expect(n >= 1 && colours == (1..=n).collect(), || format!("graph {i}: colours {colours:?}"));
                c.expect(n as u64 <= v, || format!("graph {i}: {n} colours on {v} nodes"));
                c.expect(check_colouring(&g, h), || format!("graph {i}: improper colouring\n{h}"));
                c.expect(find_matches(&inc, h).is_ok_and(|m| m.is_empty()), || format!("graph {i}: inc still applies"));
                let incs = colour_sum(h).unwrap_or(0) as u64 - v;
                c.expect(incs <= inc_bound, || format!("graph {i}: {incs} inc steps, bound {inc_bound}"));
                c.expect(class.steps == [2 * v + incs].into(), || {
                    format!("graph {i}: steps {:?}, expected {}", class.steps, 2 * v + incs)
                });
                c.expect(class.steps.iter().all(|&s| s <= 2 * v + inc_bound), || format!("graph {i}: total bound"));
            }
        }
    })
}

/// Some corpus input has at least two non-isomorphic colourings.
pub fn colouring_divergence() -> Check {
    Check::run("Colouring can produce different colourings", |c| {
        let p = Case::Colouring.program();
        let mut witness = None;
        for input in Case::Colouring.inputs() {
            c.cases += 1;
            let g = input.graph();
            let Some(set) = explore(c, &p, &g, input.name) else { continue };
            let proper = set.successes.iter().all(|s| check_colouring(&g, &s.graph));
            c.expect(proper, || format!("{}: improper colouring", input.name));
            if set.successes.len() >= 2 && proper && witness.is_none() {
                witness = Some(input.name);
            }
        }
        if witness.is_none() {
            c.fail("no corpus input has two distinct colourings");
        }
    })
}

/// CycleCheck behaves as P on cyclic graphs and as Q on acyclic ones.
pub fn cyclecheck_equivalence(max_small: usize, count: usize, max_nodes: usize, seed: u64) -> Check {
    Check::run("CycleCheck equals P on cyclic and Q on acyclic inputs", |c| {
        let main = Case::CycleCheck.program();
        let p = Case::CycleCheck.program_with_main("P").expect("P is declared");
        let q = Case::CycleCheck.program_with_main("Q").expect("Q is declared");
        let mut graphs = all_digraphs_upto(max_small);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        graphs.extend((0..count).map(|_| random_graph(&mut rng, max_nodes)));
        graphs.extend(Case::CycleCheck.inputs().iter().map(|i| i.graph()));
        for (i, g) in graphs.iter().enumerate() {
            c.cases += 1;
            let cyclic = oracle_is_cyclic(g);
            let reference = if cyclic { &p } else { &q };
            let (Some(got), Some(want)) = (explore(c, &main, g, "CycleCheck"), explore(c, reference, g, "P/Q")) else {
                continue;
            };
            c.expect(got.same_outcomes(&want), || {
                format!("graph {i} (cyclic: {cyclic}): {} vs {} outcomes", got.len(), want.len())
            });
        }
    })
}

/// SeriesParallel reduces generated series-parallel graphs to the empty graph
/// in every execution, and fails in every execution on the bridge graph and
/// on series-parallel graphs with an extra isolated node.
pub fn series_parallel(count: usize, max_edges: usize, mutants: usize, seed: u64) -> Check {
    Check::run("SeriesParallel accepts exactly the series-parallel graphs", |c| {
        let p = Case::SeriesParallel.program();
        let empty = canonical_key(&HostGraph::new()).expect("empty graph");
        for i in 0..count as u64 {
            c.cases += 1;
            let (term, g) = gen_series_parallel(seed.wrapping_add(i), max_edges);
            if let Some(set) = explore(c, &p, &g, &term.to_string()) {
                c.expect(set.success_keys() == [empty.clone()].into() && set.len() == 1, || {
                    format!("{term}: {} outcomes, fails: {}", set.len(), set.fails())
                });
            }
            for s in 0..3 {
                let r = run(&p, &g, &cfg(s));
                c.expect(r.outcome.graph().is_some_and(|h| h.is_empty()), || format!("{term} seed {s}: {}", r.outcome));
            }
        }
        let mut rejected = vec![("bridge".to_owned(), Case::SeriesParallel.input("bridge").graph())];
        for i in 0..mutants as u64 {
            let (term, mut g) = gen_series_parallel(seed.wrapping_add(1_000 + i), max_edges);
            g.add_node(Label::empty()).expect("unmarked label");
            rejected.push((format!("{term} + isolated node"), g));
        }
        for (name, g) in &rejected {
            c.cases += 1;
            if let Some(set) = explore(c, &p, g, name) {
                c.expect(set.fails() && set.len() == 1, || format!("{name}: {} outcomes", set.len()));
            }
            for s in 0..3 {
                let r = run(&p, g, &cfg(s));
                c.expect(r.outcome == crate::interp::Outcome::Fail, || format!("{name} seed {s}: {}", r.outcome));
            }
        }
    })
}

/// Reduce has a single normal form on every test graph, and both `series`
/// steps on the three-edge path lead to the same single edge.
pub fn reduce_confluence(count: usize, max_edges: usize, seed: u64) -> Check {
    Check::run("Reduce has unique normal forms", |c| {
        let rules = [Case::SeriesParallel.rule("series"), Case::SeriesParallel.rule("parallel")];
        let mut graphs = vec![Case::SeriesParallel.input("bridge").graph()];
        for i in 0..count as u64 {
            let (_, g) = gen_series_parallel(seed.wrapping_add(i), max_edges);
            let mut mutant = g.clone();
            mutant.add_node(Label::empty()).expect("unmarked label");
            graphs.push(g);
            graphs.push(mutant);
        }
        for (i, g) in graphs.iter().enumerate() {
            c.cases += 1;
            match normal_forms(&rules, g, NORMAL_FORM_CAP) {
                Ok(forms) => c.expect(forms.len() == 1, || format!("graph {i}: {} normal forms", forms.len())),
                Err(e) => c.fail(format!("graph {i}: {e}")),
            }
        }

        c.cases += 1;
        let path = Case::SeriesParallel.input("critical-pair").graph();
        let series = &rules[0];
        let matches = find_matches(series, &path).unwrap_or_default();
        c.expect(matches.len() == 2, || format!("{} series matches on the path", matches.len()));
        let mut single = HostGraph::new();
        let (a, b) = (single.add_node(Label::empty()).expect("unmarked label"), single.add_node(Label::empty()).expect("unmarked label"));
        single.add_edge(a, b, Label::empty()).expect("nodes exist");
        for m in &matches {
            let step = crate::rule::apply_match(series, &path, m).expect("series applies");
            match normal_forms(&rules, &step, NORMAL_FORM_CAP) {
                Ok(forms) => c.expect(forms.len() == 1 && isomorphic(&forms[0], &single), || {
                    format!("overlap at {:?} does not join to one edge", m.nodes)
                }),
                Err(e) => c.fail(e.to_string()),
            }
        }
    })
}

fn named_commands(case: Case) -> Vec<String> {
    let ast = case.ast();
    let mut names = Vec::new();
    for d in &ast.decls {
        match d {
            Decl::Main(m) => names.push(print_command(&m.body)),
            other => names.push(other.name().to_owned()),
        }
    }
    names
}

/// `or` is union, `skip;` is neutral, `fail!` is the identity, seeded runs
/// land in the enumerated set, and `link!` / `inc!` stop only when the rule
/// no longer applies. Checked on every corpus program and input.
pub fn interpreter_laws() -> Check {
    Check::run("interpreter laws hold on the corpus", |c| {
        for case in Case::ALL {
            let names = named_commands(case);
            let main = case.program();
            for input in case.inputs() {
                let g = input.graph();
                let what = format!("{}/{}", case.name(), input.name);
                let mut single = Vec::new();
                for n in &names {
                    let p = case.program_with_main(&format!("({n})")).expect("declared name");
                    single.push(explore(c, &p, &g, &what));
                }
                for i in 0..names.len() {
                    for j in i + 1..names.len() {
                        c.cases += 1;
                        let p = case.program_with_main(&format!("({}) or ({})", names[i], names[j])).expect("names");
                        let (Some(both), Some(a), Some(b)) = (explore(c, &p, &g, &what), &single[i], &single[j]) else {
                            continue;
                        };
                        c.expect(both.same_outcomes(&a.union(b)), || format!("{what}: {} or {}", names[i], names[j]));
                    }
                    c.cases += 1;
                    let p = case.program_with_main(&format!("skip; ({})", names[i])).expect("names");
                    if let (Some(got), Some(want)) = (explore(c, &p, &g, &what), &single[i]) {
                        c.expect(got.same_outcomes(want), || format!("{what}: skip; {}", names[i]));
                    }
                }

                c.cases += 1;
                let p = case.program_with_main("fail!").expect("fail!");
                if let Some(set) = explore(c, &p, &g, &what) {
                    let id = canonical_key(&g).expect("small input");
                    c.expect(set.success_keys() == [id].into() && set.len() == 1, || format!("{what}: fail!"));
                }

                c.cases += 1;
                let Some(all) = explore(c, &main, &g, &what) else { continue };
                for seed in 0..10 {
                    let r = run(&main, &g, &cfg(seed));
                    c.expect(all.contains(&r.outcome).unwrap_or(false), || format!("{what} seed {seed}: not enumerated"));
                }
                let stop_rule = match case {
                    Case::TransClosure => Some(case.rule("link")),
                    Case::Colouring => Some(case.rule("inc")),
                    _ => None,
                };
                if let Some(rule) = stop_rule {
                    for class in &all.successes {
                        c.expect(find_matches(&rule, &class.graph).is_ok_and(|m| m.is_empty()), || {
                            format!("{what}: {} applies after the loop", rule.name())
                        });
                    }
                }
            }
        }
    })
}

/// Enumerated outcomes of every corpus input match `expected/*.outcomes`.
pub fn golden_outcomes(case: Case) -> Check {
    Check::run(&format!("{} outcomes match the golden files", case.name()), |c| {
        let p = case.program();
        for input in case.inputs() {
            let Some(expected) = input.expected() else { continue };
            c.cases += 1;
            let g = input.graph();
            if let Some(set) = explore(c, &p, &g, input.name) {
                if let Err(e) = expected.compare(&set) {
                    c.fail(format!("{}: {e}", input.name));
                }
            }
        }
    })
}

/// The full suite for one case study, at the sizes used by the acceptance tests.
pub fn verify(case: Case) -> Vec<Check> {
    let mut checks = vec![golden_outcomes(case)];
    match case {
        Case::TransClosure => {
            checks.push(cycle4_transclosure(0..100));
            checks.push(transclosure_bound(200, 8, 1));
            checks.push(transclosure_oracle(3, 100, 6, 2));
        }
        Case::Colouring => {
            checks.push(colouring_invariants(200, 8, 3));
            checks.push(colouring_divergence());
        }
        Case::CycleCheck => checks.push(cyclecheck_equivalence(3, 100, 6, 4)),
        Case::SeriesParallel => {
            checks.push(series_parallel(100, 12, 20, 5));
            checks.push(reduce_confluence(100, 8, 6));
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for check in [
            cycle4_transclosure(0..3),
            transclosure_bound(5, 5, 0),
            transclosure_oracle(2, 5, 4, 0),
            colouring_invariants(5, 5, 0),
            colouring_divergence(),
            cyclecheck_equivalence(2, 5, 4, 0),
            series_parallel(5, 6, 3, 0),
            reduce_confluence(5, 6, 0),
        ] {
            assert!(check.passed(), "{check}");
        }
    }

    #[test]
    fn report_format() {
        let mut c = Check::run("demo", |c| c.cases = 3);
        assert!(c.passed());
        assert!(c.to_string().starts_with("PASS demo (3 cases, "));
        for i in 0..10 {
            c.fail(format!("case {i}"));
        }
        let text = c.to_string();
        assert!(text.starts_with("FAIL demo") && text.ends_with("... 2 more"));
    }
}
