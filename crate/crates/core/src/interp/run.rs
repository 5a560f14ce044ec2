use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::HostGraph;
use crate::lang::{Cmd, CmdId, CmdKind, CoreProgram};
use crate::rule::apply_match;

use super::{candidates, ExecConfig, Outcome, RuntimeError};

/// One rule application.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub step: u64,
    pub rule: String,
    /// Rule node id and the name of its host image, in left-graph order.
    pub nodes: Vec<(String, String)>,
    pub edges: Vec<(String, String)>,
    pub node_count: usize,
    pub edge_count: usize,
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = |items: &[(String, String)]| {
            items.iter().map(|(r, h)| format!("{r}={h}")).collect::<Vec<_>>().join(", ")
        };
        write!(
            f,
            "step {}: {} @ nodes[{}] edges[{}] -> {},{}",
            self.step,
            self.rule,
            pairs(&self.nodes),
            pairs(&self.edges),
            self.node_count,
            self.edge_count
        )
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub outcome: Outcome,
    /// Fuel used: rule applications plus empty loop iterations.
    pub steps: u64,
    /// Rule applications only.
    pub applications: u64,
    /// Filled when tracing is on.
    pub trace: Vec<TraceRecord>,
}

enum Flow {
    Ok(HostGraph),
    Fail,
    Break(HostGraph, CmdId),
    Diverge,
    Error(RuntimeError),
}

struct Runner {
    rng: ChaCha8Rng,
    fuel: u64,
    budget: u64,
    applications: u64,
    tracing: bool,
    trace: Vec<TraceRecord>,
}

impl Runner {
    fn exec(&mut self, c: &Cmd, g: HostGraph) -> Flow {
        match &c.kind {
            CmdKind::RuleSet(rules) => {
                let mut candidates = match candidates(rules, &g) {
                    Ok(c) => c,
                    Err(e) => return Flow::Error(e),
                };
                if candidates.is_empty() {
                    return Flow::Fail;
                }
                if self.fuel == 0 {
                    return Flow::Diverge;
                }
                let k = self.rng.gen_range(0..candidates.len());
                let (i, m) = candidates.swap_remove(k);
                let rule = &rules[i];
                let h = match apply_match(rule, &g, &m) {
                    Ok(h) => h,
                    Err(error) => return Flow::Error(RuntimeError { rule: rule.name().to_owned(), error }),
                };
                self.fuel -= 1;
                self.applications += 1;
                if self.tracing {
                    let name = |v| g.node(v).expect("matched node").name.clone();
                    let ename = |e| g.edge(e).expect("matched edge").name.clone();
                    self.trace.push(TraceRecord {
                        step: self.applications,
                        rule: rule.name().to_owned(),
                        nodes: rule.left().nodes.iter().zip(&m.node_images).map(|(n, &v)| (n.id.clone(), name(v))).collect(),
                        edges: rule.left().edges.iter().zip(&m.edge_images).map(|(e, &x)| (e.id.clone(), ename(x))).collect(),
                        node_count: h.node_count(),
                        edge_count: h.edge_count(),
                    });
                }
                Flow::Ok(h)
            }
            CmdKind::Seq(items) => {
                let mut g = g;
                for item in items {
                    match self.exec(item, g) {
                        Flow::Ok(h) => g = h,
                        other => return other,
                    }
                }
                Flow::Ok(g)
            }
            CmdKind::If { cond, then, els } => match self.exec(cond, g.clone()) {
                Flow::Ok(_) => self.exec(then, g),
                Flow::Fail => self.exec(els, g),
                other => other,
            },
            CmdKind::Try { cond, then, els } => match self.exec(cond, g.clone()) {
                Flow::Ok(h) => self.exec(then, h),
                Flow::Fail => self.exec(els, g),
                other => other,
            },
            CmdKind::Loop(body) => {
                let mut g = g;
                loop {
                    let before = self.fuel;
                    match self.exec(body, g.clone()) {
                        Flow::Ok(h) => {
                            if self.fuel == before {
                                if self.fuel == 0 {
                                    return Flow::Diverge;
                                }
                                self.fuel -= 1;
                            }
                            g = h;
                        }
                        Flow::Fail => return Flow::Ok(g),
                        Flow::Break(h, target) if target == c.id => return Flow::Ok(h),
                        other => return other,
                    }
                }
            }
            CmdKind::Or(a, b) => {
                if self.rng.gen_bool(0.5) {
                    self.exec(b, g)
                } else {
                    self.exec(a, g)
                }
            }
            CmdKind::Break { target } => Flow::Break(g, *target),
            CmdKind::Skip => Flow::Ok(g),
            CmdKind::Fail => Flow::Fail,
        }
    }
}

/// Executes the program once, resolving every choice with a PRNG seeded from
/// `cfg.seed`. The result depends only on the program, graph, seed, and fuel.
pub fn run(p: &CoreProgram, g: &HostGraph, cfg: &ExecConfig) -> RunResult {
    let mut r = Runner {
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        fuel: cfg.fuel,
        budget: cfg.fuel,
        applications: 0,
        tracing: cfg.trace,
        trace: Vec::new(),
    };
    let outcome = match r.exec(p.main(), g.clone()) {
        Flow::Ok(h) => Outcome::Success(h),
        Flow::Fail => Outcome::Fail,
        Flow::Break(..) => unreachable!("elaboration rejects break outside a loop"),
        Flow::Diverge => Outcome::Diverge,
        Flow::Error(e) => Outcome::Error(e),
    };
    RunResult { outcome, steps: r.budget - r.fuel, applications: r.applications, trace: r.trace }
}

/// Like [`run`] with tracing switched on.
pub fn trace(p: &CoreProgram, g: &HostGraph, cfg: &ExecConfig) -> RunResult {
    run(p, g, &ExecConfig { trace: true, ..*cfg })
}
