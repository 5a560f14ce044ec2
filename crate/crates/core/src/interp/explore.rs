use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use crate::graph::{canonical_key, CanonicalKey, GraphError, HostGraph};
use crate::lang::{Cmd, CmdId, CmdKind, CoreProgram};
use crate::rule::apply_match;

use super::{candidates, ExploreError, Outcome, RuntimeError, DEFAULT_BRANCH_CAP};

type StateId = usize;

/// One way a command can end, with the fuel left over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Res {
    Ok(StateId, u64),
    Break(StateId, u64, CmdId),
    Fail(u64),
    Diverge,
    Error(usize),
}

type Results = Rc<BTreeSet<Res>>;

struct Explorer {
    ids: HashMap<CanonicalKey, StateId>,
    states: Vec<(CanonicalKey, HostGraph)>,
    memo: HashMap<(CmdId, StateId, u64), Results>,
    errors: Vec<RuntimeError>,
    work: usize,
    cap: usize,
}

impl Explorer {
    fn intern(&mut self, g: HostGraph) -> Result<StateId, GraphError> {
        let key = canonical_key(&g)?;
        if let Some(&id) = self.ids.get(&key) {
            return Ok(id);
        }
        let id = self.states.len();
        self.ids.insert(key.clone(), id);
        self.states.push((key, g));
        Ok(id)
    }

    fn tick(&mut self) -> Result<(), ExploreError> {
        self.work += 1;
        if self.work > self.cap {
            return Err(ExploreError::StateSpaceLimit { limit: self.cap });
        }
        Ok(())
    }

    fn error(&mut self, e: RuntimeError) -> Res {
        let i = match self.errors.iter().position(|x| *x == e) {
            Some(i) => i,
            None => {
                self.errors.push(e);
                self.errors.len() - 1
            }
        };
        Res::Error(i)
    }

    fn explore(&mut self, c: &Cmd, s: StateId, fuel: u64) -> Result<Results, ExploreError> {
        let memo_key = (c.id, s, fuel);
        if let Some(r) = self.memo.get(&memo_key) {
            return Ok(r.clone());
        }
        self.tick()?;
        let mut out = BTreeSet::new();
        match &c.kind {
            CmdKind::RuleSet(rules) => match candidates(rules, &self.states[s].1) {
                Err(e) => {
                    out.insert(self.error(e));
                }
                Ok(ms) if ms.is_empty() => {
                    out.insert(Res::Fail(fuel));
                }
                Ok(_) if fuel == 0 => {
                    out.insert(Res::Diverge);
                }
                Ok(ms) => {
                    for (i, m) in ms {
                        let rule = &rules[i];
                        match apply_match(rule, &self.states[s].1, &m) {
                            Ok(h) => {
                                let t = self.intern(h)?;
                                out.insert(Res::Ok(t, fuel - 1));
                            }
                            Err(error) => {
                                out.insert(self.error(RuntimeError { rule: rule.name().to_owned(), error }));
                            }
                        }
                    }
                }
            },
            CmdKind::Seq(items) => {
                let mut current: BTreeSet<(StateId, u64)> = BTreeSet::from([(s, fuel)]);
                for item in items {
                    let mut next = BTreeSet::new();
                    for (s, f) in current {
                        for r in self.explore(item, s, f)?.iter() {
                            match *r {
                                Res::Ok(t, g) => {
                                    next.insert((t, g));
                                }
                                other => {
                                    out.insert(other);
                                }
                            }
                        }
                    }
                    current = next;
                }
                out.extend(current.into_iter().map(|(t, f)| Res::Ok(t, f)));
            }
            CmdKind::If { cond, then, els } => {
                for r in self.explore(cond, s, fuel)?.iter() {
                    let branch = match *r {
                        Res::Ok(_, f) => self.explore(then, s, f)?,
                        Res::Fail(f) => self.explore(els, s, f)?,
                        other => {
                            out.insert(other);
                            continue;
                        }
                    };
                    out.extend(branch.iter().copied());
                }
            }
            CmdKind::Try { cond, then, els } => {
                for r in self.explore(cond, s, fuel)?.iter() {
                    let branch = match *r {
                        Res::Ok(t, f) => self.explore(then, t, f)?,
                        Res::Fail(f) => self.explore(els, s, f)?,
                        other => {
                            out.insert(other);
                            continue;
                        }
                    };
                    out.extend(branch.iter().copied());
                }
            }
            CmdKind::Loop(body) => {
                let mut seen = HashSet::new();
                let mut stack = vec![(s, fuel)];
                while let Some((s, f)) = stack.pop() {
                    if !seen.insert((s, f)) {
                        continue;
                    }
                    self.tick()?;
                    for r in self.explore(body, s, f)?.iter() {
                        match *r {
                            Res::Ok(t, g) if g == f => {
                                if f == 0 {
                                    out.insert(Res::Diverge);
                                } else {
                                    stack.push((t, f - 1));
                                }
                            }
                            Res::Ok(t, g) => stack.push((t, g)),
                            Res::Fail(g) => {
                                out.insert(Res::Ok(s, g));
                            }
                            Res::Break(t, g, target) if target == c.id => {
                                out.insert(Res::Ok(t, g));
                            }
                            other => {
                                out.insert(other);
                            }
                        }
                    }
                }
            }
            CmdKind::Or(a, b) => {
                out.extend(self.explore(a, s, fuel)?.iter().copied());
                out.extend(self.explore(b, s, fuel)?.iter().copied());
            }
            CmdKind::Break { target } => {
                out.insert(Res::Break(s, fuel, *target));
            }
            CmdKind::Skip => {
                out.insert(Res::Ok(s, fuel));
            }
            CmdKind::Fail => {
                out.insert(Res::Fail(fuel));
            }
        }
        let out = Rc::new(out);
        self.memo.insert(memo_key, out.clone());
        Ok(out)
    }
}

/// Isomorphism class of successful results.
#[derive(Clone, Debug)]
pub struct SuccessClass {
    pub key: CanonicalKey,
    /// The first graph of the class that was reached.
    pub graph: HostGraph,
    /// Fuel used by the executions ending in this class.
    pub steps: BTreeSet<u64>,
}

/// Every way a program can end on a graph, up to isomorphism of results.
#[derive(Clone, Debug, Default)]
pub struct OutcomeSet {
    /// Sorted by key.
    pub successes: Vec<SuccessClass>,
    /// Fuel used by failing executions; empty when none fails.
    pub fail_steps: BTreeSet<u64>,
    pub diverges: bool,
    pub errors: Vec<RuntimeError>,
}

impl OutcomeSet {
    pub fn fails(&self) -> bool {
        !self.fail_steps.is_empty()
    }

    pub fn success_keys(&self) -> BTreeSet<CanonicalKey> {
        self.successes.iter().map(|c| c.key.clone()).collect()
    }

    /// Number of distinct outcomes, counting fail and divergence once each.
    pub fn len(&self) -> usize {
        self.successes.len() + usize::from(self.fails()) + usize::from(self.diverges) + self.errors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Fuel used by any execution.
    pub fn all_steps(&self) -> BTreeSet<u64> {
        let mut all = self.fail_steps.clone();
        for c in &self.successes {
            all.extend(&c.steps);
        }
        all
    }

    pub fn contains(&self, o: &Outcome) -> Result<bool, GraphError> {
        Ok(match o {
            Outcome::Success(g) => {
                let k = canonical_key(g)?;
                self.successes.binary_search_by(|c| c.key.cmp(&k)).is_ok()
            }
            Outcome::Fail => self.fails(),
            Outcome::Diverge => self.diverges,
            Outcome::Error(e) => self.errors.contains(e),
        })
    }

    /// Equal as sets of outcomes, ignoring step counts.
    pub fn same_outcomes(&self, other: &OutcomeSet) -> bool {
        self.success_keys() == other.success_keys()
            && self.fails() == other.fails()
            && self.diverges == other.diverges
            && self.errors.iter().all(|e| other.errors.contains(e))
            && other.errors.iter().all(|e| self.errors.contains(e))
    }

    /// Set union, merging step counts.
    pub fn union(&self, other: &OutcomeSet) -> OutcomeSet {
        let mut out = self.clone();
        for c in &other.successes {
            match out.successes.binary_search_by(|x| x.key.cmp(&c.key)) {
                Ok(i) => out.successes[i].steps.extend(&c.steps),
                Err(i) => out.successes.insert(i, c.clone()),
            }
        }
        out.fail_steps.extend(&other.fail_steps);
        out.diverges |= other.diverges;
        for e in &other.errors {
            if !out.errors.contains(e) {
                out.errors.push(e.clone());
            }
        }
        out
    }
}

/// All outcomes of `p` on `g` with the given fuel, exploring at most
/// [`DEFAULT_BRANCH_CAP`] states.
pub fn outcomes(p: &CoreProgram, g: &HostGraph, fuel: u64) -> Result<OutcomeSet, ExploreError> {
    outcomes_with_cap(p, g, fuel, DEFAULT_BRANCH_CAP)
}

/// Explores every rule, match, `or` branch and loop exit. Intermediate graphs
/// are identified up to isomorphism, so each class is explored once per
/// (command, fuel) pair.
pub fn outcomes_with_cap(p: &CoreProgram, g: &HostGraph, fuel: u64, cap: usize) -> Result<OutcomeSet, ExploreError> {
    let mut ex = Explorer {
        ids: HashMap::new(),
        states: Vec::new(),
        memo: HashMap::new(),
        errors: Vec::new(),
        work: 0,
        cap,
    };
    let s0 = ex.intern(g.clone())?;
    let results = ex.explore(p.main(), s0, fuel)?;
    let mut set = OutcomeSet::default();
    let mut classes: HashMap<StateId, BTreeSet<u64>> = HashMap::new();
    for r in results.iter() {
        match *r {
            Res::Ok(s, f) => {
                classes.entry(s).or_default().insert(fuel - f);
            }
            Res::Fail(f) => {
                set.fail_steps.insert(fuel - f);
            }
            Res::Diverge => set.diverges = true,
            Res::Error(i) => set.errors.push(ex.errors[i].clone()),
            Res::Break(..) => unreachable!("elaboration rejects break outside a loop"),
        }
    }
    set.successes = classes
        .into_iter()
        .map(|(s, steps)| {
            let (key, graph) = ex.states[s].clone();
            SuccessClass { key, graph, steps }
        })
        .collect();
    set.successes.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(set)
}
