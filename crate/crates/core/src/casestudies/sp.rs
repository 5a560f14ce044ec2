use std::collections::{HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{canonical_key, CanonicalKey, HostGraph, Label, NodeId};
use crate::interp::ExploreError;
use crate::rule::{apply_match, find_matches, Rule};

/// Series-parallel term: an edge, or two terms in series or in parallel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SPTerm {
    Edge,
    Series(Box<SPTerm>, Box<SPTerm>),
    Parallel(Box<SPTerm>, Box<SPTerm>),
}

impl SPTerm {
    pub fn series(a: SPTerm, b: SPTerm) -> SPTerm {
        SPTerm::Series(Box::new(a), Box::new(b))
    }

    pub fn parallel(a: SPTerm, b: SPTerm) -> SPTerm {
        SPTerm::Parallel(Box::new(a), Box::new(b))
    }

    pub fn edge_count(&self) -> usize {
        match self {
            SPTerm::Edge => 1,
            SPTerm::Series(a, b) | SPTerm::Parallel(a, b) => a.edge_count() + b.edge_count(),
        }
    }

    /// Builds the unlabelled graph: series merges the sink of the first part
    /// with the source of the second, parallel merges both terminals.
    pub fn realize(&self) -> HostGraph {
        let mut g = HostGraph::new();
        let s = g.add_node(Label::empty()).expect("unmarked label");
        let t = g.add_node(Label::empty()).expect("unmarked label");
        self.build(&mut g, s, t);
        g
    }

    fn build(&self, g: &mut HostGraph, s: NodeId, t: NodeId) {
        match self {
            SPTerm::Edge => {
                g.add_edge(s, t, Label::empty()).expect("terminals exist");
            }
            SPTerm::Series(a, b) => {
                let m = g.add_node(Label::empty()).expect("unmarked label");
                a.build(g, s, m);
                b.build(g, m, t);
            }
            SPTerm::Parallel(a, b) => {
                a.build(g, s, t);
                b.build(g, s, t);
            }
        }
    }

    fn random(rng: &mut impl Rng, edges: usize) -> SPTerm {
        if edges == 1 {
            return SPTerm::Edge;
        }
        let left = rng.gen_range(1..edges);
        let a = SPTerm::random(rng, left);
        let b = SPTerm::random(rng, edges - left);
        if rng.gen_bool(0.5) {
            SPTerm::series(a, b)
        } else {
            SPTerm::parallel(a, b)
        }
    }
}

impl fmt::Display for SPTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SPTerm::Edge => f.write_str("E"),
            SPTerm::Series(a, b) => write!(f, "S({a}, {b})"),
            SPTerm::Parallel(a, b) => write!(f, "P({a}, {b})"),
        }
    }
}

/// A random term with between 1 and `max_edges` edges, and its graph.
pub fn gen_series_parallel(seed: u64, max_edges: usize) -> (SPTerm, HostGraph) {
    assert!(max_edges >= 1, "a series-parallel graph has at least one edge");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = rng.gen_range(1..=max_edges);
    let term = SPTerm::random(&mut rng, edges);
    let g = term.realize();
    (term, g)
}

/// Every graph reachable from `g` by applying the rules as long as possible,
/// one representative per isomorphism class, in key order. At most `cap`
/// graphs are visited.
pub fn normal_forms<R: AsRef<Rule>>(rules: &[R], g: &HostGraph, cap: usize) -> Result<Vec<HostGraph>, ExploreError> {
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut forms = Vec::new();
    seen.insert(canonical_key(g)?);
    queue.push_back(g.clone());
    while let Some(h) = queue.pop_front() {
        let mut irreducible = true;
        for r in rules {
            let r = r.as_ref();
            for m in find_matches(r, &h).map_err(|e| eval_failure(r, e))? {
                irreducible = false;
                let next = apply_match(r, &h, &m).map_err(|e| eval_failure(r, e))?;
                let key = canonical_key(&next)?;
                if seen.insert(key) {
                    if seen.len() > cap {
                        return Err(ExploreError::StateSpaceLimit { limit: cap });
                    }
                    queue.push_back(next);
                }
            }
        }
        if irreducible {
            forms.push((canonical_key(&h)?, h));
        }
    }
    forms.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(forms.into_iter().map(|(_, h)| h).collect())
}

fn eval_failure(r: &Rule, e: crate::rule::EvalError) -> ExploreError {
    ExploreError::Runtime(crate::interp::RuntimeError { rule: r.name().to_owned(), error: e })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_terms() {
        let g = SPTerm::Edge.realize();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        let g = SPTerm::parallel(SPTerm::Edge, SPTerm::Edge).realize();
        assert_eq!((g.node_count(), g.edge_count()), (2, 2));
        let g = SPTerm::series(SPTerm::Edge, SPTerm::Edge).realize();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
        assert!(g.node_ids().all(|v| g.indegree(v).unwrap() + g.outdegree(v).unwrap() >= 1));
    }

    #[test]
    fn generator_respects_bound_and_seed() {
        for seed in 0..50 {
            let (t, g) = gen_series_parallel(seed, 12);
            assert!((1..=12).contains(&t.edge_count()));
            assert_eq!(g.edge_count(), t.edge_count());
            assert_eq!(gen_series_parallel(seed, 12).0, t);
        }
    }
}
