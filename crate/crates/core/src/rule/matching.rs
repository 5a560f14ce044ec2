use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::graph::{EdgeId, HostGraph, Label, NodeId};

use super::decl::Rule;
use super::expr::{eval_expr, Assignment, HostContext};
use super::EvalError;

/// An injective occurrence of a rule's left graph in a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Match {
    /// Images of the left nodes, in left-graph order.
    pub node_images: Vec<NodeId>,
    /// Images of the left edges, in left-graph order.
    pub edge_images: Vec<EdgeId>,
    /// Rule node id to host node.
    pub nodes: BTreeMap<String, NodeId>,
    /// Rule edge id to host edge.
    pub edges: BTreeMap<String, EdgeId>,
    #[serde(skip)]
    pub assignment: Assignment,
}

struct Search<'a> {
    rule: &'a Rule,
    g: &'a HostGraph,
    host_nodes: Vec<NodeId>,
    adjacency: HashMap<(NodeId, NodeId), Vec<EdgeId>>,
    /// Left edges whose later endpoint (in left order) is the given left node.
    closing_edges: Vec<Vec<usize>>,
    node_img: Vec<NodeId>,
    used_nodes: HashSet<NodeId>,
    edge_img: Vec<EdgeId>,
    used_edges: HashSet<EdgeId>,
    out: Vec<Match>,
}

impl Search<'_> {
    fn nodes(&mut self, i: usize, assignment: &Assignment) -> Result<(), EvalError> {
        let c = self.rule.compiled();
        if i == self.rule.left().nodes.len() {
            return self.edges(0, assignment);
        }
        let want_mark = self.rule.left().nodes[i].mark;
        for k in 0..self.host_nodes.len() {
            let h = self.host_nodes[k];
            if self.used_nodes.contains(&h) {
                continue;
            }
            let label = &self.g.node(h).expect("host node").label;
            if label.mark != want_mark {
                continue;
            }
            let Some(extended) = c.node_patterns[i].match_list(&label.list, assignment) else {
                continue;
            };
            self.node_img.push(h);
            let structural = self.closing_edges[i].iter().all(|&le| {
                let (s, t) = c.edge_ends[le];
                self.adjacency.contains_key(&(self.node_img[s], self.node_img[t]))
            });
            if structural {
                self.used_nodes.insert(h);
                self.nodes(i + 1, &extended)?;
                self.used_nodes.remove(&h);
            }
            self.node_img.pop();
        }
        Ok(())
    }

    fn edges(&mut self, j: usize, assignment: &Assignment) -> Result<(), EvalError> {
        let c = self.rule.compiled();
        if j == self.rule.left().edges.len() {
            return self.finish(assignment);
        }
        let (s, t) = c.edge_ends[j];
        let want_mark = self.rule.left().edges[j].mark;
        let candidates = self
            .adjacency
            .get(&(self.node_img[s], self.node_img[t]))
            .cloned()
            .unwrap_or_default();
        for e in candidates {
            if self.used_edges.contains(&e) {
                continue;
            }
            let label: &Label = &self.g.edge(e).expect("host edge").label;
            if label.mark != want_mark {
                continue;
            }
            let Some(extended) = c.edge_patterns[j].match_list(&label.list, assignment) else {
                continue;
            };
            self.edge_img.push(e);
            self.used_edges.insert(e);
            self.edges(j + 1, &extended)?;
            self.used_edges.remove(&e);
            self.edge_img.pop();
        }
        Ok(())
    }

    fn finish(&mut self, assignment: &Assignment) -> Result<(), EvalError> {
        let c = self.rule.compiled();
        // dangling condition
        for (pos, &kept) in c.kept_nodes.iter().enumerate() {
            if kept {
                continue;
            }
            if self
                .g
                .incident_edges(self.node_img[pos])
                .any(|e| !self.used_edges.contains(&e))
            {
                return Ok(());
            }
        }
        let left = self.rule.left();
        let nodes: BTreeMap<String, NodeId> = left
            .nodes
            .iter()
            .zip(&self.node_img)
            .map(|(n, &h)| (n.id.clone(), h))
            .collect();
        if !self
            .rule
            .condition()
            .eval(assignment, HostContext::new(self.g, &nodes))?
        {
            return Ok(());
        }
        let edges = left
            .edges
            .iter()
            .zip(&self.edge_img)
            .map(|(e, &h)| (e.id.clone(), h))
            .collect();
        self.out.push(Match {
            node_images: self.node_img.clone(),
            edge_images: self.edge_img.clone(),
            nodes,
            edges,
            assignment: assignment.clone(),
        });
        Ok(())
    }
}

/// All matches of `rule` in `g` that satisfy labels, marks, the dangling
/// condition and the application condition, ordered by node images and then
/// edge images.
pub fn find_matches(rule: &Rule, g: &HostGraph) -> Result<Vec<Match>, EvalError> {
    let c = rule.compiled();
    let mut adjacency: HashMap<(NodeId, NodeId), Vec<EdgeId>> = HashMap::new();
    for (id, e) in g.edges() {
        adjacency.entry((e.source, e.target)).or_default().push(id);
    }
    let mut closing_edges = vec![Vec::new(); rule.left().nodes.len()];
    for (j, &(s, t)) in c.edge_ends.iter().enumerate() {
        closing_edges[s.max(t)].push(j);
    }
    let mut search = Search {
        rule,
        g,
        host_nodes: g.node_ids().collect(),
        adjacency,
        closing_edges,
        node_img: Vec::new(),
        used_nodes: HashSet::new(),
        edge_img: Vec::new(),
        used_edges: HashSet::new(),
        out: Vec::new(),
    };
    search.nodes(0, &Assignment::new())?;
    let mut out = search.out;
    out.sort_by(|a, b| {
        (&a.node_images, &a.edge_images).cmp(&(&b.node_images, &b.edge_images))
    });
    Ok(out)
}

/// Applies `rule` at `m`, returning the derived graph. `g` is left untouched.
pub fn apply_match(rule: &Rule, g: &HostGraph, m: &Match) -> Result<HostGraph, EvalError> {
    let c = rule.compiled();
    let right = rule.right();
    let left = rule.left();
    let ctx = HostContext::new(g, &m.nodes);
    let node_labels = right
        .nodes
        .iter()
        .map(|n| Ok(Label { list: eval_expr(&m.assignment, Some(ctx), &n.label)?, mark: n.mark }))
        .collect::<Result<Vec<_>, EvalError>>()?;
    let edge_labels = right
        .edges
        .iter()
        .map(|e| Ok(Label { list: eval_expr(&m.assignment, Some(ctx), &e.label)?, mark: e.mark }))
        .collect::<Result<Vec<_>, EvalError>>()?;

    let mut h = g.clone();
    for (j, kept) in c.kept_edges.iter().enumerate() {
        if kept.is_none() {
            h.remove_edge(m.edge_images[j])?;
        }
    }
    for (i, &kept) in c.kept_nodes.iter().enumerate() {
        if !kept {
            h.remove_node(m.node_images[i])?;
        }
    }
    let mut right_images = Vec::with_capacity(right.nodes.len());
    for (ri, origin) in c.right_node_origin.iter().enumerate() {
        let label = node_labels[ri].clone();
        let id = match origin {
            Some(li) => {
                let id = m.node_images[*li];
                h.relabel_node(id, label)?;
                id
            }
            None => h.add_node(label)?,
        };
        right_images.push(id);
    }
    let pos = |id: &str| right.nodes.iter().position(|n| n.id == id).expect("validated endpoint");
    for (ri, origin) in c.right_edge_origin.iter().enumerate() {
        let label = edge_labels[ri].clone();
        match origin {
            Some(lj) => h.relabel_edge(m.edge_images[*lj], label)?,
            None => {
                let e = &right.edges[ri];
                h.add_edge(right_images[pos(&e.source)], right_images[pos(&e.target)], label)?;
            }
        }
    }
    debug_assert_eq!(left.nodes.len(), m.node_images.len());
    Ok(h)
}

/// A successful rule-set step.
#[derive(Clone, Debug)]
pub struct Application {
    /// Index of the applied rule within the rule set.
    pub rule: usize,
    pub matched: Match,
    pub graph: HostGraph,
}

/// Every `(rule index, match)` pair of a rule set, in rule order.
pub fn all_matches<R: AsRef<Rule>>(rules: &[R], g: &HostGraph) -> Result<Vec<(usize, Match)>, EvalError> {
    let mut out = Vec::new();
    for (i, r) in rules.iter().enumerate() {
        out.extend(find_matches(r.as_ref(), g)?.into_iter().map(|m| (i, m)));
    }
    Ok(out)
}

/// Applies one rule of the set at one match picked by `choose`, which receives
/// the number of candidates and returns an index below it. `Ok(None)` means the
/// call fails: no rule is applicable (always the case for the empty set).
pub fn apply_rule_set<R: AsRef<Rule>>(
    rules: &[R],
    g: &HostGraph,
    mut choose: impl FnMut(usize) -> usize,
) -> Result<Option<Application>, EvalError> {
    let mut candidates = all_matches(rules, g)?;
    if candidates.is_empty() {
        return Ok(None);
    }
    let k = choose(candidates.len());
    assert!(k < candidates.len(), "chooser returned {k} for {} candidates", candidates.len());
    let (rule, matched) = candidates.swap_remove(k);
    let graph = apply_match(rules[rule].as_ref(), g, &matched)?;
    Ok(Some(Application { rule, matched, graph }))
}

impl AsRef<Rule> for Rule {
    fn as_ref(&self) -> &Rule {
        self
    }
}
