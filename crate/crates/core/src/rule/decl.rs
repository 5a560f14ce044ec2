use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Atom, Mark};

use super::condition::Condition;
use super::expr::{Assignment, Expr, VarType};
use super::RuleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleNode {
    pub id: String,
    pub label: Expr,
    pub mark: Option<Mark>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleEdge {
    pub id: String,
    pub source: String,
    pub target: String,
    pub label: Expr,
    pub mark: Option<Mark>,
}

/// One side of a rule: nodes and edges labelled with expressions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleGraph {
    pub nodes: Vec<RuleNode>,
    pub edges: Vec<RuleEdge>,
}

impl RuleGraph {
    pub fn node(mut self, id: &str, label: Expr, mark: Option<Mark>) -> Self {
        self.nodes.push(RuleNode { id: id.to_owned(), label, mark });
        self
    }

    pub fn edge(mut self, id: &str, source: &str, target: &str, label: Expr, mark: Option<Mark>) -> Self {
        self.edges.push(RuleEdge {
            id: id.to_owned(),
            source: source.to_owned(),
            target: target.to_owned(),
            label,
            mark,
        });
        self
    }

    fn node_pos(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }
}

/// Compiled left-hand label: a flat concatenation of literals and variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    elems: Vec<PatElem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PatElem {
    Lit(Atom),
    Atomic(String, VarType),
    List(String),
}

impl Pattern {
    /// Compiles a left-hand label. Only literals, variables, `empty` and `:`
    /// are allowed, with at most one list variable.
    pub fn compile(expr: &Expr, vars: &BTreeMap<String, VarType>) -> Result<Pattern, RuleError> {
        let mut elems = Vec::new();
        flatten(expr, vars, &mut elems)?;
        let lists = elems.iter().filter(|e| matches!(e, PatElem::List(_))).count();
        if lists > 1 {
            return Err(RuleError::IllegalPattern(format!("`{expr}` has more than one list variable")));
        }
        Ok(Pattern { elems })
    }

    /// The unique extension of `bound` under which the pattern evaluates to
    /// `host`, if any.
    pub fn match_list(&self, host: &[Atom], bound: &Assignment) -> Option<Assignment> {
        let fixed = self.elems.iter().filter(|e| !matches!(e, PatElem::List(_))).count();
        let list_pos = self.elems.iter().position(|e| matches!(e, PatElem::List(_)));
        let mut out = bound.clone();
        match list_pos {
            None if host.len() != fixed => return None,
            Some(_) if host.len() < fixed => return None,
            _ => {}
        }
        let middle = host.len() - fixed;
        let mut cursor = 0;
        for elem in &self.elems {
            match elem {
                PatElem::Lit(a) => {
                    if host[cursor] != *a {
                        return None;
                    }
                    cursor += 1;
                }
                PatElem::Atomic(v, ty) => {
                    let value = &host[cursor..cursor + 1];
                    if !ty.admits(value) || !bind(&mut out, v, value) {
                        return None;
                    }
                    cursor += 1;
                }
                PatElem::List(v) => {
                    if !bind(&mut out, v, &host[cursor..cursor + middle]) {
                        return None;
                    }
                    cursor += middle;
                }
            }
        }
        Some(out)
    }
}

fn bind(a: &mut Assignment, var: &str, value: &[Atom]) -> bool {
    match a.get(var) {
        Some(existing) => existing.as_slice() == value,
        None => {
            a.insert(var.to_owned(), value.to_vec());
            true
        }
    }
}

fn flatten(e: &Expr, vars: &BTreeMap<String, VarType>, out: &mut Vec<PatElem>) -> Result<(), RuleError> {
    match e {
        Expr::Empty => {}
        Expr::Int(i) => out.push(PatElem::Lit(Atom::Int(*i))),
        Expr::Str(s) => out.push(PatElem::Lit(Atom::Str(s.clone()))),
        Expr::Neg(inner) => match inner.as_ref() {
            Expr::Int(i) => {
                let n = i.checked_neg().ok_or_else(|| RuleError::IllegalPattern(format!("`{e}` overflows")))?;
                out.push(PatElem::Lit(Atom::Int(n)))
            }
            _ => return Err(RuleError::IllegalPattern(format!("arithmetic `{e}` in a left label"))),
        },
        Expr::Var(v) => match vars.get(v) {
            Some(VarType::List) => out.push(PatElem::List(v.clone())),
            Some(&ty) => out.push(PatElem::Atomic(v.clone(), ty)),
            None => return Err(RuleError::UndeclaredVariable(v.clone())),
        },
        Expr::Concat(a, b) => {
            flatten(a, vars, out)?;
            flatten(b, vars, out)?;
        }
        Expr::Arith(..) | Expr::Indegree(_) | Expr::Outdegree(_) => {
            return Err(RuleError::IllegalPattern(format!("arithmetic `{e}` in a left label")))
        }
    }
    Ok(())
}

/// Matches a left-hand label expression against a host list.
pub fn match_label(
    pattern: &Expr,
    vars: &BTreeMap<String, VarType>,
    host: &[Atom],
) -> Result<Option<Assignment>, RuleError> {
    Ok(Pattern::compile(pattern, vars)?.match_list(host, &Assignment::new()))
}

/// A conditional rule `L <- K -> R` with an interface of preserved nodes.
///
/// Edges are preserved (rather than deleted and recreated) when the right
/// graph has an edge with the same id as the left graph; both must connect
/// the same interface nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    name: String,
    vars: Vec<(String, VarType)>,
    left: RuleGraph,
    right: RuleGraph,
    interface: Vec<String>,
    condition: Condition,
    compiled: Compiled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Compiled {
    pub node_patterns: Vec<Pattern>,
    pub edge_patterns: Vec<Pattern>,
    /// Left edge endpoints as left-node positions.
    pub edge_ends: Vec<(usize, usize)>,
    /// Per left node: kept by the interface.
    pub kept_nodes: Vec<bool>,
    /// Per left edge: position of the right edge preserving it.
    pub kept_edges: Vec<Option<usize>>,
    /// Per right node: position of the corresponding left node.
    pub right_node_origin: Vec<Option<usize>>,
    /// Per right edge: position of the preserved left edge.
    pub right_edge_origin: Vec<Option<usize>>,
}

impl Rule {
    pub fn new(
        name: impl Into<String>,
        vars: Vec<(String, VarType)>,
        left: RuleGraph,
        right: RuleGraph,
        interface: Vec<String>,
        condition: Condition,
    ) -> Result<Rule, RuleError> {
        let name = name.into();
        let mut types = BTreeMap::new();
        for (v, t) in &vars {
            if types.insert(v.clone(), *t).is_some() {
                return Err(RuleError::Duplicate(v.clone()));
            }
        }
        for side in [&left, &right] {
            let mut seen = BTreeSet::new();
            for n in &side.nodes {
                if !seen.insert(&n.id) {
                    return Err(RuleError::Duplicate(n.id.clone()));
                }
                if n.mark == Some(Mark::Dashed) {
                    return Err(RuleError::IllegalMark(n.id.clone()));
                }
            }
            let mut seen = BTreeSet::new();
            for e in &side.edges {
                if !seen.insert(&e.id) {
                    return Err(RuleError::Duplicate(e.id.clone()));
                }
                if e.mark == Some(Mark::Grey) {
                    return Err(RuleError::IllegalMark(e.id.clone()));
                }
                for end in [&e.source, &e.target] {
                    if side.node_pos(end).is_none() {
                        return Err(RuleError::UnknownNode(end.clone()));
                    }
                }
            }
        }
        let mut iface = BTreeSet::new();
        for i in &interface {
            if !iface.insert(i) {
                return Err(RuleError::Duplicate(i.clone()));
            }
            if left.node_pos(i).is_none() || right.node_pos(i).is_none() {
                return Err(RuleError::InterfaceMismatch(i.clone()));
            }
        }
        for n in &right.nodes {
            if left.node_pos(&n.id).is_some() && !iface.contains(&n.id) {
                return Err(RuleError::InterfaceMismatch(n.id.clone()));
            }
        }

        let node_patterns = left
            .nodes
            .iter()
            .map(|n| Pattern::compile(&n.label, &types))
            .collect::<Result<Vec<_>, _>>()?;
        let edge_patterns = left
            .edges
            .iter()
            .map(|e| Pattern::compile(&e.label, &types))
            .collect::<Result<Vec<_>, _>>()?;

        let mut left_vars = BTreeSet::new();
        for n in &left.nodes {
            left_vars.extend(n.label.variables());
        }
        for e in &left.edges {
            left_vars.extend(e.label.variables());
        }
        let mut used: Vec<&str> = condition.variables();
        for n in &right.nodes {
            used.extend(n.label.variables());
        }
        for e in &right.edges {
            used.extend(e.label.variables());
        }
        for v in used {
            if !types.contains_key(v) {
                return Err(RuleError::UndeclaredVariable(v.to_owned()));
            }
            if !left_vars.contains(v) {
                return Err(RuleError::UnboundVariable(v.to_owned()));
            }
        }
        let mut refs: Vec<&str> = condition.node_refs();
        for n in &right.nodes {
            refs.extend(n.label.node_refs());
        }
        for e in &right.edges {
            refs.extend(e.label.node_refs());
        }
        for r in refs {
            if left.node_pos(r).is_none() {
                return Err(RuleError::UnknownNode(r.to_owned()));
            }
        }

        let edge_ends = left
            .edges
            .iter()
            .map(|e| (left.node_pos(&e.source).unwrap(), left.node_pos(&e.target).unwrap()))
            .collect();
        let kept_nodes = left.nodes.iter().map(|n| iface.contains(&n.id)).collect();
        let mut kept_edges = vec![None; left.edges.len()];
        let mut right_edge_origin = vec![None; right.edges.len()];
        for (ri, re) in right.edges.iter().enumerate() {
            if let Some(li) = left.edges.iter().position(|le| le.id == re.id) {
                let le = &left.edges[li];
                if le.source != re.source || le.target != re.target {
                    return Err(RuleError::InterfaceMismatch(re.id.clone()));
                }
                kept_edges[li] = Some(ri);
                right_edge_origin[ri] = Some(li);
            }
        }
        let right_node_origin = right.nodes.iter().map(|n| left.node_pos(&n.id)).collect();

        let compiled = Compiled {
            node_patterns,
            edge_patterns,
            edge_ends,
            kept_nodes,
            kept_edges,
            right_node_origin,
            right_edge_origin,
        };
        Ok(Rule { name, vars, left, right, interface, condition, compiled })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[(String, VarType)] {
        &self.vars
    }

    pub fn left(&self) -> &RuleGraph {
        &self.left
    }

    pub fn right(&self) -> &RuleGraph {
        &self.right
    }

    pub fn interface(&self) -> &[String] {
        &self.interface
    }

    pub fn condition(&self) -> &Condition {
        &self.condition
    }

    pub(crate) fn compiled(&self) -> &Compiled {
        &self.compiled
    }
}
