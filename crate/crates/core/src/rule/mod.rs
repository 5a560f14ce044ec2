//! Conditional rules: expressions, conditions, matching and application.

mod condition;
mod decl;
mod expr;
mod matching;

use thiserror::Error;

use crate::graph::GraphError;

pub use condition::{CmpOp, Condition, TypePred};
pub use decl::{match_label, Pattern, Rule, RuleEdge, RuleGraph, RuleNode};
pub use expr::{eval_expr, Assignment, BinOp, Expr, HostContext, Value, VarType};
pub use matching::{all_matches, apply_match, apply_rule_set, find_matches, Application, Match};

/// Errors raised while evaluating labels and conditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer overflow")]
    Overflow,
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("unknown rule node `{0}`")]
    UnknownRuleNode(String),
    #[error("degree function used without a host graph")]
    NoHostContext,
    #[error("match does not fit the host graph: {0}")]
    InvalidMatch(#[from] GraphError),
}

/// Errors in a rule declaration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("illegal left-hand pattern: {0}")]
    IllegalPattern(String),
    #[error("variable `{0}` is not declared")]
    UndeclaredVariable(String),
    #[error("variable `{0}` does not occur in a left-hand label")]
    UnboundVariable(String),
    #[error("duplicate declaration of `{0}`")]
    Duplicate(String),
    #[error("unknown rule node `{0}`")]
    UnknownNode(String),
    #[error("interface item `{0}` does not match both sides")]
    InterfaceMismatch(String),
    #[error("illegal mark on `{0}`")]
    IllegalMark(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{isomorphic, Atom, EdgeSpec, HostGraph, Label, Mark, NodeSpec};

    fn list(names: &[&str]) -> Vec<(String, VarType)> {
        names.iter().map(|n| (n.to_string(), VarType::List)).collect()
    }

    fn link() -> Rule {
        let left = RuleGraph::default()
            .node("1", Expr::var("x"), None)
            .node("2", Expr::var("y"), None)
            .node("3", Expr::var("z"), None)
            .edge("e1", "1", "2", Expr::var("a"), None)
            .edge("e2", "2", "3", Expr::var("b"), None);
        let right = left.clone().edge("e3", "1", "3", Expr::Empty, None);
        Rule::new(
            "link",
            list(&["x", "y", "z", "a", "b"]),
            left,
            right,
            vec!["1".into(), "2".into(), "3".into()],
            Condition::not(Condition::Edge("1".into(), "3".into(), None)),
        )
        .unwrap()
    }

    fn series() -> Rule {
        let left = RuleGraph::default()
            .node("1", Expr::var("x"), None)
            .node("2", Expr::var("y"), None)
            .node("3", Expr::var("z"), None)
            .edge("e1", "1", "2", Expr::var("a"), None)
            .edge("e2", "2", "3", Expr::var("b"), None);
        let right = RuleGraph::default()
            .node("1", Expr::var("x"), None)
            .node("3", Expr::var("z"), None)
            .edge("e3", "1", "3", Expr::Empty, None);
        Rule::new("series", list(&["x", "y", "z", "a", "b"]), left, right, vec!["1".into(), "3".into()], Condition::True)
            .unwrap()
    }

    fn inc() -> Rule {
        let mut vars = list(&["x", "y", "a"]);
        vars.push(("i".into(), VarType::Int));
        let xi = Expr::concat(Expr::var("x"), Expr::var("i"));
        let yi = Expr::concat(Expr::var("y"), Expr::var("i"));
        let left = RuleGraph::default()
            .node("1", xi.clone(), None)
            .node("2", yi, None)
            .edge("e1", "1", "2", Expr::var("a"), None);
        let right = RuleGraph::default()
            .node("1", xi, None)
            .node("2", Expr::concat(Expr::var("y"), Expr::arith(BinOp::Add, Expr::var("i"), Expr::Int(1))), None)
            .edge("e1", "1", "2", Expr::var("a"), None);
        Rule::new("inc", vars, left, right, vec!["1".into(), "2".into()], Condition::True).unwrap()
    }

    fn path(names: &[&str], labels: &[Label]) -> HostGraph {
        HostGraph::build(
            names.iter().map(|n| NodeSpec::new(*n, Label::empty())),
            names.windows(2).zip(labels).enumerate().map(|(i, (w, l))| {
                EdgeSpec::new(format!("e{i}"), w[0], w[1], l.clone())
            }),
        )
        .unwrap()
    }

    #[test]
    fn link_on_open_path_has_one_match() {
        let g = path(&["a", "b", "c"], &[Label::empty(), Label::empty()]);
        let ms = find_matches(&link(), &g).unwrap();
        assert_eq!(ms.len(), 1);
        let h = apply_match(&link(), &g, &ms[0]).unwrap();
        assert_eq!(h.edge_count(), 3);
        let (a, c) = (h.node_by_name("a").unwrap(), h.node_by_name("c").unwrap());
        assert!(h.has_edge(a, c));
        assert_eq!(g.edge_count(), 2, "input untouched");
    }

    #[test]
    fn link_on_two_cycle_has_no_match() {
        // a <-> b: every 3-node path needs a third node.
        let g = HostGraph::build(
            [NodeSpec::new("a", Label::empty()), NodeSpec::new("b", Label::empty())],
            [EdgeSpec::new("e1", "a", "b", Label::empty()), EdgeSpec::new("e2", "b", "a", Label::empty())],
        )
        .unwrap();
        assert!(find_matches(&link(), &g).unwrap().is_empty());
    }

    #[test]
    fn dangling_condition_blocks_deletion() {
        // node b has an extra incoming edge from d, so series cannot delete it
        let mut g = path(&["a", "b", "c"], &[Label::empty(), Label::empty()]);
        let d = g.add_named_node("d", Label::empty()).unwrap();
        let b = g.node_by_name("b").unwrap();
        g.add_edge(d, b, Label::empty()).unwrap();
        assert!(find_matches(&series(), &g).unwrap().is_empty());
    }

    #[test]
    fn series_contracts_path() {
        let g = path(&["1", "2", "3"], &[Label::new(vec!["a".into()]), Label::new(vec!["b".into()])]);
        let ms = find_matches(&series(), &g).unwrap();
        assert_eq!(ms.len(), 1);
        let h = apply_match(&series(), &g, &ms[0]).unwrap();
        assert_eq!((h.node_count(), h.edge_count()), (2, 1));
        let (s, t) = (h.node_by_name("1").unwrap(), h.node_by_name("3").unwrap());
        assert!(h.has_edge(s, t));
    }

    #[test]
    fn inc_relabels_target() {
        let g = HostGraph::build(
            [
                NodeSpec::new("u", Label::new(vec![Atom::from("x"), Atom::Int(1)])),
                NodeSpec::new("v", Label::new(vec![Atom::from("y"), Atom::Int(1)])),
            ],
            [EdgeSpec::new("e", "u", "v", Label::empty())],
        )
        .unwrap();
        let ms = find_matches(&inc(), &g).unwrap();
        assert_eq!(ms.len(), 1);
        let h = apply_match(&inc(), &g, &ms[0]).unwrap();
        let v = h.node_by_name("v").unwrap();
        assert_eq!(h.node(v).unwrap().label, Label::new(vec![Atom::from("y"), Atom::Int(2)]));
        let u = h.node_by_name("u").unwrap();
        assert_eq!(h.node(u).unwrap().label, Label::new(vec![Atom::from("x"), Atom::Int(1)]));
        // the edge is preserved, not recreated
        assert_eq!(h.edge_by_name("e"), g.edge_by_name("e"));
    }

    #[test]
    fn identity_rule_is_noop() {
        let side = RuleGraph::default().node("1", Expr::var("x"), None);
        let id = Rule::new("id", list(&["x"]), side.clone(), side, vec!["1".into()], Condition::True).unwrap();
        let g = path(&["a", "b", "c"], &[Label::empty(), Label::int(4)]);
        for m in find_matches(&id, &g).unwrap() {
            let h = apply_match(&id, &g, &m).unwrap();
            assert!(isomorphic(&g, &h));
        }
    }

    #[test]
    fn marks_match_exactly() {
        let side = RuleGraph::default().node("1", Expr::var("x"), Some(Mark::Grey));
        let r = Rule::new("g", list(&["x"]), side.clone(), side, vec!["1".into()], Condition::True).unwrap();
        let g = HostGraph::build(
            [
                NodeSpec::new("a", Label::empty()),
                NodeSpec::new("b", Label::marked(vec![], Mark::Grey)),
                NodeSpec::new("c", Label::marked(vec![], Mark::Red)),
            ],
            [],
        )
        .unwrap();
        let ms = find_matches(&r, &g).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].node_images, vec![g.node_by_name("b").unwrap()]);
    }

    #[test]
    fn empty_rule_set_fails() {
        let g = path(&["a", "b"], &[Label::empty()]);
        let none: [Rule; 0] = [];
        assert!(apply_rule_set(&none, &g, |_| 0).unwrap().is_none());
    }

    #[test]
    fn rule_set_on_cycle_adds_one_edge() {
        let g = HostGraph::build(
            ["a", "b", "c", "d"].map(|n| NodeSpec::new(n, Label::empty())),
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]
                .iter()
                .enumerate()
                .map(|(i, (s, t))| EdgeSpec::new(format!("e{i}"), *s, *t, Label::empty())),
        )
        .unwrap();
        let rules = [link()];
        let ms = find_matches(&rules[0], &g).unwrap();
        assert_eq!(ms.len(), 4);
        for k in 0..ms.len() {
            let app = apply_rule_set(&rules, &g, |n| {
                assert_eq!(n, 4);
                k
            })
            .unwrap()
            .unwrap();
            let expected = apply_match(&rules[0], &g, &ms[k]).unwrap();
            assert_eq!(app.graph, expected);
            assert_eq!(app.graph.edge_count(), 5);
            assert!(app.graph.edges().any(|(_, e)| e.label == Label::empty()));
        }
    }

    #[test]
    fn matches_are_sorted() {
        let g = path(&["a", "b", "c", "d"], &[Label::empty(), Label::empty(), Label::empty()]);
        let ms = find_matches(&link(), &g).unwrap();
        let keys: Vec<_> = ms.iter().map(|m| m.node_images.clone()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(ms.len(), 2);
    }

    #[test]
    fn runtime_error_in_rhs_surfaces() {
        let mut vars = list(&[]);
        vars.push(("n".into(), VarType::Int));
        let left = RuleGraph::default().node("1", Expr::var("n"), None);
        let right = RuleGraph::default()
            .node("1", Expr::arith(BinOp::Div, Expr::var("n"), Expr::Int(0)), None);
        let r = Rule::new("div", vars, left, right, vec!["1".into()], Condition::True).unwrap();
        let g = HostGraph::build([NodeSpec::new("a", Label::int(3))], []).unwrap();
        let m = &find_matches(&r, &g).unwrap()[0];
        assert_eq!(apply_match(&r, &g, m), Err(EvalError::DivisionByZero));
    }
}
