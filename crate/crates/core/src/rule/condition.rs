use std::fmt;

use crate::graph::Atom;

use super::expr::{eval_expr, Assignment, Expr, HostContext};
use super::EvalError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypePred {
    Int,
    Str,
    Atom,
}

impl TypePred {
    pub fn keyword(self) -> &'static str {
        match self {
            TypePred::Int => "int",
            TypePred::Str => "string",
            TypePred::Atom => "atom",
        }
    }
}

/// Application condition of a rule (`where` clause).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum Condition {
    #[default]
    True,
    Cmp(CmpOp, Expr, Expr),
    Type(TypePred, String),
    /// `edge(i, j)` ignores labels; `edge(i, j, e)` compares the list part.
    Edge(String, String, Option<Expr>),
    Not(Box<Condition>),
    And(Box<Condition>, Box<Condition>),
    Or(Box<Condition>, Box<Condition>),
}


impl Condition {
    pub fn not(c: Condition) -> Condition {
        Condition::Not(Box::new(c))
    }

    pub fn and(a: Condition, b: Condition) -> Condition {
        Condition::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Condition, b: Condition) -> Condition {
        Condition::Or(Box::new(a), Box::new(b))
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Condition::True)
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        self.walk(&mut |c| match c {
            Condition::Cmp(_, a, b) => {
                out.extend(a.variables());
                out.extend(b.variables());
            }
            Condition::Type(_, v) => out.push(v),
            Condition::Edge(_, _, Some(e)) => out.extend(e.variables()),
            _ => {}
        });
        out
    }

    pub fn node_refs(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        self.walk(&mut |c| match c {
            Condition::Cmp(_, a, b) => {
                out.extend(a.node_refs());
                out.extend(b.node_refs());
            }
            Condition::Edge(i, j, e) => {
                out.push(i);
                out.push(j);
                if let Some(e) = e {
                    out.extend(e.node_refs());
                }
            }
            _ => {}
        });
        out
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Condition)) {
        f(self);
        match self {
            Condition::Not(c) => c.walk(f),
            Condition::And(a, b) | Condition::Or(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            _ => {}
        }
    }

    /// Evaluates the condition. `and`/`or` short-circuit left to right.
    pub fn eval(&self, assignment: &Assignment, host: HostContext<'_>) -> Result<bool, EvalError> {
        Ok(match self {
            Condition::True => true,
            Condition::Cmp(op, a, b) => {
                let x = eval_expr(assignment, Some(host), a)?;
                let y = eval_expr(assignment, Some(host), b)?;
                match op {
                    CmpOp::Eq => x == y,
                    CmpOp::Ne => x != y,
                    _ => {
                        let (x, y) = match (x.as_slice(), y.as_slice()) {
                            ([Atom::Int(x)], [Atom::Int(y)]) => (*x, *y),
                            _ => {
                                return Err(EvalError::TypeMismatch(format!(
                                    "`{a} {} {b}` compares non-integers",
                                    op.symbol()
                                )))
                            }
                        };
                        match op {
                            CmpOp::Lt => x < y,
                            CmpOp::Le => x <= y,
                            CmpOp::Gt => x > y,
                            CmpOp::Ge => x >= y,
                            CmpOp::Eq | CmpOp::Ne => unreachable!(),
                        }
                    }
                }
            }
            Condition::Type(pred, v) => {
                let val = assignment.get(v).ok_or_else(|| EvalError::Unbound(v.clone()))?;
                matches!(
                    (pred, val.as_slice()),
                    (TypePred::Int, [Atom::Int(_)]) | (TypePred::Str, [Atom::Str(_)]) | (TypePred::Atom, [_])
                )
            }
            Condition::Edge(i, j, label) => {
                let lookup = |n: &String| {
                    host.nodes
                        .get(n)
                        .copied()
                        .ok_or_else(|| EvalError::UnknownRuleNode(n.clone()))
                };
                let (s, t) = (lookup(i)?, lookup(j)?);
                match label {
                    None => host.graph.has_edge(s, t),
                    Some(e) => {
                        let want = eval_expr(assignment, Some(host), e)?;
                        host.graph.edges_between(s, t).any(|(_, edge)| edge.label.list == want)
                    }
                }
            }
            Condition::Not(c) => !c.eval(assignment, host)?,
            Condition::And(a, b) => a.eval(assignment, host)? && b.eval(assignment, host)?,
            Condition::Or(a, b) => a.eval(assignment, host)? || b.eval(assignment, host)?,
        })
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, outer: u8) -> fmt::Result {
        let prec = match self {
            Condition::Or(..) => 1,
            Condition::And(..) => 2,
            _ => 3,
        };
        if prec < outer {
            f.write_str("(")?;
        }
        match self {
            Condition::True => f.write_str("true")?,
            Condition::Cmp(op, a, b) => write!(f, "{a} {} {b}", op.symbol())?,
            Condition::Type(p, v) => write!(f, "{}({v})", p.keyword())?,
            Condition::Edge(i, j, None) => write!(f, "edge({i}, {j})")?,
            Condition::Edge(i, j, Some(e)) => write!(f, "edge({i}, {j}, {e})")?,
            Condition::Not(c) => {
                f.write_str("not ")?;
                c.fmt_prec(f, 3)?;
            }
            Condition::And(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" and ")?;
                b.fmt_prec(f, 3)?;
            }
            Condition::Or(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" or ")?;
                b.fmt_prec(f, 2)?;
            }
        }
        if prec < outer {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::graph::{EdgeSpec, HostGraph, Label, NodeId, NodeSpec};

    fn setup() -> (HostGraph, BTreeMap<String, NodeId>) {
        let g = HostGraph::build(
            [NodeSpec::new("a", Label::empty()), NodeSpec::new("b", Label::empty())],
            [EdgeSpec::new("e", "a", "b", Label::int(7))],
        )
        .unwrap();
        let m = [
            ("1".to_string(), g.node_by_name("a").unwrap()),
            ("2".to_string(), g.node_by_name("b").unwrap()),
        ]
        .into();
        (g, m)
    }

    #[test]
    fn negative_and_no_edge() {
        let (g, m) = setup();
        let ctx = HostContext::new(&g, &m);
        let cond = Condition::and(
            Condition::Cmp(CmpOp::Lt, Expr::var("n"), Expr::Int(0)),
            Condition::not(Condition::Edge("2".into(), "1".into(), None)),
        );
        let neg: Assignment = [("n".to_string(), vec![Atom::Int(-1)])].into();
        let pos: Assignment = [("n".to_string(), vec![Atom::Int(1)])].into();
        assert!(cond.eval(&neg, ctx).unwrap());
        assert!(!cond.eval(&pos, ctx).unwrap());
        let blocked = Condition::not(Condition::Edge("1".into(), "2".into(), None));
        assert!(!blocked.eval(&neg, ctx).unwrap());
    }

    #[test]
    fn labelled_edge_predicate() {
        let (g, m) = setup();
        let ctx = HostContext::new(&g, &m);
        let a = Assignment::new();
        assert!(Condition::Edge("1".into(), "2".into(), Some(Expr::Int(7))).eval(&a, ctx).unwrap());
        assert!(!Condition::Edge("1".into(), "2".into(), Some(Expr::Int(8))).eval(&a, ctx).unwrap());
    }

    #[test]
    fn type_predicates_and_compare_errors() {
        let (g, m) = setup();
        let ctx = HostContext::new(&g, &m);
        let a: Assignment = [("s".to_string(), vec![Atom::from("z")])].into();
        assert!(Condition::Type(TypePred::Str, "s".into()).eval(&a, ctx).unwrap());
        assert!(Condition::Type(TypePred::Atom, "s".into()).eval(&a, ctx).unwrap());
        assert!(!Condition::Type(TypePred::Int, "s".into()).eval(&a, ctx).unwrap());
        let bad = Condition::Cmp(CmpOp::Lt, Expr::var("s"), Expr::Int(1));
        assert!(matches!(bad.eval(&a, ctx), Err(EvalError::TypeMismatch(_))));
    }

    #[test]
    fn display_roundtrip_shape() {
        let c = Condition::or(
            Condition::and(Condition::True, Condition::Type(TypePred::Int, "x".into())),
            Condition::not(Condition::or(Condition::True, Condition::True)),
        );
        assert_eq!(c.to_string(), "true and int(x) or not (true or true)");
    }
}
