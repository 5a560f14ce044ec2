use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{Atom, HostGraph, NodeId};

use super::EvalError;

/// Declared type of a rule variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarType {
    Int,
    Str,
    Atom,
    List,
}

impl VarType {
    pub fn keyword(self) -> &'static str {
        match self {
            VarType::Int => "int",
            VarType::Str => "string",
            VarType::Atom => "atom",
            VarType::List => "list",
        }
    }

    /// Whether a value (a list) inhabits this type.
    pub fn admits(self, value: &[Atom]) -> bool {
        match self {
            VarType::List => true,
            VarType::Atom => value.len() == 1,
            VarType::Int => matches!(value, [Atom::Int(_)]),
            VarType::Str => matches!(value, [Atom::Str(_)]),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 2,
            BinOp::Mul | BinOp::Div => 3,
        }
    }
}

/// Label expression. Rule node references (in degree functions) use the
/// rule's own node ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Int(i64),
    Str(String),
    Empty,
    Concat(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Arith(BinOp, Box<Expr>, Box<Expr>),
    Indegree(String),
    Outdegree(String),
}

/// Runtime value of an expression: every value is a list of atoms.
pub type Value = Vec<Atom>;

/// Variable bindings produced by matching.
pub type Assignment = BTreeMap<String, Value>;

/// Host context for degree functions: the host graph and the images of the
/// rule's left nodes.
#[derive(Clone, Copy)]
pub struct HostContext<'a> {
    pub graph: &'a HostGraph,
    pub nodes: &'a BTreeMap<String, NodeId>,
}

impl<'a> HostContext<'a> {
    pub fn new(graph: &'a HostGraph, nodes: &'a BTreeMap<String, NodeId>) -> Self {
        HostContext { graph, nodes }
    }

    fn image(&self, node: &str) -> Result<NodeId, EvalError> {
        self.nodes
            .get(node)
            .copied()
            .ok_or_else(|| EvalError::UnknownRuleNode(node.to_owned()))
    }
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_owned())
    }

    pub fn concat(a: Expr, b: Expr) -> Expr {
        Expr::Concat(Box::new(a), Box::new(b))
    }

    pub fn arith(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Arith(op, Box::new(a), Box::new(b))
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Expr::Concat(a, b) | Expr::Arith(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) => a.collect_vars(out),
            Expr::Int(_) | Expr::Str(_) | Expr::Empty | Expr::Indegree(_) | Expr::Outdegree(_) => {}
        }
    }

    /// Rule node ids referenced by degree functions.
    pub fn node_refs(&self) -> Vec<&str> {
        match self {
            Expr::Indegree(n) | Expr::Outdegree(n) => vec![n],
            Expr::Concat(a, b) | Expr::Arith(_, a, b) => {
                let mut v = a.node_refs();
                v.extend(b.node_refs());
                v
            }
            Expr::Neg(a) => a.node_refs(),
            _ => Vec::new(),
        }
    }

    pub fn eval(&self, assignment: &Assignment, host: Option<HostContext<'_>>) -> Result<Value, EvalError> {
        eval_expr(assignment, host, self)
    }
}

fn int_operand(v: Value, what: &Expr) -> Result<i64, EvalError> {
    match v.as_slice() {
        [Atom::Int(i)] => Ok(*i),
        _ => Err(EvalError::TypeMismatch(format!("`{what}` is not an integer"))),
    }
}

fn degree_value(d: usize) -> Result<Value, EvalError> {
    let d = i64::try_from(d).map_err(|_| EvalError::Overflow)?;
    Ok(vec![Atom::Int(d)])
}

/// Evaluates `e` under `assignment`. Degree functions need a host context.
pub fn eval_expr(
    assignment: &Assignment,
    host: Option<HostContext<'_>>,
    e: &Expr,
) -> Result<Value, EvalError> {
    match e {
        Expr::Var(v) => assignment
            .get(v)
            .cloned()
            .ok_or_else(|| EvalError::Unbound(v.clone())),
        Expr::Int(i) => Ok(vec![Atom::Int(*i)]),
        Expr::Str(s) => Ok(vec![Atom::Str(s.clone())]),
        Expr::Empty => Ok(Vec::new()),
        Expr::Concat(a, b) => {
            let mut left = eval_expr(assignment, host, a)?;
            left.extend(eval_expr(assignment, host, b)?);
            Ok(left)
        }
        Expr::Neg(a) => {
            let x = int_operand(eval_expr(assignment, host, a)?, a)?;
            Ok(vec![Atom::Int(x.checked_neg().ok_or(EvalError::Overflow)?)])
        }
        Expr::Arith(op, a, b) => {
            let x = int_operand(eval_expr(assignment, host, a)?, a)?;
            let y = int_operand(eval_expr(assignment, host, b)?, b)?;
            let r = match op {
                BinOp::Add => x.checked_add(y),
                BinOp::Sub => x.checked_sub(y),
                BinOp::Mul => x.checked_mul(y),
                BinOp::Div => {
                    if y == 0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    x.checked_div(y)
                }
            };
            Ok(vec![Atom::Int(r.ok_or(EvalError::Overflow)?)])
        }
        Expr::Indegree(n) | Expr::Outdegree(n) => {
            let ctx = host.ok_or(EvalError::NoHostContext)?;
            let v = ctx.image(n)?;
            let d = if matches!(e, Expr::Indegree(_)) {
                ctx.graph.indegree(v)
            } else {
                ctx.graph.outdegree(v)
            }
            .map_err(|_| EvalError::UnknownRuleNode(n.clone()))?;
            degree_value(d)
        }
    }
}

impl Expr {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, outer: u8) -> fmt::Result {
        let (prec, body): (u8, Box<dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result + '_>) = match self {
            Expr::Var(v) => (9, Box::new(move |f| f.write_str(v))),
            Expr::Int(i) => (9, Box::new(move |f| write!(f, "{i}"))),
            Expr::Str(s) => (9, Box::new(move |f| write!(f, "\"{s}\""))),
            Expr::Empty => (9, Box::new(|f| f.write_str("empty"))),
            Expr::Indegree(n) => (9, Box::new(move |f| write!(f, "indegree({n})"))),
            Expr::Outdegree(n) => (9, Box::new(move |f| write!(f, "outdegree({n})"))),
            Expr::Concat(a, b) => (
                1,
                Box::new(move |f| {
                    a.fmt_prec(f, 1)?;
                    f.write_str(":")?;
                    b.fmt_prec(f, 2)
                }),
            ),
            Expr::Neg(a) => (
                4,
                Box::new(move |f| {
                    f.write_str("-")?;
                    a.fmt_prec(f, 5)
                }),
            ),
            Expr::Arith(op, a, b) => {
                let p = op.precedence();
                (
                    p,
                    Box::new(move |f| {
                        a.fmt_prec(f, p)?;
                        write!(f, " {} ", op.symbol())?;
                        b.fmt_prec(f, p + 1)
                    }),
                )
            }
        };
        if prec < outer {
            f.write_str("(")?;
            body(f)?;
            f.write_str(")")
        } else {
            body(f)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
