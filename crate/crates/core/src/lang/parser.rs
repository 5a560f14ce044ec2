use std::collections::BTreeSet;

use crate::graph::Mark;
use crate::rule::{BinOp, CmpOp, Condition, Expr, Rule, RuleGraph, TypePred, VarType};

use super::ast::{Command, Decl, MainDecl, Pos, ProcDecl, Program, RuleDecl};
use super::lexer::{tokenize, Tok, Token};
use super::{LangError, ParseError};

const COMMAND_KEYWORDS: &[&str] = &["if", "then", "else", "try", "or", "break", "skip", "fail", "Main", "rule"];

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

type PResult<T> = Result<T, LangError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn pos(&self) -> Pos {
        let t = &self.toks[self.at];
        Pos { line: t.line, col: t.col }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, s: &str) -> bool {
        if self.is_kw(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> LangError {
        let p = self.pos();
        let mut e = ParseError::new(p.line, p.col, format!("unexpected {}", self.peek()));
        e.expected = expected.iter().map(|s| s.to_string()).collect();
        LangError::Parse(e)
    }

    fn expect_sym(&mut self, s: &'static str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(&[s]))
        }
    }

    fn expect_kw(&mut self, s: &'static str) -> PResult<()> {
        if self.eat_kw(s) {
            Ok(())
        } else {
            Err(self.error(&[s]))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    /// Rule item id: identifier or unsigned integer.
    fn item_id(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            Tok::Int(i) => {
                self.bump();
                Ok(i.to_string())
            }
            _ => Err(self.error(&["node or edge id"])),
        }
    }

    fn starts_decl(&self) -> bool {
        self.is_kw("rule") || (matches!(self.peek(), Tok::Ident(_)) && matches!(self.peek_at(1), Tok::Sym("=")))
    }

    // ---- declarations ----

    fn program(&mut self) -> PResult<Program> {
        let mut decls = Vec::new();
        while *self.peek() != Tok::Eof {
            decls.push(self.decl(false)?);
        }
        check_unique(&decls)?;
        if !decls.iter().any(|d| matches!(d, Decl::Main(_))) {
            return Err(LangError::MissingMain);
        }
        Ok(Program { decls })
    }

    fn decl(&mut self, local: bool) -> PResult<Decl> {
        let pos = self.pos();
        if self.eat_kw("rule") {
            return Ok(Decl::Rule(self.rule_decl(pos)?));
        }
        if self.is_kw("Main") && !local {
            self.bump();
            self.expect_sym("=")?;
            let body = self.comseq()?;
            return Ok(Decl::Main(MainDecl { body, pos }));
        }
        if !self.starts_decl() || self.is_kw("Main") {
            return Err(self.error(&["rule", "procedure declaration", if local { "]" } else { "Main" }]));
        }
        let name = self.ident()?;
        self.expect_sym("=")?;
        let mut locals = Vec::new();
        if self.eat_sym("[") {
            while !self.is_sym("]") {
                locals.push(self.decl(true)?);
            }
            self.bump();
            check_unique(&locals)?;
        }
        let body = self.comseq()?;
        Ok(Decl::Proc(ProcDecl { name, locals, body, pos }))
    }

    fn rule_decl(&mut self, pos: Pos) -> PResult<RuleDecl> {
        let name = self.ident()?;
        self.expect_sym("(")?;
        let mut vars = Vec::new();
        if !self.is_sym(")") {
            loop {
                let mut names = vec![self.ident()?];
                while self.eat_sym(",") {
                    names.push(self.ident()?);
                }
                self.expect_sym(":")?;
                let ty = match self.ident()?.as_str() {
                    "int" => VarType::Int,
                    "string" => VarType::Str,
                    "atom" => VarType::Atom,
                    "list" => VarType::List,
                    _ => {
                        self.at -= 1;
                        return Err(self.error(&["int", "string", "atom", "list"]));
                    }
                };
                vars.extend(names.into_iter().map(|n| (n, ty)));
                if !self.eat_sym(";") {
                    break;
                }
            }
        }
        self.expect_sym(")")?;
        let left = self.rule_graph()?;
        self.expect_sym("=>")?;
        let right = self.rule_graph()?;
        self.expect_kw("interface")?;
        self.expect_sym("=")?;
        self.expect_sym("{")?;
        let mut interface = Vec::new();
        if !self.is_sym("}") {
            interface.push(self.item_id()?);
            while self.eat_sym(",") {
                interface.push(self.item_id()?);
            }
        }
        self.expect_sym("}")?;
        let condition = if self.eat_kw("where") { self.condition()? } else { Condition::True };
        let rule = Rule::new(name.clone(), vars, left, right, interface, condition)
            .map_err(|source| LangError::InvalidRule { name, pos, source })?;
        Ok(RuleDecl { rule, pos })
    }

    fn mark(&mut self) -> PResult<Option<Mark>> {
        if let Tok::Mark(m) = self.peek().clone() {
            let Some(mark) = Mark::from_name(&m) else {
                return Err(self.error(&["#red", "#green", "#blue", "#grey", "#dashed"]));
            };
            self.bump();
            Ok(Some(mark))
        } else {
            Ok(None)
        }
    }

    fn rule_graph(&mut self) -> PResult<RuleGraph> {
        self.expect_sym("[")?;
        let mut g = RuleGraph::default();
        loop {
            if self.eat_kw("node") {
                let id = self.item_id()?;
                let label = self.expr()?;
                let mark = self.mark()?;
                g = g.node(&id, label, mark);
            } else if self.eat_kw("edge") {
                let id = self.item_id()?;
                let s = self.item_id()?;
                let t = self.item_id()?;
                let label = self.expr()?;
                let mark = self.mark()?;
                g = g.edge(&id, &s, &t, label, mark);
            } else if self.eat_sym("]") {
                return Ok(g);
            } else {
                return Err(self.error(&["node", "edge", "]"]));
            }
        }
    }

    // ---- expressions ----

    fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.additive()?;
        while self.eat_sym(":") {
            e = Expr::concat(e, self.additive()?);
        }
        Ok(e)
    }

    fn additive(&mut self) -> PResult<Expr> {
        let mut e = self.term()?;
        loop {
            let op = if self.eat_sym("+") {
                BinOp::Add
            } else if self.eat_sym("-") {
                BinOp::Sub
            } else {
                return Ok(e);
            };
            e = Expr::arith(op, e, self.term()?);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut e = self.unary()?;
        loop {
            let op = if self.eat_sym("*") {
                BinOp::Mul
            } else if self.eat_sym("/") {
                BinOp::Div
            } else {
                return Ok(e);
            };
            e = Expr::arith(op, e, self.unary()?);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym("-") {
            return Ok(match self.unary()? {
                Expr::Int(i) => Expr::Int(-i),
                e => Expr::Neg(Box::new(e)),
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(i) => {
                self.bump();
                Ok(Expr::Int(i))
            }
            Tok::Str(s) => {
                self.bump();
                Ok(Expr::Str(s))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            Tok::Ident(s) if s == "empty" => {
                self.bump();
                Ok(Expr::Empty)
            }
            Tok::Ident(s) if (s == "indegree" || s == "outdegree") && matches!(self.peek_at(1), Tok::Sym("(")) => {
                self.bump();
                self.bump();
                let n = self.item_id()?;
                self.expect_sym(")")?;
                Ok(if s == "indegree" { Expr::Indegree(n) } else { Expr::Outdegree(n) })
            }
            Tok::Ident(s) if !matches!(s.as_str(), "node" | "edge") => {
                self.bump();
                Ok(Expr::Var(s))
            }
            _ => Err(self.error(&["expression"])),
        }
    }

    // ---- conditions ----

    fn condition(&mut self) -> PResult<Condition> {
        let mut c = self.and_cond()?;
        while self.eat_kw("or") {
            c = Condition::or(c, self.and_cond()?);
        }
        Ok(c)
    }

    fn and_cond(&mut self) -> PResult<Condition> {
        let mut c = self.not_cond()?;
        while self.eat_kw("and") {
            c = Condition::and(c, self.not_cond()?);
        }
        Ok(c)
    }

    fn not_cond(&mut self) -> PResult<Condition> {
        if self.eat_kw("not") {
            return Ok(Condition::not(self.not_cond()?));
        }
        self.atom_cond()
    }

    fn atom_cond(&mut self) -> PResult<Condition> {
        if self.eat_kw("true") {
            return Ok(Condition::True);
        }
        if self.is_kw("edge") && matches!(self.peek_at(1), Tok::Sym("(")) {
            self.bump();
            self.bump();
            let i = self.item_id()?;
            self.expect_sym(",")?;
            let j = self.item_id()?;
            let label = if self.eat_sym(",") { Some(self.expr()?) } else { None };
            self.expect_sym(")")?;
            return Ok(Condition::Edge(i, j, label));
        }
        for (kw, pred) in [("int", TypePred::Int), ("string", TypePred::Str), ("atom", TypePred::Atom)] {
            if self.is_kw(kw) && matches!(self.peek_at(1), Tok::Sym("(")) {
                self.bump();
                self.bump();
                let v = self.ident()?;
                self.expect_sym(")")?;
                return Ok(Condition::Type(pred, v));
            }
        }
        if self.is_sym("(") {
            let save = self.at;
            self.bump();
            if let Ok(c) = self.condition() {
                if self.eat_sym(")") && !self.at_operator() {
                    return Ok(c);
                }
            }
            self.at = save;
        }
        let a = self.expr()?;
        let op = match self.peek() {
            Tok::Sym("=") => CmpOp::Eq,
            Tok::Sym("!=") => CmpOp::Ne,
            Tok::Sym("<") => CmpOp::Lt,
            Tok::Sym("<=") => CmpOp::Le,
            Tok::Sym(">") => CmpOp::Gt,
            Tok::Sym(">=") => CmpOp::Ge,
            _ => return Err(self.error(&["=", "!=", "<", "<=", ">", ">="])),
        };
        self.bump();
        let b = self.expr()?;
        Ok(Condition::Cmp(op, a, b))
    }

    fn at_operator(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Sym("=" | "!=" | "<" | "<=" | ">" | ">=" | "+" | "-" | "*" | "/" | ":")
        )
    }

    // ---- commands ----

    fn comseq(&mut self) -> PResult<Command> {
        let mut items = vec![self.com()?];
        while self.eat_sym(";") {
            items.push(self.com()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Command::Seq(items) })
    }

    fn com(&mut self) -> PResult<Command> {
        let mut c = self.loop_com()?;
        while self.eat_kw("or") {
            c = Command::Or(Box::new(c), Box::new(self.loop_com()?));
        }
        Ok(c)
    }

    fn loop_com(&mut self) -> PResult<Command> {
        let mut c = self.simple()?;
        while self.eat_sym("!") {
            c = Command::Loop(Box::new(c));
        }
        Ok(c)
    }

    fn simple(&mut self) -> PResult<Command> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(k) if k == "if" => {
                self.bump();
                let cond = self.comseq()?;
                self.expect_kw("then")?;
                let then = self.com()?;
                let els = if self.eat_kw("else") { Some(Box::new(self.com()?)) } else { None };
                Ok(Command::If { cond: Box::new(cond), then: Box::new(then), els })
            }
            Tok::Ident(k) if k == "try" => {
                self.bump();
                let cond = self.comseq()?;
                let then = if self.eat_kw("then") { Some(Box::new(self.com()?)) } else { None };
                let els = if self.eat_kw("else") { Some(Box::new(self.com()?)) } else { None };
                Ok(Command::Try { cond: Box::new(cond), then, els })
            }
            Tok::Ident(k) if k == "break" => {
                self.bump();
                Ok(Command::Break(pos))
            }
            Tok::Ident(k) if k == "skip" => {
                self.bump();
                Ok(Command::Skip)
            }
            Tok::Ident(k) if k == "fail" => {
                self.bump();
                Ok(Command::Fail)
            }
            Tok::Ident(k) if !COMMAND_KEYWORDS.contains(&k.as_str()) => {
                self.bump();
                Ok(Command::Call(k, pos))
            }
            Tok::Sym("{") => {
                self.bump();
                let mut names = Vec::new();
                if !self.is_sym("}") {
                    names.push(self.ident()?);
                    while self.eat_sym(",") {
                        names.push(self.ident()?);
                    }
                }
                self.expect_sym("}")?;
                Ok(Command::RuleSet(names, pos))
            }
            Tok::Sym("(") => {
                self.bump();
                let c = self.comseq()?;
                self.expect_sym(")")?;
                Ok(Command::Group(Box::new(c)))
            }
            _ => Err(self.error(&["command"])),
        }
    }
}

fn check_unique(decls: &[Decl]) -> PResult<()> {
    let mut seen = BTreeSet::new();
    for d in decls {
        if !seen.insert(d.name()) {
            return Err(LangError::DuplicateDeclaration { name: d.name().to_owned(), pos: d.pos() });
        }
    }
    Ok(())
}

/// Parses a program in the concrete syntax described in the crate docs.
pub fn parse_program(text: &str) -> Result<Program, LangError> {
    let toks = tokenize(text).map_err(LangError::Parse)?;
    let mut p = Parser { toks, at: 0 };
    p.program()
}

/// Parses a single command sequence (no declarations).
pub fn parse_command(text: &str) -> Result<Command, LangError> {
    let toks = tokenize(text).map_err(LangError::Parse)?;
    let mut p = Parser { toks, at: 0 };
    let c = p.comseq()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&[";", "end of input"]));
    }
    Ok(c)
}

/// Parses a single rule declaration starting with `rule`.
pub fn parse_rule(text: &str) -> Result<Rule, LangError> {
    let toks = tokenize(text).map_err(LangError::Parse)?;
    let mut p = Parser { toks, at: 0 };
    let pos = p.pos();
    p.expect_kw("rule")?;
    let d = p.rule_decl(pos)?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["end of input"]));
    }
    Ok(d.rule)
}
