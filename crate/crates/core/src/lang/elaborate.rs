use std::collections::HashMap;
use std::sync::Arc;

use crate::rule::Rule;

use super::ast::{Command, Decl, Pos, ProcDecl, Program};
use super::StaticError;

/// Identifier of a command node within one [`CoreProgram`].
pub type CmdId = usize;

/// Elaborated command: procedures inlined, rule names resolved.
#[derive(Clone, Debug)]
pub struct Cmd {
    pub id: CmdId,
    pub kind: CmdKind,
}

#[derive(Clone, Debug)]
pub enum CmdKind {
    RuleSet(Vec<Arc<Rule>>),
    Seq(Vec<Cmd>),
    If { cond: Box<Cmd>, then: Box<Cmd>, els: Box<Cmd> },
    Try { cond: Box<Cmd>, then: Box<Cmd>, els: Box<Cmd> },
    Loop(Box<Cmd>),
    Or(Box<Cmd>, Box<Cmd>),
    /// Exits the loop with the given id.
    Break { target: CmdId },
    Skip,
    Fail,
}

/// A program ready to run: a single command tree.
#[derive(Clone, Debug)]
pub struct CoreProgram {
    main: Cmd,
    size: usize,
}

impl CoreProgram {
    pub fn main(&self) -> &Cmd {
        &self.main
    }

    /// Number of command nodes; ids are `0..size`.
    pub fn size(&self) -> usize {
        self.size
    }
}

enum Item<'a> {
    Rule(Arc<Rule>),
    /// A procedure and the scope it was declared in.
    Proc(&'a ProcDecl, usize),
}

struct Scope<'a> {
    items: HashMap<&'a str, Item<'a>>,
    parent: Option<usize>,
}

struct Elab<'a> {
    scopes: Vec<Scope<'a>>,
    next_id: CmdId,
    active: Vec<*const ProcDecl>,
    loops: Vec<CmdId>,
    checking: bool,
}

impl<'a> Elab<'a> {
    fn fresh(&mut self) -> CmdId {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn node(&mut self, kind: CmdKind) -> Cmd {
        Cmd { id: self.fresh(), kind }
    }

    fn open_scope(&mut self, decls: &'a [Decl], parent: Option<usize>) -> usize {
        let idx = self.scopes.len();
        let mut items = HashMap::new();
        for d in decls {
            match d {
                Decl::Rule(r) => {
                    items.insert(r.rule.name(), Item::Rule(Arc::new(r.rule.clone())));
                }
                Decl::Proc(p) => {
                    items.insert(p.name.as_str(), Item::Proc(p, idx));
                }
                Decl::Main(_) => {}
            }
        }
        self.scopes.push(Scope { items, parent });
        idx
    }

    fn lookup(&self, name: &str, mut scope: usize) -> Option<&Item<'a>> {
        loop {
            if let Some(item) = self.scopes[scope].items.get(name) {
                return Some(item);
            }
            scope = self.scopes[scope].parent?;
        }
    }

    fn inline(&mut self, p: &'a ProcDecl, declared_in: usize, pos: Pos) -> Result<Cmd, StaticError> {
        let key = p as *const ProcDecl;
        if self.active.contains(&key) {
            return Err(StaticError::RecursiveProcedure { name: p.name.clone(), pos });
        }
        self.active.push(key);
        let scope = self.open_scope(&p.locals, Some(declared_in));
        let result = self.check_locals(&p.locals, scope).and_then(|_| self.command(&p.body, scope));
        self.active.pop();
        result
    }

    /// Elaborates every local procedure once so that unused ones are checked too.
    fn check_locals(&mut self, decls: &'a [Decl], scope: usize) -> Result<(), StaticError> {
        if !self.checking {
            return Ok(());
        }
        for d in decls {
            if let Decl::Proc(p) = d {
                let saved = std::mem::take(&mut self.loops);
                let r = self.inline(p, scope, p.pos);
                self.loops = saved;
                r?;
            }
        }
        Ok(())
    }

    fn command(&mut self, c: &'a Command, scope: usize) -> Result<Cmd, StaticError> {
        Ok(match c {
            Command::Seq(items) => {
                let items = items
                    .iter()
                    .map(|i| self.command(i, scope))
                    .collect::<Result<Vec<_>, _>>()?;
                self.node(CmdKind::Seq(items))
            }
            Command::Call(name, pos) => match self.lookup(name, scope) {
                Some(Item::Rule(r)) => {
                    let r = r.clone();
                    self.node(CmdKind::RuleSet(vec![r]))
                }
                Some(Item::Proc(p, declared_in)) => {
                    let (p, declared_in) = (*p, *declared_in);
                    self.inline(p, declared_in, *pos)?
                }
                None => return Err(StaticError::UnknownRule { name: name.clone(), pos: *pos }),
            },
            Command::RuleSet(names, pos) => {
                let mut rules = Vec::with_capacity(names.len());
                for n in names {
                    match self.lookup(n, scope) {
                        Some(Item::Rule(r)) => rules.push(r.clone()),
                        _ => return Err(StaticError::UnknownRule { name: n.clone(), pos: *pos }),
                    }
                }
                self.node(CmdKind::RuleSet(rules))
            }
            Command::If { cond, then, els } => {
                let cond = self.guard(cond, scope)?;
                let then = self.command(then, scope)?;
                let els = self.optional(els.as_deref(), scope)?;
                self.node(CmdKind::If { cond: Box::new(cond), then: Box::new(then), els: Box::new(els) })
            }
            Command::Try { cond, then, els } => {
                let cond = self.guard(cond, scope)?;
                let then = self.optional(then.as_deref(), scope)?;
                let els = self.optional(els.as_deref(), scope)?;
                self.node(CmdKind::Try { cond: Box::new(cond), then: Box::new(then), els: Box::new(els) })
            }
            Command::Loop(body) => {
                let id = self.fresh();
                self.loops.push(id);
                let body = self.command(body, scope);
                self.loops.pop();
                Cmd { id, kind: CmdKind::Loop(Box::new(body?)) }
            }
            Command::Or(a, b) => {
                let a = self.command(a, scope)?;
                let b = self.command(b, scope)?;
                self.node(CmdKind::Or(Box::new(a), Box::new(b)))
            }
            Command::Group(inner) => self.command(inner, scope)?,
            Command::Break(pos) => match self.loops.last() {
                Some(&target) => self.node(CmdKind::Break { target }),
                None if self.checking && !self.active.is_empty() => self.node(CmdKind::Break { target: usize::MAX }),
                None => return Err(StaticError::BreakOutsideLoop { pos: *pos }),
            },
            Command::Skip => self.node(CmdKind::Skip),
            Command::Fail => self.node(CmdKind::Fail),
        })
    }

    /// If/try conditions run on their own; a `break` may not escape them.
    fn guard(&mut self, c: &'a Command, scope: usize) -> Result<Cmd, StaticError> {
        let saved = std::mem::take(&mut self.loops);
        let r = self.command(c, scope);
        self.loops = saved;
        r
    }

    fn optional(&mut self, c: Option<&'a Command>, scope: usize) -> Result<Cmd, StaticError> {
        match c {
            Some(c) => self.command(c, scope),
            None => Ok(self.node(CmdKind::Skip)),
        }
    }
}

/// Inlines procedures and resolves rule names, rejecting recursion, unknown
/// names, and `break` outside a loop.
pub fn elaborate(program: &Program) -> Result<CoreProgram, StaticError> {
    let main = program.main().ok_or(StaticError::MissingMain)?;
    let mut e = Elab { scopes: Vec::new(), next_id: 0, active: Vec::new(), loops: Vec::new(), checking: true };
    let top = e.open_scope(&program.decls, None);
    e.check_locals(&program.decls, top)?;
    e.checking = false;
    e.next_id = 0;
    let main = e.command(&main.body, top)?;
    Ok(CoreProgram { main, size: e.next_id })
}
