use crate::rule::Rule;

/// Source position (1-based).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

/// A parsed program: rule and procedure declarations plus one `Main`.
#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Rule(RuleDecl),
    Proc(ProcDecl),
    Main(MainDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Rule(r) => r.rule.name(),
            Decl::Proc(p) => &p.name,
            Decl::Main(_) => "Main",
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            Decl::Rule(r) => r.pos,
            Decl::Proc(p) => p.pos,
            Decl::Main(m) => m.pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RuleDecl {
    pub rule: Rule,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProcDecl {
    pub name: String,
    /// Local rule and procedure declarations.
    pub locals: Vec<Decl>,
    pub body: Command,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainDecl {
    pub body: Command,
    pub pos: Pos,
}

/// Command tree as written.
#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    /// `c1; c2; ...` (at least two elements).
    Seq(Vec<Command>),
    /// A bare identifier: a rule or a procedure, resolved during elaboration.
    Call(String, Pos),
    /// `{r1, ..., rn}`
    RuleSet(Vec<String>, Pos),
    If {
        cond: Box<Command>,
        then: Box<Command>,
        els: Option<Box<Command>>,
    },
    Try {
        cond: Box<Command>,
        then: Option<Box<Command>>,
        els: Option<Box<Command>>,
    },
    Loop(Box<Command>),
    Or(Box<Command>, Box<Command>),
    /// `( ... )`
    Group(Box<Command>),
    Break(Pos),
    Skip,
    Fail,
}

impl Program {
    pub fn main(&self) -> Option<&MainDecl> {
        self.decls.iter().find_map(|d| match d {
            Decl::Main(m) => Some(m),
            _ => None,
        })
    }
}
