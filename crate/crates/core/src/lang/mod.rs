//! Concrete syntax: programs (`.gp`) and host graphs (`.host`).
//!
//! Programs follow the command grammar `Main = ...`, procedures `Name = [locals] body`,
//! and rule declarations of the form
//!
//! ```text
//! rule link(x, y, z, a, b: list)
//!   [ node 1 x
//!     node 2 y
//!     node 3 z
//!     edge e1 1 2 a
//!     edge e2 2 3 b ]
//!   =>
//!   [ node 1 x
//!     node 2 y
//!     node 3 z
//!     edge e1 1 2 a
//!     edge e2 2 3 b
//!     edge e3 1 3 empty ]
//!   interface = {1, 2, 3}
//!   where not edge(1, 3)
//! ```
//!
//! Branches of `if`/`try` are single commands (`or` chains and loops
//! included); parenthesise to put a sequence there.

mod ast;
mod elaborate;
mod host;
mod lexer;
mod parser;
mod printer;

use std::fmt;

use thiserror::Error;

use crate::graph::GraphError;
use crate::rule::RuleError;

pub use ast::{Command, Decl, MainDecl, Pos, ProcDecl, Program, RuleDecl};
pub use elaborate::{elaborate, Cmd, CmdId, CmdKind, CoreProgram};
pub use host::{parse_host_graph, print_host_graph};
pub use parser::{parse_command, parse_program, parse_rule};
pub use printer::{print_command, print_program, print_rule};

/// Syntax error with position and the tokens that would have been accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
    /// Set when a host graph line violates a graph invariant.
    pub graph_error: Option<GraphError>,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into(), expected: Vec::new(), graph_error: None }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("{}:{}: duplicate declaration of `{name}`", pos.line, pos.col)]
    DuplicateDeclaration { name: String, pos: Pos },
    #[error("1:1: program has no Main declaration")]
    MissingMain,
    #[error("{}:{}: rule `{name}`: {source}", pos.line, pos.col)]
    InvalidRule { name: String, pos: Pos, source: RuleError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaticError {
    #[error("{}:{}: procedure `{name}` is recursive", pos.line, pos.col)]
    RecursiveProcedure { name: String, pos: Pos },
    #[error("{}:{}: unknown rule `{name}`", pos.line, pos.col)]
    UnknownRule { name: String, pos: Pos },
    #[error("{}:{}: `break` outside a loop", pos.line, pos.col)]
    BreakOutsideLoop { pos: Pos },
    #[error("1:1: program has no Main declaration")]
    MissingMain,
}

/// Parse and elaborate in one go.
pub fn load_program(text: &str) -> Result<CoreProgram, ProgramError> {
    let ast = parse_program(text)?;
    Ok(elaborate(&ast)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Static(#[from] StaticError),
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINK: &str = "rule link(x, y, z, a, b: list)
  [ node 1 x
    node 2 y
    node 3 z
    edge e1 1 2 a
    edge e2 2 3 b ]
  =>
  [ node 1 x
    node 2 y
    node 3 z
    edge e1 1 2 a
    edge e2 2 3 b
    edge e3 1 3 empty ]
  interface = {1, 2, 3}
  where not edge(1, 3)
";

    #[test]
    fn transclosure_shape() {
        let p = parse_program(&format!("Main = link!\n\n{LINK}")).unwrap();
        let main = p.main().unwrap();
        let Command::Loop(body) = &main.body else { panic!("expected loop, got {:?}", main.body) };
        assert!(matches!(body.as_ref(), Command::Call(n, _) if n == "link"));
        let Decl::Rule(r) = &p.decls[1] else { panic!() };
        assert_eq!(r.rule.left().nodes.len(), 3);
        assert_eq!(r.rule.right().edges.len(), 3);
    }

    #[test]
    fn print_parse_is_stable() {
        let src = format!("Main = link!\n\n{LINK}");
        let p = parse_program(&src).unwrap();
        assert_eq!(print_program(&p), src);
    }

    #[test]
    fn duplicate_main() {
        let e = parse_program("Main = skip\nMain = fail").unwrap_err();
        assert!(matches!(e, LangError::DuplicateDeclaration { ref name, .. } if name == "Main"));
    }

    #[test]
    fn missing_main() {
        assert_eq!(parse_program("P = skip").unwrap_err(), LangError::MissingMain);
    }

    #[test]
    fn if_with_procedure_calls() {
        let p = parse_program("P = skip\nQ = fail\nMain = if Cyclic then P else Q\nCyclic = skip").unwrap();
        let Command::If { cond, then, els } = &p.main().unwrap().body else { panic!() };
        assert!(matches!(cond.as_ref(), Command::Call(n, _) if n == "Cyclic"));
        assert!(matches!(then.as_ref(), Command::Call(n, _) if n == "P"));
        assert!(matches!(els.as_deref(), Some(Command::Call(n, _)) if n == "Q"));
    }

    #[test]
    fn precedence() {
        let c = parse_command("a!; b or c!; if d then e or f else g; (h; i)!").unwrap();
        assert_eq!(print_command(&c), "a!; b or c!; if d then e or f else g; (h; i)!");
        let Command::Seq(items) = c else { panic!() };
        assert_eq!(items.len(), 4);
        assert!(matches!(&items[1], Command::Or(_, b) if matches!(b.as_ref(), Command::Loop(_))));
        assert!(matches!(&items[2], Command::If { then, .. } if matches!(then.as_ref(), Command::Or(..))));
    }

    #[test]
    fn error_positions() {
        let e = parse_program("Main = a;\n  ;").unwrap_err();
        let LangError::Parse(pe) = e else { panic!() };
        assert_eq!((pe.line, pe.col), (2, 3));
        assert!(pe.expected.contains(&"command".to_string()));
        assert_eq!(pe.to_string(), "2:3: unexpected `;` (expected command)");
    }

    #[test]
    fn invalid_rule_reported() {
        let e = parse_program("rule r(x, y: list) [ node 1 x:y ] => [ node 1 x ] interface = {1}\nMain = r")
            .unwrap_err();
        assert!(matches!(e, LangError::InvalidRule { source: RuleError::IllegalPattern(_), .. }));
    }

    #[test]
    fn conditions_parse() {
        let r = parse_rule(
            "rule r(n: int; x: list) [ node 1 n node 2 x ] => [ node 1 n * n node 2 x ] interface = {1, 2}
             where (n + 1) * 2 < 0 and not (edge(1, 2) or edge(2, 1, 7)) and int(n) and indegree(1) = 0",
        )
        .unwrap();
        assert_eq!(
            r.condition().to_string(),
            "(n + 1) * 2 < 0 and not (edge(1, 2) or edge(2, 1, 7)) and int(n) and indegree(1) = 0"
        );
        let printed = print_rule(&r);
        assert_eq!(parse_rule(&printed).unwrap(), r);
    }

    #[test]
    fn locals_roundtrip() {
        let src = "P = [
  rule a()
    [ ]
    =>
    [ node 1 \"s\":-2 #red ]
    interface = {}

  Q = a or skip
] Q!; try a then b else fail

Main = P

rule b()
  [ ]
  =>
  [ ]
  interface = {}
";
        let p = parse_program(src).unwrap();
        assert_eq!(print_program(&p), src);
        assert!(elaborate(&p).is_ok());
    }
}
