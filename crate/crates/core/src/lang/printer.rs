use std::fmt::Write;

use crate::rule::{Rule, RuleGraph, VarType};

use super::ast::{Command, Decl, Program};

/// Prints a program in normalised concrete syntax. Parsing the output yields
/// the same program.
pub fn print_program(p: &Program) -> String {
    let mut out = String::new();
    print_decls(&mut out, &p.decls, 0);
    out
}

fn print_decls(out: &mut String, decls: &[Decl], indent: usize) {
    for (i, d) in decls.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_decl(out, d, indent);
    }
}

fn pad(out: &mut String, indent: usize) {
    out.extend(std::iter::repeat_n(' ', indent));
}

fn print_decl(out: &mut String, d: &Decl, indent: usize) {
    match d {
        Decl::Rule(r) => print_rule_into(out, &r.rule, indent),
        Decl::Main(m) => {
            pad(out, indent);
            writeln!(out, "Main = {}", print_command(&m.body)).unwrap();
        }
        Decl::Proc(p) => {
            pad(out, indent);
            write!(out, "{} = ", p.name).unwrap();
            if !p.locals.is_empty() {
                out.push_str("[\n");
                print_decls(out, &p.locals, indent + 2);
                pad(out, indent);
                out.push_str("] ");
            }
            writeln!(out, "{}", print_command(&p.body)).unwrap();
        }
    }
}

/// Prints one rule declaration.
pub fn print_rule(r: &Rule) -> String {
    let mut out = String::new();
    print_rule_into(&mut out, r, 0);
    out
}

fn print_vars(vars: &[(String, VarType)]) -> String {
    let mut groups: Vec<(Vec<&str>, VarType)> = Vec::new();
    for (name, ty) in vars {
        match groups.last_mut() {
            Some((names, t)) if t == ty => names.push(name),
            _ => groups.push((vec![name], *ty)),
        }
    }
    groups
        .iter()
        .map(|(names, ty)| format!("{}: {}", names.join(", "), ty.keyword()))
        .collect::<Vec<_>>()
        .join("; ")
}

fn print_rule_into(out: &mut String, r: &Rule, indent: usize) {
    pad(out, indent);
    writeln!(out, "rule {}({})", r.name(), print_vars(r.vars())).unwrap();
    print_side(out, r.left(), indent + 2);
    pad(out, indent + 2);
    out.push_str("=>\n");
    print_side(out, r.right(), indent + 2);
    pad(out, indent + 2);
    writeln!(out, "interface = {{{}}}", r.interface().join(", ")).unwrap();
    if !r.condition().is_true() {
        pad(out, indent + 2);
        writeln!(out, "where {}", r.condition()).unwrap();
    }
}

fn print_side(out: &mut String, g: &RuleGraph, indent: usize) {
    let mut items = Vec::new();
    for n in &g.nodes {
        let mut s = format!("node {} {}", n.id, n.label);
        if let Some(m) = n.mark {
            write!(s, " #{m}").unwrap();
        }
        items.push(s);
    }
    for e in &g.edges {
        let mut s = format!("edge {} {} {} {}", e.id, e.source, e.target, e.label);
        if let Some(m) = e.mark {
            write!(s, " #{m}").unwrap();
        }
        items.push(s);
    }
    pad(out, indent);
    if items.is_empty() {
        out.push_str("[ ]\n");
        return;
    }
    out.push_str("[ ");
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
            pad(out, indent + 2);
        }
        out.push_str(item);
    }
    out.push_str(" ]\n");
}

/// Prints a command on one line.
pub fn print_command(c: &Command) -> String {
    let mut s = String::new();
    write_command(&mut s, c);
    s
}

fn write_command(s: &mut String, c: &Command) {
    match c {
        Command::Seq(items) => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    s.push_str("; ");
                }
                write_command(s, item);
            }
        }
        Command::Call(name, _) => s.push_str(name),
        Command::RuleSet(names, _) => write!(s, "{{{}}}", names.join(", ")).unwrap(),
        Command::If { cond, then, els } => {
            s.push_str("if ");
            write_command(s, cond);
            s.push_str(" then ");
            write_command(s, then);
            if let Some(e) = els {
                s.push_str(" else ");
                write_command(s, e);
            }
        }
        Command::Try { cond, then, els } => {
            s.push_str("try ");
            write_command(s, cond);
            if let Some(t) = then {
                s.push_str(" then ");
                write_command(s, t);
            }
            if let Some(e) = els {
                s.push_str(" else ");
                write_command(s, e);
            }
        }
        Command::Loop(body) => {
            write_command(s, body);
            s.push('!');
        }
        Command::Or(a, b) => {
            write_command(s, a);
            s.push_str(" or ");
            write_command(s, b);
        }
        Command::Group(inner) => {
            s.push('(');
            write_command(s, inner);
            s.push(')');
        }
        Command::Break(_) => s.push_str("break"),
        Command::Skip => s.push_str("skip"),
        Command::Fail => s.push_str("fail"),
    }
}
