//! Line-based host graph format.
//!
//! ```text
//! # comment
//! node a 5:3 #grey
//! node b "x":-1
//! edge e1 a b empty #dashed
//! ```
//!
//! Printing emits every node line, then every edge line, in id order with
//! single spaces. Such text parses and prints back byte for byte.

use std::fmt::{self, Write};

use crate::graph::{Atom, GraphError, HostGraph, Label, Mark};

use super::ParseError;

struct Line {
    chars: Vec<char>,
    at: usize,
    line: usize,
}

impl Line {
    fn col(&self) -> usize {
        self.at + 1
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].is_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn word(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        self.skip_ws();
        let col = self.col();
        let start = self.at;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '#' || c == '"' {
                break;
            }
            self.at += 1;
        }
        if start == self.at {
            let mut e = self.err(format!("missing {what}"));
            e.expected = vec![what.to_owned()];
            return Err(e);
        }
        Ok((self.chars[start..self.at].iter().collect(), col))
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        match self.peek() {
            Some('"') => {
                self.at += 1;
                let start = self.at;
                while let Some(c) = self.peek() {
                    if c == '"' {
                        let s: String = self.chars[start..self.at].iter().collect();
                        self.at += 1;
                        return Ok(Atom::Str(s));
                    }
                    self.at += 1;
                }
                Err(self.err("unterminated string"))
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let start = self.at;
                self.at += 1;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.at += 1;
                }
                let s: String = self.chars[start..self.at].iter().collect();
                s.parse::<i64>()
                    .map(Atom::Int)
                    .map_err(|_| ParseError::new(self.line, start + 1, format!("bad integer `{s}`")))
            }
            _ => {
                let mut e = self.err("expected an atom");
                e.expected = vec!["integer".into(), "string".into(), "empty".into()];
                Err(e)
            }
        }
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        self.skip_ws();
        let rest: String = self.chars[self.at..].iter().collect();
        let mut list = Vec::new();
        let is_empty_kw = rest.starts_with("empty")
            && rest[5..].chars().next().is_none_or(|c| c.is_whitespace() || c == '#');
        if is_empty_kw {
            self.at += 5;
        } else {
            list.push(self.atom()?);
            while self.peek() == Some(':') {
                self.at += 1;
                list.push(self.atom()?);
            }
        }
        self.skip_ws();
        let mut mark = None;
        if self.peek() == Some('#') && matches!(self.chars.get(self.at + 1), Some(c) if c.is_ascii_alphabetic()) {
            let col = self.col();
            self.at += 1;
            let start = self.at;
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                self.at += 1;
            }
            let name: String = self.chars[start..self.at].iter().collect();
            mark = Some(Mark::from_name(&name).ok_or_else(|| {
                let mut e = ParseError::new(self.line, col, format!("unknown mark `#{name}`"));
                e.expected = vec!["#red".into(), "#green".into(), "#blue".into(), "#grey".into(), "#dashed".into()];
                e
            })?);
        }
        self.skip_ws();
        match self.peek() {
            None | Some('#') => Ok(Label { list, mark }),
            Some(c) => Err(self.err(format!("unexpected `{c}` after label"))),
        }
    }
}

fn graph_err(line: usize, col: usize, e: GraphError) -> ParseError {
    let mut p = ParseError::new(line, col, e.to_string());
    p.graph_error = Some(e);
    p
}

/// Parses the host graph text format.
pub fn parse_host_graph(text: &str) -> Result<HostGraph, ParseError> {
    let mut g = HostGraph::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut line = Line { chars: raw.chars().collect(), at: 0, line: idx + 1 };
        line.skip_ws();
        if line.peek().is_none() || line.peek() == Some('#') {
            continue;
        }
        let (kw, kw_col) = line.word("`node` or `edge`")?;
        match kw.as_str() {
            "node" => {
                let (name, col) = line.word("node id")?;
                let label = line.label()?;
                g.add_named_node(name, label).map_err(|e| graph_err(idx + 1, col, e))?;
            }
            "edge" => {
                let (name, col) = line.word("edge id")?;
                let (src, src_col) = line.word("source id")?;
                let (tgt, tgt_col) = line.word("target id")?;
                let label = line.label()?;
                let s = g
                    .node_by_name(&src)
                    .ok_or_else(|| graph_err(idx + 1, src_col, GraphError::UnknownEndpoint(src.clone())))?;
                let t = g
                    .node_by_name(&tgt)
                    .ok_or_else(|| graph_err(idx + 1, tgt_col, GraphError::UnknownEndpoint(tgt.clone())))?;
                g.add_named_edge(name, s, t, label).map_err(|e| graph_err(idx + 1, col, e))?;
            }
            other => {
                let mut e = ParseError::new(idx + 1, kw_col, format!("unknown item `{other}`"));
                e.expected = vec!["node".into(), "edge".into()];
                return Err(e);
            }
        }
    }
    Ok(g)
}

/// Prints a host graph in the text format.
pub fn print_host_graph(g: &HostGraph) -> String {
    let mut out = String::new();
    write_host_graph(&mut out, g).expect("writing to a String");
    out
}

fn write_host_graph(out: &mut impl Write, g: &HostGraph) -> fmt::Result {
    for (_, n) in g.nodes() {
        writeln!(out, "node {} {}", n.name, n.label)?;
    }
    for (_, e) in g.edges() {
        let s = &g.node(e.source).expect("endpoint").name;
        let t = &g.node(e.target).expect("endpoint").name;
        writeln!(out, "edge {} {s} {t} {}", e.name, e.label)?;
    }
    Ok(())
}

impl fmt::Display for HostGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_host_graph(f, self)
    }
}
