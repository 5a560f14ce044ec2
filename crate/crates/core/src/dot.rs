//! Graphviz rendering of host graphs.

use std::fmt::Write;

use crate::graph::{HostGraph, Label, Mark};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn label_text(name: &str, label: &Label) -> String {
    let list = Label { list: label.list.clone(), mark: None };
    format!("{}\\n{}", escape(name), escape(&list.to_string()))
}

/// Renders `g` in DOT. Grey nodes are filled gray, red, green and blue
/// items get that colour, dashed edges are drawn dashed.
pub fn to_dot(g: &HostGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for (_, n) in g.nodes() {
        let mut attrs = format!("label=\"{}\"", label_text(&n.name, &n.label));
        match n.label.mark {
            Some(Mark::Grey) => attrs.push_str(", style=filled, fillcolor=gray"),
            Some(m) => write!(attrs, ", color={m}").unwrap(),
            None => {}
        }
        writeln!(out, "  \"{}\" [{attrs}];", escape(&n.name)).unwrap();
    }
    for (_, e) in g.edges() {
        let s = &g.node(e.source).expect("endpoint").name;
        let t = &g.node(e.target).expect("endpoint").name;
        let mut attrs = format!("label=\"{}\"", label_text(&e.name, &e.label));
        match e.label.mark {
            Some(Mark::Dashed) => attrs.push_str(", style=dashed"),
            Some(m) => write!(attrs, ", color={m}").unwrap(),
            None => {}
        }
        writeln!(out, "  \"{}\" -> \"{}\" [{attrs}];", escape(s), escape(t)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_host_graph;

    #[test]
    fn marks_become_styles() {
        let g = parse_host_graph("node a 1 #grey\nnode b \"q\" #red\nedge e a b 7 #dashed\nedge f b b empty #blue\n").unwrap();
        let dot = to_dot(&g);
        assert_eq!(
            dot,
            "digraph G {\n  \"a\" [label=\"a\\n1\", style=filled, fillcolor=gray];\n  \"b\" [label=\"b\\n\\\"q\\\"\", color=red];\n  \
             \"a\" -> \"b\" [label=\"e\\n7\", style=dashed];\n  \"b\" -> \"b\" [label=\"f\\nempty\", color=blue];\n}\n"
        );
    }

    #[test]
    fn empty_graph() {
        assert_eq!(to_dot(&HostGraph::new()), "digraph G {\n}\n");
    }
}
