//! A conditional rule: the grey node between 1 and 2 is replaced by a dashed
//! edge labelled 7, node labels are rewritten, and the `where` clause asks
//! for a negative `n` and no edge from 1 to 2.

use gp2::lang::{parse_host_graph, parse_rule};
use gp2::rule::{apply_match, find_matches};

const RULE: &str = "rule bridge(x, y: list; n: int)
  [ node 1 x
    node 2 n
    node 3 y #grey
    edge e1 1 3 empty
    edge e2 3 2 empty ]
  =>
  [ node 1 x:y
    node 2 n * n
    edge e3 1 2 7 #dashed ]
  interface = {1, 2}
  where n < 0 and not edge(1, 2)";

fn main() {
    let rule = parse_rule(RULE).expect("rule parses");

    let host = parse_host_graph(
        "node a \"a\"\nnode b -3\nnode g 5 #grey\nedge e1 a g empty\nedge e2 g b empty\n",
    )
    .unwrap();
    let matches = find_matches(&rule, &host).unwrap();
    println!("{} match(es)", matches.len());
    let result = apply_match(&rule, &host, &matches[0]).unwrap();
    print!("{result}");

    // a positive n, an existing 1 -> 2 edge, or a third edge on the grey
    // node each block the rule
    for (why, text) in [
        ("n positive", "node a 1\nnode b 3\nnode g 5 #grey\nedge e1 a g empty\nedge e2 g b empty\n"),
        (
            "edge from 1 to 2",
            "node a 1\nnode b -3\nnode g 5 #grey\nedge e1 a g empty\nedge e2 g b empty\nedge e3 a b \"x\"\n",
        ),
        (
            "dangling edge",
            "node a 1\nnode b -3\nnode c 0\nnode g 5 #grey\nedge e1 a g empty\nedge e2 g b empty\nedge e3 c g empty\n",
        ),
    ] {
        let g = parse_host_graph(text).unwrap();
        println!("{why}: {} match(es)", find_matches(&rule, &g).unwrap().len());
    }
}
