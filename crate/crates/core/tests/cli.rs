//! The `gp2` binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(path: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", path].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gp2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gp2")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("gp2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn run_prints_result_graph() {
    let o = gp2(&["run", &corpus("transclosure/program.gp"), &corpus("transclosure/inputs/path3.host")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("edge")).count(), 3);
    assert!(stderr(&o).contains("steps: 1"));
}

#[test]
fn run_is_deterministic_per_seed() {
    let args = |seed: &'static str| {
        ["run", "--seed", seed, "--dot", "/dev/null"]
            .into_iter()
            .map(str::to_owned)
            .chain([corpus("colouring/program.gp"), corpus("colouring/inputs/labelled.host")])
            .collect::<Vec<_>>()
    };
    let a: Vec<String> = args("5");
    let a: Vec<&str> = a.iter().map(String::as_str).collect();
    assert_eq!(stdout(&gp2(&a)), stdout(&gp2(&a)));
}

#[test]
fn exit_codes() {
    let sp = corpus("seriesparallel/program.gp");
    let o = gp2(&["run", &sp, &corpus("seriesparallel/inputs/bridge.host")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "FAIL");

    let spin = scratch("spin.gp", "Main = skip!\n");
    let g = scratch("one.host", "node a empty\n");
    let o = gp2(&["run", "--fuel", "50", &spin, &g]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o).trim(), "DIVERGE");

    let div = scratch(
        "div.gp",
        "Main = r\nrule r(i: int) [ node 1 i ] => [ node 1 i / 0 ] interface = {1}\n",
    );
    let o = gp2(&["run", &div, &scratch("int.host", "node a 3\n")]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("rule `r`"), "{}", stderr(&o));
}

#[test]
fn syntax_errors_name_file_line_and_column() {
    let bad = scratch("bad.gp", "Main = link!\nrule link(x: list)\n  [ node 1 x ] => [ node 1 x ]\n  interface = {1 1}\n");
    let o = gp2(&["run", &bad, &corpus("transclosure/inputs/path3.host")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.starts_with(&format!("{bad}:4:18: ")), "{err}");

    let host = scratch("bad.host", "node a empty\nedge e a z empty\n");
    let o = gp2(&["export-dot", &host]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with(&format!("{host}:2:")), "{}", stderr(&o));

    let o = gp2(&["run", &bad]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outcomes_lists_every_class() {
    let o = gp2(&["outcomes", &corpus("colouring/program.gp"), &corpus("colouring/inputs/path3.host")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("# success")).count(), 2);
    assert!(out.ends_with("2 success classes, fail: no, diverge: no, errors: 0\n"), "{out}");

    let o = gp2(&[
        "outcomes",
        "--branch-cap",
        "3",
        &corpus("transclosure/program.gp"),
        &corpus("transclosure/inputs/cycle4.host"),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("state space limit"));
}

#[test]
fn trace_text_and_json() {
    let args = [corpus("cyclecheck/program.gp"), corpus("cyclecheck/inputs/tail-cycle.host")];
    let o = gp2(&["trace", &args[0], &args[1]]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    assert!(stdout(&o).starts_with("step 1: delete @"));

    let o = gp2(&["trace", "--json-trace", &args[0], &args[1]]);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["rule"].is_string() && v["edge_count"].is_u64());
    }
}

#[test]
fn export_dot_to_file() {
    let out = std::env::temp_dir().join(format!("gp2-cli-{}-g.dot", std::process::id()));
    let o = gp2(&["export-dot", &corpus("cyclecheck/inputs/selfloop.host"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph G {") && dot.contains("\"b\" -> \"b\""));
}

#[test]
fn verify_a_case() {
    let o = gp2(&["verify", "seriesparallel"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
