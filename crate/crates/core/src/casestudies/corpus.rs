use std::collections::BTreeSet;
use std::sync::Arc;

use crate::graph::{canonical_key, CanonicalKey, GraphError, HostGraph};
use crate::interp::OutcomeSet;
use crate::lang::{
    elaborate, parse_command, parse_host_graph, parse_program, CoreProgram, Decl, ParseError, Program, ProgramError,
};
use crate::rule::Rule;

macro_rules! corpus {
    ($case:literal, $($part:literal),+) => {
        include_str!(concat!("../../../../corpus/", $case, "/", $($part),+))
    };
}

macro_rules! inputs {
    ($case:literal: $($name:literal $(=> $expected:literal)?),* $(,)?) => {
        &[$(CorpusInput {
            name: $name,
            host: corpus!($case, "inputs/", $name, ".host"),
            expected: inputs!(@expected $case $($expected)?),
        }),*]
    };
    (@expected $case:literal) => { None };
    (@expected $case:literal $expected:literal) => { Some(corpus!($case, "expected/", $expected, ".outcomes")) };
}

/// The four case studies shipped in `corpus/`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    TransClosure,
    Colouring,
    CycleCheck,
    SeriesParallel,
}

/// A host graph from `corpus/<case>/inputs`, with its golden outcomes if any.
#[derive(Clone, Copy, Debug)]
pub struct CorpusInput {
    pub name: &'static str,
    pub host: &'static str,
    pub expected: Option<&'static str>,
}

impl CorpusInput {
    pub fn graph(&self) -> HostGraph {
        parse_host_graph(self.host).unwrap_or_else(|e| panic!("corpus input {}: {e}", self.name))
    }

    pub fn expected(&self) -> Option<Expected> {
        self.expected
            .map(|text| Expected::parse(text).unwrap_or_else(|e| panic!("expected outcomes for {}: {e}", self.name)))
    }
}

impl Case {
    pub const ALL: [Case; 4] = [Case::TransClosure, Case::Colouring, Case::CycleCheck, Case::SeriesParallel];

    /// Directory name under `corpus/`.
    pub fn name(self) -> &'static str {
        match self {
            Case::TransClosure => "transclosure",
            Case::Colouring => "colouring",
            Case::CycleCheck => "cyclecheck",
            Case::SeriesParallel => "seriesparallel",
        }
    }

    pub fn from_name(name: &str) -> Option<Case> {
        Case::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn source(self) -> &'static str {
        match self {
            Case::TransClosure => corpus!("transclosure", "program.gp"),
            Case::Colouring => corpus!("colouring", "program.gp"),
            Case::CycleCheck => corpus!("cyclecheck", "program.gp"),
            Case::SeriesParallel => corpus!("seriesparallel", "program.gp"),
        }
    }

    pub fn ast(self) -> Program {
        parse_program(self.source()).unwrap_or_else(|e| panic!("corpus program {}: {e}", self.name()))
    }

    pub fn program(self) -> CoreProgram {
        elaborate(&self.ast()).unwrap_or_else(|e| panic!("corpus program {}: {e}", self.name()))
    }

    /// The same declarations with a different `Main` body.
    pub fn program_with_main(self, main: &str) -> Result<CoreProgram, ProgramError> {
        with_main(&self.ast(), main)
    }

    /// A top-level rule of the program.
    pub fn rule(self, name: &str) -> Arc<Rule> {
        self.ast()
            .decls
            .into_iter()
            .find_map(|d| match d {
                Decl::Rule(r) if r.rule.name() == name => Some(Arc::new(r.rule)),
                _ => None,
            })
            .unwrap_or_else(|| panic!("{} has no rule `{name}`", self.name()))
    }

    pub fn inputs(self) -> &'static [CorpusInput] {
        match self {
            Case::TransClosure => inputs!("transclosure":
                "cycle4" => "cycle4", "path3" => "path3", "labelled" => "labelled"),
            Case::Colouring => inputs!("colouring":
                "edge" => "edge", "path3" => "path3", "labelled" => "labelled"),
            Case::CycleCheck => inputs!("cyclecheck":
                "dag3" => "dag3", "selfloop" => "selfloop", "tail-cycle", "diamond-tail"),
            Case::SeriesParallel => inputs!("seriesparallel":
                "critical-pair" => "critical-pair", "diamond" => "diamond",
                "bridge" => "bridge", "isolated" => "isolated"),
        }
    }

    pub fn input(self, name: &str) -> CorpusInput {
        *self
            .inputs()
            .iter()
            .find(|i| i.name == name)
            .unwrap_or_else(|| panic!("{} has no input `{name}`", self.name()))
    }
}

/// Replaces the body of `Main` and elaborates.
pub fn with_main(program: &Program, main: &str) -> Result<CoreProgram, ProgramError> {
    let body = parse_command(main)?;
    let mut p = program.clone();
    for d in &mut p.decls {
        if let Decl::Main(m) = d {
            m.body = body.clone();
        }
    }
    Ok(elaborate(&p)?)
}

/// Golden outcomes of a corpus input.
///
/// ```text
/// # comment
/// steps 7 9
/// success
/// node a 1
/// end
/// fail
/// ```
#[derive(Clone, Debug, Default)]
pub struct Expected {
    /// Fuel used over all executions.
    pub steps: BTreeSet<u64>,
    pub successes: Vec<HostGraph>,
    pub fail: bool,
    pub diverge: bool,
}

impl Expected {
    pub fn parse(text: &str) -> Result<Expected, ParseError> {
        let mut e = Expected::default();
        let mut block: Option<(usize, String)> = None;
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if let Some((start, body)) = &mut block {
                if trimmed == "end" {
                    let g = parse_host_graph(body).map_err(|mut err| {
                        err.line += *start;
                        err
                    })?;
                    e.successes.push(g);
                    block = None;
                } else {
                    body.push_str(line);
                    body.push('\n');
                }
                continue;
            }
            let mut words = trimmed.split_whitespace();
            match words.next() {
                None => {}
                Some(w) if w.starts_with('#') => {}
                Some("steps") => {
                    for w in words {
                        let n = w.parse().map_err(|_| ParseError::new(idx + 1, 1, format!("bad step count `{w}`")))?;
                        e.steps.insert(n);
                    }
                }
                Some("success") => block = Some((idx + 1, String::new())),
                Some("fail") => e.fail = true,
                Some("diverge") => e.diverge = true,
                Some(w) => return Err(ParseError::new(idx + 1, 1, format!("unknown entry `{w}`"))),
            }
        }
        if let Some((start, _)) = block {
            return Err(ParseError::new(start, 1, "success block without `end`"));
        }
        Ok(e)
    }

    pub fn success_keys(&self) -> Result<BTreeSet<CanonicalKey>, GraphError> {
        self.successes.iter().map(canonical_key).collect()
    }

    /// Describes the first difference from an enumerated outcome set.
    pub fn compare(&self, got: &OutcomeSet) -> Result<(), String> {
        let want = self.success_keys().map_err(|e| e.to_string())?;
        if want != got.success_keys() {
            return Err(format!("{} success classes expected, {} found or differing", want.len(), got.successes.len()));
        }
        if self.fail != got.fails() {
            return Err(format!("fail expected: {}, found: {}", self.fail, got.fails()));
        }
        if self.diverge != got.diverges {
            return Err(format!("divergence expected: {}, found: {}", self.diverge, got.diverges));
        }
        if !got.errors.is_empty() {
            return Err(format!("runtime error: {}", got.errors[0]));
        }
        if self.steps != got.all_steps() {
            return Err(format!("step counts expected {:?}, found {:?}", self.steps, got.all_steps()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_loads() {
        for case in Case::ALL {
            case.program();
            assert_eq!(Case::from_name(case.name()), Some(case));
            for input in case.inputs() {
                input.graph();
                input.expected();
            }
        }
    }

    #[test]
    fn expected_format() {
        let e = Expected::parse("# c\nsteps 7 9\nsuccess\nnode a 1\nend\nsuccess\nend\nfail\n").unwrap();
        assert_eq!(e.steps, [7, 9].into());
        assert_eq!(e.successes.len(), 2);
        assert!(e.fail && !e.diverge);
        let err = Expected::parse("success\nnode a 1\nedge e a b empty\nend\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(Expected::parse("success\n").is_err());
        assert!(Expected::parse("maybe\n").is_err());
    }

    #[test]
    fn replace_main() {
        let p = Case::CycleCheck.program_with_main("P").unwrap();
        let g = Case::CycleCheck.input("dag3").graph();
        let r = crate::interp::run(&p, &g, &Default::default());
        assert_eq!(r.outcome.graph().unwrap().edge_count(), 4);
    }
}
