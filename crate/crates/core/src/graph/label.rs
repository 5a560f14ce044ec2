use std::fmt;

use serde::{Deserialize, Serialize};

/// A single list element: an integer or a string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Atom {
    Int(i64),
    Str(String),
}

impl Atom {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Atom::Int(i) => Some(*i),
            Atom::Str(_) => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Int(i) => write!(f, "{i}"),
            Atom::Str(s) => write!(f, "\"{s}\""),
        }
    }
}

impl From<i64> for Atom {
    fn from(i: i64) -> Self {
        Atom::Int(i)
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::Str(s.to_owned())
    }
}

/// Auxiliary colour attached to a node or edge label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mark {
    Red,
    Green,
    Blue,
    /// Nodes only.
    Grey,
    /// Edges only.
    Dashed,
}

impl Mark {
    pub fn name(self) -> &'static str {
        match self {
            Mark::Red => "red",
            Mark::Green => "green",
            Mark::Blue => "blue",
            Mark::Grey => "grey",
            Mark::Dashed => "dashed",
        }
    }

    pub fn from_name(s: &str) -> Option<Mark> {
        Some(match s {
            "red" => Mark::Red,
            "green" => Mark::Green,
            "blue" => Mark::Blue,
            "grey" => Mark::Grey,
            "dashed" => Mark::Dashed,
            _ => return None,
        })
    }

    pub fn allowed_on_node(self) -> bool {
        self != Mark::Dashed
    }

    pub fn allowed_on_edge(self) -> bool {
        self != Mark::Grey
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A host label: a (possibly empty) list of atoms plus an optional mark.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub list: Vec<Atom>,
    pub mark: Option<Mark>,
}

impl Label {
    /// The empty list without a mark ("unlabelled").
    pub fn empty() -> Self {
        Label::default()
    }

    pub fn new(list: Vec<Atom>) -> Self {
        Label { list, mark: None }
    }

    pub fn marked(list: Vec<Atom>, mark: Mark) -> Self {
        Label { list, mark: Some(mark) }
    }

    pub fn int(i: i64) -> Self {
        Label::new(vec![Atom::Int(i)])
    }

    pub fn with_mark(mut self, mark: Option<Mark>) -> Self {
        self.mark = mark;
        self
    }

    /// Trailing integer of the list, if any.
    pub fn int_tail(&self) -> Option<i64> {
        self.list.last().and_then(Atom::as_int)
    }
}

/// Writes a list in host syntax: `empty` or `a:b:c`.
pub fn write_list(f: &mut impl fmt::Write, list: &[Atom]) -> fmt::Result {
    if list.is_empty() {
        return f.write_str("empty");
    }
    for (i, atom) in list.iter().enumerate() {
        if i > 0 {
            f.write_char(':')?;
        }
        write!(f, "{atom}")?;
    }
    Ok(())
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.list)?;
        if let Some(mark) = self.mark {
            write!(f, " #{mark}")?;
        }
        Ok(())
    }
}
