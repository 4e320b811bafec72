//! Observable results shared by both interpreters.

use std::fmt;

use crate::frontend::ast::Pos;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaultKind {
    NullDereference,
    IndexOutOfBounds,
    NegativeArraySize,
    IntegerOverflow,
    /// No case arm matched (evaluated ML only).
    MatchFailure,
    /// An operand of the wrong runtime kind; unreachable for well-typed input.
    TypeConfusion,
}

impl fmt::Display for FaultKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub kind: FaultKind,
    pub pos: Option<Pos>,
    pub detail: String,
}

impl Fault {
    pub fn new(kind: FaultKind, pos: Option<Pos>, detail: impl Into<String>) -> Self {
        Fault { kind, pos, detail: detail.into() }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(pos) => write!(f, "{} at {}", self.kind, pos),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Termination {
    Completed,
    Fault(Fault),
    /// The step budget ran out before the program finished.
    FuelExhausted,
}

/// Everything printed by a run, and how the run ended. On a fault or fuel
/// exhaustion `output` holds what was printed up to that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub output: Vec<i64>,
    pub termination: Termination,
}

impl RunOutcome {
    pub fn is_clean(&self) -> bool {
        self.termination == Termination::Completed
    }

    pub fn fault(&self) -> Option<&Fault> {
        match &self.termination {
            Termination::Fault(f) => Some(f),
            _ => None,
        }
    }

    /// Output as printed text, one integer per line, negative numbers with a
    /// leading `-`.
    pub fn stdout(&self) -> String {
        self.output.iter().map(|v| format!("{v}\n")).collect()
    }
}
