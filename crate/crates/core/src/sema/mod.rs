//! Class table construction and static typing.

pub mod class_table;
pub mod typecheck;

use std::fmt;

pub use class_table::{build_class_table, ClassInfo, ClassTable, MethodSig};
pub use typecheck::{typecheck, Checker, VarRef};

use crate::frontend::ast::{MjType, Pos, Program};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError {
    pub pos: Pos,
    pub message: String,
    /// Expected and actual types, for mismatches.
    pub types: Option<(MjType, MjType)>,
}

impl TypeError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        TypeError { pos, message: message.into(), types: None }
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl std::error::Error for TypeError {}

/// Builds the class table and type-checks the program against it.
pub fn analyze(program: &Program) -> Result<ClassTable, Vec<TypeError>> {
    let table = build_class_table(program)?;
    typecheck(program, &table)?;
    Ok(table)
}
