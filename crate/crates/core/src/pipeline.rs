//! Source-to-result helpers shared by the CLI and the harness.

use std::fmt;

use crate::frontend::{parse_source, ast::Program, SyntaxError};
use crate::mj_interp::interpret_mj;
use crate::ml::{eval_ml, pretty_print, MlProgram};
use crate::outcome::RunOutcome;
use crate::sema::{analyze, ClassTable, TypeError};
use crate::translator::{translate_with, TranslateError, TranslateOptions};

#[derive(Debug, Clone)]
pub enum PipelineError {
    Syntax(SyntaxError),
    Type(Vec<TypeError>),
    Translate(TranslateError),
}

impl PipelineError {
    /// One `<file>:<line>:<col>: <message>` line per diagnostic.
    pub fn diagnostics(&self, file: &str) -> Vec<String> {
        match self {
            PipelineError::Syntax(e) => vec![format!("{file}:{}: {}", e.pos(), e.message())],
            PipelineError::Type(errs) => errs.iter().map(|e| format!("{file}:{e}")).collect(),
            PipelineError::Translate(e) => vec![format!("{file}: {e}")],
        }
    }
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.diagnostics("<input>").join("\n"))
    }
}

pub struct Checked {
    pub program: Program,
    pub table: ClassTable,
}

pub fn check(source: &str) -> Result<Checked, PipelineError> {
    let program = parse_source(source).map_err(PipelineError::Syntax)?;
    let table = analyze(&program).map_err(PipelineError::Type)?;
    Ok(Checked { program, table })
}

pub fn compile(source: &str, options: &TranslateOptions) -> Result<MlProgram, PipelineError> {
    let c = check(source)?;
    translate_with(&c.program, &c.table, options).map_err(PipelineError::Translate)
}

pub fn compile_to_sml(source: &str, options: &TranslateOptions) -> Result<String, PipelineError> {
    compile(source, options).map(|p| pretty_print(&p))
}

pub fn run_mj(source: &str, fuel: u64) -> Result<RunOutcome, PipelineError> {
    let c = check(source)?;
    Ok(crate::with_large_stack(|| interpret_mj(&c.program, &c.table, fuel).outcome))
}

pub fn run_ml(source: &str, fuel: u64) -> Result<RunOutcome, PipelineError> {
    let ml = compile(source, &TranslateOptions::default())?;
    Ok(crate::with_large_stack(|| eval_ml(&ml, fuel)))
}
