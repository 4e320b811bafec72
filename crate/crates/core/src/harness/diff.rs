//! Differential runs: the source under `mj_interp` against the translation
//! under the ML evaluator.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use crate::frontend::ast::Program;
use crate::mj_interp::interpret_mj;
use crate::ml::eval_ml;
use crate::outcome::{RunOutcome, Termination};
use crate::pipeline::{check, PipelineError};
use crate::sema::analyze;
use crate::translator::translate;

/// Evaluated ML takes several steps per source step.
pub const ML_FUEL_FACTOR: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    OutputMismatch,
    FaultMismatch,
    /// The source program faults; translated fault behavior is not compared.
    SkippedFaulting,
    /// A pipeline stage rejected the program, or the source ran out of fuel.
    Failed,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::OutputMismatch => "output-mismatch",
            Verdict::FaultMismatch => "fault-mismatch",
            Verdict::SkippedFaulting => "skipped-faulting",
            Verdict::Failed => "failed",
        }
    }

    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Match | Verdict::SkippedFaulting)
    }
}

#[derive(Debug, Clone)]
pub struct DiffRow {
    pub name: String,
    pub mj: Result<RunOutcome, String>,
    pub ml: Result<RunOutcome, String>,
    pub verdict: Verdict,
    pub millis: u128,
}

pub enum DiffInput {
    Source { name: String, text: String },
    Ast { name: String, program: Program },
}

impl DiffInput {
    pub fn name(&self) -> &str {
        match self {
            DiffInput::Source { name, .. } | DiffInput::Ast { name, .. } => name,
        }
    }
}

pub fn verdict(mj: &RunOutcome, ml: &RunOutcome) -> Verdict {
    match (&mj.termination, &ml.termination) {
        (Termination::Fault(_), _) => Verdict::SkippedFaulting,
        (Termination::FuelExhausted, _) => Verdict::Failed,
        (Termination::Completed, Termination::Completed) if mj.output == ml.output => Verdict::Match,
        (Termination::Completed, Termination::Completed) => Verdict::OutputMismatch,
        (Termination::Completed, _) => Verdict::FaultMismatch,
    }
}

fn describe(r: &Result<RunOutcome, String>) -> String {
    match r {
        Err(e) => e.clone(),
        Ok(o) => match &o.termination {
            Termination::Completed => format!("ok ({} lines)", o.output.len()),
            Termination::Fault(f) => format!("fault {}", f.kind),
            Termination::FuelExhausted => "out of fuel".to_string(),
        },
    }
}

fn stage_name(e: &PipelineError) -> String {
    match e {
        PipelineError::Syntax(s) => format!("syntax error at {}", s.pos()),
        PipelineError::Type(errs) => format!("type error at {}", errs[0].pos),
        PipelineError::Translate(_) => "translate error".to_string(),
    }
}

pub fn diff_one(input: &DiffInput, fuel: u64) -> DiffRow {
    let start = Instant::now();
    let checked = match input {
        DiffInput::Source { text, .. } => check(text).map(|c| (c.program, c.table)).map_err(|e| stage_name(&e)),
        DiffInput::Ast { program, .. } => analyze(program)
            .map(|t| (program.clone(), t))
            .map_err(|e| format!("type error at {}", e[0].pos)),
    };
    let (mj, ml) = match checked {
        Err(e) => (Err(e.clone()), Err(e)),
        Ok((program, table)) => {
            let mj = interpret_mj(&program, &table, fuel).outcome;
            let ml = translate(&program, &table)
                .map(|m| eval_ml(&m, fuel.saturating_mul(ML_FUEL_FACTOR)))
                .map_err(|e| e.to_string());
            (Ok(mj), ml)
        }
    };
    let verdict = match (&mj, &ml) {
        (Ok(a), Ok(b)) => verdict(a, b),
        _ => Verdict::Failed,
    };
    DiffRow { name: input.name().to_string(), mj, ml, verdict, millis: start.elapsed().as_millis() }
}

#[derive(Debug, Clone)]
pub struct DiffReport {
    pub rows: Vec<DiffRow>,
}

impl DiffReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.verdict.is_ok())
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == v).count()
    }

    /// The report without its timing column, for reproducibility checks.
    pub fn render_untimed(&self) -> String {
        self.render(false)
    }

    fn render(&self, timed: bool) -> String {
        let mut table: Vec<[String; 5]> = vec![["program", "mj", "ml", "verdict", "ms"].map(String::from)];
        for r in &self.rows {
            let ms = if timed { r.millis.to_string() } else { "-".to_string() };
            table.push([r.name.clone(), describe(&r.mj), describe(&r.ml), r.verdict.label().to_string(), ms]);
        }
        let mut widths = [0usize; 5];
        for row in &table {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for row in &table {
            let cells: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(cells.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

/// Runs every input, in parallel, and orders rows by program name.
pub fn run_diff(inputs: Vec<DiffInput>, fuel: u64) -> DiffReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .stack_size(256 << 20)
        .build()
        .expect("thread pool");
    let mut rows: Vec<DiffRow> = pool.install(|| inputs.par_iter().map(|i| diff_one(i, fuel)).collect());
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    DiffReport { rows }
}
