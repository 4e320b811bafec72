//! Allocation sequences observed in both interpreters.

use crate::frontend::ast::Program;
use crate::mj_interp::{interpret_mj, HeapRecord};
use crate::ml::{eval_ml_with, EvalConfig, MlProgram, MlValue};
use crate::outcome::RunOutcome;
use crate::sema::ClassTable;
use crate::translator::encoding::ARRAY_CON;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AllocKind {
    Array(usize),
    Object(String),
}

/// Heap entries of a source run, by id.
pub fn mj_allocations(program: &Program, table: &ClassTable, fuel: u64) -> (RunOutcome, Vec<(usize, AllocKind)>) {
    let run = crate::with_large_stack(|| interpret_mj(program, table, fuel));
    let allocs = run
        .heap
        .iter()
        .map(|(id, rec)| {
            let kind = match rec {
                HeapRecord::IntArray(xs) => AllocKind::Array(xs.len()),
                HeapRecord::Object { class, .. } => AllocKind::Object(class.clone()),
            };
            (id.0, kind)
        })
        .collect();
    (run.outcome, allocs)
}

/// `heap_alloc` calls of an ML run in call order, with the id each returned.
pub fn ml_allocations(program: &MlProgram, fuel: u64) -> (RunOutcome, Vec<(i64, AllocKind)>) {
    let config = EvalConfig { fuel, trace: Some("heap_alloc".to_string()) };
    let run = crate::with_large_stack(|| eval_ml_with(program, &config));
    let allocs = run
        .trace
        .iter()
        .filter_map(|call| {
            let value = match &call.argument {
                MlValue::Tuple(parts) if parts.len() == 2 => &parts[1],
                _ => return None,
            };
            let id = match &call.result {
                MlValue::Tuple(parts) if parts.len() == 2 => match parts[1] {
                    MlValue::Int(n) => n,
                    _ => return None,
                },
                _ => return None,
            };
            Some((id, decode_heapval(value)?))
        })
        .collect();
    (run.outcome, allocs)
}

/// The array length or most-derived class of an encoded heap value.
pub fn decode_heapval(value: &MlValue) -> Option<AllocKind> {
    let MlValue::Con(con, Some(arg)) = value else { return None };
    if con == ARRAY_CON {
        return arg.as_list().map(|xs| AllocKind::Array(xs.len()));
    }
    let mut class = con.strip_prefix("C_")?.to_string();
    let mut level = arg.as_ref();
    loop {
        let ext = match level {
            MlValue::Tuple(items) => items.last()?,
            other => other,
        };
        match ext {
            MlValue::Con(some, Some(inner)) if some == "SOME" => match inner.as_ref() {
                MlValue::Con(x, Some(next)) => {
                    class = x.strip_prefix("X_")?.to_string();
                    level = next;
                }
                _ => return None,
            },
            _ => return Some(AllocKind::Object(class)),
        }
    }
}
