//! Differential testing and random program generation.

pub mod alloc;
pub mod diff;
pub mod generate;

use std::io;
use std::path::Path;

pub use alloc::{decode_heapval, ml_allocations, mj_allocations, AllocKind};
pub use diff::{diff_one, run_diff, verdict, DiffInput, DiffReport, DiffRow, Verdict};
pub use generate::generate_random_program;

/// Every `.java` file directly inside `dir`, sorted by file name.
pub fn corpus_inputs(dir: &Path) -> io::Result<Vec<DiffInput>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "java"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        // Unreadable or non-UTF-8 files become failing rows.
        let text = std::fs::read_to_string(&p).unwrap_or_else(|e| format!("<unreadable: {e}>"));
        out.push(DiffInput::Source { name, text });
    }
    Ok(out)
}

/// Generated programs for seeds `seed..seed + count`, named `random-<seed>`.
pub fn random_inputs(seed: u64, count: u64, size_budget: usize) -> Vec<DiffInput> {
    (seed..seed + count)
        .map(|s| DiffInput::Ast { name: format!("random-{s:04}"), program: generate_random_program(s, size_budget) })
        .collect()
}
