//! MiniJava to core Standard ML translation.
//!
//! The pipeline is `frontend` (lex, parse) → `sema` (class table, typing) →
//! `translator` (store-passing, tuple-encoded objects) → `ml` (print as SML
//! text, or evaluate directly). `mj_interp` runs the source program so the
//! two executions can be compared; `harness` drives those comparisons.

pub mod frontend;
pub mod harness;
pub mod mj_interp;
pub mod ml;
pub mod outcome;
pub mod pipeline;
pub mod sema;
pub mod translator;

pub use outcome::{Fault, FaultKind, RunOutcome, Termination};

/// Largest integer either interpreter represents (2^62 - 1).
pub const INT_MAX: i64 = (1 << 62) - 1;
/// Smallest integer either interpreter represents (-2^62).
pub const INT_MIN: i64 = -(1 << 62);

/// Default step budget for both interpreters.
pub const DEFAULT_FUEL: u64 = 10_000_000;

/// Version string written into emitted file headers.
pub const TRANSLATOR_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntOp {
    Add,
    Sub,
    Mul,
}

/// Integer arithmetic confined to `[INT_MIN, INT_MAX]`; `None` on overflow.
pub fn checked_int(op: IntOp, a: i64, b: i64) -> Option<i64> {
    let v = match op {
        IntOp::Add => a.checked_add(b),
        IntOp::Sub => a.checked_sub(b),
        IntOp::Mul => a.checked_mul(b),
    }?;
    (INT_MIN..=INT_MAX).contains(&v).then_some(v)
}

/// Runs `f` on a thread with a large stack. Both interpreters recurse on the
/// structure of the program being run.
pub fn with_large_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(s, f)
            .expect("spawn interpreter thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_range() {
        assert_eq!(checked_int(IntOp::Add, INT_MAX - 1, 1), Some(INT_MAX));
        assert_eq!(checked_int(IntOp::Add, INT_MAX, 1), None);
        assert_eq!(checked_int(IntOp::Sub, INT_MIN, 0), Some(INT_MIN));
        assert_eq!(checked_int(IntOp::Sub, INT_MIN, 1), None);
        assert_eq!(checked_int(IntOp::Mul, 1 << 31, 1 << 31), None);
        assert_eq!(checked_int(IntOp::Mul, -(1 << 31), 1 << 31), Some(INT_MIN));
    }
}
