//! The emitted ML subset: syntax tree, SML printer, evaluator and the
//! core-feature validator.

pub mod ast;
pub mod eval;
pub mod print;
pub mod validate;

pub use ast::{ConDecl, DataDecl, FunBind, MlDecl, MlExpr, MlPat, MlProgram, MlType, PrimOp};
pub use eval::{eval_ml, eval_ml_with, EvalConfig, MlRun, MlValue, TracedCall};
pub use print::pretty_print;
pub use validate::{validate_core, Violation};

/// Node kinds the translator may emit.
pub const CORE_EXPR_KINDS: &[&str] = &[
    "int-literal",
    "bool-literal",
    "variable",
    "tuple",
    "constructor",
    "if",
    "case",
    "let",
    "fun",
    "application",
    "primitive",
    "print",
];
