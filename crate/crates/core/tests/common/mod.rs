#![allow(dead_code)]

use std::path::PathBuf;

use mj2ml::frontend::ast::Program;
use mj2ml::ml::MlProgram;
use mj2ml::sema::ClassTable;

pub const CORPUS: [&str; 8] = [
    "BinarySearch",
    "BinaryTree",
    "BubbleSort",
    "Factorial",
    "LinearSearch",
    "LinkedList",
    "QuickSort",
    "TreeVisitor",
];

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn corpus_dir() -> PathBuf {
    root().join("corpus")
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(root().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn corpus_source(name: &str) -> String {
    read(&format!("corpus/{name}.java"))
}

/// Frozen output of the source interpreter.
pub fn golden(name: &str) -> Vec<i64> {
    read(&format!("corpus/expected/{name}.out")).lines().map(|l| l.parse().unwrap()).collect()
}

pub fn checked(source: &str) -> (Program, ClassTable) {
    let c = mj2ml::pipeline::check(source).unwrap_or_else(|e| panic!("{e}"));
    (c.program, c.table)
}

pub fn translated(source: &str) -> MlProgram {
    let (p, t) = checked(source);
    mj2ml::translator::translate(&p, &t).unwrap()
}
