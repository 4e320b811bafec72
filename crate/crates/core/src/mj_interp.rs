//! Reference interpreter for type-checked MiniJava.
//!
//! Big-step, left-to-right evaluation with Java semantics, except that
//! integers are 63-bit and overflow is a fault rather than wrapping.

use std::collections::HashMap;

use indexmap::IndexMap;

use crate::frontend::ast::*;
use crate::outcome::{Fault, FaultKind, RunOutcome, Termination};
use crate::sema::ClassTable;
use crate::{checked_int, IntOp};

/// Index of a heap record. Allocation hands these out as 0, 1, 2, …
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MjValue {
    Int(i64),
    Bool(bool),
    Ref(ObjectId),
    Null,
}

#[derive(Debug, Clone, PartialEq)]
pub enum HeapRecord {
    IntArray(Vec<i64>),
    Object { class: String, fields: IndexMap<String, MjValue> },
}

/// The store, indexed by `ObjectId`. Its length is the allocation count.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MjHeap {
    records: Vec<HeapRecord>,
}

impl MjHeap {
    pub fn alloc_count(&self) -> usize {
        self.records.len()
    }

    pub fn get(&self, id: ObjectId) -> Option<&HeapRecord> {
        self.records.get(id.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ObjectId, &HeapRecord)> {
        self.records.iter().enumerate().map(|(i, r)| (ObjectId(i), r))
    }

    fn alloc(&mut self, record: HeapRecord) -> ObjectId {
        self.records.push(record);
        ObjectId(self.records.len() - 1)
    }
}

/// A finished run: the observable outcome plus the final heap.
#[derive(Debug, Clone)]
pub struct MjRun {
    pub outcome: RunOutcome,
    pub heap: MjHeap,
}

pub fn interpret_mj(program: &Program, table: &ClassTable, fuel: u64) -> MjRun {
    let mut methods = HashMap::new();
    for class in &program.classes {
        for m in &class.methods {
            methods.entry((class.name.as_str(), m.name.as_str())).or_insert(m);
        }
    }
    let mut interp = Interp { table, methods, heap: MjHeap::default(), output: Vec::new(), fuel };
    let mut frame = Frame { this: None, vars: HashMap::new() };
    let result = program.main.body.iter().try_for_each(|s| interp.stmt(&mut frame, s));
    let termination = match result {
        Ok(()) => Termination::Completed,
        Err(Stop::Fault(f)) => Termination::Fault(f),
        Err(Stop::Fuel) => Termination::FuelExhausted,
    };
    MjRun { outcome: RunOutcome { output: interp.output, termination }, heap: interp.heap }
}

enum Stop {
    Fault(Fault),
    Fuel,
}

type Step<T> = Result<T, Stop>;

fn fault<T>(kind: FaultKind, span: Span, detail: impl Into<String>) -> Step<T> {
    Err(Stop::Fault(Fault::new(kind, Some(span.start), detail)))
}

fn default_value(ty: &MjType) -> MjValue {
    match ty {
        MjType::Int => MjValue::Int(0),
        MjType::Boolean => MjValue::Bool(false),
        MjType::IntArray | MjType::ClassRef(_) => MjValue::Null,
    }
}

struct Frame<'p> {
    this: Option<ObjectId>,
    vars: HashMap<&'p str, MjValue>,
}

struct Interp<'p> {
    table: &'p ClassTable,
    methods: HashMap<(&'p str, &'p str), &'p MethodDecl>,
    heap: MjHeap,
    output: Vec<i64>,
    fuel: u64,
}

impl<'p> Interp<'p> {
    fn tick(&mut self) -> Step<()> {
        if self.fuel == 0 {
            return Err(Stop::Fuel);
        }
        self.fuel -= 1;
        Ok(())
    }

    fn stmt(&mut self, frame: &mut Frame<'p>, s: &'p Stmt) -> Step<()> {
        self.tick()?;
        match &s.kind {
            StmtKind::Block(body) => body.iter().try_for_each(|s| self.stmt(frame, s)),
            StmtKind::If(c, t, e) => {
                if self.bool(frame, c)? {
                    self.stmt(frame, t)
                } else {
                    self.stmt(frame, e)
                }
            }
            StmtKind::While(c, body) => {
                while self.bool(frame, c)? {
                    self.stmt(frame, body)?;
                }
                Ok(())
            }
            StmtKind::Println(e) => {
                let v = self.int(frame, e)?;
                self.output.push(v);
                Ok(())
            }
            StmtKind::Assign(x, e) => {
                let v = self.expr(frame, e)?;
                self.store(frame, x, v, s.span)
            }
            StmtKind::ArrayAssign(x, i, v) => {
                let arr = self.load(frame, x, s.span)?;
                let index = self.int(frame, i)?;
                let value = self.int(frame, v)?;
                let elems = self.array_mut(arr, s.span)?;
                match usize::try_from(index).ok().filter(|&i| i < elems.len()) {
                    Some(i) => {
                        elems[i] = value;
                        Ok(())
                    }
                    None => fault(FaultKind::IndexOutOfBounds, s.span, format!("index {index}")),
                }
            }
        }
    }

    fn load(&mut self, frame: &Frame<'p>, name: &str, span: Span) -> Step<MjValue> {
        if let Some(v) = frame.vars.get(name) {
            return Ok(*v);
        }
        let Some(this) = frame.this else {
            return fault(FaultKind::TypeConfusion, span, format!("unbound variable {name}"));
        };
        match self.heap.records.get(this.0) {
            Some(HeapRecord::Object { fields, .. }) => match fields.get(name) {
                Some(v) => Ok(*v),
                None => fault(FaultKind::TypeConfusion, span, format!("no field {name}")),
            },
            _ => fault(FaultKind::TypeConfusion, span, "this is not an object"),
        }
    }

    fn store(&mut self, frame: &mut Frame<'p>, name: &str, value: MjValue, span: Span) -> Step<()> {
        if let Some(slot) = frame.vars.get_mut(name) {
            *slot = value;
            return Ok(());
        }
        let Some(this) = frame.this else {
            return fault(FaultKind::TypeConfusion, span, format!("unbound variable {name}"));
        };
        match self.heap.records.get_mut(this.0) {
            Some(HeapRecord::Object { fields, .. }) => match fields.get_mut(name) {
                Some(slot) => {
                    *slot = value;
                    Ok(())
                }
                None => fault(FaultKind::TypeConfusion, span, format!("no field {name}")),
            },
            _ => fault(FaultKind::TypeConfusion, span, "this is not an object"),
        }
    }

    fn array(&self, v: MjValue, span: Span) -> Step<&Vec<i64>> {
        match v {
            MjValue::Null => fault(FaultKind::NullDereference, span, "array is null"),
            MjValue::Ref(id) => match self.heap.records.get(id.0) {
                Some(HeapRecord::IntArray(elems)) => Ok(elems),
                _ => fault(FaultKind::TypeConfusion, span, "not an array"),
            },
            _ => fault(FaultKind::TypeConfusion, span, "not an array"),
        }
    }

    fn array_mut(&mut self, v: MjValue, span: Span) -> Step<&mut Vec<i64>> {
        match v {
            MjValue::Null => fault(FaultKind::NullDereference, span, "array is null"),
            MjValue::Ref(id) => match self.heap.records.get_mut(id.0) {
                Some(HeapRecord::IntArray(elems)) => Ok(elems),
                _ => fault(FaultKind::TypeConfusion, span, "not an array"),
            },
            _ => fault(FaultKind::TypeConfusion, span, "not an array"),
        }
    }

    fn int(&mut self, frame: &mut Frame<'p>, e: &'p Expr) -> Step<i64> {
        match self.expr(frame, e)? {
            MjValue::Int(v) => Ok(v),
            _ => fault(FaultKind::TypeConfusion, e.span, "expected an int"),
        }
    }

    fn bool(&mut self, frame: &mut Frame<'p>, e: &'p Expr) -> Step<bool> {
        match self.expr(frame, e)? {
            MjValue::Bool(v) => Ok(v),
            _ => fault(FaultKind::TypeConfusion, e.span, "expected a boolean"),
        }
    }

    fn arith(&mut self, frame: &mut Frame<'p>, op: IntOp, l: &'p Expr, r: &'p Expr, span: Span) -> Step<i64> {
        let a = self.int(frame, l)?;
        let b = self.int(frame, r)?;
        match checked_int(op, a, b) {
            Some(v) => Ok(v),
            None => fault(FaultKind::IntegerOverflow, span, format!("{a} {op:?} {b}")),
        }
    }

    fn expr(&mut self, frame: &mut Frame<'p>, e: &'p Expr) -> Step<MjValue> {
        self.tick()?;
        match &e.kind {
            ExprKind::Binary(BinOp::And, l, r) => {
                Ok(MjValue::Bool(self.bool(frame, l)? && self.bool(frame, r)?))
            }
            ExprKind::Binary(BinOp::Less, l, r) => {
                let a = self.int(frame, l)?;
                let b = self.int(frame, r)?;
                Ok(MjValue::Bool(a < b))
            }
            ExprKind::Binary(BinOp::Plus, l, r) => self.arith(frame, IntOp::Add, l, r, e.span).map(MjValue::Int),
            ExprKind::Binary(BinOp::Minus, l, r) => self.arith(frame, IntOp::Sub, l, r, e.span).map(MjValue::Int),
            ExprKind::Binary(BinOp::Times, l, r) => self.arith(frame, IntOp::Mul, l, r, e.span).map(MjValue::Int),
            ExprKind::Not(inner) => Ok(MjValue::Bool(!self.bool(frame, inner)?)),
            ExprKind::ArrayIndex(a, i) => {
                let arr = self.expr(frame, a)?;
                let index = self.int(frame, i)?;
                let elems = self.array(arr, e.span)?;
                match usize::try_from(index).ok().and_then(|i| elems.get(i)) {
                    Some(v) => Ok(MjValue::Int(*v)),
                    None => fault(FaultKind::IndexOutOfBounds, e.span, format!("index {index}")),
                }
            }
            ExprKind::ArrayLength(a) => {
                let arr = self.expr(frame, a)?;
                Ok(MjValue::Int(self.array(arr, e.span)?.len() as i64))
            }
            ExprKind::MethodCall(recv, name, args) => {
                let receiver = self.expr(frame, recv)?;
                let mut values = Vec::with_capacity(args.len());
                for a in args {
                    values.push(self.expr(frame, a)?);
                }
                let id = match receiver {
                    MjValue::Ref(id) => id,
                    MjValue::Null => {
                        return fault(FaultKind::NullDereference, e.span, format!("call of {name} on null"))
                    }
                    _ => return fault(FaultKind::TypeConfusion, e.span, "receiver is not an object"),
                };
                self.invoke(id, name, values, e.span)
            }
            ExprKind::IntLit(v) => Ok(MjValue::Int(*v)),
            ExprKind::True => Ok(MjValue::Bool(true)),
            ExprKind::False => Ok(MjValue::Bool(false)),
            ExprKind::Ident(x) => self.load(frame, x, e.span),
            ExprKind::This => match frame.this {
                Some(id) => Ok(MjValue::Ref(id)),
                None => fault(FaultKind::TypeConfusion, e.span, "this in main"),
            },
            ExprKind::NewIntArray(len) => {
                let n = self.int(frame, len)?;
                if n < 0 {
                    return fault(FaultKind::NegativeArraySize, e.span, format!("length {n}"));
                }
                Ok(MjValue::Ref(self.heap.alloc(HeapRecord::IntArray(vec![0; n as usize]))))
            }
            ExprKind::NewObject(class) => {
                let fields = self
                    .table
                    .all_fields(class)
                    .into_iter()
                    .map(|(_, f, t)| (f.to_string(), default_value(t)))
                    .collect();
                Ok(MjValue::Ref(self.heap.alloc(HeapRecord::Object { class: class.clone(), fields })))
            }
            ExprKind::Paren(inner) => self.expr(frame, inner),
        }
    }

    fn invoke(&mut self, id: ObjectId, name: &str, args: Vec<MjValue>, span: Span) -> Step<MjValue> {
        let class = match self.heap.records.get(id.0) {
            Some(HeapRecord::Object { class, .. }) => class.clone(),
            _ => return fault(FaultKind::TypeConfusion, span, "receiver is not an object"),
        };
        let table = self.table;
        let Some(owner) = table.method_impl(&class, name) else {
            return fault(FaultKind::TypeConfusion, span, format!("no method {name} in {class}"));
        };
        let method = self.methods[&(owner, name)];
        let mut vars = HashMap::new();
        for (formal, value) in method.formals.iter().zip(args) {
            vars.insert(formal.name.as_str(), value);
        }
        for local in &method.locals {
            vars.insert(local.name.as_str(), default_value(&local.ty));
        }
        let mut callee = Frame { this: Some(id), vars };
        for s in &method.body {
            self.stmt(&mut callee, s)?;
        }
        self.expr(&mut callee, &method.return_expr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;
    use crate::sema::analyze;
    use crate::DEFAULT_FUEL;

    fn run_src(src: &str, fuel: u64) -> MjRun {
        let program = parse_source(src).unwrap();
        let table = analyze(&program).unwrap();
        interpret_mj(&program, &table, fuel)
    }

    fn with_main(main: &str, classes: &str) -> String {
        format!("class Main {{ public static void main(String[] a) {{ {main} }} }}\n{classes}")
    }

    #[test]
    fn prints_zero() {
        let run = run_src(&with_main("System.out.println(0);", ""), DEFAULT_FUEL);
        assert_eq!(run.outcome, RunOutcome { output: vec![0], termination: Termination::Completed });
    }

    #[test]
    fn sequential_object_ids() {
        let run = run_src(
            &with_main("System.out.println(new T().go());", "class A { } class T { public int go() { int[] x; A y; x = new int[2]; y = new A(); return 0; } }"),
            DEFAULT_FUEL,
        );
        let kinds: Vec<_> = run
            .heap
            .iter()
            .map(|(id, r)| (id.0, matches!(r, HeapRecord::IntArray(_))))
            .collect();
        // The receiver T is allocated first.
        assert_eq!(kinds, vec![(0, false), (1, true), (2, false)]);
    }

    #[test]
    fn null_receiver_faults() {
        let run = run_src(
            &with_main(
                "System.out.println(1); System.out.println(new T().go());",
                "class T { T next; public int go() { return next.go(); } }",
            ),
            DEFAULT_FUEL,
        );
        assert_eq!(run.outcome.output, vec![1]);
        let f = run.outcome.fault().unwrap();
        assert_eq!(f.kind, FaultKind::NullDereference);
        assert_eq!(f.pos.map(|p| p.line), Some(2));
    }

    #[test]
    fn array_faults() {
        let cls = "class T { public int bad(int n, int i) { int[] a; a = new int[n]; return a[i]; } }";
        let out = |args: &str| run_src(&with_main(&format!("System.out.println(new T().bad({args}));"), cls), DEFAULT_FUEL).outcome;
        assert_eq!(out("3, 2").output, vec![0]);
        assert_eq!(out("3, 3").fault().unwrap().kind, FaultKind::IndexOutOfBounds);
        assert_eq!(out("3, 0 - 1").fault().unwrap().kind, FaultKind::IndexOutOfBounds);
        assert_eq!(out("0 - 1, 0").fault().unwrap().kind, FaultKind::NegativeArraySize);
    }

    #[test]
    fn overflow_faults() {
        let cls = "class T { public int go() { int x; x = 2; while (0 < x) x = x * x; return x; } }";
        let run = run_src(&with_main("System.out.println(new T().go());", cls), DEFAULT_FUEL);
        assert_eq!(run.outcome.fault().unwrap().kind, FaultKind::IntegerOverflow);
    }

    #[test]
    fn dynamic_dispatch_and_short_circuit() {
        let cls = "class A { public int f() { return 1; } public int g() { return this.f(); } }
                   class B extends A { public int f() { return 2; } }
                   class T { public int go() { A a; boolean b; a = new B(); b = false && (a.f() < 0); System.out.println(a.g()); return 0; } }";
        let run = run_src(&with_main("System.out.println(new T().go());", cls), DEFAULT_FUEL);
        assert_eq!(run.outcome.output, vec![2, 0]);
        // `&&` never evaluated the right operand: only T, then B were allocated.
        assert_eq!(run.heap.alloc_count(), 2);
    }

    #[test]
    fn fields_are_per_object_and_defaulted() {
        let cls = "class C { int n; boolean b; public int inc() { n = n + 1; return n; } public boolean flag() { return b; } }
                   class T { public int go() { C x; C y; int t; x = new C(); y = new C(); t = x.inc(); t = x.inc(); t = y.inc(); if (x.flag()) t = 100; else t = x.inc() * 10 + y.inc(); return t; } }";
        let run = run_src(&with_main("System.out.println(new T().go());", cls), DEFAULT_FUEL);
        assert_eq!(run.outcome.output, vec![32]);
    }

    #[test]
    fn fuel_exhaustion_and_monotonicity() {
        let src = with_main("System.out.println(new T().go());", "class T { public int go() { int i; i = 50; while (0 < i) i = i - 1; return i; } }");
        let full = run_src(&src, DEFAULT_FUEL).outcome;
        assert!(full.is_clean());
        let starved = run_src(&src, 20).outcome;
        assert_eq!(starved.termination, Termination::FuelExhausted);
        // Smallest sufficient budget, by bisection over a monotone predicate.
        let (mut lo, mut hi) = (1u64, 10_000u64);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if run_src(&src, mid).outcome.is_clean() {
                hi = mid
            } else {
                lo = mid + 1
            }
        }
        let needed = lo;
        for extra in [0, 1, 7, 1000] {
            assert_eq!(run_src(&src, needed + extra).outcome, full);
        }
        assert!(!run_src(&src, needed - 1).outcome.is_clean());
    }
}
