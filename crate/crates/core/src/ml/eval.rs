//! Call-by-value evaluator for the emitted ML subset.
//!
//! Environments are persistent linked lists, so a closure sees exactly the
//! bindings in scope where it was created. Calls in tail position (let and
//! case bodies, if branches, applications) reuse the evaluator loop instead
//! of recursing, so translated loops run in constant native stack.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use super::ast::*;
use crate::outcome::{Fault, FaultKind, RunOutcome, Termination};
use crate::{checked_int, IntOp};

/// An owned snapshot of a runtime value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MlValue {
    Int(i64),
    Bool(bool),
    Tuple(Vec<MlValue>),
    Con(String, Option<Box<MlValue>>),
    /// A function value, by the name it was bound under.
    Closure(String),
}

impl MlValue {
    /// Reads a list value built from `::` and `nil`.
    pub fn as_list(&self) -> Option<Vec<&MlValue>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                MlValue::Con(c, None) if c == "nil" => return Some(out),
                MlValue::Con(c, Some(cell)) if c == "::" => match cell.as_ref() {
                    MlValue::Tuple(parts) if parts.len() == 2 => {
                        out.push(&parts[0]);
                        cur = &parts[1];
                    }
                    _ => return None,
                },
                _ => return None,
            }
        }
    }
}

impl fmt::Display for MlValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MlValue::Int(v) => write!(f, "{}", super::print::int_literal(*v)),
            MlValue::Bool(b) => write!(f, "{b}"),
            MlValue::Tuple(items) => {
                f.write_str("(")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
            MlValue::Con(c, None) => f.write_str(c),
            MlValue::Con(c, Some(arg)) => write!(f, "{c} ({arg})"),
            MlValue::Closure(name) => write!(f, "<fn {name}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedCall {
    pub argument: MlValue,
    pub result: MlValue,
}

#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub fuel: u64,
    /// Record every call of the named function with its argument and result.
    pub trace: Option<String>,
}

impl EvalConfig {
    pub fn with_fuel(fuel: u64) -> Self {
        EvalConfig { fuel, trace: None }
    }
}

#[derive(Debug, Clone)]
pub struct MlRun {
    pub outcome: RunOutcome,
    /// Value of the main expression on clean completion.
    pub value: Option<MlValue>,
    pub trace: Vec<TracedCall>,
}

pub fn eval_ml(program: &MlProgram, fuel: u64) -> RunOutcome {
    eval_ml_with(program, &EvalConfig::with_fuel(fuel)).outcome
}

pub fn eval_ml_with(program: &MlProgram, config: &EvalConfig) -> MlRun {
    let mut ev = Evaluator {
        globals: HashMap::new(),
        output: Vec::new(),
        fuel: config.fuel,
        trace_name: config.trace.as_deref(),
        trace: Vec::new(),
    };
    let result = ev.run(program);
    let (termination, value) = match result {
        Ok(v) => (Termination::Completed, v.map(|v| snapshot(&v))),
        Err(Stop::Fault(f)) => (Termination::Fault(f), None),
        Err(Stop::Fuel) => (Termination::FuelExhausted, None),
    };
    MlRun { outcome: RunOutcome { output: ev.output, termination }, value, trace: ev.trace }
}

#[derive(Clone)]
enum Value<'a> {
    Int(i64),
    Bool(bool),
    Tuple(Rc<[Value<'a>]>),
    Con(&'a str, Option<Rc<Value<'a>>>),
    Closure(Rc<Closure<'a>>),
}

struct Closure<'a> {
    bind: &'a FunBind,
    env: Env<'a>,
    /// The local recursive group this function belongs to; top-level
    /// functions reach each other through the global table instead.
    group: Option<&'a [FunBind]>,
}

type Env<'a> = Option<Rc<EnvNode<'a>>>;

struct EnvNode<'a> {
    name: &'a str,
    value: Value<'a>,
    next: Env<'a>,
}

fn extend<'a>(env: Env<'a>, name: &'a str, value: Value<'a>) -> Env<'a> {
    Some(Rc::new(EnvNode { name, value, next: env }))
}

fn snapshot(v: &Value<'_>) -> MlValue {
    match v {
        Value::Int(n) => MlValue::Int(*n),
        Value::Bool(b) => MlValue::Bool(*b),
        Value::Tuple(items) => MlValue::Tuple(items.iter().map(snapshot).collect()),
        Value::Con(c, arg) => MlValue::Con(c.to_string(), arg.as_ref().map(|a| Box::new(snapshot(a)))),
        Value::Closure(c) => MlValue::Closure(c.bind.name.clone()),
    }
}

enum Stop {
    Fault(Fault),
    Fuel,
}

type Step<T> = Result<T, Stop>;

fn fault<T>(kind: FaultKind, detail: impl Into<String>) -> Step<T> {
    Err(Stop::Fault(Fault::new(kind, None, detail)))
}

struct Evaluator<'a> {
    globals: HashMap<&'a str, Value<'a>>,
    output: Vec<i64>,
    fuel: u64,
    trace_name: Option<&'a str>,
    trace: Vec<TracedCall>,
}

impl<'a> Evaluator<'a> {
    fn run(&mut self, program: &'a MlProgram) -> Step<Option<Value<'a>>> {
        for d in &program.decls {
            match d {
                MlDecl::Fun(group) => {
                    for b in group {
                        let clo = Closure { bind: b, env: None, group: None };
                        self.globals.insert(&b.name, Value::Closure(Rc::new(clo)));
                    }
                }
                MlDecl::Val(p, e) => {
                    let v = self.eval(e, None)?;
                    let mut bound = Vec::new();
                    if !collect_bindings(p, &v, &mut bound)? {
                        return fault(FaultKind::MatchFailure, "top-level val binding");
                    }
                    for (name, value) in bound {
                        self.globals.insert(name, value);
                    }
                }
            }
        }
        match &program.main {
            Some(main) => self.eval(main, None).map(Some),
            None => Ok(None),
        }
    }

    fn tick(&mut self) -> Step<()> {
        if self.fuel == 0 {
            return Err(Stop::Fuel);
        }
        self.fuel -= 1;
        Ok(())
    }

    fn lookup(&self, name: &str, env: &Env<'a>) -> Step<Value<'a>> {
        let mut cur = env;
        while let Some(node) = cur {
            if node.name == name {
                return Ok(node.value.clone());
            }
            cur = &node.next;
        }
        match self.globals.get(name) {
            Some(v) => Ok(v.clone()),
            None => fault(FaultKind::TypeConfusion, format!("unbound identifier {name}")),
        }
    }

    /// Binds the parameter of `clo` to `arg`, returning the body to run and
    /// its environment.
    fn enter(&self, clo: &Closure<'a>, arg: &Value<'a>) -> Step<(&'a MlExpr, Env<'a>)> {
        let mut env = clo.env.clone();
        if let Some(group) = clo.group {
            for b in group {
                let sibling = Closure { bind: b, env: clo.env.clone(), group: Some(group) };
                env = extend(env, &b.name, Value::Closure(Rc::new(sibling)));
            }
        }
        match bind(&clo.bind.param, arg, env)? {
            Some(env) => Ok((&clo.bind.body, env)),
            None => fault(FaultKind::MatchFailure, format!("argument of {}", clo.bind.name)),
        }
    }

    fn eval(&mut self, mut e: &'a MlExpr, mut env: Env<'a>) -> Step<Value<'a>> {
        'tail: loop {
            self.tick()?;
            match e {
                MlExpr::Int(n) => return Ok(Value::Int(*n)),
                MlExpr::Bool(b) => return Ok(Value::Bool(*b)),
                MlExpr::Var(x) => return self.lookup(x, &env),
                MlExpr::Tuple(items) => {
                    let mut vs = Vec::with_capacity(items.len());
                    for item in items {
                        vs.push(self.eval(item, env.clone())?);
                    }
                    return Ok(Value::Tuple(vs.into()));
                }
                MlExpr::Con(c, arg) => {
                    let arg = match arg {
                        Some(a) => Some(Rc::new(self.eval(a, env.clone())?)),
                        None => None,
                    };
                    return Ok(Value::Con(c, arg));
                }
                MlExpr::If(c, t, f) => match self.eval(c, env.clone())? {
                    Value::Bool(true) => e = t,
                    Value::Bool(false) => e = f,
                    _ => return fault(FaultKind::TypeConfusion, "if condition is not a boolean"),
                },
                MlExpr::Case(scrutinee, arms) => {
                    let v = self.eval(scrutinee, env.clone())?;
                    for (p, body) in arms {
                        if let Some(inner) = bind(p, &v, env.clone())? {
                            env = inner;
                            e = body;
                            continue 'tail;
                        }
                    }
                    return fault(FaultKind::MatchFailure, "no case arm matched");
                }
                MlExpr::Let(p, bound, body) => {
                    let v = self.eval(bound, env.clone())?;
                    match bind(p, &v, env)? {
                        Some(inner) => env = inner,
                        None => return fault(FaultKind::MatchFailure, "let pattern did not match"),
                    }
                    e = body;
                }
                MlExpr::LetFun(group, body) => {
                    let base = env.clone();
                    for b in group {
                        let clo = Closure { bind: b, env: base.clone(), group: Some(group) };
                        env = extend(env, &b.name, Value::Closure(Rc::new(clo)));
                    }
                    e = body;
                }
                MlExpr::App(f, arg) => {
                    let fv = self.eval(f, env.clone())?;
                    let av = self.eval(arg, env.clone())?;
                    let Value::Closure(clo) = fv else {
                        return fault(FaultKind::TypeConfusion, "application of a non-function");
                    };
                    let (body, inner) = self.enter(&clo, &av)?;
                    if self.trace_name == Some(clo.bind.name.as_str()) {
                        let result = self.eval(body, inner)?;
                        self.trace.push(TracedCall { argument: snapshot(&av), result: snapshot(&result) });
                        return Ok(result);
                    }
                    e = body;
                    env = inner;
                }
                MlExpr::Prim(op, a, b) => {
                    let a = self.eval(a, env.clone())?;
                    let b = self.eval(b, env)?;
                    return prim(*op, a, b);
                }
                MlExpr::PrintInt(a) => match self.eval(a, env)? {
                    Value::Int(n) => {
                        self.output.push(n);
                        return Ok(Value::Tuple(Rc::new([])));
                    }
                    _ => return fault(FaultKind::TypeConfusion, "print_int of a non-integer"),
                },
            }
        }
    }
}

fn prim<'a>(op: PrimOp, a: Value<'a>, b: Value<'a>) -> Step<Value<'a>> {
    let int_op = match op {
        PrimOp::Add => IntOp::Add,
        PrimOp::Sub => IntOp::Sub,
        PrimOp::Mul => IntOp::Mul,
        PrimOp::Less => {
            return match (a, b) {
                (Value::Int(x), Value::Int(y)) => Ok(Value::Bool(x < y)),
                _ => fault(FaultKind::TypeConfusion, "< on non-integers"),
            }
        }
        PrimOp::Eq => {
            return match (a, b) {
                (Value::Int(x), Value::Int(y)) => Ok(Value::Bool(x == y)),
                (Value::Bool(x), Value::Bool(y)) => Ok(Value::Bool(x == y)),
                _ => fault(FaultKind::TypeConfusion, "= on non-equality values"),
            }
        }
    };
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => match checked_int(int_op, x, y) {
            Some(v) => Ok(Value::Int(v)),
            None => fault(FaultKind::IntegerOverflow, format!("{x} {} {y}", op.symbol())),
        },
        _ => fault(FaultKind::TypeConfusion, format!("{} on non-integers", op.symbol())),
    }
}

fn bind<'a>(p: &'a MlPat, v: &Value<'a>, env: Env<'a>) -> Step<Option<Env<'a>>> {
    let mut bound = Vec::new();
    if !collect_bindings(p, v, &mut bound)? {
        return Ok(None);
    }
    Ok(Some(bound.into_iter().fold(env, |env, (name, value)| extend(env, name, value))))
}

/// Matches `v` against `p`, pushing variable bindings in pattern order.
fn collect_bindings<'a>(p: &'a MlPat, v: &Value<'a>, out: &mut Vec<(&'a str, Value<'a>)>) -> Step<bool> {
    match (p, v) {
        (MlPat::Wild, _) => Ok(true),
        (MlPat::Var(x), _) => {
            out.push((x, v.clone()));
            Ok(true)
        }
        (MlPat::Int(n), Value::Int(m)) => Ok(n == m),
        (MlPat::Bool(a), Value::Bool(b)) => Ok(a == b),
        (MlPat::Tuple(ps), Value::Tuple(vs)) if ps.len() == vs.len() => {
            for (p, v) in ps.iter().zip(vs.iter()) {
                if !collect_bindings(p, v, out)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (MlPat::Con(c, parg), Value::Con(d, varg)) => {
            if c != d {
                return Ok(false);
            }
            match (parg, varg) {
                (None, None) => Ok(true),
                (Some(p), Some(v)) => collect_bindings(p, v, out),
                _ => fault(FaultKind::TypeConfusion, format!("constructor {c} used at two arities")),
            }
        }
        _ => fault(FaultKind::TypeConfusion, format!("pattern {} against an incompatible value", p.kind())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn print(e: MlExpr) -> MlExpr {
        MlExpr::PrintInt(Box::new(e))
    }

    fn seq(first: MlExpr, then: MlExpr) -> MlExpr {
        MlExpr::let_(MlPat::Wild, first, then)
    }

    fn program(main: MlExpr) -> MlProgram {
        MlProgram { main: Some(main), ..Default::default() }
    }

    #[test]
    fn prints_in_order() {
        let p = program(seq(print(MlExpr::Int(1)), print(MlExpr::Int(2))));
        let out = eval_ml(&p, 1000);
        assert_eq!(out, RunOutcome { output: vec![1, 2], termination: Termination::Completed });
    }

    #[test]
    fn non_exhaustive_case() {
        let p = program(MlExpr::case(
            MlExpr::con("NONE", None),
            vec![(MlPat::con("SOME", Some(MlPat::var("x"))), MlExpr::var("x"))],
        ));
        let out = eval_ml(&p, 1000);
        assert_eq!(out.fault().map(|f| f.kind), Some(FaultKind::MatchFailure));
    }

    #[test]
    fn overflow_is_a_fault() {
        let p = program(print(MlExpr::prim(PrimOp::Mul, MlExpr::Int(1 << 40), MlExpr::Int(1 << 40))));
        assert_eq!(eval_ml(&p, 1000).fault().map(|f| f.kind), Some(FaultKind::IntegerOverflow));
    }

    /// `fun count n = if n < 1 then 0 else count (n - 1)` called on a large
    /// argument runs in bounded native stack.
    #[test]
    fn tail_calls_do_not_grow_the_stack() {
        let body = MlExpr::if_(
            MlExpr::prim(PrimOp::Less, MlExpr::var("n"), MlExpr::Int(1)),
            MlExpr::Int(0),
            MlExpr::app(MlExpr::var("count"), MlExpr::prim(PrimOp::Sub, MlExpr::var("n"), MlExpr::Int(1))),
        );
        let group = vec![FunBind { name: "count".into(), param: MlPat::var("n"), body }];
        let p = program(MlExpr::LetFun(group, Box::new(print(MlExpr::app(MlExpr::var("count"), MlExpr::Int(1_000_000))))));
        assert_eq!(eval_ml(&p, u64::MAX).output, vec![0]);
    }

    #[test]
    fn closures_are_lexically_scoped() {
        // let val x = 1 fun f u = x val x = 2 in print (f ()) end  ==> 1
        let group = vec![FunBind { name: "f".into(), param: MlPat::Wild, body: MlExpr::var("x") }];
        let e = MlExpr::let_(
            MlPat::var("x"),
            MlExpr::Int(1),
            MlExpr::LetFun(
                group,
                Box::new(MlExpr::let_(
                    MlPat::var("x"),
                    MlExpr::Int(2),
                    seq(print(MlExpr::app(MlExpr::var("f"), MlExpr::unit())), print(MlExpr::var("x"))),
                )),
            ),
        );
        assert_eq!(eval_ml(&program(e), 1000).output, vec![1, 2]);
    }

    #[test]
    fn mutual_recursion_in_local_group() {
        // fun even n = if n = 0 then true else odd (n - 1) and odd n = if n = 0 then false else even (n - 1)
        let mk = |name: &str, base: bool, other: &str| FunBind {
            name: name.into(),
            param: MlPat::var("n"),
            body: MlExpr::if_(
                MlExpr::prim(PrimOp::Eq, MlExpr::var("n"), MlExpr::Int(0)),
                MlExpr::Bool(base),
                MlExpr::app(MlExpr::var(other), MlExpr::prim(PrimOp::Sub, MlExpr::var("n"), MlExpr::Int(1))),
            ),
        };
        let group = vec![mk("even", true, "odd"), mk("odd", false, "even")];
        let e = MlExpr::LetFun(
            group,
            Box::new(MlExpr::if_(MlExpr::app(MlExpr::var("even"), MlExpr::Int(7)), print(MlExpr::Int(1)), print(MlExpr::Int(0)))),
        );
        assert_eq!(eval_ml(&program(e), 10_000).output, vec![0]);
    }

    #[test]
    fn fuel_exhaustion_keeps_output() {
        let group = vec![FunBind {
            name: "spin".into(),
            param: MlPat::Wild,
            body: MlExpr::app(MlExpr::var("spin"), MlExpr::unit()),
        }];
        let e = seq(print(MlExpr::Int(9)), MlExpr::LetFun(group, Box::new(MlExpr::app(MlExpr::var("spin"), MlExpr::unit()))));
        let out = eval_ml(&program(e), 500);
        assert_eq!(out, RunOutcome { output: vec![9], termination: Termination::FuelExhausted });
    }

    #[test]
    fn tracing_records_calls() {
        let group = vec![FunBind {
            name: "double".into(),
            param: MlPat::var("n"),
            body: MlExpr::prim(PrimOp::Add, MlExpr::var("n"), MlExpr::var("n")),
        }];
        let e = MlExpr::LetFun(group, Box::new(print(MlExpr::app(MlExpr::var("double"), MlExpr::Int(21)))));
        let run = eval_ml_with(&program(e), &EvalConfig { fuel: 1000, trace: Some("double".into()) });
        assert_eq!(run.outcome.output, vec![42]);
        assert_eq!(run.trace, vec![TracedCall { argument: MlValue::Int(21), result: MlValue::Int(42) }]);
        assert_eq!(run.value, Some(MlValue::Tuple(vec![])));
    }
}
