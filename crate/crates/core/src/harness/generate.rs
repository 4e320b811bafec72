//! Type-directed random MiniJava programs.
//!
//! Generated programs always terminate and never fault:
//!
//! * every `new C()` is immediately followed by a call to `C.init()`, which
//!   allocates every array and object field (object fields only name classes
//!   generated earlier, so initialization bottoms out);
//! * arrays have at least four elements and are indexed by literals below 4;
//! * integer assignments are clamped to `[-10000, 10000]` and expressions
//!   nest at most two operators deep, so nothing overflows;
//! * method `m<r>` only calls methods of lower rank, and loops count a
//!   dedicated local down from at most 3.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frontend::ast::*;

const CLAMP: i64 = 10_000;
const ARRAY_MIN: i64 = 4;
const INIT: &str = "init";
const DRIVER: &str = "Run";
const DRIVER_METHOD: &str = "go";
const MAX_LOOP_DEPTH: usize = 2;

#[derive(Clone)]
struct Sig {
    params: Vec<MjType>,
    ret: MjType,
}

struct ClassPlan {
    name: String,
    superclass: Option<usize>,
    fields: Vec<(String, MjType)>,
    /// Ranks of methods declared (introduced or overridden) here.
    methods: Vec<usize>,
}

struct Gen {
    rng: ChaCha8Rng,
    sigs: Vec<Sig>,
    classes: Vec<ClassPlan>,
}

/// Variables in scope while generating one method body.
#[derive(Default, Clone)]
struct Scope {
    ints: Vec<String>,
    bools: Vec<String>,
    arrays: Vec<String>,
    /// Reference variables with their static class index.
    refs: Vec<(String, usize)>,
    /// Highest method rank callable from here (exclusive).
    rank_limit: usize,
    /// Class index of `this`, when inside a generated class.
    this_class: Option<usize>,
    loop_depth: usize,
}

fn id(name: &str) -> Expr {
    Expr::synth(ExprKind::Ident(name.to_string()))
}

fn lit(v: i64) -> Expr {
    Expr::synth(ExprKind::IntLit(v))
}

fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
    Expr::synth(ExprKind::Binary(op, Box::new(l), Box::new(r)))
}

fn assign(x: &str, e: Expr) -> Stmt {
    Stmt::synth(StmtKind::Assign(x.to_string(), e))
}

fn block(stmts: Vec<Stmt>) -> Stmt {
    Stmt::synth(StmtKind::Block(stmts))
}

fn call(recv: Expr, method: &str, args: Vec<Expr>) -> Expr {
    Expr::synth(ExprKind::MethodCall(Box::new(recv), method.to_string(), args))
}

fn new_object(class: &str) -> Expr {
    Expr::synth(ExprKind::NewObject(class.to_string()))
}

fn method_name(rank: usize) -> String {
    format!("m{rank}")
}

fn var(name: &str, ty: MjType) -> VarDecl {
    VarDecl { name: name.to_string(), ty, span: Span::default() }
}

/// `if (10000 < x) x = 10000; else if (x < 0 - 10000) x = 0 - 10000; else {}`
fn clamp(x: &str) -> Stmt {
    let low = bin(BinOp::Minus, lit(0), lit(CLAMP));
    let inner = Stmt::synth(StmtKind::If(
        bin(BinOp::Less, id(x), low.clone()),
        Box::new(block(vec![assign(x, low)])),
        Box::new(block(vec![])),
    ));
    Stmt::synth(StmtKind::If(
        bin(BinOp::Less, lit(CLAMP), id(x)),
        Box::new(block(vec![assign(x, lit(CLAMP))])),
        Box::new(block(vec![inner])),
    ))
}

impl Gen {
    fn class_type(&self, index: usize) -> MjType {
        MjType::ClassRef(self.classes[index].name.clone())
    }

    fn is_subclass(&self, mut sub: usize, sup: usize) -> bool {
        loop {
            if sub == sup {
                return true;
            }
            match self.classes[sub].superclass {
                Some(p) => sub = p,
                None => return false,
            }
        }
    }

    /// Fields of `class` including inherited ones, root first.
    fn all_fields(&self, class: usize) -> Vec<(String, MjType)> {
        let mut chain = vec![class];
        while let Some(p) = self.classes[*chain.last().unwrap()].superclass {
            chain.push(p);
        }
        chain.iter().rev().flat_map(|&c| self.classes[c].fields.clone()).collect()
    }

    /// Method ranks callable on a receiver of static class `class`.
    fn visible_methods(&self, class: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut c = Some(class);
        while let Some(i) = c {
            for &m in &self.classes[i].methods {
                if !out.contains(&m) {
                    out.push(m);
                }
            }
            c = self.classes[i].superclass;
        }
        out.sort_unstable();
        out
    }

    fn pick<'v, T>(&mut self, items: &'v [T]) -> Option<&'v T> {
        items.choose(&mut self.rng)
    }

    fn plan(&mut self) {
        let method_count = self.rng.gen_range(2..=4);
        for _ in 0..method_count {
            let params = (0..self.rng.gen_range(0..=2))
                .map(|_| if self.rng.gen_bool(0.7) { MjType::Int } else { MjType::Boolean })
                .collect();
            let ret = if self.rng.gen_bool(0.75) { MjType::Int } else { MjType::Boolean };
            self.sigs.push(Sig { params, ret });
        }
        let class_count = self.rng.gen_range(1..=4);
        for i in 0..class_count {
            let superclass = if i > 0 && self.rng.gen_bool(0.5) { Some(self.rng.gen_range(0..i)) } else { None };
            let mut fields = Vec::new();
            for j in 0..self.rng.gen_range(0..=3) {
                let ty = match self.rng.gen_range(0..5) {
                    0 | 1 => MjType::Int,
                    2 => MjType::Boolean,
                    3 => MjType::IntArray,
                    _ if i > 0 => MjType::ClassRef(format!("C{}", self.rng.gen_range(0..i))),
                    _ => MjType::Int,
                };
                fields.push((format!("f{i}_{j}"), ty));
            }
            let mut methods: Vec<usize> = (0..method_count).filter(|_| self.rng.gen_bool(0.5)).collect();
            if methods.is_empty() {
                methods.push(self.rng.gen_range(0..method_count));
            }
            self.classes.push(ClassPlan { name: format!("C{i}"), superclass, fields, methods });
        }
    }

    fn int_atom(&mut self, scope: &Scope) -> Expr {
        loop {
            match self.rng.gen_range(0..6) {
                0 | 1 => return lit(self.rng.gen_range(0..100)),
                2 | 3 => {
                    if let Some(x) = self.pick(&scope.ints).cloned() {
                        return id(&x);
                    }
                }
                4 => {
                    if let Some(a) = self.pick(&scope.arrays).cloned() {
                        let i = self.rng.gen_range(0..ARRAY_MIN);
                        return Expr::synth(ExprKind::ArrayIndex(Box::new(id(&a)), Box::new(lit(i))));
                    }
                }
                _ => {
                    if let Some(a) = self.pick(&scope.arrays).cloned() {
                        return Expr::synth(ExprKind::ArrayLength(Box::new(id(&a))));
                    }
                }
            }
        }
    }

    fn bool_atom(&mut self, scope: &Scope) -> Expr {
        match self.rng.gen_range(0..4) {
            0 => Expr::synth(ExprKind::True),
            1 => Expr::synth(ExprKind::False),
            _ => match self.pick(&scope.bools).cloned() {
                Some(b) => id(&b),
                None => Expr::synth(ExprKind::True),
            },
        }
    }

    fn int_expr(&mut self, scope: &Scope, depth: usize) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.35) {
            return self.int_atom(scope);
        }
        let op = *[BinOp::Plus, BinOp::Minus, BinOp::Times].choose(&mut self.rng).unwrap();
        let l = self.int_expr(scope, depth - 1);
        let r = self.int_expr(scope, depth - 1);
        bin(op, l, r)
    }

    fn bool_expr(&mut self, scope: &Scope, depth: usize) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.bool_atom(scope);
        }
        match self.rng.gen_range(0..3) {
            0 => {
                let l = self.int_expr(scope, 1);
                let r = self.int_expr(scope, 1);
                bin(BinOp::Less, l, r)
            }
            1 => Expr::synth(ExprKind::Not(Box::new(self.bool_expr(scope, depth - 1)))),
            _ => {
                let l = self.bool_expr(scope, depth - 1);
                let r = self.bool_expr(scope, depth - 1);
                bin(BinOp::And, l, r)
            }
        }
    }

    fn atom_of(&mut self, scope: &Scope, ty: &MjType) -> Expr {
        match ty {
            MjType::Boolean => self.bool_atom(scope),
            _ => self.int_atom(scope),
        }
    }

    fn new_array(&mut self) -> Expr {
        let extra = self.rng.gen_range(0..4);
        Expr::synth(ExprKind::NewIntArray(Box::new(lit(ARRAY_MIN + extra))))
    }

    /// `x = new C(); sink = x.init();` for some class assignable to `target`
    /// with index below `below`.
    fn allocate(&mut self, x: &str, target: usize, below: usize, sink: &str) -> Vec<Stmt> {
        let candidates: Vec<usize> = (0..below).filter(|&c| self.is_subclass(c, target)).collect();
        let class = *self.pick(&candidates).unwrap_or(&target);
        let name = self.classes[class].name.clone();
        vec![assign(x, new_object(&name)), assign(sink, call(id(x), INIT, vec![]))]
    }

    fn receivers(&self, scope: &Scope) -> Vec<(Expr, usize)> {
        let mut out: Vec<(Expr, usize)> = scope.refs.iter().map(|(r, c)| (id(r), *c)).collect();
        if let Some(c) = scope.this_class {
            out.push((Expr::synth(ExprKind::This), c));
        }
        out
    }

    fn call_stmt(&mut self, scope: &Scope) -> Option<Vec<Stmt>> {
        let mut options = Vec::new();
        for (recv, class) in self.receivers(scope) {
            for m in self.visible_methods(class) {
                if m < scope.rank_limit {
                    options.push((recv.clone(), m));
                }
            }
        }
        let (recv, m) = self.pick(&options)?.clone();
        let sig = self.sigs[m].clone();
        let target = match sig.ret {
            MjType::Boolean => self.pick(&scope.bools).cloned()?,
            _ => self.pick(&scope.ints).cloned()?,
        };
        let args = sig.params.iter().map(|t| self.atom_of(scope, t)).collect();
        let mut out = vec![assign(&target, call(recv, &method_name(m), args))];
        if sig.ret == MjType::Int {
            out.push(clamp(&target));
        }
        Some(out)
    }

    fn simple_stmt(&mut self, scope: &Scope, sink: &str) -> Vec<Stmt> {
        loop {
            match self.rng.gen_range(0..10) {
                0..=2 => {
                    if let Some(x) = self.pick(&scope.ints).cloned() {
                        let e = self.int_expr(scope, 2);
                        return vec![assign(&x, e), clamp(&x)];
                    }
                }
                3 => {
                    if let Some(b) = self.pick(&scope.bools).cloned() {
                        let e = self.bool_expr(scope, 2);
                        return vec![assign(&b, e)];
                    }
                }
                4 => {
                    if let Some(a) = self.pick(&scope.arrays).cloned() {
                        let i = lit(self.rng.gen_range(0..ARRAY_MIN));
                        let v = self.int_atom(scope);
                        return vec![Stmt::synth(StmtKind::ArrayAssign(a, i, v))];
                    }
                }
                5 => {
                    if let Some(a) = self.pick(&scope.arrays).cloned() {
                        let other = self.pick(&scope.arrays).cloned().unwrap();
                        let e = if self.rng.gen_bool(0.5) { self.new_array() } else { id(&other) };
                        return vec![assign(&a, e)];
                    }
                }
                6 => {
                    let e = self.int_expr(scope, 2);
                    return vec![Stmt::synth(StmtKind::Println(e))];
                }
                7 => {
                    if let Some((r, class)) = self.pick(&scope.refs).cloned() {
                        let same: Vec<String> = scope
                            .refs
                            .iter()
                            .filter(|(_, c)| self.is_subclass(*c, class))
                            .map(|(n, _)| n.clone())
                            .collect();
                        if self.rng.gen_bool(0.5) {
                            let other = self.pick(&same).cloned().unwrap();
                            return vec![assign(&r, id(&other))];
                        }
                        let n = self.classes.len();
                        return self.allocate(&r, class, n, sink);
                    }
                }
                _ => {
                    if let Some(s) = self.call_stmt(scope) {
                        return s;
                    }
                }
            }
        }
    }

    /// Statements consuming roughly `budget` units.
    fn stmts(&mut self, scope: &mut Scope, budget: &mut usize, counters: &[String], sink: &str) -> Vec<Stmt> {
        let mut out = Vec::new();
        while *budget > 0 {
            *budget -= 1;
            let roll = self.rng.gen_range(0..10);
            if roll == 0 && *budget >= 2 {
                let c = self.bool_expr(scope, 2);
                let mut inner = (*budget / 2).min(4);
                *budget -= inner;
                let t = self.stmts(scope, &mut inner.clone(), counters, sink);
                let e = self.stmts(scope, &mut inner, counters, sink);
                out.push(Stmt::synth(StmtKind::If(c, Box::new(block(t)), Box::new(block(e)))));
            } else if roll == 1 && *budget >= 2 && scope.loop_depth < MAX_LOOP_DEPTH {
                let k = counters[scope.loop_depth].clone();
                let mut inner = (*budget / 2).min(4);
                *budget -= inner;
                scope.loop_depth += 1;
                let mut body = self.stmts(scope, &mut inner, counters, sink);
                scope.loop_depth -= 1;
                body.push(assign(&k, bin(BinOp::Minus, id(&k), lit(1))));
                out.push(assign(&k, lit(self.rng.gen_range(1..=3))));
                out.push(Stmt::synth(StmtKind::While(bin(BinOp::Less, lit(0), id(&k)), Box::new(block(body)))));
            } else {
                out.extend(self.simple_stmt(scope, sink));
            }
        }
        out
    }

    /// Locals for a method body plus the statements initializing them.
    fn locals(&mut self, scope: &mut Scope, prefix: &str) -> (Vec<VarDecl>, Vec<Stmt>, Vec<String>, String) {
        let mut decls = Vec::new();
        let mut init = Vec::new();
        let counters: Vec<String> = (0..MAX_LOOP_DEPTH).map(|d| format!("{prefix}k{d}")).collect();
        for c in &counters {
            decls.push(var(c, MjType::Int));
        }
        let sink = format!("{prefix}d");
        decls.push(var(&sink, MjType::Int));
        for i in 0..self.rng.gen_range(1..=3) {
            let name = format!("{prefix}i{i}");
            decls.push(var(&name, MjType::Int));
            init.push(assign(&name, lit(self.rng.gen_range(0..50))));
            scope.ints.push(name);
        }
        for i in 0..self.rng.gen_range(0..=2) {
            let name = format!("{prefix}b{i}");
            decls.push(var(&name, MjType::Boolean));
            scope.bools.push(name);
        }
        if self.rng.gen_bool(0.5) {
            let name = format!("{prefix}a0");
            decls.push(var(&name, MjType::IntArray));
            init.push(assign(&name, self.new_array()));
            scope.arrays.push(name);
        }
        for i in 0..self.rng.gen_range(0..=2) {
            let class = self.rng.gen_range(0..self.classes.len());
            let name = format!("{prefix}r{i}");
            decls.push(var(&name, self.class_type(class)));
            let n = self.classes.len();
            init.extend(self.allocate(&name, class, n, &sink));
            scope.refs.push((name, class));
        }
        (decls, init, counters, sink)
    }

    fn method(&mut self, class: usize, rank: usize, budget: usize) -> MethodDecl {
        let sig = self.sigs[rank].clone();
        let mut scope = Scope { rank_limit: rank, this_class: Some(class), ..Default::default() };
        let formals: Vec<VarDecl> =
            sig.params.iter().enumerate().map(|(i, t)| var(&format!("p{i}"), t.clone())).collect();
        for f in &formals {
            match f.ty {
                MjType::Boolean => scope.bools.push(f.name.clone()),
                _ => scope.ints.push(f.name.clone()),
            }
        }
        self.add_fields(&mut scope, class);
        let (locals, mut body, counters, sink) = self.locals(&mut scope, "v");
        let mut budget = budget;
        body.extend(self.stmts(&mut scope, &mut budget, &counters, &sink));
        let return_expr = self.atom_of(&scope, &sig.ret);
        MethodDecl {
            name: method_name(rank),
            formals,
            locals,
            body,
            return_expr,
            return_type: sig.ret,
            span: Span::default(),
        }
    }

    fn add_fields(&self, scope: &mut Scope, class: usize) {
        for (name, ty) in self.all_fields(class) {
            match ty {
                MjType::Int => scope.ints.push(name),
                MjType::Boolean => scope.bools.push(name),
                MjType::IntArray => scope.arrays.push(name),
                MjType::ClassRef(c) => {
                    let index = self.classes.iter().position(|k| k.name == c).unwrap();
                    scope.refs.push((name, index));
                }
            }
        }
    }

    fn init_method(&mut self, class: usize) -> MethodDecl {
        let mut body = Vec::new();
        let sink = "d";
        for (name, ty) in self.all_fields(class) {
            match ty {
                MjType::Int => body.push(assign(&name, lit(self.rng.gen_range(0..50)))),
                MjType::Boolean => {
                    let b = if self.rng.gen_bool(0.5) { ExprKind::True } else { ExprKind::False };
                    body.push(assign(&name, Expr::synth(b)));
                }
                MjType::IntArray => {
                    let e = self.new_array();
                    body.push(assign(&name, e));
                }
                MjType::ClassRef(c) => {
                    let target = self.classes.iter().position(|k| k.name == c).unwrap();
                    let owner = self.field_owner(class, &name);
                    body.extend(self.allocate(&name, target, owner, sink));
                }
            }
        }
        MethodDecl {
            name: INIT.to_string(),
            formals: vec![],
            locals: vec![var(sink, MjType::Int)],
            body,
            return_expr: lit(0),
            return_type: MjType::Int,
            span: Span::default(),
        }
    }

    fn field_owner(&self, class: usize, field: &str) -> usize {
        let mut c = class;
        loop {
            if self.classes[c].fields.iter().any(|(f, _)| f == field) {
                return c;
            }
            c = self.classes[c].superclass.expect("field is declared on the chain");
        }
    }

    fn program(&mut self, size_budget: usize) -> Program {
        self.plan();
        let method_total: usize = self.classes.iter().map(|c| c.methods.len()).sum();
        let per_method = (size_budget / (method_total + 2)).max(1);
        let mut classes = Vec::new();
        for i in 0..self.classes.len() {
            let mut methods = vec![self.init_method(i)];
            for r in self.classes[i].methods.clone() {
                methods.push(self.method(i, r, per_method));
            }
            let plan = &self.classes[i];
            classes.push(ClassDecl {
                name: plan.name.clone(),
                superclass: plan.superclass.map(|p| self.classes[p].name.clone()),
                fields: plan.fields.iter().map(|(n, t)| var(n, t.clone())).collect(),
                methods,
                span: Span::default(),
            });
        }

        let mut scope = Scope { rank_limit: usize::MAX, ..Default::default() };
        let (locals, mut body, counters, sink) = self.locals(&mut scope, "");
        let mut budget = size_budget.saturating_sub(per_method * method_total).max(2);
        body.extend(self.stmts(&mut scope, &mut budget, &counters, &sink));
        for x in scope.ints.clone() {
            body.push(Stmt::synth(StmtKind::Println(id(&x))));
        }
        classes.push(ClassDecl {
            name: DRIVER.to_string(),
            superclass: None,
            fields: vec![],
            methods: vec![MethodDecl {
                name: DRIVER_METHOD.to_string(),
                formals: vec![],
                locals,
                body,
                return_expr: lit(0),
                return_type: MjType::Int,
                span: Span::default(),
            }],
            span: Span::default(),
        });

        let run = call(new_object(DRIVER), DRIVER_METHOD, vec![]);
        Program {
            main: MainClass {
                name: "Main".to_string(),
                arg_name: "args".to_string(),
                body: vec![Stmt::synth(StmtKind::Println(run))],
                span: Span::default(),
            },
            classes,
        }
    }
}

/// A random well-typed, terminating, fault-free program. `size_budget` is
/// the approximate number of generated statements, not counting clamps and
/// initialization.
pub fn generate_random_program(seed: u64, size_budget: usize) -> Program {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), sigs: Vec::new(), classes: Vec::new() };
    g.program(size_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::print_program;
    use crate::sema::analyze;

    #[test]
    fn deterministic_and_well_typed() {
        for seed in 0..20 {
            let p = generate_random_program(seed, 40);
            assert_eq!(print_program(&p), print_program(&generate_random_program(seed, 40)));
            if let Err(e) = analyze(&p) {
                panic!("seed {seed}: {:?}\n{}", e, print_program(&p));
            }
        }
    }
}
