//! Statement and expression translation into let-bound, store-passing ML.
//!
//! Every compound subexpression becomes a `val` binding in evaluation
//! order. The heap state is a variable `st_<n>` rebound whenever a binding
//! may allocate or write. A local variable `x` is rebound as `mj_x_<n>` on
//! every assignment; `if` and `while` join through a tuple of the state and
//! every local of the method in declaration order.

use std::collections::HashMap;

use super::encoding::{self, constructor_function, Layout, Slot};
use super::TranslateError;
use crate::frontend::ast::*;
use crate::ml::{FunBind, MlExpr, MlPat, PrimOp};
use crate::sema::{Checker, ClassTable, VarRef};

pub const SELF: &str = "self";

pub enum Binding {
    Val(MlPat, MlExpr),
    Fun(Vec<FunBind>),
}

/// Nests `bindings` as lets around `body`.
pub fn wrap(bindings: Vec<Binding>, body: MlExpr) -> MlExpr {
    bindings.into_iter().rev().fold(body, |acc, b| match b {
        Binding::Val(p, e) => MlExpr::let_(p, e, acc),
        Binding::Fun(group) => MlExpr::LetFun(group, Box::new(acc)),
    })
}

pub fn local_name(var: &str, version: usize) -> String {
    format!("mj_{var}_{version}")
}

type Result<T> = std::result::Result<T, TranslateError>;

pub struct BodyCtx<'a> {
    layout: Layout<'a>,
    checker: Checker<'a>,
    /// Formals then locals, in declaration order.
    vars: Vec<&'a str>,
    current: HashMap<&'a str, usize>,
    next_version: HashMap<&'a str, usize>,
    state: String,
    next_state: usize,
    next_tmp: usize,
    next_loop: usize,
    bindings: Vec<Binding>,
}

impl<'a> BodyCtx<'a> {
    pub fn new(table: &'a ClassTable, checker: Checker<'a>, vars: Vec<&'a str>) -> Self {
        let mut ctx = BodyCtx {
            layout: Layout::new(table),
            checker,
            vars,
            current: HashMap::new(),
            next_version: HashMap::new(),
            state: String::new(),
            next_state: 0,
            next_tmp: 0,
            next_loop: 0,
            bindings: Vec::new(),
        };
        ctx.state = ctx.fresh_state();
        for v in ctx.vars.clone() {
            ctx.fresh_version(v);
        }
        ctx
    }

    pub fn state(&self) -> &str {
        &self.state
    }

    pub fn var_name(&self, var: &str) -> String {
        local_name(var, self.current[var])
    }

    fn fresh_state(&mut self) -> String {
        let name = format!("st_{}", self.next_state);
        self.next_state += 1;
        name
    }

    fn fresh_tmp(&mut self) -> String {
        let name = format!("t_{}", self.next_tmp);
        self.next_tmp += 1;
        name
    }

    /// Starts a new version of `var` and returns its ML name.
    fn fresh_version(&mut self, var: &'a str) -> String {
        let n = self.next_version.entry(var).or_insert(0);
        let version = *n;
        *n += 1;
        self.current.insert(var, version);
        local_name(var, version)
    }

    fn push(&mut self, p: MlPat, e: MlExpr) {
        self.bindings.push(Binding::Val(p, e));
    }

    pub fn take_bindings(&mut self) -> Vec<Binding> {
        std::mem::take(&mut self.bindings)
    }

    pub fn push_binding(&mut self, b: Binding) {
        self.bindings.push(b);
    }

    /// Binds `e` to a fresh temporary and returns it.
    fn bind_tmp(&mut self, e: MlExpr) -> MlExpr {
        let t = self.fresh_tmp();
        self.push(MlPat::var(&t), e);
        MlExpr::var(t)
    }

    /// Binds the `(state, value)` result of `e`, advancing the state.
    fn bind_stateful(&mut self, e: MlExpr) -> MlExpr {
        let st = self.fresh_state();
        let t = self.fresh_tmp();
        self.push(MlPat::Tuple(vec![MlPat::var(&st), MlPat::var(&t)]), e);
        self.state = st;
        MlExpr::var(t)
    }

    /// Binds a new state produced by `e`.
    fn bind_state(&mut self, e: MlExpr) {
        let st = self.fresh_state();
        self.push(MlPat::var(&st), e);
        self.state = st;
    }

    fn state_expr(&self) -> MlExpr {
        MlExpr::var(&self.state)
    }

    fn join_tuple(&self) -> MlExpr {
        let mut items = vec![self.state_expr()];
        items.extend(self.vars.iter().map(|v| MlExpr::var(self.var_name(v))));
        MlExpr::tuple(items)
    }

    /// Fresh names for the state and every local, as a pattern.
    fn fresh_join_pattern(&mut self) -> MlPat {
        let st = self.fresh_state();
        self.state = st.clone();
        let mut items = vec![MlPat::var(st)];
        for v in self.vars.clone() {
            items.push(MlPat::var(self.fresh_version(v)));
        }
        MlPat::tuple(items)
    }

    fn snapshot(&self) -> (String, HashMap<&'a str, usize>) {
        (self.state.clone(), self.current.clone())
    }

    fn restore(&mut self, snap: &(String, HashMap<&'a str, usize>)) {
        self.state = snap.0.clone();
        self.current = snap.1.clone();
    }

    fn resolve(&self, name: &str) -> Result<VarRef<'a>> {
        self.checker
            .resolve(name)
            .ok_or_else(|| TranslateError::Internal(format!("unresolved identifier {name}")))
    }

    fn read_field(&mut self, owner: &str, field: &str) -> MlExpr {
        let pat = self.layout.select_pattern(owner, &Slot::Field(field.to_string()), "fld");
        let read = MlExpr::call("heap_read", vec![self.state_expr(), MlExpr::var(SELF)]);
        self.bind_tmp(MlExpr::case(read, vec![(pat, MlExpr::var("fld"))]))
    }

    fn load(&mut self, name: &str) -> Result<MlExpr> {
        Ok(match self.resolve(name)? {
            VarRef::Local(_) => MlExpr::var(self.var_name(name)),
            VarRef::Field(owner, _) => self.read_field(owner, name),
        })
    }

    pub fn stmts(&mut self, stmts: &'a [Stmt]) -> Result<()> {
        stmts.iter().try_for_each(|s| self.stmt(s))
    }

    pub fn stmt(&mut self, s: &'a Stmt) -> Result<()> {
        match &s.kind {
            StmtKind::Block(body) => self.stmts(body),
            StmtKind::Println(e) => {
                let a = self.expr(e)?;
                self.push(MlPat::Wild, MlExpr::PrintInt(Box::new(a)));
                Ok(())
            }
            StmtKind::Assign(x, e) => {
                let a = self.expr(e)?;
                match self.resolve(x)? {
                    VarRef::Local(_) => {
                        let var = self.vars.iter().copied().find(|v| v == x).expect("resolved local");
                        let name = self.fresh_version(var);
                        self.push(MlPat::var(name), a);
                    }
                    VarRef::Field(owner, _) => {
                        let slot = Slot::Field(x.clone());
                        let (pat, rebuilt) = self.layout.rebuild(owner, &slot, a);
                        let read = MlExpr::call("heap_read", vec![self.state_expr(), MlExpr::var(SELF)]);
                        let write = MlExpr::call(
                            "heap_write",
                            vec![self.state_expr(), MlExpr::var(SELF), MlExpr::case(read, vec![(pat, rebuilt)])],
                        );
                        self.bind_state(write);
                    }
                }
                Ok(())
            }
            StmtKind::ArrayAssign(x, i, v) => {
                let arr = self.load(x)?;
                let index = self.expr(i)?;
                let value = self.expr(v)?;
                self.bind_state(MlExpr::call("array_set", vec![self.state_expr(), arr, index, value]));
                Ok(())
            }
            StmtKind::If(c, t, e) => {
                let cond = self.expr(c)?;
                let before = self.snapshot();
                let outer = self.take_bindings();
                self.stmt(t)?;
                let then_branch = wrap(self.take_bindings(), self.join_tuple());
                self.restore(&before);
                self.stmt(e)?;
                let else_branch = wrap(self.take_bindings(), self.join_tuple());
                self.restore(&before);
                self.bindings = outer;
                let pat = self.fresh_join_pattern();
                self.push(pat, MlExpr::if_(cond, then_branch, else_branch));
                Ok(())
            }
            StmtKind::While(c, body) => {
                let entry = self.join_tuple();
                let loop_name = format!("loop_{}", self.next_loop);
                self.next_loop += 1;
                let outer = self.take_bindings();
                let param = self.fresh_join_pattern();
                let cond = self.expr(c)?;
                let exit = self.join_tuple();
                let cond_bindings = self.take_bindings();
                self.stmt(body)?;
                let again = wrap(self.take_bindings(), MlExpr::app(MlExpr::var(&loop_name), self.join_tuple()));
                let fun_body = wrap(cond_bindings, MlExpr::if_(cond, again, exit));
                self.bindings = outer;
                self.push_binding(Binding::Fun(vec![FunBind { name: loop_name.clone(), param, body: fun_body }]));
                let pat = self.fresh_join_pattern();
                self.push(pat, MlExpr::app(MlExpr::var(loop_name), entry));
                Ok(())
            }
        }
    }

    /// Translates `e`, returning a variable or literal holding its value.
    pub fn expr(&mut self, e: &'a Expr) -> Result<MlExpr> {
        Ok(match &e.kind {
            ExprKind::IntLit(v) => MlExpr::Int(*v),
            ExprKind::True => MlExpr::Bool(true),
            ExprKind::False => MlExpr::Bool(false),
            ExprKind::Paren(inner) => return self.expr(inner),
            ExprKind::This => MlExpr::var(SELF),
            ExprKind::Ident(x) => self.load(x)?,
            ExprKind::Binary(BinOp::And, l, r) => {
                let a = self.expr(l)?;
                let state_before = self.state.clone();
                let outer = self.take_bindings();
                let b = self.expr(r)?;
                let rhs = self.take_bindings();
                self.bindings = outer;
                if self.state == state_before {
                    self.bind_tmp(MlExpr::if_(a, wrap(rhs, b), MlExpr::Bool(false)))
                } else {
                    let rhs_state = self.state_expr();
                    let then_branch = wrap(rhs, MlExpr::Tuple(vec![rhs_state, b]));
                    let else_branch = MlExpr::Tuple(vec![MlExpr::var(&state_before), MlExpr::Bool(false)]);
                    self.bind_stateful(MlExpr::if_(a, then_branch, else_branch))
                }
            }
            ExprKind::Binary(op, l, r) => {
                let a = self.expr(l)?;
                let b = self.expr(r)?;
                let prim = match op {
                    BinOp::Less => PrimOp::Less,
                    BinOp::Plus => PrimOp::Add,
                    BinOp::Minus => PrimOp::Sub,
                    BinOp::Times => PrimOp::Mul,
                    BinOp::And => unreachable!("handled above"),
                };
                self.bind_tmp(MlExpr::prim(prim, a, b))
            }
            ExprKind::Not(inner) => {
                let a = self.expr(inner)?;
                self.bind_tmp(MlExpr::if_(a, MlExpr::Bool(false), MlExpr::Bool(true)))
            }
            ExprKind::ArrayIndex(arr, i) => {
                let a = self.expr(arr)?;
                let index = self.expr(i)?;
                self.bind_tmp(MlExpr::call("array_get", vec![self.state_expr(), a, index]))
            }
            ExprKind::ArrayLength(arr) => {
                let a = self.expr(arr)?;
                self.bind_tmp(MlExpr::call("array_length", vec![self.state_expr(), a]))
            }
            ExprKind::NewIntArray(len) => {
                let n = self.expr(len)?;
                self.bind_stateful(MlExpr::call("array_new", vec![self.state_expr(), n]))
            }
            ExprKind::NewObject(class) => {
                self.bind_stateful(MlExpr::app(MlExpr::var(constructor_function(class)), self.state_expr()))
            }
            ExprKind::MethodCall(recv, name, args) => {
                let class = match self.checker.expr(recv) {
                    Some(MjType::ClassRef(c)) => c,
                    other => {
                        return Err(TranslateError::Internal(format!("receiver of {name} has type {other:?}")))
                    }
                };
                let r = self.expr(recv)?;
                let mut values = Vec::with_capacity(args.len());
                for a in args {
                    values.push(self.expr(a)?);
                }
                let slot = Slot::Method(name.clone());
                let owner = self
                    .layout
                    .owner_of(&class, &slot)
                    .ok_or_else(|| TranslateError::Internal(format!("no method {name} in {class}")))?;
                let pat = self.layout.select_pattern(&owner, &slot, "m");
                let read = MlExpr::call("heap_read", vec![self.state_expr(), r.clone()]);
                let method = self.bind_tmp(MlExpr::case(read, vec![(pat, MlExpr::var("m"))]));
                let mut call_args = vec![self.state_expr(), r];
                call_args.extend(values);
                self.bind_stateful(MlExpr::app(method, MlExpr::Tuple(call_args)))
            }
        })
    }
}

/// Default-initializing bindings for a method's locals.
pub fn local_defaults<'a>(ctx: &BodyCtx<'a>, locals: &'a [VarDecl]) -> Vec<Binding> {
    locals
        .iter()
        .map(|l| Binding::Val(MlPat::var(ctx.var_name(&l.name)), encoding::default_value(&l.ty)))
        .collect()
}
