use std::collections::{HashMap, HashSet};

use super::class_table::ClassTable;
use super::TypeError;
use crate::frontend::ast::*;

/// Type-checks a parsed program, collecting every violation.
pub fn typecheck(program: &Program, table: &ClassTable) -> Result<(), Vec<TypeError>> {
    let mut errors = Vec::new();
    check_declarations(program, table, &mut errors);

    let mut main_ck = Checker::for_main(table, &program.main.arg_name);
    for s in &program.main.body {
        main_ck.stmt(s);
    }
    errors.append(&mut main_ck.errors);

    for class in &program.classes {
        for method in &class.methods {
            let mut ck = Checker::for_method(table, &class.name, method);
            for s in &method.body {
                ck.stmt(s);
            }
            let actual = ck.expr(&method.return_expr);
            ck.expect_assignable(&method.return_expr, actual, &method.return_type);
            errors.append(&mut ck.errors);
        }
    }

    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn check_type_exists(table: &ClassTable, ty: &MjType, span: Span, errors: &mut Vec<TypeError>) {
    if let MjType::ClassRef(name) = ty {
        if !table.contains(name) {
            errors.push(TypeError::new(span.start, format!("unknown class {name}")));
        }
    }
}

fn check_declarations(program: &Program, table: &ClassTable, errors: &mut Vec<TypeError>) {
    for class in &program.classes {
        let mut field_names = HashSet::new();
        for f in &class.fields {
            check_type_exists(table, &f.ty, f.span, errors);
            if !field_names.insert(f.name.as_str()) {
                errors.push(TypeError::new(f.span.start, format!("duplicate field {} in class {}", f.name, class.name)));
            } else if let Some(sup) = &class.superclass {
                if let Some((owner, _)) = table.field(sup, &f.name) {
                    errors.push(TypeError::new(
                        f.span.start,
                        format!("field {} shadows the field declared in class {owner}", f.name),
                    ));
                }
            }
        }

        let mut method_names = HashSet::new();
        for m in &class.methods {
            if !method_names.insert(m.name.as_str()) {
                errors.push(TypeError::new(
                    m.span.start,
                    format!("duplicate method {} in class {} (overloading is not supported)", m.name, class.name),
                ));
                continue;
            }
            check_type_exists(table, &m.return_type, m.span, errors);
            let mut var_names = HashSet::new();
            for v in m.formals.iter().chain(&m.locals) {
                check_type_exists(table, &v.ty, v.span, errors);
                if !var_names.insert(v.name.as_str()) {
                    errors.push(TypeError::new(v.span.start, format!("duplicate variable {} in method {}", v.name, m.name)));
                }
            }
            if let Some(sup) = &class.superclass {
                if let Some((owner, sig)) = table.lookup_method(sup, &m.name) {
                    let params: Vec<_> = m.formals.iter().map(|f| f.ty.clone()).collect();
                    if params != sig.params || m.return_type != sig.ret {
                        errors.push(TypeError::new(
                            m.span.start,
                            format!("method {} overrides {owner}.{} with a different signature", m.name, m.name),
                        ));
                    }
                }
            }
        }
    }
}

/// Expression and statement typing within a single method (or main).
///
/// Also used by later passes to recover the static type of receivers.
pub struct Checker<'a> {
    table: &'a ClassTable,
    class: Option<&'a str>,
    vars: HashMap<&'a str, &'a MjType>,
    main_arg: Option<&'a str>,
    pub errors: Vec<TypeError>,
}

/// Where an unqualified identifier resolves.
#[derive(Debug, Clone, PartialEq)]
pub enum VarRef<'a> {
    Local(&'a MjType),
    /// A field, with the class that declares it.
    Field(&'a str, &'a MjType),
}

impl<'a> Checker<'a> {
    pub fn for_main(table: &'a ClassTable, arg_name: &'a str) -> Self {
        Checker { table, class: None, vars: HashMap::new(), main_arg: Some(arg_name), errors: Vec::new() }
    }

    pub fn for_method(table: &'a ClassTable, class: &'a str, method: &'a MethodDecl) -> Self {
        let mut vars = HashMap::new();
        for v in method.formals.iter().chain(&method.locals) {
            vars.entry(v.name.as_str()).or_insert(&v.ty);
        }
        Checker { table, class: Some(class), vars, main_arg: None, errors: Vec::new() }
    }

    pub fn resolve(&self, name: &str) -> Option<VarRef<'a>> {
        if let Some(t) = self.vars.get(name) {
            return Some(VarRef::Local(t));
        }
        let class = self.class?;
        self.table.field(class, name).map(|(owner, t)| VarRef::Field(owner, t))
    }

    fn error(&mut self, span: Span, message: impl Into<String>) {
        self.errors.push(TypeError::new(span.start, message));
    }

    fn mismatch(&mut self, span: Span, expected: &MjType, actual: &MjType) {
        self.errors.push(TypeError {
            pos: span.start,
            message: format!("type mismatch: expected {expected}, found {actual}"),
            types: Some((expected.clone(), actual.clone())),
        });
    }

    pub fn is_assignable(&self, actual: &MjType, expected: &MjType) -> bool {
        match (actual, expected) {
            (MjType::ClassRef(a), MjType::ClassRef(e)) => self.table.is_subclass(a, e),
            _ => actual == expected,
        }
    }

    fn expect_assignable(&mut self, e: &Expr, actual: Option<MjType>, expected: &MjType) {
        if let Some(actual) = actual {
            if !self.is_assignable(&actual, expected) {
                self.mismatch(e.span, expected, &actual);
            }
        }
    }

    fn expect(&mut self, e: &Expr, expected: &MjType) {
        let actual = self.expr(e);
        if let Some(actual) = actual {
            if &actual != expected {
                self.mismatch(e.span, expected, &actual);
            }
        }
    }

    fn var_type(&mut self, name: &str, span: Span) -> Option<MjType> {
        if self.main_arg == Some(name) && self.class.is_none() {
            self.error(span, format!("the argument {name} of main cannot be used"));
            return None;
        }
        match self.resolve(name) {
            Some(VarRef::Local(t)) | Some(VarRef::Field(_, t)) => Some(t.clone()),
            None => {
                self.error(span, format!("unknown variable {name}"));
                None
            }
        }
    }

    pub fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Block(body) => body.iter().for_each(|s| self.stmt(s)),
            StmtKind::If(c, t, e) => {
                self.expect(c, &MjType::Boolean);
                self.stmt(t);
                self.stmt(e);
            }
            StmtKind::While(c, b) => {
                self.expect(c, &MjType::Boolean);
                self.stmt(b);
            }
            StmtKind::Println(e) => self.expect(e, &MjType::Int),
            StmtKind::Assign(x, e) => {
                let target = self.var_type(x, s.span);
                let actual = self.expr(e);
                if let Some(target) = target {
                    self.expect_assignable(e, actual, &target);
                }
            }
            StmtKind::ArrayAssign(x, i, v) => {
                if let Some(t) = self.var_type(x, s.span) {
                    if t != MjType::IntArray {
                        self.mismatch(s.span, &MjType::IntArray, &t);
                    }
                }
                self.expect(i, &MjType::Int);
                self.expect(v, &MjType::Int);
            }
        }
    }

    /// The static type of `e`, or `None` after reporting an error.
    pub fn expr(&mut self, e: &Expr) -> Option<MjType> {
        match &e.kind {
            ExprKind::Binary(op, l, r) => {
                let (operand, result) = match op {
                    BinOp::And => (MjType::Boolean, MjType::Boolean),
                    BinOp::Less => (MjType::Int, MjType::Boolean),
                    BinOp::Plus | BinOp::Minus | BinOp::Times => (MjType::Int, MjType::Int),
                };
                self.expect(l, &operand);
                self.expect(r, &operand);
                Some(result)
            }
            ExprKind::Not(inner) => {
                self.expect(inner, &MjType::Boolean);
                Some(MjType::Boolean)
            }
            ExprKind::ArrayIndex(a, i) => {
                self.expect(a, &MjType::IntArray);
                self.expect(i, &MjType::Int);
                Some(MjType::Int)
            }
            ExprKind::ArrayLength(a) => {
                self.expect(a, &MjType::IntArray);
                Some(MjType::Int)
            }
            ExprKind::MethodCall(recv, name, args) => {
                let recv_ty = self.expr(recv);
                let arg_tys: Vec<_> = args.iter().map(|a| self.expr(a)).collect();
                let class = match recv_ty? {
                    MjType::ClassRef(c) => c,
                    other => {
                        self.error(recv.span, format!("cannot call method {name} on a value of type {other}"));
                        return None;
                    }
                };
                let table = self.table;
                let Some((_, sig)) = table.lookup_method(&class, name) else {
                    self.error(e.span, format!("unknown method {name} for class {class}"));
                    return None;
                };
                if sig.params.len() != args.len() {
                    self.error(
                        e.span,
                        format!("method {name} expects {} arguments, found {}", sig.params.len(), args.len()),
                    );
                } else {
                    for ((arg, actual), expected) in args.iter().zip(arg_tys).zip(&sig.params) {
                        self.expect_assignable(arg, actual, expected);
                    }
                }
                Some(sig.ret.clone())
            }
            ExprKind::IntLit(_) => Some(MjType::Int),
            ExprKind::True | ExprKind::False => Some(MjType::Boolean),
            ExprKind::Ident(x) => self.var_type(x, e.span),
            ExprKind::This => match self.class {
                Some(c) => Some(MjType::ClassRef(c.to_string())),
                None => {
                    self.error(e.span, "this cannot be used in the static main method");
                    None
                }
            },
            ExprKind::NewIntArray(len) => {
                self.expect(len, &MjType::Int);
                Some(MjType::IntArray)
            }
            ExprKind::NewObject(c) => {
                if self.table.contains(c) {
                    Some(MjType::ClassRef(c.clone()))
                } else {
                    self.error(e.span, format!("unknown class {c}"));
                    None
                }
            }
            ExprKind::Paren(inner) => self.expr(inner),
        }
    }
}
