//! Core-subset conformance check for emitted programs.
//!
//! Every node kind of `MlExpr` is core ML, so what can go wrong is reaching
//! outside the program: an identifier that no declaration binds would resolve
//! to the SML Basis Library, which is where `ref`, `:=`, `!`, arrays and
//! loops live. Constructors must be declared (or be list/option
//! constructors) and used at their declared arity.

use std::collections::HashMap;
use std::fmt;

use super::ast::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Node kind, e.g. `variable` or `constructor-pattern`.
    pub kind: &'static str,
    /// Path from the enclosing top-level declaration.
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind, self.location, self.message)
    }
}

/// Basis identifiers that would introduce mutation, arrays or loops.
const IMPERATIVE_NAMES: &[(&str, &str)] = &[
    ("ref", "reference creation"),
    ("!", "dereference"),
    (":=", "mutable assignment"),
    ("while", "loop construct"),
    ("before", "sequencing primitive"),
    ("ignore", "sequencing primitive"),
];

fn classify(name: &str) -> &'static str {
    if let Some((_, what)) = IMPERATIVE_NAMES.iter().find(|(n, _)| *n == name) {
        return what;
    }
    if name.starts_with("Array.") || name.starts_with("Array2.") || name.starts_with("Vector.") || name == "array" {
        return "array primitive";
    }
    "free identifier"
}

pub fn validate_core(program: &MlProgram) -> Vec<Violation> {
    let mut v = Validator { constructors: HashMap::new(), violations: Vec::new(), path: Vec::new() };
    for (name, has_arg) in BUILTIN_CONSTRUCTORS {
        v.constructors.insert(name.to_string(), *has_arg);
    }
    for d in &program.datatypes {
        for c in &d.constructors {
            v.constructors.insert(c.name.clone(), c.arg.is_some());
        }
    }

    let mut scope: Vec<String> = vec!["print_int".to_string()];
    for d in &program.decls {
        match d {
            MlDecl::Fun(group) => {
                scope.extend(group.iter().map(|b| b.name.clone()));
                for b in group {
                    v.path.push(format!("fun {}", b.name));
                    let mut inner = scope.clone();
                    v.pat(&b.param, &mut inner);
                    v.expr(&b.body, &mut inner);
                    v.path.pop();
                }
            }
            MlDecl::Val(p, e) => {
                v.path.push("val".into());
                v.expr(e, &mut scope.clone());
                v.pat(p, &mut scope);
                v.path.pop();
            }
        }
    }
    if let Some(main) = &program.main {
        v.path.push("main".into());
        v.expr(main, &mut scope);
        v.path.pop();
    }
    v.violations
}

struct Validator {
    constructors: HashMap<String, bool>,
    violations: Vec<Violation>,
    path: Vec<String>,
}

impl Validator {
    fn report(&mut self, kind: &'static str, message: String) {
        self.violations.push(Violation { kind, location: self.path.join(" / "), message });
    }

    fn check_con(&mut self, kind: &'static str, name: &str, has_arg: bool) {
        match self.constructors.get(name) {
            None => self.report(kind, format!("undeclared constructor {name}")),
            Some(&declared) if declared != has_arg => {
                let want = if declared { "an argument" } else { "no argument" };
                self.report(kind, format!("constructor {name} takes {want}"));
            }
            _ => {}
        }
    }

    fn pat(&mut self, p: &MlPat, scope: &mut Vec<String>) {
        match p {
            MlPat::Wild | MlPat::Int(_) | MlPat::Bool(_) => {}
            MlPat::Var(x) => scope.push(x.clone()),
            MlPat::Tuple(items) => {
                if items.len() == 1 {
                    self.report(p.kind(), "one-element tuple".into());
                }
                items.iter().for_each(|q| self.pat(q, scope));
            }
            MlPat::Con(c, arg) => {
                self.check_con(p.kind(), c, arg.is_some());
                if let Some(a) = arg {
                    self.pat(a, scope);
                }
            }
        }
    }

    fn expr(&mut self, e: &MlExpr, scope: &mut Vec<String>) {
        match e {
            MlExpr::Int(_) | MlExpr::Bool(_) => {}
            MlExpr::Var(x) => {
                if !scope.iter().rev().any(|s| s == x) {
                    let what = classify(x);
                    self.report(e.kind(), format!("{what} `{x}`"));
                }
            }
            MlExpr::Tuple(items) => {
                if items.len() == 1 {
                    self.report(e.kind(), "one-element tuple".into());
                }
                items.iter().for_each(|i| self.expr(i, scope));
            }
            MlExpr::Con(c, arg) => {
                self.check_con(e.kind(), c, arg.is_some());
                if let Some(a) = arg {
                    self.expr(a, scope);
                }
            }
            MlExpr::If(c, t, f) => {
                self.expr(c, scope);
                self.path.push("then".into());
                self.expr(t, scope);
                self.path.pop();
                self.path.push("else".into());
                self.expr(f, scope);
                self.path.pop();
            }
            MlExpr::Case(s, arms) => {
                self.expr(s, scope);
                for (i, (p, body)) in arms.iter().enumerate() {
                    self.path.push(format!("arm {i}"));
                    let mark = scope.len();
                    self.pat(p, scope);
                    self.expr(body, scope);
                    scope.truncate(mark);
                    self.path.pop();
                }
            }
            MlExpr::Let(p, bound, body) => {
                self.expr(bound, scope);
                let mark = scope.len();
                self.pat(p, scope);
                self.expr(body, scope);
                scope.truncate(mark);
            }
            MlExpr::LetFun(group, body) => {
                let mark = scope.len();
                scope.extend(group.iter().map(|b| b.name.clone()));
                for b in group {
                    self.path.push(format!("fun {}", b.name));
                    let inner = scope.len();
                    self.pat(&b.param, scope);
                    self.expr(&b.body, scope);
                    scope.truncate(inner);
                    self.path.pop();
                }
                self.expr(body, scope);
                scope.truncate(mark);
            }
            MlExpr::App(f, a) | MlExpr::Prim(_, f, a) => {
                self.expr(f, scope);
                self.expr(a, scope);
            }
            MlExpr::PrintInt(a) => self.expr(a, scope),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_program_is_clean() {
        assert!(validate_core(&MlProgram::default()).is_empty());
    }

    #[test]
    fn reference_creation_is_flagged() {
        let p = MlProgram {
            main: Some(MlExpr::let_(
                MlPat::var("r"),
                MlExpr::app(MlExpr::var("ref"), MlExpr::Int(0)),
                MlExpr::PrintInt(Box::new(MlExpr::Int(0))),
            )),
            ..Default::default()
        };
        let v = validate_core(&p);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, "variable");
        assert!(v[0].message.contains("reference creation"));
        assert_eq!(v[0].location, "main");
    }

    #[test]
    fn scoping_and_arity() {
        let p = MlProgram {
            datatypes: vec![DataDecl {
                name: "t".into(),
                params: vec![],
                constructors: vec![ConDecl { name: "K".into(), arg: Some(MlType::Int) }],
            }],
            decls: vec![MlDecl::Fun(vec![FunBind {
                name: "f".into(),
                param: MlPat::var("x"),
                body: MlExpr::case(
                    MlExpr::var("x"),
                    vec![
                        (MlPat::con("K", Some(MlPat::var("n"))), MlExpr::var("n")),
                        (MlPat::con("K", None), MlExpr::var("n")),
                    ],
                ),
            }])],
            main: Some(MlExpr::app(MlExpr::var("f"), MlExpr::con("J", None))),
            ..Default::default()
        };
        let v = validate_core(&p);
        let kinds: Vec<_> = v.iter().map(|x| (x.kind, x.location.as_str())).collect();
        assert_eq!(
            kinds,
            vec![
                ("constructor-pattern", "fun f / arm 1"),
                ("variable", "fun f / arm 1"),
                ("constructor", "main"),
            ]
        );
    }

    #[test]
    fn array_primitives_are_named() {
        let p = MlProgram { main: Some(MlExpr::call("Array.array", vec![MlExpr::Int(3), MlExpr::Int(0)])), ..Default::default() };
        assert!(validate_core(&p)[0].message.contains("array primitive"));
    }
}
