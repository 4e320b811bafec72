//! The core ML subset emitted by the translator.
//!
//! Only recursive functions, algebraic datatypes, tuples, pattern matching,
//! let-bindings, conditionals, integer/boolean primitives and one printing
//! primitive exist here. There is deliberately no node for references,
//! assignment, arrays or loops.

/// Constructors every program may use without declaring them.
pub const BUILTIN_CONSTRUCTORS: &[(&str, bool)] = &[("nil", false), ("::", true), ("NONE", false), ("SOME", true)];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MlType {
    Int,
    Bool,
    Unit,
    Tuple(Vec<MlType>),
    Arrow(Box<MlType>, Box<MlType>),
    List(Box<MlType>),
    Option(Box<MlType>),
    Named(String),
}

impl MlType {
    /// A tuple type, collapsing the one-element case to the element itself.
    pub fn tuple(mut items: Vec<MlType>) -> MlType {
        match items.len() {
            0 => MlType::Unit,
            1 => items.pop().unwrap(),
            _ => MlType::Tuple(items),
        }
    }

    pub fn arrow(from: MlType, to: MlType) -> MlType {
        MlType::Arrow(Box::new(from), Box::new(to))
    }

    pub fn list(of: MlType) -> MlType {
        MlType::List(Box::new(of))
    }

    pub fn option(of: MlType) -> MlType {
        MlType::Option(Box::new(of))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConDecl {
    pub name: String,
    pub arg: Option<MlType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DataDecl {
    pub name: String,
    pub params: Vec<String>,
    pub constructors: Vec<ConDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MlPat {
    Wild,
    Var(String),
    Int(i64),
    Bool(bool),
    Tuple(Vec<MlPat>),
    Con(String, Option<Box<MlPat>>),
}

impl MlPat {
    pub fn var(name: impl Into<String>) -> MlPat {
        MlPat::Var(name.into())
    }

    pub fn tuple(mut items: Vec<MlPat>) -> MlPat {
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            MlPat::Tuple(items)
        }
    }

    pub fn con(name: impl Into<String>, arg: Option<MlPat>) -> MlPat {
        MlPat::Con(name.into(), arg.map(Box::new))
    }

    pub fn cons(head: MlPat, tail: MlPat) -> MlPat {
        MlPat::con("::", Some(MlPat::Tuple(vec![head, tail])))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MlPat::Wild => "wildcard-pattern",
            MlPat::Var(_) => "variable-pattern",
            MlPat::Int(_) => "int-pattern",
            MlPat::Bool(_) => "bool-pattern",
            MlPat::Tuple(_) => "tuple-pattern",
            MlPat::Con(..) => "constructor-pattern",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimOp {
    Add,
    Sub,
    Mul,
    Less,
    Eq,
}

impl PrimOp {
    pub fn symbol(self) -> &'static str {
        match self {
            PrimOp::Add => "+",
            PrimOp::Sub => "-",
            PrimOp::Mul => "*",
            PrimOp::Less => "<",
            PrimOp::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunBind {
    pub name: String,
    pub param: MlPat,
    pub body: MlExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MlExpr {
    Int(i64),
    Bool(bool),
    Var(String),
    /// Never of length one; the empty tuple is unit.
    Tuple(Vec<MlExpr>),
    Con(String, Option<Box<MlExpr>>),
    If(Box<MlExpr>, Box<MlExpr>, Box<MlExpr>),
    Case(Box<MlExpr>, Vec<(MlPat, MlExpr)>),
    Let(MlPat, Box<MlExpr>, Box<MlExpr>),
    /// A (possibly mutually) recursive function group scoped over the body.
    LetFun(Vec<FunBind>, Box<MlExpr>),
    App(Box<MlExpr>, Box<MlExpr>),
    Prim(PrimOp, Box<MlExpr>, Box<MlExpr>),
    /// Prints an integer and a newline; evaluates to unit.
    PrintInt(Box<MlExpr>),
}

impl MlExpr {
    pub fn var(name: impl Into<String>) -> MlExpr {
        MlExpr::Var(name.into())
    }

    pub fn unit() -> MlExpr {
        MlExpr::Tuple(Vec::new())
    }

    pub fn tuple(mut items: Vec<MlExpr>) -> MlExpr {
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            MlExpr::Tuple(items)
        }
    }

    pub fn con(name: impl Into<String>, arg: Option<MlExpr>) -> MlExpr {
        MlExpr::Con(name.into(), arg.map(Box::new))
    }

    pub fn cons(head: MlExpr, tail: MlExpr) -> MlExpr {
        MlExpr::con("::", Some(MlExpr::Tuple(vec![head, tail])))
    }

    pub fn nil() -> MlExpr {
        MlExpr::con("nil", None)
    }

    pub fn app(f: MlExpr, arg: MlExpr) -> MlExpr {
        MlExpr::App(Box::new(f), Box::new(arg))
    }

    /// Applies a named function to a tuple of arguments.
    pub fn call(f: &str, args: Vec<MlExpr>) -> MlExpr {
        MlExpr::app(MlExpr::var(f), MlExpr::tuple(args))
    }

    pub fn if_(c: MlExpr, t: MlExpr, e: MlExpr) -> MlExpr {
        MlExpr::If(Box::new(c), Box::new(t), Box::new(e))
    }

    pub fn let_(p: MlPat, bound: MlExpr, body: MlExpr) -> MlExpr {
        MlExpr::Let(p, Box::new(bound), Box::new(body))
    }

    pub fn case(scrutinee: MlExpr, arms: Vec<(MlPat, MlExpr)>) -> MlExpr {
        MlExpr::Case(Box::new(scrutinee), arms)
    }

    pub fn prim(op: PrimOp, a: MlExpr, b: MlExpr) -> MlExpr {
        MlExpr::Prim(op, Box::new(a), Box::new(b))
    }

    pub fn is_atomic(&self) -> bool {
        match self {
            MlExpr::Int(_) | MlExpr::Bool(_) | MlExpr::Var(_) => true,
            MlExpr::Tuple(items) => items.iter().all(MlExpr::is_atomic),
            MlExpr::Con(_, arg) => arg.as_deref().is_none_or(MlExpr::is_atomic),
            _ => false,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MlExpr::Int(_) => "int-literal",
            MlExpr::Bool(_) => "bool-literal",
            MlExpr::Var(_) => "variable",
            MlExpr::Tuple(_) => "tuple",
            MlExpr::Con(..) => "constructor",
            MlExpr::If(..) => "if",
            MlExpr::Case(..) => "case",
            MlExpr::Let(..) => "let",
            MlExpr::LetFun(..) => "fun",
            MlExpr::App(..) => "application",
            MlExpr::Prim(..) => "primitive",
            MlExpr::PrintInt(_) => "print",
        }
    }

    /// Pre-order traversal of this expression and every subexpression,
    /// including the bodies of locally bound functions.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a MlExpr)) {
        f(self);
        match self {
            MlExpr::Int(_) | MlExpr::Bool(_) | MlExpr::Var(_) => {}
            MlExpr::Tuple(items) => items.iter().for_each(|e| e.walk(f)),
            MlExpr::Con(_, arg) => {
                if let Some(a) = arg {
                    a.walk(f)
                }
            }
            MlExpr::If(c, t, e) => {
                c.walk(f);
                t.walk(f);
                e.walk(f);
            }
            MlExpr::Case(s, arms) => {
                s.walk(f);
                arms.iter().for_each(|(_, e)| e.walk(f));
            }
            MlExpr::Let(_, bound, body) => {
                bound.walk(f);
                body.walk(f);
            }
            MlExpr::LetFun(group, body) => {
                group.iter().for_each(|b| b.body.walk(f));
                body.walk(f);
            }
            MlExpr::App(g, a) | MlExpr::Prim(_, g, a) => {
                g.walk(f);
                a.walk(f);
            }
            MlExpr::PrintInt(e) => e.walk(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MlDecl {
    Fun(Vec<FunBind>),
    Val(MlPat, MlExpr),
}

/// A whole emitted program: one datatype group, a sequence of value and
/// function declarations, and the main expression evaluated last.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MlProgram {
    /// Lines for the leading comment of the printed file.
    pub header: Vec<String>,
    /// Mutually recursive datatype group.
    pub datatypes: Vec<DataDecl>,
    pub decls: Vec<MlDecl>,
    pub main: Option<MlExpr>,
}

impl MlProgram {
    /// Every expression reachable from the program, in pre-order.
    pub fn expressions(&self) -> Vec<&MlExpr> {
        let mut out = Vec::new();
        for d in &self.decls {
            match d {
                MlDecl::Fun(group) => group.iter().for_each(|b| b.body.walk(&mut |e| out.push(e))),
                MlDecl::Val(_, e) => e.walk(&mut |e| out.push(e)),
            }
        }
        if let Some(m) = &self.main {
            m.walk(&mut |e| out.push(e));
        }
        out
    }

    pub fn datatype(&self, name: &str) -> Option<&DataDecl> {
        self.datatypes.iter().find(|d| d.name == name)
    }

    pub fn constructor(&self, name: &str) -> Option<&ConDecl> {
        self.datatypes.iter().flat_map(|d| &d.constructors).find(|c| c.name == name)
    }
}
