//! MiniJava abstract syntax.

use std::fmt;

/// A source position, 1-based line and column plus a byte offset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
    pub offset: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Half-open byte range `[start, end)` in the source text.
///
/// Synthesized nodes (from the random generator, for instance) carry the
/// default span, which is empty and sits at line 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub fn new(start: Pos, end: Pos) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span { start: self.start, end: other.end }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start.offset <= other.start.offset && other.end.offset <= self.end.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MjType {
    Int,
    Boolean,
    IntArray,
    ClassRef(String),
}

impl fmt::Display for MjType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MjType::Int => f.write_str("int"),
            MjType::Boolean => f.write_str("boolean"),
            MjType::IntArray => f.write_str("int[]"),
            MjType::ClassRef(name) => f.write_str(name),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarDecl {
    pub name: String,
    pub ty: MjType,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub main: MainClass,
    pub classes: Vec<ClassDecl>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MainClass {
    pub name: String,
    pub arg_name: String,
    pub body: Vec<Stmt>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassDecl {
    pub name: String,
    pub superclass: Option<String>,
    pub fields: Vec<VarDecl>,
    pub methods: Vec<MethodDecl>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodDecl {
    pub name: String,
    pub formals: Vec<VarDecl>,
    pub locals: Vec<VarDecl>,
    pub body: Vec<Stmt>,
    pub return_expr: Expr,
    pub return_type: MjType,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Block(Vec<Stmt>),
    If(Expr, Box<Stmt>, Box<Stmt>),
    While(Expr, Box<Stmt>),
    Println(Expr),
    Assign(String, Expr),
    ArrayAssign(String, Expr, Expr),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Less,
    Plus,
    Minus,
    Times,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&&",
            BinOp::Less => "<",
            BinOp::Plus => "+",
            BinOp::Minus => "-",
            BinOp::Times => "*",
        }
    }

    /// Binding strength; larger binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::And => 1,
            BinOp::Less => 2,
            BinOp::Plus | BinOp::Minus => 3,
            BinOp::Times => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    ArrayIndex(Box<Expr>, Box<Expr>),
    ArrayLength(Box<Expr>),
    MethodCall(Box<Expr>, String, Vec<Expr>),
    IntLit(i64),
    True,
    False,
    Ident(String),
    This,
    NewIntArray(Box<Expr>),
    NewObject(String),
    Paren(Box<Expr>),
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// An expression with no source position.
    pub fn synth(kind: ExprKind) -> Self {
        Expr { kind, span: Span::default() }
    }

    /// Direct subexpressions, left to right.
    pub fn children(&self) -> Vec<&Expr> {
        match &self.kind {
            ExprKind::Binary(_, l, r) | ExprKind::ArrayIndex(l, r) => vec![l, r],
            ExprKind::Not(e) | ExprKind::ArrayLength(e) | ExprKind::NewIntArray(e) | ExprKind::Paren(e) => {
                vec![e]
            }
            ExprKind::MethodCall(recv, _, args) => {
                let mut out = vec![recv.as_ref()];
                out.extend(args.iter());
                out
            }
            ExprKind::IntLit(_)
            | ExprKind::True
            | ExprKind::False
            | ExprKind::Ident(_)
            | ExprKind::This
            | ExprKind::NewObject(_) => vec![],
        }
    }
}

impl Stmt {
    pub fn new(kind: StmtKind, span: Span) -> Self {
        Stmt { kind, span }
    }

    pub fn synth(kind: StmtKind) -> Self {
        Stmt { kind, span: Span::default() }
    }
}

/// Resets every span in the program to the default, so that two programs can
/// be compared structurally.
pub fn erase_spans(program: &mut Program) {
    program.main.span = Span::default();
    program.main.body.iter_mut().for_each(erase_stmt);
    for class in &mut program.classes {
        class.span = Span::default();
        class.fields.iter_mut().for_each(|v| v.span = Span::default());
        for method in &mut class.methods {
            method.span = Span::default();
            method.formals.iter_mut().for_each(|v| v.span = Span::default());
            method.locals.iter_mut().for_each(|v| v.span = Span::default());
            method.body.iter_mut().for_each(erase_stmt);
            erase_expr(&mut method.return_expr);
        }
    }
}

fn erase_stmt(stmt: &mut Stmt) {
    stmt.span = Span::default();
    match &mut stmt.kind {
        StmtKind::Block(body) => body.iter_mut().for_each(erase_stmt),
        StmtKind::If(c, t, e) => {
            erase_expr(c);
            erase_stmt(t);
            erase_stmt(e);
        }
        StmtKind::While(c, b) => {
            erase_expr(c);
            erase_stmt(b);
        }
        StmtKind::Println(e) | StmtKind::Assign(_, e) => erase_expr(e),
        StmtKind::ArrayAssign(_, i, v) => {
            erase_expr(i);
            erase_expr(v);
        }
    }
}

fn erase_expr(expr: &mut Expr) {
    expr.span = Span::default();
    match &mut expr.kind {
        ExprKind::Binary(_, l, r) | ExprKind::ArrayIndex(l, r) => {
            erase_expr(l);
            erase_expr(r);
        }
        ExprKind::Not(e) | ExprKind::ArrayLength(e) | ExprKind::NewIntArray(e) | ExprKind::Paren(e) => {
            erase_expr(e)
        }
        ExprKind::MethodCall(recv, _, args) => {
            erase_expr(recv);
            args.iter_mut().for_each(erase_expr);
        }
        _ => {}
    }
}
