//! Recursive-descent parser for MiniJava.

use thiserror::Error;

use super::ast::*;
use super::lexer::{Token, TokenKind, PRINTLN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

pub fn parse(tokens: &[Token]) -> Result<Program, ParseError> {
    let mut p = Parser::new(tokens);
    let main = p.main_class()?;
    let mut classes = Vec::new();
    while !p.at_end() {
        classes.push(p.class_decl()?);
    }
    Ok(Program { main, classes })
}

/// Parses a standalone expression; the whole token stream must be consumed.
pub fn parse_expr(tokens: &[Token]) -> Result<Expr, ParseError> {
    let mut p = Parser::new(tokens);
    let e = p.expr()?;
    if !p.at_end() {
        return Err(p.error_here("expected end of expression"));
    }
    Ok(e)
}

struct Parser<'t> {
    tokens: &'t [Token],
    idx: usize,
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token]) -> Self {
        Parser { tokens, idx: 0 }
    }

    fn at_end(&self) -> bool {
        self.idx >= self.tokens.len()
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.idx)
    }

    fn peek_at(&self, n: usize) -> Option<&'t Token> {
        self.tokens.get(self.idx + n)
    }

    fn here(&self) -> Pos {
        match self.peek() {
            Some(t) => t.span.start,
            None => self.tokens.last().map(|t| t.span.end).unwrap_or(Pos { line: 1, col: 1, offset: 0 }),
        }
    }

    fn prev_end(&self) -> Pos {
        if self.idx == 0 {
            self.here()
        } else {
            self.tokens[self.idx - 1].span.end
        }
    }

    fn error_here(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => format!("found '{}'", t.lexeme),
            None => "found end of input".to_string(),
        };
        ParseError { pos: self.here(), message: format!("{expected}, {found}") }
    }

    fn check(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.peek().is_some_and(|t| t.is(kind, lexeme))
    }

    fn check_punct(&self, lexeme: &str) -> bool {
        self.check(TokenKind::Punct, lexeme)
    }

    fn check_kw(&self, lexeme: &str) -> bool {
        self.check(TokenKind::Keyword, lexeme)
    }

    fn eat(&mut self, kind: TokenKind, lexeme: &str) -> bool {
        if self.check(kind, lexeme) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, lexeme: &str) -> Result<&'t Token, ParseError> {
        match self.peek() {
            Some(t) if t.is(kind, lexeme) => {
                self.idx += 1;
                Ok(t)
            }
            _ => Err(self.error_here(&format!("expected '{lexeme}'"))),
        }
    }

    fn punct(&mut self, lexeme: &str) -> Result<&'t Token, ParseError> {
        self.expect(TokenKind::Punct, lexeme)
    }

    fn kw(&mut self, lexeme: &str) -> Result<&'t Token, ParseError> {
        self.expect(TokenKind::Keyword, lexeme)
    }

    fn ident(&mut self) -> Result<(String, Span), ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident => {
                self.idx += 1;
                Ok((t.lexeme.clone(), t.span))
            }
            _ => Err(self.error_here("expected identifier")),
        }
    }

    fn main_class(&mut self) -> Result<MainClass, ParseError> {
        let start = self.here();
        self.kw("class")?;
        let (name, _) = self.ident()?;
        self.punct("{")?;
        if !self.check_kw("public") {
            return Err(self.error_here("expected main method 'public static void main'"));
        }
        self.kw("public")?;
        self.kw("static")?;
        self.kw("void")?;
        self.kw("main")?;
        self.punct("(")?;
        self.kw("String")?;
        self.punct("[")?;
        self.punct("]")?;
        let (arg_name, _) = self.ident()?;
        self.punct(")")?;
        self.punct("{")?;
        let mut body = Vec::new();
        while !self.check_punct("}") {
            if self.at_end() {
                return Err(self.error_here("expected '}'"));
            }
            body.push(self.stmt()?);
        }
        self.punct("}")?;
        self.punct("}")?;
        Ok(MainClass { name, arg_name, body, span: Span::new(start, self.prev_end()) })
    }

    fn class_decl(&mut self) -> Result<ClassDecl, ParseError> {
        let start = self.here();
        self.kw("class")?;
        let (name, _) = self.ident()?;
        let superclass = if self.eat(TokenKind::Keyword, "extends") { Some(self.ident()?.0) } else { None };
        self.punct("{")?;
        let mut fields = Vec::new();
        while self.starts_var_decl() {
            fields.push(self.var_decl()?);
        }
        let mut methods = Vec::new();
        while self.check_kw("public") {
            methods.push(self.method_decl()?);
        }
        self.punct("}")?;
        Ok(ClassDecl { name, superclass, fields, methods, span: Span::new(start, self.prev_end()) })
    }

    /// `Type id ;` — either a primitive type keyword, or `id id`.
    fn starts_var_decl(&self) -> bool {
        match self.peek() {
            Some(t) if t.is(TokenKind::Keyword, "int") || t.is(TokenKind::Keyword, "boolean") => true,
            Some(t) if t.kind == TokenKind::Ident => {
                self.peek_at(1).is_some_and(|n| n.kind == TokenKind::Ident)
            }
            _ => false,
        }
    }

    fn var_decl(&mut self) -> Result<VarDecl, ParseError> {
        let start = self.here();
        let ty = self.ty()?;
        let (name, _) = self.ident()?;
        self.punct(";")?;
        Ok(VarDecl { name, ty, span: Span::new(start, self.prev_end()) })
    }

    fn ty(&mut self) -> Result<MjType, ParseError> {
        if self.eat(TokenKind::Keyword, "int") {
            if self.eat(TokenKind::Punct, "[") {
                self.punct("]")?;
                Ok(MjType::IntArray)
            } else {
                Ok(MjType::Int)
            }
        } else if self.eat(TokenKind::Keyword, "boolean") {
            Ok(MjType::Boolean)
        } else if self.peek().is_some_and(|t| t.kind == TokenKind::Ident) {
            Ok(MjType::ClassRef(self.ident()?.0))
        } else {
            Err(self.error_here("expected type"))
        }
    }

    fn method_decl(&mut self) -> Result<MethodDecl, ParseError> {
        let start = self.here();
        self.kw("public")?;
        let return_type = self.ty()?;
        let (name, _) = self.ident()?;
        self.punct("(")?;
        let mut formals = Vec::new();
        if !self.check_punct(")") {
            loop {
                let fstart = self.here();
                let ty = self.ty()?;
                let (fname, _) = self.ident()?;
                formals.push(VarDecl { name: fname, ty, span: Span::new(fstart, self.prev_end()) });
                if !self.eat(TokenKind::Punct, ",") {
                    break;
                }
            }
        }
        self.punct(")")?;
        self.punct("{")?;
        let mut locals = Vec::new();
        while self.starts_var_decl() {
            locals.push(self.var_decl()?);
        }
        let mut body = Vec::new();
        while !self.check_kw("return") {
            if self.at_end() || self.check_punct("}") {
                return Err(self.error_here("expected 'return'"));
            }
            body.push(self.stmt()?);
        }
        self.kw("return")?;
        let return_expr = self.expr()?;
        self.punct(";")?;
        self.punct("}")?;
        Ok(MethodDecl { name, formals, locals, body, return_expr, return_type, span: Span::new(start, self.prev_end()) })
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let start = self.here();
        let kind = if self.eat(TokenKind::Punct, "{") {
            let mut body = Vec::new();
            while !self.check_punct("}") {
                if self.at_end() {
                    return Err(self.error_here("expected '}'"));
                }
                body.push(self.stmt()?);
            }
            self.punct("}")?;
            StmtKind::Block(body)
        } else if self.eat(TokenKind::Keyword, "if") {
            self.punct("(")?;
            let cond = self.expr()?;
            self.punct(")")?;
            let then = self.stmt()?;
            self.kw("else")?;
            let els = self.stmt()?;
            StmtKind::If(cond, Box::new(then), Box::new(els))
        } else if self.eat(TokenKind::Keyword, "while") {
            self.punct("(")?;
            let cond = self.expr()?;
            self.punct(")")?;
            let body = self.stmt()?;
            StmtKind::While(cond, Box::new(body))
        } else if self.eat(TokenKind::Keyword, PRINTLN) {
            self.punct("(")?;
            let e = self.expr()?;
            self.punct(")")?;
            self.punct(";")?;
            StmtKind::Println(e)
        } else if self.peek().is_some_and(|t| t.kind == TokenKind::Ident) {
            let (name, _) = self.ident()?;
            if self.eat(TokenKind::Punct, "[") {
                let index = self.expr()?;
                self.punct("]")?;
                self.expect(TokenKind::Operator, "=")?;
                let value = self.expr()?;
                self.punct(";")?;
                StmtKind::ArrayAssign(name, index, value)
            } else {
                self.expect(TokenKind::Operator, "=")?;
                let value = self.expr()?;
                self.punct(";")?;
                StmtKind::Assign(name, value)
            }
        } else {
            return Err(self.error_here("expected statement"));
        };
        Ok(Stmt::new(kind, Span::new(start, self.prev_end())))
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        self.binary(1)
    }

    fn peek_binop(&self) -> Option<BinOp> {
        let t = self.peek()?;
        if t.kind != TokenKind::Operator {
            return None;
        }
        match t.lexeme.as_str() {
            "&&" => Some(BinOp::And),
            "<" => Some(BinOp::Less),
            "+" => Some(BinOp::Plus),
            "-" => Some(BinOp::Minus),
            "*" => Some(BinOp::Times),
            _ => None,
        }
    }

    /// Precedence climbing; all binary operators are left-associative.
    fn binary(&mut self, min_prec: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.peek_binop() {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.idx += 1;
            let rhs = self.binary(prec + 1)?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let start = self.here();
        if self.eat(TokenKind::Operator, "!") {
            let inner = self.unary()?;
            let span = Span::new(start, inner.span.end);
            return Ok(Expr::new(ExprKind::Not(Box::new(inner)), span));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        loop {
            if self.eat(TokenKind::Punct, "[") {
                let index = self.expr()?;
                self.punct("]")?;
                let span = Span::new(e.span.start, self.prev_end());
                e = Expr::new(ExprKind::ArrayIndex(Box::new(e), Box::new(index)), span);
            } else if self.eat(TokenKind::Punct, ".") {
                if self.eat(TokenKind::Keyword, "length") {
                    let span = Span::new(e.span.start, self.prev_end());
                    e = Expr::new(ExprKind::ArrayLength(Box::new(e)), span);
                } else {
                    let (name, _) = self.ident()?;
                    self.punct("(")?;
                    let mut args = Vec::new();
                    if !self.check_punct(")") {
                        loop {
                            args.push(self.expr()?);
                            if !self.eat(TokenKind::Punct, ",") {
                                break;
                            }
                        }
                    }
                    self.punct(")")?;
                    let span = Span::new(e.span.start, self.prev_end());
                    e = Expr::new(ExprKind::MethodCall(Box::new(e), name, args), span);
                }
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let start = self.here();
        let tok = self.peek().ok_or_else(|| self.error_here("expected expression"))?;
        let kind = match tok.kind {
            TokenKind::IntLit => {
                self.idx += 1;
                let v = tok.lexeme.parse::<i64>().map_err(|_| ParseError {
                    pos: start,
                    message: format!("invalid integer literal {}", tok.lexeme),
                })?;
                ExprKind::IntLit(v)
            }
            TokenKind::Ident => {
                self.idx += 1;
                ExprKind::Ident(tok.lexeme.clone())
            }
            TokenKind::Keyword => match tok.lexeme.as_str() {
                "true" => {
                    self.idx += 1;
                    ExprKind::True
                }
                "false" => {
                    self.idx += 1;
                    ExprKind::False
                }
                "this" => {
                    self.idx += 1;
                    ExprKind::This
                }
                "new" => {
                    self.idx += 1;
                    if self.eat(TokenKind::Keyword, "int") {
                        self.punct("[")?;
                        let len = self.expr()?;
                        self.punct("]")?;
                        ExprKind::NewIntArray(Box::new(len))
                    } else {
                        let (name, _) = self.ident()?;
                        self.punct("(")?;
                        self.punct(")")?;
                        ExprKind::NewObject(name)
                    }
                }
                _ => return Err(self.error_here("expected expression")),
            },
            TokenKind::Punct if tok.lexeme == "(" => {
                self.idx += 1;
                let inner = self.expr()?;
                self.punct(")")?;
                ExprKind::Paren(Box::new(inner))
            }
            _ => return Err(self.error_here("expected expression")),
        };
        Ok(Expr::new(kind, Span::new(start, self.prev_end())))
    }
}
