//! MiniJava source printer.
//!
//! Parentheses already present in the tree (`Paren` nodes) are printed as
//! written; extra ones are inserted only where the tree would otherwise
//! re-parse differently, which happens for synthesized programs.

use std::fmt::Write;

use super::ast::*;

pub fn print_program(program: &Program) -> String {
    let mut p = Printer::default();
    p.program(program);
    p.out
}

pub fn print_expr(expr: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, expr);
    s
}

#[derive(Default)]
struct Printer {
    out: String,
    indent: usize,
}

impl Printer {
    fn line(&mut self, text: &str) {
        for _ in 0..self.indent {
            self.out.push_str("    ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn program(&mut self, program: &Program) {
        let main = &program.main;
        self.line(&format!("class {} {{", main.name));
        self.indent += 1;
        self.line(&format!("public static void main(String[] {}) {{", main.arg_name));
        self.indent += 1;
        for s in &main.body {
            self.stmt(s);
        }
        self.indent -= 1;
        self.line("}");
        self.indent -= 1;
        self.line("}");
        for class in &program.classes {
            self.out.push('\n');
            self.class(class);
        }
    }

    fn class(&mut self, class: &ClassDecl) {
        match &class.superclass {
            Some(sup) => self.line(&format!("class {} extends {} {{", class.name, sup)),
            None => self.line(&format!("class {} {{", class.name)),
        }
        self.indent += 1;
        for f in &class.fields {
            self.line(&format!("{} {};", f.ty, f.name));
        }
        for m in &class.methods {
            self.method(m);
        }
        self.indent -= 1;
        self.line("}");
    }

    fn method(&mut self, m: &MethodDecl) {
        let formals: Vec<String> = m.formals.iter().map(|f| format!("{} {}", f.ty, f.name)).collect();
        self.line(&format!("public {} {}({}) {{", m.return_type, m.name, formals.join(", ")));
        self.indent += 1;
        for l in &m.locals {
            self.line(&format!("{} {};", l.ty, l.name));
        }
        for s in &m.body {
            self.stmt(s);
        }
        self.line(&format!("return {};", print_expr(&m.return_expr)));
        self.indent -= 1;
        self.line("}");
    }

    fn nested(&mut self, s: &Stmt) {
        if matches!(s.kind, StmtKind::Block(_)) {
            self.stmt(s);
        } else {
            self.indent += 1;
            self.stmt(s);
            self.indent -= 1;
        }
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Block(body) => {
                self.line("{");
                self.indent += 1;
                for s in body {
                    self.stmt(s);
                }
                self.indent -= 1;
                self.line("}");
            }
            StmtKind::If(c, t, e) => {
                self.line(&format!("if ({})", print_expr(c)));
                self.nested(t);
                self.line("else");
                self.nested(e);
            }
            StmtKind::While(c, b) => {
                self.line(&format!("while ({})", print_expr(c)));
                self.nested(b);
            }
            StmtKind::Println(e) => self.line(&format!("System.out.println({});", print_expr(e))),
            StmtKind::Assign(x, e) => self.line(&format!("{} = {};", x, print_expr(e))),
            StmtKind::ArrayAssign(x, i, v) => {
                self.line(&format!("{}[{}] = {};", x, print_expr(i), print_expr(v)))
            }
        }
    }
}

const PREC_NOT: u8 = 5;
const PREC_POSTFIX: u8 = 6;

fn precedence(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Binary(op, ..) => op.precedence(),
        ExprKind::Not(_) => PREC_NOT,
        _ => PREC_POSTFIX,
    }
}

fn write_child(out: &mut String, e: &Expr, needs_parens: bool) {
    if needs_parens {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    match &e.kind {
        ExprKind::Binary(op, l, r) => {
            let prec = op.precedence();
            write_child(out, l, precedence(l) < prec);
            let _ = write!(out, " {} ", op.symbol());
            write_child(out, r, precedence(r) <= prec);
        }
        ExprKind::Not(inner) => {
            out.push('!');
            write_child(out, inner, precedence(inner) < PREC_NOT);
        }
        ExprKind::ArrayIndex(a, i) => {
            let wrap = precedence(a) < PREC_POSTFIX || matches!(a.kind, ExprKind::NewIntArray(_));
            write_child(out, a, wrap);
            out.push('[');
            write_expr(out, i);
            out.push(']');
        }
        ExprKind::ArrayLength(a) => {
            write_child(out, a, precedence(a) < PREC_POSTFIX);
            out.push_str(".length");
        }
        ExprKind::MethodCall(recv, name, args) => {
            write_child(out, recv, precedence(recv) < PREC_POSTFIX);
            let _ = write!(out, ".{name}(");
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, a);
            }
            out.push(')');
        }
        ExprKind::IntLit(v) => {
            let _ = write!(out, "{v}");
        }
        ExprKind::True => out.push_str("true"),
        ExprKind::False => out.push_str("false"),
        ExprKind::Ident(x) => out.push_str(x),
        ExprKind::This => out.push_str("this"),
        ExprKind::NewIntArray(len) => {
            out.push_str("new int[");
            write_expr(out, len);
            out.push(']');
        }
        ExprKind::NewObject(c) => {
            let _ = write!(out, "new {c}()");
        }
        ExprKind::Paren(inner) => {
            out.push('(');
            write_expr(out, inner);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{lexer::tokenize, parser::parse_expr};

    fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::synth(ExprKind::Binary(op, Box::new(l), Box::new(r)))
    }

    fn int(v: i64) -> Expr {
        Expr::synth(ExprKind::IntLit(v))
    }

    #[test]
    fn inserts_needed_parens() {
        let e = bin(BinOp::Times, bin(BinOp::Plus, int(1), int(2)), int(3));
        assert_eq!(print_expr(&e), "(1 + 2) * 3");
        let e = bin(BinOp::Minus, int(1), bin(BinOp::Minus, int(2), int(3)));
        assert_eq!(print_expr(&e), "1 - (2 - 3)");
        let e = bin(BinOp::Minus, bin(BinOp::Minus, int(1), int(2)), int(3));
        assert_eq!(print_expr(&e), "1 - 2 - 3");
        let e = Expr::synth(ExprKind::Not(Box::new(bin(BinOp::Less, int(1), int(2)))));
        assert_eq!(print_expr(&e), "!(1 < 2)");
    }

    #[test]
    fn parsed_parens_are_preserved() {
        let src = "(a + b) * c.f(!(x < y), new int[3].length)";
        let e = parse_expr(&tokenize(src).unwrap()).unwrap();
        assert_eq!(print_expr(&e), src);
    }
}
