//! Standard ML '97 text for an `MlProgram`.
//!
//! Two-space indentation, one declaration per line, and every non-atomic
//! subexpression parenthesized.

use super::ast::*;

/// Defines `print_int`, which writes an integer in Java's notation (`-5`,
/// not `~5`) followed by a newline.
pub const PRINT_PRELUDE: &str =
    "fun print_int (n : int) = print (String.map (fn #\"~\" => #\"-\" | c => c) (Int.toString n) ^ \"\\n\")";

pub fn pretty_print(program: &MlProgram) -> String {
    let mut out = String::new();
    for line in &program.header {
        out.push_str("(* ");
        out.push_str(line);
        out.push_str(" *)\n");
    }
    if !program.header.is_empty() {
        out.push('\n');
    }
    if !program.datatypes.is_empty() {
        for (i, d) in program.datatypes.iter().enumerate() {
            out.push_str(if i == 0 { "datatype " } else { "and " });
            out.push_str(&datatype(d));
            out.push('\n');
        }
        out.push('\n');
    }
    out.push_str(PRINT_PRELUDE);
    out.push_str("\n\n");
    for d in &program.decls {
        out.push_str(&decl(d, 0));
        out.push_str("\n\n");
    }
    if let Some(main) = &program.main {
        out.push_str("val _ =\n  ");
        out.push_str(&expr(main, 2));
        out.push('\n');
    }
    out
}

fn datatype(d: &DataDecl) -> String {
    let mut s = String::new();
    match d.params.len() {
        0 => {}
        1 => s.push_str(&format!("{} ", d.params[0])),
        _ => s.push_str(&format!("({}) ", d.params.join(", "))),
    }
    s.push_str(&d.name);
    s.push_str(" =");
    for (i, c) in d.constructors.iter().enumerate() {
        s.push_str(if i == 0 { "\n    " } else { "\n  | " });
        s.push_str(&c.name);
        if let Some(arg) = &c.arg {
            s.push_str(" of ");
            s.push_str(&ty(arg));
        }
    }
    s
}

pub fn ty(t: &MlType) -> String {
    match t {
        MlType::Int => "int".into(),
        MlType::Bool => "bool".into(),
        MlType::Unit => "unit".into(),
        MlType::Named(n) => n.clone(),
        MlType::List(t) => format!("{} list", ty_atomic(t)),
        MlType::Option(t) => format!("{} option", ty_atomic(t)),
        MlType::Tuple(items) => items.iter().map(ty_atomic).collect::<Vec<_>>().join(" * "),
        MlType::Arrow(a, b) => format!("{} -> {}", ty_atomic(a), ty(b)),
    }
}

fn ty_atomic(t: &MlType) -> String {
    match t {
        MlType::Tuple(_) | MlType::Arrow(..) => format!("({})", ty(t)),
        _ => ty(t),
    }
}

pub fn int_literal(v: i64) -> String {
    if v < 0 {
        format!("~{}", v.unsigned_abs())
    } else {
        v.to_string()
    }
}

pub fn pattern(p: &MlPat) -> String {
    match p {
        MlPat::Wild => "_".into(),
        MlPat::Var(x) => x.clone(),
        MlPat::Int(v) => int_literal(*v),
        MlPat::Bool(b) => b.to_string(),
        MlPat::Tuple(items) => format!("({})", items.iter().map(pattern).collect::<Vec<_>>().join(", ")),
        MlPat::Con(c, None) => c.clone(),
        MlPat::Con(c, Some(arg)) => match (c.as_str(), arg.as_ref()) {
            ("::", MlPat::Tuple(parts)) if parts.len() == 2 => {
                format!("({} :: {})", pattern(&parts[0]), pattern(&parts[1]))
            }
            _ => format!("{} ({})", c, pattern_inner(arg)),
        },
    }
}

/// A pattern already inside parentheses; tuples need no second pair.
fn pattern_inner(p: &MlPat) -> String {
    match p {
        MlPat::Tuple(items) if !items.is_empty() => items.iter().map(pattern).collect::<Vec<_>>().join(", "),
        _ => pattern(p),
    }
}

fn pad(indent: usize) -> String {
    " ".repeat(indent)
}

pub fn decl(d: &MlDecl, indent: usize) -> String {
    match d {
        MlDecl::Fun(group) => fun_group(group, indent),
        MlDecl::Val(p, e) => format!("val {} =\n{}{}", pattern(p), pad(indent + 2), expr(e, indent + 2)),
    }
}

fn fun_group(group: &[FunBind], indent: usize) -> String {
    group
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let kw = if i == 0 { "fun" } else { "and" };
            let param = match &b.param {
                p @ MlPat::Tuple(_) => pattern(p),
                p => format!("({})", pattern(p)),
            };
            format!("{kw} {} {} =\n{}{}", b.name, param, pad(indent + 2), expr(&b.body, indent + 2))
        })
        .collect::<Vec<_>>()
        .join(&format!("\n{}", pad(indent)))
}

/// Prints `e` as if it starts at column `indent`; continuation lines carry
/// their absolute indentation.
pub fn expr(e: &MlExpr, indent: usize) -> String {
    match e {
        MlExpr::Int(v) => int_literal(*v),
        MlExpr::Bool(b) => b.to_string(),
        MlExpr::Var(x) => x.clone(),
        MlExpr::Tuple(items) => {
            let parts: Vec<_> = items.iter().map(|i| expr(i, indent + 1)).collect();
            format!("({})", parts.join(", "))
        }
        MlExpr::Con(c, None) => c.clone(),
        MlExpr::Con(c, Some(arg)) => match (c.as_str(), arg.as_ref()) {
            ("::", MlExpr::Tuple(parts)) if parts.len() == 2 => {
                format!("({} :: {})", expr(&parts[0], indent + 1), expr(&parts[1], indent + 1))
            }
            (_, MlExpr::Tuple(items)) if !items.is_empty() => format!("{c} {}", expr(arg, indent + c.len() + 1)),
            _ => format!("{c} ({})", expr(arg, indent + c.len() + 2)),
        },
        MlExpr::If(c, t, f) => {
            if c.is_atomic() && t.is_atomic() && f.is_atomic() {
                format!("(if {} then {} else {})", expr(c, indent), expr(t, indent), expr(f, indent))
            } else {
                format!(
                    "(if {}\n{}then {}\n{}else {})",
                    expr(c, indent + 4),
                    pad(indent + 1),
                    expr(t, indent + 6),
                    pad(indent + 1),
                    expr(f, indent + 6)
                )
            }
        }
        MlExpr::Case(s, arms) => {
            let mut out = format!("(case {} of", expr(s, indent + 6));
            for (i, (p, body)) in arms.iter().enumerate() {
                let lead = if i == 0 { "  " } else { "| " };
                let pat = pattern(p);
                out.push_str(&format!(
                    "\n{}{}{} => {}",
                    pad(indent + 1),
                    lead,
                    pat,
                    expr(body, indent + 3 + pat.len() + 4)
                ));
            }
            out.push(')');
            out
        }
        MlExpr::Let(..) | MlExpr::LetFun(..) => {
            let mut out = String::from("let");
            let mut cur = e;
            loop {
                match cur {
                    MlExpr::Let(p, bound, body) => {
                        let pat = pattern(p);
                        let inline = expr(bound, indent + 2 + 4 + pat.len() + 3);
                        if inline.contains('\n') {
                            // Multi-line right-hand sides start on their own line.
                            out.push_str(&format!(
                                "\n{}val {} =\n{}{}",
                                pad(indent + 2),
                                pat,
                                pad(indent + 4),
                                expr(bound, indent + 4)
                            ));
                        } else {
                            out.push_str(&format!("\n{}val {} = {}", pad(indent + 2), pat, inline));
                        }
                        cur = body;
                    }
                    MlExpr::LetFun(group, body) => {
                        out.push_str(&format!("\n{}{}", pad(indent + 2), fun_group(group, indent + 2)));
                        cur = body;
                    }
                    _ => break,
                }
            }
            out.push_str(&format!("\n{}in\n{}{}\n{}end", pad(indent), pad(indent + 2), expr(cur, indent + 2), pad(indent)));
            out
        }
        MlExpr::App(f, arg) => {
            let head = match f.as_ref() {
                MlExpr::Var(x) => x.clone(),
                other => format!("({})", expr(other, indent + 1)),
            };
            match arg.as_ref() {
                MlExpr::Tuple(items) if !items.is_empty() => format!("{head} {}", expr(arg, indent + head.len() + 1)),
                _ => format!("{head} ({})", expr(arg, indent + head.len() + 2)),
            }
        }
        MlExpr::Prim(op, a, b) => {
            format!("({} {} {})", expr(a, indent + 1), op.symbol(), expr(b, indent + 1))
        }
        MlExpr::PrintInt(a) => format!("print_int ({})", expr(a, indent + 11)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn let_then_print() {
        let e = MlExpr::let_(MlPat::var("x"), MlExpr::Int(5), MlExpr::PrintInt(Box::new(MlExpr::var("x"))));
        assert_eq!(expr(&e, 0), "let\n  val x = 5\nin\n  print_int (x)\nend");
    }

    #[test]
    fn negative_literals_use_tilde() {
        assert_eq!(expr(&MlExpr::Int(-1), 0), "~1");
        assert_eq!(expr(&MlExpr::Int(crate::INT_MIN), 0), "~4611686018427387904");
        assert_eq!(pattern(&MlPat::Int(-3)), "~3");
    }

    #[test]
    fn types_parenthesize_components() {
        let state = MlType::Tuple(vec![MlType::Int, MlType::list(MlType::Tuple(vec![MlType::Int, MlType::Named("heapval".into())]))]);
        let f = MlType::arrow(MlType::Tuple(vec![state.clone(), MlType::Int]), MlType::Tuple(vec![state, MlType::Bool]));
        let slot = MlType::Tuple(vec![f, MlType::option(MlType::Unit)]);
        assert_eq!(
            ty(&slot),
            "(((int * (int * heapval) list) * int) -> (int * (int * heapval) list) * bool) * unit option"
        );
    }

    #[test]
    fn list_and_option_syntax() {
        let e = MlExpr::cons(MlExpr::Tuple(vec![MlExpr::Int(0), MlExpr::var("v")]), MlExpr::nil());
        assert_eq!(expr(&e, 0), "((0, v) :: nil)");
        let p = MlPat::con("SOME", Some(MlPat::con("X_B", Some(MlPat::Tuple(vec![MlPat::Wild, MlPat::var("y")])))));
        assert_eq!(pattern(&p), "SOME (X_B (_, y))");
        assert_eq!(expr(&MlExpr::con("SOME", Some(MlExpr::con("NONE", None))), 0), "SOME (NONE)");
    }

    #[test]
    fn deterministic() {
        let p = MlProgram {
            header: vec!["test".into()],
            datatypes: vec![DataDecl {
                name: "heapval".into(),
                params: vec![],
                constructors: vec![ConDecl { name: "HArr".into(), arg: Some(MlType::list(MlType::Int)) }],
            }],
            decls: vec![],
            main: Some(MlExpr::PrintInt(Box::new(MlExpr::Int(0)))),
        };
        let a = pretty_print(&p);
        assert_eq!(a, pretty_print(&p.clone()));
        assert!(a.starts_with("(* test *)\n\ndatatype heapval =\n    HArr of int list\n"));
        assert!(a.ends_with("val _ =\n  print_int (0)\n"));
    }
}
