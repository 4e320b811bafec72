mod common;

use common::*;
use proptest::prelude::*;

use mj2ml::frontend::ast::{erase_spans, Expr, ExprKind, Program, Stmt, StmtKind};
use mj2ml::frontend::{parse_source, print_program, tokenize};
use mj2ml::harness::{diff_one, generate_random_program, DiffInput, Verdict};
use mj2ml::mj_interp::interpret_mj;
use mj2ml::ml::{eval_ml, validate_core, FunBind, MlExpr, MlPat, MlProgram, PrimOp};
use mj2ml::sema::analyze;
use mj2ml::translator::translate;
use mj2ml::{checked_int, IntOp, Termination, INT_MAX, INT_MIN};

fn strip_expr(e: &mut Expr) {
    if let ExprKind::Paren(inner) = &mut e.kind {
        let inner = std::mem::replace(inner.as_mut(), Expr::synth(ExprKind::True));
        *e = inner;
        strip_expr(e);
        return;
    }
    match &mut e.kind {
        ExprKind::Binary(_, l, r) | ExprKind::ArrayIndex(l, r) => {
            strip_expr(l);
            strip_expr(r);
        }
        ExprKind::Not(x) | ExprKind::ArrayLength(x) | ExprKind::NewIntArray(x) => strip_expr(x),
        ExprKind::MethodCall(r, _, args) => {
            strip_expr(r);
            args.iter_mut().for_each(strip_expr);
        }
        _ => {}
    }
}

fn strip_stmt(s: &mut Stmt) {
    match &mut s.kind {
        StmtKind::Block(b) => b.iter_mut().for_each(strip_stmt),
        StmtKind::If(c, t, e) => {
            strip_expr(c);
            strip_stmt(t);
            strip_stmt(e);
        }
        StmtKind::While(c, b) => {
            strip_expr(c);
            strip_stmt(b);
        }
        StmtKind::Println(e) | StmtKind::Assign(_, e) => strip_expr(e),
        StmtKind::ArrayAssign(_, i, v) => {
            strip_expr(i);
            strip_expr(v);
        }
    }
}

/// Spans erased and grouping parentheses removed.
fn normalized(mut p: Program) -> Program {
    erase_spans(&mut p);
    p.main.body.iter_mut().for_each(strip_stmt);
    for c in &mut p.classes {
        for m in &mut c.methods {
            m.body.iter_mut().for_each(strip_stmt);
            strip_expr(&mut m.return_expr);
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn front_end_never_panics(s in "[ -~\n]{0,200}") {
        let _ = parse_source(&s);
    }

    #[test]
    fn truncated_corpus_never_panics(cut in 0usize..4000, which in 0usize..8) {
        let src = corpus_source(CORPUS[which]);
        let cut = cut.min(src.len());
        if let Ok(p) = parse_source(&src[..cut]) {
            let _ = analyze(&p);
        }
    }

    #[test]
    fn token_spans_slice_their_lexemes(s in "[a-z0-9 (){};=<+*!&\n-]{0,120}") {
        if let Ok(tokens) = tokenize(&s) {
            for t in tokens {
                prop_assert_eq!(&s[t.span.start.offset..t.span.end.offset], t.lexeme.as_str());
            }
        }
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>(), size in 5usize..60) {
        let p = generate_random_program(seed, size);
        let text = print_program(&p);
        let reparsed = parse_source(&text).unwrap();
        prop_assert_eq!(print_program(&reparsed), text.clone());
        prop_assert_eq!(normalized(reparsed), normalized(p));
    }

    #[test]
    fn generator_is_deterministic_and_well_typed(seed in any::<u64>(), size in 1usize..80) {
        let p = generate_random_program(seed, size);
        prop_assert_eq!(print_program(&p), print_program(&generate_random_program(seed, size)));
        prop_assert!(analyze(&p).is_ok());
    }

    #[test]
    fn random_programs_agree(seed in any::<u64>()) {
        let input = DiffInput::Ast { name: "p".into(), program: generate_random_program(seed, 40) };
        let row = diff_one(&input, mj2ml::DEFAULT_FUEL);
        prop_assert_eq!(row.verdict, Verdict::Match, "seed {}: {:?} vs {:?}", seed, row.mj, row.ml);
    }

    #[test]
    fn random_translations_are_core(seed in any::<u64>()) {
        let p = generate_random_program(seed, 30);
        let t = analyze(&p).unwrap();
        prop_assert!(validate_core(&translate(&p, &t).unwrap()).is_empty());
    }

    #[test]
    fn fuel_is_monotone(seed in 0u64..1000, cut in 0u64..5000) {
        let p = generate_random_program(seed, 20);
        let t = analyze(&p).unwrap();
        let ml = translate(&p, &t).unwrap();
        let full_mj = interpret_mj(&p, &t, u64::MAX / 2).outcome;
        let full_ml = eval_ml(&ml, u64::MAX / 2);
        prop_assert!(full_mj.is_clean() && full_ml.is_clean());
        for (partial, full) in [
            (interpret_mj(&p, &t, cut).outcome, &full_mj),
            (eval_ml(&ml, cut), &full_ml),
        ] {
            match partial.termination {
                Termination::Completed => prop_assert_eq!(&partial.output, &full.output),
                Termination::FuelExhausted => prop_assert!(full.output.starts_with(&partial.output)),
                Termination::Fault(f) => prop_assert!(false, "unexpected fault {}", f),
            }
        }
    }

    #[test]
    fn ml_evaluation_is_deterministic(seed in 0u64..1000) {
        let p = generate_random_program(seed, 30);
        let t = analyze(&p).unwrap();
        let ml = translate(&p, &t).unwrap();
        prop_assert_eq!(eval_ml(&ml, 1 << 30), eval_ml(&ml, 1 << 30));
    }

    #[test]
    fn checked_arithmetic_matches_wide_arithmetic(a in INT_MIN..=INT_MAX, b in INT_MIN..=INT_MAX) {
        for (op, wide) in [
            (IntOp::Add, a as i128 + b as i128),
            (IntOp::Sub, a as i128 - b as i128),
            (IntOp::Mul, a as i128 * b as i128),
        ] {
            let in_range = (INT_MIN as i128..=INT_MAX as i128).contains(&wide);
            prop_assert_eq!(checked_int(op, a, b), if in_range { Some(wide as i64) } else { None });
        }
    }

    /// `let x = a; fun f y = x + y; let x = b in f c` prints a + c.
    #[test]
    fn closures_are_lexically_scoped(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000) {
        let body = MlExpr::let_(
            MlPat::var("x"),
            MlExpr::Int(a),
            MlExpr::LetFun(
                vec![FunBind {
                    name: "f".into(),
                    param: MlPat::var("y"),
                    body: MlExpr::prim(PrimOp::Add, MlExpr::var("x"), MlExpr::var("y")),
                }],
                Box::new(MlExpr::let_(
                    MlPat::var("x"),
                    MlExpr::Int(b),
                    MlExpr::PrintInt(Box::new(MlExpr::app(MlExpr::var("f"), MlExpr::Int(c)))),
                )),
            ),
        );
        let p = MlProgram { main: Some(body), ..Default::default() };
        prop_assert_eq!(eval_ml(&p, 1000).output, vec![a + c]);
    }
}
