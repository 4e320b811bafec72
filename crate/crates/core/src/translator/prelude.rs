//! Heap and list helpers emitted ahead of the translated program.
//!
//! States are `(counter, heap)`; the heap is an association list with the
//! most recent allocation first. Lookups of an absent key (including the
//! null id) fall off the end of a non-exhaustive match.

use super::encoding::ARRAY_CON;
use crate::ml::{FunBind, MlDecl, MlExpr, MlPat, PrimOp};

fn var(x: &str) -> MlExpr {
    MlExpr::var(x)
}

fn pvar(x: &str) -> MlPat {
    MlPat::var(x)
}

fn ptuple(names: &[&str]) -> MlPat {
    MlPat::Tuple(names.iter().map(|n| pvar(n)).collect())
}

fn fun(name: &str, param: MlPat, body: MlExpr) -> MlDecl {
    MlDecl::Fun(vec![FunBind { name: name.into(), param, body }])
}

fn eq(a: MlExpr, b: MlExpr) -> MlExpr {
    MlExpr::prim(PrimOp::Eq, a, b)
}

fn minus_one(x: &str) -> MlExpr {
    MlExpr::prim(PrimOp::Sub, var(x), MlExpr::Int(1))
}

fn pair(a: MlExpr, b: MlExpr) -> MlExpr {
    MlExpr::Tuple(vec![a, b])
}

fn cons_pat(head: MlPat, tail: &str) -> MlPat {
    MlPat::cons(head, pvar(tail))
}

fn read_array(then: MlExpr) -> MlExpr {
    MlExpr::case(
        MlExpr::call("heap_read", vec![var("st"), var("p")]),
        vec![(MlPat::con(ARRAY_CON, Some(pvar("xs"))), then)],
    )
}

pub fn prelude() -> Vec<MlDecl> {
    vec![
        // fun heap_lookup (p, hs) = case hs of (k, v) :: rest => if k = p then v else heap_lookup (p, rest)
        fun(
            "heap_lookup",
            ptuple(&["p", "hs"]),
            MlExpr::case(
                var("hs"),
                vec![(
                    cons_pat(ptuple(&["k", "v"]), "rest"),
                    MlExpr::if_(eq(var("k"), var("p")), var("v"), MlExpr::call("heap_lookup", vec![var("p"), var("rest")])),
                )],
            ),
        ),
        // Replaces the binding for p in place, keeping length and key order.
        fun(
            "heap_update",
            ptuple(&["p", "v", "hs"]),
            MlExpr::case(
                var("hs"),
                vec![(
                    cons_pat(ptuple(&["k", "w"]), "rest"),
                    MlExpr::if_(
                        eq(var("k"), var("p")),
                        MlExpr::cons(pair(var("k"), var("v")), var("rest")),
                        MlExpr::cons(
                            pair(var("k"), var("w")),
                            MlExpr::call("heap_update", vec![var("p"), var("v"), var("rest")]),
                        ),
                    ),
                )],
            ),
        ),
        // fun heap_alloc ((n, hs), v) = ((n + 1, (n, v) :: hs), n)
        fun(
            "heap_alloc",
            MlPat::Tuple(vec![ptuple(&["n", "hs"]), pvar("v")]),
            pair(
                pair(
                    MlExpr::prim(PrimOp::Add, var("n"), MlExpr::Int(1)),
                    MlExpr::cons(pair(var("n"), var("v")), var("hs")),
                ),
                var("n"),
            ),
        ),
        fun(
            "heap_read",
            MlPat::Tuple(vec![ptuple(&["n", "hs"]), pvar("p")]),
            MlExpr::call("heap_lookup", vec![var("p"), var("hs")]),
        ),
        fun(
            "heap_write",
            MlPat::Tuple(vec![ptuple(&["n", "hs"]), pvar("p"), pvar("v")]),
            pair(var("n"), MlExpr::call("heap_update", vec![var("p"), var("v"), var("hs")])),
        ),
        fun(
            "list_nth",
            ptuple(&["xs", "i"]),
            MlExpr::case(
                var("xs"),
                vec![(
                    cons_pat(pvar("x"), "rest"),
                    MlExpr::if_(
                        eq(var("i"), MlExpr::Int(0)),
                        var("x"),
                        MlExpr::call("list_nth", vec![var("rest"), minus_one("i")]),
                    ),
                )],
            ),
        ),
        fun(
            "list_set",
            ptuple(&["xs", "i", "v"]),
            MlExpr::case(
                var("xs"),
                vec![(
                    cons_pat(pvar("x"), "rest"),
                    MlExpr::if_(
                        eq(var("i"), MlExpr::Int(0)),
                        MlExpr::cons(var("v"), var("rest")),
                        MlExpr::cons(var("x"), MlExpr::call("list_set", vec![var("rest"), minus_one("i"), var("v")])),
                    ),
                )],
            ),
        ),
        fun(
            "list_length",
            pvar("xs"),
            MlExpr::case(
                var("xs"),
                vec![
                    (MlPat::con("nil", None), MlExpr::Int(0)),
                    (
                        cons_pat(MlPat::Wild, "rest"),
                        MlExpr::prim(PrimOp::Add, MlExpr::Int(1), MlExpr::app(var("list_length"), var("rest"))),
                    ),
                ],
            ),
        ),
        fun(
            "list_zeros",
            pvar("n"),
            MlExpr::if_(
                MlExpr::prim(PrimOp::Less, var("n"), MlExpr::Int(1)),
                MlExpr::nil(),
                MlExpr::cons(MlExpr::Int(0), MlExpr::app(var("list_zeros"), minus_one("n"))),
            ),
        ),
        fun(
            "array_new",
            ptuple(&["st", "n"]),
            MlExpr::call(
                "heap_alloc",
                vec![var("st"), MlExpr::con(ARRAY_CON, Some(MlExpr::app(var("list_zeros"), var("n"))))],
            ),
        ),
        fun(
            "array_get",
            ptuple(&["st", "p", "i"]),
            read_array(MlExpr::call("list_nth", vec![var("xs"), var("i")])),
        ),
        fun(
            "array_set",
            ptuple(&["st", "p", "i", "v"]),
            read_array(MlExpr::call(
                "heap_write",
                vec![
                    var("st"),
                    var("p"),
                    MlExpr::con(ARRAY_CON, Some(MlExpr::call("list_set", vec![var("xs"), var("i"), var("v")]))),
                ],
            )),
        ),
        fun("array_length", ptuple(&["st", "p"]), read_array(MlExpr::app(var("list_length"), var("xs")))),
    ]
}
