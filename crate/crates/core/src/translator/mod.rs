//! MiniJava to core ML translation.
//!
//! Each method becomes `meth_<C>'<m> (st, self, args...)` returning
//! `(st', result)`; each class gets `new_<C> st` returning `(st', id)`.
//! The main body threads the state from `(0, nil)`.

pub mod body;
pub mod encoding;
pub mod prelude;

use thiserror::Error;

use self::body::{local_defaults, wrap, BodyCtx, Binding, SELF};
use self::encoding::{constructor_function, method_function, Layout};
use crate::frontend::ast::Program;
use crate::ml::{FunBind, MlDecl, MlExpr, MlPat, MlProgram};
use crate::sema::{Checker, ClassTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("internal translator error: {0}")]
    Internal(String),
}

/// How the heap is represented in emitted code. Only association lists
/// are implemented.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum HeapEncoding {
    #[default]
    Assoc,
}

#[derive(Debug, Clone, Default)]
pub struct TranslateOptions {
    /// Name written into the header comment.
    pub source_name: Option<String>,
    pub heap_encoding: HeapEncoding,
}

pub fn translate(program: &Program, table: &ClassTable) -> Result<MlProgram, TranslateError> {
    translate_with(program, table, &TranslateOptions::default())
}

pub fn translate_with(
    program: &Program,
    table: &ClassTable,
    options: &TranslateOptions,
) -> Result<MlProgram, TranslateError> {
    let layout = Layout::new(table);
    let source = options.source_name.as_deref().unwrap_or("<input>");
    let header = vec![
        format!("Generated by mj2ml {} from {}", crate::TRANSLATOR_VERSION, source),
        "Names: mj_<var>_<n> locals, st_<n> heap states, t_<n> temporaries, loop_<n> loops,".to_string(),
        "meth_<Class>'<method> methods, new_<Class> constructors, C_/X_ object constructors.".to_string(),
    ];

    let mut decls = prelude::prelude();
    let mut group = Vec::new();
    for class in table.classes() {
        group.push(FunBind {
            name: constructor_function(&class.name),
            param: MlPat::var("st"),
            body: MlExpr::call("heap_alloc", vec![MlExpr::var("st"), layout.fresh_instance(&class.name)]),
        });
    }
    for class in &program.classes {
        for method in &class.methods {
            group.push(translate_method(table, &class.name, method)?);
        }
    }
    if !group.is_empty() {
        decls.push(MlDecl::Fun(group));
    }

    let mut ctx = BodyCtx::new(table, Checker::for_main(table, &program.main.arg_name), Vec::new());
    let initial = ctx.state().to_string();
    ctx.stmts(&program.main.body)?;
    let mut bindings = vec![Binding::Val(MlPat::var(initial), MlExpr::Tuple(vec![MlExpr::Int(0), MlExpr::nil()]))];
    bindings.extend(ctx.take_bindings());
    let main = wrap(bindings, MlExpr::var(ctx.state()));

    Ok(MlProgram { header, datatypes: layout.datatypes(), decls, main: Some(main) })
}

fn translate_method<'a>(
    table: &'a ClassTable,
    class: &'a str,
    method: &'a crate::frontend::ast::MethodDecl,
) -> Result<FunBind, TranslateError> {
    let vars: Vec<&str> = method.formals.iter().chain(&method.locals).map(|v| v.name.as_str()).collect();
    let mut ctx = BodyCtx::new(table, Checker::for_method(table, class, method), vars);
    let mut param = vec![MlPat::var(ctx.state()), MlPat::var(SELF)];
    param.extend(method.formals.iter().map(|f| MlPat::var(ctx.var_name(&f.name))));
    for b in local_defaults(&ctx, &method.locals) {
        ctx.push_binding(b);
    }
    ctx.stmts(&method.body)?;
    let result = ctx.expr(&method.return_expr)?;
    let body = wrap(ctx.take_bindings(), MlExpr::Tuple(vec![MlExpr::var(ctx.state()), result]));
    Ok(FunBind { name: method_function(class, &method.name), param: MlPat::Tuple(param), body })
}
