//! Lexing, parsing and printing of MiniJava source.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod pretty;

use thiserror::Error;

pub use ast::{Pos, Program, Span};
pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use parser::{parse, parse_expr, ParseError};
pub use pretty::{print_expr, print_program};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn pos(&self) -> Pos {
        match self {
            SyntaxError::Lex(e) => e.pos,
            SyntaxError::Parse(e) => e.pos,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            SyntaxError::Lex(e) => &e.message,
            SyntaxError::Parse(e) => &e.message,
        }
    }
}

pub fn parse_source(source: &str) -> Result<Program, SyntaxError> {
    let tokens = tokenize(source)?;
    Ok(parse(&tokens)?)
}
