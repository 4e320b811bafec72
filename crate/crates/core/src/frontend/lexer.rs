use thiserror::Error;

use super::ast::{Pos, Span};
use crate::INT_MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Keyword,
    Ident,
    IntLit,
    Operator,
    Punct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
}

impl Token {
    pub fn line(&self) -> u32 {
        self.span.start.line
    }

    pub fn column(&self) -> u32 {
        self.span.start.col
    }

    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct LexError {
    pub pos: Pos,
    pub message: String,
}

pub const KEYWORDS: &[&str] = &[
    "class", "public", "static", "void", "main", "String", "extends", "return", "int", "boolean", "if",
    "else", "while", "true", "false", "this", "new", "length",
];

/// The print statement is lexed as one keyword token.
pub const PRINTLN: &str = "System.out.println";

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

struct Cursor<'a> {
    src: &'a str,
    offset: usize,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col, offset: self.offset }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.offset..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.rest().chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor { src: source, offset: 0, line: 1, col: 1 };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        let start = cur.pos();
        if c == '/' && cur.peek2() == Some('/') {
            while let Some(c) = cur.bump() {
                if c == '\n' {
                    break;
                }
            }
            continue;
        }
        if c == '/' && cur.peek2() == Some('*') {
            cur.bump();
            cur.bump();
            loop {
                match cur.bump() {
                    Some('*') if cur.peek() == Some('/') => {
                        cur.bump();
                        break;
                    }
                    Some(_) => {}
                    None => {
                        return Err(LexError { pos: start, message: "unterminated block comment".into() })
                    }
                }
            }
            continue;
        }

        let (kind, lexeme) = if c.is_ascii_alphabetic() {
            if cur.rest().starts_with(PRINTLN) && !continues_ident(&cur.rest()[PRINTLN.len()..]) {
                for _ in 0..PRINTLN.len() {
                    cur.bump();
                }
                (TokenKind::Keyword, PRINTLN.to_string())
            } else {
                let mut word = String::new();
                while let Some(c) = cur.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        cur.bump();
                    } else {
                        break;
                    }
                }
                let kind = if is_keyword(&word) { TokenKind::Keyword } else { TokenKind::Ident };
                (kind, word)
            }
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(c) = cur.peek() {
                if c.is_ascii_digit() {
                    digits.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            if cur.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
                return Err(LexError { pos: cur.pos(), message: "malformed integer literal".into() });
            }
            match digits.parse::<i64>() {
                Ok(v) if v <= INT_MAX => {}
                _ => {
                    return Err(LexError {
                        pos: start,
                        message: format!("integer literal {digits} exceeds the 63-bit range"),
                    })
                }
            }
            (TokenKind::IntLit, digits)
        } else if c == '&' {
            cur.bump();
            if cur.peek() != Some('&') {
                return Err(LexError { pos: start, message: "unexpected character '&'".into() });
            }
            cur.bump();
            (TokenKind::Operator, "&&".to_string())
        } else if "<+-*!=".contains(c) {
            cur.bump();
            (TokenKind::Operator, c.to_string())
        } else if "{}()[];,.".contains(c) {
            cur.bump();
            (TokenKind::Punct, c.to_string())
        } else {
            return Err(LexError { pos: start, message: format!("unexpected character {c:?}") });
        };
        tokens.push(Token { kind, lexeme, span: Span::new(start, cur.pos()) });
    }
    Ok(tokens)
}

fn continues_ident(rest: &str) -> bool {
    rest.chars().next().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src).unwrap().into_iter().map(|t| (t.kind, t.lexeme)).collect()
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").unwrap().is_empty());
        assert!(tokenize("  \n\t // only a comment\n/* and another */").unwrap().is_empty());
    }

    #[test]
    fn simple_assignment() {
        assert_eq!(
            kinds("x=1;"),
            vec![
                (TokenKind::Ident, "x".into()),
                (TokenKind::Operator, "=".into()),
                (TokenKind::IntLit, "1".into()),
                (TokenKind::Punct, ";".into()),
            ]
        );
    }

    #[test]
    fn bad_character_is_positioned() {
        let err = tokenize("1 $ 2").unwrap_err();
        assert_eq!((err.pos.line, err.pos.col), (1, 3));
    }

    #[test]
    fn positions_are_one_based() {
        let toks = tokenize("a\n  bb").unwrap();
        assert_eq!((toks[0].line(), toks[0].column()), (1, 1));
        assert_eq!((toks[1].line(), toks[1].column()), (2, 3));
    }

    #[test]
    fn println_and_keywords() {
        let toks = kinds("System.out.println(this.length)");
        assert_eq!(toks[0], (TokenKind::Keyword, PRINTLN.into()));
        assert_eq!(toks[2], (TokenKind::Keyword, "this".into()));
        assert_eq!(toks[4], (TokenKind::Keyword, "length".into()));
        // `System` on its own is an ordinary identifier.
        assert_eq!(kinds("System")[0].0, TokenKind::Ident);
    }

    #[test]
    fn literal_range() {
        assert!(tokenize("4611686018427387903").is_ok());
        assert!(tokenize("4611686018427387904").is_err());
        assert!(tokenize("99999999999999999999999").is_err());
    }

    #[test]
    fn unterminated_comment() {
        let err = tokenize("x /* nope").unwrap_err();
        assert_eq!(err.pos.col, 3);
    }

    #[test]
    fn lone_ampersand() {
        assert!(tokenize("a & b").is_err());
        assert_eq!(kinds("a&&b")[1], (TokenKind::Operator, "&&".into()));
    }
}
