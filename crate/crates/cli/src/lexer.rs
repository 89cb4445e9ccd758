use std::fmt;

use thiserror::Error;

/// A syntax error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Int(String),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Star,
    Hash,
    Plus,
    Minus,
    Caret,
    Equals,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Int(s) => write!(f, "integer {s}"),
            TokenKind::Ident(s) => write!(f, "identifier {s}"),
            TokenKind::LParen => f.write_str("'('"),
            TokenKind::RParen => f.write_str("')'"),
            TokenKind::Comma => f.write_str("','"),
            TokenKind::Star => f.write_str("'*'"),
            TokenKind::Hash => f.write_str("'#'"),
            TokenKind::Plus => f.write_str("'+'"),
            TokenKind::Minus => f.write_str("'-'"),
            TokenKind::Caret => f.write_str("'^'"),
            TokenKind::Equals => f.write_str("'='"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (start_line, start_column) = (line, column);
        let simple = match c {
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ',' => Some(TokenKind::Comma),
            '*' => Some(TokenKind::Star),
            '#' => Some(TokenKind::Hash),
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '^' => Some(TokenKind::Caret),
            '=' => Some(TokenKind::Equals),
            _ => None,
        };
        if let Some(kind) = simple {
            chars.next();
            column += 1;
            tokens.push(Token {
                kind,
                line: start_line,
                column: start_column,
            });
            continue;
        }
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let mut word = String::new();
        let kind = if c.is_ascii_digit() {
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                word.push(d);
                chars.next();
            }
            TokenKind::Int(word.clone())
        } else if c.is_ascii_alphabetic() || c == '_' {
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                word.push(d);
                chars.next();
            }
            TokenKind::Ident(word.clone())
        } else {
            return Err(ParseError {
                line,
                column,
                message: format!("unexpected character {c:?}"),
            });
        };
        column += word.chars().count();
        tokens.push(Token {
            kind,
            line: start_line,
            column: start_column,
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        column,
    });
    Ok(tokens)
}

/// Cursor over a token stream with error helpers.
pub struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: tokenize(text)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub fn peek_kind(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    pub fn peek_nth_kind(&self, n: usize) -> &TokenKind {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    pub fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    pub fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<Token, ParseError> {
        if self.peek_kind() == kind {
            Ok(self.advance())
        } else {
            Err(self.error_here(format!("expected {what}, found {}", self.peek_kind())))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek_kind().clone() {
            TokenKind::Ident(s) => {
                self.advance();
                Ok(s)
            }
            other => Err(self.error_here(format!("expected {what}, found {other}"))),
        }
    }

    /// Non-negative integer fitting `u32`.
    pub fn expect_u32(&mut self, what: &str) -> Result<u32, ParseError> {
        match self.peek_kind().clone() {
            TokenKind::Int(s) => {
                let value = s
                    .parse::<u32>()
                    .map_err(|_| self.error_here(format!("{what} {s} is too large")))?;
                self.advance();
                Ok(value)
            }
            other => Err(self.error_here(format!("expected {what}, found {other}"))),
        }
    }

    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        if *self.peek_kind() == TokenKind::Eof {
            Ok(())
        } else {
            Err(self.error_here(format!("unexpected {}", self.peek_kind())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let toks = tokenize("3*CP(4)\n # x").unwrap();
        let cols: Vec<_> = toks.iter().map(|t| (t.line, t.column)).collect();
        assert_eq!(
            cols,
            [
                (1, 1),
                (1, 2),
                (1, 3),
                (1, 5),
                (1, 6),
                (1, 7),
                (2, 2),
                (2, 4),
                (2, 5)
            ]
        );
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("CP(4) & x").unwrap_err();
        assert_eq!((err.line, err.column), (1, 7));
    }
}
