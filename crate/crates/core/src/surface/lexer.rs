use std::fmt;

use thiserror::Error;

use super::{Pos, Span};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Ident(String),
    /// Numerals lex so that they can be reported by the parser; no rule
    /// accepts them.
    Number(String),
    Def,
    Postulate,
    Assert,
    Pi,
    Sig,
    Fun,
    Id,
    Refl,
    J,
    Fst,
    Snd,
    U0,
    U1,
    LParen,
    RParen,
    Colon,
    Comma,
    Semi,
    Arrow,
    Star,
    FatArrow,
    ColonEq,
    EqEq,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            TokenKind::Ident(name) => return write!(f, "identifier `{name}`"),
            TokenKind::Number(digits) => return write!(f, "number `{digits}`"),
            TokenKind::Def => "def",
            TokenKind::Postulate => "postulate",
            TokenKind::Assert => "assert",
            TokenKind::Pi => "Pi",
            TokenKind::Sig => "Sig",
            TokenKind::Fun => "fun",
            TokenKind::Id => "Id",
            TokenKind::Refl => "refl",
            TokenKind::J => "J",
            TokenKind::Fst => "fst",
            TokenKind::Snd => "snd",
            TokenKind::U0 => "U0",
            TokenKind::U1 => "U1",
            TokenKind::LParen => "(",
            TokenKind::RParen => ")",
            TokenKind::Colon => ":",
            TokenKind::Comma => ",",
            TokenKind::Semi => ";",
            TokenKind::Arrow => "->",
            TokenKind::Star => "*",
            TokenKind::FatArrow => "=>",
            TokenKind::ColonEq => ":=",
            TokenKind::EqEq => "==",
        };
        write!(f, "'{text}'")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("unexpected character {found:?}")]
pub struct LexError {
    pub found: char,
    pub span: Span,
}

fn keyword(word: &str) -> Option<TokenKind> {
    Some(match word {
        "def" => TokenKind::Def,
        "postulate" => TokenKind::Postulate,
        "assert" => TokenKind::Assert,
        "Pi" => TokenKind::Pi,
        "Sig" => TokenKind::Sig,
        "fun" => TokenKind::Fun,
        "Id" => TokenKind::Id,
        "refl" => TokenKind::Refl,
        "J" => TokenKind::J,
        "fst" => TokenKind::Fst,
        "snd" => TokenKind::Snd,
        "U0" => TokenKind::U0,
        "U1" => TokenKind::U1,
        _ => return None,
    })
}

fn unicode_alias(c: char) -> Option<TokenKind> {
    Some(match c {
        'Π' => TokenKind::Pi,
        'Σ' => TokenKind::Sig,
        'λ' => TokenKind::Fun,
        '→' => TokenKind::Arrow,
        '×' => TokenKind::Star,
        '≔' => TokenKind::ColonEq,
        _ => return None,
    })
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Cursor<'a> {
    source: &'a str,
    id: u32,
    pos: Pos,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.source[self.pos.offset..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        self.source[self.pos.offset..].chars().nth(1)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos.offset += c.len_utf8();
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: Pos) -> Span {
        Span::new(self.id, start, self.pos)
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    tokenize_source(source, 0)
}

/// Tokenizes `source`, tagging every span with the file id `id`.
pub fn tokenize_source(source: &str, id: u32) -> Result<Vec<Token>, LexError> {
    let mut cursor = Cursor {
        source,
        id,
        pos: Pos::START,
    };
    let mut tokens = Vec::new();
    while let Some(c) = cursor.peek() {
        let start = cursor.pos;
        if c.is_whitespace() {
            cursor.bump();
            continue;
        }
        if c == '-' && cursor.peek2() == Some('-') {
            while cursor.peek().is_some_and(|c| c != '\n') {
                cursor.bump();
            }
            continue;
        }
        let kind = if is_ident_start(c) {
            while cursor.peek().is_some_and(is_ident_continue) {
                cursor.bump();
            }
            let word = &source[start.offset..cursor.pos.offset];
            keyword(word).unwrap_or_else(|| TokenKind::Ident(word.to_owned()))
        } else if c.is_ascii_digit() {
            while cursor.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                cursor.bump();
            }
            TokenKind::Number(source[start.offset..cursor.pos.offset].to_owned())
        } else if let Some(kind) = unicode_alias(c) {
            cursor.bump();
            kind
        } else {
            cursor.bump();
            let next = cursor.peek();
            let two = |cursor: &mut Cursor, kind| {
                cursor.bump();
                kind
            };
            match (c, next) {
                ('(', _) => TokenKind::LParen,
                (')', _) => TokenKind::RParen,
                (',', _) => TokenKind::Comma,
                (';', _) => TokenKind::Semi,
                ('*', _) => TokenKind::Star,
                (':', Some('=')) => two(&mut cursor, TokenKind::ColonEq),
                (':', _) => TokenKind::Colon,
                ('-', Some('>')) => two(&mut cursor, TokenKind::Arrow),
                ('=', Some('>')) => two(&mut cursor, TokenKind::FatArrow),
                ('=', Some('=')) => two(&mut cursor, TokenKind::EqEq),
                _ => {
                    return Err(LexError {
                        found: c,
                        span: cursor.span_from(start),
                    });
                }
            }
        };
        tokens.push(Token {
            kind,
            span: cursor.span_from(start),
        });
    }
    Ok(tokens)
}
