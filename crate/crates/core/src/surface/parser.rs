use std::fmt;

use thiserror::Error;

use super::lexer::{tokenize_source, Token, TokenKind};
use super::{
    Binder, Keyword, Pos, SourceError, Span, SurfaceDecl, SurfaceDeclKind, SurfaceKind,
    SurfaceModule, SurfaceTerm,
};
use crate::syntax::Level;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub struct ParseError {
    /// Descriptions of the tokens that would have been accepted.
    pub expected: Vec<String>,
    /// The offending token, or `None` at end of input.
    pub found: Option<String>,
    pub span: Span,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expected.as_slice() {
            [one] => write!(f, "expected {one}")?,
            many => write!(f, "expected one of {}", many.join(", "))?,
        }
        match &self.found {
            Some(found) => write!(f, ", found {found}"),
            None => write!(f, ", found end of input"),
        }
    }
}

/// Tokenizes and parses a source text.
pub fn parse(source: &str) -> Result<SurfaceModule, SourceError> {
    parse_source(source, 0)
}

/// Like [`parse`], tagging spans with the file id `id`.
pub fn parse_source(source: &str, id: u32) -> Result<SurfaceModule, SourceError> {
    let tokens = tokenize_source(source, id)?;
    let end = tokens
        .last()
        .map_or(Span::new(id, Pos::START, Pos::START), |t| t.span);
    let end = Span::new(id, end.end, end.end);
    Ok(Parser {
        tokens: &tokens,
        pos: 0,
        end,
    }
    .module()?)
}

pub fn parse_module(tokens: &[Token]) -> Result<SurfaceModule, ParseError> {
    let end = tokens
        .last()
        .map_or(Span::new(0, Pos::START, Pos::START), |t| {
            Span::new(t.span.source, t.span.end, t.span.end)
        });
    Parser {
        tokens,
        pos: 0,
        end,
    }
    .module()
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: Span,
}

type PResult<T> = Result<T, ParseError>;

fn is_atom_start(kind: &TokenKind) -> bool {
    matches!(
        kind,
        TokenKind::Ident(_) | TokenKind::U0 | TokenKind::U1 | TokenKind::LParen
    )
}

fn keyword_of(kind: &TokenKind) -> Option<Keyword> {
    Some(match kind {
        TokenKind::Fst => Keyword::Fst,
        TokenKind::Snd => Keyword::Snd,
        TokenKind::Refl => Keyword::Refl,
        TokenKind::Id => Keyword::Id,
        TokenKind::J => Keyword::J,
        _ => return None,
    })
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&'a TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn bump(&mut self) -> &'a Token {
        let token = &self.tokens[self.pos];
        self.pos += 1;
        token
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos - 1].span
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let (found, span) = match self.peek() {
            Some(token) => (Some(token.kind.to_string()), token.span),
            None => (None, self.end),
        };
        Err(ParseError {
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
            span,
        })
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<&'a Token> {
        if self.peek_kind() == Some(&kind) {
            Ok(self.bump())
        } else {
            self.error(&[&kind.to_string()])
        }
    }

    fn ident(&mut self) -> PResult<Binder> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Ident(name),
                span,
            }) => {
                self.pos += 1;
                Ok(Binder {
                    name: name.clone(),
                    span: *span,
                })
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn binders(&mut self) -> PResult<Vec<Binder>> {
        let mut binders = vec![self.ident()?];
        while let Some(TokenKind::Ident(_)) = self.peek_kind() {
            binders.push(self.ident()?);
        }
        Ok(binders)
    }

    fn module(&mut self) -> PResult<SurfaceModule> {
        let mut decls = Vec::new();
        while self.peek().is_some() {
            decls.push(self.decl()?);
        }
        Ok(SurfaceModule { decls })
    }

    fn decl(&mut self) -> PResult<SurfaceDecl> {
        let start = match self.peek() {
            Some(token) => token.span,
            None => return self.error(&["'def'", "'postulate'", "'assert'"]),
        };
        let kind = match self.peek_kind() {
            Some(TokenKind::Def) => {
                self.bump();
                let name = self.ident()?;
                self.expect(TokenKind::Colon)?;
                let ty = self.term()?;
                self.expect(TokenKind::ColonEq)?;
                let body = self.term()?;
                SurfaceDeclKind::Def { name, ty, body }
            }
            Some(TokenKind::Postulate) => {
                self.bump();
                let name = self.ident()?;
                self.expect(TokenKind::Colon)?;
                let ty = self.term()?;
                SurfaceDeclKind::Postulate { name, ty }
            }
            Some(TokenKind::Assert) => {
                self.bump();
                let lhs = self.term()?;
                self.expect(TokenKind::EqEq)?;
                let rhs = self.term()?;
                self.expect(TokenKind::Colon)?;
                let ty = self.term()?;
                SurfaceDeclKind::Assert { lhs, rhs, ty }
            }
            _ => return self.error(&["'def'", "'postulate'", "'assert'"]),
        };
        let semi = self.expect(TokenKind::Semi)?;
        Ok(SurfaceDecl {
            kind,
            span: start.merge(semi.span),
        })
    }

    fn term(&mut self) -> PResult<SurfaceTerm> {
        match self.peek_kind() {
            Some(TokenKind::Pi | TokenKind::Sig) => {
                let start = self.bump();
                self.expect(TokenKind::LParen)?;
                let binders = self.binders()?;
                self.expect(TokenKind::Colon)?;
                let domain = self.term()?;
                self.expect(TokenKind::RParen)?;
                self.expect(TokenKind::Comma)?;
                let body = self.term()?;
                let span = start.span.merge(body.span);
                let kind = if start.kind == TokenKind::Pi {
                    SurfaceKind::Pi(binders, Box::new(domain), Box::new(body))
                } else {
                    SurfaceKind::Sigma(binders, Box::new(domain), Box::new(body))
                };
                Ok(SurfaceTerm { kind, span })
            }
            Some(TokenKind::Fun) => {
                let start = self.bump().span;
                let binders = self.binders()?;
                self.expect(TokenKind::FatArrow)?;
                let body = self.term()?;
                let span = start.merge(body.span);
                Ok(SurfaceTerm {
                    kind: SurfaceKind::Fun(binders, Box::new(body)),
                    span,
                })
            }
            _ => {
                let lhs = self.prod()?;
                if self.peek_kind() == Some(&TokenKind::Arrow) {
                    self.bump();
                    let rhs = self.term()?;
                    let span = lhs.span.merge(rhs.span);
                    Ok(SurfaceTerm {
                        kind: SurfaceKind::Arrow(Box::new(lhs), Box::new(rhs)),
                        span,
                    })
                } else {
                    Ok(lhs)
                }
            }
        }
    }

    fn prod(&mut self) -> PResult<SurfaceTerm> {
        let lhs = self.app()?;
        if self.peek_kind() != Some(&TokenKind::Star) {
            return Ok(lhs);
        }
        self.bump();
        let rhs = match self.peek_kind() {
            Some(TokenKind::Pi | TokenKind::Sig | TokenKind::Fun) => self.term()?,
            _ => self.prod()?,
        };
        let span = lhs.span.merge(rhs.span);
        Ok(SurfaceTerm {
            kind: SurfaceKind::Product(Box::new(lhs), Box::new(rhs)),
            span,
        })
    }

    fn app(&mut self) -> PResult<SurfaceTerm> {
        if let Some(keyword) = self.peek_kind().and_then(keyword_of) {
            let start = self.bump().span;
            let mut args = Vec::new();
            while self.peek_kind().is_some_and(is_atom_start) {
                args.push(self.atom()?);
            }
            let span = args.last().map_or(start, |a| start.merge(a.span));
            return Ok(SurfaceTerm {
                kind: SurfaceKind::Prim(keyword, args),
                span,
            });
        }
        let mut fun = self.atom()?;
        while self.peek_kind().is_some_and(is_atom_start) {
            let arg = self.atom()?;
            let span = fun.span.merge(arg.span);
            fun = SurfaceTerm {
                kind: SurfaceKind::App(Box::new(fun), Box::new(arg)),
                span,
            };
        }
        Ok(fun)
    }

    fn atom(&mut self) -> PResult<SurfaceTerm> {
        let kind = match self.peek_kind() {
            Some(TokenKind::Ident(name)) => SurfaceKind::Var(name.clone()),
            Some(TokenKind::U0) => SurfaceKind::Universe(Level::U0),
            Some(TokenKind::U1) => SurfaceKind::Universe(Level::U1),
            Some(TokenKind::LParen) => {
                let start = self.bump().span;
                let first = self.term()?;
                let kind = if self.peek_kind() == Some(&TokenKind::Comma) {
                    self.bump();
                    let second = self.term()?;
                    self.expect(TokenKind::RParen)?;
                    SurfaceKind::Pair(Box::new(first), Box::new(second))
                } else if self.peek_kind() == Some(&TokenKind::RParen) {
                    self.bump();
                    first.kind
                } else {
                    return self.error(&["','", "')'"]);
                };
                return Ok(SurfaceTerm {
                    kind,
                    span: start.merge(self.prev_span()),
                });
            }
            _ => return self.error(&["identifier", "'U0'", "'U1'", "'('"]),
        };
        let span = self.bump().span;
        Ok(SurfaceTerm { kind, span })
    }
}
