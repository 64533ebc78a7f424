//! Recursive-descent parser for the polynomial expression grammar:
//! integers, `a/b`, the imaginary unit `i`, coordinate names, `+ - * / ^ ( )`.
//! Division is only allowed by a nonzero constant and `^` takes a
//! nonnegative integer literal.

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{GaussRational, Patch, Poly, ScalarError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(Tok, usize), ScalarError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos].parse().expect("digits parse as an integer");
                return Ok((Tok::Num(n), start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                    self.pos += 1;
                }
                return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
            }
            _ => {
                let ch = self.src[start..].chars().next().unwrap_or('?');
                return Err(ScalarError::Parse { pos: start, msg: alloc::format!("unexpected character `{ch}`") });
            }
        };
        self.pos += 1;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: usize,
    patch: &'a Patch,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, patch: &'a Patch) -> Result<Self, ScalarError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok, pos) = lexer.next()?;
        Ok(Self { lexer, tok, pos, patch })
    }

    fn bump(&mut self) -> Result<(), ScalarError> {
        let (tok, pos) = self.lexer.next()?;
        self.tok = tok;
        self.pos = pos;
        Ok(())
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ScalarError> {
        Err(ScalarError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn nvars(&self) -> usize {
        self.patch.dim()
    }

    fn expr(&mut self) -> Result<Poly, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.bump()?;
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump()?;
                    let at = self.pos;
                    let den = self.unary()?;
                    let c = match den.as_constant() {
                        Some(c) if !c.is_zero() => c,
                        Some(_) => return Err(ScalarError::Parse { pos: at, msg: "division by zero".into() }),
                        None => {
                            return Err(ScalarError::Parse { pos: at, msg: "division by a non-constant expression".into() })
                        }
                    };
                    acc = acc.scale(&c.inv().expect("nonzero"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ScalarError> {
        match self.tok {
            Tok::Minus => {
                self.bump()?;
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ScalarError> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let Tok::Num(n) = &self.tok else {
            return self.err("expected a nonnegative integer exponent after `^`");
        };
        let Some(k) = n.to_u32() else {
            return self.err("exponent too large");
        };
        self.bump()?;
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<Poly, ScalarError> {
        match core::mem::replace(&mut self.tok, Tok::End) {
            Tok::Num(n) => {
                self.bump()?;
                Ok(Poly::constant(self.nvars(), GaussRational::real(BigRational::from_integer(n))))
            }
            Tok::Ident(name) => {
                let at = self.pos;
                self.bump()?;
                if name == "i" {
                    return Ok(Poly::constant(self.nvars(), GaussRational::i()));
                }
                match self.patch.index_of(&name) {
                    Some(k) => Ok(Poly::var(self.nvars(), k)),
                    None => Err(ScalarError::UnknownName { name, pos: at }),
                }
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of expression"),
            other => {
                self.tok = other;
                self.err("expected a number, coordinate, `i` or `(`")
            }
        }
    }
}

/// Parses `text` into a canonical polynomial on `patch`.
pub fn parse_poly(text: &str, patch: &Patch) -> Result<Poly, ScalarError> {
    let mut p = Parser::new(text, patch)?;
    let out = p.expr()?;
    if p.tok != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

impl Poly {
    /// Shorthand for [`parse_poly`].
    pub fn parse(text: &str, patch: &Patch) -> Result<Poly, ScalarError> {
        parse_poly(text, patch)
    }
}
