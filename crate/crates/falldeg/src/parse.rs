//! Text grammar for polynomials.
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*        ('*' may be omitted)
//! factor := coeff | var ['^' int]
//! coeff  := int | '[' int (',' int)* ']'
//! ```
//!
//! Variables are the ring's variable names (`x0`, `x1_2`, ...). Integer
//! coefficients are taken modulo p; bracketed coefficients list the flat
//! prime-field coordinates of an extension element, lowest first.

use crate::error::{Error, Result};
use crate::poly::{Poly, RingCtx};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> u8 {
        let b = self.src[self.pos];
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        b
    }

    fn next(&mut self) -> Result<(Tok, usize, usize)> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, line, col));
        }
        let b = self.bump();
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                let mut v = (b - b'0') as u64;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    let d = self.bump() - b'0';
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as u64))
                        .ok_or_else(|| self.err("integer literal too large"))?;
                }
                Tok::Int(v)
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = self.pos - 1;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.bump();
                }
                Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character '{}'", other as char),
                })
            }
        };
        Ok((tok, line, col))
    }
}

struct Parser<'a> {
    ring: &'a RingCtx,
    lexer: Lexer<'a>,
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a RingCtx, src: &'a str) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let (tok, line, col) = lexer.next()?;
        Ok(Parser { ring, lexer, tok, line, col })
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn advance(&mut self) -> Result<()> {
        let (tok, line, col) = self.lexer.next()?;
        self.tok = tok;
        self.line = line;
        self.col = col;
        Ok(())
    }

    fn parse_poly(&mut self) -> Result<Poly> {
        let mut acc = self.ring.zero();
        let mut negate = false;
        if self.tok == Tok::Minus {
            negate = true;
            self.advance()?;
        }
        loop {
            let term = self.parse_term()?;
            acc = if negate { acc.sub(&term)? } else { acc.add(&term)? };
            match self.tok {
                Tok::Plus => {
                    negate = false;
                    self.advance()?;
                }
                Tok::Minus => {
                    negate = true;
                    self.advance()?;
                }
                Tok::Eof => return Ok(acc),
                _ => return Err(self.err(format!("unexpected token {:?}", self.tok))),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let mut acc = self.parse_factor()?;
        loop {
            match &self.tok {
                Tok::Star => {
                    self.advance()?;
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f)?;
                }
                // implied multiplication: a factor starts right away
                Tok::Int(_) | Tok::Ident(_) | Tok::LBracket => {
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Poly> {
        match self.tok.clone() {
            Tok::Int(v) => {
                self.advance()?;
                let p = self.ring.field().p();
                Ok(self.ring.constant(v % p))
            }
            Tok::LBracket => {
                let code = self.parse_bracket_coeff()?;
                Ok(self.ring.constant(code))
            }
            Tok::Ident(name) => {
                let var = self
                    .ring
                    .var_names()
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| self.err(format!("unknown variable '{}'", name)))?;
                self.advance()?;
                let mut e = 1u32;
                if self.tok == Tok::Caret {
                    self.advance()?;
                    match self.tok {
                        Tok::Int(v) if v <= u32::MAX as u64 => {
                            e = v as u32;
                            self.advance()?;
                        }
                        _ => return Err(self.err("expected exponent after '^'")),
                    }
                }
                let mut mono = vec![0u32; self.ring.nvars()];
                mono[var] = e;
                Ok(self.ring.monomial(mono, 1))
            }
            _ => Err(self.err(format!("expected a factor, found {:?}", self.tok))),
        }
    }

    fn parse_bracket_coeff(&mut self) -> Result<u64> {
        debug_assert_eq!(self.tok, Tok::LBracket);
        self.advance()?;
        let field = self.ring.field();
        let p = field.p();
        let mut coords = Vec::new();
        loop {
            match self.tok {
                Tok::Int(v) => {
                    coords.push(v % p);
                    self.advance()?;
                }
                _ => return Err(self.err("expected coordinate integer")),
            }
            match self.tok {
                Tok::Comma => self.advance()?,
                Tok::RBracket => {
                    self.advance()?;
                    break;
                }
                _ => return Err(self.err("expected ',' or ']'")),
            }
        }
        if coords.len() != field.dim() {
            return Err(self.err(format!(
                "coefficient has {} coordinates, field needs {}",
                coords.len(),
                field.dim()
            )));
        }
        Ok(field.from_coords(&coords))
    }
}

pub fn parse_poly(ring: &RingCtx, text: &str) -> Result<Poly> {
    Parser::new(ring, text)?.parse_poly()
}

#[cfg(test)]
mod tests {
    use crate::field::FieldCtx;
    use crate::poly::{Poly, RingCtx};

    #[test]
    fn parse_prime_field() {
        let r = RingCtx::new(FieldCtx::prime(3).unwrap(), 2);
        let f = Poly::parse(&r, "2*x0^2*x1 + x0 - 1").unwrap();
        let expect = r
            .monomial(vec![2, 1], 2)
            .add(&r.var(0))
            .unwrap()
            .add(&r.constant(2))
            .unwrap();
        assert_eq!(f, expect);
        // implied multiplication and whitespace insensitivity
        assert_eq!(Poly::parse(&r, "2x0^2x1+x0+2").unwrap(), expect);
    }

    #[test]
    fn parse_extension_coeff() {
        let f4 = FieldCtx::tower(2, &[2]).unwrap();
        let r = RingCtx::new(f4, 1);
        let f = Poly::parse(&r, "[0,1]*x0 + [1,1]").unwrap();
        assert_eq!(f.coeff(&[1]), 2);
        assert_eq!(f.coeff(&[0]), 3);
    }

    #[test]
    fn round_trip_canonical() {
        let f4 = FieldCtx::tower(2, &[2]).unwrap();
        let r = RingCtx::new(f4, 2);
        for text in [
            "0",
            "x0^2*x1 + [0,1]*x0 + [1,1]",
            "x1^5 + x0",
            "[1,0]",
        ] {
            let f = Poly::parse(&r, text).unwrap();
            let s = f.to_canonical_string();
            assert_eq!(s, text, "canonical form should match");
            assert_eq!(Poly::parse(&r, &s).unwrap(), f);
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let r = RingCtx::new(FieldCtx::prime(2).unwrap(), 1);
        let e = Poly::parse(&r, "x0 + \n  y3").unwrap_err();
        match e {
            crate::Error::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                assert_eq!(col, 3);
            }
            other => panic!("unexpected error {:?}", other),
        }
        assert!(Poly::parse(&r, "x0 +").is_err());
        assert!(Poly::parse(&r, "x0 ^").is_err());
        assert!(Poly::parse(&r, "[1,0]").is_err()); // wrong arity for GF(2)
    }
}
