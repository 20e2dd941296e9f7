//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' ['-'] INT]
//! atom   := INT ['/' INT] | VAR | '(' expr ')'
//! VAR    := 'x' N (N >= 1) | 'z' N (N >= 0) | 't' [N]
//! ```
//!
//! `x1` and `t1` (or a bare `t`) name variable index 0; `z0` names index 0 of a
//! homogeneous ring. Negative exponents are accepted only in Laurent mode.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, ParseError, Result};
use crate::ring::{Domain, LaurentPoly, Monomial, Ring};

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Admit negative exponents.
    pub laurent: bool,
    /// Minimum number of variables of the resulting ring.
    pub nvars: Option<usize>,
    /// Force coefficients over Q even when all are integral.
    pub rational: bool,
}

impl ParseOptions {
    pub fn laurent() -> Self {
        ParseOptions { laurent: true, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(VarKind, usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VarKind {
    X,
    Z,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError { line, column, message: message.into() })
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, line: tl, column: tc });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line: tl, column: tc });
            continue;
        }
        if c == 'x' || c == 'z' || c == 't' {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start + 1..i].iter().collect();
            col += i - start;
            let tok = match (c, digits.is_empty()) {
                ('t', true) => Tok::Var(VarKind::X, 0),
                (_, true) => return Err(err(tl, tc, format!("variable '{c}' needs an index"))),
                (_, false) => {
                    let n: usize = digits
                        .parse()
                        .map_err(|_| err(tl, tc, "variable index out of range"))?;
                    match c {
                        'z' => Tok::Var(VarKind::Z, n),
                        _ if n == 0 => {
                            return Err(err(tl, tc, format!("variable indices start at {c}1")))
                        }
                        _ => Tok::Var(VarKind::X, n - 1),
                    }
                }
            };
            out.push(Token { tok, line: tl, column: tc });
            continue;
        }
        return Err(err(tl, tc, format!("unexpected character '{c}'")));
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    ring: Ring,
    laurent: bool,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek().tok, Tok::Int(_) | Tok::Var(..) | Tok::LParen)
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let negate = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.peek().tok == Tok::Star {
                self.bump();
                acc = &acc * &self.factor()?;
            } else if self.starts_atom() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let neg = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        let Tok::Int(k) = t.tok else {
            return Err(err(t.line, t.column, "expected an integer exponent"));
        };
        let k: u32 = u32::try_from(&k).map_err(|_| err(t.line, t.column, "exponent too large"))?;
        if !neg {
            return Ok(base.pow(k));
        }
        if !self.laurent {
            return Err(err(
                caret.line,
                caret.column,
                "negative exponent requires Laurent mode",
            ));
        }
        if !base.is_monomial() || !base.leading_coeff().is_one() {
            return Err(err(caret.line, caret.column, "only monomials may carry negative exponents"));
        }
        let (m, _) = base.leading_term().unwrap();
        let m = m.pow(-(k as i32));
        LaurentPoly::monomial(self.ring, m, BigRational::one())
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => {
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.bump();
                    let Tok::Int(den) = d.tok else {
                        return Err(err(d.line, d.column, "expected a denominator"));
                    };
                    if den.is_zero() {
                        return Err(err(d.line, d.column, "zero denominator"));
                    }
                    return Ok(LaurentPoly::constant(self.ring, BigRational::new(n, den)));
                }
                Ok(LaurentPoly::constant(self.ring, BigRational::from_integer(n)))
            }
            Tok::Var(_, idx) => Ok(LaurentPoly::var(self.ring, idx)),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(err(close.line, close.column, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(err(t.line, t.column, "unexpected end of input")),
            _ => Err(err(t.line, t.column, "expected a number, variable or '('")),
        }
    }
}

/// Parses a polynomial in the text grammar into canonical form.
pub fn parse_polynomial(text: &str, opts: &ParseOptions) -> Result<LaurentPoly> {
    let toks = tokenize(text)?;
    let mut kind = None;
    let mut nvars = opts.nvars.unwrap_or(0);
    for t in &toks {
        if let Tok::Var(k, idx) = t.tok {
            if kind.is_some_and(|prev| prev != k) {
                return Err(err(t.line, t.column, "cannot mix x/t and z variables"));
            }
            kind = Some(k);
            nvars = nvars.max(idx + 1);
        }
    }
    let work = Ring { domain: Domain::Rational, nvars, laurent: true };
    let mut parser = Parser { toks: &toks, pos: 0, ring: work, laurent: opts.laurent };
    let value = parser.expr()?;
    let end = parser.peek();
    if end.tok != Tok::End {
        return Err(err(end.line, end.column, "unexpected token"));
    }
    let domain = if opts.rational || !value.is_integral() {
        Domain::Rational
    } else {
        Domain::Integer
    };
    let target = Ring { domain, nvars, laurent: opts.laurent };
    value.to_ring(target)
}

/// Parses `;`-separated polynomials into a common ring.
pub fn parse_polynomial_list(text: &str, opts: &ParseOptions) -> Result<Vec<LaurentPoly>> {
    let parts: Vec<LaurentPoly> = text
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_polynomial(s, opts))
        .collect::<Result<_>>()?;
    let ring = parts.iter().map(|p| p.ring()).reduce(Ring::join);
    match ring {
        None => Ok(parts),
        Some(r) => parts.iter().map(|p| p.to_ring(r)).collect(),
    }
}

/// Convenience: parse a monomial image list such as `x1*x2, x1^2`.
pub fn parse_monomials(text: &str, nvars: usize) -> Result<Vec<Monomial>> {
    text.split(',')
        .map(|s| {
            let p = parse_polynomial(
                s,
                &ParseOptions { laurent: true, nvars: Some(nvars), rational: false },
            )?;
            let p = p.with_nvars(nvars)?;
            if !p.is_monomial() || !p.leading_coeff().is_one() {
                return Err(Error::InvalidArgument(format!("'{}' is not a monic monomial", s.trim())));
            }
            Ok(p.leading_term().unwrap().0.clone())
        })
        .collect()
}
