//! Text grammar for polynomials and the canonical printer.
//!
//! Grammar: integer and `p/q` rational literals, declared identifiers,
//! binary `+ - *`, `^` with a non-negative integer literal exponent, unary
//! minus, parentheses. Multiplication is always explicit and `^` is
//! non-associative (towers need parentheses). Precedence:
//! `^` > unary `-` > `*` > binary `+ -`.

use crate::monomial::Monomial;
use crate::poly::{Polynomial, Rat};
use crate::vars::VarList;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

const MAX_EXPONENT: u64 = 1_000_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("exponent overflow at position {pos} (limit {MAX_EXPONENT})")]
    ExponentOverflow { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some((p, t)) = lx.next_token()? {
            out.push((p, t));
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(usize, Tok)>, ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Tok::Int(digits.parse::<BigInt>().unwrap())
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Tok::Ident(
                    std::str::from_utf8(&self.src[start..self.pos])
                        .unwrap()
                        .to_string(),
                )
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok(Some((start, tok)))
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    vars: VarList,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.i)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.i).cloned();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        while let Some((_, t)) = self.peek() {
            match t {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.add(&rhs).expect("same vars");
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs).expect("same vars");
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some((_, Tok::Star))) {
            self.bump();
            let rhs = self.factor()?;
            acc = acc.mul(&rhs).expect("same vars");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if matches!(self.peek(), Some((_, Tok::Minus))) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some((_, Tok::Caret))) {
            return Ok(base);
        }
        let (cpos, _) = self.bump().unwrap();
        let (epos, etok) = self.bump().ok_or(ParseError::Syntax {
            pos: cpos + 1,
            msg: "expected integer exponent after `^`".into(),
        })?;
        let e = match etok {
            Tok::Int(n) => {
                use num_traits::ToPrimitive;
                let v = n.to_u64().filter(|v| *v <= MAX_EXPONENT);
                v.ok_or(ParseError::ExponentOverflow { pos: epos })?
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: epos,
                    msg: "exponent must be a non-negative integer literal".into(),
                })
            }
        };
        if matches!(self.peek(), Some((_, Tok::Caret))) {
            return Err(ParseError::Syntax {
                pos: self.here(),
                msg: "`^` is non-associative; parenthesize exponent towers".into(),
            });
        }
        Ok(base.pow(e as u32))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let (pos, tok) = self.bump().ok_or(ParseError::Syntax {
            pos: self.end,
            msg: "unexpected end of input".into(),
        })?;
        match tok {
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    other => Err(ParseError::Syntax {
                        pos: other.map(|(p, _)| p).unwrap_or(self.end),
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Tok::Int(n) => {
                // Rational literal p/q: the slash binds two integer literals.
                if matches!(self.peek(), Some((_, Tok::Slash))) {
                    let (spos, _) = self.bump().unwrap();
                    match self.bump() {
                        Some((dpos, Tok::Int(d))) => {
                            if d.is_zero() {
                                return Err(ParseError::Syntax {
                                    pos: dpos,
                                    msg: "zero denominator".into(),
                                });
                            }
                            Ok(Polynomial::constant(self.vars.clone(), Rat::new(n, d)))
                        }
                        other => Err(ParseError::Syntax {
                            pos: other.map(|(p, _)| p).unwrap_or(spos + 1),
                            msg: "expected integer denominator after `/`".into(),
                        }),
                    }
                } else {
                    Ok(Polynomial::constant(
                        self.vars.clone(),
                        Rat::from_integer(n),
                    ))
                }
            }
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.vars.clone(), i)),
                None => Err(ParseError::UnknownIdentifier { pos, name }),
            },
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected token {:?}", other),
            }),
        }
    }
}

/// Parse `source` over the declared variable list.
pub fn parse_polynomial(source: &str, vars: VarList) -> Result<Polynomial, ParseError> {
    let toks = Lexer::tokens(source)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: source.len(),
        vars,
    };
    let poly = p.expr()?;
    if let Some((pos, tok)) = p.peek() {
        return Err(ParseError::Syntax {
            pos: *pos,
            msg: format!("trailing input {:?}", tok),
        });
    }
    Ok(poly)
}

fn format_coeff(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial, vars: &VarList) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

/// Canonical text form: terms in descending degrevlex, exact coefficients.
/// `parse_polynomial(print_polynomial(p)) == p`.
pub fn print_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(m, p.vars());
        if mono.is_empty() {
            out.push_str(&format_coeff(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_coeff(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn v2() -> VarList {
        VarList::new(["z1", "z2"])
    }

    #[test]
    fn parses_paper_example_component() {
        // z1*(1 - z1^2 - z2^2) = z1 - z1^3 - z1*z2^2
        let p = parse_polynomial("z1*(1 - z1^2 - z2^2)", v2()).unwrap();
        let q = parse_polynomial("z1 - z1^3 - z1*z2^2", v2()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parses_zero_and_squares() {
        assert!(parse_polynomial("0", v2()).unwrap().is_zero());
        let p = parse_polynomial("(z1+z2)^2", v2()).unwrap();
        let q = parse_polynomial("z1^2 + 2*z1*z2 + z2^2", v2()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rational_literals() {
        let p = parse_polynomial("1/2*z1 - 3/4", v2()).unwrap();
        assert_eq!(p.coefficient(&crate::monomial::Monomial::var(2, 0)), ratio(1, 2));
        assert_eq!(p.constant_term(), ratio(-3, 4));
        // `/` is not an operator
        assert!(parse_polynomial("z1/2", v2()).is_err());
    }

    #[test]
    fn rejects_with_positions() {
        match parse_polynomial("z1 + w", v2()) {
            Err(ParseError::UnknownIdentifier { pos, name }) => {
                assert_eq!(pos, 5);
                assert_eq!(name, "w");
            }
            other => panic!("expected unknown identifier, got {:?}", other),
        }
        assert!(matches!(
            parse_polynomial("z1^2^3", v2()),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("z1^z2", v2()),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("z1 z2", v2()),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("z1^9999999999", v2()),
            Err(ParseError::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn unary_minus_precedence() {
        // -z1^2 parses as -(z1^2)
        let p = parse_polynomial("-z1^2", v2()).unwrap();
        let q = parse_polynomial("0 - z1^2", v2()).unwrap();
        assert_eq!(p, q);
        // 2*-z1 is a factor-level negation
        let r = parse_polynomial("2*-z1", v2()).unwrap();
        assert_eq!(r, parse_polynomial("-2*z1", v2()).unwrap());
    }

    #[test]
    fn printer_canonical_forms() {
        let xy = VarList::new(["x", "y"]);
        let p = parse_polynomial("x^2 - y", xy.clone()).unwrap();
        assert_eq!(print_polynomial(&p), "x^2 - y");
        assert_eq!(print_polynomial(&Polynomial::zero(xy.clone())), "0");
        let h = parse_polynomial("1/2*x", xy.clone()).unwrap();
        assert_eq!(print_polynomial(&h), "1/2*x");
    }

    #[test]
    fn print_parse_round_trip_samples() {
        let xy = VarList::new(["x", "y"]);
        for src in [
            "x^2 - y",
            "-x + 3",
            "x*y - 2/7*y^3 + 1",
            "0",
            "-5/3",
            "x^10*y^2 - x*y + y",
        ] {
            let p = parse_polynomial(src, xy.clone()).unwrap();
            let q = parse_polynomial(&print_polynomial(&p), xy.clone()).unwrap();
            assert_eq!(p, q);
        }
    }
}
