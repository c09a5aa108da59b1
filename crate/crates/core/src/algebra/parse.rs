//! Text grammar for rational functions of λ:
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ("^" uint)?
//! atom   := "l" | "lambda" | integer | "(" expr ")"
//! ```
//!
//! Whitespace is ignored. `λ` is accepted as a synonym for `l`.

use num_bigint::BigInt;
use thiserror::Error;

use super::field::Q;
use super::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Var,
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Token::Int(digits.parse().expect("ascii digits"))));
            }
            'l' => {
                let rest: String = chars[i..].iter().take(6).map(|(_, c)| c).collect();
                if rest == "lambda" {
                    i += 6;
                } else {
                    i += 1;
                }
                out.push((pos, Token::Var));
            }
            'λ' => {
                out.push((pos, Token::Var));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let tok = match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    _ => Token::RParen,
                };
                out.push((pos, tok));
                i += 1;
            }
            other => {
                return Err(ParseError { offset: pos, message: format!("unexpected character '{other}'") })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let rhs = self.factor()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| ParseError { offset: at, message: "division by zero".into() })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    if e > 256 {
                        return self.err("exponent too large");
                    }
                    Ok(base.pow(e))
                }
                _ => self.err("expected unsigned integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek().cloned() {
            Some(Token::Var) => {
                self.pos += 1;
                Ok(RatFunc::x())
            }
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(Q::from_integer(n)))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected variable, integer or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a rational function of λ.
pub fn parse_rational_function(input: &str) -> Result<RatFunc, ParseError> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(ParseError { offset: 0, message: "empty expression".into() });
    }
    let mut p = Parser { tokens, pos: 0, end: input.len() };
    let value = p.expr()?;
    if p.pos != p.tokens.len() {
        return p.err("trailing input");
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qi};
    use crate::algebra::poly::Poly;

    #[test]
    fn parses_potentials() {
        let r = parse_rational_function("-2*(1+l^2)").unwrap();
        assert_eq!(r, RatFunc::from_poly(Poly::new(vec![qi(-2), qi(0), qi(-2)])));
        let r = parse_rational_function("1/(2*lambda^2)").unwrap();
        assert_eq!(r, RatFunc::new(Poly::new(vec![q(1, 2)]), Poly::new(vec![qi(0), qi(0), qi(1)])).unwrap());
        assert_eq!(parse_rational_function(" 0 ").unwrap(), RatFunc::zero());
        assert_eq!(parse_rational_function("λ").unwrap(), RatFunc::x());
    }

    #[test]
    fn left_associative_division() {
        // 1/2*l = (1/2)·l
        assert_eq!(
            parse_rational_function("1/2*l").unwrap(),
            RatFunc::from_poly(Poly::new(vec![qi(0), q(1, 2)]))
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_rational_function("l + * 2").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(parse_rational_function("1/(l-l)").is_err());
        assert!(parse_rational_function("l^x").is_err());
        assert!(parse_rational_function("(l").is_err());
        assert!(parse_rational_function("").is_err());
        assert!(parse_rational_function("2*-l").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["(l^3 - 2)/(l^2 + 1)", "-2/(l + 1)", "1/2*l + 3", "1/l^2", "(1/2*l + 1/2)/l"] {
            let r = parse_rational_function(s).unwrap();
            assert_eq!(parse_rational_function(&r.to_string()).unwrap(), r, "{s}");
        }
    }
}
