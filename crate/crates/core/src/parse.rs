//! Expression syntax for building functions from formulas.
//!
//! ```text
//! sum     := xor ( '+' xor )*            addition mod q
//! xor     := product ( '(+)' product )*  bitwise xor (F_2 sum on 0/1 values)
//! product := factor ( '*'? factor )*     multiplication mod q (AND on 0/1 values)
//! factor  := INTEGER | 'x' INDEX | '(' sum ')'
//! ```
//!
//! `x1 .. xn` are the variables, `x1` being the most significant index bit.
//! `x1x2` and `2x1` are juxtaposed products. Examples:
//! `x1*x2 + 2*x1` and `x1 + 2*(x1*x2 (+) x3*x4)`.

use crate::error::{Error, Result};
use crate::function::{GeneralizedBooleanFunction, Limits};
use crate::index;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(u64),
    Var(usize),
    Plus,
    Xor,
    Star,
    Open,
    Close,
}

#[derive(Debug, Clone)]
enum Expr {
    Const(u32),
    Var(u32),
    Add(Vec<Expr>),
    Xor(Vec<Expr>),
    Mul(Vec<Expr>),
}

impl Expr {
    fn eval(&self, x: usize, n: u32, mask: u32) -> u32 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(j) => index::variable(x, *j, n) as u32,
            Expr::Add(terms) => terms
                .iter()
                .fold(0, |acc, t| acc.wrapping_add(t.eval(x, n, mask)) & mask),
            Expr::Xor(terms) => terms.iter().fold(0, |acc, t| acc ^ t.eval(x, n, mask)),
            Expr::Mul(terms) => terms
                .iter()
                .fold(1, |acc, t| acc.wrapping_mul(t.eval(x, n, mask)) & mask),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            b'*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            b'(' if bytes[i..].starts_with(b"(+)") => {
                tokens.push((i, Token::Xor));
                i += 3;
            }
            b'(' => {
                tokens.push((i, Token::Open));
                i += 1;
            }
            b')' => {
                tokens.push((i, Token::Close));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value = src[start..i].parse::<u64>().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "integer literal too large".into(),
                })?;
                tokens.push((start, Token::Int(value)));
            }
            b'x' | b'X' => {
                let start = i;
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: "expected a variable index after 'x'".into(),
                    });
                }
                let index = src[digits..i].parse::<usize>().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "variable index too large".into(),
                })?;
                tokens.push((start, Token::Var(index)));
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character {ch:?}"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
    n: u32,
    q: u64,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = vec![self.xor()?];
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            terms.push(self.xor()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Add(terms)
        })
    }

    fn xor(&mut self) -> Result<Expr> {
        let mut terms = vec![self.product()?];
        while self.peek() == Some(&Token::Xor) {
            self.pos += 1;
            terms.push(self.product()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Xor(terms)
        })
    }

    fn product(&mut self) -> Result<Expr> {
        let mut terms = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    terms.push(self.factor()?);
                }
                Some(Token::Int(_) | Token::Var(_) | Token::Open) => terms.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Mul(terms)
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let pos = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Const((v % self.q) as u32))
            }
            Some(Token::Var(j)) => {
                self.pos += 1;
                if j == 0 || j > self.n as usize {
                    return Err(Error::VariableOutOfRange {
                        index: j,
                        pos,
                        n: self.n,
                    });
                }
                Ok(Expr::Var(j as u32))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(Error::Syntax {
                        pos: self.offset(),
                        msg: "expected ')'".into(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of expression".into(),
            }),
        }
    }
}

/// Parses `src` and tabulates it over all `2^n` points, reducing mod `2^k`.
pub fn parse_expression(src: &str, n: u32, k: u32) -> Result<GeneralizedBooleanFunction> {
    Limits::default().check(n, k)?;
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: src.len(),
        n,
        q: 1u64 << k,
    };
    let expr = parser.sum()?;
    if parser.pos != tokens.len() {
        return Err(Error::Syntax {
            pos: parser.offset(),
            msg: "trailing input".into(),
        });
    }
    let mask = (1u32 << k) - 1;
    GeneralizedBooleanFunction::from_fn(n, k, |x| expr.eval(x, n, mask))
}
