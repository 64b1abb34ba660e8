//! Text syntax for rational functions and differential operators.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" "-"? integer)?
//! atom   := integer | name | "(" expr ")"
//! ```
//!
//! Names match `[a-zA-Z][a-zA-Z0-9_]*`; a declared variable wins, otherwise
//! `d<name>` is the derivative with respect to `<name>`. Juxtaposition is
//! not a product.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::weyl::WeylOperator;

#[derive(Clone, Debug)]
enum Ast {
    Num(BigInt),
    Var(usize),
    Der(usize),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, i64, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Ast::Bin(c as char, Box::new(lhs), Box::new(rhs), at);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Ast::Bin(c as char, Box::new(lhs), Box::new(rhs), at);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer exponent");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let Ok(k) = text.parse::<i64>() else {
            return self.err("exponent too large");
        };
        Ok(Ast::Pow(Box::new(base), if neg { -k } else { k }, at))
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Ast::Num(text.parse().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(i) = self.names.iter().position(|s| s == name) {
                    return Ok(Ast::Var(i));
                }
                if let Some(rest) = name.strip_prefix('d') {
                    if let Some(i) = self.names.iter().position(|s| s == rest) {
                        return Ok(Ast::Der(i));
                    }
                }
                Err(Error::UnknownVariable(name.to_string()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_ast(src: &str, names: &[String]) -> Result<Ast> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, names };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(ast)
}

fn has_derivative(a: &Ast) -> bool {
    match a {
        Ast::Der(_) => true,
        Ast::Num(_) | Ast::Var(_) => false,
        Ast::Neg(x) | Ast::Pow(x, _, _) => has_derivative(x),
        Ast::Bin(_, x, y, _) => has_derivative(x) || has_derivative(y),
    }
}

fn eval_rational(a: &Ast, n: usize) -> Result<RationalFunction> {
    Ok(match a {
        Ast::Num(v) => RationalFunction::from_poly(Polynomial::constant(n, Rational::from_integer(v.clone()))),
        Ast::Var(i) => RationalFunction::from_poly(Polynomial::var(n, *i)),
        Ast::Der(_) => return Err(Error::Invalid("derivative in a rational function".into())),
        Ast::Neg(x) => eval_rational(x, n)?.neg(),
        Ast::Pow(x, k, at) => {
            eval_rational(x, n)?.pow(*k).map_err(|_| Error::Parse { pos: *at, msg: "division by zero".into() })?
        }
        Ast::Bin(op, x, y, at) => {
            let (l, r) = (eval_rational(x, n)?, eval_rational(y, n)?);
            match op {
                '+' => l.add(&r),
                '-' => l.sub(&r),
                '*' => l.mul(&r),
                _ => l.div(&r).map_err(|_| Error::Parse { pos: *at, msg: "division by zero".into() })?,
            }
        }
    })
}

fn eval_operator(a: &Ast, n: usize) -> Result<WeylOperator> {
    Ok(match a {
        Ast::Num(v) => WeylOperator::constant(n, Rational::from_integer(v.clone())),
        Ast::Var(i) => WeylOperator::x(n, *i),
        Ast::Der(i) => WeylOperator::d(n, *i),
        Ast::Neg(x) => eval_operator(x, n)?.neg(),
        Ast::Pow(x, k, at) => {
            if *k < 0 {
                return Err(Error::Parse { pos: *at, msg: "negative power of an operator".into() });
            }
            eval_operator(x, n)?.pow(*k as u32)
        }
        Ast::Bin(op, x, y, at) => {
            let l = eval_operator(x, n)?;
            let r = eval_operator(y, n)?;
            match op {
                '+' => l.add(&r),
                '-' => l.sub(&r),
                '*' => l.mul(&r),
                _ => {
                    let c = constant_of(&r).ok_or(Error::Parse { pos: *at, msg: "division by an operator".into() })?;
                    if c.is_zero() {
                        return Err(Error::Parse { pos: *at, msg: "division by zero".into() });
                    }
                    l.scale(&(Rational::one() / c))
                }
            }
        }
    })
}

fn constant_of(p: &WeylOperator) -> Option<Rational> {
    p.as_polynomial().constant_value()
}

/// A parsed expression: operators when any derivative occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Rational(RationalFunction),
    Operator(WeylOperator),
}

pub fn parse_expression(src: &str, names: &[String]) -> Result<Expression> {
    let ast = parse_ast(src, names)?;
    if has_derivative(&ast) {
        Ok(Expression::Operator(eval_operator(&ast, names.len())?))
    } else {
        Ok(Expression::Rational(eval_rational(&ast, names.len())?))
    }
}

pub fn parse_rational_function(src: &str, names: &[String]) -> Result<RationalFunction> {
    eval_rational(&parse_ast(src, names)?, names.len())
}

pub fn parse_operator(src: &str, names: &[String]) -> Result<WeylOperator> {
    eval_operator(&parse_ast(src, names)?, names.len())
}

/// Names from a comma separated list.
pub fn names(list: &str) -> Vec<String> {
    list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}
