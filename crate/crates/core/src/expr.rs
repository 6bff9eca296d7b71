//! Parser and canonical renderer for polynomial / rational-function
//! expressions.
//!
//! Grammar (no implicit multiplication, no decimals):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' uint)?
//! base   := integer | variable | '(' expr ')'
//! ```
//!
//! Fractions are written with the division operator ("3/4"), which is exact.
//! Parsing is two-phase: text -> `Expr` (checked against the declared
//! variable list), then evaluation into the requested level of the field
//! tower, where the innermost variable becomes the polynomial generator.

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::CoefficientField;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::ratfunc::{ParamRat, RationalFunction};

const MAX_EXPONENT: u32 = 512;
const MAX_PAREN_DEPTH: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {span}: {message}")]
    Syntax { span: Span, message: String },
    #[error("unknown variable '{name}' at {span}")]
    UnknownVariable { name: String, span: Span },
    #[error("negative exponent at {span}")]
    NegativeExponent { span: Span },
    #[error("exponent exceeds limit {MAX_EXPONENT} at {span}")]
    ExponentTooLarge { span: Span },
    #[error("expression nesting too deep at {span}")]
    TooDeep { span: Span },
    #[error("division by zero at {span}")]
    DivisionByZero { span: Span },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt, Span),
    Var(String, Span),
    Neg(Box<Expr>, Span),
    Add(Box<Expr>, Box<Expr>, Span),
    Sub(Box<Expr>, Box<Expr>, Span),
    Mul(Box<Expr>, Box<Expr>, Span),
    Div(Box<Expr>, Box<Expr>, Span),
    Pow(Box<Expr>, u32, Span),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<(Vec<(Tok, Span)>, Span), ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i];
        let span = Span { line, col };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '+' => out.push((Tok::Plus, span)),
            '-' => out.push((Tok::Minus, span)),
            '*' => out.push((Tok::Star, span)),
            '/' => out.push((Tok::Slash, span)),
            '^' => out.push((Tok::Caret, span)),
            '(' => out.push((Tok::LParen, span)),
            ')' => out.push((Tok::RParen, span)),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), span));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_')
                {
                    i += 1;
                    col += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((Tok::Ident(s), span));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    span,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
        i += 1;
        col += 1;
    }
    Ok((out, Span { line, col }))
}

struct Parser<'a> {
    toks: &'a [(Tok, Span)],
    pos: usize,
    vars: &'a [&'a str],
    end: Span,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, Span)> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> Span {
        self.peek().map(|(_, s)| *s).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Tok, Span)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self, depth: usize) -> Result<Expr, ParseError> {
        if depth > MAX_PAREN_DEPTH {
            return Err(ParseError::TooDeep { span: self.here() });
        }
        let span = self.here();
        let negated = match self.peek() {
            Some((Tok::Minus, _)) => {
                self.pos += 1;
                true
            }
            Some((Tok::Plus, _)) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut lhs = self.term(depth)?;
        if negated {
            lhs = Expr::Neg(Box::new(lhs), span);
        }
        loop {
            match self.peek() {
                Some((Tok::Plus, s)) => {
                    let s = *s;
                    self.pos += 1;
                    let rhs = self.term(depth)?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs), s);
                }
                Some((Tok::Minus, s)) => {
                    let s = *s;
                    self.pos += 1;
                    let rhs = self.term(depth)?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs), s);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<Expr, ParseError> {
        let mut lhs = self.factor(depth)?;
        loop {
            match self.peek() {
                Some((Tok::Star, s)) => {
                    let s = *s;
                    self.pos += 1;
                    let rhs = self.factor(depth)?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs), s);
                }
                Some((Tok::Slash, s)) => {
                    let s = *s;
                    self.pos += 1;
                    let rhs = self.factor(depth)?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs), s);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self, depth: usize) -> Result<Expr, ParseError> {
        let base = self.base(depth)?;
        if let Some((Tok::Caret, s)) = self.peek() {
            let s = *s;
            self.pos += 1;
            match self.bump() {
                Some((Tok::Int(n), span)) => {
                    let e = u32::try_from(&n)
                        .map_err(|_| ParseError::ExponentTooLarge { span })?;
                    if e > MAX_EXPONENT {
                        return Err(ParseError::ExponentTooLarge { span });
                    }
                    Ok(Expr::Pow(Box::new(base), e, s))
                }
                Some((Tok::Minus, span)) => Err(ParseError::NegativeExponent { span }),
                other => Err(ParseError::Syntax {
                    span: other.map(|(_, s)| s).unwrap_or(self.end),
                    message: "expected a nonnegative integer exponent".to_string(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self, depth: usize) -> Result<Expr, ParseError> {
        match self.bump() {
            Some((Tok::Int(n), span)) => Ok(Expr::Int(n, span)),
            Some((Tok::Ident(name), span)) => {
                if self.vars.contains(&name.as_str()) {
                    Ok(Expr::Var(name, span))
                } else {
                    Err(ParseError::UnknownVariable { name, span })
                }
            }
            Some((Tok::LParen, _)) => {
                let inner = self.expr(depth + 1)?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    other => Err(ParseError::Syntax {
                        span: other.map(|(_, s)| s).unwrap_or(self.end),
                        message: "expected ')'".to_string(),
                    }),
                }
            }
            other => Err(ParseError::Syntax {
                span: other.map(|(_, s)| s).unwrap_or(self.end),
                message: "expected a number, variable, or '('".to_string(),
            }),
        }
    }
}

/// Parse against a declared variable list. Checks syntax and variable names
/// but does not evaluate.
pub fn parse(text: &str, vars: &[&str]) -> Result<Expr, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars,
        end,
    };
    let e = p.expr(0)?;
    if let Some((_, span)) = p.peek() {
        return Err(ParseError::Syntax {
            span: *span,
            message: "unexpected trailing input".to_string(),
        });
    }
    Ok(e)
}

/// Evaluate in any coefficient field given a variable environment.
pub fn eval_in<D: CoefficientField>(
    e: &Expr,
    env: &dyn Fn(&str) -> Option<D>,
) -> Result<D, ParseError> {
    match e {
        Expr::Int(n, _) => Ok(D::from_rational(&Rational::from_integer(n.clone()))),
        Expr::Var(name, span) => env(name).ok_or_else(|| ParseError::UnknownVariable {
            name: name.clone(),
            span: *span,
        }),
        Expr::Neg(a, _) => Ok(eval_in(a, env)?.neg()),
        Expr::Add(a, b, _) => Ok(eval_in(a, env)?.add(&eval_in(b, env)?)),
        Expr::Sub(a, b, _) => Ok(eval_in(a, env)?.sub(&eval_in(b, env)?)),
        Expr::Mul(a, b, _) => Ok(eval_in(a, env)?.mul(&eval_in(b, env)?)),
        Expr::Div(a, b, span) => {
            let den = eval_in(b, env)?;
            CoefficientField::div(&eval_in(a, env)?, &den)
                .ok_or(ParseError::DivisionByZero { span: *span })
        }
        Expr::Pow(a, e, _) => {
            let base = eval_in(a, env)?;
            let mut acc = D::one();
            let mut sq = base;
            let mut e = *e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&sq);
                }
                e >>= 1;
                if e > 0 {
                    sq = sq.mul(&sq);
                }
            }
            Ok(acc)
        }
    }
}

/// A constant expression: no variables at all.
pub fn parse_constant(text: &str) -> Result<Rational, ParseError> {
    let e = parse(text, &[])?;
    eval_in(&e, &|_| None)
}

/// One-variable tower: element of Q(v).
pub fn parse_tower1(text: &str, v: &str) -> Result<RationalFunction<Rational>, ParseError> {
    let e = parse(text, &[v])?;
    let v = v.to_string();
    eval_in(&e, &move |name: &str| {
        (name == v).then(RationalFunction::<Rational>::gen)
    })
}

/// Two-variable tower [outer, inner]: element of Q(outer)(inner).
pub fn parse_tower2(
    text: &str,
    vars: [&str; 2],
) -> Result<RationalFunction<ParamRat>, ParseError> {
    let e = parse(text, &vars)?;
    let outer = vars[0].to_string();
    let inner = vars[1].to_string();
    eval_in(&e, &move |name: &str| {
        if name == inner {
            Some(RationalFunction::<ParamRat>::gen())
        } else if name == outer {
            Some(RationalFunction::constant(ParamRat::gen()))
        } else {
            None
        }
    })
}

/// Three-variable tower [outermost, middle, inner].
pub fn parse_tower3(
    text: &str,
    vars: [&str; 3],
) -> Result<RationalFunction<RationalFunction<ParamRat>>, ParseError> {
    let e = parse(text, &vars)?;
    let v0 = vars[0].to_string();
    let v1 = vars[1].to_string();
    let v2 = vars[2].to_string();
    eval_in(&e, &move |name: &str| {
        if name == v2 {
            Some(RationalFunction::<RationalFunction<ParamRat>>::gen())
        } else if name == v1 {
            Some(RationalFunction::constant(RationalFunction::<ParamRat>::gen()))
        } else if name == v0 {
            Some(RationalFunction::constant(RationalFunction::constant(
                ParamRat::gen(),
            )))
        } else {
            None
        }
    })
}

/// Demand a polynomial (denominator 1).
pub fn expect_poly<F: CoefficientField>(
    rf: &RationalFunction<F>,
    what: &str,
) -> Result<Polynomial<F>, ParseError> {
    rf.as_poly().cloned().ok_or_else(|| ParseError::Syntax {
        span: Span { line: 1, col: 1 },
        message: format!("{what} must be a polynomial, got a proper rational function"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::QPoly;
    use crate::rational::rat;

    #[test]
    fn polynomial_round_trip() {
        let f = parse_tower1("t^2 - 2*t + 1", "t").unwrap();
        let p = f.as_poly().unwrap();
        assert_eq!(p, &QPoly::from_ints(&[1, -2, 1]));
        assert_eq!(p.render(&["t"]), "t^2 - 2*t + 1");
    }

    #[test]
    fn two_level_tower() {
        // (x-1)*(x-t) = x^2 - (1+t)x + t over Q(t)
        let f = parse_tower2("(x - 1)*(x - t)", ["t", "x"]).unwrap();
        let p = f.as_poly().unwrap();
        assert_eq!(p.degree(), Some(2));
        let c1 = p.coeff(1);
        let expect = parse_tower1("-(1 + t)", "t").unwrap();
        assert_eq!(c1, expect);
    }

    #[test]
    fn precedence() {
        // 1+2*t^2 = 1 + 2(t^2)
        let f = parse_tower1("1+2*t^2", "t").unwrap();
        assert_eq!(f.as_poly().unwrap(), &QPoly::from_ints(&[1, 0, 2]));
        // 3/4^2 divides by the square
        let c = parse_constant("3/4^2").unwrap();
        assert_eq!(c, rat(3, 16));
    }

    #[test]
    fn error_positions() {
        match parse("t + ", &["t"]) {
            Err(ParseError::Syntax { span, .. }) => assert_eq!(span, Span { line: 1, col: 5 }),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse("t + q", &["t"]) {
            Err(ParseError::UnknownVariable { name, .. }) => assert_eq!(name, "q"),
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(matches!(
            parse("t^-2", &["t"]),
            Err(ParseError::NegativeExponent { .. })
        ));
        assert!(matches!(
            parse_tower1("1/(t - t)", "t"),
            Err(ParseError::DivisionByZero { .. })
        ));
    }

    #[test]
    fn render_then_parse_is_identity() {
        let samples = [
            "t^3 - 1/2*t + 7",
            "(t + 1)/(t - 1)",
            "-t^2 + 3",
        ];
        for s in samples {
            let v = parse_tower1(s, "t").unwrap();
            let rendered = v.render_compact(&["t"]);
            let again = parse_tower1(&rendered, "t").unwrap();
            assert_eq!(v, again, "round trip failed for {s} -> {rendered}");
        }
    }
}
