//! Text front end for rational functions.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-"? base ("^" natural)?
//! base   := identifier | natural | "(" expr ")"
//! ```
//!
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`. A literal
//! `p/q` is an ordinary quotient that normalizes to a constant.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::algebra::{FieldSpec, Monomial, MultiPoly, RatFunc, Scalar, YPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("denominator at {pos} is identically zero")]
    DivisionByZeroConstant { pos: usize },
    #[error("negative exponent at {pos}")]
    NegativeExponent { pos: usize },
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
}

/// Expression text together with its variable context.
#[derive(Clone, Debug)]
pub struct ExprSource<'a> {
    pub text: &'a str,
    pub vars: &'a [String],
    pub field: FieldSpec,
}

/// Parsed expression tree; variables are indices into the context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Num(BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Divisor carries its source position for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn validate_vars(vars: &[String]) -> Result<(), ParseError> {
    for (i, v) in vars.iter().enumerate() {
        if !is_identifier(v) {
            return Err(ParseError::InvalidVariableName(v.clone()));
        }
        if vars[..i].contains(v) {
            return Err(ParseError::DuplicateVariable(v.clone()));
        }
    }
    Ok(())
}

/// Parses and evaluates to a normalized rational function over `src.vars`.
pub fn parse_ratfunc(src: &ExprSource<'_>) -> Result<RatFunc, ParseError> {
    validate_vars(src.vars)?;
    let tree = parse_expr(src.text, src.vars)?;
    eval(&tree, src.field, src.vars.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Nat(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            match self.bump().0 {
                Tok::Nat(n) => match n.to_u32() {
                    Some(e) => base = Expr::Pow(Box::new(base), e),
                    None => {
                        return Err(ParseError::Syntax {
                            pos,
                            message: "exponent too large".into(),
                        })
                    }
                },
                Tok::Minus => return Err(ParseError::NegativeExponent { pos }),
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        message: "expected a natural-number exponent".into(),
                    })
                }
            }
        }
        Ok(if negate { Expr::Neg(Box::new(base)) } else { base })
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let (tok, pos) = self.toks[self.at].clone();
        match tok {
            Tok::Ident(name) => {
                self.bump();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Expr::Var(i)),
                    None => Err(ParseError::UnknownVariable { name, pos }),
                }
            }
            Tok::Nat(n) => {
                self.bump();
                Ok(Expr::Num(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => self.syntax("unexpected end of input"),
            other => self.syntax(format!("unexpected token {other:?}")),
        }
    }
}

/// Parses text into an expression tree without evaluating it.
pub fn parse_expr(text: &str, vars: &[String]) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        vars,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("trailing input");
    }
    Ok(e)
}

pub fn eval(e: &Expr, field: FieldSpec, nvars: usize) -> Result<RatFunc, ParseError> {
    Ok(match e {
        Expr::Var(i) => RatFunc::var(field, nvars, *i),
        Expr::Num(n) => RatFunc::constant(Scalar::from_bigint(field, n), nvars),
        Expr::Neg(a) => -&eval(a, field, nvars)?,
        Expr::Add(a, b) => &eval(a, field, nvars)? + &eval(b, field, nvars)?,
        Expr::Sub(a, b) => &eval(a, field, nvars)? - &eval(b, field, nvars)?,
        Expr::Mul(a, b) => &eval(a, field, nvars)? * &eval(b, field, nvars)?,
        Expr::Div(a, b, pos) => {
            let d = eval(b, field, nvars)?;
            if d.is_zero() {
                return Err(ParseError::DivisionByZeroConstant { pos: *pos });
            }
            eval(a, field, nvars)?
                .checked_div(&d)
                .expect("nonzero divisor")
        }
        Expr::Pow(a, k) => eval(a, field, nvars)?.pow(*k),
    })
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

fn format_term(m: &Monomial, c: &Scalar, names: &[String]) -> String {
    let mono = format_monomial(m, names);
    if mono.is_empty() {
        c.to_string()
    } else if c.is_one() {
        mono
    } else {
        format!("{c}*{mono}")
    }
}

/// Deterministic rendering of a polynomial, terms in decreasing grevlex order.
pub fn format_poly(p: &MultiPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        let t = format_term(m, &abs, names);
        match (k, neg) {
            (0, false) => out.push_str(&t),
            (0, true) => {
                out.push('-');
                out.push_str(&t);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&t);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&t);
            }
        }
    }
    out
}

/// Rendering that [`parse_ratfunc`] maps back to the same value.
pub fn format_ratfunc(a: &RatFunc, names: &[String]) -> String {
    let num = format_poly(a.numer(), names);
    if a.denom().is_one() {
        return num;
    }
    let num = if a.numer().num_terms() > 1 {
        format!("({num})")
    } else {
        num
    };
    let den = a.denom();
    let single_power = den.is_monomial()
        && den.leading_coeff().is_some_and(|c| c.is_one())
        && den.terms()[0].0.exponents().iter().filter(|&&e| e > 0).count() == 1;
    let den_s = format_poly(den, names);
    if single_power {
        format!("{num}/{den_s}")
    } else {
        format!("{num}/({den_s})")
    }
}

/// Renders a tag polynomial whose coefficients are rational functions in `x_names`.
pub fn format_ypoly(p: &YPoly, tag_names: &[String], x_names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let mono = format_monomial(m, tag_names);
        let neg_c = -c;
        let (neg, coeff) = if c.numer().is_monomial() && c.numer().leading_coeff().unwrap().is_negative() {
            (true, &neg_c)
        } else {
            (false, c)
        };
        let cs = format_ratfunc(coeff, x_names);
        let simple = coeff.numer().is_monomial();
        let t = if mono.is_empty() {
            if simple { cs } else { format!("({cs})") }
        } else if coeff.is_one() {
            mono
        } else if simple {
            format!("{cs}*{mono}")
        } else {
            format!("({cs})*{mono}")
        };
        match (k, neg) {
            (0, false) => out.push_str(&t),
            (0, true) => out.push_str(&format!("-{t}")),
            (_, false) => out.push_str(&format!(" + {t}")),
            (_, true) => out.push_str(&format!(" - {t}")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn parse(text: &str, vars: &[&str]) -> Result<RatFunc, ParseError> {
        let vars = names(vars);
        parse_ratfunc(&ExprSource {
            text,
            vars: &vars,
            field: Q,
        })
    }

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn atomic_quotient() {
        let a = parse("x1/x2", &["x1", "x2"]).unwrap();
        let want = RatFunc::new(MultiPoly::var(Q, 2, 0), MultiPoly::var(Q, 2, 1)).unwrap();
        assert_eq!(a, want);
        assert_eq!(format_ratfunc(&a, &names(&["x1", "x2"])), "x1/x2");
    }

    #[test]
    fn sum_of_squares_over_product() {
        let v = names(&["x1", "x2"]);
        let a = parse("(x1^2+x2^2)/(x1*x2)", &["x1", "x2"]).unwrap();
        assert_eq!(format_poly(a.numer(), &v), "x1^2 + x2^2");
        assert_eq!(format_poly(a.denom(), &v), "x1*x2");
        assert_eq!(format_ratfunc(&a, &v), "(x1^2 + x2^2)/(x1*x2)");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let e = parse("x1/(x2 - x2)", &["x1", "x2"]).unwrap_err();
        assert_eq!(e, ParseError::DivisionByZeroConstant { pos: 3 });
        assert!(matches!(parse("1/0", &["x"]), Err(ParseError::DivisionByZeroConstant { .. })));
    }

    #[test]
    fn precedence_against_hand_built_tree() {
        let v = names(&["a", "b", "c"]);
        let got = parse_expr("a+b*c^2", &v).unwrap();
        let want = Expr::Add(b(Expr::Var(0)), b(Expr::Mul(b(Expr::Var(1)), b(Expr::Pow(b(Expr::Var(2)), 2)))));
        assert_eq!(got, want);
        // unary minus is looser than ^
        let got = parse_expr("-a^2", &v).unwrap();
        assert_eq!(got, Expr::Neg(b(Expr::Pow(b(Expr::Var(0)), 2))));
        // left associativity
        let got = parse_expr("a-b-c", &v).unwrap();
        assert_eq!(got, Expr::Sub(b(Expr::Sub(b(Expr::Var(0)), b(Expr::Var(1)))), b(Expr::Var(2))));
        let got = parse_expr("a/b*c", &v).unwrap();
        assert_eq!(got, Expr::Mul(b(Expr::Div(b(Expr::Var(0)), b(Expr::Var(1)), 2)), b(Expr::Var(2))));
    }

    #[test]
    fn error_cases() {
        assert_eq!(
            parse("x + y", &["x"]).unwrap_err(),
            ParseError::UnknownVariable { name: "y".into(), pos: 4 }
        );
        assert_eq!(parse("x^-2", &["x"]).unwrap_err(), ParseError::NegativeExponent { pos: 2 });
        assert!(matches!(parse("x +", &["x"]), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("(x", &["x"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x)", &["x"]), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse("2x", &["x"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x # 1", &["x"]), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("x^y", &["x", "y"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("--x", &["x"]), Err(ParseError::Syntax { .. })));
        assert_eq!(parse("x", &["x", "x"]).unwrap_err(), ParseError::DuplicateVariable("x".into()));
        assert_eq!(parse("x", &["1x"]).unwrap_err(), ParseError::InvalidVariableName("1x".into()));
    }

    #[test]
    fn formatting_rules() {
        let v = names(&["x1", "x2"]);
        let a = parse("x1^2 - x2", &["x1", "x2"]).unwrap();
        assert_eq!(format_ratfunc(&a, &v), "x1^2 - x2");
        let c = parse("5/3", &["x1", "x2"]).unwrap();
        assert_eq!(format_ratfunc(&c, &v), "5/3");
        let d = parse("-x1/(3*x2^2*x1 + x1)", &["x1", "x2"]).unwrap();
        assert_eq!(format_ratfunc(&d, &v), "-1/3/(x2^2 + 1/3)");
        assert_eq!(parse(&format_ratfunc(&d, &v), &["x1", "x2"]).unwrap(), d);
    }

    #[test]
    fn prime_field_literals_reduce() {
        let vars = names(&["x"]);
        let f = FieldSpec::prime(7).unwrap();
        let a = parse_ratfunc(&ExprSource { text: "8*x + 14", vars: &vars, field: f }).unwrap();
        assert_eq!(a, RatFunc::var(f, 1, 0));
        let e = parse_ratfunc(&ExprSource { text: "x/7", vars: &vars, field: f }).unwrap_err();
        assert!(matches!(e, ParseError::DivisionByZeroConstant { .. }));
    }
}
