//! Text syntax for elements of `F{Y}[X]`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ("^" NAT)?
//! atom   := NAT | "t" NAT | "X[" NAT "," NAT "]" | "Y[" NAT "," NAT (";" NAT)? "]"
//!         | "det" | "(" expr ")" | "-" factor
//! ```
//!
//! Unary minus takes a whole factor, so `-t1^2` is `-(t1^2)`.
//! A rational literal `3/4` is a division of naturals. Division is allowed
//! only by non-zero elements of `F`.

use std::fmt;

use darboux_core::{det_x, DiffPoly, DiffVar, FieldConfig, RPoly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

/// Syntax tree of an expression; indices are 1-based as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Natural(BigInt),
    Generator(usize),
    X(usize, usize),
    Y(usize, usize, usize),
    Det,
    Sum(Box<ExprAst>, Box<ExprAst>),
    Difference(Box<ExprAst>, Box<ExprAst>),
    Product(Box<ExprAst>, Box<ExprAst>),
    Quotient(Box<ExprAst>, Box<ExprAst>, Pos),
    Power(Box<ExprAst>, u32),
    Negation(Box<ExprAst>),
    Group(Box<ExprAst>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(BigInt),
    Word(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Nat(s.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Word(s), pos));
        } else if "+-*/^()[],;".contains(c) {
            out.push((Tok::Sym(c), pos));
            chars.next();
            column += 1;
        } else {
            return Err(pos.error(format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    n: usize,
    m: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.bump() {
            (Tok::Sym(s), _) if s == c => Ok(()),
            (t, p) => Err(p.error(format!("expected '{c}', found {}", describe(&t)))),
        }
    }

    fn nat(&mut self) -> Result<(BigInt, Pos), ParseError> {
        match self.bump() {
            (Tok::Nat(v), p) => Ok((v, p)),
            (t, p) => Err(p.error(format!("expected a natural number, found {}", describe(&t)))),
        }
    }

    fn index(&mut self, hi: usize, what: &str) -> Result<usize, ParseError> {
        let (v, p) = self.nat()?;
        match usize::try_from(&v) {
            Ok(i) if (1..=hi).contains(&i) => Ok(i),
            _ => Err(p.error(format!("{what} index {v} out of range 1..={hi}"))),
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = ExprAst::Sum(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = ExprAst::Difference(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = ExprAst::Product(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Sym('/') => {
                    let p = self.pos();
                    self.bump();
                    lhs = ExprAst::Quotient(Box::new(lhs), Box::new(self.factor()?), p);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if self.peek() == &Tok::Sym('^') {
            self.bump();
            let (e, p) = self.nat()?;
            let e = u32::try_from(&e).map_err(|_| p.error(format!("exponent {e} too large")))?;
            return Ok(ExprAst::Power(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Nat(v) => Ok(ExprAst::Natural(v)),
            Tok::Sym('-') => Ok(ExprAst::Negation(Box::new(self.factor()?))),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(ExprAst::Group(Box::new(inner)))
            }
            Tok::Word(w) if w == "det" => Ok(ExprAst::Det),
            Tok::Word(w) if w == "X" => {
                self.expect('[')?;
                let i = self.index(self.n, "row")?;
                self.expect(',')?;
                let j = self.index(self.n, "column")?;
                self.expect(']')?;
                Ok(ExprAst::X(i, j))
            }
            Tok::Word(w) if w == "Y" => {
                self.expect('[')?;
                let i = self.index(self.n, "row")?;
                self.expect(',')?;
                let j = self.index(self.n, "column")?;
                let mut k = 0;
                if self.peek() == &Tok::Sym(';') {
                    self.bump();
                    let (v, p) = self.nat()?;
                    k = usize::try_from(&v).map_err(|_| p.error(format!("order {v} too large")))?;
                }
                self.expect(']')?;
                Ok(ExprAst::Y(i, j, k))
            }
            Tok::Word(w) if w.starts_with('t') => {
                let digits = &w[1..];
                let valid = !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit());
                if !valid {
                    return Err(pos.error(format!("unknown name '{w}'")));
                }
                match digits.parse::<usize>() {
                    Ok(i) if (1..=self.m).contains(&i) => Ok(ExprAst::Generator(i)),
                    _ => Err(pos.error(format!(
                        "generator index {digits} out of range 1..={}",
                        self.m
                    ))),
                }
            }
            Tok::Word(w) => Err(pos.error(format!("unknown name '{w}'"))),
            t => Err(pos.error(format!("expected an operand, found {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Nat(v) => format!("number {v}"),
        Tok::Word(w) => format!("'{w}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

/// Parses with `X`, `Y` indices in `1..=n` and generators `t1..tm`.
pub fn parse_ast(text: &str, n: usize, m: usize) -> Result<ExprAst, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        n,
        m,
    };
    let e = p.expr()?;
    match p.bump() {
        (Tok::End, _) => Ok(e),
        (t, pos) => Err(pos.error(format!("unexpected {}", describe(&t)))),
    }
}

pub fn eval(ast: &ExprAst, n: usize) -> Result<RPoly, ParseError> {
    Ok(match ast {
        ExprAst::Natural(v) => RPoly::scalar(
            n,
            Scalar::from_rational(BigRational::from_integer(v.clone())),
        ),
        ExprAst::Generator(i) => RPoly::scalar(n, Scalar::generator(i - 1)),
        ExprAst::X(i, j) => RPoly::x(n, *i, *j),
        ExprAst::Y(i, j, k) => RPoly::constant(n, DiffPoly::var(DiffVar::new(*i, *j, *k))),
        ExprAst::Det => det_x(n),
        ExprAst::Sum(a, b) => eval(a, n)?.add(&eval(b, n)?),
        ExprAst::Difference(a, b) => eval(a, n)?.sub(&eval(b, n)?),
        ExprAst::Product(a, b) => eval(a, n)?.mul(&eval(b, n)?),
        ExprAst::Quotient(a, b, pos) => {
            let d = eval(b, n)?;
            let s = d
                .as_scalar()
                .ok_or_else(|| pos.error("division is only by elements of the base field"))?;
            let inv = s.recip().map_err(|_| pos.error("division by zero"))?;
            eval(a, n)?.scale_scalar(&inv)
        }
        ExprAst::Power(a, e) => eval(a, n)?.pow(*e),
        ExprAst::Negation(a) => eval(a, n)?.neg(),
        ExprAst::Group(a) => eval(a, n)?,
    })
}

pub fn parse_expr(text: &str, n: usize, cfg: &FieldConfig) -> Result<RPoly, ParseError> {
    eval(&parse_ast(text, n, cfg.m())?, n)
}

/// An element of `F`, i.e. an expression without `X`, `Y` or `det`.
pub fn parse_scalar(text: &str, cfg: &FieldConfig) -> Result<Scalar, ParseError> {
    parse_expr(text, 1, cfg)?
        .as_scalar()
        .ok_or_else(|| ParseError {
            line: 1,
            column: 1,
            message: format!("'{}' is not an element of the base field", text.trim()),
        })
}

/// The largest `i` with `t<i>` in `text`; `0` if none or on a lexing error.
pub fn max_generator(text: &str) -> usize {
    lex(text)
        .unwrap_or_default()
        .into_iter()
        .filter_map(|(t, _)| match t {
            Tok::Word(w) => w.strip_prefix('t').and_then(|d| d.parse().ok()),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

fn coefficient(c: &Scalar) -> (bool, Option<String>) {
    if let Some(r) = c.as_rational() {
        let neg = r.is_negative();
        let a = r.abs();
        return (
            neg,
            (!a.is_integer() || a.numer() != &BigInt::from(1)).then(|| a.to_string()),
        );
    }
    if c.is_polynomial() {
        return (false, Some(format!("({})", c.numerator())));
    }
    (
        false,
        Some(format!("({})/({})", c.numerator(), c.denominator())),
    )
}

/// Descending term order, `F`-coefficient first, then `Y` factors, then
/// `X` factors: `-X[1,2]*X[2,1] + X[1,1]*X[2,2]`.
pub fn format_expr(p: &RPoly) -> String {
    if let Some(c) = p
        .as_scalar()
        .filter(|c| c.is_polynomial() && !c.is_rational())
    {
        return c.numerator().to_string();
    }
    let mut out = String::new();
    for (xm, dc) in p.terms().rev() {
        for (ym, c) in dc.terms().rev() {
            let (neg, coef) = coefficient(c);
            let mut factors: Vec<String> = coef.into_iter().collect();
            if !ym.is_one() {
                factors.push(ym.to_string());
            }
            if !xm.is_one() {
                factors.push(xm.to_string());
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            let body = factors.join("*");
            if out.is_empty() {
                out = if neg { format!("-{body}") } else { body };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg1() -> FieldConfig {
        FieldConfig::with_unit_derivatives(1)
    }

    #[test]
    fn det_spellings() {
        let cfg = FieldConfig::rational();
        let a = parse_expr("X[1,1]*X[2,2] - X[1,2]*X[2,1]", 2, &cfg).unwrap();
        assert_eq!(a, det_x(2));
        assert_eq!(parse_expr("det", 2, &cfg).unwrap(), det_x(2));
        assert_eq!(format_expr(&det_x(2)), "-X[1,2]*X[2,1] + X[1,1]*X[2,2]");
    }

    #[test]
    fn mixed_expression() {
        let cfg = cfg1();
        let p = parse_expr("Y[1,1;2]^2 * t1 + 3/4", 2, &cfg).unwrap();
        let y = DiffPoly::var(DiffVar::new(1, 1, 2));
        let expected = RPoly::constant(2, y.pow(2).scale(&Scalar::generator(0)))
            .add(&RPoly::scalar(2, Scalar::from_ratio(3, 4)));
        assert_eq!(p, expected);
        assert_eq!(parse_expr(&format_expr(&p), 2, &cfg).unwrap(), p);
    }

    #[test]
    fn small_values() {
        assert_eq!(format_expr(&RPoly::zero(2)), "0");
        assert_eq!(
            format_expr(&RPoly::scalar(2, Scalar::from_ratio(5, 3))),
            "5/3"
        );
        assert_eq!(format_expr(&RPoly::scalar(2, Scalar::from_int(-1))), "-1");
        let cfg = FieldConfig::rational();
        let p = parse_expr("-X[1,1]^2", 2, &cfg).unwrap();
        assert_eq!(p, RPoly::x(2, 1, 1).pow(2).neg());
        assert_eq!(format_expr(&p), "-X[1,1]^2");
    }

    #[test]
    fn rational_function_coefficients_round_trip() {
        let cfg = cfg1();
        let p = parse_expr("X[1,1]/(t1 + 1) - (t1^2 - 2)*Y[2,1;1]*X[1,2]", 2, &cfg).unwrap();
        assert_eq!(parse_expr(&format_expr(&p), 2, &cfg).unwrap(), p);
    }

    #[test]
    fn errors_carry_positions() {
        let cfg = FieldConfig::rational();
        let e = parse_expr("X[1,1] +\n  X[3,1]", 2, &cfg).unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.message.contains('3'));
        let e = parse_expr("X[1,1] * ", 2, &cfg).unwrap_err();
        assert!(e.message.contains("end of input"));
        assert!(parse_expr("t1", 2, &cfg).is_err());
        assert!(parse_expr("X[1,1] / X[2,2]", 2, &cfg).is_err());
        assert!(parse_expr("1/0", 2, &cfg).is_err());
        assert!(parse_expr("x", 2, &cfg).is_err());
    }

    #[test]
    fn whitespace_is_ignored() {
        let cfg = FieldConfig::rational();
        assert_eq!(
            parse_expr(" X [ 1 , 1 ] ^ 2", 2, &cfg).unwrap(),
            parse_expr("X[1,1]^2", 2, &cfg).unwrap()
        );
        assert_eq!(max_generator("t3 + t12*X[1,1]"), 12);
    }
}
