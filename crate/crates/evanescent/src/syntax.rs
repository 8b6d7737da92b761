//! ASCII syntax for polynomials in the free commutative magma.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := ['+' | '-'] [rational] factor+
//! factor := var power? | var '^{' int '}' factor | '(' poly ')' power?
//! power  := '^' int | '^[' int ']'
//! var    := 'x' | 'y' | 'z' | 't' digits
//! ```
//!
//! Juxtaposition is the product and associates to the LEFT: `a b c` means
//! `(a b) c`. `x^k` is the left-normed power, `x^[k]` the power by repeated
//! squaring and `x^{r} f` applies `x` on the left `r` times to the next factor.
//! `xy` lexes as `x` then `y`; `t` alone is not a variable.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::magma::{left_iterate, Monomial, Variable};
use crate::poly::{Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(Variable),
    Int(BigInt),
    Slash,
    Plus,
    Minus,
    LParen,
    RParen,
    Caret,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    let err = |line, column, message: String| ParseError { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let mut advance = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '^' => Some(Tok::Caret),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            'x' => Some(Tok::Var(Variable::X)),
            'y' => Some(Tok::Var(Variable::Y)),
            'z' => Some(Tok::Var(Variable::Z)),
            't' => {
                let digits: String = chars[i + 1..].iter().take_while(|d| d.is_ascii_digit()).collect();
                let index: u32 = digits.parse().map_err(|_| err(l0, c0, "expected t<digits>".to_string()))?;
                let v = Variable::new(index).ok_or_else(|| err(l0, c0, "variable indices start at 1".to_string()))?;
                advance += digits.len();
                Some(Tok::Var(v))
            }
            d if d.is_ascii_digit() => {
                let digits: String = chars[i..].iter().take_while(|d| d.is_ascii_digit()).collect();
                advance = digits.len();
                Some(Tok::Int(digits.parse().expect("digits")))
            }
            other => return Err(err(l0, c0, format!("unknown symbol '{other}'"))),
        };
        if let Some(tok) = tok {
            out.push(Token { tok, line: l0, column: c0 });
        }
        i += advance;
        column += advance;
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn small_int(&mut self, min: u32) -> Result<u32, ParseError> {
        let here = self.error("");
        let n = self.int()?;
        let v: u32 = n.try_into().map_err(|_| ParseError { message: "exponent too large".into(), ..here.clone() })?;
        if v < min {
            return Err(ParseError { message: format!("exponent must be at least {min}"), ..here });
        }
        Ok(v)
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = Polynomial::zero();
        let mut negate = false;
        let mut first = true;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                }
                Tok::Minus => {
                    self.next();
                    negate = true;
                }
                _ if first => {}
                _ => return Ok(acc),
            }
            first = false;
            let term = self.term()?;
            acc = if negate { acc - term } else { acc + term };
            negate = false;
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Var(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let coeff = if let Tok::Int(_) = self.peek() {
            let num = self.int()?;
            let den = if *self.peek() == Tok::Slash {
                self.next();
                let d = self.int()?;
                if d.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                d
            } else {
                BigInt::one()
            };
            Some(Rational::new(num, den))
        } else {
            None
        };
        if !self.starts_factor() {
            return match coeff {
                Some(c) if c.is_zero() => Ok(Polynomial::zero()),
                Some(_) => Err(self.error("constant terms are not allowed")),
                None => Err(self.error("expected a term")),
            };
        }
        let mut acc = self.factor()?;
        while self.starts_factor() {
            let rhs = self.factor()?;
            acc = acc.multiply(&rhs);
        }
        Ok(match coeff {
            Some(c) => acc.scale(&c),
            None => acc,
        })
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.next().tok {
            Tok::Var(v) => {
                if *self.peek() == Tok::Caret && self.toks[self.pos + 1].tok == Tok::LBrace {
                    self.next();
                    self.next();
                    let r = self.small_int(0)?;
                    self.expect(Tok::RBrace, "'}'")?;
                    if !self.starts_factor() {
                        return Err(self.error("x^{r} must be followed by a factor"));
                    }
                    let inner = self.factor()?;
                    let x = Polynomial::var(v);
                    let mut acc = inner;
                    for _ in 0..r {
                        acc = x.multiply(&acc);
                    }
                    Ok(acc)
                } else {
                    self.power(Polynomial::var(v))
                }
            }
            Tok::LParen => {
                let inner = self.poly()?;
                self.expect(Tok::RParen, "')'")?;
                self.power(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a variable or '('"))
            }
        }
    }

    fn power(&mut self, base: Polynomial) -> Result<Polynomial, ParseError> {
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        if *self.peek() == Tok::LBracket {
            self.next();
            let k = self.small_int(1)?;
            self.expect(Tok::RBracket, "']'")?;
            let mut acc = base;
            for _ in 1..k {
                acc = acc.multiply(&acc);
            }
            Ok(acc)
        } else {
            let k = self.small_int(1)?;
            let mut acc = base.clone();
            for _ in 1..k {
                acc = acc.multiply(&base);
            }
            Ok(acc)
        }
    }
}

pub fn parse(text: &str) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::End {
        return Err(p.error("empty expression"));
    }
    let out = p.poly()?;
    if *p.peek() != Tok::End {
        return Err(p.error("unexpected input"));
    }
    Ok(out)
}

/// Parse text that must denote a single monomial with coefficient 1.
pub fn parse_monomial(text: &str) -> Result<Monomial, ParseError> {
    let p = parse(text)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(ParseError { line: 1, column: 1, message: "expected a single monomial".into() }),
    }
}

/// `Some((v, k))` when `w` is the left-normed power `v^k`, `k >= 1`.
fn as_principal_power(w: &Monomial) -> Option<(Variable, u32)> {
    if let Some(v) = w.as_leaf() {
        return Some((v, 1));
    }
    let (a, b) = w.children()?;
    let v = a.as_leaf()?;
    let (u, k) = as_principal_power(b)?;
    (u == v).then_some((v, k + 1))
}

fn needs_space(left: &str, right: &str) -> bool {
    let l = left.chars().last().unwrap_or(' ');
    let r = right.chars().next().unwrap_or(' ');
    l != ')' && r != '('
}

fn join(a: &str, b: &str) -> String {
    if needs_space(a, b) {
        format!("{a} {b}")
    } else {
        format!("{a}{b}")
    }
}

/// The monomial as it appears at the top level of a term.
pub fn print_monomial(w: &Monomial) -> String {
    if let Some((v, k)) = as_principal_power(w) {
        return if k == 1 { v.name() } else { format!("{}^{k}", v.name()) };
    }
    let (a, b) = w.children().expect("non-leaf");
    if let Some(v) = a.as_leaf().or_else(|| b.as_leaf()) {
        // peel x(x(...(x f)))
        let x = Monomial::leaf(v);
        let mut r = 0;
        let mut rest = w.clone();
        while let Some((c, d)) = rest.children() {
            let other = if *c == x {
                d
            } else if *d == x {
                c
            } else {
                break;
            };
            if *other == x {
                break;
            }
            let other = other.clone();
            r += 1;
            rest = other;
        }
        if r >= 3 {
            debug_assert_eq!(left_iterate(v, r, &rest), *w);
            return format!("{}^{{{r}}}{}", v.name(), atom(&rest));
        }
    }
    let (first, second) = print_order(w, a, b);
    join(&atom(first), &atom(second))
}

/// Larger child first, except that a power of the lowest-index variable of
/// `w` leads, so `x(x y)`, `x^2(x^2 y)` and `(x y)y` print the usual way.
fn print_order<'a>(w: &Monomial, a: &'a Monomial, b: &'a Monomial) -> (&'a Monomial, &'a Monomial) {
    let lead = w.variables()[0];
    let lead_power = |m: &Monomial| as_principal_power(m).is_some_and(|(v, _)| v == lead);
    match (lead_power(a), lead_power(b)) {
        (true, false) => (a, b),
        (false, true) => (b, a),
        _ if a > b => (a, b),
        _ => (b, a),
    }
}

fn atom(w: &Monomial) -> String {
    if as_principal_power(w).is_some() {
        print_monomial(w)
    } else {
        format!("({})", print_monomial(w))
    }
}

fn print_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text: terms in decreasing monomial order.
pub fn print(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (w, c)) in f.terms().rev().enumerate() {
        let body = print_monomial(w);
        let a = c.abs();
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !a.is_one() {
            let _ = write!(out, "{} ", print_rational(&a));
        }
        out.push_str(&body);
    }
    out
}

/// `{"type": "[4,1]", "terms": [{"coeff": "-2", "monomial": "x^2 y"}]}`
pub fn to_json(f: &Polynomial) -> Value {
    let terms: Vec<Value> =
        f.terms().rev().map(|(w, c)| json!({ "coeff": print_rational(c), "monomial": print_monomial(w) })).collect();
    json!({ "type": f.type_vector().to_string(), "terms": terms })
}

pub fn from_json(v: &Value) -> Result<Polynomial, ParseError> {
    let bad = |message: &str| ParseError { line: 1, column: 1, message: message.to_string() };
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
    let mut out = Polynomial::zero();
    for t in terms {
        let c = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("missing coeff"))?;
        let m = t.get("monomial").and_then(Value::as_str).ok_or_else(|| bad("missing monomial"))?;
        let c: Rational = c.parse().map_err(|_| bad("bad coefficient"))?;
        out = out + parse(m)?.scale(&c);
    }
    Ok(out)
}
