//! Text format for polynomials: a sum of terms `c*x^a*y^b*z^c`.
//!
//! Coefficients print as `p/q`, `b*sqrt(d)`, `(a+b*sqrt(d))` or, over F_p,
//! as the reduced residue. The parser additionally accepts `(n mod p)`,
//! parenthesized sub-expressions, products and division by constants.
//! Whitespace is ignored. Printing then parsing gives back the same
//! polynomial.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

impl Polynomial {
    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Polynomial> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
            ring,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

/// Parses a single scalar (a constant polynomial) in `field`; a bare
/// `n mod p` is accepted as well.
pub fn parse_scalar(field: Field, s: &str) -> Result<FieldElement> {
    let ring = Ring::new::<&str>(&[], field, Default::default())?;
    let p = match Polynomial::parse(&ring, s) {
        Err(e) if s.contains("mod") && !s.trim_start().starts_with('(') => {
            Polynomial::parse(&ring, &format!("({s})")).map_err(|_| e)?
        }
        other => other?,
    };
    Ok(p.leading_coeff().cloned().unwrap_or_else(|| field.zero()))
}

/// Scalar in the same text form used for polynomial coefficients.
pub fn format_scalar(c: &FieldElement) -> String {
    match c {
        FieldElement::Prime(r) => r.value().to_string(),
        FieldElement::Quadratic(q) if !q.a.is_zero() && !q.b.is_zero() => format!("({c})"),
        _ => c.to_string(),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat(b'-') {
            -&self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.factor()?;
                if !d.is_constant() || d.is_zero() {
                    self.pos = at;
                    return Err(self.err(if d.is_zero() { "division by zero" } else { "division by a non-constant" }));
                }
                acc = acc.scale(&d.leading_coeff().expect("nonzero").inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e = u32::try_from(&e).map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits"))
    }

    fn ident(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        (start != self.pos).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                let save = self.pos;
                if self.ident() == Some("mod") {
                    let at = self.pos;
                    let p = self.integer()?;
                    if Field::Prime(u64::try_from(&p).unwrap_or(0)) != field {
                        self.pos = at;
                        return Err(self.err(&format!("modulus {p} does not match field {field}")));
                    }
                    if !inner.is_constant() {
                        return Err(self.err("`mod` applies to an integer"));
                    }
                } else {
                    self.pos = save;
                }
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.ring, field.from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let at = self.pos;
                let name = self.ident().expect("identifier").to_string();
                if name == "sqrt" {
                    self.expect(b'(')?;
                    let n = self.integer()?;
                    self.expect(b')')?;
                    let n = i64::try_from(&n).map_err(|_| self.err("radicand out of range"))?;
                    let root = field.sqrt_of(n).ok_or_else(|| Error::Parse {
                        offset: at,
                        message: format!("sqrt({n}) does not exist in {field}"),
                    })?;
                    return Ok(Polynomial::constant(self.ring, root));
                }
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => {
                        self.pos = at;
                        Err(self.err(&format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Splits a coefficient into (negative, magnitude text). The magnitude text is
/// empty for a unit coefficient.
fn coefficient_text(c: &FieldElement) -> (bool, String) {
    let (neg, abs) = match c {
        FieldElement::Rational(q) => (q.is_negative(), FieldElement::Rational(q.abs())),
        FieldElement::Quadratic(q) if q.a.is_zero() || q.b.is_zero() => {
            let lead = if q.b.is_zero() { &q.a } else { &q.b };
            if lead.is_negative() {
                (true, c.neg_ref())
            } else {
                (false, c.clone())
            }
        }
        _ => (false, c.clone()),
    };
    if abs.is_one() {
        return (neg, String::new());
    }
    (neg, format_scalar(&abs))
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, vars: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, v) in vars.iter().enumerate() {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(v)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let vars = self.ring().vars();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let (neg, text) = coefficient_text(c);
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(if text.is_empty() { "1" } else { &text })?;
            } else {
                if !text.is_empty() {
                    write!(f, "{text}*")?;
                }
                write_monomial(f, m, vars)?;
            }
        }
        Ok(())
    }
}
