//! Infix polynomial syntax: identifiers are variables, `+ - *`, `^` with a
//! non-negative integer exponent, parentheses, integer and `p/q` rational literals.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Field;

use super::polynomial::Poly;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: Field,
}

/// Parses `src` as a polynomial in `vars`. Error columns are 1-based offsets into `src`.
pub fn parse_poly(src: &str, vars: &[String], field: Field) -> Result<Poly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
        field,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.unary()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected an exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| Error::Parse {
                line: 1,
                column: start + 1,
                message: "exponent out of range".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Poly> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.atom()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut den = BigInt::from(1);
                let save = self.pos;
                self.skip_ws();
                // `p/q` only when a digit follows the slash
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        den = self.digits().parse().expect("digits");
                        if den == BigInt::from(0) {
                            return Err(self.err("division by zero"));
                        }
                    } else {
                        self.pos = save;
                    }
                } else {
                    self.pos = save;
                }
                let c = self
                    .field
                    .from_rational(&BigRational::new(num, den))
                    .map_err(|e| self.err(&e.to_string()))?;
                Ok(Poly::constant(n, self.field, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_' || c == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::var(n, self.field, i)),
                    None => Err(Error::Parse {
                        line: 1,
                        column: start + 1,
                        message: format!("unknown variable `{name}`"),
                    }),
                }
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parses_and_prints() {
        let p = parse_poly("x*y - 2*x^2 + 1/2*y^3", &vars(), Field::Rationals).unwrap();
        assert_eq!(p.format_with(&vars()), "-2*x^2 + x*y + 1/2*y^3");
        let q = parse_poly("(x + y)^2 - (x - y)^2", &vars(), Field::Rationals).unwrap();
        assert_eq!(q.format_with(&vars()), "4*x*y");
    }

    #[test]
    fn reports_column_of_unknown_variable() {
        let e = parse_poly("x + z", &vars(), Field::Rationals).unwrap_err();
        assert!(matches!(e, Error::Parse { column: 5, .. }), "{e:?}");
    }

    #[test]
    fn prime_field_literals() {
        let p = parse_poly("1/2*x", &vars(), Field::Prime(7)).unwrap();
        assert_eq!(p.format_with(&vars()), "4*x");
        assert!(parse_poly("1/7*x", &vars(), Field::Prime(7)).is_err());
    }
}
