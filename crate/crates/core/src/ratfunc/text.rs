//! Parser for the text form of rational functions.
//!
//! Accepts the canonical output of `Display` and, more generally, any
//! arithmetic expression in the variable names with `+ - * /`, parentheses
//! and integer powers `^k` or `^-k`.

use num_bigint::BigInt;

use super::{RatFunc, RatFuncError, Var};
use crate::Q;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, RatFuncError> {
        Err(RatFuncError::Parse { pos: self.pos, msg: msg.into() })
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

    fn expr(&mut self) -> Result<RatFunc, RatFuncError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, RatFuncError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat(b'/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, RatFuncError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, RatFuncError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return self.err("expected an integer exponent");
        }
        let Ok(k) = digits.parse::<i32>() else { return self.err("exponent too large") };
        base.checked_pow(if neg { -k } else { k })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RatFunc, RatFuncError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("digits");
                Ok(RatFunc::constant(Q::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match Var::from_name(name) {
                    Some(v) => Ok(RatFunc::var(v)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable '{name}'"))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, RatFuncError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

impl std::str::FromStr for RatFunc {
    type Err = RatFuncError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ratfunc(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let f = parse_ratfunc("(1 - H^-2)*b1*b2*Z^2/((1 - b1*Z)*(1 - eps*a*H^-1))").unwrap();
        let back = parse_ratfunc(&f.to_string()).unwrap();
        assert_eq!(f, back);
        assert_eq!(f.to_string(), back.to_string());
    }

    #[test]
    fn rational_coefficients() {
        let f = parse_ratfunc("-1/2*b1 + 3").unwrap();
        assert_eq!(f.to_string(), "-1/2*b1 + 3");
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_ratfunc("a + q"), Err(RatFuncError::Parse { pos: 4, .. })));
        assert!(matches!(parse_ratfunc("(a"), Err(RatFuncError::Parse { .. })));
        assert!(matches!(parse_ratfunc("a b"), Err(RatFuncError::Parse { .. })));
        assert!(matches!(parse_ratfunc("1/(1+eps)"), Err(RatFuncError::ZeroDivisor(_))));
    }
}
