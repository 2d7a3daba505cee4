//! Recursive-descent reader for expressions in `q`, `t` and integers with
//! `+ - * / ^` and parentheses. Accepts the canonical `c*q^a*t^b` rendering
//! as well as hand-written input such as `(1-q^-1*t)/(1-t)`.

use num_bigint::BigInt;

use super::ratfun::RationalFunctionQT;
use super::CoeffError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub(crate) fn parse_expr(s: &str) -> Result<RationalFunctionQT, CoeffError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CoeffError {
        CoeffError::Parse(format!("{msg} at byte {}", self.pos))
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

    fn sum(&mut self) -> Result<RationalFunctionQT, CoeffError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.product()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    // canonical rendering writes negative terms as `+-c*...`
                    let v = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        -self.product()?
                    } else {
                        self.product()?
                    };
                    acc += &v;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let v = self.product()?;
                    acc -= &v;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<RationalFunctionQT, CoeffError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let v = self.power()?;
                    acc *= &v;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let v = self.power()?;
                    acc = acc.checked_div(&v)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RationalFunctionQT, CoeffError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i64 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunctionQT, CoeffError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(RationalFunctionQT::q())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RationalFunctionQT::t())
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => Ok(RationalFunctionQT::from_int(self.integer()?)),
            _ => Err(self.err("expected a number, `q`, `t` or `(`")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, CoeffError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().map_err(|_| self.err("bad integer"))
    }
}
