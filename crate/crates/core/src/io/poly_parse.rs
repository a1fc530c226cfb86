//! Polynomial strings: integers, variables, `+ - * ^` and parentheses.

use crate::algebra::poly::Poly;
use crate::algebra::ring::GradedRing;
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 64;
const MAX_DEPTH: usize = 64;
const MAX_TERMS: usize = 100_000;

struct Parser<'a> {
    ring: &'a GradedRing,
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    depth: usize,
}

/// Parses `s` as an element of the ambient polynomial ring of `ring`.
/// `line`/`col` locate the first byte of `s` for error messages.
pub fn parse_poly(ring: &GradedRing, s: &str, line: usize, col: usize) -> Result<Poly> {
    let mut p = Parser { ring, src: s.as_bytes(), pos: 0, line, col, depth: 0 };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty polynomial"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err(&format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(f)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: self.line, col: self.col + self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] == b' ' || self.src[self.pos] == b'\t') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn check_size(&self, f: &Poly) -> Result<()> {
        if f.len() > MAX_TERMS {
            return Err(self.err("polynomial too large"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Poly> {
        let field = self.ring.field();
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg(field)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, field);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?, field);
                }
                _ => break,
            }
            self.check_size(&acc)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            if acc.len().saturating_mul(f.len()) > MAX_TERMS {
                return Err(self.err("polynomial too large"));
            }
            acc = acc.mul(&f, self.ring.field());
            self.check_size(&acc)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let e = self.integer()?;
        if e > MAX_EXPONENT as u64 {
            self.pos = start;
            return Err(self.err(&format!("exponent above {MAX_EXPONENT}")));
        }
        let mut acc = self.ring.one();
        for _ in 0..e {
            if acc.len().saturating_mul(base.len()) > MAX_TERMS {
                return Err(self.err("polynomial too large"));
            }
            acc = acc.mul(&base, self.ring.field());
        }
        self.check_size(&acc)?;
        Ok(acc)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| self.err("integer too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(self.err("nesting too deep"));
                }
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                self.depth -= 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let p = self.ring.field().modulus() as u64;
                Ok(Poly::constant((v % p) as u32, self.ring.nvars()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while let Some(&c) = self.src.get(self.pos) {
                    if !(c.is_ascii_alphanumeric() || c == b'_') {
                        break;
                    }
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        line: self.line,
                        col: self.col + start,
                    }),
                }
            }
            Some(c) => Err(self.err(&format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> GradedRing {
        GradedRing::polynomial(7, &["x", "y"]).unwrap()
    }

    #[test]
    fn arithmetic() {
        let r = q();
        let f = parse_poly(&r, "(x+y)^2 - 2*x*y", 1, 1).unwrap();
        assert_eq!(r.fmt_poly(&f), "x^2+y^2");
        let g = parse_poly(&r, "-x + 8", 1, 1).unwrap();
        assert_eq!(r.fmt_poly(&g), "6*x+1");
    }

    #[test]
    fn unknown_variable_position() {
        let r = q();
        match parse_poly(&r, "x^2+z", 3, 12) {
            Err(Error::UnknownVariable { name, line, col }) => {
                assert_eq!((name.as_str(), line, col), ("z", 3, 16));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_garbage() {
        let r = q();
        for s in ["", "x^", "x**y", "(x", "x)", "x^999", "3x"] {
            assert!(parse_poly(&r, s, 1, 1).is_err(), "{s}");
        }
    }
}
