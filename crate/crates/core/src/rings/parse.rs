use super::{Elem, Ring};
use crate::error::{Error, Result};

// expr   := ['-'] term (('+' | '-') term)*
// term   := factor ('*' factor)*
// factor := atom ('^' int)?
// atom   := int | name | '(' expr ')'
struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse_elem(ring: &Ring, text: &str) -> Result<Elem> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
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

    fn expr(&mut self) -> Result<Elem> {
        let r = self.ring;
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            r.neg(self.term()?)
        } else {
            self.term()?
        };
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { r.add(acc, t) } else { r.sub(acc, t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = self.ring.mul(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.int()?;
            return Ok(self.ring.pow(base, k as u32));
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected integer"))
    }

    fn atom(&mut self) -> Result<Elem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(self.ring.from_int(self.int()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.ring
                    .variable(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in {:?}", self.ring)))
            }
            _ => Err(self.error("expected element")),
        }
    }
}
