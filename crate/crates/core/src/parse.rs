//! Text literals: `(a1,a2)` for Z[ζ3] and `((r1,r2),(s1,s2))` for Z[ζ12].
//!
//! Whitespace between tokens is ignored. Errors report a 1-based column.

use crate::eisenstein::Eisenstein;
use crate::error::{Error, Result};
use crate::scalar::Int;
use crate::zeta12::Cyclo12;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<X>(&self, msg: impl Into<String>) -> Result<X> {
        Err(Error::Parse {
            pos: self.pos + 1,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(&b) if b == c => {
                self.pos += 1;
                Ok(())
            }
            Some(&b) => self.err(format!("expected '{}', found '{}'", c as char, b as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn integer<T: Int>(&mut self) -> Result<T> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = digits;
            return self.err("expected a decimal integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let text = text.strip_prefix('+').unwrap_or(text);
        T::from_str_radix(text, 10).or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn eis<T: Int>(&mut self) -> Result<Eisenstein<T>> {
        self.expect(b'(')?;
        let a1 = self.integer()?;
        self.expect(b',')?;
        let a2 = self.integer()?;
        self.expect(b')')?;
        Ok(Eisenstein::new(a1, a2))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err("trailing characters");
        }
        Ok(())
    }
}

pub fn parse_eis<T: Int>(s: &str) -> Result<Eisenstein<T>> {
    let mut c = Cursor::new(s);
    let v = c.eis()?;
    c.finish()?;
    Ok(v)
}

pub fn parse_z12<T: Int>(s: &str) -> Result<Cyclo12<T>> {
    let mut c = Cursor::new(s);
    c.expect(b'(')?;
    let r = c.eis()?;
    c.expect(b',')?;
    let s_part = c.eis()?;
    c.expect(b')')?;
    c.finish()?;
    Ok(Cyclo12::new(r, s_part))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_eisenstein_literals() {
        assert_eq!(parse_eis::<i64>("(3,-4)").unwrap(), Eisenstein::from_ints(3, -4));
        assert_eq!(parse_eis::<i64>(" ( +3 , -4 ) ").unwrap(), Eisenstein::from_ints(3, -4));
        let text = Eisenstein::<i128>::from_ints(-17, 0).to_string();
        assert_eq!(parse_eis::<i128>(&text).unwrap(), Eisenstein::from_ints(-17, 0));
    }

    #[test]
    fn reports_columns() {
        assert_eq!(
            parse_eis::<i64>("(3;4)"),
            Err(Error::Parse {
                pos: 3,
                msg: "expected ',', found ';'".into()
            })
        );
        assert!(matches!(parse_eis::<i64>("(3,x)"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_eis::<i64>("(3,4"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_eis::<i64>("(3,4))"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(
            parse_eis::<i64>("(99999999999999999999,0)"),
            Err(Error::Parse { pos: 2, .. })
        ));
    }

    #[test]
    fn parses_z12_literals() {
        let z = parse_z12::<i64>("((1,2),(-3,4))").unwrap();
        assert_eq!(z.r, Eisenstein::from_ints(1, 2));
        assert_eq!(z.s, Eisenstein::from_ints(-3, 4));
        assert_eq!(parse_z12::<i64>(&z.to_string()).unwrap(), z);
        assert!(matches!(
            parse_z12::<i64>("((1,2)(-3,4))"),
            Err(Error::Parse { pos: 7, .. })
        ));
    }
}
