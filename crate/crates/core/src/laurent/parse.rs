use num_bigint::BigInt;

use super::{LaurentError, LaurentPoly, VariableTable};

/// Parse a Laurent polynomial over the names of `table`.
///
/// ```text
/// expr   := ['-'] term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := atom ('^' exp)?
/// atom   := integer | name | '(' expr ')'
/// exp    := integer | '(' '-'? integer ')'
/// ```
pub fn parse(text: &str, table: &VariableTable) -> Result<LaurentPoly, LaurentError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, table };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    table: &'a VariableTable,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.table.len()
    }

    fn expr(&mut self) -> Result<LaurentPoly, LaurentError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, LaurentError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let k = if self.eat(b'(') {
            let neg = self.eat(b'-');
            let k = self.small_integer()?;
            if !self.eat(b')') {
                return Err(self.err("expected `)`"));
            }
            if neg {
                -k
            } else {
                k
            }
        } else {
            self.small_integer()?
        };
        base.powi(k).map_err(|_| LaurentError::Syntax {
            pos: at,
            msg: "negative power of a non-monomial".to_string(),
        })
    }

    fn atom(&mut self) -> Result<LaurentPoly, LaurentError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(LaurentPoly::constant(self.n(), v))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric()
                        || self.s[self.pos] == b'_'
                        || self.s[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match self.table.index_of(name) {
                    Some(i) => Ok(LaurentPoly::var(self.n(), i)),
                    None => Err(LaurentError::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<&str, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn integer(&mut self) -> Result<BigInt, LaurentError> {
        let d = self.digits()?;
        Ok(d.parse().unwrap())
    }

    fn small_integer(&mut self) -> Result<i64, LaurentError> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse::<i64>()
            .ok()
            .filter(|k| *k <= i32::MAX as i64)
            .ok_or(LaurentError::Syntax { pos: at, msg: "exponent too large".to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_canonically() {
        let t = VariableTable::cluster(["a", "b"]).unwrap();
        let p = parse("(1+a)^2 + a*b^2", &t).unwrap();
        assert_eq!(p.display(&t).to_string(), "1 + 2*a + a^2 + a*b^2");
        let t = VariableTable::cluster(["x", "y"]).unwrap();
        let p = parse("x^(-1)*y + 2", &t).unwrap();
        assert_eq!(p.display(&t).to_string(), "x^(-1)*y + 2");
    }

    #[test]
    fn unknown_variable() {
        let t = VariableTable::cluster(["a", "b"]).unwrap();
        match parse("a + z", &t) {
            Err(LaurentError::UnknownVariable { name, pos }) => {
                assert_eq!(name, "z");
                assert_eq!(pos, 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let t = VariableTable::cluster(["a"]).unwrap();
        assert!(matches!(parse("a +", &t), Err(LaurentError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("2a", &t), Err(LaurentError::Syntax { pos: 1, .. })));
        assert!(matches!(parse("(1+a)^(-1)", &t), Err(LaurentError::Syntax { .. })));
    }

    #[test]
    fn primed_names() {
        let t = VariableTable::cluster(["a'", "b"]).unwrap();
        let p = parse("1 + a'*b", &t).unwrap();
        assert_eq!(parse(&p.display(&t).to_string(), &t).unwrap(), p);
    }

    #[test]
    fn leading_minus() {
        let t = VariableTable::cluster(["a"]).unwrap();
        let p = parse("-a - 1", &t).unwrap();
        assert_eq!(p.display(&t).to_string(), "-1 - a");
        assert_eq!(parse("-1 - a", &t).unwrap(), p);
    }
}
