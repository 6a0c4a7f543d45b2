//! A tiny call-syntax reader shared by model references and monotone maps:
//! `name`, `name(arg, key=arg, ...)`, and `[item, ...]`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Term {
    Atom(String),
    Call(String, Vec<(Option<String>, Term)>),
    List(Vec<Term>),
}

impl Term {
    pub(crate) fn parse(src: &str) -> Result<Term> {
        let mut r = Reader { s: src.as_bytes(), pos: 0 };
        let t = r.term()?;
        r.ws();
        if r.pos != r.s.len() {
            return Err(r.err("trailing input"));
        }
        Ok(t)
    }

    pub(crate) fn atom(&self) -> Result<&str> {
        match self {
            Term::Atom(a) => Ok(a),
            _ => Err(Error::invalid("expected a plain value")),
        }
    }

    pub(crate) fn list(&self) -> Result<&[Term]> {
        match self {
            Term::List(items) => Ok(items),
            _ => Err(Error::invalid("expected a list")),
        }
    }
}

struct Reader<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn err(&self, why: &str) -> Error {
        Error::invalid(format!("{why} at column {}", self.pos + 1))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        let hit = self.peek() == Some(c);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn word(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && !b" \t\r\n(),[]=".contains(&self.s[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name or value"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn term(&mut self) -> Result<Term> {
        if self.eat(b'[') {
            let mut items = Vec::new();
            if !self.eat(b']') {
                loop {
                    items.push(self.term()?);
                    if self.eat(b']') {
                        break;
                    }
                    if !self.eat(b',') {
                        return Err(self.err("expected `,` or `]`"));
                    }
                }
            }
            return Ok(Term::List(items));
        }
        let name = self.word()?;
        if !self.eat(b'(') {
            return Ok(Term::Atom(name));
        }
        let mut args = Vec::new();
        if !self.eat(b')') {
            loop {
                let save = self.pos;
                let key = match self.peek() {
                    Some(b'[') => None,
                    _ => {
                        let w = self.word()?;
                        if self.eat(b'=') {
                            Some(w)
                        } else {
                            self.pos = save;
                            None
                        }
                    }
                };
                args.push((key, self.term()?));
                if self.eat(b')') {
                    break;
                }
                if !self.eat(b',') {
                    return Err(self.err("expected `,` or `)`"));
                }
            }
        }
        Ok(Term::Call(name, args))
    }
}
