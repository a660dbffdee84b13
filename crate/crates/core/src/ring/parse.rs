//! Parser for the ring-spec mini-language.
//!
//! Grammar: a constructor name followed by parenthesized, comma-separated
//! arguments; arguments are integers, bracketed integer lists, or nested
//! specs. Whitespace is insignificant. `gf(q)` expands to `gf(p,k)` for
//! `q = p^k`.

use super::spec::{GfSpec, RingSpec};
use crate::{Error, Result};

pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut parser = Parser { text, pos: 0 };
    let spec = parser.spec()?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        return Err(parser.err("end of input"));
    }
    spec.validate()?;
    Ok(spec)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

#[derive(Debug)]
enum Arg {
    Int(u64),
    List(Vec<u64>),
    Spec(RingSpec),
}

impl Arg {
    fn kind(&self) -> &'static str {
        match self {
            Arg::Int(_) => "integer",
            Arg::List(_) => "integer list",
            Arg::Spec(_) => "ring spec",
        }
    }
}

impl<'a> Parser<'a> {
    fn err(&self, expected: &str) -> Error {
        let found = match self.rest().chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        Error::Parse {
            position: self.pos,
            expected: expected.to_string(),
            found,
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("{c:?}")))
        }
    }

    fn peek_is(&mut self, c: char) -> bool {
        self.skip_ws();
        self.rest().starts_with(c)
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.rest().starts_with(|c: char| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("constructor name"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("integer"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer fitting in 64 bits"))
    }

    fn arg(&mut self) -> Result<Arg> {
        self.skip_ws();
        match self.rest().chars().next() {
            Some(c) if c.is_ascii_digit() => Ok(Arg::Int(self.integer()?)),
            Some('[') => {
                self.eat('[')?;
                let mut items = vec![self.integer()?];
                while self.peek_is(',') {
                    self.eat(',')?;
                    items.push(self.integer()?);
                }
                self.eat(']')?;
                Ok(Arg::List(items))
            }
            Some(c) if c.is_ascii_alphabetic() => Ok(Arg::Spec(self.spec()?)),
            _ => Err(self.err("integer, list, or ring spec")),
        }
    }

    fn spec(&mut self) -> Result<RingSpec> {
        let at = self.pos;
        let name = self.ident()?;
        self.eat('(')?;
        let mut args = vec![self.arg()?];
        while self.peek_is(',') {
            self.eat(',')?;
            args.push(self.arg()?);
        }
        self.eat(')')?;
        self.assemble(name, args, at)
    }

    fn assemble(&self, name: &str, args: Vec<Arg>, at: usize) -> Result<RingSpec> {
        let wrong = |expected: &str, args: &[Arg]| {
            let got: Vec<&str> = args.iter().map(Arg::kind).collect();
            Error::Parse {
                position: at,
                expected: format!("{name}({expected})"),
                found: format!("{name}({})", got.join(", ")),
            }
        };
        match name {
            "zmod" => match args.as_slice() {
                [Arg::Int(n)] => Ok(RingSpec::Zmod { n: *n }),
                _ => Err(wrong("integer", &args)),
            },
            "gf" => match args.as_slice() {
                [Arg::Int(q)] => Ok(RingSpec::Gf(GfSpec::from_order(*q)?)),
                [Arg::Int(p), Arg::Int(k)] => Ok(RingSpec::Gf(GfSpec {
                    p: *p,
                    k: *k as u32,
                    modulus: None,
                })),
                [Arg::Int(p), Arg::Int(k), Arg::List(m)] => Ok(RingSpec::Gf(GfSpec {
                    p: *p,
                    k: *k as u32,
                    modulus: Some(m.clone()),
                })),
                _ => Err(wrong("q | p, k | p, k, [coeffs]", &args)),
            },
            "mat" => match args.as_slice() {
                [Arg::Int(n), Arg::Spec(RingSpec::Gf(base))] => Ok(RingSpec::Mat {
                    n: *n as u32,
                    base: base.clone(),
                }),
                _ => Err(wrong("n, gf(...)", &args)),
            },
            "prod" => {
                let mut factors = Vec::with_capacity(args.len());
                for a in &args {
                    match a {
                        Arg::Spec(s) => factors.push(s.clone()),
                        _ => return Err(wrong("ring specs", &args)),
                    }
                }
                Ok(RingSpec::Prod { factors })
            }
            "trunc" => match args.as_slice() {
                [Arg::Spec(RingSpec::Gf(base)), Arg::Int(k)] => Ok(RingSpec::Trunc {
                    base: base.clone(),
                    k: *k as u32,
                }),
                _ => Err(wrong("gf(...), k", &args)),
            },
            other => Err(Error::Parse {
                position: at,
                expected: "one of zmod, gf, mat, prod, trunc".to_string(),
                found: other.to_string(),
            }),
        }
    }
}
