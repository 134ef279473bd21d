//! Polynomial expression parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*        division only by nonzero constants
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | ident | '(' expr ')'
//! ident   := [a-zA-Z][a-zA-Z0-9_']*
//! ```

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Poly, Ring, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Int(s.parse().unwrap())));
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i].1) {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Ident(s)));
            }
            _ => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(Error::Syntax {
                            pos,
                            msg: format!("unexpected character `{other}`"),
                        })
                    }
                };
                out.push((pos, t));
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Ring,
    defs: Option<&'a HashMap<String, Poly>>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => {
                            return Err(Error::Syntax {
                                pos: at,
                                msg: "division by zero".into(),
                            })
                        }
                        None => {
                            return Err(Error::Syntax {
                                pos: at,
                                msg: "division only by nonzero constants".into(),
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .or_else(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.ring, Q::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(p) = self.defs.and_then(|d| d.get(&name)) {
                    return p.embed(self.ring);
                }
                Poly::named(self.ring, &name)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(t) => Err(Error::Syntax {
                pos: at,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Syntax {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

fn parse_inner(src: &str, ring: &Ring, defs: Option<&HashMap<String, Poly>>) -> Result<Poly> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        ring,
        defs,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parse an expression over `ring`; unknown identifiers are an error.
pub fn parse_poly(src: &str, ring: &Ring) -> Result<Poly> {
    parse_inner(src, ring, None)
}

/// Like [`parse_poly`], but identifiers bound in `defs` expand to their value.
pub fn parse_poly_with(src: &str, ring: &Ring, defs: &HashMap<String, Poly>) -> Result<Poly> {
    parse_inner(src, ring, Some(defs))
}

/// Split at top-level commas.
pub fn split_list(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = src[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

/// Comma-separated list of polynomials.
pub fn parse_poly_list(src: &str, ring: &Ring) -> Result<Vec<Poly>> {
    split_list(src)
        .into_iter()
        .map(|s| parse_poly(s, ring))
        .collect()
}

/// Identifiers occurring in the sources.
pub fn identifiers<'a, I: IntoIterator<Item = &'a str>>(srcs: I) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for s in srcs {
        for (_, t) in lex(s)? {
            if let Tok::Ident(n) = t {
                out.insert(n);
            }
        }
    }
    Ok(out)
}

/// A ring containing every identifier in `srcs`: the names in `leading`
/// first (those that occur or are forced), then the rest alphabetically.
pub fn infer_ring<'a, I: IntoIterator<Item = &'a str>>(srcs: I, leading: &[&str]) -> Result<Ring> {
    let ids = identifiers(srcs)?;
    let mut names: Vec<String> = leading.iter().map(|s| s.to_string()).collect();
    names.extend(ids.into_iter().filter(|n| !leading.contains(&n.as_str())));
    Ok(Ring::new(names))
}
