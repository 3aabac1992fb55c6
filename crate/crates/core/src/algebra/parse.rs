//! Plain-text element syntax.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' digits]
//! atom   := rational | i | zeta | lambda | s | T00 | T01 | T11
//!         | a0 | a1 | b0 | b1 | L<p> | Q<p> | R<k> | S<k> | '(' expr ')'
//! ```
//! Juxtaposition is the product. `zeta` is the primitive 4n-th root of
//! unity, `lambda` = zeta^4, and `s` the singlet.

use std::sync::Arc;

use num_bigint::BigInt;

use super::element::AlgebraElement;
use super::engine::Sra;
use super::special::{singlet, t_element};
use crate::dihedral::{GroupBasis, GroupWord};
use crate::error::{Error, Result};
use crate::exactnum::{rational::Rational, CycloNumber};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(src[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                offset: i,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    sra: &'a Arc<Sra>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.factor()?;
        loop {
            let explicit = self.eat('*');
            match self.peek() {
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) => {
                    acc = acc.mul(&self.factor()?)?;
                }
                _ if explicit => return self.err("expected a factor after '*'"),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<AlgebraElement> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::usage("exponent too large"))?;
                    if e > 256 {
                        return Err(Error::Resource(format!("exponent {e} exceeds 256")));
                    }
                    base.pow(e)
                }
                _ => self.err("expected an exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        let sra = self.sra;
        let field = sra.field();
        let n = sra.n() as i64;
        let tok = match self.peek().cloned() {
            Some(t) => t,
            None => return self.err("unexpected end of input"),
        };
        let start = self.offset();
        self.pos += 1;
        let scalar = |c: CycloNumber| Ok(AlgebraElement::scalar(sra, c));
        match tok {
            Tok::Num(num) => {
                let mut r = Rational::from_integer(num);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            self.pos += 1;
                            r /= Rational::from_integer(d);
                        }
                        Some(Tok::Num(_)) => return self.err("zero denominator"),
                        _ => return self.err("expected a denominator"),
                    }
                }
                scalar(CycloNumber::from_rational(field, r))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Tok::Sym(c) => {
                self.pos -= 1;
                self.err(format!("unexpected {c:?}"))
            }
            Tok::Ident(name) => {
                let (head, digits) = name.split_at(
                    name.find(|c: char| c.is_ascii_digit())
                        .unwrap_or(name.len()),
                );
                let idx = || -> Result<i64> {
                    digits.parse::<i64>().map_err(|_| Error::Parse {
                        offset: start,
                        message: format!("{name} needs an index"),
                    })
                };
                match (head, digits) {
                    ("i", "") => scalar(CycloNumber::i(field)),
                    ("zeta", "") => scalar(CycloNumber::zeta_pow(field, 1)),
                    ("lambda", "") => scalar(CycloNumber::lambda_pow(field, 1)),
                    ("s", "") => Ok(singlet(sra)),
                    ("T", "00") => Ok(t_element(sra, 0, 0)),
                    ("T", "01") | ("T", "10") => Ok(t_element(sra, 0, 1)),
                    ("T", "11") => Ok(t_element(sra, 1, 1)),
                    ("a", "0") => Ok(AlgebraElement::letter(sra, 0)),
                    ("a", "1") => Ok(AlgebraElement::letter(sra, 1)),
                    ("b", "0") => Ok(AlgebraElement::letter(sra, 2)),
                    ("b", "1") => Ok(AlgebraElement::letter(sra, 3)),
                    ("L", _) => Ok(AlgebraElement::group_basis(
                        sra,
                        GroupBasis::l(idx()?, n as u32),
                    )),
                    ("Q", _) => Ok(AlgebraElement::group_basis(
                        sra,
                        GroupBasis::q(idx()?, n as u32),
                    )),
                    ("R", _) => Ok(AlgebraElement::group_word(
                        sra,
                        GroupWord::reflection(idx()?, n as u32),
                    )),
                    ("S", _) => Ok(AlgebraElement::group_word(
                        sra,
                        GroupWord::rotation(idx()?, n as u32),
                    )),
                    _ => {
                        self.pos -= 1;
                        self.err(format!("unknown symbol {name:?}"))
                    }
                }
            }
        }
    }
}

/// Parses an element of the algebra.
pub fn parse_element(sra: &Arc<Sra>, src: &str) -> Result<AlgebraElement> {
    let toks = lex(src)?;
    let mut p = Parser {
        sra,
        toks,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
