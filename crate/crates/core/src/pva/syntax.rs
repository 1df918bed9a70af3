//! Text syntax: `u1[3]` is the third derivative of `u1`, `c` is the
//! symbolic constant and `L` stands for `λ`. Terms are printed in canonical
//! order as `coef*factor*...*L^k` so that parsing the output gives back the
//! same value.

use serde::{Deserialize, Serialize};

use super::diffpoly::{DiffPoly, Gen, Monomial};
use super::lambda::LambdaPoly;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Rational};
use num_traits::{One, Signed};

const RESERVED: [&str; 3] = ["c", "L", "D"];

pub(crate) fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
        || (name.starts_with('c') && name.len() > 1 && name[1..].bytes().all(|b| b.is_ascii_digit()))
}

/// Names of the differential variables, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    /// `u1, …, un`.
    pub fn indexed(n: usize) -> Self {
        VarSet { names: (1..=n).map(|i| format!("u{i}")).collect() }
    }

    /// Panics on names that are reserved, repeated or not identifiers.
    pub fn named<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self::try_named(names).expect("valid variable names")
    }

    pub fn try_named<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            let ident = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ident || is_reserved(n) {
                return Err(Error::Parse(format!("`{n}` cannot name a variable")));
            }
            if names[..i].contains(n) {
                return Err(Error::Parse(format!("variable `{n}` repeated")));
            }
        }
        Ok(VarSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> String {
        self.names.get(i).cloned().unwrap_or_else(|| format!("u{}", i + 1))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Keeps the listed variables, in the listed order.
    pub fn subset(&self, keep: &[usize]) -> VarSet {
        VarSet { names: keep.iter().map(|&i| self.name(i)).collect() }
    }
}

fn gen_text(g: Gen, vars: &VarSet) -> String {
    match g {
        Gen::Param(0) => "c".into(),
        Gen::Param(k) => format!("c{k}"),
        Gen::Var { var, order } => format!("{}[{order}]", vars.name(var as usize)),
    }
}

fn term_text(c: &Rational, m: &Monomial, lambda_pow: usize, sym: &str, vars: &VarSet, first: bool) -> String {
    let mut factors: Vec<String> = m
        .factors()
        .iter()
        .map(|&(g, e)| if e == 1 { gen_text(g, vars) } else { format!("{}^{e}", gen_text(g, vars)) })
        .collect();
    match lambda_pow {
        0 => {}
        1 => factors.push(sym.to_string()),
        k => factors.push(format!("{sym}^{k}")),
    }
    let a = c.abs();
    let body = if factors.is_empty() {
        fmt_rational(&a)
    } else if a.is_one() {
        factors.join("*")
    } else {
        format!("{}*{}", fmt_rational(&a), factors.join("*"))
    };
    match (first, c.is_negative()) {
        (true, false) => body,
        (true, true) => format!("-{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" - {body}"),
    }
}

pub(crate) fn lambda_text(p: &LambdaPoly, sym: &str, vars: &VarSet) -> String {
    let mut s = String::new();
    for (k, coeff) in p.coeffs().iter().enumerate() {
        for (m, c) in coeff.terms() {
            s.push_str(&term_text(c, m, k, sym, vars, s.is_empty()));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl DiffPoly {
    pub fn to_text(&self, vars: &VarSet) -> String {
        lambda_text(&LambdaPoly::constant(self.clone()), "L", vars)
    }

    pub fn parse(s: &str, vars: &VarSet) -> Result<DiffPoly> {
        let p = parse_with_symbol(s, vars, "L")?;
        match p.degree() {
            None => Ok(DiffPoly::zero()),
            Some(0) => Ok(p.coeff(0)),
            Some(_) => Err(Error::Parse(format!("`L` is not allowed in a differential polynomial: `{s}`"))),
        }
    }
}

impl LambdaPoly {
    pub fn to_text(&self, vars: &VarSet) -> String {
        lambda_text(self, "L", vars)
    }

    pub fn parse(s: &str, vars: &VarSet) -> Result<LambdaPoly> {
        parse_with_symbol(s, vars, "L")
    }
}

impl std::fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text(&VarSet::indexed(0)))
    }
}

impl std::fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text(&VarSet::indexed(0)))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()[]".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a VarSet,
    sym: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}` at token {}", self.pos)))
        }
    }

    fn int(&mut self) -> Result<u32> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.parse().map_err(|_| Error::Parse(format!("integer `{n}` too large")))
            }
            _ => Err(Error::Parse(format!("expected an integer at token {}", self.pos))),
        }
    }

    fn expr(&mut self) -> Result<LambdaPoly> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LambdaPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LambdaPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.int()?;
            let mut acc = LambdaPoly::constant(DiffPoly::one());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LambdaPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut text = n;
                if self.eat('/') {
                    text = format!("{text}/{}", self.int()?);
                }
                Ok(LambdaPoly::constant(DiffPoly::constant(parse_rational(&text)?)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == self.sym {
                    return Ok(LambdaPoly::monomial(DiffPoly::one(), 1));
                }
                if let Some(i) = self.vars.index_of(&name) {
                    let order = if self.eat('[') {
                        let o = self.int()?;
                        self.expect(']')?;
                        o
                    } else {
                        0
                    };
                    return Ok(LambdaPoly::constant(DiffPoly::var(i, order)));
                }
                if name == "c" {
                    return Ok(LambdaPoly::constant(DiffPoly::param(0)));
                }
                if let Some(k) = name.strip_prefix('c').and_then(|d| d.parse::<u16>().ok()) {
                    return Ok(LambdaPoly::constant(DiffPoly::param(k)));
                }
                Err(Error::Parse(format!("unknown variable `{name}`")))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub(crate) fn parse_with_symbol(s: &str, vars: &VarSet, sym: &str) -> Result<LambdaPoly> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0, vars, sym };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}
