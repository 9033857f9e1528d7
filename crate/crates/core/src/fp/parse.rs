//! Relator syntax: juxtaposition for products, `x^n` powers, `x^y`
//! conjugation (`y⁻¹xy`), `[x,y]` commutators (`x⁻¹y⁻¹xy`), braces for
//! grouped exponents such as `a^{b^2}` or `t^{-1}`, and indexed names like
//! `e_0` or `e_{12}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Int(i64),
    /// The index variable of a family definition, possibly negated.
    Var { negated: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Product(Vec<Expr>),
    Power(Box<Expr>, Exponent),
    Conjugate(Box<Expr>, Box<Expr>),
    Commutator(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Name(n) => {
                if !out.contains(n) {
                    out.push(n.clone())
                }
            }
            Expr::Product(v) => v.iter().for_each(|e| e.names(out)),
            Expr::Power(e, _) => e.names(out),
            Expr::Conjugate(a, b) | Expr::Commutator(a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }

    /// The expression spelling out a free word, with `x^-1` for inverses.
    pub fn from_word(w: &Word, names: &[String]) -> Expr {
        let mut e: Vec<Expr> = w
            .letters()
            .iter()
            .map(|&l| {
                let name = Expr::Name(names[(l.unsigned_abs() - 1) as usize].clone());
                if l < 0 {
                    Expr::Power(Box::new(name), Exponent::Int(-1))
                } else {
                    name
                }
            })
            .collect();
        if e.len() == 1 {
            e.pop().expect("one factor")
        } else {
            Expr::Product(e)
        }
    }

    /// Replaces every occurrence of `pattern` by `Name(name)`. Powers of the
    /// pattern's base are folded when the exponent is a multiple of the
    /// pattern's exponent, so `b^8` becomes `z^4` for `z = b^2`.
    pub fn substitute(&self, pattern: &Expr, name: &str) -> Expr {
        if self == pattern {
            return Expr::Name(name.to_string());
        }
        if let (Expr::Power(base, Exponent::Int(k)), Expr::Power(pbase, Exponent::Int(m))) =
            (self, pattern)
        {
            if base == pbase && *m != 0 && k % m == 0 {
                return Expr::Power(Box::new(Expr::Name(name.to_string())), Exponent::Int(k / m));
            }
        }
        match self {
            Expr::Name(_) => self.clone(),
            Expr::Product(v) => Expr::Product(v.iter().map(|e| e.substitute(pattern, name)).collect()),
            Expr::Power(e, x) => Expr::Power(Box::new(e.substitute(pattern, name)), x.clone()),
            Expr::Conjugate(a, b) => Expr::Conjugate(
                Box::new(a.substitute(pattern, name)),
                Box::new(b.substitute(pattern, name)),
            ),
            Expr::Commutator(a, b) => Expr::Commutator(
                Box::new(a.substitute(pattern, name)),
                Box::new(b.substitute(pattern, name)),
            ),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atom(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                Expr::Name(_) | Expr::Commutator(..) => write!(f, "{e}"),
                _ => write!(f, "({e})"),
            }
        }
        match self {
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Product(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    match e {
                        Expr::Product(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            Expr::Power(e, x) => {
                atom(e, f)?;
                match x {
                    Exponent::Int(k) if *k < 0 => write!(f, "^{{{k}}}"),
                    Exponent::Int(k) => write!(f, "^{k}"),
                    Exponent::Var { negated: false } => write!(f, "^i"),
                    Exponent::Var { negated: true } => write!(f, "^{{-i}}"),
                }
            }
            Expr::Conjugate(a, b) => {
                atom(a, f)?;
                match b.as_ref() {
                    Expr::Name(_) => write!(f, "^{b}"),
                    _ => write!(f, "^{{{b}}}"),
                }
            }
            Expr::Commutator(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    Minus,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '[' => {
                out.push(Tok::LBrack);
                i += 1
            }
            ']' => {
                out.push(Tok::RBrack);
                i += 1
            }
            '{' => {
                out.push(Tok::LBrace);
                i += 1
            }
            '}' => {
                out.push(Tok::RBrace);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Int(s.parse().map_err(|_| Error::Parse(format!("bad integer {s}")))?));
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = c.to_string();
                i += 1;
                if i < chars.len() && chars[i] == '_' {
                    i += 1;
                    name.push('_');
                    if i < chars.len() && chars[i] == '{' {
                        i += 1;
                        while i < chars.len() && chars[i] != '}' {
                            if !chars[i].is_whitespace() {
                                name.push(chars[i]);
                            }
                            i += 1;
                        }
                        if i == chars.len() {
                            return Err(Error::Parse("unbalanced brace in subscript".into()));
                        }
                        i += 1;
                    } else if i < chars.len() && chars[i].is_ascii_digit() {
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            name.push(chars[i]);
                            i += 1;
                        }
                    } else if i < chars.len() && chars[i].is_ascii_alphabetic() {
                        name.push(chars[i]);
                        i += 1;
                    } else {
                        return Err(Error::Parse(format!("empty subscript after {c}_")));
                    }
                }
                out.push(Tok::Ident(name));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    /// Name of the family index variable while parsing a family body.
    var: Option<&'a str>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut items = Vec::new();
        while let Some(t) = self.peek() {
            match t {
                Tok::Ident(_) | Tok::LParen | Tok::LBrack => items.push(self.item()?),
                Tok::Int(1) => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Product(items)
        })
    }

    fn item(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            e = self.exponent(e)?;
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Ident(n)) => Ok(Expr::Name(n)),
            Some(Tok::LParen) => {
                let e = self.product()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::LBrack) => {
                let a = self.product()?;
                self.expect(Tok::Comma)?;
                let b = self.product()?;
                self.expect(Tok::RBrack)?;
                Ok(Expr::Commutator(Box::new(a), Box::new(b)))
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }

    fn exponent(&mut self, base: Expr) -> Result<Expr> {
        let power = |base: Expr, x: Exponent| Ok(Expr::Power(Box::new(base), x));
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                power(base, Exponent::Int(k))
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                match self.next() {
                    Some(Tok::Int(k)) => power(base, Exponent::Int(-k)),
                    Some(Tok::Ident(v)) if Some(v.as_str()) == self.var => {
                        power(base, Exponent::Var { negated: true })
                    }
                    t => Err(Error::Parse(format!("bad negative exponent {t:?}"))),
                }
            }
            Some(Tok::Ident(v)) if Some(v.as_str()) == self.var => {
                self.pos += 1;
                power(base, Exponent::Var { negated: false })
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Conjugate(Box::new(base), Box::new(Expr::Name(v))))
            }
            Some(Tok::LParen) | Some(Tok::LBrack) => {
                let by = self.atom()?;
                Ok(Expr::Conjugate(Box::new(base), Box::new(by)))
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let negated = if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let e = match self.peek().cloned() {
                    Some(Tok::Int(k)) => {
                        self.pos += 1;
                        Expr::Power(Box::new(base), Exponent::Int(if negated { -k } else { k }))
                    }
                    Some(Tok::Ident(v)) if Some(v.as_str()) == self.var => {
                        self.pos += 1;
                        Expr::Power(Box::new(base), Exponent::Var { negated })
                    }
                    _ if negated => return Err(Error::Parse("negated conjugator".into())),
                    _ => {
                        let by = self.product()?;
                        Expr::Conjugate(Box::new(base), Box::new(by))
                    }
                };
                self.expect(Tok::RBrace)?;
                Ok(e)
            }
            t => Err(Error::Parse(format!("bad exponent {t:?}"))),
        }
    }
}

/// Parses one relator expression.
pub fn parse_expr(text: &str) -> Result<Expr> {
    parse_expr_with_var(text, None)
}

fn parse_expr_with_var(text: &str, var: Option<&str>) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        var,
    };
    let e = p.product()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input in {text:?} at token {:?}",
            p.toks[p.pos]
        )));
    }
    if e == Expr::Product(Vec::new()) && !text.trim().is_empty() && text.trim() != "1" {
        return Err(Error::Parse(format!("empty relator {text:?}")));
    }
    Ok(e)
}

/// Splits a comma-separated relator list at top level only.
pub fn split_top_level(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            if !cur.trim().is_empty() {
                out.push(cur.trim().to_string());
            }
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Named abbreviations: plain (`t = e_0 e_3 e_0`) or indexed families
/// (`e_i = a^i e_0 a^-i`).
#[derive(Clone, Debug, Default)]
pub struct Macros {
    plain: Vec<(String, Expr)>,
    families: Vec<(String, Expr)>,
    source: Vec<String>,
}

impl Macros {
    pub fn parse_def(&mut self, line: &str) -> Result<()> {
        let (lhs, rhs) = line
            .split_once('=')
            .or_else(|| line.split_once(":="))
            .ok_or_else(|| Error::Parse(format!("definition without '=': {line:?}")))?;
        let lhs = lhs.trim().trim_end_matches(':').trim();
        self.source.push(format!("{lhs} = {}", rhs.trim()));
        if let Some((base, var)) = lhs.split_once('_') {
            if var.len() == 1 && var.chars().all(|c| c.is_ascii_alphabetic()) {
                let body = parse_expr_with_var(rhs, Some(var))?;
                self.families.push((base.to_string(), body));
                return Ok(());
            }
        }
        let body = parse_expr(rhs)?;
        self.plain.push((lhs.to_string(), body));
        Ok(())
    }

    pub fn source_lines(&self) -> &[String] {
        &self.source
    }

    pub fn is_empty(&self) -> bool {
        self.plain.is_empty() && self.families.is_empty()
    }
}

/// Expands an expression into a free word over `gens`.
pub fn expand(expr: &Expr, gens: &[String], macros: &Macros) -> Result<Word> {
    expand_inner(expr, gens, macros, None, 0)
}

fn expand_inner(
    expr: &Expr,
    gens: &[String],
    macros: &Macros,
    var: Option<i64>,
    depth: usize,
) -> Result<Word> {
    if depth > 64 {
        return Err(Error::Parse("macro recursion too deep".into()));
    }
    let rec = |e: &Expr| expand_inner(e, gens, macros, var, depth + 1);
    Ok(match expr {
        Expr::Name(n) => {
            if let Some(i) = gens.iter().position(|g| g == n) {
                Word::gen(i)
            } else if let Some((_, body)) = macros.plain.iter().find(|(k, _)| k == n) {
                expand_inner(body, gens, macros, None, depth + 1)?
            } else if let Some((base, idx)) = n.split_once('_') {
                let (_, body) = macros
                    .families
                    .iter()
                    .find(|(b, _)| b == base)
                    .ok_or_else(|| Error::Parse(format!("unknown generator {n}")))?;
                let k: i64 = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("undefined macro index in {n}")))?;
                expand_inner(body, gens, macros, Some(k), depth + 1)?
            } else {
                return Err(Error::Parse(format!("unknown generator {n}")));
            }
        }
        Expr::Product(v) => {
            let mut w = Word::identity();
            for e in v {
                w = w.concat(&rec(e)?);
            }
            w
        }
        Expr::Power(e, x) => {
            let k = match x {
                Exponent::Int(k) => *k,
                Exponent::Var { negated } => {
                    let v = var.ok_or_else(|| Error::Parse("index variable outside a family".into()))?;
                    if *negated {
                        -v
                    } else {
                        v
                    }
                }
            };
            rec(e)?.pow(k)
        }
        Expr::Conjugate(a, b) => rec(a)?.conjugate(&rec(b)?),
        Expr::Commutator(a, b) => rec(a)?.commutator(&rec(b)?),
    })
}
