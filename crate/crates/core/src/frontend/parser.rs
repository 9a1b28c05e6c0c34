//! Recursive-descent parser for `.qalg` sources and expressions.

use num_traits::ToPrimitive;

use crate::algebra::{Expr, VarId};
use crate::error::{Error, Result};

use super::lexer::{tokenize, Tok, Token};

#[derive(Clone, Debug, PartialEq)]
pub struct GenDecl {
    pub name: String,
    pub degree: u32,
    pub grade: Option<Vec<i64>>,
    pub line: usize,
    pub col: usize,
}

/// A relation `lhs = rhs`; generator indices refer to declaration order.
#[derive(Clone, Debug, PartialEq)]
pub struct RelDecl {
    pub lhs: Expr,
    pub rhs: Expr,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BracketDecl {
    pub left: VarId,
    pub right: VarId,
    pub value: Expr,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Source {
    pub name: String,
    pub gens: Vec<GenDecl>,
    pub rels: Vec<RelDecl>,
    pub epsilon: Option<Vec<Vec<i64>>>,
    pub brackets: Vec<BracketDecl>,
    pub invert: Vec<VarId>,
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: &'a mut Vec<String>,
}

fn syntax(t: &Token, message: impl Into<String>) -> Error {
    Error::Syntax { line: t.line, col: t.col, message: message.into() }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == k)
    }

    fn expect_punct(&mut self, c: char) -> Result<Token> {
        if self.is_punct(c) {
            Ok(self.next())
        } else {
            let t = self.peek();
            Err(syntax(t, format!("expected `{c}`, found {}", describe(&t.tok))))
        }
    }

    fn expect_keyword(&mut self, k: &str) -> Result<Token> {
        if self.is_keyword(k) {
            Ok(self.next())
        } else {
            let t = self.peek();
            Err(syntax(t, format!("expected `{k}`, found {}", describe(&t.tok))))
        }
    }

    fn ident(&mut self) -> Result<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => Err(syntax(&t, format!("expected a name, found {}", describe(other)))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if self.is_punct('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => {
                let v = n.to_i64().ok_or_else(|| syntax(&t, "integer out of range"))?;
                Ok(if neg { -v } else { v })
            }
            other => Err(syntax(&t, format!("expected an integer, found {}", describe(other)))),
        }
    }

    fn int_list(&mut self, open: char, close: char) -> Result<Vec<i64>> {
        self.expect_punct(open)?;
        let mut v = Vec::new();
        if !self.is_punct(close) {
            v.push(self.int()?);
            while self.is_punct(',') {
                self.next();
                v.push(self.int()?);
            }
        }
        self.expect_punct(close)?;
        Ok(v)
    }

    fn generator(&mut self) -> Result<VarId> {
        let (name, t) = self.ident()?;
        self.names.iter().position(|n| *n == name).ok_or(Error::UnknownSymbol { name, line: t.line, col: t.col })
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.is_punct('+') {
                self.next();
                e = Expr::add(e, self.term()?);
            } else if self.is_punct('-') {
                self.next();
                e = Expr::sub(e, self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.is_punct('*') {
                self.next();
                e = Expr::mul(e, self.unary()?);
            } else if self.is_punct('/') {
                self.next();
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.is_punct('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.is_punct('^') {
            self.next();
            let k = if self.is_punct('(') {
                self.next();
                let k = self.int()?;
                self.expect_punct(')')?;
                k
            } else {
                self.int()?
            };
            return Ok(Expr::pow(base, k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(Expr::Int(n.clone())),
            Tok::Ident(s) if s == "q" => Ok(Expr::Q),
            Tok::Ident(s) => match self.names.iter().position(|n| n == s) {
                Some(v) => Ok(Expr::Var(v)),
                None => Err(Error::UnknownSymbol { name: s.clone(), line: t.line, col: t.col }),
            },
            Tok::Punct('(') => {
                let e = self.expr()?;
                self.expect_punct(')')?;
                Ok(e)
            }
            other => Err(syntax(&t, format!("expected an expression, found {}", describe(other)))),
        }
    }

    fn gen_decl(&mut self, src: &mut Source) -> Result<()> {
        let mut batch = Vec::new();
        loop {
            let (name, t) = self.ident()?;
            if name == "q" || KEYWORDS.contains(&name.as_str()) {
                return Err(syntax(&t, format!("`{name}` is reserved")));
            }
            if self.names.contains(&name) || batch.iter().any(|(n, _): &(String, Token)| *n == name) {
                return Err(Error::DuplicateGenerator { name, line: t.line, col: t.col });
            }
            batch.push((name, t));
            if !self.is_punct(',') {
                break;
            }
            self.next();
        }
        let mut degree = 1;
        let mut grade = None;
        loop {
            if self.is_keyword("deg") {
                self.next();
                let t = self.peek().clone();
                let d = self.int()?;
                if d < 1 || d > u32::MAX as i64 {
                    return Err(syntax(&t, "degree must be a positive integer"));
                }
                degree = d as u32;
            } else if self.is_keyword("grade") {
                self.next();
                grade = Some(self.int_list('(', ')')?);
            } else {
                break;
            }
        }
        self.expect_punct(';')?;
        for (name, t) in batch {
            self.names.push(name.clone());
            src.gens.push(GenDecl { name, degree, grade: grade.clone(), line: t.line, col: t.col });
        }
        Ok(())
    }

    fn item(&mut self, src: &mut Source) -> Result<()> {
        let t = self.peek().clone();
        let kw = match &t.tok {
            Tok::Ident(s) => s.clone(),
            other => return Err(syntax(&t, format!("expected a declaration, found {}", describe(other)))),
        };
        self.next();
        match kw.as_str() {
            "gen" => self.gen_decl(src)?,
            "rel" => {
                let lhs = self.expr()?;
                self.expect_punct('=')?;
                let rhs = self.expr()?;
                self.expect_punct(';')?;
                src.rels.push(RelDecl { lhs, rhs, line: t.line, col: t.col });
            }
            "epsilon" => {
                if src.epsilon.is_some() {
                    return Err(syntax(&t, "epsilon given twice"));
                }
                self.expect_punct('[')?;
                let mut rows = vec![self.int_list('[', ']')?];
                while self.is_punct(',') {
                    self.next();
                    rows.push(self.int_list('[', ']')?);
                }
                self.expect_punct(']')?;
                self.expect_punct(';')?;
                src.epsilon = Some(rows);
            }
            "bracket" => {
                self.expect_punct('[')?;
                let left = self.generator()?;
                self.expect_punct(',')?;
                let right = self.generator()?;
                self.expect_punct(']')?;
                self.expect_punct('=')?;
                let value = self.expr()?;
                self.expect_punct(';')?;
                src.brackets.push(BracketDecl { left, right, value, line: t.line, col: t.col });
            }
            "invert" => {
                src.invert.push(self.generator()?);
                while self.is_punct(',') {
                    self.next();
                    src.invert.push(self.generator()?);
                }
                self.expect_punct(';')?;
            }
            _ => return Err(syntax(&t, format!("unknown declaration `{kw}`"))),
        }
        Ok(())
    }
}

const KEYWORDS: &[&str] = &["algebra", "gen", "deg", "rel", "grade", "epsilon", "bracket", "invert"];

/// Parse a complete `algebra NAME { ... }` source.
pub fn parse_source(text: &str) -> Result<Source> {
    let mut names = Vec::new();
    let mut p = Parser { toks: tokenize(text)?, pos: 0, names: &mut names };
    let mut src = Source::default();
    p.expect_keyword("algebra")?;
    src.name = p.ident()?.0;
    p.expect_punct('{')?;
    while !p.is_punct('}') {
        if p.peek().tok == Tok::Eof {
            let t = p.peek();
            return Err(syntax(t, "expected `}`, found end of input"));
        }
        p.item(&mut src)?;
    }
    p.next();
    if p.peek().tok != Tok::Eof {
        let t = p.peek();
        return Err(syntax(t, format!("unexpected {} after the algebra block", describe(&t.tok))));
    }
    Ok(src)
}

/// Parse a standalone expression over the given generator names.
pub fn parse_expr(text: &str, names: &[String]) -> Result<Expr> {
    let mut names = names.to_vec();
    let mut p = Parser { toks: tokenize(text)?, pos: 0, names: &mut names };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        let t = p.peek();
        return Err(syntax(t, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(e)
}

/// Parse `gen=EXPR, gen=EXPR, ...` into generator/expression pairs.
pub fn parse_map(text: &str, names: &[String]) -> Result<Vec<(VarId, Expr)>> {
    let mut names = names.to_vec();
    let mut p = Parser { toks: tokenize(text)?, pos: 0, names: &mut names };
    let mut out = Vec::new();
    loop {
        let v = p.generator()?;
        p.expect_punct('=')?;
        out.push((v, p.expr()?));
        if p.is_punct(',') || p.is_punct(';') {
            p.next();
            if p.peek().tok == Tok::Eof {
                break;
            }
        } else {
            break;
        }
    }
    if p.peek().tok != Tok::Eof {
        let t = p.peek();
        return Err(syntax(t, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(out)
}
