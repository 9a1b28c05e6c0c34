use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const PUNCT: &str = "{};=+-*/^()[],";

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let start = col;
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line, col: start });
        } else if c.is_alphabetic() || c == '_' {
            let start = col;
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line, col: start });
        } else if PUNCT.contains(c) {
            out.push(Token { tok: Tok::Punct(c), line, col });
            chars.next();
            col += 1;
        } else {
            return Err(Error::Syntax { line, col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}
