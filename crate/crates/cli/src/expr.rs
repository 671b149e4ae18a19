//! A small recursive-descent parser for ring expressions: generator names
//! (`z3`, `x6`, `rho15`, aliases like `eta_2`), torsion classes `C{1,3}`,
//! integer scalars, `+`, `-`, `*`, `^` and parentheses.

use liecohom::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(i64),
    Gen(String),
    CSet(Vec<usize>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(i64),
    Ident(String),
    CSet(Vec<usize>),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("number out of range: {s}")))?;
                out.push(Token::Num(v));
            }
            'C' if chars.get(i + 1) == Some(&'{') => {
                i += 2;
                let start = i;
                while i < chars.len() && chars[i] != '}' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(Error::Parse("unterminated C{...}".into()));
                }
                let body: String = chars[start..i].iter().collect();
                i += 1;
                let mut set = Vec::new();
                for part in body.split(',') {
                    let t: usize = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad index in C{{{body}}}")))?;
                    set.push(t);
                }
                set.sort_unstable();
                set.dedup();
                out.push(Token::CSet(set));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            match self.bump() {
                Some(Token::Num(v)) if v >= 0 => {
                    return Ok(Expr::Pow(Box::new(base), v as u32));
                }
                _ => {
                    return Err(Error::Parse(
                        "exponent must be a nonnegative integer".into(),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(Token::Num(v)) => Ok(Expr::Num(v)),
            Some(Token::Ident(s)) => Ok(Expr::Gen(s)),
            Some(Token::CSet(set)) => Ok(Expr::CSet(set)),
            Some(Token::Minus) => Ok(Expr::Neg(Box::new(self.atom()?))),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse("trailing tokens in expression".into()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_sets() {
        let e = parse("C{1,3}*C{1,3}").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::CSet(vec![1, 3])),
                Box::new(Expr::CSet(vec![1, 3]))
            )
        );
        let e = parse("2*x6^2 + z3").unwrap();
        match e {
            Expr::Add(_, _) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse("x6 +").is_err());
        assert!(parse("C{1,").is_err());
        assert!(parse("").is_err());
    }
}
