//! Recursive-descent parser for ASCII Dirac notation.
//!
//! ```text
//! expr   := term { ("+"|"-") term } ;
//! term   := [sign] [ coeff ["*"] ] factor { ["*" | "(x)"] factor } ;
//! factor := ket | "(" expr ")" ;
//! ket    := "|" (bitstring | "+" | "-") ">" ;
//! coeff  := scalar { ["*" | "/"] scalar } ;
//! scalar := number | "sqrt(" integer ")" | "i" | "w" [ "^" integer ]
//!         | "(" [sign] coeff { ("+"|"-") coeff } ")" ;
//! ```
//!
//! A parenthesis opens a factor when a ket occurs before its matching close,
//! and a scalar otherwise.

use std::fmt;

use super::exact::ExactScalar;
use super::{KetExpression, KetNode, NamedKet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{} expected {} found {}",
            self.line, self.col, self.expected, self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ket(String),
    Number(String),
    Sqrt,
    I,
    W,
    Caret,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    TensorOp,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ket(s) => format!("'|{s}>'"),
            Tok::Number(s) => format!("'{s}'"),
            Tok::Sqrt => "'sqrt'".into(),
            Tok::I => "'i'".into(),
            Tok::W => "'w'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::TensorOp => "'(x)'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    pos: usize,
}

fn line_col(chars: &[char], pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for &c in chars.iter().take(pos) {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

fn error_at(chars: &[char], pos: usize, expected: &str, found: String) -> ParseError {
    let (line, col) = line_col(chars, pos);
    ParseError {
        position: pos,
        line,
        col,
        expected: expected.into(),
        found,
    }
}

fn lex(chars: &[char]) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut i = 0;
    let starts_with = |i: usize, s: &str| {
        s.chars()
            .enumerate()
            .all(|(k, c)| chars.get(i + k) == Some(&c))
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '|' => {
                let mut j = i + 1;
                let mut content = String::new();
                while j < chars.len() && chars[j] != '>' {
                    if !chars[j].is_whitespace() {
                        content.push(chars[j]);
                    }
                    j += 1;
                }
                if j == chars.len() {
                    return Err(error_at(chars, j, "'>'", "end of input".into()));
                }
                let valid = content == "+"
                    || content == "-"
                    || (!content.is_empty() && content.chars().all(|b| b == '0' || b == '1'));
                if !valid {
                    return Err(error_at(
                        chars,
                        i + 1,
                        "bitstring, '+' or '-' inside ket",
                        format!("'{content}'"),
                    ));
                }
                i = j + 1;
                Tok::Ket(content)
            }
            '(' if starts_with(i, "(x)") => {
                i += 3;
                Tok::TensorOp
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '/' => {
                i += 1;
                Tok::Slash
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            c if c.is_ascii_digit() || c == '.' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                i = j;
                Tok::Number(text)
            }
            _ if starts_with(i, "sqrt") => {
                i += 4;
                Tok::Sqrt
            }
            'i' => {
                i += 1;
                Tok::I
            }
            'w' => {
                i += 1;
                Tok::W
            }
            other => {
                return Err(error_at(chars, i, "ket, scalar or operator", format!("'{other}'")));
            }
        };
        out.push(Spanned { tok, pos });
    }
    out.push(Spanned {
        tok: Tok::End,
        pos: chars.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    chars: &'a [char],
    toks: Vec<Spanned>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.at + k).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        let sp = &self.toks[self.at];
        Err(error_at(self.chars, sp.pos, expected, sp.tok.describe()))
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    /// True when the `(` at offset `k` encloses a ket before its match.
    fn paren_holds_ket(&self, k: usize) -> bool {
        let mut depth = 0usize;
        for sp in &self.toks[self.at + k..] {
            match sp.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                Tok::Ket(_) => return true,
                Tok::End => return false,
                _ => {}
            }
        }
        false
    }

    fn starts_factor(&self, k: usize) -> bool {
        match self.peek_at(k) {
            Tok::Ket(_) => true,
            Tok::LParen => self.paren_holds_ket(k),
            _ => false,
        }
    }

    fn starts_scalar(&self, k: usize) -> bool {
        match self.peek_at(k) {
            Tok::Number(_) | Tok::Sqrt | Tok::I | Tok::W => true,
            Tok::LParen => !self.paren_holds_ket(k),
            _ => false,
        }
    }

    fn expr(&mut self) -> Result<KetNode, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    terms.push(KetNode::Scale(ExactScalar::integer(-1), Box::new(t)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            KetNode::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<KetNode, ParseError> {
        let mut negate = false;
        while matches!(self.peek(), Tok::Plus | Tok::Minus) {
            if self.bump() == Tok::Minus {
                negate = !negate;
            }
        }
        let coeff = if self.starts_scalar(0) {
            let c = self.coeff()?;
            if *self.peek() == Tok::Star && self.starts_factor(1) {
                self.bump();
            }
            Some(c)
        } else {
            None
        };
        let mut factors = vec![self.factor()?];
        loop {
            if self.starts_factor(0) {
                factors.push(self.factor()?);
            } else if matches!(self.peek(), Tok::Star | Tok::TensorOp) && self.starts_factor(1) {
                self.bump();
                factors.push(self.factor()?);
            } else if *self.peek() == Tok::TensorOp {
                self.bump();
                return self.fail("ket or '(' after '(x)'");
            } else {
                break;
            }
        }
        let mut node = if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            KetNode::Tensor(factors)
        };
        let scale = match (coeff, negate) {
            (Some(c), true) => Some(-&c),
            (Some(c), false) => Some(c),
            (None, true) => Some(ExactScalar::integer(-1)),
            (None, false) => None,
        };
        if let Some(c) = scale {
            node = KetNode::Scale(c, Box::new(node));
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<KetNode, ParseError> {
        match self.peek().clone() {
            Tok::Ket(content) => {
                self.bump();
                Ok(match content.as_str() {
                    "+" => KetNode::Named(NamedKet::Plus),
                    "-" => KetNode::Named(NamedKet::Minus),
                    bits => KetNode::Basis(bits.to_string()),
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => self.fail("ket or '('"),
        }
    }

    fn coeff(&mut self) -> Result<ExactScalar, ParseError> {
        let mut acc = self.scalar()?;
        loop {
            match self.peek() {
                Tok::Star if self.starts_scalar(1) => {
                    self.bump();
                    acc = &acc * &self.scalar()?;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.at;
                    let d = self.scalar()?;
                    match d.inverse() {
                        Some(inv) => acc = &acc * &inv,
                        None => {
                            let sp = &self.toks[pos];
                            return Err(error_at(
                                self.chars,
                                sp.pos,
                                "nonzero divisor",
                                "zero".into(),
                            ));
                        }
                    }
                }
                _ if self.starts_scalar(0) => {
                    acc = &acc * &self.scalar()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        if let Tok::Number(text) = self.peek().clone() {
            if let Ok(v) = text.parse::<u64>() {
                self.bump();
                return Ok(v);
            }
        }
        self.fail("integer")
    }

    fn scalar(&mut self) -> Result<ExactScalar, ParseError> {
        match self.peek().clone() {
            Tok::Number(text) => match ExactScalar::decimal(&text) {
                Some(v) => {
                    self.bump();
                    Ok(v)
                }
                None => self.fail("number"),
            },
            Tok::Sqrt => {
                self.bump();
                self.expect(Tok::LParen, "'(' after sqrt")?;
                let k = self.integer()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(ExactScalar::sqrt(k))
            }
            Tok::I => {
                self.bump();
                Ok(ExactScalar::imaginary_unit())
            }
            Tok::W => {
                self.bump();
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let k = self.integer()?;
                    Ok(ExactScalar::omega_pow(k))
                } else {
                    Ok(ExactScalar::omega())
                }
            }
            Tok::LParen => {
                self.bump();
                let mut negate = false;
                while matches!(self.peek(), Tok::Plus | Tok::Minus) {
                    if self.bump() == Tok::Minus {
                        negate = !negate;
                    }
                }
                let mut acc = self.coeff()?;
                if negate {
                    acc = -&acc;
                }
                loop {
                    match self.peek() {
                        Tok::Plus => {
                            self.bump();
                            acc = &acc + &self.coeff()?;
                        }
                        Tok::Minus => {
                            self.bump();
                            acc = &acc - &self.coeff()?;
                        }
                        _ => break,
                    }
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(acc)
            }
            _ => self.fail("scalar"),
        }
    }
}

pub fn parse(text: &str) -> Result<KetExpression, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    if chars.iter().all(|c| c.is_whitespace()) {
        return Err(error_at(&chars, 0, "state expression", "end of input".into()));
    }
    let toks = lex(&chars)?;
    let mut p = Parser {
        chars: &chars,
        toks,
        at: 0,
    };
    let root = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("'+', '-' or end of input");
    }
    Ok(KetExpression { root })
}
