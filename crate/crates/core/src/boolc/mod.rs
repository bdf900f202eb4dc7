//! Boolean-expression front end: tokenize, parse, lower to gate graphs,
//! and enumerate truth tables through the transport engines.
//!
//! Grammar (left-associative, precedence ! > & > NAND > |):
//!
//! ```text
//! expr   := nand ('|' nand)*
//! nand   := term ('NAND' term)*
//! term   := factor ('&' factor)*
//! factor := '!' factor | '(' expr ')' | ident | '0' | '1'
//! ```

mod lower;
mod table;

pub use lower::{lower, lower_with_preset, LowerError, LoweredCircuit};
pub use table::{truth_table, Engine, TruthTable, TruthTableRow};

use crate::graph::Bit;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoolExpr {
    Var(String),
    Const(Bit),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Nand(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn var(name: &str) -> BoolExpr {
        BoolExpr::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> BoolExpr {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        BoolExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        BoolExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn nand(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        BoolExpr::Nand(Box::new(a), Box::new(b))
    }

    /// Variable names in sorted order.
    pub fn variables(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.collect_vars(&mut set);
        set.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            BoolExpr::Var(name) => {
                out.insert(name.clone());
            }
            BoolExpr::Const(_) => {}
            BoolExpr::Not(e) => e.collect_vars(out),
            BoolExpr::And(a, b) | BoolExpr::Or(a, b) | BoolExpr::Nand(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Direct boolean evaluation; the classical reference for all engines.
    pub fn eval(&self, env: &dyn Fn(&str) -> Bit) -> Bit {
        match self {
            BoolExpr::Var(name) => env(name),
            BoolExpr::Const(b) => *b,
            BoolExpr::Not(e) => Bit::from(!e.eval(env).as_bool()),
            BoolExpr::And(a, b) => Bit::from(a.eval(env).as_bool() && b.eval(env).as_bool()),
            BoolExpr::Or(a, b) => Bit::from(a.eval(env).as_bool() || b.eval(env).as_bool()),
            BoolExpr::Nand(a, b) => Bit::from(!(a.eval(env).as_bool() && b.eval(env).as_bool())),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            BoolExpr::Or(..) => 1,
            BoolExpr::Nand(..) => 2,
            BoolExpr::And(..) => 3,
            BoolExpr::Not(..) => 4,
            BoolExpr::Var(_) | BoolExpr::Const(_) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
        let own = self.precedence();
        if own < parent {
            write!(f, "(")?;
        }
        match self {
            BoolExpr::Var(name) => write!(f, "{name}")?,
            BoolExpr::Const(b) => write!(f, "{b}")?,
            BoolExpr::Not(e) => {
                write!(f, "!")?;
                e.fmt_prec(f, own + 1)?;
            }
            BoolExpr::And(a, b) => {
                a.fmt_prec(f, own)?;
                write!(f, " & ")?;
                b.fmt_prec(f, own + 1)?;
            }
            BoolExpr::Nand(a, b) => {
                a.fmt_prec(f, own)?;
                write!(f, " NAND ")?;
                b.fmt_prec(f, own + 1)?;
            }
            BoolExpr::Or(a, b) => {
                a.fmt_prec(f, own)?;
                write!(f, " | ")?;
                b.fmt_prec(f, own + 1)?;
            }
        }
        if own < parent {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Const(Bit),
    Amp,
    Pipe,
    Bang,
    NandKw,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '&' => {
                chars.next();
                out.push((pos, Token::Amp));
            }
            '|' => {
                chars.next();
                out.push((pos, Token::Pipe));
            }
            '!' => {
                chars.next();
                out.push((pos, Token::Bang));
            }
            '(' => {
                chars.next();
                out.push((pos, Token::LParen));
            }
            ')' => {
                chars.next();
                out.push((pos, Token::RParen));
            }
            '0' => {
                chars.next();
                out.push((pos, Token::Const(Bit::Zero)));
            }
            '1' => {
                chars.next();
                out.push((pos, Token::Const(Bit::One)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if name == "NAND" {
                    out.push((pos, Token::NandKw));
                } else {
                    out.push((pos, Token::Ident(name)));
                }
            }
            other => {
                return Err(ParseError {
                    position: pos,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|&(p, _)| p)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        self.cursor += 1;
        t
    }

    fn expr(&mut self) -> Result<BoolExpr, ParseError> {
        let mut left = self.nand()?;
        while self.peek() == Some(&Token::Pipe) {
            self.advance();
            let right = self.nand()?;
            left = BoolExpr::or(left, right);
        }
        Ok(left)
    }

    fn nand(&mut self) -> Result<BoolExpr, ParseError> {
        let mut left = self.term()?;
        while self.peek() == Some(&Token::NandKw) {
            self.advance();
            let right = self.term()?;
            left = BoolExpr::nand(left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<BoolExpr, ParseError> {
        let mut left = self.factor()?;
        while self.peek() == Some(&Token::Amp) {
            self.advance();
            let right = self.factor()?;
            left = BoolExpr::and(left, right);
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<BoolExpr, ParseError> {
        let position = self.position();
        match self.advance() {
            Some(Token::Bang) => Ok(BoolExpr::not(self.factor()?)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let position = self.position();
                match self.advance() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ParseError {
                        position,
                        message: "expected ')'".to_string(),
                    }),
                }
            }
            Some(Token::Ident(name)) => Ok(BoolExpr::Var(name)),
            Some(Token::Const(b)) => Ok(BoolExpr::Const(b)),
            Some(token) => Err(ParseError {
                position,
                message: format!("unexpected token {token:?}"),
            }),
            None => Err(ParseError {
                position,
                message: "unexpected end of input".to_string(),
            }),
        }
    }
}

/// Parse an expression over the gate grammar.
pub fn parse(text: &str) -> Result<BoolExpr, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.peek().is_some() {
        return Err(ParseError {
            position: parser.position(),
            message: "trailing input after expression".to_string(),
        });
    }
    Ok(expr)
}
