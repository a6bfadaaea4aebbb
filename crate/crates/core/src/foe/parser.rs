//! Lexer, recursive-descent parser and printer for function-class text.
//!
//! ```text
//! class    := "class" IDENT "(" [params] ")" ":" expr
//! params   := IDENT {"," IDENT}
//! expr     := or ; or := and {"OR" and} ; and := not {"AND" not}
//! not      := ["NOT"] cmp
//! cmp      := sum (("<="|">="|"=") sum) | "(" expr ")"
//! sum      := term {("+"|"-") term} ; term := pow {"*" pow}
//! pow      := atom ["^" INT] ; atom := IDENT | NUMBER | "(" sum ")"
//! ```
//!
//! A leading `(` in `cmp` is ambiguous between a parenthesised sum and a
//! parenthesised condition; the parser tries the sum first and backtracks.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use super::{Arith, ArithOp, CmpOp, Cond, FunctionClass};
use crate::error::{Error, Position, Result};
use crate::schema::DomainSchema;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    /// Numeric literal and whether it was written without a fraction.
    Number(f64, bool),
    Class,
    And,
    Or,
    Not,
    LParen,
    RParen,
    Comma,
    Colon,
    Plus,
    Minus,
    Star,
    Caret,
    Le,
    Ge,
    Eq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Number(x, _) => write!(f, "number `{x}`"),
            Tok::Class => f.write_str("`class`"),
            Tok::And => f.write_str("`AND`"),
            Tok::Or => f.write_str("`OR`"),
            Tok::Not => f.write_str("`NOT`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Le => f.write_str("`<=`"),
            Tok::Ge => f.write_str("`>=`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let syntax = |offset: usize, message: String| Error::Syntax {
        pos: Position::locate(text, offset),
        message,
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b':' => Tok::Colon,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'=' => Tok::Eq,
            b'<' | b'>' => {
                if bytes.get(i + 1) != Some(&b'=') {
                    return Err(syntax(i, format!("expected `{}=`", c as char)));
                }
                i += 2;
                out.push(Token {
                    tok: if c == b'<' { Tok::Le } else { Tok::Ge },
                    offset: start,
                });
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut integral = true;
                if i < bytes.len() && bytes[i] == b'.' {
                    if !bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                        return Err(syntax(i, "expected digits after `.`".into()));
                    }
                    integral = false;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let lit = &text[start..i];
                let x: f64 = lit
                    .parse()
                    .map_err(|_| syntax(start, format!("bad number `{lit}`")))?;
                out.push(Token {
                    tok: Tok::Number(x, integral),
                    offset: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "class" => Tok::Class,
                    "AND" => Tok::And,
                    "OR" => Tok::Or,
                    "NOT" => Tok::Not,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push(Token { tok, offset: start });
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        };
        i += 1;
        out.push(Token { tok, offset: start });
    }
    out.push(Token {
        tok: Tok::Eof,
        offset: text.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
    schema: &'a Arc<DomainSchema>,
    params: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    fn at(&self, offset: usize) -> Position {
        Position::locate(self.text, offset)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        Error::Syntax {
            pos: self.at(self.offset()),
            message: format!("expected {wanted}, found {}", self.peek()),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<(String, usize)> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let off = self.offset();
                self.bump();
                Ok((name, off))
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn class(&mut self) -> Result<FunctionClass> {
        self.expect(Tok::Class, "`class`")?;
        let (name, _) = self.ident("class name")?;
        self.expect(Tok::LParen, "`(`")?;
        let mut param_offsets = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                let (p, off) = self.ident("parameter name")?;
                if self.params.contains(&p) {
                    return Err(Error::DuplicateParameter {
                        name: p,
                        pos: self.at(off),
                    });
                }
                if self.schema.index_of(&p).is_some() {
                    return Err(Error::Type {
                        pos: self.at(off),
                        message: format!("parameter `{p}` shadows a schema dimension"),
                    });
                }
                self.params.push(p);
                param_offsets.push(off);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`,` or `)`")?;
        self.expect(Tok::Colon, "`:`")?;
        let body = self.expr()?;
        if *self.peek() != Tok::Eof {
            return Err(self.unexpected("`AND`, `OR` or end of input"));
        }
        Ok(FunctionClass {
            name,
            params: std::mem::take(&mut self.params),
            param_positions: param_offsets.into_iter().map(|o| self.at(o)).collect(),
            body,
            schema: Arc::clone(self.schema),
            source: self.text.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Cond> {
        let first = self.and()?;
        if *self.peek() != Tok::Or {
            return Ok(first);
        }
        let mut items = vec![first];
        while *self.peek() == Tok::Or {
            self.bump();
            items.push(self.and()?);
        }
        Ok(Cond::Or(items))
    }

    fn and(&mut self) -> Result<Cond> {
        let first = self.not()?;
        if *self.peek() != Tok::And {
            return Ok(first);
        }
        let mut items = vec![first];
        while *self.peek() == Tok::And {
            self.bump();
            items.push(self.not()?);
        }
        Ok(Cond::And(items))
    }

    fn not(&mut self) -> Result<Cond> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(Cond::Not(Box::new(self.cmp()?)));
        }
        self.cmp()
    }

    fn cmp(&mut self) -> Result<Cond> {
        let save = self.pos;
        let as_comparison = self.comparison();
        if as_comparison.is_ok() || self.toks[save].tok != Tok::LParen {
            return as_comparison;
        }
        let first_err = as_comparison.unwrap_err();
        let first_reach = self.pos;
        self.pos = save;
        self.bump();
        let grouped = self.expr().and_then(|c| {
            self.expect(Tok::RParen, "`)`")?;
            Ok(c)
        });
        match grouped {
            Ok(c) => Ok(c),
            // Semantic errors are definitive; for syntax errors report
            // whichever alternative got further.
            Err(Error::Syntax { .. }) if self.pos < first_reach => Err(first_err),
            Err(e) => Err(e),
        }
    }

    fn comparison(&mut self) -> Result<Cond> {
        let lhs = self.sum()?;
        let op = match self.peek() {
            Tok::Le => CmpOp::Le,
            Tok::Ge => CmpOp::Ge,
            Tok::Eq => CmpOp::Eq,
            _ => return Err(self.unexpected("`<=`, `>=` or `=`")),
        };
        self.bump();
        let rhs = self.sum()?;
        Ok(Cond::Cmp { lhs, op, rhs })
    }

    fn sum(&mut self) -> Result<Arith> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Arith::Bin {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
    }

    fn term(&mut self) -> Result<Arith> {
        let mut lhs = self.pow()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.pow()?;
            lhs = Arith::Bin {
                op: ArithOp::Mul,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
        Ok(lhs)
    }

    fn pow(&mut self) -> Result<Arith> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match *self.peek() {
            Tok::Number(x, true) if x <= i32::MAX as f64 => {
                self.bump();
                Ok(Arith::Pow {
                    base: Box::new(base),
                    exp: x as u32,
                })
            }
            _ => Err(self.unexpected("integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Arith> {
        let off = self.offset();
        match self.peek().clone() {
            Tok::Number(x, _) => {
                self.bump();
                Ok(Arith::Num(x))
            }
            Tok::Ident(name) => {
                self.bump();
                self.resolve(name, off)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.unexpected("identifier, number or `(`")),
        }
    }

    fn resolve(&self, name: String, off: usize) -> Result<Arith> {
        if let Some(index) = self.params.iter().position(|p| *p == name) {
            return Ok(Arith::Param { name, index });
        }
        match self.schema.index_of(&name) {
            Some(index) if self.schema.dims()[index].is_numeric() => Ok(Arith::Dim { name, index }),
            Some(index) => Err(Error::Type {
                pos: self.at(off),
                message: format!(
                    "{} dimension `{name}` cannot be used in arithmetic",
                    self.schema.dims()[index].kind.label()
                ),
            }),
            None => Err(Error::UnknownIdentifier {
                name,
                pos: self.at(off),
            }),
        }
    }
}

/// Parses class text against a schema, resolving every identifier.
pub fn parse_class(text: &str, schema: &Arc<DomainSchema>) -> Result<FunctionClass> {
    let toks = lex(text)?;
    let mut p = Parser {
        text,
        toks,
        pos: 0,
        schema,
        params: Vec::new(),
    };
    p.class()
}

const PREC_SUM: u8 = 1;
const PREC_TERM: u8 = 2;
const PREC_POW: u8 = 3;
const PREC_ATOM: u8 = 4;

fn prec(a: &Arith) -> u8 {
    match a {
        Arith::Bin {
            op: ArithOp::Add | ArithOp::Sub,
            ..
        } => PREC_SUM,
        Arith::Bin {
            op: ArithOp::Mul, ..
        } => PREC_TERM,
        Arith::Pow { .. } => PREC_POW,
        _ => PREC_ATOM,
    }
}

fn write_arith(out: &mut String, a: &Arith, min_prec: u8) {
    let paren = prec(a) < min_prec;
    if paren {
        out.push('(');
    }
    match a {
        Arith::Num(x) => {
            let _ = write!(out, "{x}");
        }
        Arith::Dim { name, .. } | Arith::Param { name, .. } => out.push_str(name),
        Arith::Bin { op, lhs, rhs } => {
            let p = prec(a);
            write_arith(out, lhs, p);
            out.push_str(match op {
                ArithOp::Add => " + ",
                ArithOp::Sub => " - ",
                ArithOp::Mul => " * ",
            });
            // Operators are left-associative.
            write_arith(out, rhs, p + 1);
        }
        Arith::Pow { base, exp } => {
            write_arith(out, base, PREC_ATOM);
            let _ = write!(out, "^{exp}");
        }
    }
    if paren {
        out.push(')');
    }
}

fn write_cond(out: &mut String, c: &Cond) {
    match c {
        Cond::Cmp { lhs, op, rhs } => {
            write_arith(out, lhs, PREC_SUM);
            out.push_str(match op {
                CmpOp::Le => " <= ",
                CmpOp::Ge => " >= ",
                CmpOp::Eq => " = ",
            });
            write_arith(out, rhs, PREC_SUM);
        }
        Cond::Not(inner) => {
            out.push_str("NOT ");
            write_grouped(out, inner, matches!(**inner, Cond::Cmp { .. }));
        }
        Cond::And(items) => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(" AND ");
                }
                write_grouped(out, item, matches!(item, Cond::Cmp { .. } | Cond::Not(_)));
            }
        }
        Cond::Or(items) => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(" OR ");
                }
                write_grouped(out, item, !matches!(item, Cond::Or(_)));
            }
        }
    }
}

fn write_grouped(out: &mut String, c: &Cond, bare: bool) {
    if bare {
        write_cond(out, c);
    } else {
        out.push('(');
        write_cond(out, c);
        out.push(')');
    }
}

/// Canonical text for a condition.
pub fn unparse_cond(c: &Cond) -> String {
    let mut s = String::new();
    write_cond(&mut s, c);
    s
}

/// Canonical class text; parsing it yields an equal class.
pub fn unparse_class(class: &FunctionClass) -> String {
    format!(
        "class {}({}): {}",
        class.name,
        class.params.join(", "),
        unparse_cond(&class.body)
    )
}
