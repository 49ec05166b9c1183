//! Tokenizer and recursive-descent parser.
//!
//! ```text
//! stmt   := 'let' ident '=' expr | expr
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom '^' factor | atom
//! atom   := number | 'w' | ident | call | brace | '(' expr ')'
//! brace  := '{' list '|' list '}'
//! ```
//!
//! A number is an integer or `p/q` written without spaces; `p / q` is a division.

use num_bigint::BigInt;
use surreal_core::Rational;

use crate::ast::{BinOp, Expr, Func, Stmt};
use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    LBrace,
    RBrace,
    Bar,
    Comma,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Equals,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(q) => format!("number {q}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::End => "end of input".to_string(),
            t => format!("{:?}", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Bar => "|",
            Tok::Comma => ",",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::Equals => "=",
            _ => "",
        }
    }
}

fn syntax(column: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        column,
        message: message.into(),
    }
}

/// Tokens paired with their 1-based starting column.
fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().expect("digits");
            let mut den = BigInt::from(1);
            if chars.get(i) == Some(&'/') && chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                let ds = i + 1;
                i = ds;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                den = chars[ds..i].iter().collect::<String>().parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(syntax(ds + 1, "zero denominator"));
                }
            }
            out.push((Tok::Num(Rational::new(num, den)), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '|' => Tok::Bar,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '=' => Tok::Equals,
            'ω' => Tok::Ident("w".to_string()),
            _ => return Err(syntax(col, format!("unexpected character {c:?}"))),
        };
        out.push((t, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(syntax(
                self.column(),
                format!("expected {:?}, found {}", t.symbol(), self.peek().describe()),
            ))
        }
    }

    fn stmt(&mut self) -> Result<Stmt> {
        if self.peek() == &Tok::Ident("let".to_string()) {
            self.bump();
            let col = self.column();
            let name = match self.bump() {
                Tok::Ident(n) if is_bindable(&n) => n,
                t => return Err(syntax(col, format!("expected a variable name, found {}", t.describe()))),
            };
            self.expect(Tok::Equals)?;
            return Ok(Stmt::Let(name, self.expr()?));
        }
        Ok(Stmt::Expr(self.expr()?))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(e),
            };
            self.bump();
            e = Expr::bin(op, e, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(e),
            };
            self.bump();
            e = Expr::bin(op, e, self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.factor()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.column();
        match self.bump() {
            Tok::Num(q) => Ok(Expr::Num(q)),
            Tok::Ident(name) if name == "w" => Ok(Expr::Omega),
            Tok::Ident(name) => {
                if self.peek() != &Tok::LParen {
                    if name == "let" {
                        return Err(syntax(col, "let is only allowed at the start of a line"));
                    }
                    return Ok(Expr::Var(name));
                }
                let func = Func::from_name(&name).ok_or_else(|| syntax(col, format!("unknown function {name:?}")))?;
                self.bump();
                let args = self.list(Tok::RParen)?;
                self.expect(Tok::RParen)?;
                if args.len() != func.arity() {
                    return Err(syntax(
                        col,
                        format!("{name} takes {} argument(s), got {}", func.arity(), args.len()),
                    ));
                }
                Ok(Expr::Call(func, args))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBrace => {
                let left = self.list(Tok::Bar)?;
                self.expect(Tok::Bar)?;
                let right = self.list(Tok::RBrace)?;
                self.expect(Tok::RBrace)?;
                Ok(Expr::Brace(left, right))
            }
            t => Err(syntax(col, format!("expected an expression, found {}", t.describe()))),
        }
    }

    /// Comma-separated expressions, possibly none, up to `close`.
    fn list(&mut self, close: Tok) -> Result<Vec<Expr>> {
        let mut items = Vec::new();
        if self.peek() == &close || self.peek() == &Tok::Bar || self.peek() == &Tok::RBrace {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if !self.eat(&Tok::Comma) {
                return Ok(items);
            }
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            t => Err(syntax(self.column(), format!("unexpected {}", t.describe()))),
        }
    }
}

fn is_bindable(name: &str) -> bool {
    name != "w" && name != "let" && Func::from_name(name).is_none()
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_stmt(src: &str) -> Result<Stmt> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let s = p.stmt()?;
    p.finish()?;
    Ok(s)
}
