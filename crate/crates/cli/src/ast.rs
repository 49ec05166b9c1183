//! Expression syntax tree and its printer.
//!
//! The printer inserts only the parentheses the grammar needs, so parsing
//! printed text gives back the same tree.

use std::fmt;

use surreal_core::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Born,
    Value,
    Sign,
    Cnf,
    Simplify,
    Cmp,
    Sqrt,
    Inv,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Born,
        Func::Value,
        Func::Sign,
        Func::Cnf,
        Func::Simplify,
        Func::Cmp,
        Func::Sqrt,
        Func::Inv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Born => "born",
            Func::Value => "value",
            Func::Sign => "sign",
            Func::Cnf => "cnf",
            Func::Simplify => "simplify",
            Func::Cmp => "cmp",
            Func::Sqrt => "sqrt",
            Func::Inv => "inv",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Cmp => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A nonnegative literal, integer or `p/q`.
    Num(Rational),
    Omega,
    Var(String),
    Brace(Vec<Expr>, Vec<Expr>),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Let(String, Expr),
    Expr(Expr),
}

impl Expr {
    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(q) if !q.is_integer() => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(q) => write!(f, "{q}")?,
            Expr::Omega => f.write_str("w")?,
            Expr::Var(name) => f.write_str(name)?,
            Expr::Brace(l, r) => {
                f.write_str("{")?;
                write_list(f, l, ",")?;
                f.write_str("|")?;
                write_list(f, r, ",")?;
                f.write_str("}")?;
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write(f, 3)?;
            }
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                a.write(f, p)?;
                write!(f, " {} ", op.symbol())?;
                b.write(f, p + 1)?;
            }
            Expr::Pow(a, b) => {
                a.write(f, 5)?;
                f.write_str("^")?;
                let fraction = matches!(&**b, Expr::Num(q) if !q.is_integer());
                b.write(f, if fraction { 5 } else { 3 })?;
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                write_list(f, args, ", ")?;
                f.write_str(")")?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }

    /// Whether `w` occurs anywhere in the expression.
    pub fn mentions_omega(&self) -> bool {
        match self {
            Expr::Omega => true,
            Expr::Num(_) | Expr::Var(_) => false,
            Expr::Brace(l, r) => l.iter().chain(r).any(Expr::mentions_omega),
            Expr::Neg(a) => a.mentions_omega(),
            Expr::Bin(_, a, b) | Expr::Pow(a, b) => a.mentions_omega() || b.mentions_omega(),
            Expr::Call(_, args) => args.iter().any(Expr::mentions_omega),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr], sep: &str) -> fmt::Result {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        e.write(f, 0)?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Let(name, e) => write!(f, "let {name} = {e}"),
            Stmt::Expr(e) => write!(f, "{e}"),
        }
    }
}
