//! Arithmetic expressions in one free variable `t`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := unary ('^' factor)?
//! unary   := '-' unary | primary
//! primary := number | 't' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! The minus sign may also be written as U+2212. There is no implicit
//! multiplication. Note that unary minus binds tighter than `^`, so `-t^2`
//! is `(-t)^2`.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Asin,
    Acos,
    Atan,
    Sinh,
    Cosh,
    Exp,
    Log,
    Sqrt,
    Abs,
    Sign,
}

const FUNCS: [(&str, Func); 13] = [
    ("sin", Func::Sin),
    ("cos", Func::Cos),
    ("tan", Func::Tan),
    ("asin", Func::Asin),
    ("acos", Func::Acos),
    ("atan", Func::Atan),
    ("sinh", Func::Sinh),
    ("cosh", Func::Cosh),
    ("exp", Func::Exp),
    ("log", Func::Log),
    ("sqrt", Func::Sqrt),
    ("abs", Func::Abs),
    ("sign", Func::Sign),
];

impl Func {
    pub fn all() -> impl Iterator<Item = Func> {
        FUNCS.iter().map(|(_, f)| *f)
    }

    pub fn name(self) -> &'static str {
        FUNCS
            .iter()
            .find(|(_, f)| *f == self)
            .map(|(n, _)| *n)
            .unwrap()
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Asin => x.asin(),
            Func::Acos => x.acos(),
            Func::Atan => x.atan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Exp => x.exp(),
            Func::Log => x.ln(),
            Func::Sqrt => x.sqrt(),
            Func::Abs => x.abs(),
            Func::Sign => {
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Functions with a restricted real domain.
    pub fn is_guarded(self) -> bool {
        matches!(self, Func::Log | Func::Sqrt | Func::Asin | Func::Acos)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    T,
    Pi,
    E,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: expected {}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("expression `{text}` is not finite at t = {t}")]
pub struct EvalError {
    pub text: String,
    pub t: f64,
}

impl Expr {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::T => t,
            Expr::Pi => std::f64::consts::PI,
            Expr::E => std::f64::consts::E,
            Expr::Neg(a) => -a.eval(t),
            Expr::Bin(op, a, b) => {
                let (x, y) = (a.eval(t), b.eval(t));
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => x / y,
                    BinOp::Pow => x.powf(y),
                }
            }
            Expr::Call(f, a) => f.apply(a.eval(t)),
        }
    }

    /// Evaluates and rejects non-finite results.
    pub fn eval_checked(&self, t: f64) -> Result<f64, EvalError> {
        let v = self.eval(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError {
                text: self.to_string(),
                t,
            })
        }
    }

    /// Names of domain-restricted functions used, for parse-time warnings.
    pub fn guarded_calls(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let Expr::Call(f, _) = e {
                if f.is_guarded() && !out.contains(&f.name()) {
                    out.push(f.name());
                }
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Neg(a) | Expr::Call(_, a) => a.visit(f),
            Expr::Bin(_, a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    // Binding strength: 1 sums, 2 products, 3 powers, 4 negation, 5 atoms.
    fn level(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Bin(BinOp::Pow, ..) => 3,
            Expr::Neg(_) => 4,
            _ => 5,
        }
    }
}

struct Wrapped<'a>(&'a Expr, u8);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.level() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::T => f.write_str("t"),
            Expr::Pi => f.write_str("pi"),
            Expr::E => f.write_str("e"),
            Expr::Neg(a) => write!(f, "-{}", Wrapped(a, 4)),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Bin(op, a, b) => {
                let (sym, left, right) = match op {
                    BinOp::Add => ("+", 1, 2),
                    BinOp::Sub => ("-", 1, 2),
                    BinOp::Mul => ("*", 2, 3),
                    BinOp::Div => ("/", 2, 3),
                    BinOp::Pow => ("^", 4, 3),
                };
                write!(f, "{}{sym}{}", Wrapped(a, left), Wrapped(b, right))
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.fail(&["operator", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const PRIMARY: [&str; 6] = ["number", "'t'", "'pi'", "'e'", "function", "'('"];

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn fail(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Consumes one of the given operator characters.
    fn eat(&mut self, ops: &[char]) -> Option<char> {
        self.skip_ws();
        let c = self.rest().chars().next()?;
        let c = if c == '\u{2212}' { '-' } else { c };
        if ops.contains(&c) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
            Some(c)
        } else {
            None
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(c) = self.eat(&['+', '-']) {
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(c) = self.eat(&['*', '/']) {
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.unary()?;
        if self.eat(&['^']).is_some() {
            let exp = self.factor()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&['-']).is_some() {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.rest().chars().next() else {
            return Err(self.fail(&with_minus(&PRIMARY)));
        };
        if c.is_ascii_digit() || c == '.' {
            return self.number();
        }
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            return self.close(e);
        }
        if c.is_ascii_alphabetic() {
            let len = self
                .rest()
                .find(|ch: char| !ch.is_ascii_alphanumeric())
                .unwrap_or(self.rest().len());
            let word = &self.rest()[..len];
            let simple = match word {
                "t" => Some(Expr::T),
                "pi" => Some(Expr::Pi),
                "e" => Some(Expr::E),
                _ => None,
            };
            if let Some(e) = simple {
                self.pos += len;
                return Ok(e);
            }
            if let Some(&(_, func)) = FUNCS.iter().find(|(n, _)| *n == word) {
                self.pos += len;
                if self.eat(&['(']).is_none() {
                    return Err(self.fail(&["'('"]));
                }
                let arg = self.expr()?;
                return self.close(Expr::Call(func, Box::new(arg)));
            }
            self.pos = start;
            return Err(self.fail(&PRIMARY));
        }
        Err(self.fail(&with_minus(&PRIMARY)))
    }

    fn close(&mut self, e: Expr) -> Result<Expr, ParseError> {
        if self.eat(&[')']).is_none() {
            return Err(self.fail(&["')'"]));
        }
        Ok(e)
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let bytes = self.rest().as_bytes();
        let mut i = 0;
        let digits = |i: &mut usize| {
            let s = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            *i - s
        };
        let mut n = digits(&mut i);
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            n += digits(&mut i);
        }
        if n == 0 {
            return Err(self.fail(&["digit"]));
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            // An exponent needs digits; otherwise `e` is left for the caller
            // (and rejected there, since there is no implicit product).
            if j < bytes.len() && bytes[j].is_ascii_digit() {
                i = j;
                digits(&mut i);
            }
        }
        let text = &self.rest()[..i];
        let v: f64 = text.parse().map_err(|_| self.fail(&["number"]))?;
        self.pos += i;
        Ok(Expr::Num(v))
    }
}

fn with_minus(base: &[&'static str]) -> Vec<&'static str> {
    let mut v = vec!["'-'"];
    v.extend_from_slice(base);
    v
}
