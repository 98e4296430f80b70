use std::fmt;

use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Cot,
    Exp,
    Log,
    Sqrt,
    Asin,
    Acos,
    Atan,
    Sinh,
    Cosh,
    Tanh,
}

impl Func {
    pub const ALL: [Func; 13] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Cot,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Asin,
        Func::Acos,
        Func::Atan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Asin => "asin",
            Func::Acos => "acos",
            Func::Atan => "atan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn apply(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Cot => 1.0 / x.tan(),
            Func::Exp => x.exp(),
            Func::Log => x.ln(),
            Func::Sqrt => x.sqrt(),
            Func::Asin => x.asin(),
            Func::Acos => x.acos(),
            Func::Atan => x.atan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Tanh => x.tanh(),
        }
    }
}

/// Parsed immersion component.
///
/// The exponent of `Pow` is always a folded `Number`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Var(usize),
    Neg(Box<Expr>),
    Binary { op: BinaryOp, lhs: Box<Expr>, rhs: Box<Expr> },
    Call { func: Func, args: Vec<Expr> },
}

impl Expr {
    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Expr::Call { func, args: vec![arg] }
    }

    /// Largest variable index referenced, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Number(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Neg(e) => e.max_var(),
            Expr::Binary { lhs, rhs, .. } => match (lhs.max_var(), rhs.max_var()) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
            Expr::Call { args, .. } => args.iter().filter_map(Expr::max_var).max(),
        }
    }

    pub fn uses_var(&self, var: usize) -> bool {
        match self {
            Expr::Number(_) => false,
            Expr::Var(i) => *i == var,
            Expr::Neg(e) => e.uses_var(var),
            Expr::Binary { lhs, rhs, .. } => lhs.uses_var(var) || rhs.uses_var(var),
            Expr::Call { args, .. } => args.iter().any(|a| a.uses_var(var)),
        }
    }

    /// Value of a variable-free expression.
    pub fn const_value(&self) -> Option<f64> {
        if self.max_var().is_some() {
            return None;
        }
        Some(self.eval(&[]))
    }

    /// Plain floating-point evaluation.
    pub fn eval(&self, point: &[f64]) -> f64 {
        match self {
            Expr::Number(x) => *x,
            Expr::Var(i) => point[*i],
            Expr::Neg(e) => -e.eval(point),
            Expr::Binary { op, lhs, rhs } => {
                let (a, b) = (lhs.eval(point), rhs.eval(point));
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => a / b,
                    BinaryOp::Pow => {
                        if b.fract() == 0.0 && b.abs() < i32::MAX as f64 {
                            a.powi(b as i32)
                        } else {
                            a.powf(b)
                        }
                    }
                }
            }
            Expr::Call { func, args } => func.apply(args[0].eval(point)),
        }
    }

    /// Renumber variables through `map`.
    pub fn map_vars(&self, map: &impl Fn(usize) -> usize) -> Expr {
        match self {
            Expr::Number(x) => Expr::Number(*x),
            Expr::Var(i) => Expr::Var(map(*i)),
            Expr::Neg(e) => Expr::Neg(Box::new(e.map_vars(map))),
            Expr::Binary { op, lhs, rhs } => Expr::binary(*op, lhs.map_vars(map), rhs.map_vars(map)),
            Expr::Call { func, args } => Expr::Call {
                func: *func,
                args: args.iter().map(|a| a.map_vars(map)).collect(),
            },
        }
    }

    /// Fully parenthesized rendering using the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, names }
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    names: &'a [String],
}

impl<'a> fmt::Display for ExprDisplay<'a> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e: &'a Expr| ExprDisplay { expr: e, names: self.names };
        match self.expr {
            Expr::Number(x) if *x < 0.0 => write!(f, "(-{:?})", -x),
            Expr::Number(x) => write!(f, "{x:?}"),
            Expr::Var(i) => write!(f, "{}", self.names[*i]),
            Expr::Neg(e) => write!(f, "(-{})", sub(e)),
            Expr::Binary { op, lhs, rhs } => write!(f, "({}{}{})", sub(lhs), op.symbol(), sub(rhs)),
            Expr::Call { func, args } => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", sub(a))?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(Token, usize), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(self.pos) else {
            return Ok((Token::End, start));
        };
        if c.is_ascii_digit() || c == b'.' {
            let mut end = self.pos;
            while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
                end += 1;
            }
            if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
                let mut k = end + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    end = k;
                }
            }
            let text = &self.src[start..end];
            let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                offset: start,
                message: format!("malformed number '{text}'"),
            })?;
            self.pos = end;
            return Ok((Token::Number(value), start));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let mut end = self.pos;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            self.pos = end;
            return Ok((Token::Ident(self.src[start..end].to_string()), start));
        }
        if b"+-*/^(),".contains(&c) {
            self.pos += 1;
            return Ok((Token::Sym(c as char), start));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(ParseError::Syntax { offset: start, message: format!("unexpected character '{ch}'") })
    }
}

pub(crate) struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Token,
    offset: usize,
    variables: &'a [String],
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str, variables: &'a [String]) -> Result<Self, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (current, offset) = lexer.next_token()?;
        Ok(Parser { lexer, current, offset, variables })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, off) = self.lexer.next_token()?;
        self.current = tok;
        self.offset = off;
        Ok(())
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = match &self.current {
            Token::End => "end of input".to_string(),
            Token::Number(x) => format!("number {x}"),
            Token::Ident(s) => format!("identifier '{s}'"),
            Token::Sym(c) => format!("'{c}'"),
        };
        ParseError::Syntax { offset: self.offset, message: format!("expected {wanted}, found {found}") }
    }

    pub(crate) fn parse_all(mut self) -> Result<Expr, ParseError> {
        let e = self.expr()?;
        if self.current != Token::End {
            return Err(self.unexpected("operator or end of input"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.current {
                Token::Sym('+') => BinaryOp::Add,
                Token::Sym('-') => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.current {
                Token::Sym('*') => BinaryOp::Mul,
                Token::Sym('/') => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.factor()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.unary()?;
        if self.current != Token::Sym('^') {
            return Ok(base);
        }
        self.bump()?;
        let offset = self.offset;
        let exponent = self.factor()?;
        let value = exponent.const_value().ok_or(ParseError::NonConstantExponent { offset })?;
        if !value.is_finite() {
            return Err(ParseError::NonConstantExponent { offset });
        }
        Ok(Expr::binary(BinaryOp::Pow, base, Expr::Number(value)))
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.current == Token::Sym('-') {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.current.clone() {
            Token::Number(x) => {
                self.bump()?;
                Ok(Expr::Number(x))
            }
            Token::Sym('(') => {
                self.bump()?;
                let e = self.expr()?;
                if self.current != Token::Sym(')') {
                    return Err(self.unexpected("')'"));
                }
                self.bump()?;
                Ok(e)
            }
            Token::Ident(name) => {
                let offset = self.offset;
                self.bump()?;
                if self.current == Token::Sym('(') {
                    let func = Func::from_name(&name)
                        .ok_or(ParseError::UnknownIdentifier { name: name.clone(), offset })?;
                    self.bump()?;
                    let mut args = vec![self.expr()?];
                    while self.current == Token::Sym(',') {
                        self.bump()?;
                        args.push(self.expr()?);
                    }
                    if self.current != Token::Sym(')') {
                        return Err(self.unexpected("')'"));
                    }
                    self.bump()?;
                    if args.len() != 1 {
                        return Err(ParseError::WrongArity { name, found: args.len(), offset });
                    }
                    return Ok(Expr::Call { func, args });
                }
                if let Some(i) = self.variables.iter().position(|v| *v == name) {
                    return Ok(Expr::Var(i));
                }
                match name.as_str() {
                    "pi" => Ok(Expr::Number(std::f64::consts::PI)),
                    "e" => Ok(Expr::Number(std::f64::consts::E)),
                    _ if Func::from_name(&name).is_some() => {
                        Err(ParseError::WrongArity { name, found: 0, offset })
                    }
                    _ => Err(ParseError::UnknownIdentifier { name, offset }),
                }
            }
            _ => Err(self.unexpected("number, identifier or '('")),
        }
    }
}
