//! Expression parsing and truncated Taylor-jet evaluation.
//!
//! Immersion components are written in a small infix grammar and evaluated
//! over multivariate jets, which yields every partial derivative up to order
//! [`MAX_ORDER`] at a base point in one pass.

mod expr;
mod jet;
pub(crate) mod series;

use std::sync::Arc;

use thiserror::Error;

pub use expr::{BinaryOp, Expr, ExprDisplay, Func};
pub use jet::{dot, JetLayout, JetValue, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier '{name}' at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("function '{name}' at offset {offset} takes exactly 1 argument, got {found}")]
    WrongArity { name: String, found: usize, offset: usize },
    #[error("exponent at offset {offset} is not a constant")]
    NonConstantExponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::WrongArity { offset, .. }
            | ParseError::NonConstantExponent { offset } => Some(*offset),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("{func} is undefined at {value}")]
    Domain { func: &'static str, value: f64 },
    #[error("{func} has a pole at {value}")]
    Pole { func: &'static str, value: f64 },
    #[error("division by a jet with zero value")]
    DivisionByZero,
    #[error("derivative of order {requested} requested from a jet of order {order}")]
    OrderExceeded { requested: usize, order: usize },
    #[error("multi-index has {found} entries, jet has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable {var} is not seeded (context has {dim} variables)")]
    UnseededVariable { var: usize, dim: usize },
    #[error("invalid evaluation context: {0}")]
    InvalidContext(String),
}

/// Parse `source` with variables named by `variables` (index = position).
///
/// `dim` is the chart dimension; every variable reference must be below it.
pub fn parse_expression(source: &str, dim: usize, variables: &[String]) -> Result<Expr, ParseError> {
    if source.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let vars = &variables[..variables.len().min(dim)];
    expr::Parser::new(source, vars)?.parse_all()
}

/// Base point and truncation order for jet evaluation.
#[derive(Debug, Clone)]
pub struct EvalContext {
    point: Vec<f64>,
    order: usize,
    layout: Arc<JetLayout>,
}

impl EvalContext {
    pub fn new(point: &[f64], order: usize) -> Result<Self, JetError> {
        if order > MAX_ORDER {
            return Err(JetError::InvalidContext(format!("order {order} exceeds {MAX_ORDER}")));
        }
        if point.iter().any(|x| !x.is_finite()) {
            return Err(JetError::InvalidContext("base point is not finite".into()));
        }
        Ok(EvalContext { point: point.to_vec(), order, layout: JetLayout::shared(point.len()) })
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn layout(&self) -> &Arc<JetLayout> {
        &self.layout
    }

    /// Jet of coordinate `var`; seeds the unit multi-index `e_var` with 1.
    pub fn variable(&self, var: usize) -> JetValue {
        JetValue::variable(&self.layout, self.order, var, self.point[var])
    }

    pub fn constant(&self, value: f64) -> JetValue {
        JetValue::constant(&self.layout, self.order, value)
    }
}

/// Evaluate `ast` as a truncated Taylor expansion around the context's base point.
pub fn eval_jet(ast: &Expr, ctx: &EvalContext) -> Result<JetValue, JetError> {
    Ok(match ast {
        Expr::Number(x) => ctx.constant(*x),
        Expr::Var(i) => {
            if *i >= ctx.point.len() {
                return Err(JetError::UnseededVariable { var: *i, dim: ctx.point.len() });
            }
            ctx.variable(*i)
        }
        Expr::Neg(e) => -eval_jet(e, ctx)?,
        Expr::Binary { op, lhs, rhs } => {
            let a = eval_jet(lhs, ctx)?;
            match op {
                BinaryOp::Pow => {
                    let p = match **rhs {
                        Expr::Number(p) => p,
                        _ => unreachable!("parser folds exponents"),
                    };
                    if p.fract() == 0.0 && p.abs() <= 64.0 {
                        a.powi(p as i32)?
                    } else {
                        a.powf(p)?
                    }
                }
                _ => {
                    let b = eval_jet(rhs, ctx)?;
                    match op {
                        BinaryOp::Add => a + b,
                        BinaryOp::Sub => a - b,
                        BinaryOp::Mul => a * b,
                        BinaryOp::Div => a.checked_div(&b)?,
                        BinaryOp::Pow => unreachable!(),
                    }
                }
            }
        }
        Expr::Call { func, args } => {
            let a = eval_jet(&args[0], ctx)?;
            match func {
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Tan => a.tan()?,
                Func::Cot => a.cot()?,
                Func::Exp => a.exp(),
                Func::Log => a.ln()?,
                Func::Sqrt => a.sqrt()?,
                Func::Asin => a.asin()?,
                Func::Acos => a.acos()?,
                Func::Atan => a.atan(),
                Func::Sinh => a.sinh(),
                Func::Cosh => a.cosh(),
                Func::Tanh => a.tanh(),
            }
        }
    })
}

/// Raw partial derivative `d^alpha F` from a jet.
pub fn extract_partial(jet: &JetValue, alpha: &[u8]) -> Result<f64, JetError> {
    jet.partial(alpha)
}
