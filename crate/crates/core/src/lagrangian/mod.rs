//! Integrands `L(x, y, u, v)` as expression trees.
//!
//! `u` stands for the left derivative `ₐDₓ^α y`, `v` for the right derivative
//! `ₓD_b^β y`, and `alpha` is a read-only variable holding the order of the
//! left derivative. Expressions are parsed from text (see [`parse`]),
//! evaluated at an [`Environment`] and differentiated symbolically.
//!
//! # Grammar
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?            (right associative)
//! primary := number | name | name '(' args ')' | '(' expr ')'
//! name    := x | y | u | v | alpha | pi
//! call    := sin | cos | exp | ln | gamma | digamma   (one argument)
//!          | polygamma(k, e)                           (k a non-negative integer)
//! number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//! ```

mod parse;

use std::fmt;

use crate::error::{Error, Result};
use crate::specfun;

pub use parse::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    U,
    V,
    Alpha,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::U => "u",
            Var::V => "v",
            Var::Alpha => "alpha",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unary {
    Neg,
    Sin,
    Cos,
    Exp,
    Ln,
    Gamma,
    /// `polygamma(k, ·)`; order 0 prints as `digamma`.
    Polygamma(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binary {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl Binary {
    fn symbol(self) -> char {
        match self {
            Binary::Add => '+',
            Binary::Sub => '-',
            Binary::Mul => '*',
            Binary::Div => '/',
            Binary::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Unary(Unary, Box<Expr>),
    Binary(Binary, Box<Expr>, Box<Expr>),
}

/// Point at which an expression is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Environment {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
    pub alpha: f64,
}

impl Environment {
    pub fn get(&self, var: Var) -> f64 {
        match var {
            Var::X => self.x,
            Var::Y => self.y,
            Var::U => self.u,
            Var::V => self.v,
            Var::Alpha => self.alpha,
        }
    }

    pub fn set(&mut self, var: Var, value: f64) {
        match var {
            Var::X => self.x = value,
            Var::Y => self.y = value,
            Var::U => self.u = value,
            Var::V => self.v = value,
            Var::Alpha => self.alpha = value,
        }
    }
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    /// Whether `var` occurs anywhere in the tree.
    pub fn depends_on(&self, var: Var) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(v) => *v == var,
            Expr::Unary(_, a) => a.depends_on(var),
            Expr::Binary(_, a, b) => a.depends_on(var) || b.depends_on(var),
        }
    }

    pub fn eval(&self, env: &Environment) -> Result<f64> {
        let value = match self {
            Expr::Const(c) => *c,
            Expr::Var(v) => env.get(*v),
            Expr::Unary(op, a) => apply_unary(*op, a.eval(env)?)?,
            Expr::Binary(op, a, b) => apply_binary(*op, a.eval(env)?, b.eval(env)?)?,
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Eval(format!("`{self}` is not finite at {env:?}")))
        }
    }

    /// Exact partial derivative with respect to `var`, with constant folding.
    pub fn diff(&self, var: Var) -> Expr {
        if !self.depends_on(var) {
            return Expr::Const(0.0);
        }
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Var(v) => Expr::Const(if *v == var { 1.0 } else { 0.0 }),
            Expr::Unary(op, a) => {
                let da = a.diff(var);
                let a = (**a).clone();
                let outer = match op {
                    Unary::Neg => return neg(da),
                    Unary::Sin => unary(Unary::Cos, a),
                    Unary::Cos => neg(unary(Unary::Sin, a)),
                    Unary::Exp => unary(Unary::Exp, a),
                    Unary::Ln => return div(da, a),
                    Unary::Gamma => mul(unary(Unary::Gamma, a.clone()), unary(Unary::Polygamma(0), a)),
                    Unary::Polygamma(k) => unary(Unary::Polygamma(k + 1), a),
                };
                mul(outer, da)
            }
            Expr::Binary(op, a, b) => {
                let (da, db) = (a.diff(var), b.diff(var));
                let (a, b) = ((**a).clone(), (**b).clone());
                match op {
                    Binary::Add => add(da, db),
                    Binary::Sub => sub(da, db),
                    Binary::Mul => add(mul(da, b), mul(a, db)),
                    Binary::Div => div(sub(mul(da, b.clone()), mul(a, db)), pow(b, Expr::Const(2.0))),
                    Binary::Pow => {
                        if db.is_zero() {
                            // d(a^b) = b a^(b-1) a'
                            let reduced = sub(b.clone(), Expr::Const(1.0));
                            mul(mul(b, pow(a, reduced)), da)
                        } else {
                            // d(a^b) = a^b (b' ln a + b a'/a)
                            let power = pow(a.clone(), b.clone());
                            let log_term = mul(db, unary(Unary::Ln, a.clone()));
                            mul(power, add(log_term, mul(b, div(da, a))))
                        }
                    }
                }
            }
        }
    }

    /// Replace every occurrence of `var` by `value`.
    pub fn substitute(&self, var: Var, value: &Expr) -> Expr {
        match self {
            Expr::Var(v) if *v == var => value.clone(),
            Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Unary(op, a) => unary(*op, a.substitute(var, value)),
            Expr::Binary(op, a, b) => binary(*op, a.substitute(var, value), b.substitute(var, value)),
        }
    }
}

fn apply_unary(op: Unary, a: f64) -> Result<f64> {
    Ok(match op {
        Unary::Neg => -a,
        Unary::Sin => a.sin(),
        Unary::Cos => a.cos(),
        Unary::Exp => a.exp(),
        Unary::Ln => {
            if a <= 0.0 {
                return Err(Error::Eval(format!("ln of non-positive value {a}")));
            }
            a.ln()
        }
        Unary::Gamma => specfun::gamma(a).map_err(|e| Error::Eval(e.to_string()))?,
        Unary::Polygamma(k) => specfun::polygamma(k, a).map_err(|e| Error::Eval(e.to_string()))?,
    })
}

fn apply_binary(op: Binary, a: f64, b: f64) -> Result<f64> {
    Ok(match op {
        Binary::Add => a + b,
        Binary::Sub => a - b,
        Binary::Mul => a * b,
        Binary::Div => {
            if b == 0.0 {
                return Err(Error::Eval("division by zero".into()));
            }
            a / b
        }
        Binary::Pow => power(a, b)?,
    })
}

fn power(base: f64, exp: f64) -> Result<f64> {
    if exp.fract() == 0.0 && exp.abs() <= 64.0 {
        if base == 0.0 && exp < 0.0 {
            return Err(Error::Eval(format!("0 raised to negative power {exp}")));
        }
        return Ok(base.powi(exp as i32));
    }
    if base > 0.0 {
        Ok(base.powf(exp))
    } else if base == 0.0 && exp > 0.0 {
        Ok(0.0)
    } else {
        Err(Error::Eval(format!("{base} raised to non-integer power {exp}")))
    }
}

// Smart constructors with constant folding.

pub(crate) fn unary(op: Unary, a: Expr) -> Expr {
    if op == Unary::Neg {
        return neg(a);
    }
    if let Some(c) = a.as_const() {
        if let Ok(v) = apply_unary(op, c) {
            if v.is_finite() {
                return Expr::Const(v);
            }
        }
    }
    Expr::Unary(op, Box::new(a))
}

pub(crate) fn binary(op: Binary, a: Expr, b: Expr) -> Expr {
    match op {
        Binary::Add => add(a, b),
        Binary::Sub => sub(a, b),
        Binary::Mul => mul(a, b),
        Binary::Div => div(a, b),
        Binary::Pow => pow(a, b),
    }
}

fn fold(op: Binary, a: &Expr, b: &Expr) -> Option<Expr> {
    let (x, y) = (a.as_const()?, b.as_const()?);
    apply_binary(op, x, y).ok().filter(|v| v.is_finite()).map(Expr::Const)
}

fn raw(op: Binary, a: Expr, b: Expr) -> Expr {
    Expr::Binary(op, Box::new(a), Box::new(b))
}

pub fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Unary(Unary::Neg, inner) => *inner,
        other => Expr::Unary(Unary::Neg, Box::new(other)),
    }
}

pub fn add(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(Binary::Add, &a, &b) {
        return e;
    }
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    raw(Binary::Add, a, b)
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(Binary::Sub, &a, &b) {
        return e;
    }
    if b.is_zero() {
        return a;
    }
    if a.is_zero() {
        return neg(b);
    }
    raw(Binary::Sub, a, b)
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(Binary::Mul, &a, &b) {
        return e;
    }
    if a.is_zero() || b.is_zero() {
        return Expr::Const(0.0);
    }
    if a.as_const() == Some(1.0) {
        return b;
    }
    if b.as_const() == Some(1.0) {
        return a;
    }
    raw(Binary::Mul, a, b)
}

pub fn div(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(Binary::Div, &a, &b) {
        return e;
    }
    if a.is_zero() {
        return Expr::Const(0.0);
    }
    if b.as_const() == Some(1.0) {
        return a;
    }
    raw(Binary::Div, a, b)
}

pub fn pow(a: Expr, b: Expr) -> Expr {
    if let Some(e) = fold(Binary::Pow, &a, &b) {
        return e;
    }
    match b.as_const() {
        Some(0.0) => Expr::Const(1.0),
        Some(1.0) => a,
        _ => raw(Binary::Pow, a, b),
    }
}

/// Prints fully parenthesised text that [`parse`] maps back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => {
                if c.is_sign_negative() {
                    write!(f, "(-{:?})", -c)
                } else {
                    write!(f, "{c:?}")
                }
            }
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Unary(op, a) => match op {
                Unary::Neg => write!(f, "(-{a})"),
                Unary::Sin => write!(f, "sin({a})"),
                Unary::Cos => write!(f, "cos({a})"),
                Unary::Exp => write!(f, "exp({a})"),
                Unary::Ln => write!(f, "ln({a})"),
                Unary::Gamma => write!(f, "gamma({a})"),
                Unary::Polygamma(0) => write!(f, "digamma({a})"),
                Unary::Polygamma(k) => write!(f, "polygamma({k}, {a})"),
            },
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}
