//! Small closed expression trees over complex scalars.
//!
//! Supports the variables `x`, `v`, `t`, the arithmetic operators, `exp`,
//! `sqrt` and powers. Trees are immutable, evaluate pointwise over `Complex64`
//! and differentiate symbolically, which is what the verification sweeps need:
//! residuals like `X(f) − K·f` are formed from exact partials, never finite
//! differences. Rendering is deterministic infix with a fixed operand order.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    V,
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => f.write_str("x"),
            Var::V => f.write_str("v"),
            Var::T => f.write_str("t"),
        }
    }
}

/// Point at which an expression is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Env {
    pub x: Complex64,
    pub v: Complex64,
    pub t: Complex64,
}

impl Env {
    pub fn xv(x: Complex64, v: Complex64) -> Env {
        Env {
            x,
            v,
            t: Complex64::new(0.0, 0.0),
        }
    }

    pub fn t(t: Complex64) -> Env {
        Env {
            x: Complex64::new(0.0, 0.0),
            v: Complex64::new(0.0, 0.0),
            t,
        }
    }

    fn get(&self, var: Var) -> Complex64 {
        match var {
            Var::X => self.x,
            Var::V => self.v,
            Var::T => self.t,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Var(Var),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Exp(Arc<Expr>),
    Sqrt(Arc<Expr>),
    Pow(Arc<Expr>, Arc<Expr>),
}

impl Expr {
    pub fn constant(c: Complex64) -> Expr {
        Expr::Const(c)
    }

    pub fn real(r: f64) -> Expr {
        Expr::Const(Complex64::new(r, 0.0))
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn x() -> Expr {
        Expr::Var(Var::X)
    }

    pub fn v() -> Expr {
        Expr::Var(Var::V)
    }

    pub fn t() -> Expr {
        Expr::Var(Var::T)
    }

    pub fn exp(e: Expr) -> Expr {
        Expr::Exp(Arc::new(e))
    }

    pub fn sqrt(e: Expr) -> Expr {
        Expr::Sqrt(Arc::new(e))
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        Expr::Pow(Arc::new(base), Arc::new(exponent))
    }

    pub fn powi(base: Expr, exponent: i32) -> Expr {
        Expr::pow(base, Expr::real(exponent as f64))
    }

    fn as_const(&self) -> Option<Complex64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn eval(&self, env: &Env) -> Complex64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var(v) => env.get(*v),
            Expr::Add(a, b) => a.eval(env) + b.eval(env),
            Expr::Sub(a, b) => a.eval(env) - b.eval(env),
            Expr::Mul(a, b) => a.eval(env) * b.eval(env),
            Expr::Div(a, b) => a.eval(env) / b.eval(env),
            Expr::Neg(a) => -a.eval(env),
            Expr::Exp(a) => a.eval(env).exp(),
            Expr::Sqrt(a) => a.eval(env).sqrt(),
            Expr::Pow(a, b) => {
                let base = a.eval(env);
                let e = b.eval(env);
                if e.im == 0.0 && e.re.fract() == 0.0 && e.re.abs() <= i32::MAX as f64 {
                    base.powi(e.re as i32)
                } else {
                    base.powc(e)
                }
            }
        }
    }

    /// Exact partial derivative with respect to `var`.
    ///
    /// Power rule: the exponent must be constant (all formulas here raise to
    /// constant powers); differentiating a variable exponent would need `ln`,
    /// which the tree does not carry.
    pub fn diff(&self, var: Var) -> Expr {
        match self {
            Expr::Const(_) => Expr::real(0.0),
            Expr::Var(v) => {
                if *v == var {
                    Expr::real(1.0)
                } else {
                    Expr::real(0.0)
                }
            }
            Expr::Add(a, b) => a.diff(var) + b.diff(var),
            Expr::Sub(a, b) => a.diff(var) - b.diff(var),
            Expr::Mul(a, b) => a.diff(var) * b.as_ref().clone() + a.as_ref().clone() * b.diff(var),
            Expr::Div(a, b) => {
                let num = a.diff(var) * b.as_ref().clone() - a.as_ref().clone() * b.diff(var);
                num / (b.as_ref().clone() * b.as_ref().clone())
            }
            Expr::Neg(a) => -a.diff(var),
            Expr::Exp(a) => a.diff(var) * self.clone(),
            Expr::Sqrt(a) => a.diff(var) / (Expr::real(2.0) * self.clone()),
            Expr::Pow(a, b) => {
                let c = b
                    .as_const()
                    .expect("differentiation requires a constant exponent");
                let reduced = Expr::pow(a.as_ref().clone(), Expr::constant(c - 1.0));
                Expr::constant(c) * reduced * a.diff(var)
            }
        }
    }

    /// Denominator subexpressions whose zeros are poles of the whole tree.
    pub fn denominators(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        self.collect_denominators(&mut out);
        out
    }

    fn collect_denominators(&self, out: &mut Vec<Expr>) {
        match self {
            Expr::Const(_) | Expr::Var(_) => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_denominators(out);
                b.collect_denominators(out);
            }
            Expr::Div(a, b) => {
                a.collect_denominators(out);
                b.collect_denominators(out);
                out.push(b.as_ref().clone());
            }
            Expr::Neg(a) | Expr::Exp(a) | Expr::Sqrt(a) => a.collect_denominators(out),
            Expr::Pow(a, b) => {
                a.collect_denominators(out);
                b.collect_denominators(out);
                if let Some(c) = b.as_const() {
                    if c.re < 0.0 {
                        out.push(a.as_ref().clone());
                    }
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_child(
        &self,
        child: &Expr,
        f: &mut fmt::Formatter<'_>,
        parens_if_le: bool,
    ) -> fmt::Result {
        let needs = if parens_if_le {
            child.precedence() <= self.precedence()
        } else {
            child.precedence() < self.precedence()
        };
        if needs {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

fn fmt_complex(c: Complex64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.im == 0.0 {
        if c.re < 0.0 {
            write!(f, "({})", c.re)
        } else {
            write!(f, "{}", c.re)
        }
    } else {
        write!(
            f,
            "({}{}{}i)",
            c.re,
            if c.im < 0.0 { "-" } else { "+" },
            c.im.abs()
        )
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => fmt_complex(*c, f),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(a, b) => {
                self.fmt_child(a, f, false)?;
                f.write_str(" + ")?;
                self.fmt_child(b, f, false)
            }
            Expr::Sub(a, b) => {
                self.fmt_child(a, f, false)?;
                f.write_str(" - ")?;
                self.fmt_child(b, f, true)
            }
            Expr::Mul(a, b) => {
                self.fmt_child(a, f, false)?;
                f.write_str("*")?;
                self.fmt_child(b, f, false)
            }
            Expr::Div(a, b) => {
                self.fmt_child(a, f, false)?;
                f.write_str("/")?;
                self.fmt_child(b, f, true)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                self.fmt_child(a, f, true)
            }
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
            Expr::Pow(a, b) => {
                self.fmt_child(a, f, true)?;
                f.write_str("^")?;
                self.fmt_child(b, f, true)
            }
        }
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Arc::new(self), Arc::new(rhs))
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Arc::new(self), Arc::new(rhs))
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Arc::new(self), Arc::new(rhs))
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Arc::new(self), Arc::new(rhs))
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Arc::new(self))
    }
}
