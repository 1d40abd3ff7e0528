//! Shared numeric kernels: fixed-step RK4, directional derivatives of
//! expression trees, finite-difference fallbacks, and CSV serialization.
//!
//! The integrator is deliberately non-adaptive: trajectories here are short
//! and the fields polynomial, and a fixed step keeps report regeneration
//! bit-exact.

use std::io::{self, Write};

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::{Env, Expr, Var};

/// Trajectories are truncated once any state component passes this magnitude,
/// so repulsor orbits terminate cleanly instead of overflowing.
pub const OVERFLOW_CAP: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("evaluation point is within {guard:e} of a pole (|denominator| = {value:e})")]
    PoleEncountered { guard: f64, value: f64 },
}

/// State vector usable by the fixed-step integrator.
pub trait OdeState: Copy {
    fn scaled_add(&self, h: f64, direction: &Self) -> Self;
    fn rk4_combine(&self, h: f64, k1: &Self, k2: &Self, k3: &Self, k4: &Self) -> Self;
    fn max_abs(&self) -> f64;
}

impl OdeState for [f64; 2] {
    fn scaled_add(&self, h: f64, d: &Self) -> Self {
        [self[0] + h * d[0], self[1] + h * d[1]]
    }

    fn rk4_combine(&self, h: f64, k1: &Self, k2: &Self, k3: &Self, k4: &Self) -> Self {
        let w = h / 6.0;
        [
            self[0] + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            self[1] + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ]
    }

    fn max_abs(&self) -> f64 {
        self[0].abs().max(self[1].abs())
    }
}

impl OdeState for Complex64 {
    fn scaled_add(&self, h: f64, d: &Self) -> Self {
        self + *d * h
    }

    fn rk4_combine(&self, h: f64, k1: &Self, k2: &Self, k3: &Self, k4: &Self) -> Self {
        self + (*k1 + *k2 * 2.0 + *k3 * 2.0 + *k4) * (h / 6.0)
    }

    fn max_abs(&self) -> f64 {
        self.re.abs().max(self.im.abs())
    }
}

/// A fixed-step trajectory: strictly increasing times with uniform spacing,
/// every stored state finite.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    pub t0: f64,
    pub h: f64,
    pub states: Vec<(f64, S)>,
    /// True when integration stopped early at the overflow cap.
    pub truncated: bool,
}

impl<S: Copy> Trajectory<S> {
    pub fn last_state(&self) -> S {
        self.states.last().expect("trajectory is never empty").1
    }
}

/// Classical fourth-order Runge-Kutta over `t ∈ [t0, t1]` for an autonomous
/// field. The actual step is `(t1 − t0)/n` for the smallest `n` that keeps it
/// at or below the requested `h`, so spacing stays uniform and the endpoint
/// lands on `t1` exactly.
///
/// Stops early (and flags the trajectory) as soon as a step would leave the
/// overflow cap, or produces a non-finite state.
pub fn rk4<S: OdeState>(
    field: impl Fn(&S) -> S,
    state0: S,
    t0: f64,
    t1: f64,
    h: f64,
) -> Trajectory<S> {
    assert!(h > 0.0, "step size must be positive");
    assert!(
        t1 > t0,
        "integrate forward; negate the field to go backward"
    );
    let steps = ((t1 - t0) / h).ceil().max(1.0) as usize;
    let h = (t1 - t0) / steps as f64;
    let mut states = Vec::with_capacity(steps + 1);
    let mut state = state0;
    let mut truncated = false;
    states.push((t0, state));
    for i in 0..steps {
        let k1 = field(&state);
        let k2 = field(&state.scaled_add(h / 2.0, &k1));
        let k3 = field(&state.scaled_add(h / 2.0, &k2));
        let k4 = field(&state.scaled_add(h, &k3));
        let next = state.rk4_combine(h, &k1, &k2, &k3, &k4);
        let mag = next.max_abs();
        if !mag.is_finite() || mag > OVERFLOW_CAP {
            truncated = true;
            break;
        }
        state = next;
        states.push((t0 + (i + 1) as f64 * h, state));
    }
    Trajectory {
        t0,
        h,
        states,
        truncated,
    }
}

/// A planar field with complex components, as needed by the directional
/// derivative `X(·) = P·∂x + Q·∂v`.
pub trait ComplexPlanarField {
    fn components(&self, x: Complex64, v: Complex64) -> (Complex64, Complex64);
}

/// Guard radius around denominator zeros.
pub const POLE_GUARD: f64 = 1e-6;

/// Checks that `(x, v)` is off the poles of `expr`.
pub fn check_off_poles(expr: &Expr, x: Complex64, v: Complex64) -> Result<(), NumericsError> {
    let env = Env::xv(x, v);
    for den in expr.denominators() {
        let value = den.eval(&env).norm();
        if value < POLE_GUARD {
            return Err(NumericsError::PoleEncountered {
                guard: POLE_GUARD,
                value,
            });
        }
    }
    Ok(())
}

/// `X(expr)` at `(x, v)`: `∂x(expr)·P + ∂v(expr)·Q` with exact symbolic
/// partials of the tree.
pub fn directional_derivative(
    expr: &Expr,
    field: &impl ComplexPlanarField,
    x: Complex64,
    v: Complex64,
) -> Result<Complex64, NumericsError> {
    check_off_poles(expr, x, v)?;
    let env = Env::xv(x, v);
    let (p, q) = field.components(x, v);
    Ok(expr.diff(Var::X).eval(&env) * p + expr.diff(Var::V).eval(&env) * q)
}

/// Central finite difference of `expr` in `var`, the fallback used to
/// cross-check the symbolic partials.
pub fn finite_difference(expr: &Expr, var: Var, env: &Env, step: f64) -> Complex64 {
    let mut plus = *env;
    let mut minus = *env;
    match var {
        Var::X => {
            plus.x += step;
            minus.x -= step;
        }
        Var::V => {
            plus.v += step;
            minus.v -= step;
        }
        Var::T => {
            plus.t += step;
            minus.t -= step;
        }
    }
    (expr.eval(&plus) - expr.eval(&minus)) / (2.0 * step)
}

/// Writes a planar trajectory as CSV with the given header (`t,x,y` or
/// `t,x,v`), 17 significant digits per value.
pub fn write_csv<W: Write>(w: &mut W, traj: &Trajectory<[f64; 2]>, header: &str) -> io::Result<()> {
    writeln!(w, "{header}")?;
    for (t, s) in &traj.states {
        writeln!(w, "{:.16e},{:.16e},{:.16e}", t, s[0], s[1])?;
    }
    Ok(())
}
