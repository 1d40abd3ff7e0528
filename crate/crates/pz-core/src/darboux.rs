//! Darboux integrability elements of the planar system `ẋ = 1, v̇ = ρ − v²`
//! (the log-derivative reduction of `ÿ = ρy`), with numeric verification of
//! the cofactor, integrating-factor and first-integral identities.
//!
//! Everything evaluates over complex scalars so `ρ < 0` and genuinely complex
//! `ρ` are handled uniformly; real-part presentation is the CLI's business.

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::{Env, Expr, Var};
use crate::numerics::{
    check_off_poles, directional_derivative, rk4, ComplexPlanarField, Trajectory,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DarbouxError {
    /// The element formulas divide by `√ρ`; `ρ = 0` is the additive-group
    /// case and carries no Darboux set here.
    #[error("ρ = 0 has no Darboux set: the element formulas divide by √ρ")]
    RhoZero,
    #[error("trajectory passes within {0:e} of a zero of a denominator")]
    PoleEncountered(f64),
}

/// The field `X = ∂x + (ρ − v²)∂v`.
#[derive(Debug, Clone, Copy)]
pub struct RiccatiField {
    pub rho: Complex64,
}

impl RiccatiField {
    /// Constant solutions `v₁ = √ρ`, `v₂ = −√ρ`.
    pub fn constant_solutions(&self) -> (Complex64, Complex64) {
        let root = self.rho.sqrt();
        (root, -root)
    }

    /// `v̇` at `v`.
    pub fn vdot(&self, v: Complex64) -> Complex64 {
        self.rho - v * v
    }

    /// The second component as an expression: `ρ − v²`.
    pub fn q_expr(&self) -> Expr {
        Expr::constant(self.rho) - Expr::v() * Expr::v()
    }

    /// `div(P, Q) = ∂x(1) + ∂v(ρ − v²) = −2v`.
    pub fn divergence_expr(&self) -> Expr {
        Expr::real(-2.0) * Expr::v()
    }
}

impl ComplexPlanarField for RiccatiField {
    fn components(&self, _x: Complex64, v: Complex64) -> (Complex64, Complex64) {
        (Complex64::new(1.0, 0.0), self.vdot(v))
    }
}

pub fn riccati_system(rho: Complex64) -> RiccatiField {
    RiccatiField { rho }
}

/// The Darboux elements of the field for `ρ ≠ 0`.
///
/// Invariant curves `f_λ = −v ± √ρ` with cofactors `K_λ = −(v ± √ρ)`,
/// exponential factors `F_λ = e^{±√ρ x}` with cofactors `L_λ = ±√ρ`,
/// integrating factors `R_λ = e^{∓2√ρ x}/(−v ± √ρ)²`, and the first
/// integrals built from the second Riccati solutions
/// `v_{(λ,2)} = v_{(λ,1)} + E_λ/(G_λ + C)` where `E_λ = e^{∓2√ρ x}` and
/// `G_λ` is its antiderivative.
#[derive(Debug, Clone)]
pub struct DarbouxSet {
    pub rho: Complex64,
    pub sqrt_rho: Complex64,
    /// `f₁ = −v + √ρ`, `f₂ = −v − √ρ`
    pub invariant_curves: [Expr; 2],
    /// `K₁ = −(v + √ρ)`, `K₂ = −(v − √ρ)`
    pub curve_cofactors: [Expr; 2],
    /// `F₁ = e^{√ρ x}`, `F₂ = e^{−√ρ x}`
    pub exponential_factors: [Expr; 2],
    /// `L₁ = √ρ`, `L₂ = −√ρ`
    pub exponential_cofactors: [Expr; 2],
    /// `R₁ = e^{−2√ρ x}/(−v + √ρ)²`, `R₂ = e^{2√ρ x}/(−v − √ρ)²`
    pub integrating_factors: [Expr; 2],
    /// First integrals `I_λ = ((−v + v_{(λ,2)})/(−v + v_{(λ,1)}))·(G_λ + C)·e^{1/(4ρ)}`
    pub first_integrals: [Expr; 2],
    /// The second Riccati solutions `v_{(λ,2)}`.
    pub second_solutions: [Expr; 2],
    pub integration_constant: Complex64,
}

/// Builds the full element set. `C` is the integration constant carried by
/// the second solutions (`C = 0` collapses `v_{(λ,2)}` onto the opposite
/// constant solution; the set is still built, the CLI refuses it upstream).
pub fn build_darboux_set(rho: Complex64, c: Complex64) -> Result<DarbouxSet, DarbouxError> {
    if rho.norm() == 0.0 {
        return Err(DarbouxError::RhoZero);
    }
    let root = rho.sqrt();
    let v = Expr::v;
    let x = Expr::x;
    let sr = move || Expr::constant(root);

    let f1 = -v() + sr();
    let f2 = -v() - sr();
    let k1 = -(v() + sr());
    let k2 = -(v() - sr());

    let exp_pos = Expr::exp(sr() * x());
    let exp_neg = Expr::exp(-sr() * x());
    let l1 = sr();
    let l2 = -sr();

    // E_λ = e^{−2 v_{(λ,1)} x} and its antiderivative G_λ = E_λ/(−2 v_{(λ,1)}).
    let e1 = Expr::exp(Expr::constant(-2.0 * root) * x());
    let g1 = e1.clone() / Expr::constant(-2.0 * root);
    let e2 = Expr::exp(Expr::constant(2.0 * root) * x());
    let g2 = e2.clone() / Expr::constant(2.0 * root);

    let r1 = e1.clone() / Expr::powi(-v() + sr(), 2);
    let r2 = e2.clone() / Expr::powi(-v() - sr(), 2);

    let c_expr = Expr::constant(c);
    let v12 = sr() + e1 / (g1.clone() + c_expr.clone());
    let v22 = -sr() + e2 / (g2.clone() + c_expr.clone());

    // Constant multiplier kept from the printed form; it does not affect
    // the first-integral property.
    let scale = Expr::constant((1.0 / (4.0 * rho)).exp());
    let i1 = ((-v() + v12.clone()) / (-v() + sr())) * (g1 + c_expr.clone()) * scale.clone();
    let i2 = ((-v() + v22.clone()) / (-v() - sr())) * (g2 + c_expr) * scale;

    Ok(DarbouxSet {
        rho,
        sqrt_rho: root,
        invariant_curves: [f1, f2],
        curve_cofactors: [k1, k2],
        exponential_factors: [exp_pos, exp_neg],
        exponential_cofactors: [l1, l2],
        integrating_factors: [r1, r2],
        first_integrals: [i1, i2],
        second_solutions: [v12, v22],
        integration_constant: c,
    })
}

/// Radius of the disk excluded around denominator zeros when sampling.
pub const SAMPLE_POLE_RADIUS: f64 = 1e-3;

/// Deterministic sample points in `[−2, 2]²` for the verification sweeps.
pub fn sample_points(seed: u64, n: usize) -> Vec<(Complex64, Complex64)> {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
    let mut unit = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..n)
        .map(|_| {
            (
                Complex64::new(4.0 * unit() - 2.0, 0.0),
                Complex64::new(4.0 * unit() - 2.0, 0.0),
            )
        })
        .collect()
}

fn off_sample_poles(exprs: &[&Expr], x: Complex64, v: Complex64) -> bool {
    let env = Env::xv(x, v);
    exprs.iter().all(|e| {
        e.denominators()
            .iter()
            .all(|den| den.eval(&env).norm() >= SAMPLE_POLE_RADIUS)
    })
}

/// Max of `|X(f) − K·f|` over the samples (points inside the pole-exclusion
/// disks of either expression are skipped).
pub fn check_cofactor(
    field: &RiccatiField,
    f: &Expr,
    cofactor: &Expr,
    samples: &[(Complex64, Complex64)],
) -> f64 {
    let mut worst: f64 = 0.0;
    for &(x, v) in samples {
        if !off_sample_poles(&[f, cofactor], x, v) {
            continue;
        }
        let xf = directional_derivative(f, field, x, v).expect("point is off the poles");
        let env = Env::xv(x, v);
        let res = xf - cofactor.eval(&env) * f.eval(&env);
        worst = worst.max(res.norm());
    }
    worst
}

/// Evaluates `Σλ_i·K_i + Σμ_j·L_j (+ div)` on the samples; true iff the
/// weights are not all zero and the maximum magnitude stays below `1e−10`.
pub fn check_darboux_condition(
    curve_cofactors: &[Expr],
    exp_cofactors: &[Expr],
    lambda: &[Complex64],
    mu: &[Complex64],
    divergence: Option<&Expr>,
    samples: &[(Complex64, Complex64)],
) -> bool {
    assert_eq!(curve_cofactors.len(), lambda.len());
    assert_eq!(exp_cofactors.len(), mu.len());
    if lambda.iter().chain(mu.iter()).all(|w| w.norm() == 0.0) {
        return false;
    }
    let mut worst: f64 = 0.0;
    for &(x, v) in samples {
        let env = Env::xv(x, v);
        let mut total = Complex64::new(0.0, 0.0);
        for (w, k) in lambda.iter().zip(curve_cofactors) {
            total += w * k.eval(&env);
        }
        for (w, l) in mu.iter().zip(exp_cofactors) {
            total += w * l.eval(&env);
        }
        if let Some(d) = divergence {
            total += d.eval(&env);
        }
        worst = worst.max(total.norm());
    }
    worst < 1e-10
}

/// Companion linear solver: finds weights `(λ, μ)` with
/// `Σλ_iK_i + Σμ_jL_j (+ div) = 0` as a polynomial identity in `v`.
///
/// The cofactors here are affine in `v` with constant coefficients, so the
/// identity is a 2-row linear system (constant term and `v`-coefficient).
/// Returns `None` when the system is inconsistent; for the homogeneous form
/// the returned vector is nonzero.
pub fn solve_darboux_weights(
    curve_cofactors: &[Expr],
    exp_cofactors: &[Expr],
    divergence: Option<&Expr>,
) -> Option<(Vec<Complex64>, Vec<Complex64>)> {
    let coeffs = |e: &Expr| -> (Complex64, Complex64) {
        let at = |v: f64| e.eval(&Env::xv(Complex64::new(0.0, 0.0), Complex64::new(v, 0.0)));
        let c0 = at(0.0);
        let c1 = at(1.0) - c0;
        (c0, c1)
    };
    let n = curve_cofactors.len() + exp_cofactors.len();
    // Rows: constant coefficients, then v-coefficients; last column is the
    // negated divergence contribution.
    let mut rows = [
        vec![Complex64::new(0.0, 0.0); n + 1],
        vec![Complex64::new(0.0, 0.0); n + 1],
    ];
    for (j, e) in curve_cofactors
        .iter()
        .chain(exp_cofactors.iter())
        .enumerate()
    {
        let (c0, c1) = coeffs(e);
        rows[0][j] = c0;
        rows[1][j] = c1;
    }
    if let Some(d) = divergence {
        let (c0, c1) = coeffs(d);
        rows[0][n] = -c0;
        rows[1][n] = -c1;
    }

    // Gaussian elimination with partial pivoting on the 2×n system.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let (best, best_norm) = (row..2)
            .map(|r| (r, rows[r][col].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((row, 0.0));
        if best_norm < 1e-12 {
            continue;
        }
        rows.swap(row, best);
        let inv = Complex64::new(1.0, 0.0) / rows[row][col];
        for value in rows[row].iter_mut().skip(col) {
            *value *= inv;
        }
        let other = 1 - row;
        let factor = rows[other][col];
        let pivot_row = rows[row].clone();
        for (value, pivot) in rows[other].iter_mut().zip(&pivot_row).skip(col) {
            *value -= factor * pivot;
        }
        pivot_cols.push(col);
        row += 1;
        if row == 2 {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    if rows.iter().skip(row).any(|r| r[n].norm() > 1e-9) {
        return None;
    }

    let mut weights = vec![Complex64::new(0.0, 0.0); n];
    if divergence.is_none() {
        // Homogeneous: set the first free column to 1.
        let free = (0..n).find(|c| !pivot_cols.contains(c))?;
        weights[free] = Complex64::new(1.0, 0.0);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            weights[pc] = -rows[r][free];
        }
    } else {
        // Particular solution with all free columns at zero.
        for (r, &pc) in pivot_cols.iter().enumerate() {
            weights[pc] = rows[r][n];
        }
    }
    let split = curve_cofactors.len();
    Some((weights[..split].to_vec(), weights[split..].to_vec()))
}

/// The multi-valued product `H = Πf_i^{λ_i}·ΠF_j^{μ_j}`.
pub fn weighted_product(
    curves: &[Expr],
    exp_factors: &[Expr],
    lambda: &[Complex64],
    mu: &[Complex64],
) -> Expr {
    let mut h = Expr::real(1.0);
    for (f, w) in curves.iter().zip(lambda) {
        h = h * Expr::pow(f.clone(), Expr::constant(*w));
    }
    for (f, w) in exp_factors.iter().zip(mu) {
        h = h * Expr::pow(f.clone(), Expr::constant(*w));
    }
    h
}

/// Max of `|∂x(R·P) + ∂v(R·Q)|` over the samples, normalized per point by
/// the magnitude of the larger of the two terms (floored at 1).
///
/// The two terms blow up like `1/d²` towards the excluded pole disks, so the
/// raw difference carries their rounding; dividing by the term scale makes
/// the residual meaningful at every admitted sample point.
pub fn check_integrating_factor(
    r: &Expr,
    field: &RiccatiField,
    samples: &[(Complex64, Complex64)],
) -> f64 {
    let dx_rp = r.diff(Var::X); // P = 1
    let dv_rq = (r.clone() * field.q_expr()).diff(Var::V);
    let mut worst: f64 = 0.0;
    for &(x, v) in samples {
        if !off_sample_poles(&[r], x, v) {
            continue;
        }
        let env = Env::xv(x, v);
        let a = dx_rp.eval(&env);
        let b = dv_rq.eval(&env);
        let scale = a.norm().max(b.norm()).max(1.0);
        worst = worst.max((a + b).norm() / scale);
    }
    worst
}

/// A Riccati orbit: `x(t) = x0 + t`, `v(t)` integrated by RK4.
#[derive(Debug, Clone)]
pub struct RiccatiTrajectory {
    pub x0: f64,
    pub v: Trajectory<Complex64>,
}

pub fn integrate_riccati(
    field: &RiccatiField,
    x0: f64,
    v0: Complex64,
    t1: f64,
    h: f64,
) -> RiccatiTrajectory {
    let rho = field.rho;
    let v = rk4(move |v: &Complex64| rho - v * v, v0, 0.0, t1, h);
    RiccatiTrajectory { x0, v }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstIntegralCheck {
    /// Max over trajectories of
    /// `max_t |I(x(t), v(t)) − I(x0, v0)| / max(1, |I(x0, v0)|)`.
    pub max_drift: f64,
    /// Max of `|X(I)|` over a deterministic sample grid.
    pub max_directional: f64,
}

/// Drift of `I` along the given orbits plus the pointwise `|X(I)|` check.
///
/// Fails with `PoleEncountered` when any orbit point comes within `1e−6` of
/// a zero of a denominator of `I`.
pub fn check_first_integral(
    integral: &Expr,
    field: &RiccatiField,
    trajectories: &[RiccatiTrajectory],
) -> Result<FirstIntegralCheck, DarbouxError> {
    let mut max_drift: f64 = 0.0;
    for traj in trajectories {
        let mut reference: Option<Complex64> = None;
        for &(t, v) in &traj.v.states {
            let x = Complex64::new(traj.x0 + t, 0.0);
            check_off_poles(integral, x, v)
                .map_err(|_| DarbouxError::PoleEncountered(crate::numerics::POLE_GUARD))?;
            let value = integral.eval(&Env::xv(x, v));
            match reference {
                None => reference = Some(value),
                Some(v0) => {
                    let drift = (value - v0).norm() / v0.norm().max(1.0);
                    max_drift = max_drift.max(drift);
                }
            }
        }
    }
    let mut max_directional: f64 = 0.0;
    for (x, v) in sample_points(0x5eed, 100) {
        if !off_sample_poles(&[integral], x, v) {
            continue;
        }
        let xd = directional_derivative(integral, field, x, v).expect("off poles");
        max_directional = max_directional.max(xd.norm());
    }
    Ok(FirstIntegralCheck {
        max_drift,
        max_directional,
    })
}

/// `v(t) = ẏ/y` for `y = C₁e^{√ρ t} + C₂e^{−√ρ t}` (or `C₁ + C₂t` when
/// `ρ = 0`): the closed-form side of the Riccati ↔ linear correspondence.
pub fn log_derivative_solution(rho: Complex64, c1: Complex64, c2: Complex64, t: f64) -> Complex64 {
    if rho.norm() == 0.0 {
        return c2 / (c1 + c2 * t);
    }
    let root = rho.sqrt();
    let ep = (root * t).exp();
    let em = (-root * t).exp();
    let y = c1 * ep + c2 * em;
    let ydot = root * (c1 * ep - c2 * em);
    ydot / y
}
