//! Reduction of a linear family to a constant-coefficient second-order
//! equation, the ρ table, the differential Galois group of `ÿ = ρy`, and the
//! solution bases.
//!
//! The group is reported as a tagged enum plus the shape of its generator
//! matrices; the Picard-Vessiot extension itself is not materialized. For
//! `ρ = 0` the group is additive (unipotent generators, basis `{1, t}`);
//! otherwise multiplicative (diagonal torus, basis `{e^{±√ρ t}}`).

use std::fmt;

use num_complex::Complex64;

use crate::expr::Expr;
use crate::model::{LinearFamily, ModelError, Params};
use crate::scalar::Scalar;

/// The second-order form `ẍ + damping·ẋ + stiffness·x = 0` of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct LienardForm {
    pub damping: Scalar,
    pub stiffness: Scalar,
}

impl LienardForm {
    /// `ρ = damping²/4 − stiffness`, the coefficient of the reduced equation
    /// `ÿ = ρy` after `x = e^{−damping·t/2}·y`.
    pub fn reduced_rho(&self) -> Scalar {
        self.damping
            .squared()
            .mul(&Scalar::from_ratio(1, 4))
            .sub(&self.stiffness)
    }

    /// The exponential shift `−damping/2` of the change of variable.
    pub fn shift(&self) -> Scalar {
        self.damping.mul(&Scalar::from_ratio(-1, 2))
    }
}

/// Second-order form of a family: `damping = −p`, `stiffness = −q`.
///
/// Affine families reduce after translating the equilibrium to the origin,
/// which leaves `p` and `q` unchanged, so no case split is needed.
pub fn lienard_reduce(fam: &LinearFamily) -> LienardForm {
    LienardForm {
        damping: fam.p.neg(),
        stiffness: fam.q.neg(),
    }
}

/// A table row: the reduced coefficient for a zero-pattern of `(a, b, c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoValue {
    pub rho: Scalar,
    /// `(a ≠ 0, b ≠ 0, c ≠ 0)`
    pub zero_pattern: (bool, bool, bool),
}

/// Looks up the ρ table by zero-pattern:
///
/// | a | b | c | ρ |
/// |---|---|---|---|
/// | 0 | 0 | ≠0 | −c |
/// | 0 | ≠0 | 0 | 0 |
/// | ≠0 | 0 | 0 | 0 |
/// | ≠0 | ≠0 | 0 | 2ab |
/// | ≠0 | 0 | ≠0 | −c |
/// | 0 | ≠0 | ≠0 | −c |
/// | ≠0 | ≠0 | ≠0 | 2ab − c |
///
/// Every row is the specialization of `2ab − c` to its pattern.
pub fn compute_rho(params: &Params) -> Result<RhoValue, ModelError> {
    let pattern = params.zero_pattern();
    let rho = match pattern {
        (false, false, false) => return Err(ModelError::AllZeroParams),
        (false, false, true) => params.c.neg(),
        (false, true, false) | (true, false, false) => Scalar::zero(),
        (true, true, false) => Scalar::from_int(2).mul(&params.a).mul(&params.b),
        (true, false, true) | (false, true, true) => params.c.neg(),
        (true, true, true) => Scalar::from_int(2)
            .mul(&params.a)
            .mul(&params.b)
            .sub(&params.c),
    };
    Ok(RhoValue {
        rho,
        zero_pattern: pattern,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaloisGroup {
    /// Additive group 𝔾ₐ: `σ_c(y) = y + c`.
    AdditiveGa,
    /// Multiplicative group 𝔾ₘ: `σ_c(y) = c·y`.
    MultiplicativeGm,
}

impl fmt::Display for GaloisGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisGroup::AdditiveGa => f.write_str("additive (Ga)"),
            GaloisGroup::MultiplicativeGm => f.write_str("multiplicative (Gm)"),
        }
    }
}

/// Shape of the generator matrices acting on the solution basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMatrixForm {
    /// `[[1, 0], [c, 1]]`
    UnipotentLowerTriangular,
    /// `[[c, 0], [0, 1/c]]`
    DiagonalTorus,
}

impl fmt::Display for GeneratorMatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorMatrixForm::UnipotentLowerTriangular => f.write_str("[[1,0],[c,1]]"),
            GeneratorMatrixForm::DiagonalTorus => f.write_str("[[c,0],[0,1/c]]"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GaloisResult {
    pub rho: RhoValue,
    pub group: GaloisGroup,
    pub generator_matrix_form: GeneratorMatrixForm,
    /// Solution basis of `ÿ = ρy`: `(1, t)` or `(e^{√ρ t}, e^{−√ρ t})`.
    pub reduced_basis: (Expr, Expr),
    /// Basis lifted through `x = e^{shift·t}·y`.
    pub lienard_basis: (Expr, Expr),
}

/// Galois group of `ÿ = ρy` plus the bases; `shift` is the exponential
/// factor of the change of variable back to the second-order equation
/// (`a + b` for the full family).
pub fn galois_group(rho: &RhoValue, shift: &Scalar) -> GaloisResult {
    let lift = Expr::exp(Expr::real(shift.to_f64()) * Expr::t());
    if rho.rho.is_zero() {
        let y1 = Expr::real(1.0);
        let y2 = Expr::t();
        return GaloisResult {
            rho: rho.clone(),
            group: GaloisGroup::AdditiveGa,
            generator_matrix_form: GeneratorMatrixForm::UnipotentLowerTriangular,
            lienard_basis: (lift.clone() * y1.clone(), lift * y2.clone()),
            reduced_basis: (y1, y2),
        };
    }
    let sqrt_rho = Complex64::new(rho.rho.to_f64(), 0.0).sqrt();
    let y1 = Expr::exp(Expr::constant(sqrt_rho) * Expr::t());
    let y2 = Expr::exp(Expr::constant(-sqrt_rho) * Expr::t());
    GaloisResult {
        rho: rho.clone(),
        group: GaloisGroup::MultiplicativeGm,
        generator_matrix_form: GeneratorMatrixForm::DiagonalTorus,
        lienard_basis: (lift.clone() * y1.clone(), lift * y2.clone()),
        reduced_basis: (y1, y2),
    }
}

/// Galois data of a family's own second-order reduction.
pub fn galois_for_family(fam: &LinearFamily) -> GaloisResult {
    let form = lienard_reduce(fam);
    let rho = RhoValue {
        rho: form.reduced_rho(),
        zero_pattern: fam.source.zero_pattern(),
    };
    galois_group(&rho, &form.shift())
}

/// Max over `t` samples of `|ẍ + damping·ẋ + stiffness·x| / max(1, |x|)`,
/// with the derivatives taken symbolically.
pub fn lienard_residual(form: &LienardForm, solution: &Expr, t_samples: &[f64]) -> f64 {
    use crate::expr::{Env, Var};
    let xdot = solution.diff(Var::T);
    let xddot = xdot.diff(Var::T);
    let damping = Complex64::new(form.damping.to_f64(), 0.0);
    let stiffness = Complex64::new(form.stiffness.to_f64(), 0.0);
    let mut worst: f64 = 0.0;
    for &t in t_samples {
        let env = Env::t(Complex64::new(t, 0.0));
        let x = solution.eval(&env);
        let res = xddot.eval(&env) + damping * xdot.eval(&env) + stiffness * x;
        worst = worst.max(res.norm() / x.norm().max(1.0));
    }
    worst
}
