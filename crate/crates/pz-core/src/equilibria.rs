//! Finite critical points of a linear family: location, eigenvalues,
//! qualitative type.
//!
//! Eigenvalues come from the closed form `p/2 ± √(p²/4 + q)` (the roots of
//! `λ² − pλ − q`), not a generic eigensolver: degeneracy is decided on the
//! exact radicand and determinant of the input scalars, so boundary
//! parameters land on the boundary instead of near it.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::model::LinearFamily;
use crate::scalar::{Scalar, Sign};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EquilibriaError {
    /// `q = 0`, `r = 0`: the whole line `{y = 0}` is at rest; reported, not
    /// classified.
    #[error("non-isolated equilibria: the line y = 0 is invariant and at rest")]
    LineOfEquilibria,
}

/// Eigenvalue data of the characteristic polynomial `λ² − trace·λ + det`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    /// `p` - sum of the eigenvalues.
    pub trace: Scalar,
    /// `−q` - product of the eigenvalues.
    pub det: Scalar,
    /// `p²/4 + q` - the content under the radical; for the full family this
    /// is `2ab − c`.
    pub delta: Scalar,
}

impl Spectrum {
    /// Spectrum of `λ² − p·λ − q = 0`.
    pub fn from_char_poly(p: &Scalar, q: &Scalar) -> Spectrum {
        let quarter = Scalar::from_ratio(1, 4);
        let delta = p.squared().mul(&quarter).add(q);
        let half = p.mul(&Scalar::from_ratio(1, 2));
        let hf = half.to_f64();
        let (lambda1, lambda2) = match delta.sign() {
            Sign::Negative => {
                let im = (-delta.to_f64()).sqrt();
                (Complex64::new(hf, im), Complex64::new(hf, -im))
            }
            _ => {
                let root = delta.to_f64().max(0.0).sqrt();
                (
                    Complex64::new(hf + root, 0.0),
                    Complex64::new(hf - root, 0.0),
                )
            }
        };
        Spectrum {
            lambda1,
            lambda2,
            trace: p.clone(),
            det: q.neg(),
            delta,
        }
    }

    /// True when `Δ = 0` exactly (repeated eigenvalue).
    pub fn is_repeated(&self) -> bool {
        self.delta.is_zero()
    }

    fn half_trace(&self) -> Scalar {
        self.trace.mul(&Scalar::from_ratio(1, 2))
    }

    /// Exact signs of the two real eigenvalues; only meaningful for `Δ ≥ 0`.
    fn real_root_signs(&self) -> (Sign, Sign) {
        let half = self.half_trace();
        (
            half.sign_with_sqrt(&self.delta, Sign::Positive),
            half.sign_with_sqrt(&self.delta, Sign::Negative),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumKind {
    UnstableNode,
    StableNode,
    Saddle,
    UnstableFocus,
    StableFocus,
    Center,
    DegenerateZeroEigen,
}

impl fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EquilibriumKind::UnstableNode => "unstable node",
            EquilibriumKind::StableNode => "stable node",
            EquilibriumKind::Saddle => "saddle",
            EquilibriumKind::UnstableFocus => "unstable focus",
            EquilibriumKind::StableFocus => "stable focus",
            EquilibriumKind::Center => "center",
            EquilibriumKind::DegenerateZeroEigen => "degenerate (zero eigenvalue)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Repulsor,
    Attractor,
    Saddle,
    Neutral,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stability::Repulsor => "repulsor",
            Stability::Attractor => "attractor",
            Stability::Saddle => "saddle",
            Stability::Neutral => "neutral",
        };
        f.write_str(s)
    }
}

impl EquilibriumKind {
    pub fn stability(self) -> Stability {
        match self {
            EquilibriumKind::UnstableNode | EquilibriumKind::UnstableFocus => Stability::Repulsor,
            EquilibriumKind::StableNode | EquilibriumKind::StableFocus => Stability::Attractor,
            EquilibriumKind::Saddle => Stability::Saddle,
            EquilibriumKind::Center | EquilibriumKind::DegenerateZeroEigen => Stability::Neutral,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EquilibriumReport {
    pub location: (Scalar, Scalar),
    pub spectrum: Spectrum,
    pub kind: EquilibriumKind,
    pub stability: Stability,
}

/// Classifies by the exact sign pattern of `(Re λ₁, Re λ₂, Im λ)`.
pub fn classify_spectrum(s: &Spectrum) -> EquilibriumKind {
    if s.det.is_zero() {
        // λ₁λ₂ = 0: at least one eigenvalue is exactly zero.
        return EquilibriumKind::DegenerateZeroEigen;
    }
    match s.delta.sign() {
        Sign::Negative => match s.trace.sign() {
            Sign::Positive => EquilibriumKind::UnstableFocus,
            Sign::Negative => EquilibriumKind::StableFocus,
            Sign::Zero => EquilibriumKind::Center,
        },
        _ => {
            let (s1, s2) = s.real_root_signs();
            match (s1, s2) {
                (Sign::Positive, Sign::Positive) => EquilibriumKind::UnstableNode,
                (Sign::Negative, Sign::Negative) => EquilibriumKind::StableNode,
                (Sign::Positive, Sign::Negative) | (Sign::Negative, Sign::Positive) => {
                    EquilibriumKind::Saddle
                }
                // det ≠ 0 rules out zero roots.
                _ => unreachable!("zero eigenvalue with nonzero determinant"),
            }
        }
    }
}

/// Finite critical points of the family.
///
/// For `q ≠ 0` the single point is `(−r/q, 0)`; for `q = 0, r ≠ 0` there is
/// none; `q = 0, r = 0` is the non-isolated line `{y = 0}`.
pub fn finite_equilibria(fam: &LinearFamily) -> Result<Vec<EquilibriumReport>, EquilibriaError> {
    if fam.q.is_zero() {
        if fam.r.is_zero() {
            return Err(EquilibriaError::LineOfEquilibria);
        }
        return Ok(Vec::new());
    }
    let x = fam.r.neg().div(&fam.q);
    let spectrum = Spectrum::from_char_poly(&fam.p, &fam.q);
    let kind = classify_spectrum(&spectrum);
    Ok(vec![EquilibriumReport {
        location: (x, Scalar::zero()),
        spectrum,
        kind,
        stability: kind.stability(),
    }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{reduce_to_linear, Params};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn f9(a: i64, b: i64, c: i64) -> LinearFamily {
        let p = Params::from_ints(a, b, c, 1, 0);
        reduce_to_linear(&p).unwrap().remove(0)
    }

    fn f9_spectrum(a: i64, b: i64, c: i64) -> Spectrum {
        let fam = f9(a, b, c);
        Spectrum::from_char_poly(&fam.p, &fam.q)
    }

    #[test]
    fn distinct_positive_roots_are_an_unstable_node() {
        let reports = finite_equilibria(&f9(1, 1, 1)).unwrap();
        assert_eq!(reports.len(), 1);
        let rep = &reports[0];
        assert!(rep.location.0.is_zero() && rep.location.1.is_zero());
        assert_eq!(rep.spectrum.lambda1, Complex64::new(3.0, 0.0));
        assert_eq!(rep.spectrum.lambda2, Complex64::new(1.0, 0.0));
        assert_eq!(rep.kind, EquilibriumKind::UnstableNode);
        assert_eq!(rep.stability, Stability::Repulsor);
        assert!(!rep.spectrum.is_repeated());
    }

    #[test]
    fn repeated_root_is_flagged() {
        let reports = finite_equilibria(&f9(1, 1, 2)).unwrap();
        let rep = &reports[0];
        assert_eq!(rep.kind, EquilibriumKind::UnstableNode);
        assert!(rep.spectrum.is_repeated());
        assert_eq!(rep.spectrum.lambda1, rep.spectrum.lambda2);
        assert_eq!(rep.spectrum.lambda1, Complex64::new(2.0, 0.0));
    }

    #[test]
    fn complex_pair_is_a_focus() {
        let reports = finite_equilibria(&f9(1, 1, 3)).unwrap();
        let rep = &reports[0];
        assert_eq!(rep.kind, EquilibriumKind::UnstableFocus);
        assert_eq!(rep.spectrum.lambda1, Complex64::new(2.0, 1.0));
        assert_eq!(rep.spectrum.lambda2, Complex64::new(2.0, -1.0));
    }

    #[test]
    fn opposite_signs_are_a_saddle() {
        // a=1, b=-1, c=-6: trace 0, Δ = 2ab - c = 4, λ = ±2.
        let s = f9_spectrum(1, -1, -6);
        assert_eq!(classify_spectrum(&s), EquilibriumKind::Saddle);
        assert_eq!(s.lambda1, Complex64::new(2.0, 0.0));
        assert_eq!(s.lambda2, Complex64::new(-2.0, 0.0));
    }

    #[test]
    fn pure_imaginary_is_a_center() {
        // a=1, b=-1, c=3: trace 0, Δ = -5.
        let s = f9_spectrum(1, -1, 3);
        assert_eq!(classify_spectrum(&s), EquilibriumKind::Center);
    }

    #[test]
    fn zero_eigenvalue_is_degenerate() {
        // det = a²+b²+c = 0 for (1,1,-2).
        let s = f9_spectrum(1, 1, -2);
        assert_eq!(classify_spectrum(&s), EquilibriumKind::DegenerateZeroEigen);
    }

    #[test]
    fn stable_cases_mirror_unstable() {
        assert_eq!(
            classify_spectrum(&f9_spectrum(-1, -1, 1)),
            EquilibriumKind::StableNode
        );
        assert_eq!(
            classify_spectrum(&f9_spectrum(-1, -1, 3)),
            EquilibriumKind::StableFocus
        );
    }

    #[test]
    fn line_of_equilibria_is_reported() {
        // F3 with k=1 degenerates: q = -a²(1-k) = 0, p = a.
        let p = Params::new(
            Scalar::from_int(2),
            Scalar::zero(),
            Scalar::zero(),
            BigRational::zero(),
            BigRational::one(),
        )
        .unwrap();
        let fam = reduce_to_linear(&p).unwrap().remove(0);
        assert!(fam.q.is_zero() && fam.r.is_zero());
        assert_eq!(
            finite_equilibria(&fam).unwrap_err(),
            EquilibriaError::LineOfEquilibria
        );
    }

    #[test]
    fn affine_family_equilibrium_location() {
        // F5 from (0, 2, 3): critical point (-2c/b², 0) = (-3/2, 0).
        let p = Params::from_ints(0, 2, 3, 1, 0);
        let fams = reduce_to_linear(&p).unwrap();
        let reports = finite_equilibria(&fams[1]).unwrap();
        assert_eq!(reports[0].location.0, Scalar::from_ratio(-3, 2));
    }

    #[test]
    fn vieta_identities_hold() {
        for (a, b, c) in [(1, 1, 1), (3, -2, 7), (-5, 4, -9), (2, 2, 8)] {
            let s = f9_spectrum(a, b, c);
            let sum = s.lambda1 + s.lambda2;
            let prod = s.lambda1 * s.lambda2;
            assert!((sum.re - s.trace.to_f64()).abs() <= 1e-12 * sum.re.abs().max(1.0));
            assert!(sum.im.abs() <= 1e-12);
            assert!((prod.re - s.det.to_f64()).abs() <= 1e-12 * prod.re.abs().max(1.0));
            // Each λ satisfies the characteristic polynomial.
            for lam in [s.lambda1, s.lambda2] {
                let res = lam * lam - s.trace.to_f64() * lam + s.det.to_f64();
                assert!(res.norm() <= 1e-10 * lam.norm_sqr().max(1.0));
            }
        }
    }
}
