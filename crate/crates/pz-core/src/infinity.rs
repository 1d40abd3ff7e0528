//! Critical points at infinity via the compactification chart `x = 1/z`,
//! `y ↦ y/z`.
//!
//! For a homogeneous family `ẋ = y`, `ẏ = p·y + q·x` the chart system is
//! `±ẏ = y² − p·y − q`, `±ż = z·y`; its rest points on `z = 0` are the real
//! roots of the same quadratic whose roots are the finite eigenvalues, so the
//! chart roots and the spectrum coincide.

use std::fmt;

use thiserror::Error;

use crate::model::LinearFamily;
use crate::scalar::{Scalar, Sign};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InfinityError {
    /// The chart construction is done for homogeneous families only; the
    /// affine ones (`r ≠ 0`) are not reduced here.
    #[error(
        "family {0} has a constant term; the infinity chart is built for homogeneous families"
    )]
    AffineFamilyUnsupported(String),
}

/// Coefficients of the chart system `±ẏ = y² − p·y − q`, `±ż = z·y`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfinityChart {
    /// `(1, −p, −q)`: coefficients of `y²`, `y`, `1` in the ẏ-equation.
    pub ydot_poly: (Scalar, Scalar, Scalar),
}

impl InfinityChart {
    pub fn ydot_poly_f64(&self) -> (f64, f64, f64) {
        (
            self.ydot_poly.0.to_f64(),
            self.ydot_poly.1.to_f64(),
            self.ydot_poly.2.to_f64(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfinityKind {
    Repulsor,
    Attractor,
    Saddle,
    Degenerate,
}

impl InfinityKind {
    /// Stability of the antipodal point ("contrary stability").
    pub fn antipode(self) -> InfinityKind {
        match self {
            InfinityKind::Repulsor => InfinityKind::Attractor,
            InfinityKind::Attractor => InfinityKind::Repulsor,
            InfinityKind::Saddle => InfinityKind::Saddle,
            InfinityKind::Degenerate => InfinityKind::Degenerate,
        }
    }
}

impl fmt::Display for InfinityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InfinityKind::Repulsor => "repulsor",
            InfinityKind::Attractor => "attractor",
            InfinityKind::Saddle => "saddle",
            InfinityKind::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// A rest point of the compactified flow on the equator.
#[derive(Debug, Clone)]
pub struct InfinityPoint {
    /// Chart coordinate: a real root `y*` of `y² − p·y − q`.
    pub chart_y: f64,
    /// Unit direction `(1, y*, 0)/√(1 + y*²)` on the equator.
    pub equator_point: [f64; 3],
    /// `(2y* − p, y*)`: the chart Jacobian at `(y*, 0)` is diagonal.
    pub jacobian_diag: (f64, f64),
    pub kind: InfinityKind,
    pub antipode_kind: InfinityKind,
}

/// Chart system of a homogeneous family.
pub fn infinity_system(fam: &LinearFamily) -> Result<InfinityChart, InfinityError> {
    if fam.is_affine() {
        return Err(InfinityError::AffineFamilyUnsupported(fam.tag.to_string()));
    }
    Ok(InfinityChart {
        ydot_poly: (Scalar::from_int(1), fam.p.neg(), fam.q.neg()),
    })
}

/// Rest points of the chart system on `z = 0`.
///
/// Two points for `Δ > 0`, one degenerate point for `Δ = 0` (the linear part
/// vanishes in the y-direction), none for `Δ < 0`. The kind comes from the
/// exact signs of the Jacobian diagonal; antipodes flip stability.
pub fn infinity_points(fam: &LinearFamily) -> Result<Vec<InfinityPoint>, InfinityError> {
    infinity_system(fam)?;
    let half = fam.p.mul(&Scalar::from_ratio(1, 2));
    let quarter = Scalar::from_ratio(1, 4);
    let delta = fam.p.squared().mul(&quarter).add(&fam.q);
    let mut points = Vec::new();
    match delta.sign() {
        Sign::Negative => {}
        Sign::Zero => {
            let y = half.to_f64();
            points.push(make_point(y, Sign::Zero, half.sign(), fam.p.to_f64()));
        }
        Sign::Positive => {
            let root = delta.to_f64().sqrt();
            let hf = half.to_f64();
            // y₁ = p/2 + √Δ: first diagonal entry 2√Δ > 0.
            points.push(make_point(
                hf + root,
                Sign::Positive,
                half.sign_with_sqrt(&delta, Sign::Positive),
                fam.p.to_f64(),
            ));
            // y₂ = p/2 − √Δ: first diagonal entry −2√Δ < 0.
            points.push(make_point(
                hf - root,
                Sign::Negative,
                half.sign_with_sqrt(&delta, Sign::Negative),
                fam.p.to_f64(),
            ));
        }
    }
    Ok(points)
}

fn make_point(y: f64, first_diag_sign: Sign, y_sign: Sign, p: f64) -> InfinityPoint {
    let kind = match (first_diag_sign, y_sign) {
        (Sign::Zero, _) | (_, Sign::Zero) => InfinityKind::Degenerate,
        (Sign::Positive, Sign::Positive) => InfinityKind::Repulsor,
        (Sign::Negative, Sign::Negative) => InfinityKind::Attractor,
        _ => InfinityKind::Saddle,
    };
    let norm = (1.0 + y * y).sqrt();
    InfinityPoint {
        chart_y: y,
        equator_point: [1.0 / norm, y / norm, 0.0],
        jacobian_diag: (2.0 * y - p, y),
        kind,
        antipode_kind: kind.antipode(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::Spectrum;
    use crate::model::{reduce_to_linear, Params};

    fn f9(a: i64, b: i64, c: i64) -> LinearFamily {
        reduce_to_linear(&Params::from_ints(a, b, c, 1, 0))
            .unwrap()
            .remove(0)
    }

    #[test]
    fn chart_system_coefficients() {
        let fam = f9(1, 1, 1);
        let chart = infinity_system(&fam).unwrap();
        assert_eq!(chart.ydot_poly_f64(), (1.0, -4.0, 3.0));

        let f1 = reduce_to_linear(&Params::from_ints(0, 0, 5, 1, 0))
            .unwrap()
            .remove(0);
        let chart = infinity_system(&f1).unwrap();
        assert_eq!(chart.ydot_poly_f64(), (1.0, 0.0, 5.0));
    }

    #[test]
    fn affine_families_are_rejected() {
        let fams = reduce_to_linear(&Params::from_ints(0, 2, 3, 1, 0)).unwrap();
        let f5 = &fams[1];
        assert!(matches!(
            infinity_system(f5),
            Err(InfinityError::AffineFamilyUnsupported(_))
        ));
        assert!(infinity_points(f5).is_err());
    }

    #[test]
    fn two_points_with_positive_delta() {
        let pts = infinity_points(&f9(1, 1, 1)).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].chart_y, 3.0);
        assert_eq!(pts[0].jacobian_diag, (2.0, 3.0));
        assert_eq!(pts[0].kind, InfinityKind::Repulsor);
        assert_eq!(pts[0].antipode_kind, InfinityKind::Attractor);
        assert_eq!(pts[1].chart_y, 1.0);
        assert_eq!(pts[1].jacobian_diag, (-2.0, 1.0));
        assert_eq!(pts[1].kind, InfinityKind::Saddle);
        assert_eq!(pts[1].antipode_kind, InfinityKind::Saddle);
    }

    #[test]
    fn degenerate_point_with_zero_delta() {
        let pts = infinity_points(&f9(1, 1, 2)).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].chart_y, 2.0);
        assert_eq!(pts[0].kind, InfinityKind::Degenerate);
        assert_eq!(pts[0].jacobian_diag.0, 0.0);
    }

    #[test]
    fn no_points_with_negative_delta() {
        assert!(infinity_points(&f9(1, 1, 3)).unwrap().is_empty());
    }

    #[test]
    fn chart_roots_equal_finite_eigenvalues() {
        for (a, b, c) in [(1, 1, 1), (2, -3, -11), (-1, 4, 2)] {
            let fam = f9(a, b, c);
            let spec = Spectrum::from_char_poly(&fam.p, &fam.q);
            let pts = infinity_points(&fam).unwrap();
            if spec.delta.sign() == Sign::Negative {
                assert!(pts.is_empty());
                continue;
            }
            assert!((pts[0].chart_y - spec.lambda1.re).abs() <= 1e-12);
            if pts.len() > 1 {
                assert!((pts[1].chart_y - spec.lambda2.re).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn equator_points_are_normalized_directions() {
        for pt in infinity_points(&f9(1, 1, 1)).unwrap() {
            let [ex, ey, ez] = pt.equator_point;
            let norm = (ex * ex + ey * ey + ez * ez).sqrt();
            assert!((norm - 1.0).abs() <= 1e-12);
            assert_eq!(ez, 0.0);
            // Direction (1, y*) up to scale.
            assert!((ey / ex - pt.chart_y).abs() <= 1e-12);
        }
    }

    #[test]
    fn roots_satisfy_chart_polynomial() {
        let fam = f9(3, -1, -9); // Δ = 2ab−c = 3 > 0
        let (c2, c1, c0) = infinity_system(&fam).unwrap().ydot_poly_f64();
        for pt in infinity_points(&fam).unwrap() {
            let y = pt.chart_y;
            let res = c2 * y * y + c1 * y + c0;
            assert!(res.abs() <= 1e-10 * y.abs().max(1.0));
        }
    }
}
