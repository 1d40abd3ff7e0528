//! The parametric planar vector field and its reduction to linear families.
//!
//! The raw field is `ẋ = y`, `ẏ = (αx^{m+k-1} + βx^{m-k-1})y − γ(x)·x^{2m-2k-1}`
//! with `α = a(2m+k)`, `β = b(2m−k)` and `γ(x) = a²m·x^{4k} + c·x^{2k} + b²m`.
//! For each zero-pattern of `(a, b, c)` there is a choice of the exponents
//! `(m, k)` that collapses the field to a linear (or affine) system
//! `ẋ = y`, `ẏ = p·y + q·x + r`; `reduce_to_linear` enumerates every such
//! family together with the exponent choice that produces it.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{is_integer, rational_to_f64, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    /// `a = b = c = 0` makes `ẏ` the null polynomial; excluded by hypothesis.
    #[error("all of a, b, c are zero; the system degenerates to ẏ = 0")]
    AllZeroParams,
    #[error("parameter `{0}` is not finite")]
    NonFinite(&'static str),
    #[error("x = {x} is outside the field's domain: {reason}")]
    Domain { x: f64, reason: String },
}

/// Raw parameter tuple `(a, b, c, m, k)`.
///
/// `a`, `b`, `c` keep their exact-or-float representation; the exponents
/// `m`, `k` are exact rationals so that constraints like `m − k − 1 = 0`
/// are decidable.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub m: BigRational,
    pub k: BigRational,
}

impl Params {
    pub fn new(
        a: Scalar,
        b: Scalar,
        c: Scalar,
        m: BigRational,
        k: BigRational,
    ) -> Result<Params, ModelError> {
        if !a.is_finite() {
            return Err(ModelError::NonFinite("a"));
        }
        if !b.is_finite() {
            return Err(ModelError::NonFinite("b"));
        }
        if !c.is_finite() {
            return Err(ModelError::NonFinite("c"));
        }
        Ok(Params { a, b, c, m, k })
    }

    /// Convenience constructor for integer-valued parameters.
    pub fn from_ints(a: i64, b: i64, c: i64, m: i64, k: i64) -> Params {
        Params {
            a: Scalar::from_int(a),
            b: Scalar::from_int(b),
            c: Scalar::from_int(c),
            m: BigRational::from_integer(m.into()),
            k: BigRational::from_integer(k.into()),
        }
    }

    /// Zero-pattern `(a ≠ 0, b ≠ 0, c ≠ 0)`, decided by exact comparison.
    pub fn zero_pattern(&self) -> (bool, bool, bool) {
        (!self.a.is_zero(), !self.b.is_zero(), !self.c.is_zero())
    }

    /// Same coefficients with different exponents.
    pub fn with_exponents(&self, m: BigRational, k: BigRational) -> Params {
        Params {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            m,
            k,
        }
    }
}

/// The raw vector field with its derived coefficients.
#[derive(Debug, Clone)]
pub struct PZField {
    pub params: Params,
    /// `a(2m + k)`
    pub alpha: Scalar,
    /// `b(2m − k)`
    pub beta: Scalar,
    /// Coefficients of `γ(x) = a²m·x^{4k} + c·x^{2k} + b²m`, highest power first.
    pub gamma: [Scalar; 3],
}

impl PZField {
    pub fn new(params: Params) -> PZField {
        let two_m = &params.m * BigRational::from_integer(2.into());
        let alpha = params.a.mul_ratio(&(&two_m + &params.k));
        let beta = params.b.mul_ratio(&(&two_m - &params.k));
        let a2m = params.a.squared().mul_ratio(&params.m);
        let b2m = params.b.squared().mul_ratio(&params.m);
        let gamma = [a2m, params.c.clone(), b2m];
        PZField {
            params,
            alpha,
            beta,
            gamma,
        }
    }

    /// Evaluates `(ẋ, ẏ)` at `(x, y)`.
    ///
    /// Terms with a zero coefficient are skipped, so their exponents place no
    /// constraint on the domain; every active term with a non-integer exponent
    /// requires `x > 0`, and a negative exponent requires `x ≠ 0`.
    pub fn eval(&self, x: f64, y: f64) -> Result<(f64, f64), ModelError> {
        let m = &self.params.m;
        let k = &self.params.k;
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        // Exponents of the five monomials of ẏ.
        let e_alpha = m + k - &one;
        let e_beta = m - k - &one;
        let base = &two * m - &two * k - &one;
        let e_a2m = &base + &(&two * &two) * k; // 2m + 2k − 1
        let e_c = &base + &two * k; // 2m − 1
        let e_b2m = base; // 2m − 2k − 1

        let mut ydot = 0.0;
        for (coeff, exp, on_y) in [
            (&self.alpha, &e_alpha, true),
            (&self.beta, &e_beta, true),
            (&self.gamma[0].neg(), &e_a2m, false),
            (&self.params.c.neg(), &e_c, false),
            (&self.gamma[2].neg(), &e_b2m, false),
        ] {
            if coeff.is_zero() {
                continue;
            }
            let term = coeff.to_f64() * power(x, exp)?;
            ydot += if on_y { term * y } else { term };
        }
        Ok((y, ydot))
    }
}

fn power(x: f64, exp: &BigRational) -> Result<f64, ModelError> {
    if exp.is_zero() {
        return Ok(1.0);
    }
    if is_integer(exp) {
        if x == 0.0 && exp < &BigRational::zero() {
            return Err(ModelError::Domain {
                x,
                reason: format!("negative exponent {exp} at x = 0"),
            });
        }
        let e = rational_to_f64(exp);
        return Ok(x.powf(e));
    }
    if x <= 0.0 {
        return Err(ModelError::Domain {
            x,
            reason: format!("fractional exponent {exp} requires x > 0"),
        });
    }
    Ok(x.powf(rational_to_f64(exp)))
}

/// Tags of the nine linear families reachable from the zero-patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 9] = [
        FamilyTag::F1,
        FamilyTag::F2,
        FamilyTag::F3,
        FamilyTag::F4,
        FamilyTag::F5,
        FamilyTag::F6,
        FamilyTag::F7,
        FamilyTag::F8,
        FamilyTag::F9,
    ];
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", *self as u8 + 1)
    }
}

/// The exponent choice that collapses the raw field to a linear family.
///
/// `None` means the exponent is unconstrained by the reduction; the source
/// parameters' value is used when instantiating the field.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentChoice {
    pub m: Option<BigRational>,
    pub k: Option<BigRational>,
    pub description: String,
}

impl ExponentChoice {
    fn fixed(m: BigRational, k: BigRational, description: &str) -> ExponentChoice {
        ExponentChoice {
            m: Some(m),
            k: Some(k),
            description: description.to_string(),
        }
    }
}

/// A concrete planar system `ẋ = y`, `ẏ = p·y + q·x + r`.
#[derive(Debug, Clone)]
pub struct LinearFamily {
    pub tag: FamilyTag,
    pub p: Scalar,
    pub q: Scalar,
    pub r: Scalar,
    pub source: Params,
    pub constraint: ExponentChoice,
}

impl LinearFamily {
    pub fn is_affine(&self) -> bool {
        !self.r.is_zero()
    }

    /// The exponents `(m, k)` under which the raw field equals this family.
    pub fn resolved_exponents(&self) -> (BigRational, BigRational) {
        let m = self
            .constraint
            .m
            .clone()
            .unwrap_or_else(|| self.source.m.clone());
        let k = self
            .constraint
            .k
            .clone()
            .unwrap_or_else(|| self.source.k.clone());
        (m, k)
    }

    /// Source parameters specialized to the recorded exponent choice.
    pub fn constrained_params(&self) -> Params {
        let (m, k) = self.resolved_exponents();
        self.source.with_exponents(m, k)
    }
}

/// Evaluates `(ẋ, ẏ) = (y, p·y + q·x + r)` in floating point.
pub fn eval_linear(fam: &LinearFamily, x: f64, y: f64) -> (f64, f64) {
    (y, fam.p.to_f64() * y + fam.q.to_f64() * x + fam.r.to_f64())
}

/// Exact evaluation, for boundary checks such as the affine equilibria.
pub fn eval_linear_exact(fam: &LinearFamily, x: &Scalar, y: &Scalar) -> (Scalar, Scalar) {
    let ydot = fam.p.mul(y).add(&fam.q.mul(x)).add(&fam.r);
    (y.clone(), ydot)
}

/// Enumerates the linear families reachable from the zero-pattern of
/// `(a, b, c)`, each with the exponent constraint that produces it.
///
/// Patterns with a single nonzero coefficient yield one family, the two
/// mixed patterns `a=0` / `b=0` (with `c ≠ 0`) each yield two (the exponent
/// equation admits two resolutions), and patterns with `a, b ≠ 0` force
/// `m = 1, k = 0` and yield exactly one.
pub fn reduce_to_linear(params: &Params) -> Result<Vec<LinearFamily>, ModelError> {
    let one = || BigRational::one();
    let zero = || BigRational::zero();
    let half = || BigRational::new(1.into(), 2.into());
    let (a, b, c) = (&params.a, &params.b, &params.c);
    let fam = |tag, p, q, r, constraint| LinearFamily {
        tag,
        p,
        q,
        r,
        source: params.clone(),
        constraint,
    };

    let families = match params.zero_pattern() {
        (false, false, false) => return Err(ModelError::AllZeroParams),
        (false, false, true) => vec![fam(
            FamilyTag::F1,
            Scalar::zero(),
            c.neg(),
            Scalar::zero(),
            ExponentChoice {
                m: Some(one()),
                k: None,
                description: "2m-1=1 (m=1, k free)".to_string(),
            },
        )],
        (false, true, false) => {
            let k = &params.k;
            let m = k + one();
            vec![fam(
                FamilyTag::F2,
                b.mul_ratio(&(k + BigRational::from_integer(2.into()))),
                b.squared().mul_ratio(&(k + one())).neg(),
                Scalar::zero(),
                ExponentChoice {
                    m: Some(m),
                    k: Some(k.clone()),
                    description: "m-k-1=0 (m=k+1)".to_string(),
                },
            )]
        }
        (true, false, false) => {
            let k = &params.k;
            let m = one() - k;
            vec![fam(
                FamilyTag::F3,
                a.mul_ratio(&(BigRational::from_integer(2.into()) - k)),
                a.squared().mul_ratio(&(one() - k)).neg(),
                Scalar::zero(),
                ExponentChoice {
                    m: Some(m),
                    k: Some(k.clone()),
                    description: "m+k-1=0 (m=1-k)".to_string(),
                },
            )]
        }
        (false, true, true) => vec![
            fam(
                FamilyTag::F4,
                b.mul_ratio(&BigRational::from_integer(2.into())),
                b.squared().add(c).neg(),
                Scalar::zero(),
                ExponentChoice::fixed(one(), zero(), "m-k-1=0, 2m-1=1 (m=1, k=0)"),
            ),
            fam(
                FamilyTag::F5,
                b.mul_ratio(&BigRational::new(3.into(), 2.into())),
                b.squared().mul_ratio(&half()).neg(),
                c.neg(),
                ExponentChoice::fixed(half(), -half(), "m-k-1=0, 2m-1=0 (m=1/2, k=-1/2)"),
            ),
        ],
        (true, false, true) => vec![
            fam(
                FamilyTag::F6,
                a.mul_ratio(&BigRational::from_integer(2.into())),
                a.squared().add(c).neg(),
                Scalar::zero(),
                ExponentChoice::fixed(one(), zero(), "m+k-1=0, 2m-1=1 (m=1, k=0)"),
            ),
            fam(
                FamilyTag::F7,
                a.mul_ratio(&BigRational::new(3.into(), 2.into())),
                a.squared().mul_ratio(&half()).neg(),
                c.neg(),
                ExponentChoice::fixed(half(), half(), "m+k-1=0, 2m-1=0 (m=1/2, k=1/2)"),
            ),
        ],
        (true, true, false) => vec![fam(
            FamilyTag::F8,
            a.add(b).mul_ratio(&BigRational::from_integer(2.into())),
            a.squared().add(&b.squared()).neg(),
            Scalar::zero(),
            ExponentChoice::fixed(one(), zero(), "m+k-1=0, m-k-1=0 (m=1, k=0)"),
        )],
        (true, true, true) => vec![fam(
            FamilyTag::F9,
            a.add(b).mul_ratio(&BigRational::from_integer(2.into())),
            a.squared().add(&b.squared()).add(c).neg(),
            Scalar::zero(),
            ExponentChoice::fixed(one(), zero(), "m+k-1=0, m-k-1=0 (m=1, k=0)"),
        )],
    };
    Ok(families)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn params(a: &str, b: &str, c: &str) -> Params {
        Params::new(s(a), s(b), s(c), BigRational::one(), BigRational::zero()).unwrap()
    }

    #[test]
    fn all_zero_is_rejected() {
        assert_eq!(
            reduce_to_linear(&params("0", "0", "0")).unwrap_err(),
            ModelError::AllZeroParams
        );
    }

    #[test]
    fn only_c_gives_f1() {
        let fams = reduce_to_linear(&params("0", "0", "5")).unwrap();
        assert_eq!(fams.len(), 1);
        let f = &fams[0];
        assert_eq!(f.tag, FamilyTag::F1);
        assert!(f.p.is_zero());
        assert_eq!(f.q, Scalar::from_int(-5));
        assert!(f.r.is_zero());
        assert_eq!(eval_linear(f, 1.0, 1.0), (1.0, -5.0));
    }

    #[test]
    fn full_pattern_gives_f9() {
        let fams = reduce_to_linear(&params("1", "1", "1")).unwrap();
        assert_eq!(fams.len(), 1);
        let f = &fams[0];
        assert_eq!(f.tag, FamilyTag::F9);
        assert_eq!(f.p, Scalar::from_int(4));
        assert_eq!(f.q, Scalar::from_int(-3));
        assert!(f.r.is_zero());
        assert_eq!(eval_linear(f, 0.0, 0.0), (0.0, 0.0));
    }

    #[test]
    fn a_zero_pattern_gives_f4_and_f5() {
        let fams = reduce_to_linear(&params("0", "2", "3")).unwrap();
        assert_eq!(fams.len(), 2);
        assert_eq!(fams[0].tag, FamilyTag::F4);
        assert_eq!(fams[0].p, Scalar::from_int(4));
        assert_eq!(fams[0].q, Scalar::from_int(-7));
        assert!(fams[0].r.is_zero());
        assert_eq!(fams[1].tag, FamilyTag::F5);
        assert_eq!(fams[1].p, Scalar::from_int(3));
        assert_eq!(fams[1].q, Scalar::from_int(-2));
        assert_eq!(fams[1].r, Scalar::from_int(-3));
    }

    #[test]
    fn affine_equilibrium_is_exact() {
        // F5 has its critical point at (-2c/b², 0).
        let fams = reduce_to_linear(&params("0", "2", "3")).unwrap();
        let f5 = &fams[1];
        let x = s("3").mul(&s("-2")).div(&s("4")); // -2c/b² = -3/2
        assert_eq!(x, Scalar::from_ratio(-3, 2));
        let (xd, yd) = eval_linear_exact(f5, &x, &Scalar::zero());
        assert!(xd.is_zero() && yd.is_zero());
        assert_eq!(eval_linear(f5, -1.5, 0.0), (0.0, 0.0));
    }

    #[test]
    fn pz_eval_matches_trivial_cases() {
        // a=b=0: ẏ = -c·x^{2m-1}; with m=1 this is -cx regardless of k.
        let p = params("0", "0", "5");
        let field = PZField::new(
            p.with_exponents(BigRational::one(), BigRational::new(7.into(), 3.into())),
        );
        assert_eq!(field.eval(2.0, 3.0).unwrap(), (3.0, -10.0));

        // Full case at m=1, k=0: ẏ = 4y - 3x at (1,1) gives 1.
        let field = PZField::new(params("1", "1", "1"));
        let (xd, yd) = field.eval(1.0, 1.0).unwrap();
        assert_eq!((xd, yd), (1.0, 1.0));
    }

    #[test]
    fn pz_eval_fractional_exponent_oracle() {
        // a=1, b=0, c=0, k=1/2, m=1-k=1/2:
        // ẏ = (3/2)·x⁰·y − (1/2)·x^{2m+2k-1} = (3/2)y − x/2.
        let p = Params::new(
            s("1"),
            s("0"),
            s("0"),
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        )
        .unwrap();
        let field = PZField::new(p);
        let (xd, yd) = field.eval(4.0, 1.0).unwrap();
        assert_eq!(xd, 1.0);
        assert!((yd - (1.5 - 2.0)).abs() < 1e-14);
    }

    #[test]
    fn fractional_exponents_need_positive_x() {
        // m = 1/3, k = 1/4: the y-coefficient exponent m+k-1 = -5/12 is
        // fractional and its coefficient a(2m+k) is nonzero.
        let p = Params::new(
            s("1"),
            s("0"),
            s("0"),
            BigRational::new(1.into(), 3.into()),
            BigRational::new(1.into(), 4.into()),
        )
        .unwrap();
        let field = PZField::new(p);
        assert!(matches!(
            field.eval(-1.0, 1.0),
            Err(ModelError::Domain { .. })
        ));
        assert!(field.eval(1.5, 1.0).is_ok());
    }

    #[test]
    fn zero_pattern_exhaustiveness() {
        use std::collections::BTreeSet;
        let mut seen = BTreeSet::new();
        let values: [(&str, &str, &str); 7] = [
            ("0", "0", "3"),
            ("0", "2", "0"),
            ("2", "0", "0"),
            ("0", "2", "3"),
            ("2", "0", "3"),
            ("2", "3", "0"),
            ("2", "3", "5"),
        ];
        for (a, b, c) in values {
            for f in reduce_to_linear(&params(a, b, c)).unwrap() {
                seen.insert(f.tag);
            }
        }
        assert_eq!(seen.len(), 9, "every family is reachable: {seen:?}");
    }

    #[test]
    fn reduction_consistency_on_samples() {
        // The raw field under the recorded exponents equals the linear family.
        let cases: [(&str, &str, &str); 5] = [
            ("0", "0", "5"),
            ("0", "2", "3"),
            ("2", "0", "3"),
            ("2", "3", "0"),
            ("1", "1", "1"),
        ];
        for (a, b, c) in cases {
            for f in reduce_to_linear(&params(a, b, c)).unwrap() {
                let field = PZField::new(f.constrained_params());
                for i in 0..20 {
                    let x = 0.1 + 0.37 * i as f64;
                    let y = -2.0 + 0.21 * i as f64;
                    let (_, pz) = field.eval(x, y).unwrap();
                    let (_, lin) = eval_linear(&f, x, y);
                    let scale = pz.abs().max(1.0);
                    assert!(
                        (pz - lin).abs() <= 1e-12 * scale,
                        "{:?} at ({x},{y}): {pz} vs {lin}",
                        f.tag
                    );
                }
            }
        }
    }

    #[test]
    fn f2_f3_coefficients_depend_on_k() {
        // F2 with k=1/3: p = b(k+2), q = -b²(k+1), m = k+1.
        let p = Params::new(
            s("0"),
            s("3"),
            s("0"),
            BigRational::zero(),
            BigRational::new(1.into(), 3.into()),
        )
        .unwrap();
        let fams = reduce_to_linear(&p).unwrap();
        assert_eq!(fams[0].tag, FamilyTag::F2);
        assert_eq!(fams[0].p, Scalar::from_ratio(7, 1));
        assert_eq!(fams[0].q, Scalar::from_ratio(-12, 1));
        let (m, k) = fams[0].resolved_exponents();
        assert_eq!(m, BigRational::new(4.into(), 3.into()));
        assert_eq!(k, BigRational::new(1.into(), 3.into()));
    }
}
