//! Partition of `(a, b, c)`-space into the regions `B0`–`B4`, membership in
//! the bifurcation set `B`, and the per-family bifurcation sets of the
//! remaining families.
//!
//! All predicates compare exactly: rational inputs are decided in rational
//! arithmetic, float inputs by strict comparison (boundary sets are
//! measure-zero in floating point, which the CLI warns about).

use std::fmt;

use crate::equilibria::EquilibriumKind;
use crate::model::FamilyTag;
use crate::scalar::{Scalar, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionTag {
    B0,
    B1,
    B2,
    B3,
    B4,
    OnBifurcationSetB,
    OtherBoundary,
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionTag::B0 => "B0",
            RegionTag::B1 => "B1",
            RegionTag::B2 => "B2",
            RegionTag::B3 => "B3",
            RegionTag::B4 => "B4",
            RegionTag::OnBifurcationSetB => "B (bifurcation set)",
            RegionTag::OtherBoundary => "other boundary",
        };
        f.write_str(s)
    }
}

/// Region tag plus the equilibrium kind the region predicts.
///
/// The prediction for the focus regions follows the sign of `Re λ = a + b`
/// (the region predicates pin it), so `B1` predicts an unstable focus and
/// `B2` a stable focus. Boundary points on `B` predict the degenerate kind
/// forced there; `OtherBoundary` predicts nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionLabel {
    pub tag: RegionTag,
    pub predicted_kind: Option<EquilibriumKind>,
}

/// Evaluates the five region predicates in order, then membership in `B`.
///
/// - `B0`: `a² + b² < −c`
/// - `B1`: `2ab − c < 0` and `a + b > 0`
/// - `B2`: `2ab − c < 0` and `a + b < 0`
/// - `B3`: `2ab − c ≥ 0`, `a + b > 0`, `a² + b² > −c`
/// - `B4`: `2ab − c ≥ 0`, `a + b < 0`, `a² + b² > −c`
pub fn classify_region(a: &Scalar, b: &Scalar, c: &Scalar) -> RegionLabel {
    let sum = a.add(b);
    let sum_sq = a.squared().add(&b.squared());
    let delta = Scalar::from_int(2).mul(a).mul(b).sub(c);
    let neg_c = c.neg();

    let sum_sign = sum.sign();
    let delta_sign = delta.sign();
    // a² + b² vs −c, i.e. the sign of det = a² + b² + c.
    let det_cmp = sum_sq.compare(&neg_c);

    if det_cmp == std::cmp::Ordering::Less {
        return RegionLabel {
            tag: RegionTag::B0,
            predicted_kind: Some(EquilibriumKind::Saddle),
        };
    }
    if delta_sign == Sign::Negative && sum_sign == Sign::Positive {
        return RegionLabel {
            tag: RegionTag::B1,
            predicted_kind: Some(EquilibriumKind::UnstableFocus),
        };
    }
    if delta_sign == Sign::Negative && sum_sign == Sign::Negative {
        return RegionLabel {
            tag: RegionTag::B2,
            predicted_kind: Some(EquilibriumKind::StableFocus),
        };
    }
    if delta_sign != Sign::Negative
        && sum_sign == Sign::Positive
        && det_cmp == std::cmp::Ordering::Greater
    {
        return RegionLabel {
            tag: RegionTag::B3,
            predicted_kind: Some(EquilibriumKind::UnstableNode),
        };
    }
    if delta_sign != Sign::Negative
        && sum_sign == Sign::Negative
        && det_cmp == std::cmp::Ordering::Greater
    {
        return RegionLabel {
            tag: RegionTag::B4,
            predicted_kind: Some(EquilibriumKind::StableNode),
        };
    }
    if on_bifurcation_set(a, b, c) {
        // Clause a+b = 0 & det > 0 forces a pure-imaginary pair; clause
        // a² + b² = −c forces a zero eigenvalue.
        let predicted = if sum_sign == Sign::Zero {
            EquilibriumKind::Center
        } else {
            EquilibriumKind::DegenerateZeroEigen
        };
        return RegionLabel {
            tag: RegionTag::OnBifurcationSetB,
            predicted_kind: Some(predicted),
        };
    }
    RegionLabel {
        tag: RegionTag::OtherBoundary,
        predicted_kind: None,
    }
}

/// Membership in `B = {a+b < 0, a²+b² = −c} ∪ {a+b = 0, a²+b² > −c}`.
pub fn on_bifurcation_set(a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    let sum_sign = a.add(b).sign();
    let det_cmp = a.squared().add(&b.squared()).compare(&c.neg());
    (sum_sign == Sign::Negative && det_cmp == std::cmp::Ordering::Equal)
        || (sum_sign == Sign::Zero && det_cmp == std::cmp::Ordering::Greater)
}

/// Per-family bifurcation sets for `F1`–`F8`; `F9` falls back to the set `B`.
///
/// - `F1`: `c = 0`; `F2`: none; `F3`: `a = 0`
/// - `F4`/`F5`: `b = 0 & b² > −c` or `b² = −c & b > 0`
/// - `F6`/`F7`: the same with `a`
/// - `F8`: `a + b = 0`
pub fn corollary_set(tag: FamilyTag, a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    let square_set = |v: &Scalar| {
        let sq_cmp = v.squared().compare(&c.neg());
        (v.is_zero() && sq_cmp == std::cmp::Ordering::Greater)
            || (sq_cmp == std::cmp::Ordering::Equal && v.sign() == Sign::Positive)
    };
    match tag {
        FamilyTag::F1 => c.is_zero(),
        FamilyTag::F2 => false,
        FamilyTag::F3 => a.is_zero(),
        FamilyTag::F4 | FamilyTag::F5 => square_set(b),
        FamilyTag::F6 | FamilyTag::F7 => square_set(a),
        FamilyTag::F8 => a.add(b).is_zero(),
        FamilyTag::F9 => on_bifurcation_set(a, b, c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn region(a: &str, b: &str, c: &str) -> RegionLabel {
        classify_region(&s(a), &s(b), &s(c))
    }

    #[test]
    fn region_examples() {
        assert_eq!(region("1", "1", "-5").tag, RegionTag::B0);
        assert_eq!(
            region("1", "1", "-5").predicted_kind,
            Some(EquilibriumKind::Saddle)
        );
        assert_eq!(region("1", "1", "3").tag, RegionTag::B1);
        assert_eq!(
            region("1", "1", "3").predicted_kind,
            Some(EquilibriumKind::UnstableFocus)
        );
        assert_eq!(region("1", "1", "1").tag, RegionTag::B3);
        assert_eq!(region("-1", "-1", "3").tag, RegionTag::B2);
        assert_eq!(region("-1", "-1", "1").tag, RegionTag::B4);
    }

    #[test]
    fn bifurcation_set_membership() {
        assert!(on_bifurcation_set(&s("-1"), &s("-1"), &s("-2")));
        assert!(on_bifurcation_set(&s("1"), &s("-1"), &s("0")));
        assert!(!on_bifurcation_set(&s("1"), &s("1"), &s("1")));
    }

    #[test]
    fn boundary_points_get_the_b_tag() {
        let label = region("1", "-1", "0");
        assert_eq!(label.tag, RegionTag::OnBifurcationSetB);
        assert_eq!(label.predicted_kind, Some(EquilibriumKind::Center));

        let label = region("-1", "-1", "-2");
        assert_eq!(label.tag, RegionTag::OnBifurcationSetB);
        assert_eq!(
            label.predicted_kind,
            Some(EquilibriumKind::DegenerateZeroEigen)
        );
    }

    #[test]
    fn leftover_boundaries_are_unlabelled() {
        // a+b = 0 with a²+b² = −c: neither clause of B.
        let label = region("1", "-1", "-2");
        assert_eq!(label.tag, RegionTag::OtherBoundary);
        assert_eq!(label.predicted_kind, None);
        // a+b > 0 with a²+b² = −c (det = 0 but not in B).
        assert_eq!(region("1", "1", "-2").tag, RegionTag::OtherBoundary);
    }

    #[test]
    fn b0_catches_saddles_before_b() {
        // a+b = 0 but det < 0: B0 wins (saddle on both sides).
        assert_eq!(region("1", "-1", "-5").tag, RegionTag::B0);
    }

    #[test]
    fn corollary_predicates() {
        assert!(corollary_set(FamilyTag::F1, &s("1"), &s("1"), &s("0")));
        assert!(!corollary_set(FamilyTag::F1, &s("1"), &s("1"), &s("2")));
        assert!(!corollary_set(FamilyTag::F2, &s("0"), &s("7"), &s("0")));
        assert!(corollary_set(FamilyTag::F3, &s("0"), &s("1"), &s("1")));
        // F4/F5: b = 0 & b² > −c needs c > 0.
        assert!(corollary_set(FamilyTag::F4, &s("0"), &s("0"), &s("2")));
        assert!(!corollary_set(FamilyTag::F4, &s("0"), &s("0"), &s("-2")));
        // F4/F5: b² = −c & b > 0.
        assert!(corollary_set(FamilyTag::F5, &s("0"), &s("2"), &s("-4")));
        assert!(!corollary_set(FamilyTag::F5, &s("0"), &s("-2"), &s("-4")));
        assert!(corollary_set(FamilyTag::F6, &s("3"), &s("0"), &s("-9")));
        assert!(corollary_set(FamilyTag::F8, &s("2"), &s("-2"), &s("0")));
        assert!(!corollary_set(FamilyTag::F8, &s("2"), &s("-1"), &s("0")));
        // F9 falls back to B.
        assert!(corollary_set(FamilyTag::F9, &s("1"), &s("-1"), &s("0")));
    }

    #[test]
    fn float_inputs_use_strict_comparison() {
        // 0.5 + (-0.5) is exactly zero in binary floating point.
        assert!(on_bifurcation_set(
            &Scalar::Float(0.5),
            &Scalar::Float(-0.5),
            &Scalar::Float(0.0)
        ));
        // A value off the boundary by one ulp is off the boundary.
        assert!(!on_bifurcation_set(
            &Scalar::Float(0.5 + 1e-16),
            &Scalar::Float(-0.5),
            &Scalar::Float(0.0)
        ));
    }
}
