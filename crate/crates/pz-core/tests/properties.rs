//! Property tests for the algebraic invariants: Vieta identities, scaling
//! invariance of the classification, the saddle certificate of region B0,
//! the ρ table consistency, and reduction consistency on random parameters.

use num_complex::Complex64;
use proptest::prelude::*;

use pz_core::bifurcation::{classify_region, RegionTag};
use pz_core::equilibria::{classify_spectrum, EquilibriumKind, Spectrum};
use pz_core::galois::compute_rho;
use pz_core::infinity::infinity_points;
use pz_core::model::{eval_linear, reduce_to_linear, PZField, Params};
use pz_core::scalar::{Scalar, Sign};

fn rational() -> impl Strategy<Value = Scalar> {
    (-1000i64..=1000, 1i64..=100).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

fn params(a: Scalar, b: Scalar, c: Scalar) -> Params {
    Params::new(
        a,
        b,
        c,
        num_rational::BigRational::from_integer(1.into()),
        num_rational::BigRational::from_integer(0.into()),
    )
    .unwrap()
}

fn f9_spectrum(a: &Scalar, b: &Scalar, c: &Scalar) -> Spectrum {
    // trace = 2(a+b), det = a²+b²+c, via the family's characteristic data.
    let p = a.add(b).mul(&Scalar::from_int(2));
    let q = a.squared().add(&b.squared()).add(c).neg();
    Spectrum::from_char_poly(&p, &q)
}

proptest! {
    #[test]
    fn vieta_identities(a in rational(), b in rational(), c in rational()) {
        // Scale to [-10, 10]³: numerators up to 1000 / denominators ≥ 1 can
        // exceed it, so shrink by 100.
        let shrink = Scalar::from_ratio(1, 100);
        let (a, b, c) = (a.mul(&shrink), b.mul(&shrink), c.mul(&shrink));
        let s = f9_spectrum(&a, &b, &c);
        let sum = s.lambda1 + s.lambda2;
        let prod = s.lambda1 * s.lambda2;
        let trace = s.trace.to_f64();
        let det = s.det.to_f64();
        prop_assert!((sum.re - trace).abs() <= 1e-12 * trace.abs().max(1.0));
        prop_assert!(sum.im.abs() <= 1e-12);
        prop_assert!((prod.re - det).abs() <= 1e-12 * det.abs().max(1.0));
        prop_assert!(prod.im.abs() <= 1e-12 * det.abs().max(1.0));
        for lam in [s.lambda1, s.lambda2] {
            let res = lam * lam - Complex64::new(trace, 0.0) * lam + Complex64::new(det, 0.0);
            let scale = lam.norm_sqr().max(1.0);
            prop_assert!(res.norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn kind_is_scaling_invariant(
        a in rational(),
        b in rational(),
        c in rational(),
        sn in 1i64..=40,
        sd in 1i64..=40,
    ) {
        let s = Scalar::from_ratio(sn, sd);
        let kind = classify_spectrum(&f9_spectrum(&a, &b, &c));
        let scaled = f9_spectrum(&a.mul(&s), &b.mul(&s), &c.mul(&s.squared()));
        prop_assert_eq!(classify_spectrum(&scaled), kind);
    }

    #[test]
    fn b0_is_certified_by_negative_determinant(
        a in rational(),
        b in rational(),
        c in rational(),
    ) {
        let det = a.squared().add(&b.squared()).add(&c);
        let label = classify_region(&a, &b, &c);
        let in_b0 = label.tag == RegionTag::B0;
        prop_assert_eq!(in_b0, det.sign() == Sign::Negative);
        if in_b0 {
            let s = f9_spectrum(&a, &b, &c);
            // λ₁λ₂ = det < 0: real eigenvalues of opposite sign.
            prop_assert!((s.lambda1 * s.lambda2).re < 0.0);
            prop_assert_eq!(classify_spectrum(&s), EquilibriumKind::Saddle);
        }
    }

    #[test]
    fn region_prediction_matches_spectrum(
        a in rational(),
        b in rational(),
        c in rational(),
    ) {
        let label = classify_region(&a, &b, &c);
        if matches!(
            label.tag,
            RegionTag::B0 | RegionTag::B1 | RegionTag::B2 | RegionTag::B3 | RegionTag::B4
        ) {
            let kind = classify_spectrum(&f9_spectrum(&a, &b, &c));
            prop_assert_eq!(label.predicted_kind, Some(kind));
        }
    }

    #[test]
    fn rho_table_is_a_specialization_of_the_full_row(
        a in rational(),
        b in rational(),
        c in rational(),
    ) {
        let p = params(a.clone(), b.clone(), c.clone());
        prop_assume!(p.zero_pattern() != (false, false, false));
        let rho = compute_rho(&p).unwrap().rho;
        // ρ = (a+b)² − (a²+b²+c) = 2ab − c on every pattern.
        let expected = a.add(&b).squared().sub(&a.squared().add(&b.squared()).add(&c));
        prop_assert_eq!(rho, expected);
    }

    #[test]
    fn reduction_is_consistent_with_the_raw_field(
        a in rational(),
        b in rational(),
        c in rational(),
        x in 0.05f64..3.0,
        y in -3.0f64..3.0,
    ) {
        let p = params(a, b, c);
        prop_assume!(p.zero_pattern() != (false, false, false));
        for fam in reduce_to_linear(&p).unwrap() {
            let field = PZField::new(fam.constrained_params());
            let (_, pz) = field.eval(x, y).unwrap();
            let (_, lin) = eval_linear(&fam, x, y);
            let scale = pz.abs().max(1.0);
            prop_assert!((pz - lin).abs() <= 1e-12 * scale, "{:?}: {} vs {}", fam.tag, pz, lin);
        }
    }

    #[test]
    fn antipodal_stability_flips(
        a in rational(),
        b in rational(),
        c in rational(),
    ) {
        use pz_core::infinity::InfinityKind;
        let p = params(a, b, c);
        prop_assume!(p.zero_pattern() == (true, true, true));
        let fam = reduce_to_linear(&p).unwrap().remove(0);
        for pt in infinity_points(&fam).unwrap() {
            let expected = match pt.kind {
                InfinityKind::Repulsor => InfinityKind::Attractor,
                InfinityKind::Attractor => InfinityKind::Repulsor,
                InfinityKind::Saddle => InfinityKind::Saddle,
                InfinityKind::Degenerate => InfinityKind::Degenerate,
            };
            prop_assert_eq!(pt.antipode_kind, expected);
            // The equator direction is normalized.
            let [ex, ey, ez] = pt.equator_point;
            prop_assert!((ex * ex + ey * ey + ez * ez - 1.0).abs() <= 1e-12);
            prop_assert_eq!(ez, 0.0);
        }
    }
}
