//! Fuzzes the whole analysis pipeline behind the literal parser: three
//! whitespace-separated tokens become `(a, b, c)` (optionally `m`, `k`), and
//! every downstream stage must return a value or an error, never panic.

#![no_main]
use libfuzzer_sys::fuzz_target;

use num_rational::BigRational;
use pz_core::bifurcation::{classify_region, corollary_set, on_bifurcation_set};
use pz_core::equilibria::finite_equilibria;
use pz_core::galois::{compute_rho, galois_for_family, lienard_reduce};
use pz_core::infinity::{infinity_points, infinity_system};
use pz_core::model::{eval_linear, reduce_to_linear, PZField, Params};
use pz_core::scalar::{parse_exact_rational, Scalar};

fuzz_target!(|data: &[u8]| {
    if data.len() > 192 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut tokens = text.split_whitespace();
    let (Some(a), Some(b), Some(c)) = (tokens.next(), tokens.next(), tokens.next()) else {
        return;
    };
    let (Ok(a), Ok(b), Ok(c)) = (
        a.parse::<Scalar>(),
        b.parse::<Scalar>(),
        c.parse::<Scalar>(),
    ) else {
        return;
    };
    let m = tokens
        .next()
        .and_then(|t| parse_exact_rational(t).ok())
        .unwrap_or_else(|| BigRational::from_integer(1.into()));
    let k = tokens
        .next()
        .and_then(|t| parse_exact_rational(t).ok())
        .unwrap_or_else(|| BigRational::from_integer(0.into()));
    let Ok(params) = Params::new(a, b, c, m, k) else {
        return;
    };
    let Ok(families) = reduce_to_linear(&params) else {
        return;
    };
    let _ = compute_rho(&params);
    let _ = classify_region(&params.a, &params.b, &params.c);
    let _ = on_bifurcation_set(&params.a, &params.b, &params.c);
    for fam in &families {
        let _ = finite_equilibria(fam);
        let _ = infinity_system(fam);
        let _ = infinity_points(fam);
        let _ = corollary_set(fam.tag, &params.a, &params.b, &params.c);
        let _ = lienard_reduce(fam);
        let _ = galois_for_family(fam);
        let _ = eval_linear(fam, 0.5, -0.5);
        let field = PZField::new(fam.constrained_params());
        let _ = field.eval(0.5, -0.5);
        let _ = field.eval(-1.5, 2.0);
    }
});
