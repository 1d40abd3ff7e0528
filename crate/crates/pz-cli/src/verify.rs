//! The `verify` subcommand: every module's identity checks at one parameter
//! point, one PASS/FAIL/SKIP line per check.

use num_complex::Complex64;

use pz_core::bifurcation::{classify_region, RegionTag};
use pz_core::darboux::{
    build_darboux_set, check_cofactor, check_first_integral, check_integrating_factor,
    integrate_riccati, riccati_system, sample_points, DarbouxError,
};
use pz_core::equilibria::{classify_spectrum, finite_equilibria, Spectrum};
use pz_core::galois::{compute_rho, galois_for_family, lienard_reduce, lienard_residual};
use pz_core::model::{reduce_to_linear, ModelError, Params};
use pz_core::oracle::{classify_by_flow, FlowClass};

use crate::report::tolerances;

struct Checks {
    all_passed: bool,
}

impl Checks {
    fn gate(&mut self, name: &str, value: f64, tol: f64) {
        if value <= tol {
            println!("PASS {name}: {value:.3e} (tol {tol:.0e})");
        } else {
            println!("FAIL {name}: {value:.3e} (tol {tol:.0e})");
            self.all_passed = false;
        }
    }

    fn boolean(&mut self, name: &str, ok: bool, detail: &str) {
        if ok {
            println!("PASS {name}: {detail}");
        } else {
            println!("FAIL {name}: {detail}");
            self.all_passed = false;
        }
    }

    fn skip(&mut self, name: &str, reason: &str) {
        println!("SKIP {name}: {reason}");
    }
}

/// Runs all checks; `Ok(true)` when every gated check passed.
pub fn run(params: &Params, seed: u64) -> Result<bool, ModelError> {
    let families = reduce_to_linear(params)?;
    let table_rho = compute_rho(params)?;
    let mut checks = Checks { all_passed: true };

    // Region prediction against the spectrum of the first family.
    let region = classify_region(&params.a, &params.b, &params.c);
    if matches!(
        region.tag,
        RegionTag::B0 | RegionTag::B1 | RegionTag::B2 | RegionTag::B3 | RegionTag::B4
    ) {
        let fam = &families[0];
        let kind = classify_spectrum(&Spectrum::from_char_poly(&fam.p, &fam.q));
        checks.boolean(
            &format!("region/spectrum agreement ({})", region.tag),
            region.predicted_kind == Some(kind),
            &format!("predicted {:?}, spectrum {kind}", region.predicted_kind),
        );
    } else {
        checks.skip(
            "region/spectrum agreement",
            &format!("boundary point ({})", region.tag),
        );
    }

    let t_samples: Vec<f64> = (0..100).map(|i| -1.0 + 2.0 * i as f64 / 99.0).collect();
    for fam in &families {
        let tag = fam.tag;
        let galois = galois_for_family(fam);
        let form = lienard_reduce(fam);
        let res = lienard_residual(&form, &galois.lienard_basis.0, &t_samples)
            .max(lienard_residual(&form, &galois.lienard_basis.1, &t_samples));
        checks.gate(
            &format!("{tag} second-order substitution"),
            res,
            tolerances::LIENARD_SUBSTITUTION,
        );

        match finite_equilibria(fam) {
            Ok(reports) if !reports.is_empty() => {
                let rep = &reports[0];
                let expected = FlowClass::expected_for(rep.kind);
                if expected == FlowClass::Inconclusive {
                    checks.skip(
                        &format!("{tag} classification oracle"),
                        "degenerate spectrum",
                    );
                } else {
                    let flow =
                        classify_by_flow(fam, (rep.location.0.to_f64(), rep.location.1.to_f64()));
                    if flow == FlowClass::Inconclusive {
                        checks.skip(
                            &format!("{tag} classification oracle"),
                            "growth too weak to call in the window",
                        );
                    } else {
                        checks.boolean(
                            &format!("{tag} classification oracle"),
                            flow == expected,
                            &format!("kind {} ⇒ {expected:?}, flow {flow:?}", rep.kind),
                        );
                    }
                }
            }
            Ok(_) => checks.skip(
                &format!("{tag} classification oracle"),
                "no finite equilibrium",
            ),
            Err(e) => checks.skip(&format!("{tag} classification oracle"), &e.to_string()),
        }
    }

    // Darboux identities at the table ρ.
    if table_rho.rho.is_zero() {
        checks.skip("darboux identities", &DarbouxError::RhoZero.to_string());
    } else {
        let rho = Complex64::new(table_rho.rho.to_f64(), 0.0);
        let set = build_darboux_set(rho, Complex64::new(1.0, 0.0)).expect("rho != 0");
        let field = riccati_system(rho);
        let samples = sample_points(seed, 100);
        let mut cof: f64 = 0.0;
        for i in 0..2 {
            cof = cof.max(check_cofactor(
                &field,
                &set.invariant_curves[i],
                &set.curve_cofactors[i],
                &samples,
            ));
            cof = cof.max(check_cofactor(
                &field,
                &set.exponential_factors[i],
                &set.exponential_cofactors[i],
                &samples,
            ));
        }
        checks.gate("darboux cofactor identities", cof, tolerances::COFACTOR);

        let mut ifmax: f64 = 0.0;
        for r in &set.integrating_factors {
            ifmax = ifmax.max(check_integrating_factor(r, &field, &samples));
        }
        checks.gate(
            "darboux integrating factors",
            ifmax,
            tolerances::INTEGRATING_FACTOR,
        );

        let horizon = 1.0_f64.min(1.0 / rho.sqrt().norm().max(1.0));
        let traj = integrate_riccati(&field, 0.0, Complex64::new(0.0, 0.0), horizon, 1e-3);
        for (i, integral) in set.first_integrals.iter().enumerate() {
            match check_first_integral(integral, &field, std::slice::from_ref(&traj)) {
                Ok(check) => checks.gate(
                    &format!("darboux first integral I{}", i + 1),
                    check.max_drift,
                    tolerances::FIRST_INTEGRAL_DRIFT,
                ),
                Err(e) => checks.skip(
                    &format!("darboux first integral I{}", i + 1),
                    &e.to_string(),
                ),
            }
        }
    }

    println!(
        "verify: {}",
        if checks.all_passed {
            "all checks passed"
        } else {
            "FAILURES detected"
        }
    );
    Ok(checks.all_passed)
}
