//! JSON report assembly.
//!
//! The report is serialized through `serde_json::Value`, whose map is a
//! `BTreeMap`: keys come out sorted and floats in shortest round-trip form,
//! so identical inputs produce byte-identical documents. Non-finite floats
//! become `null`.

use num_complex::Complex64;
use serde::Serialize;

use pz_core::bifurcation::{classify_region, corollary_set, on_bifurcation_set, RegionLabel};
use pz_core::darboux::{
    build_darboux_set, check_cofactor, check_first_integral, check_integrating_factor,
    integrate_riccati, riccati_system, sample_points, DarbouxError, DarbouxSet,
};
use pz_core::equilibria::{finite_equilibria, EquilibriaError, EquilibriumReport};
use pz_core::galois::{
    compute_rho, galois_for_family, lienard_reduce, lienard_residual, GaloisResult,
};
use pz_core::infinity::{infinity_points, InfinityPoint};
use pz_core::model::{reduce_to_linear, LinearFamily, ModelError, Params};
use pz_core::scalar::Scalar;

pub const SCHEMA_VERSION: u32 = 1;

/// Verification tolerances, pinned once.
pub mod tolerances {
    /// Liénard-basis substitution residual.
    pub const LIENARD_SUBSTITUTION: f64 = 1e-8;
    /// Cofactor identity residual (curves and exponential factors).
    pub const COFACTOR: f64 = 1e-10;
    /// Integrating-factor divergence residual (term-scale normalized).
    pub const INTEGRATING_FACTOR: f64 = 1e-9;
    /// First-integral drift along an orbit.
    pub const FIRST_INTEGRAL_DRIFT: f64 = 1e-6;
}

#[derive(Debug, Serialize)]
pub struct ScalarJson {
    pub value: f64,
    /// Exact rational rendering when the scalar is exact.
    pub exact: Option<String>,
}

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> ScalarJson {
        ScalarJson {
            value: s.to_f64(),
            exact: s.is_exact().then(|| s.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> ComplexJson {
        ComplexJson { re: z.re, im: z.im }
    }
}

#[derive(Debug, Serialize)]
pub struct InputJson {
    pub a: ScalarJson,
    pub b: ScalarJson,
    pub c: ScalarJson,
    pub m: String,
    pub k: String,
    /// True when every coefficient went through the exact route.
    pub exact: bool,
}

#[derive(Debug, Serialize)]
pub struct RegionJson {
    pub tag: String,
    pub predicted_kind: Option<String>,
}

impl From<&RegionLabel> for RegionJson {
    fn from(label: &RegionLabel) -> RegionJson {
        RegionJson {
            tag: label.tag.to_string(),
            predicted_kind: label.predicted_kind.map(|k| k.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SpectrumJson {
    pub lambda1: ComplexJson,
    pub lambda2: ComplexJson,
    pub trace: ScalarJson,
    pub det: ScalarJson,
    pub delta: ScalarJson,
    pub repeated: bool,
}

#[derive(Debug, Serialize)]
pub struct EquilibriumJson {
    pub x: ScalarJson,
    pub y: ScalarJson,
    pub spectrum: SpectrumJson,
    pub kind: String,
    pub stability: String,
}

impl From<&EquilibriumReport> for EquilibriumJson {
    fn from(rep: &EquilibriumReport) -> EquilibriumJson {
        EquilibriumJson {
            x: (&rep.location.0).into(),
            y: (&rep.location.1).into(),
            spectrum: SpectrumJson {
                lambda1: rep.spectrum.lambda1.into(),
                lambda2: rep.spectrum.lambda2.into(),
                trace: (&rep.spectrum.trace).into(),
                det: (&rep.spectrum.det).into(),
                delta: (&rep.spectrum.delta).into(),
                repeated: rep.spectrum.is_repeated(),
            },
            kind: rep.kind.to_string(),
            stability: rep.stability.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InfinityPointJson {
    pub chart_y: f64,
    pub equator_point: [f64; 3],
    pub jacobian_diag: [f64; 2],
    pub kind: String,
    pub antipode_kind: String,
}

impl From<&InfinityPoint> for InfinityPointJson {
    fn from(pt: &InfinityPoint) -> InfinityPointJson {
        InfinityPointJson {
            chart_y: pt.chart_y,
            equator_point: pt.equator_point,
            jacobian_diag: [pt.jacobian_diag.0, pt.jacobian_diag.1],
            kind: pt.kind.to_string(),
            antipode_kind: pt.antipode_kind.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum InfinityJson {
    Points { points: Vec<InfinityPointJson> },
    Unsupported { unsupported: String },
}

#[derive(Debug, Serialize)]
pub struct GaloisJson {
    pub rho: ScalarJson,
    pub group: String,
    pub generator_matrices: String,
    pub reduced_basis: [String; 2],
    pub lienard_basis: [String; 2],
}

impl From<&GaloisResult> for GaloisJson {
    fn from(g: &GaloisResult) -> GaloisJson {
        GaloisJson {
            rho: (&g.rho.rho).into(),
            group: g.group.to_string(),
            generator_matrices: g.generator_matrix_form.to_string(),
            reduced_basis: [g.reduced_basis.0.to_string(), g.reduced_basis.1.to_string()],
            lienard_basis: [g.lienard_basis.0.to_string(), g.lienard_basis.1.to_string()],
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DarbouxJson {
    pub rho: ComplexJson,
    pub integration_constant: ComplexJson,
    pub invariant_curves: [String; 2],
    pub curve_cofactors: [String; 2],
    pub exponential_factors: [String; 2],
    pub exponential_cofactors: [String; 2],
    pub integrating_factors: [String; 2],
    pub first_integrals: [String; 2],
}

impl From<&DarbouxSet> for DarbouxJson {
    fn from(set: &DarbouxSet) -> DarbouxJson {
        let strings =
            |exprs: &[pz_core::expr::Expr; 2]| [exprs[0].to_string(), exprs[1].to_string()];
        DarbouxJson {
            rho: set.rho.into(),
            integration_constant: set.integration_constant.into(),
            invariant_curves: strings(&set.invariant_curves),
            curve_cofactors: strings(&set.curve_cofactors),
            exponential_factors: strings(&set.exponential_factors),
            exponential_cofactors: strings(&set.exponential_cofactors),
            integrating_factors: strings(&set.integrating_factors),
            first_integrals: strings(&set.first_integrals),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ResidualsJson {
    /// Max Liénard substitution residual over both basis members.
    pub lienard_substitution: f64,
    pub cofactor_max: Option<f64>,
    pub integrating_factor_max: Option<f64>,
    pub first_integral_drift: Option<f64>,
    pub first_integral_directional: Option<f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct FamilyJson {
    pub tag: String,
    pub p: ScalarJson,
    pub q: ScalarJson,
    pub r: ScalarJson,
    pub exponent_constraint: String,
    pub m: String,
    pub k: String,
    pub equilibria: Vec<EquilibriumJson>,
    pub line_of_equilibria: bool,
    pub infinity: InfinityJson,
    pub corollary_bifurcation: bool,
    pub lienard: LienardJson,
    pub galois: GaloisJson,
    pub darboux: Option<DarbouxJson>,
    pub darboux_skipped: Option<String>,
    pub residuals: ResidualsJson,
}

#[derive(Debug, Serialize)]
pub struct LienardJson {
    pub damping: ScalarJson,
    pub stiffness: ScalarJson,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: InputJson,
    pub region: RegionJson,
    pub on_bifurcation_set: bool,
    pub table_rho: ScalarJson,
    pub table_zero_pattern: [bool; 3],
    pub families: Vec<FamilyJson>,
}

/// Orbit horizon for the drift check: stays clear of both the approach to
/// the attracting constant solution and (for `ρ < 0`) the tangent blow-up.
fn drift_horizon(rho: Complex64) -> f64 {
    let s = rho.sqrt().norm().max(1.0);
    1.0_f64.min(1.0 / s)
}

/// Darboux residuals for one ρ: cofactor max, integrating-factor max, drift.
pub fn darboux_residuals(
    set: &DarbouxSet,
    notes: &mut Vec<String>,
) -> (f64, f64, Option<f64>, Option<f64>) {
    let field = riccati_system(set.rho);
    let samples = sample_points(42, 100);
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
    let mut ifmax: f64 = 0.0;
    for r in &set.integrating_factors {
        ifmax = ifmax.max(check_integrating_factor(r, &field, &samples));
    }
    let traj = integrate_riccati(
        &field,
        0.0,
        Complex64::new(0.0, 0.0),
        drift_horizon(set.rho),
        1e-3,
    );
    let mut drift = None;
    let mut directional = None;
    for integral in &set.first_integrals {
        match check_first_integral(integral, &field, std::slice::from_ref(&traj)) {
            Ok(check) => {
                drift = Some(drift.unwrap_or(0.0_f64).max(check.max_drift));
                directional = Some(directional.unwrap_or(0.0_f64).max(check.max_directional));
            }
            Err(DarbouxError::PoleEncountered(_)) => {
                notes.push("first-integral orbit skipped: too close to a pole".to_string());
            }
            Err(DarbouxError::RhoZero) => unreachable!("set exists only for rho != 0"),
        }
    }
    (cof, ifmax, drift, directional)
}

fn family_json(fam: &LinearFamily, params: &Params) -> FamilyJson {
    let (equilibria, line) = match finite_equilibria(fam) {
        Ok(reports) => (reports.iter().map(EquilibriumJson::from).collect(), false),
        Err(EquilibriaError::LineOfEquilibria) => (Vec::new(), true),
    };
    let infinity = match infinity_points(fam) {
        Ok(points) => InfinityJson::Points {
            points: points.iter().map(InfinityPointJson::from).collect(),
        },
        Err(e) => InfinityJson::Unsupported {
            unsupported: e.to_string(),
        },
    };
    let form = lienard_reduce(fam);
    let galois = galois_for_family(fam);
    let mut notes = Vec::new();

    let t_samples: Vec<f64> = (0..100).map(|i| -1.0 + 2.0 * i as f64 / 99.0).collect();
    let lienard_res = lienard_residual(&form, &galois.lienard_basis.0, &t_samples)
        .max(lienard_residual(&form, &galois.lienard_basis.1, &t_samples));

    let family_rho = Complex64::new(galois.rho.rho.to_f64(), 0.0);
    let (darboux, skipped, residuals) = if galois.rho.rho.is_zero() {
        (
            None,
            Some("rho = 0: additive case has no Darboux set".to_string()),
            ResidualsJson {
                lienard_substitution: lienard_res,
                cofactor_max: None,
                integrating_factor_max: None,
                first_integral_drift: None,
                first_integral_directional: None,
                notes,
            },
        )
    } else {
        let set =
            build_darboux_set(family_rho, Complex64::new(1.0, 0.0)).expect("rho is nonzero here");
        let (cof, ifmax, drift, directional) = darboux_residuals(&set, &mut notes);
        (
            Some(DarbouxJson::from(&set)),
            None,
            ResidualsJson {
                lienard_substitution: lienard_res,
                cofactor_max: Some(cof),
                integrating_factor_max: Some(ifmax),
                first_integral_drift: drift,
                first_integral_directional: directional,
                notes,
            },
        )
    };

    let (m, k) = fam.resolved_exponents();
    FamilyJson {
        tag: fam.tag.to_string(),
        p: (&fam.p).into(),
        q: (&fam.q).into(),
        r: (&fam.r).into(),
        exponent_constraint: fam.constraint.description.clone(),
        m: m.to_string(),
        k: k.to_string(),
        equilibria,
        line_of_equilibria: line,
        infinity,
        corollary_bifurcation: corollary_set(fam.tag, &params.a, &params.b, &params.c),
        lienard: LienardJson {
            damping: (&form.damping).into(),
            stiffness: (&form.stiffness).into(),
        },
        galois: (&galois).into(),
        darboux,
        darboux_skipped: skipped,
        residuals,
    }
}

/// Builds the full analysis report for one parameter point.
pub fn analysis_report(params: &Params) -> Result<AnalysisReport, ModelError> {
    let families = reduce_to_linear(params)?;
    let table_rho = compute_rho(params)?;
    let region = classify_region(&params.a, &params.b, &params.c);
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input: InputJson {
            a: (&params.a).into(),
            b: (&params.b).into(),
            c: (&params.c).into(),
            m: params.m.to_string(),
            k: params.k.to_string(),
            exact: params.a.is_exact() && params.b.is_exact() && params.c.is_exact(),
        },
        region: (&region).into(),
        on_bifurcation_set: on_bifurcation_set(&params.a, &params.b, &params.c),
        table_rho: (&table_rho.rho).into(),
        table_zero_pattern: [
            table_rho.zero_pattern.0,
            table_rho.zero_pattern.1,
            table_rho.zero_pattern.2,
        ],
        families: families.iter().map(|f| family_json(f, params)).collect(),
    })
}

#[derive(Debug, Serialize)]
pub struct GaloisFamilyJson {
    pub tag: String,
    pub lienard: LienardJson,
    pub galois: GaloisJson,
    /// Real-valued basis `e^{αt}cos(βt), e^{αt}sin(βt)` when the reduced
    /// coefficient is negative and the real form was requested.
    pub real_form_basis: Option<[String; 2]>,
}

#[derive(Debug, Serialize)]
pub struct GaloisReport {
    pub schema_version: u32,
    pub table_rho: ScalarJson,
    pub table_zero_pattern: [bool; 3],
    pub families: Vec<GaloisFamilyJson>,
}

/// Per-family Galois data plus the table row.
pub fn galois_report(params: &Params, real_form: bool) -> Result<GaloisReport, ModelError> {
    let families = reduce_to_linear(params)?;
    let table = compute_rho(params)?;
    let entries = families
        .iter()
        .map(|fam| {
            let form = lienard_reduce(fam);
            let galois = galois_for_family(fam);
            let real_form_basis = (real_form
                && galois.rho.rho.sign() == pz_core::scalar::Sign::Negative)
                .then(|| {
                    let alpha = form.shift().to_f64();
                    let beta = (-galois.rho.rho.to_f64()).sqrt();
                    [
                        format!("exp({alpha}*t)*cos({beta}*t)"),
                        format!("exp({alpha}*t)*sin({beta}*t)"),
                    ]
                });
            GaloisFamilyJson {
                tag: fam.tag.to_string(),
                lienard: LienardJson {
                    damping: (&form.damping).into(),
                    stiffness: (&form.stiffness).into(),
                },
                galois: (&galois).into(),
                real_form_basis,
            }
        })
        .collect();
    Ok(GaloisReport {
        schema_version: SCHEMA_VERSION,
        table_rho: (&table.rho).into(),
        table_zero_pattern: [
            table.zero_pattern.0,
            table.zero_pattern.1,
            table.zero_pattern.2,
        ],
        families: entries,
    })
}

#[derive(Debug, Serialize)]
pub struct DarbouxResiduals {
    pub cofactor_max: f64,
    pub integrating_factor_max: f64,
    pub first_integral_drift: Option<f64>,
    pub first_integral_directional: Option<f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct DarbouxReport {
    pub schema_version: u32,
    pub set: DarbouxJson,
    pub residuals: DarbouxResiduals,
}

/// Serializes with sorted keys and `null` for non-finite floats.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string_pretty(&value).expect("value serializes")
}
