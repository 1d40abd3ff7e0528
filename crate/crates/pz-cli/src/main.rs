//! `pz` - analysis pipeline for the linear regime of the parametric planar
//! family: reduction, equilibria (finite and at infinity), bifurcation
//! regions, Galois group of the reduced equation, Darboux elements, phase
//! portraits, and a verification sweep.
//!
//! Exit codes: 0 success, 1 verification failure, 2 degenerate all-zero
//! parameters, 3 unparseable input, 4 unwritable output path.

mod portrait;
mod report;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use pz_core::darboux::{build_darboux_set, DarbouxError};
use pz_core::galois::compute_rho;
use pz_core::model::{reduce_to_linear, ModelError, Params};
use pz_core::numerics::write_csv;
use pz_core::scalar::{parse_exact_rational, Scalar};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_ALL_ZERO: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pz",
    version,
    about = "Qualitative and algebraic analysis of the linear parametric planar family"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full analysis report as JSON on stdout.
    Classify {
        /// Coefficient a (decimal or rational `p/q`).
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Coefficient b.
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Coefficient c.
        #[arg(allow_hyphen_values = true)]
        c: String,
        /// Exponent m (exact rational; defaults to 1).
        #[arg(allow_hyphen_values = true)]
        m: Option<String>,
        /// Exponent k (exact rational; defaults to 0).
        #[arg(allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Global phase portrait on the projection disk (SVG).
    Portrait {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
        /// Also write the seed trajectories as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// ρ-table row, Galois group, and solution bases.
    Galois {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(allow_hyphen_values = true)]
        k: Option<String>,
        /// Also print the real-form basis when the basis is oscillatory.
        #[arg(long)]
        real_form: bool,
    },
    /// Darboux elements of the associated first-order system.
    Darboux {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        /// Integration constant C (complex as `re` or `re,im`; nonzero).
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        constant: String,
        /// Override ρ (complex as `re` or `re,im`) instead of the table value.
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
    },
    /// Run every verification suite at one parameter point.
    Verify {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        /// Seed for the sample grids.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

/// Prints to stdout, exiting quietly when the reader hung up (`… | head`).
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() {
        std::process::exit(0);
    }
}

fn parse_scalar_arg(name: &str, text: &str) -> Result<Scalar, String> {
    let scalar = Scalar::from_str(text).map_err(|e| format!("{name}: {e}"))?;
    if !scalar.is_exact() {
        eprintln!(
            "warning: {name} = {text} is a floating-point literal; boundary sets \
             (a+b=0, 2ab-c=0, a\u{b2}+b\u{b2}+c=0) are measure-zero in floating point - \
             use `p/q` literals to hit them exactly"
        );
    }
    Ok(scalar)
}

fn parse_params(
    a: &str,
    b: &str,
    c: &str,
    m: Option<&str>,
    k: Option<&str>,
) -> Result<Params, String> {
    let a = parse_scalar_arg("a", a)?;
    let b = parse_scalar_arg("b", b)?;
    let c = parse_scalar_arg("c", c)?;
    let m = match m {
        Some(text) => parse_exact_rational(text).map_err(|e| format!("m: {e}"))?,
        None => BigRational::one(),
    };
    let k = match k {
        Some(text) => parse_exact_rational(text).map_err(|e| format!("k: {e}"))?,
        None => BigRational::zero(),
    };
    Params::new(a, b, c, m, k).map_err(|e| e.to_string())
}

fn parse_complex_arg(name: &str, text: &str) -> Result<Complex64, String> {
    let mut parts = text.splitn(2, ',');
    let re: f64 = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| format!("{name}: expected `re` or `re,im`, got `{text}`"))?;
    let im: f64 = match parts.next() {
        Some(part) => part
            .trim()
            .parse()
            .map_err(|_| format!("{name}: expected `re` or `re,im`, got `{text}`"))?,
        None => 0.0,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(format!("{name}: value is not finite"));
    }
    Ok(Complex64::new(re, im))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_PARSE);
        }
    };
    match cli.cmd {
        Cmd::Classify { a, b, c, m, k } => {
            let params = match parse_params(&a, &b, &c, m.as_deref(), k.as_deref()) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_PARSE, &e),
            };
            match report::analysis_report(&params) {
                Ok(rep) => {
                    emit(&report::to_sorted_json(&rep));
                    ExitCode::SUCCESS
                }
                Err(ModelError::AllZeroParams) => {
                    fail(EXIT_ALL_ZERO, &ModelError::AllZeroParams.to_string())
                }
                Err(e) => fail(EXIT_PARSE, &e.to_string()),
            }
        }
        Cmd::Portrait { a, b, c, out, csv } => {
            let params = match parse_params(&a, &b, &c, None, None) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_PARSE, &e),
            };
            let families = match reduce_to_linear(&params) {
                Ok(f) => f,
                Err(ModelError::AllZeroParams) => {
                    return fail(EXIT_ALL_ZERO, &ModelError::AllZeroParams.to_string())
                }
                Err(e) => return fail(EXIT_PARSE, &e.to_string()),
            };
            let fam = families
                .iter()
                .find(|f| !f.is_affine())
                .expect("every reduction contains a homogeneous family");
            let (svg, trajectories) = portrait::render(fam);
            if let Err(e) = write_file(&out, svg.as_bytes()) {
                return fail(EXIT_IO, &e);
            }
            if let Some(csv_path) = csv {
                let mut buf = Vec::new();
                for traj in &trajectories {
                    if !buf.is_empty() {
                        buf.push(b'\n');
                    }
                    write_csv(&mut buf, traj, "t,x,y").expect("writing to memory");
                }
                if let Err(e) = write_file(&csv_path, &buf) {
                    return fail(EXIT_IO, &e);
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Galois {
            a,
            b,
            c,
            m,
            k,
            real_form,
        } => {
            let params = match parse_params(&a, &b, &c, m.as_deref(), k.as_deref()) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_PARSE, &e),
            };
            match report::galois_report(&params, real_form) {
                Ok(rep) => {
                    emit(&report::to_sorted_json(&rep));
                    ExitCode::SUCCESS
                }
                Err(ModelError::AllZeroParams) => {
                    fail(EXIT_ALL_ZERO, &ModelError::AllZeroParams.to_string())
                }
                Err(e) => fail(EXIT_PARSE, &e.to_string()),
            }
        }
        Cmd::Darboux {
            a,
            b,
            c,
            constant,
            rho,
        } => {
            let params = match parse_params(&a, &b, &c, None, None) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_PARSE, &e),
            };
            let c_const = match parse_complex_arg("constant", &constant) {
                Ok(v) => v,
                Err(e) => return fail(EXIT_PARSE, &e),
            };
            if c_const.norm() == 0.0 {
                return fail(
                    EXIT_PARSE,
                    "constant: C = 0 collapses the second solutions onto the constant \
                     ones; pick a nonzero C",
                );
            }
            let rho = match rho {
                Some(text) => match parse_complex_arg("rho", &text) {
                    Ok(v) => v,
                    Err(e) => return fail(EXIT_PARSE, &e),
                },
                None => match compute_rho(&params) {
                    Ok(rv) => Complex64::new(rv.rho.to_f64(), 0.0),
                    Err(ModelError::AllZeroParams) => {
                        return fail(EXIT_ALL_ZERO, &ModelError::AllZeroParams.to_string())
                    }
                    Err(e) => return fail(EXIT_PARSE, &e.to_string()),
                },
            };
            match build_darboux_set(rho, c_const) {
                Ok(set) => {
                    let mut notes = Vec::new();
                    let (cof, ifmax, drift, directional) =
                        report::darboux_residuals(&set, &mut notes);
                    let rep = report::DarbouxReport {
                        schema_version: report::SCHEMA_VERSION,
                        set: (&set).into(),
                        residuals: report::DarbouxResiduals {
                            cofactor_max: cof,
                            integrating_factor_max: ifmax,
                            first_integral_drift: drift,
                            first_integral_directional: directional,
                            notes,
                        },
                    };
                    emit(&report::to_sorted_json(&rep));
                    ExitCode::SUCCESS
                }
                Err(DarbouxError::RhoZero) => {
                    fail(EXIT_VERIFY_FAILED, &DarbouxError::RhoZero.to_string())
                }
                Err(e) => fail(EXIT_VERIFY_FAILED, &e.to_string()),
            }
        }
        Cmd::Verify { a, b, c, seed } => {
            let params = match parse_params(&a, &b, &c, None, None) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_PARSE, &e),
            };
            match verify::run(&params, seed) {
                Ok(passed) => {
                    if passed {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_VERIFY_FAILED)
                    }
                }
                Err(ModelError::AllZeroParams) => {
                    fail(EXIT_ALL_ZERO, &ModelError::AllZeroParams.to_string())
                }
                Err(e) => fail(EXIT_PARSE, &e.to_string()),
            }
        }
    }
}
