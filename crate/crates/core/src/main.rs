//! Command-line surface: validate complexes, run criteria, print reports.
//!
//! Exit codes: 0 pass/valid, 1 fail/invalid, 2 usage or parse error,
//! 3 io error, 4 criterion not applicable.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use linkgap::complex::SimplicialComplex;
use linkgap::cosine::{self, CosineError, CosineSource};
use linkgap::criteria::{self, CriteriaError};
use linkgap::io::{parse_complex_file, parse_cos_table};
use linkgap::polygon::{feit_higman_lambda, PolygonParams};
use linkgap::report::{self, CheckOutput, PolygonOutput, ValidateOutput};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_NOT_APPLICABLE: u8 = 4;

#[derive(Parser)]
#[command(name = "linkgap", version, about = "Spectral criteria for simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Criterion {
    /// Per-link gap bound lambda >= k(n-k)/(k+1) + eps.
    Bs,
    /// Edge condition on 2-complexes: lambda(u) + lambda(v) > 1.
    Zuk,
    /// Triangle condition on 2-complexes (sum and product margins).
    Thm1,
    /// Root criterion for chosen (k, l).
    General,
    /// Cosine-matrix positive definiteness on 2-complexes.
    Thm2,
}

#[derive(Subcommand)]
enum Command {
    /// Check purity, link connectivity, and the weight identity of a complex file.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a criterion over a complex file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        criterion: Criterion,
        /// Cochain degree k (required for bs and general).
        #[arg(long)]
        k: Option<usize>,
        /// Anchor dimension l (required for general).
        #[arg(long)]
        l: Option<usize>,
        /// Margin eps (required for bs and general).
        #[arg(long)]
        eps: Option<f64>,
        /// Function dimension for the cosine estimator.
        #[arg(long, default_value_t = 1)]
        cos_dim: usize,
        /// Restart count for the cosine estimator.
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        /// Seed for the cosine estimator.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Use externally supplied cosines (one `vertex value` per line).
        #[arg(long)]
        cos_table: Option<PathBuf>,
        /// For general with l > k+1: use the constrained-eigenvalue extension.
        #[arg(long)]
        use_constrained: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Closed-form spectral gap of a generalized m-gon.
    Polygon {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Minimal thickness q per criterion for a rank-3 diagram.
    Scan {
        /// Coxeter labels m12,m13,m23 (each in 2, 3, 4, 6, 8).
        #[arg(long)]
        labels: String,
        #[arg(long)]
        qmax: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Built-in worked example: the GAB whose edge criterion fails but whose
    /// triangle criterion passes.
    Lyons {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli.command))
}

fn run(command: Command) -> u8 {
    match command {
        Command::Validate { file, format } => cmd_validate(&file, format),
        Command::Check {
            file,
            criterion,
            k,
            l,
            eps,
            cos_dim,
            restarts,
            seed,
            cos_table,
            use_constrained,
            format,
        } => cmd_check(
            &file,
            criterion,
            k,
            l,
            eps,
            cos_dim,
            restarts,
            seed,
            cos_table.as_deref(),
            use_constrained,
            format,
        ),
        Command::Polygon { m, s, t, format } => cmd_polygon(m, s, t, format),
        Command::Scan {
            labels,
            qmax,
            format,
        } => cmd_scan(&labels, qmax, format),
        Command::Lyons { format } => cmd_lyons(format),
    }
}

fn load_complex(path: &Path) -> Result<(String, SimplicialComplex), u8> {
    let text = std::fs::read_to_string(path).map_err(|err| {
        eprintln!("error: cannot read {}: {err}", path.display());
        EXIT_IO
    })?;
    let file = parse_complex_file(&text).map_err(|err| {
        eprintln!("error: cannot parse {}: {err}", path.display());
        EXIT_USAGE
    })?;
    let complex = SimplicialComplex::build(&file.maximal_simplices).map_err(|err| {
        eprintln!("error: invalid complex in {}: {err}", path.display());
        EXIT_USAGE
    })?;
    Ok((file.name, complex))
}

fn cmd_validate(path: &Path, format: Format) -> u8 {
    let (name, complex) = match load_complex(path) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    let out = ValidateOutput::new(name, complex.validate());
    match format {
        Format::Text => print!("{}", report::render_validate(&out)),
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable report")),
    }
    if out.valid {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    path: &Path,
    criterion: Criterion,
    k: Option<usize>,
    l: Option<usize>,
    eps: Option<f64>,
    cos_dim: usize,
    restarts: usize,
    seed: u64,
    cos_table: Option<&Path>,
    use_constrained: bool,
    format: Format,
) -> u8 {
    let (name, complex) = match load_complex(path) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    let result = match criterion {
        Criterion::Bs => {
            let (Some(k), Some(eps)) = (k, eps) else {
                eprintln!("error: bs requires --k and --eps");
                return EXIT_USAGE;
            };
            criteria::check_bs(&complex, k, eps)
        }
        Criterion::Zuk => criteria::check_zuk_2d(&complex),
        Criterion::Thm1 => criteria::check_theorem1_2d(&complex),
        Criterion::General => {
            let (Some(k), Some(l), Some(eps)) = (k, l, eps) else {
                eprintln!("error: general requires --k, --l, and --eps");
                return EXIT_USAGE;
            };
            criteria::check_general(&complex, k, l, eps, use_constrained)
        }
        Criterion::Thm2 => {
            let source = match cos_table {
                Some(table_path) => {
                    let text = match std::fs::read_to_string(table_path) {
                        Ok(text) => text,
                        Err(err) => {
                            eprintln!("error: cannot read {}: {err}", table_path.display());
                            return EXIT_IO;
                        }
                    };
                    match parse_cos_table(&text) {
                        Ok(table) => CosineSource::Table(table),
                        Err(err) => {
                            eprintln!("error: bad cosine table: {err}");
                            return EXIT_USAGE;
                        }
                    }
                }
                None => CosineSource::Estimate {
                    dim: cos_dim,
                    restarts,
                    seed,
                },
            };
            return match cosine::check_theorem2_2d(&complex, &source) {
                Ok(report) => emit_check(name, report, format),
                Err(err) => cosine_error_exit(&err),
            };
        }
    };
    match result {
        Ok(report) => emit_check(name, report, format),
        Err(err) => criteria_error_exit(&err),
    }
}

fn emit_check(name: String, report: criteria::CriterionReport, format: Format) -> u8 {
    let passed = report.passed;
    let out = CheckOutput { name, report };
    match format {
        Format::Text => print!("{}", report::render_check(&out)),
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable report")),
    }
    if passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn criteria_error_exit(err: &CriteriaError) -> u8 {
    eprintln!("error: {err}");
    match err {
        CriteriaError::Degenerate { .. } => EXIT_NOT_APPLICABLE,
        CriteriaError::Spectral(spectral_err) => spectral_error_exit(spectral_err),
        _ => EXIT_USAGE,
    }
}

fn spectral_error_exit(err: &linkgap::spectral::SpectralError) -> u8 {
    match err {
        linkgap::spectral::SpectralError::DisconnectedLink(_)
        | linkgap::spectral::SpectralError::LinkTooSmall(_) => EXIT_NOT_APPLICABLE,
        _ => EXIT_USAGE,
    }
}

fn cosine_error_exit(err: &CosineError) -> u8 {
    eprintln!("error: {err}");
    match err {
        CosineError::Spectral(spectral_err) => spectral_error_exit(spectral_err),
        _ => EXIT_USAGE,
    }
}

fn cmd_polygon(m: u32, s: u32, t: u32, format: Format) -> u8 {
    let params = match PolygonParams::new(m, s, t) {
        Ok(params) => params,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    let lambda = feit_higman_lambda(params);
    let out = PolygonOutput {
        m,
        s,
        t,
        lambda,
        lambda_bar: lambda - 0.5,
    };
    match format {
        Format::Text => print!("{}", report::render_polygon(&out)),
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable report")),
    }
    EXIT_PASS
}

fn cmd_scan(labels: &str, qmax: u32, format: Format) -> u8 {
    let parts: Vec<&str> = labels.split(',').collect();
    let parsed: Option<Vec<u32>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
    let Some(values) = parsed else {
        eprintln!("error: --labels must be three comma-separated integers, got {labels:?}");
        return EXIT_USAGE;
    };
    let [m12, m13, m23]: [u32; 3] = match values.as_slice().try_into() {
        Ok(arr) => arr,
        Err(_) => {
            eprintln!("error: --labels must have exactly three entries, got {labels:?}");
            return EXIT_USAGE;
        }
    };
    let scan = match criteria::diagram_scan([m12, m13, m23], qmax) {
        Ok(scan) => scan,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    match format {
        Format::Text => print!("{}", report::render_scan(&scan)),
        Format::Json => println!("{}", serde_json::to_string(&scan).expect("serializable report")),
    }
    EXIT_PASS
}

fn cmd_lyons(format: Format) -> u8 {
    let out = report::lyons_report();
    match format {
        Format::Text => print!("{}", report::render_lyons(&out)),
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable report")),
    }
    EXIT_PASS
}
