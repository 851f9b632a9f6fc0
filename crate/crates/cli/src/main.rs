//! Command-line front end: analyze a polynomial end-to-end, render SVG
//! figures, or run the verification suite.
//!
//! Exit codes: 0 success, 1 malformed input, 2 distinct-roots violation,
//! 3 numerical failure or failed checks, 4 filesystem errors.

mod report;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use polyannulus::analysis::{analyze, step_halving_regression, AnalysisConfig, CheckStatus};
use polyannulus::annulus::build_cell_structure;
use polyannulus::lifting::StepPolicy;
use polyannulus::poly::{ComplexMultiset, PolyContext, Polynomial, Tolerances};
use polyannulus::render::{
    render_annulus_complex, render_branched_annulus, sample_render_traces, BranchedStyle,
    RenderConfig,
};
use polyannulus::{Complex64, Error};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_DISTINCTNESS: i32 = 2;
const EXIT_NUMERICAL: i32 = 3;
const EXIT_FILESYSTEM: i32 = 4;

#[derive(Parser)]
#[command(
    name = "polyannulus",
    version,
    about = "Annulus cell structures, partition chains, d-cycle factorizations and monodromy of complex polynomials with distinct roots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and emit a JSON report.
    Analyze {
        /// Input JSON file, or '-' for stdin.
        input: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Render an SVG figure.
    Render {
        /// Input JSON file, or '-' for stdin.
        input: String,
        /// Which figure to draw.
        #[arg(long, value_enum)]
        what: What,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run the invariant suite and print one line per check.
    Verify {
        /// Input JSON file, or '-' for stdin.
        input: Option<String>,
        /// Also run the step-halving determinism regression.
        #[arg(long)]
        deep: bool,
        /// Verify every .json file in this directory instead.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Minimum pairwise root separation for the distinctness gate.
    #[arg(long, default_value_t = 1e-9)]
    tol_sep: f64,
    /// Minimum critical-value modulus for the distinctness gate.
    #[arg(long, default_value_t = 1e-9)]
    tol_cv: f64,
    /// Reserved; the pipeline has no randomness anywhere.
    #[arg(long)]
    seed_free: bool,
    /// Samples per rendered curve.
    #[arg(long, default_value_t = 512)]
    samples: usize,
}

impl CommonOpts {
    fn analysis_config(&self) -> AnalysisConfig {
        AnalysisConfig {
            tolerances: Tolerances {
                tol_sep: self.tol_sep,
                tol_cv: self.tol_cv,
            },
            policy: StepPolicy::default(),
            parallel: true,
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum What {
    Annulus,
    Branched,
    Cacti,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    #[serde(default)]
    coefficients: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    leading: Option<[f64; 2]>,
    #[serde(default)]
    roots: Option<Vec<[f64; 2]>>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            emit_error("bad_arguments", &e.to_string());
            return EXIT_INPUT;
        }
    };
    match cli.command {
        Command::Analyze { input, out, opts } => cmd_analyze(&input, out.as_deref(), &opts),
        Command::Render {
            input,
            what,
            out,
            opts,
        } => cmd_render(&input, what, &out, &opts),
        Command::Verify {
            input,
            deep,
            dir,
            opts,
        } => cmd_verify(input.as_deref(), deep, dir.as_deref(), &opts),
    }
}

fn emit_error(code: &str, message: &str) {
    let object = serde_json::json!({ "error": { "code": code, "message": message } });
    println!("{object}");
}

fn exit_code_for(err: &Error) -> i32 {
    if err.is_input() {
        EXIT_INPUT
    } else if err.is_distinctness() {
        EXIT_DISTINCTNESS
    } else {
        EXIT_NUMERICAL
    }
}

fn error_code(err: &Error) -> &'static str {
    if err.is_input() {
        "invalid_polynomial"
    } else if err.is_distinctness() {
        "distinct_roots_required"
    } else {
        "numerical_failure"
    }
}

fn read_input(path: &str) -> Result<Polynomial, i32> {
    let text = if path == "-" {
        let mut buffer = String::new();
        if std::io::stdin().read_to_string(&mut buffer).is_err() {
            emit_error("io", "cannot read stdin");
            return Err(EXIT_INPUT);
        }
        buffer
    } else {
        match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                emit_error("io", &format!("cannot read {path}: {e}"));
                return Err(EXIT_INPUT);
            }
        }
    };
    let parsed: InputFile = match serde_json::from_str(&text) {
        Ok(p) => p,
        Err(e) => {
            emit_error("malformed_json", &e.to_string());
            return Err(EXIT_INPUT);
        }
    };
    let poly = match (parsed.coefficients, parsed.leading, parsed.roots) {
        (Some(coeffs), None, None) => Polynomial::from_coefficients(
            coeffs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        ),
        (None, Some([lre, lim]), Some(roots)) => {
            let values: Vec<Complex64> = roots
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect();
            Polynomial::from_roots(
                Complex64::new(lre, lim),
                &ComplexMultiset::from_values(&values),
            )
        }
        _ => {
            emit_error(
                "malformed_input",
                "expected either {\"coefficients\": [[re,im],…]} or {\"leading\": [re,im], \"roots\": [[re,im],…]}",
            );
            return Err(EXIT_INPUT);
        }
    };
    poly.map_err(|e| {
        emit_error(error_code(&e), &e.to_string());
        exit_code_for(&e)
    })
}

fn cmd_analyze(input: &str, out: Option<&Path>, opts: &CommonOpts) -> i32 {
    let poly = match read_input(input) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let analysis = match analyze(poly, &opts.analysis_config()) {
        Ok(a) => a,
        Err(e) => {
            emit_error(error_code(&e), &e.to_string());
            return exit_code_for(&e);
        }
    };
    let bytes = report::to_json_bytes(&report::build_report(&analysis));
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, &bytes) {
                emit_error("io", &format!("cannot write {}: {e}", path.display()));
                return EXIT_FILESYSTEM;
            }
        }
        None => {
            use std::io::Write;
            if std::io::stdout().write_all(&bytes).is_err() {
                return EXIT_FILESYSTEM;
            }
        }
    }
    if analysis.all_checks_pass() {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    }
}

fn cmd_render(input: &str, what: What, out: &Path, opts: &CommonOpts) -> i32 {
    let poly = match read_input(input) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let tolerances = Tolerances {
        tol_sep: opts.tol_sep,
        tol_cv: opts.tol_cv,
    };
    let document = (|| -> Result<_, Error> {
        let ctx = PolyContext::prepare(poly, &tolerances)?;
        let cells = build_cell_structure(&ctx.crit.critical_values)?;
        let mut cfg = RenderConfig::for_context(&ctx);
        cfg.samples_per_curve = opts.samples;
        match what {
            What::Annulus => Ok(render_annulus_complex(
                &cells,
                &ctx.crit.critical_values.values(),
                &cfg,
            )),
            What::Branched | What::Cacti => {
                let policy = StepPolicy::default();
                let traces = sample_render_traces(&ctx, &cells, &cfg, &policy, true)?;
                let style = match what {
                    What::Branched => BranchedStyle::Full,
                    _ => BranchedStyle::CactiOnly,
                };
                render_branched_annulus(&ctx, &cells, &traces, &cfg, style)
            }
        }
    })();
    let document = match document {
        Ok(d) => d,
        Err(e) => {
            emit_error(error_code(&e), &e.to_string());
            return exit_code_for(&e);
        }
    };
    if let Err(e) = fs::write(out, document.content.as_bytes()) {
        emit_error("io", &format!("cannot write {}: {e}", out.display()));
        return EXIT_FILESYSTEM;
    }
    EXIT_OK
}

fn verify_one(label: &str, path: &str, deep: bool, opts: &CommonOpts) -> i32 {
    let poly = match read_input(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let cfg = opts.analysis_config();
    let analysis = match analyze(poly.clone(), &cfg) {
        Ok(a) => a,
        Err(e) => {
            emit_error(error_code(&e), &e.to_string());
            return exit_code_for(&e);
        }
    };
    let mut checks = analysis.checks.clone();
    if deep {
        match step_halving_regression(&poly, &cfg) {
            Ok(check) => checks.push(check),
            Err(e) => {
                emit_error(error_code(&e), &e.to_string());
                return exit_code_for(&e);
            }
        }
    }
    let mut code = EXIT_OK;
    for check in &checks {
        println!(
            "{label}: {}: {} ({})",
            check.name,
            report::status_str(check.status).to_uppercase(),
            check.detail
        );
        if check.status == CheckStatus::Fail {
            code = EXIT_NUMERICAL;
        }
    }
    code
}

fn cmd_verify(input: Option<&str>, deep: bool, dir: Option<&Path>, opts: &CommonOpts) -> i32 {
    match (input, dir) {
        (Some(path), None) => verify_one(path, path, deep, opts),
        (None, Some(dir_path)) => {
            let entries = match fs::read_dir(dir_path) {
                Ok(e) => e,
                Err(e) => {
                    emit_error("io", &format!("cannot read {}: {e}", dir_path.display()));
                    return EXIT_FILESYSTEM;
                }
            };
            let mut files: Vec<PathBuf> = entries
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
                .collect();
            files.sort();
            if files.is_empty() {
                emit_error("io", &format!("no .json files in {}", dir_path.display()));
                return EXIT_INPUT;
            }
            let mut worst = EXIT_OK;
            for file in files {
                let label = file.display().to_string();
                let code = verify_one(&label, &label, deep, opts);
                worst = worst.max(code);
            }
            worst
        }
        _ => {
            emit_error(
                "bad_arguments",
                "verify needs exactly one of an input file or --dir",
            );
            EXIT_INPUT
        }
    }
}
