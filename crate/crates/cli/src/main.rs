//! Batch driver: verification suites, vanishing predictions, and spectrum
//! queries, with machine-readable reports.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wlab_core::curvature::Spectrum;
use wlab_core::io::CurvatureDocument;
use wlab_core::predictor::{
    hodge_diamond_report, reduced_vanishing, vanishing_bundle, vanishing_hodge, PositivityInput,
    Verdict,
};
use wlab_core::verify::{run_suites, RunConfig, SUITE_NAMES};
use wlab_core::KaehlerCurvature;

#[derive(Parser)]
#[command(
    name = "wlab",
    about = "Pointwise calculus for quadratic curvature terms: verification suites, \
             vanishing predictions, curvature spectra",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and stream one JSON report per suite.
    Verify(VerifyArgs),
    /// Predict cohomology vanishing from m-positivity data.
    Predict(PredictArgs),
    /// Eigenvalues and m-positivity level of a curvature operator.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite names (repeatable); "all" selects every suite.
    #[arg(long = "suite", default_value = "all")]
    suites: Vec<String>,
    /// Base seed; the WLAB_SEED environment variable overrides it.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Identity-residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Samples per cell for identity sweeps.
    #[arg(long, default_value_t = 1000)]
    samples_identity: usize,
    /// Samples per cell for inequality sweeps.
    #[arg(long, default_value_t = 10_000)]
    samples_inequality: usize,
    /// Complex dimension cap.
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// Real dimension cap.
    #[arg(long, default_value_t = 5)]
    d_max: usize,
    /// Bundle rank cap.
    #[arg(long, default_value_t = 2)]
    r_max: usize,
    /// Suppress the human-readable summary on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Fs,
    Hyperquadric,
}

#[derive(Args)]
struct PredictArgs {
    /// Complex dimension.
    #[arg(long)]
    n: usize,
    /// m-positivity level of the curvature operator.
    #[arg(long, conflicts_with = "model")]
    m: Option<usize>,
    /// Use a model space instead of an explicit level.
    #[arg(long, value_enum)]
    model: Option<Model>,
    /// Query one bidegree instead of the full diamond.
    #[arg(long, requires = "q")]
    p: Option<usize>,
    #[arg(long, requires = "p")]
    q: Option<usize>,
    /// Use the Nakano-positive bundle clauses.
    #[arg(long, conflicts_with = "reduced")]
    bundle: bool,
    /// Use the reduced-operator clauses.
    #[arg(long)]
    reduced: bool,
    /// Emit JSON instead of a text table.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorKind {
    /// Symmetrized curvature operator on Sym^2 T^{1,0}.
    Sym,
    /// Reduced operator on T^{1,0} (x) T^{0,1}.
    Reduced,
    /// Induced bundle (Nakano) operator on T^{1,0} (x) E.
    Bundle,
    /// Riemannian curvature operator on 2-vectors.
    Riem,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Built-in model curvature.
    #[arg(long, value_enum, conflicts_with = "file")]
    model: Option<Model>,
    /// Complex dimension for the model.
    #[arg(long)]
    n: Option<usize>,
    /// Curvature tensor JSON document.
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    /// Which induced operator to analyze.
    #[arg(long, value_enum, default_value = "sym")]
    operator: OperatorKind,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Predict(args) => match cmd_predict(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => usage_error(e),
        },
        Command::Spectrum(args) => match cmd_spectrum(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => usage_error(e),
        },
    }
}

fn usage_error(e: anyhow::Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let seed = match std::env::var("WLAB_SEED") {
        Ok(text) => match text.parse::<u64>() {
            Ok(s) => s,
            Err(_) => {
                eprintln!("error: WLAB_SEED must be an unsigned integer, got {text:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => args.seed,
    };
    let config = RunConfig {
        tolerance: args.tolerance,
        samples_identity: args.samples_identity,
        samples_inequality: args.samples_inequality,
        seed,
        n_max: args.n_max,
        d_max: args.d_max,
        r_max: args.r_max,
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let filter: Vec<String> = args
        .suites
        .iter()
        .filter(|s| s.as_str() != "all")
        .cloned()
        .collect();
    for name in &filter {
        if !SUITE_NAMES.contains(&name.as_str()) {
            eprintln!(
                "error: unknown suite {name:?}; available: {}",
                SUITE_NAMES.join(", ")
            );
            return ExitCode::from(2);
        }
    }
    let reports = match run_suites(&filter, &config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut all_pass = true;
    for report in &reports {
        writeln!(out, "{}", report.to_json_line()).expect("stdout");
        all_pass &= report.passed();
        if !args.quiet {
            eprintln!(
                "{:22} {}  max_residual {:.3e}  violations {}  ({} samples, {} ms)",
                report.suite,
                if report.passed() { "pass" } else { "FAIL" },
                report.max_residual,
                report.violations,
                report.samples,
                report.runtime_ms,
            );
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn model_level(model: Model, n: usize) -> anyhow::Result<(usize, &'static str)> {
    match model {
        Model::Fs => Ok((1, "fubini-study")),
        Model::Hyperquadric => {
            let s = Spectrum::hyperquadric(n)?;
            let m = s
                .m_positivity_level()
                .ok_or_else(|| anyhow::anyhow!("hyperquadric spectrum has no positive level"))?;
            Ok((m, "hyperquadric"))
        }
    }
}

fn verdict_symbol(v: Verdict) -> &'static str {
    match v {
        Verdict::EqualsC => "1",
        Verdict::Vanishes => "0",
        Verdict::NoClaim => "?",
    }
}

fn cmd_predict(args: PredictArgs) -> anyhow::Result<()> {
    let n = args.n;
    let (m, model_name) = match (args.m, args.model) {
        (Some(m), None) => (m, "explicit"),
        (None, Some(model)) => model_level(model, n)?,
        _ => anyhow::bail!("exactly one of --m or --model is required"),
    };
    if let (Some(p), Some(q)) = (args.p, args.q) {
        let verdict = if args.bundle {
            vanishing_bundle(n, p, q, m, true)?
        } else if args.reduced {
            reduced_vanishing(n, p, q, m)?
        } else {
            vanishing_hodge(n, p, q, m)?
        };
        if args.json {
            println!("{}", serde_json::to_string(&verdict)?);
        } else {
            println!(
                "H^({p},{q}) with m = {m}: {:?} [{}]",
                verdict.verdict, verdict.rule
            );
        }
        return Ok(());
    }
    if args.bundle || args.reduced {
        // clause-level table for the alternative theorem families
        let mut rows = Vec::new();
        for p in 0..=n {
            let mut row = Vec::new();
            for q in 0..=n {
                let v = if args.bundle {
                    if q == 0 {
                        None
                    } else {
                        Some(vanishing_bundle(n, p, q, m, true)?)
                    }
                } else {
                    Some(reduced_vanishing(n, p, q, m)?)
                };
                row.push(v);
            }
            rows.push(row);
        }
        if args.json {
            println!("{}", serde_json::to_string(&rows)?);
        } else {
            let kind = if args.bundle {
                "bundle (Nakano-positive)"
            } else {
                "reduced operator"
            };
            println!("{kind} vanishing, n = {n}, m = {m} ({model_name})");
            for (p, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row
                    .iter()
                    .map(|v| match v {
                        Some(v) => verdict_symbol(v.verdict).to_string(),
                        None => "-".to_string(),
                    })
                    .collect();
                println!("p={p}: {}", cells.join(" "));
            }
            println!("legend: 1 = equals C, 0 = vanishes, ? = no claim, - = out of scope");
        }
        return Ok(());
    }
    let report = hodge_diamond_report(n, &PositivityInput::Level(m))?;
    if args.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!("Hodge diamond verdicts, n = {n}, m = {m} ({model_name})");
        for (p, row) in report.cells.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .map(|c| verdict_symbol(c.verdict).to_string())
                .collect();
            println!("p={p}: {}", cells.join(" "));
        }
        println!("legend: 1 = equals C, 0 = vanishes, ? = no claim");
        if report.is_projective_space_diamond() {
            println!("table matches the projective-space diamond");
        }
    }
    Ok(())
}

fn print_spectrum(label: &str, spectrum: &Spectrum, json: bool) -> anyhow::Result<()> {
    let level = spectrum.m_positivity_level();
    if json {
        let doc = serde_json::json!({
            "operator": label,
            "eigenvalues": spectrum.eigenvalues(),
            "m_positivity_level": level,
        });
        println!("{doc}");
    } else {
        println!("{label} eigenvalues (ascending):");
        for v in spectrum.eigenvalues() {
            println!("  {:.16e}", v);
        }
        match level {
            Some(m) => println!("m-positivity level: {m}"),
            None => println!("m-positivity level: none"),
        }
    }
    Ok(())
}

fn cmd_spectrum(args: SpectrumArgs) -> anyhow::Result<()> {
    match (args.model, args.file) {
        (Some(model), None) => {
            let n = args
                .n
                .ok_or_else(|| anyhow::anyhow!("--model requires --n"))?;
            match model {
                Model::Fs => {
                    let t = KaehlerCurvature::fubini_study(n);
                    let spec = match args.operator {
                        OperatorKind::Sym => Spectrum::from_hermitian(&t.sym_operator()?),
                        OperatorKind::Reduced => Spectrum::from_hermitian(&t.reduced_operator()?),
                        _ => anyhow::bail!("fs model supports --operator sym|reduced"),
                    };
                    print_spectrum("fubini-study", &spec, args.json)
                }
                Model::Hyperquadric => {
                    if !matches!(args.operator, OperatorKind::Sym) {
                        anyhow::bail!("the hyperquadric model is spectrum-level (sym only)");
                    }
                    let spec = Spectrum::hyperquadric(n)?;
                    print_spectrum("hyperquadric", &spec, args.json)
                }
            }
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
            let doc = CurvatureDocument::from_json(&text)?;
            let (label, spec) = match (&doc, args.operator) {
                (CurvatureDocument::Kaehler { .. }, OperatorKind::Sym) => (
                    "symmetrized",
                    Spectrum::from_hermitian(&doc.into_kaehler()?.sym_operator()?),
                ),
                (CurvatureDocument::Kaehler { .. }, OperatorKind::Reduced) => (
                    "reduced",
                    Spectrum::from_hermitian(&doc.into_kaehler()?.reduced_operator()?),
                ),
                (CurvatureDocument::Bundle { .. }, OperatorKind::Bundle | OperatorKind::Sym) => (
                    "nakano",
                    Spectrum::from_hermitian(&doc.into_bundle()?.nakano_operator()?),
                ),
                (CurvatureDocument::Riemannian { .. }, OperatorKind::Riem | OperatorKind::Sym) => (
                    "curvature-operator",
                    Spectrum::from_symmetric(&doc.into_riemannian()?.operator()?),
                ),
                _ => anyhow::bail!("operator kind does not match the document kind"),
            };
            print_spectrum(label, &spec, args.json)
        }
        _ => anyhow::bail!("exactly one of --model or --file is required"),
    }
}
