use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qseed_core::families::build_h;
use qseed_core::json::{matrix_value, spec_from_value};
use qseed_core::report::{
    analysis_value, analyze, matrix_csv, matrix_latex, seed_value, sweep, sweep_csv, sweep_json, sweep_latex,
    SweepConfig, SweepRow,
};
use qseed_core::seeds::{build_lambda, compatible_pair, default_frozen, truncate_nonmutable};
use qseed_core::verify::{run_check, Check};
use qseed_core::{FamilyKind, FamilySpec, IntMatrix};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qseed", version, about = "Defining matrices, quasi-commutation matrices and compatible pairs for quantized matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the defining matrix H.
    BuildH(MatrixArgs),
    /// Print the quasi-commutation matrix of the initial minors.
    BuildLambda(MatrixArgs),
    /// Corank, determinant, normal-form blocks, degrees and center generators.
    Analyze(AnalyzeArgs),
    /// Run one check (or `all`) against the exact oracles.
    Verify(VerifyArgs),
    /// Tabulate many families and sizes, failing on any disagreement.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Args)]
struct SpecArgs {
    /// dd, frt, c1, c2, ext (custom families need --spec).
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// JSON family spec file, e.g. {"kind":"custom","n":3,"A":…,"M":…}.
    #[arg(long, conflicts_with_all = ["family", "n", "r"])]
    spec: Option<PathBuf>,
}

impl SpecArgs {
    fn resolve(&self) -> Result<FamilySpec> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            return Ok(spec_from_value(&v)?);
        }
        let (Some(family), Some(n), Some(r)) = (&self.family, self.n, self.r) else {
            bail!(Usage("need --family, --n and --r, or --spec".into()));
        };
        let kind = FamilyKind::parse(family).map_err(|e| Usage(e.to_string()))?;
        if kind == FamilyKind::Custom {
            bail!(Usage("custom families are read with --spec".into()));
        }
        let spec = FamilySpec::named(kind, n, r);
        spec.validate().map_err(|e| Usage(e.to_string()))?;
        Ok(spec)
    }
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Root-of-unity orders; repeat or comma-separate.
    #[arg(long, value_delimiter = ',', default_values_t = [3u64])]
    m: Vec<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// inverse, lambda, minors, seeds, kernel, exchange or all.
    check: String,
    #[command(flatten)]
    spec: SpecArgs,
    /// Largest order handed to the symbolic engine.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// For `seeds`: also write the certified pair as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Families; repeat or comma-separate.
    #[arg(long, value_delimiter = ',', default_values_t = ["dd".to_string(), "frt".to_string()])]
    family: Vec<String>,
    /// Row range `lo..hi` (inclusive) or a single value.
    #[arg(long, default_value = "2..6")]
    n: String,
    #[arg(long, default_value = "2..6")]
    r: String,
    #[arg(long, value_delimiter = ',', default_values_t = [3u64])]
    m: Vec<u64>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Debug)]
struct Failed;

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for Failed {}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render_matrix(m: &IntMatrix, block: usize, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&matrix_value(m)).unwrap() + "\n",
        Format::Csv => matrix_csv(m),
        Format::Latex => matrix_latex(m, Some(block)),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Usage(format!("bad range `{s}`; expected lo..hi or a single value"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        bail!(bad());
    }
    Ok((lo, hi))
}

fn counterexample_dump(rows: &[SweepRow]) -> Value {
    let mut failing: Vec<&SweepRow> = rows.iter().filter(|r| !r.passed()).collect();
    failing.sort_by_key(|r| (r.n * r.r, r.family.code(), r.n, r.r));
    let all = sweep_json(&failing.iter().map(|r| (*r).clone()).collect::<Vec<_>>());
    json!({"minimal": all[0].clone(), "failures": all})
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::BuildH(a) => {
            let spec = a.spec.resolve()?;
            emit(&render_matrix(&build_h(&spec)?, spec.r, a.format), &a.out)
        }
        Command::BuildLambda(a) => {
            let spec = a.spec.resolve()?;
            emit(&render_matrix(&build_lambda(&spec)?, spec.r, a.format), &a.out)
        }
        Command::Analyze(a) => {
            let spec = a.spec.resolve()?;
            let v = analysis_value(&analyze(&spec, &a.m)?);
            emit(&(serde_json::to_string_pretty(&v)? + "\n"), &a.out)
        }
        Command::Verify(a) => {
            let spec = a.spec.resolve()?;
            let checks = match a.check.as_str() {
                "all" => Check::ALL.to_vec(),
                name => vec![Check::parse(name).ok_or_else(|| Usage(format!("unknown check `{name}`")))?],
            };
            let mut ok = true;
            for check in checks {
                let v = run_check(check, &spec, a.cap as usize)?;
                println!("{v}");
                ok &= v.passed;
            }
            if let (Some(out), "seeds") = (&a.out, a.check.as_str()) {
                let pair = compatible_pair(&spec, None)?;
                let t = truncate_nonmutable(&pair, &default_frozen(spec.n, spec.r)).ok();
                let text = serde_json::to_string_pretty(&seed_value(&pair, t.as_ref()))? + "\n";
                emit(&text, &Some(out.clone()))?;
            }
            if !ok {
                bail!(Failed);
            }
            Ok(())
        }
        Command::Sweep(a) => {
            let families = a
                .family
                .iter()
                .map(|f| match FamilyKind::parse(f) {
                    Ok(FamilyKind::Custom) | Err(_) => Err(Usage(format!("cannot sweep family `{f}`"))),
                    Ok(k) => Ok(k),
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let cfg = SweepConfig {
                families,
                n_range: parse_range(&a.n)?,
                r_range: parse_range(&a.r)?,
                ms: a.m,
                cap: a.cap as usize,
            };
            let rows = match std::env::var("QSEED_WORKERS") {
                Ok(w) => {
                    let workers: usize = w.parse().map_err(|_| Usage(format!("QSEED_WORKERS=`{w}` is not a count")))?;
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(workers)
                        .build()?
                        .install(|| sweep(&cfg))?
                }
                Err(_) => sweep(&cfg)?,
            };
            let text = match a.format {
                Format::Json => serde_json::to_string_pretty(&sweep_json(&rows))? + "\n",
                Format::Csv => sweep_csv(&rows),
                Format::Latex => sweep_latex(&rows),
            };
            emit(&text, &a.out)?;
            if rows.iter().any(|r| !r.passed()) {
                let dump = serde_json::to_string_pretty(&counterexample_dump(&rows))?;
                match &a.out {
                    Some(path) => {
                        let mut p = path.clone().into_os_string();
                        p.push(".counterexamples.json");
                        std::fs::write(&p, dump + "\n")?;
                        eprintln!("counterexamples written to {}", PathBuf::from(p).display());
                    }
                    None => eprintln!("{dump}"),
                }
                bail!(Failed);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Failed>() => {
            eprintln!("qseed: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("qseed: {e:#}");
            ExitCode::from(2)
        }
    }
}
