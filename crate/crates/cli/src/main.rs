use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use fixring::class_algebra::ClassAlgebraOptions;
use fixring::duality_iso::{verify_main_theorem, CupMode, VerifyOptions};
use fixring::fixed_ring::oracle::DEFAULT_MAX_POINTS;
use fixring::fixed_ring::{hilbert_series, multiplication_table, WeightZeroOracle};
use fixring::hypertoric::{corpus, verify_appendix_b, HypertoricOptions, HypertoricReport, VectorConfig};
use fixring::spaltenstein::{verify_appendix_a, SpaltensteinInstance, SpaltensteinOptions};
use fixring::Error;

const MAX_HILBERT_N: u32 = 8;
const MAX_TABLE_N: u32 = 12;

#[derive(Parser)]
#[command(name = "fixring", version, about = "Exact verification suites for fixed-point rings and their cohomological counterparts")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Directory for the class-algebra structure-constant cache
    /// (default: $FIXRING_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress the human-readable summary on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that psi intertwines the fixed-ring product with the cup product.
    HilbertVerify {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "oracle", value_parser = parse_mode)]
        mode: CupMode,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Graded dimensions of the fixed ring for n = 1..=N, as TSV.
    HilbertTable {
        #[arg(long)]
        n_max: u32,
    },
    /// Structure constants of the fixed ring in the canonical basis.
    FixedRingTable {
        #[arg(long)]
        n: u32,
        /// Use the weight-zero invariant-theory oracle (n <= 5).
        #[arg(long)]
        oracle: bool,
    },
    /// Compare the two presentations of a Spaltenstein-variety ideal.
    SpaltensteinVerify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        dmax: Option<u32>,
    },
    /// Compare the Stanley-Reisner quotient with the dual fixed-point ring.
    HypertoricVerify {
        #[arg(long, required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        /// Run every bundled configuration.
        #[arg(long)]
        corpus: bool,
        /// Seed for the search for a simple arrangement.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dmax: Option<u32>,
    },
}

fn parse_mode(s: &str) -> Result<CupMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    run: RunConfig,
}

impl Output {
    fn json<T: Serialize>(&self, value: &T) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
        text.push('\n');
        self.text(&text)
    }

    fn text(&self, text: &str) -> Result<(), Failure> {
        match &self.run.output {
            Some(path) => fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn summary(&self, line: impl AsRef<str>) {
        if !self.run.quiet {
            eprintln!("{}", line.as_ref());
        }
    }
}

fn read_json(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    if let Some(t) = cli.run.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let cache_dir = cli.run.cache_dir.clone();
    let out = Output { run: cli.run };
    match cli.command {
        Command::HilbertVerify { n, mode, timing } => {
            if n == 0 || n > MAX_HILBERT_N {
                return Err(Failure::Usage(format!("--n must lie in 1..={MAX_HILBERT_N}, got {n}")));
            }
            let mut class_options = ClassAlgebraOptions::default();
            if cache_dir.is_some() {
                class_options.cache_dir = cache_dir;
            }
            let report = verify_main_theorem(n, &VerifyOptions { mode, class_options, timing })?;
            out.json(&report)?;
            out.summary(format!(
                "hilbert-verify n={n} mode={}: {} ({} checks, dims {:?})",
                format!("{mode:?}").to_lowercase(),
                verdict(report.pass),
                report.checks.len(),
                report.dims.fixed_ring,
            ));
            if let Some(c) = report.first_failure() {
                out.summary(format!("first failure: k={} lambda={}", c.k, c.lambda));
            }
            Ok(report.pass)
        }
        Command::HilbertTable { n_max } => {
            if n_max == 0 || n_max > MAX_TABLE_N {
                return Err(Failure::Usage(format!("--n-max must lie in 1..={MAX_TABLE_N}, got {n_max}")));
            }
            let mut tsv = String::new();
            for n in 1..=n_max {
                let row: Vec<String> = hilbert_series(n).iter().map(usize::to_string).collect();
                tsv.push_str(&format!("{n}\t{}\n", row.join("\t")));
            }
            out.text(&tsv)?;
            Ok(true)
        }
        Command::FixedRingTable { n, oracle } => {
            let table = if oracle {
                {
                // every pair of basis elements, so the table has the same shape as the formula one
                let top = 4 * n.saturating_sub(1);
                WeightZeroOracle::with_caps(n, top, DEFAULT_MAX_POINTS, 4 * (DEFAULT_MAX_POINTS - 1))?.multiplication_table()?
            }
            } else {
                if n == 0 || n > MAX_HILBERT_N {
                    return Err(Failure::Usage(format!("--n must lie in 1..={MAX_HILBERT_N}, got {n}")));
                }
                multiplication_table(n)?
            };
            out.json(&table)?;
            out.summary(format!(
                "fixed-ring-table n={n}: {} basis elements, {} products",
                table.basis.len(),
                table.structure_constants.len()
            ));
            Ok(true)
        }
        Command::SpaltensteinVerify { file, dmax } => {
            let raw: InstanceFile =
                serde_json::from_str(&read_json(&file)?).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let n = raw.n.unwrap_or_else(|| raw.lambda.iter().sum());
            let inst = SpaltensteinInstance::new(n, &raw.lambda, &raw.mu)?;
            let report = verify_appendix_a(&inst, &SpaltensteinOptions { dmax, ..Default::default() })?;
            out.json(&report)?;
            out.summary(format!(
                "spaltenstein-verify lambda={:?} mu={:?}: {} (dmax {}, dims {:?})",
                report.lambda,
                report.mu,
                verdict(report.pass),
                report.dmax,
                report.dims
            ));
            if let Some(d) = report.degrees.iter().find(|d| !d.equal) {
                out.summary(format!("first mismatching degree: {}", d.degree));
            }
            Ok(report.pass)
        }
        Command::HypertoricVerify { file, corpus: all, seed, dmax } => {
            let opts = HypertoricOptions { seed, dmax, ..Default::default() };
            let configs: Vec<VectorConfig> = match file {
                Some(path) => vec![VectorConfig::from_json(&read_json(&path)?)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?],
                None => {
                    debug_assert!(all);
                    corpus().into_iter().map(|c| c.config).collect()
                }
            };
            let reports: Vec<HypertoricReport> =
                configs.iter().map(|c| verify_appendix_b(c, &opts)).collect::<Result<_, _>>()?;
            if reports.len() == 1 {
                out.json(&reports[0])?;
            } else {
                out.json(&reports)?;
            }
            for r in &reports {
                out.summary(format!(
                    "hypertoric-verify {}: {} (n={}, d={}, dims {:?})",
                    r.name.as_deref().unwrap_or("config"),
                    verdict(r.pass),
                    r.n,
                    r.d,
                    r.sr_dims
                ));
                if let Some(d) = r.first_mismatch_degree {
                    out.summary(format!("first mismatching degree: {d}"));
                }
            }
            Ok(reports.iter().all(|r| r.pass))
        }
    }
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    #[serde(default)]
    n: Option<u32>,
    lambda: Vec<u32>,
    mu: Vec<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
