//! Command-line front end for the `polarseq` library.
//!
//! Every subcommand wraps exactly one library pipeline, so its output is
//! byte-identical to calling the crate directly with the same parameters.
//! Exit codes: 0 on success, 2 on validation problems (bad flags, bad
//! files, unsupported parameters), 3 on runtime failures such as
//! unwritable output paths.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polarseq::{
    bhattacharyya_bec, fer_run, ga_awgn, genie_monte_carlo, hw, memory_report, rank_from_metrics,
    FerConfig, Half, ReliabilityVector, RoundingMode, VariableScheme, DEFAULT_SEED,
};

/// Polar code reliability sequences from byte-composed variable schemes.
#[derive(Parser)]
#[command(name = "polarseq", version, about)]
struct Cli {
    /// Seed for randomized operations; omitted means the fixed constant
    /// 0x706f6c6172, so runs are reproducible by default.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Carry half-unit fractions from update to update.
    Keep,
    /// Round toward negative infinity after every update.
    Floor,
}

impl From<Mode> for RoundingMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Keep => RoundingMode::KeepFraction,
            Mode::Floor => RoundingMode::FloorEachUpdate,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the reliability vector for one length as CSV.
    Construct {
        /// Code length.
        #[arg(long)]
        n: usize,
        /// `builtin24` or a path to a scheme document.
        #[arg(long, default_value = "builtin24")]
        scheme: String,
        #[arg(long, value_enum, default_value_t = Mode::Keep)]
        mode: Mode,
    },
    /// Print the frozen indices for a code, one per line.
    Frozen {
        #[arg(long)]
        n: usize,
        /// Information length; the n-k least reliable positions freeze.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "builtin24")]
        scheme: String,
        #[arg(long, value_enum, default_value_t = Mode::Keep)]
        mode: Mode,
    },
    /// Compare a scheme against an exact construction (or another scheme).
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// `ga`, `bec`, `genie`, `builtin24` or a scheme document path.
        #[arg(long)]
        exact: String,
        #[arg(long, default_value = "builtin24")]
        scheme: String,
        #[arg(long, value_enum, default_value_t = Mode::Keep)]
        mode: Mode,
        /// Design Eb/N0 in dB for `ga` and `genie`.
        #[arg(long, default_value_t = 6.0)]
        ebn0_db: f64,
        /// Channel erasure probability for `bec`.
        #[arg(long, default_value_t = 0.5)]
        erasure_prob: f64,
        /// Simulated frames for `genie`.
        #[arg(long, default_value_t = 100_000)]
        frames: u64,
    },
    /// Run the two-engine generator and print its vector as CSV.
    Hwsim {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "builtin24")]
        scheme: String,
        /// Also write the per-cycle emission trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print the storage footprint of a scheme.
    Memreport {
        #[arg(long, default_value = "builtin24")]
        scheme: String,
    },
    /// Measure a frame error rate curve from a JSON config file.
    Fer {
        /// Path to a FerConfig JSON document.
        #[arg(long)]
        config: PathBuf,
        /// Base output path; `.csv` and `.json` are appended.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; omitted means one per core.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Inspect or export scheme documents.
    #[command(subcommand)]
    Scheme(SchemeCmd),
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Parse a scheme document and print a summary.
    Validate { file: String },
    /// Print a scheme in document form.
    Export {
        #[arg(long, default_value = "builtin24")]
        scheme: String,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Validation(String),
    Runtime(String),
}

impl From<polarseq::Error> for CliError {
    fn from(err: polarseq::Error) -> Self {
        CliError::Validation(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match cli.command {
        Command::Construct { n, scheme, mode } => {
            let p = load_scheme(&scheme)?.reliability(n, mode.into())?;
            print!("{}", p.to_csv());
        }
        Command::Frozen { n, k, scheme, mode } => {
            let p = load_scheme(&scheme)?.reliability(n, mode.into())?;
            for i in p.select_frozen(k)?.frozen_indices() {
                println!("{i}");
            }
        }
        Command::Compare {
            n,
            k,
            exact,
            scheme,
            mode,
            ebn0_db,
            erasure_prob,
            frames,
        } => {
            let rate = k as f64 / n as f64;
            let reference = ranks_from_source(&exact, n, rate, ebn0_db, erasure_prob, frames, seed, mode)?;
            let approx = load_scheme(&scheme)?.reliability(n, mode.into())?;
            let difference = reference
                .select_frozen(k)?
                .symmetric_difference(&approx.select_frozen(k)?);
            let distance = reference.kendall_tau_distance(&approx)?;
            println!("symmetric difference: {difference}");
            println!("kendall distance: {distance}");
        }
        Command::Hwsim { n, scheme, trace } => {
            let scheme = load_scheme(&scheme)?;
            let (p, steps) = hw::run_with_trace(&scheme, n)?;
            if let Some(path) = trace {
                write_output(&path, &hw::trace_csv(&scheme, &steps))?;
            }
            print!("{}", p.to_csv());
        }
        Command::Memreport { scheme } => {
            print!("{}", memory_report(&load_scheme(&scheme)?).to_text());
        }
        Command::Fer {
            config,
            out,
            workers,
        } => {
            let text = fs::read_to_string(&config).map_err(|err| {
                CliError::Validation(format!("cannot read config {}: {err}", config.display()))
            })?;
            let mut config: FerConfig = serde_json::from_str(&text)
                .map_err(|err| CliError::Validation(format!("invalid config: {err}")))?;
            if let Some(seed) = cli.seed {
                config.seed = seed;
            }
            let curve = match workers {
                None => fer_run(&config)?,
                Some(workers) => thread_pool(workers)?.install(|| fer_run(&config))?,
            };
            let csv_path = PathBuf::from(format!("{}.csv", out.display()));
            let json_path = PathBuf::from(format!("{}.json", out.display()));
            let json = serde_json::to_string_pretty(&curve)
                .map_err(|err| CliError::Runtime(err.to_string()))?;
            write_output(&csv_path, &curve.to_csv())?;
            write_output(&json_path, &format!("{json}\n"))?;
            println!("fingerprint: {}", curve.fingerprint);
            for p in &curve.points {
                println!(
                    "{} dB: fer {:e} ({} errors in {} frames)",
                    p.ebn0_db, p.fer, p.frame_errors, p.frames
                );
            }
        }
        Command::Scheme(SchemeCmd::Validate { file }) => {
            let scheme = load_scheme(&file)?;
            let report = memory_report(&scheme);
            let lengths: Vec<String> = scheme
                .supported_lengths()
                .iter()
                .map(|n| n.to_string())
                .collect();
            println!("lengths: {}", lengths.join(" "));
            println!(
                "variables: {} low + {} high",
                scheme.variable_count(Half::Low),
                scheme.variable_count(Half::High)
            );
            println!(
                "init entries: {} low + {} high",
                report.init_entries_low, report.init_entries_high
            );
            println!("ok");
        }
        Command::Scheme(SchemeCmd::Export { scheme, out }) => {
            let doc = load_scheme(&scheme)?.to_document();
            match out {
                Some(path) => write_output(&path, &doc)?,
                None => print!("{doc}"),
            }
        }
    }
    Ok(())
}

fn load_scheme(source: &str) -> Result<VariableScheme, CliError> {
    if source == "builtin24" {
        return Ok(VariableScheme::builtin24());
    }
    let text = fs::read_to_string(source)
        .map_err(|err| CliError::Validation(format!("cannot read scheme {source}: {err}")))?;
    Ok(VariableScheme::from_document(&text)?)
}

#[allow(clippy::too_many_arguments)]
fn ranks_from_source(
    source: &str,
    n: usize,
    rate: f64,
    ebn0_db: f64,
    erasure_prob: f64,
    frames: u64,
    seed: u64,
    mode: Mode,
) -> Result<ReliabilityVector, CliError> {
    match source {
        "ga" => Ok(rank_from_metrics(&ga_awgn(n, ebn0_db, rate)?)),
        "bec" => Ok(rank_from_metrics(&bhattacharyya_bec(n, erasure_prob)?)),
        "genie" => {
            let metrics = thread_pool(1)?
                .install(|| genie_monte_carlo(n, ebn0_db, rate, frames, seed))?;
            Ok(rank_from_metrics(&metrics))
        }
        scheme => Ok(load_scheme(scheme)?.reliability(n, mode.into())?),
    }
}

fn thread_pool(workers: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|err| CliError::Runtime(err.to_string()))
}

fn write_output(path: &std::path::Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content)
        .map_err(|err| CliError::Runtime(format!("cannot write {}: {err}", path.display())))
}
