//! Command-line front end: `discover`, `bench` and `synth`.
//!
//! Exit codes: 0 success, 1 input or output failure, 2 usage error,
//! 3 the two engines disagreed in `bench`.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use topk_afd::oracle::{generate, PlantedDependency, SynthSpec};
use topk_afd::relation::{load_csv, write_csv, LoadOptions};
use topk_afd::report::{same_ranking, Format, RunReport};
use topk_afd::search::{run_base, run_opt, DEFAULT_K, DEFAULT_MAX_LHS};
use topk_afd::{Relation, ScoredAfd, SearchConfig, SearchStats};

const EXIT_IO: u8 = 1;
const EXIT_DIVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(name = "topk-afd", version, about = "Global top-k approximate functional dependency discovery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the k strongest approximate dependencies of a CSV file.
    Discover {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Algo::Opt)]
        algo: Algo,
    },
    /// Run both engines, check they agree and report pruning ratio and speedup.
    Bench {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Write a seeded synthetic relation as CSV.
    Synth(SynthArgs),
}

#[derive(Args)]
struct InputArgs {
    /// CSV file, or `-` for standard input.
    input: PathBuf,
    /// Cell text treated as NULL in addition to empty cells.
    #[arg(long)]
    null_token: Option<String>,
    #[arg(long, default_value_t = ',', value_parser = parse_delimiter)]
    delimiter: char,
    /// The first record is data; attributes are named col0, col1, ...
    #[arg(long)]
    no_header: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = DEFAULT_K, value_parser = positive)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_LHS, value_parser = positive)]
    max_lhs: usize,
    /// Turn off upper-bound pruning; guarantees identical results with NULLs.
    #[arg(long)]
    disable_ub_pruning: bool,
    #[arg(long)]
    disable_fd_pruning: bool,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long, value_parser = positive)]
    attrs: usize,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    cardinality: u32,
    #[arg(long, default_value_t = 0.0, value_parser = probability)]
    null_prob: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated attribute indices of a planted dependency's LHS.
    #[arg(long, value_delimiter = ',', requires = "plant_rhs")]
    plant_lhs: Vec<usize>,
    #[arg(long, requires = "plant_lhs")]
    plant_rhs: Option<usize>,
    #[arg(long, default_value_t = 0.0, value_parser = probability)]
    noise: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Base,
    Opt,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
    Tsv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Table => Format::Table,
            OutputFormat::Json => Format::Json,
            OutputFormat::Tsv => Format::Tsv,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn probability(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err("must lie in [0, 1]".into())
    }
}

fn parse_delimiter(s: &str) -> Result<char, String> {
    let s = if s == "\\t" { "\t" } else { s };
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii() => Ok(c),
        _ => Err("delimiter must be a single ASCII character".into()),
    }
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig::new(self.k)
            .with_max_lhs(self.max_lhs)
            .with_ub_pruning(!self.disable_ub_pruning)
            .with_fd_pruning(!self.disable_fd_pruning)
    }
}

impl InputArgs {
    fn dataset_name(&self) -> String {
        if self.input == Path::new("-") {
            return "stdin".into();
        }
        self.input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| self.input.display().to_string())
    }

    fn load(&self) -> Result<Relation, String> {
        let options = LoadOptions {
            delimiter: self.delimiter as u8,
            has_header: !self.no_header,
            null_token: self.null_token.clone().unwrap_or_default(),
        };
        let source: Box<dyn Read> = if self.input == Path::new("-") {
            Box::new(io::stdin().lock())
        } else {
            let file = File::open(&self.input).map_err(|e| format!("{}: {e}", self.input.display()))?;
            Box::new(io::BufReader::new(file))
        };
        load_csv(source, &options).map_err(|e| format!("{}: {e}", self.input.display()))
    }
}

fn timed(engine: fn(&Relation, &SearchConfig) -> (Vec<ScoredAfd>, SearchStats), rel: &Relation, cfg: &SearchConfig) -> (Vec<ScoredAfd>, SearchStats) {
    let start = Instant::now();
    let (ranked, mut stats) = engine(rel, cfg);
    stats.elapsed = start.elapsed();
    (ranked, stats)
}

fn emit(report: &RunReport, format: Format) -> Result<(), String> {
    let mut out = io::stdout().lock();
    out.write_all(report.render(format).as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| format!("writing report: {e}"))
}

fn discover(input: &InputArgs, search: &SearchArgs, algo: Algo) -> Result<u8, String> {
    let rel = input.load()?;
    let cfg = search.config();
    let (name, engine): (&str, fn(&Relation, &SearchConfig) -> _) = match algo {
        Algo::Base => ("base", run_base),
        Algo::Opt => ("opt", run_opt),
    };
    let (ranked, stats) = timed(engine, &rel, &cfg);
    emit(&RunReport::new(input.dataset_name(), &rel, &cfg, name, &ranked, &stats), input.format.into())?;
    Ok(0)
}

fn bench(input: &InputArgs, search: &SearchArgs) -> Result<u8, String> {
    let rel = input.load()?;
    let cfg = search.config();
    let (base_ranked, base_stats) = timed(run_base, &rel, &cfg);
    let (opt_ranked, opt_stats) = timed(run_opt, &rel, &cfg);
    let identical = same_ranking(&base_ranked, &opt_ranked, 0.0);
    let report = RunReport::new(input.dataset_name(), &rel, &cfg, "opt", &opt_ranked, &opt_stats)
        .with_baseline(&base_stats, &opt_stats, identical);
    emit(&report, input.format.into())?;
    if identical {
        Ok(0)
    } else {
        eprintln!("error: the two engines returned different ranked lists");
        Ok(EXIT_DIVERGENCE)
    }
}

fn synth(args: &SynthArgs) -> Result<u8, String> {
    let mut spec = SynthSpec::uniform(args.rows, args.attrs, args.cardinality, args.seed).with_nulls(args.null_prob);
    if let Some(rhs) = args.plant_rhs {
        spec = spec.with_planted(PlantedDependency {
            lhs: args.plant_lhs.clone(),
            rhs,
            noise_rate: args.noise,
        });
    }
    // An invalid planted dependency is a usage error, not an I/O failure.
    if let Err(e) = spec.validate() {
        eprintln!("error: {e}");
        return Ok(2);
    }
    let rel = generate(&spec).map_err(|e| e.to_string())?;
    let file = File::create(&args.out).map_err(|e| format!("{}: {e}", args.out.display()))?;
    let mut sink = BufWriter::new(file);
    write_csv(&rel, &mut sink, b',').map_err(|e| format!("{}: {e}", args.out.display()))?;
    sink.flush().map_err(|e| format!("{}: {e}", args.out.display()))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Discover { input, search, algo } => discover(input, search, *algo),
        Command::Bench { input, search } => bench(input, search),
        Command::Synth(args) => synth(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_IO)
        }
    }
}
