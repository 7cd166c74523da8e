mod input;

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use augms::bench::{self, BenchConfig};
use augms::io::Section;
use augms::{
    compute_ms, compute_ms_verified, extract_mems, IndexBuilder, LceBackendKind, MatchingStatistics,
    Mode, QueryStats, Text, ThresholdStorage, TieBreak, Variant,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use input::Record;

const CASE_NOTE: &str = "Sequences are upper-cased; N and other ambiguity codes are ordinary \
symbols. FASTA records are joined with the reserved byte 0x01 so no match spans two records; \
bytes 0x00 and 0x01 may not appear in any input.";

#[derive(Parser)]
#[command(name = "augms", version, about = "Matching statistics and MEMs over a run-length BWT index")]
#[command(after_help = CASE_NOTE)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a FASTA or raw sequence file.
    #[command(after_help = CASE_NOTE)]
    Build(BuildArgs),
    /// Compute matching statistics or MEMs for each pattern.
    #[command(after_help = CASE_NOTE)]
    Query(QueryArgs),
    /// Compare index variants on one text and pattern set; writes CSV.
    #[command(after_help = CASE_NOTE)]
    Bench(BenchArgs),
    /// Write a synthetic pangenome and sampled patterns as FASTA.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct IndexOptions {
    /// phoni, full, byte, bv-full, bv-byte, dac or bv-dac.
    #[arg(long, default_value = "full")]
    encoding: Variant,
    /// naive or lcp-rmq.
    #[arg(long = "lce", default_value = "naive")]
    lce: LceBackendKind,
    /// array or sigma-bv.
    #[arg(long, default_value = "array")]
    thresholds: ThresholdStorage,
    /// leftmost or rightmost minimum LCP position in each run gap.
    #[arg(long, default_value = "leftmost")]
    tie_break: TieBreak,
}

#[derive(Args)]
struct BuildArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    index: IndexOptions,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Baseline,
    Augmented,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Baseline => Mode::Baseline,
            ModeArg::Augmented => Mode::Augmented,
        }
    }
}

#[derive(Args)]
struct QueryArgs {
    index: PathBuf,
    patterns: PathBuf,
    /// One line per pattern of `pos:len` pairs (1-based, `-` when absent).
    #[arg(long, conflicts_with = "mems", required_unless_present = "mems")]
    ms: bool,
    /// Lines `pattern-id i pos len` (1-based) for every MEM.
    #[arg(long, requires = "min_len")]
    mems: bool,
    #[arg(long)]
    min_len: Option<usize>,
    #[arg(long, value_enum, default_value = "augmented")]
    mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Recompute every skipped LCE and fail if one was unsound.
    #[arg(long)]
    verify: bool,
    /// Print summed query counters to stderr.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct BenchArgs {
    text: PathBuf,
    patterns: PathBuf,
    /// Comma-separated variants; default all seven.
    #[arg(long, value_delimiter = ',')]
    variants: Vec<Variant>,
    /// Comma-separated LCE backends.
    #[arg(long = "lce", value_delimiter = ',', default_value = "naive")]
    lce: Vec<LceBackendKind>,
    #[arg(long, default_value = "array")]
    thresholds: ThresholdStorage,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Point-mutate each pattern at this rate before querying.
    #[arg(long)]
    mutate: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    seed_len: usize,
    #[arg(long, default_value_t = 16)]
    copies: usize,
    #[arg(long, default_value_t = 0.001)]
    divergence: f64,
    #[arg(long)]
    patterns_out: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    patterns: usize,
    #[arg(long, default_value_t = 500)]
    pattern_len: usize,
    #[arg(long, default_value_t = 0.01)]
    mutation: f64,
    /// Write all copies as a single record instead of one per copy.
    #[arg(long)]
    single_record: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

impl From<augms::Error> for Failure {
    fn from(e: augms::Error) -> Self {
        Failure::Data(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::Build(a) => build(a),
        Command::Query(a) => query(a),
        Command::Bench(a) => run_bench(a),
        Command::Simulate(a) => simulate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_text(path: &Path) -> Result<Text> {
    let records = input::read_text(path)?;
    Ok(Text::from_records(&records.iter().map(|r| &r.seq).collect::<Vec<_>>())?)
}

fn build(a: BuildArgs) -> Outcome {
    let text = load_text(&a.input)?;
    let index = IndexBuilder::new()
        .variant(a.index.encoding)
        .lce_backend(a.index.lce)
        .threshold_storage(a.index.thresholds)
        .tie_break(a.index.tie_break)
        .build(&text);
    let report = augms::io::save(&index, &a.output).with_context(|| format!("cannot write {}", a.output.display()))?;
    let mut out = String::new();
    writeln!(out, "n\t{}", index.len()).unwrap();
    writeln!(out, "r\t{}", index.runs()).unwrap();
    writeln!(out, "n/r\t{:.2}", index.len() as f64 / index.runs() as f64).unwrap();
    writeln!(out, "variant\t{}", index.variant()).unwrap();
    writeln!(out, "total_bytes\t{}", report.total).unwrap();
    writeln!(out, "header_bytes\t{}", report.header).unwrap();
    for s in Section::ALL {
        writeln!(out, "{s}_bytes\t{}", report.section(s)).unwrap();
    }
    print!("{out}");
    Ok(())
}

fn ms_line(ms: &MatchingStatistics) -> String {
    let parts: Vec<String> = ms
        .iter()
        .map(|e| match e.pos {
            Some(p) => format!("{}:{}", p + 1, e.len),
            None => format!("-:{}", e.len),
        })
        .collect();
    parts.join(" ")
}

fn query(a: QueryArgs) -> Outcome {
    if a.threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let index = augms::io::load(&a.index).with_context(|| format!("cannot load index {}", a.index.display()))?;
    let patterns = input::read_patterns(&a.patterns)?;
    let mode = Mode::from(a.mode);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.threads)
        .build()
        .map_err(|e| anyhow!(e))?;
    let results: Vec<augms::Result<(MatchingStatistics, QueryStats)>> = pool.install(|| {
        patterns
            .par_iter()
            .map(|p| {
                let mut stats = QueryStats::default();
                let ms = if a.verify {
                    compute_ms_verified(&index, &p.seq, mode, &mut stats)?
                } else {
                    compute_ms(&index, &p.seq, mode, &mut stats)?
                };
                Ok((ms, stats))
            })
            .collect()
    });

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut total = QueryStats::default();
    for (p, result) in patterns.iter().zip(results) {
        let (ms, stats) = result.with_context(|| format!("pattern {}", p.id))?;
        total += stats;
        let written = if a.mems {
            extract_mems(&ms, a.min_len.unwrap_or(1)).iter().try_for_each(|m| {
                writeln!(out, "{} {} {} {}", p.id, m.index + 1, m.pos + 1, m.len)
            })
        } else {
            writeln!(out, "{}", ms_line(&ms))
        };
        written.context("cannot write output")?;
    }
    out.flush().context("cannot write output")?;
    if a.stats {
        eprintln!(
            "patterns {} direct_extensions {} jumps {} lce_calls {} lce_skips {}",
            patterns.len(),
            total.direct_extensions,
            total.jumps,
            total.lce_calls,
            total.lce_skips
        );
    }
    Ok(())
}

fn run_bench(a: BenchArgs) -> Outcome {
    if a.repeats == 0 {
        return Err(Failure::Usage("--repeats must be at least 1".into()));
    }
    if a.mutate.is_some_and(|p| !(0.0..=1.0).contains(&p)) {
        return Err(Failure::Usage("--mutate must lie in [0, 1]".into()));
    }
    let mut variants = a.variants.clone();
    if variants.is_empty() {
        variants = Variant::ALL.to_vec();
    }
    for (list, what) in [
        (variants.iter().map(|v| v.name()).collect::<Vec<_>>(), "variant"),
        (a.lce.iter().map(|b| b.name()).collect(), "LCE backend"),
    ] {
        let mut sorted = list.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Failure::Usage(format!("{what} {} requested twice", w[0])));
        }
    }

    let text = load_text(&a.text)?;
    let mut patterns: Vec<Vec<u8>> = input::read_patterns(&a.patterns)?.into_iter().map(|r| r.seq).collect();
    if let Some(rate) = a.mutate {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let alphabet: Vec<u8> = text
            .alphabet()
            .iter()
            .copied()
            .filter(|&c| c != augms::text::RECORD_SEPARATOR)
            .collect();
        for p in &mut patterns {
            *p = augms::synth::mutate(&mut rng, p, rate, &alphabet);
        }
    }
    let config = BenchConfig {
        variants,
        backends: a.lce.clone(),
        storage: a.thresholds,
        repeats: a.repeats,
    };
    let rows = bench::run_bench(text, &patterns, &config)?;
    match &a.csv {
        Some(path) => {
            let file = std::fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            bench::write_csv(&rows, file)?;
        }
        None => bench::write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}

fn simulate(a: SimulateArgs) -> Outcome {
    for (rate, name) in [(a.divergence, "--divergence"), (a.mutation, "--mutation")] {
        if !(0.0..=1.0).contains(&rate) {
            return Err(Failure::Usage(format!("{name} must lie in [0, 1]")));
        }
    }
    if a.seed_len == 0 || a.copies == 0 {
        return Err(Failure::Usage("--seed-len and --copies must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let dna = augms::synth::DNA;
    let copies = augms::synth::pangenome(&mut rng, a.seed_len, a.copies, a.divergence, dna);
    let records: Vec<Record> = if a.single_record {
        vec![Record {
            id: "pangenome".into(),
            seq: copies.concat(),
        }]
    } else {
        copies
            .iter()
            .enumerate()
            .map(|(k, seq)| Record {
                id: format!("copy{}", k + 1),
                seq: seq.clone(),
            })
            .collect()
    };
    input::write_fasta(&a.output, &records)?;
    if let Some(path) = &a.patterns_out {
        let body = copies.concat();
        let patterns: Vec<Record> = augms::synth::sample_patterns(&mut rng, &body, a.patterns, a.pattern_len, a.mutation, dna)
            .into_iter()
            .enumerate()
            .map(|(k, seq)| Record {
                id: format!("p{}", k + 1),
                seq,
            })
            .collect();
        input::write_fasta(path, &patterns)?;
    }
    Ok(())
}
