use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use assoc_perm::bench::{medians, run_benchmark_threaded, write_csv, Algorithm};
use assoc_perm::gen::{generate_input, Distribution, InputSpec};
use assoc_perm::keyfile::{format_key_file, parse_key_file};
use assoc_perm::oracle::verify_sorted_and_multiset;
use assoc_perm::radix::msd_radix_assoc_sort_checked;
use assoc_perm::sorter::{assoc_permuting_sort_checked, trace_phases};
use assoc_perm::{Phase, RadixConfig, SortStats, Word};
use clap::{Parser, Subcommand, ValueEnum};

/// In-place integer sorting by associative permutation.
#[derive(Parser)]
#[command(name = "assoc-perm", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a key file of generated keys.
    Gen {
        #[arg(long)]
        n: usize,
        /// uniform, few-distinct=M, sorted, reverse, equal or perm
        #[arg(long, default_value = "uniform")]
        dist: Distribution,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sort a key file; stats go to standard error.
    Sort {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SortAlgo::Assoc)]
        algo: SortAlgo,
        /// Keys lie in [1, 2^B] (radix only). Defaults to the smallest B
        /// covering the keys.
        #[arg(long)]
        key_bits: Option<u32>,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exit 0 iff --in is a sorted rearrangement of --against.
    Verify {
        /// The sorted output.
        #[arg(long = "in")]
        input: PathBuf,
        /// The original keys.
        #[arg(long)]
        against: PathBuf,
    },
    /// Time sorts over generated inputs and write a CSV; medians go to
    /// standard error.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "uniform")]
        dist: Vec<Distribution>,
        #[arg(long, value_delimiter = ',', value_parser = parse_algorithm,
              default_value = "assoc,radix_assoc,baseline_comparison_sort,baseline_lsd_radix")]
        algos: Vec<Algorithm>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print the buffer after every phase of the sort.
    Trace {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SortAlgo {
    Assoc,
    Radix,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    match s {
        "radix" => Ok(Algorithm::RadixAssoc),
        "std" => Ok(Algorithm::BaselineComparisonSort),
        "lsd" => Ok(Algorithm::BaselineLsdRadix),
        _ => s.parse().map_err(|e: assoc_perm::Error| e.to_string()),
    }
}

enum Failure {
    Usage(String),
    Malformed(String),
    Verify(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            // an unreadable or unwritable path is a usage problem
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Malformed(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Malformed(m) | Failure::Verify(m) | Failure::Io(m) => m,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn read_keys(path: &Path) -> Result<Vec<u64>, Failure> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_key_file(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn to_words(keys: &[u64], path: &Path) -> Result<Vec<Word>, Failure> {
    let n = keys.len() as u64;
    keys.iter()
        .enumerate()
        .map(|(i, &k)| {
            if (1..=n).contains(&k) {
                Ok(k as Word)
            } else {
                Err(Failure::Malformed(format!(
                    "{}: key {k} on line {} outside [1, {n}]",
                    path.display(),
                    i + 2
                )))
            }
        })
        .collect()
}

fn print_stats(stats: &SortStats) {
    eprintln!(
        "reads={} writes={} cycles={} peak_aux_words={}",
        stats.reads, stats.writes, stats.cycles, stats.peak_aux_words
    );
}

fn sort(
    input: &Path,
    algo: SortAlgo,
    key_bits: Option<u32>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let keys = read_keys(input)?;
    let text = match algo {
        SortAlgo::Assoc => {
            if key_bits.is_some() {
                return Err(Failure::Usage(
                    "--key-bits applies to --algo radix only".into(),
                ));
            }
            let mut buf = to_words(&keys, input)?;
            let stats = assoc_permuting_sort_checked(&mut buf)
                .map_err(|e| Failure::Malformed(e.to_string()))?;
            print_stats(&stats);
            format_key_file(&buf)
        }
        SortAlgo::Radix => {
            let cfg = match key_bits {
                Some(b) => RadixConfig::new(keys.len(), b),
                None => RadixConfig::for_keys(&keys),
            };
            let cfg = cfg.map_err(|e| match e {
                assoc_perm::Error::InvalidConfig(m) => Failure::Usage(m),
                e => Failure::Malformed(format!("{}: {e}", input.display())),
            })?;
            let mut buf = keys;
            let stats = msd_radix_assoc_sort_checked(&mut buf, &cfg)
                .map_err(|e| Failure::Malformed(format!("{}: {e}", input.display())))?;
            print_stats(&stats);
            format_key_file(&buf)
        }
    };
    emit(out, &text)
}

fn verify(input: &Path, against: &Path) -> Result<(), Failure> {
    let after = read_keys(input)?;
    let before = read_keys(against)?;
    if verify_sorted_and_multiset(&before, &after) {
        eprintln!("ok: {} keys sorted", after.len());
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "{} is not a sorted rearrangement of {}",
            input.display(),
            against.display()
        )))
    }
}

fn step_label(phase: Phase) -> &'static str {
    match phase {
        Phase::PlacedKeys => "place distinct",
        Phase::Marked => "mark representatives",
        Phase::Counted => "count duplicates",
        Phase::Lambda => "prefix sums",
        Phase::RankPerm => "assign ranks",
        Phase::PermutedRanks => "associative permute",
        Phase::SortedKeys => "restore keys",
        Phase::RawKeys => "input",
    }
}

fn join<T: Display>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn trace(input: &Path) -> Result<(), Failure> {
    let keys = read_keys(input)?;
    let buf = to_words(&keys, input)?;
    let phases = trace_phases(&buf).map_err(|e| Failure::Malformed(e.to_string()))?;
    let mut text = format!(
        "{:<22} {}: {}\n",
        step_label(Phase::RawKeys),
        Phase::RawKeys.name(),
        join(&buf)
    );
    for (phase, values) in &phases {
        text += &format!(
            "{:<22} {}: {}\n",
            step_label(*phase),
            phase.name(),
            join(values)
        );
    }
    emit(None, &text)
}

#[allow(clippy::too_many_arguments)]
fn bench(
    ns: &[usize],
    dists: &[Distribution],
    algos: &[Algorithm],
    reps: usize,
    seed: u64,
    csv: &Path,
    threads: usize,
) -> Result<(), Failure> {
    if reps == 0 {
        return Err(Failure::Usage("--reps must be at least 1".into()));
    }
    let specs: Vec<InputSpec> = ns
        .iter()
        .flat_map(|&n| dists.iter().map(move |&d| InputSpec::new(n, d, seed)))
        .collect();
    for s in &specs {
        s.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let records = run_benchmark_threaded(algos, &specs, reps, threads).map_err(|e| match e {
        e @ assoc_perm::Error::VerificationFailed { .. } => Failure::Verify(e.to_string()),
        e => Failure::Usage(e.to_string()),
    })?;
    let file = fs::File::create(csv).map_err(io_err(csv))?;
    write_csv(&records, io::BufWriter::new(file)).map_err(io_err(csv))?;

    let rows = medians(&records);
    for row in &rows {
        let base = rows
            .iter()
            .find(|r| r.spec == row.spec && r.algorithm == Algorithm::BaselineComparisonSort);
        let ratio = base
            .map(|b| format!("  {:.2}x std", row.median_ns as f64 / b.median_ns as f64))
            .unwrap_or_default();
        eprintln!(
            "{:<26} n={:<9} {:<16} median {:>12} ns{ratio}",
            row.algorithm.name(),
            row.spec.n,
            row.spec.distribution.to_string(),
            row.median_ns
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Gen { n, dist, seed, out } => {
            let keys = generate_input(&InputSpec::new(n, dist, seed))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            emit(Some(&out), &format_key_file(&keys))
        }
        Cmd::Sort {
            input,
            algo,
            key_bits,
            out,
        } => sort(&input, algo, key_bits, out.as_deref()),
        Cmd::Verify { input, against } => verify(&input, &against),
        Cmd::Bench {
            n,
            dist,
            algos,
            reps,
            seed,
            csv,
            threads,
        } => bench(&n, &dist, &algos, reps, seed, &csv, threads),
        Cmd::Trace { input } => trace(&input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("assoc-perm: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
