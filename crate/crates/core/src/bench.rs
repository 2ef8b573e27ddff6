//! Benchmark runner: every timed run is verified against the reference sort
//! before its timing is kept.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::buffer::Word;
use crate::error::{Error, Result};
use crate::gen::{generate_input, InputSpec};
use crate::oracle::verify_sorted_and_multiset;
use crate::radix::{ceil_log2, msd_radix_assoc_sort_with, RadixConfig};
use crate::sorter::assoc_permuting_sort_with;
use crate::stats::{load, store, Meter, SortStats, Unmetered};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// The in-place associative permuting sort.
    Assoc,
    /// The MSD radix extension with `⌈log₂ n⌉`-bit digits.
    RadixAssoc,
    /// The standard library's unstable sort.
    BaselineComparisonSort,
    /// Byte-wise LSD radix sort with an `n`-word scratch buffer.
    BaselineLsdRadix,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Assoc,
        Algorithm::RadixAssoc,
        Algorithm::BaselineComparisonSort,
        Algorithm::BaselineLsdRadix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Assoc => "assoc",
            Algorithm::RadixAssoc => "radix_assoc",
            Algorithm::BaselineComparisonSort => "baseline_comparison_sort",
            Algorithm::BaselineLsdRadix => "baseline_lsd_radix",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub spec: InputSpec,
    pub rep: usize,
    pub wall_ns: u64,
    /// `None` for the standard library sort, which is not instrumented.
    pub stats: Option<SortStats>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    algorithm: &'a str,
    n: usize,
    distribution: &'a str,
    m: Option<usize>,
    seed: u64,
    rep: usize,
    wall_ns: u64,
    reads: Option<u64>,
    writes: Option<u64>,
    cycles: Option<u64>,
    peak_aux_words: Option<u64>,
}

pub const CSV_HEADER: &str =
    "algorithm,n,distribution,m,seed,rep,wall_ns,reads,writes,cycles,peak_aux_words";

/// Writes records as CSV (header first, LF line endings).
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvRow {
            algorithm: r.algorithm.name(),
            n: r.spec.n,
            distribution: r.spec.distribution.name(),
            m: r.spec.distribution.distinct(),
            seed: r.spec.seed,
            rep: r.rep,
            wall_ns: r.wall_ns,
            reads: r.stats.map(|s| s.reads),
            writes: r.stats.map(|s| s.writes),
            cycles: r.stats.map(|s| s.cycles),
            peak_aux_words: r.stats.map(|s| s.peak_aux_words),
        })?;
    }
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush()
}

/// Median wall time per (algorithm, spec).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianRow {
    pub algorithm: Algorithm,
    pub spec: InputSpec,
    pub median_ns: u64,
}

pub fn medians(records: &[BenchRecord]) -> Vec<MedianRow> {
    let mut groups: Vec<(Algorithm, InputSpec, Vec<u64>)> = Vec::new();
    for r in records {
        match groups
            .iter_mut()
            .find(|(a, s, _)| *a == r.algorithm && *s == r.spec)
        {
            Some((_, _, times)) => times.push(r.wall_ns),
            None => groups.push((r.algorithm, r.spec, vec![r.wall_ns])),
        }
    }
    groups
        .into_iter()
        .map(|(algorithm, spec, mut times)| {
            times.sort_unstable();
            MedianRow {
                algorithm,
                spec,
                median_ns: times[times.len() / 2],
            }
        })
        .collect()
}

/// Input converted once per (algorithm, spec), outside the timed region.
enum Prepared {
    Signed(Vec<Word>),
    Unsigned(Vec<u64>, RadixConfig),
}

fn prepare(algo: Algorithm, keys: &[Word]) -> Result<Prepared> {
    let unsigned = || keys.iter().map(|&k| k as u64).collect::<Vec<u64>>();
    Ok(match algo {
        Algorithm::Assoc | Algorithm::BaselineComparisonSort => Prepared::Signed(keys.to_vec()),
        Algorithm::RadixAssoc => {
            let cfg = RadixConfig::new(keys.len(), ceil_log2(keys.len() as u64))?;
            Prepared::Unsigned(unsigned(), cfg)
        }
        Algorithm::BaselineLsdRadix => {
            Prepared::Unsigned(unsigned(), RadixConfig::new(keys.len(), 0)?)
        }
    })
}

fn run_once<M: Meter>(algo: Algorithm, input: &Prepared, m: &mut M) -> (u64, bool) {
    match input {
        Prepared::Signed(keys) => {
            let mut buf = keys.clone();
            let start = Instant::now();
            match algo {
                Algorithm::Assoc => assoc_permuting_sort_with(&mut buf, m),
                _ => buf.sort_unstable(),
            }
            let ns = start.elapsed().as_nanos() as u64;
            (ns.max(1), verify_sorted_and_multiset(keys, &buf))
        }
        Prepared::Unsigned(keys, cfg) => {
            let mut buf = keys.clone();
            let start = Instant::now();
            match algo {
                Algorithm::RadixAssoc => msd_radix_assoc_sort_with(&mut buf, cfg, m),
                _ => lsd_radix_sort_with(&mut buf, m),
            }
            let ns = start.elapsed().as_nanos() as u64;
            (ns.max(1), verify_sorted_and_multiset(keys, &buf))
        }
    }
}

fn measure_stats(algo: Algorithm, input: &Prepared) -> Option<SortStats> {
    if algo == Algorithm::BaselineComparisonSort {
        return None;
    }
    let mut stats = SortStats::default();
    run_once(algo, input, &mut stats);
    Some(stats)
}

/// One record per (algorithm, spec, repetition), single-threaded.
pub fn run_benchmark(
    algorithms: &[Algorithm],
    specs: &[InputSpec],
    repetitions: usize,
) -> Result<Vec<BenchRecord>> {
    run_benchmark_threaded(algorithms, specs, repetitions, 1)
}

/// As [`run_benchmark`], with independent (algorithm, spec) jobs spread over
/// `threads` workers. Records come back in (algorithm list, spec list, rep)
/// order regardless of scheduling.
pub fn run_benchmark_threaded(
    algorithms: &[Algorithm],
    specs: &[InputSpec],
    repetitions: usize,
    threads: usize,
) -> Result<Vec<BenchRecord>> {
    for spec in specs {
        spec.validate()?;
    }
    let jobs: Vec<(usize, usize)> = (0..algorithms.len())
        .flat_map(|a| (0..specs.len()).map(move |s| (a, s)))
        .collect();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Result<Vec<BenchRecord>>)>> = Mutex::new(Vec::new());

    let worker = || loop {
        let j = next.fetch_add(1, Ordering::Relaxed);
        let Some(&(a, s)) = jobs.get(j) else {
            return;
        };
        let out = bench_job(algorithms[a], &specs[s], repetitions);
        results.lock().unwrap().push((j, out));
    };
    std::thread::scope(|scope| {
        for _ in 1..threads.max(1) {
            scope.spawn(worker);
        }
        worker();
    });

    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(j, _)| *j);
    let mut records = Vec::with_capacity(jobs.len() * repetitions);
    for (_, r) in results {
        records.extend(r?);
    }
    Ok(records)
}

fn bench_job(algo: Algorithm, spec: &InputSpec, repetitions: usize) -> Result<Vec<BenchRecord>> {
    let keys = generate_input(spec)?;
    let input = prepare(algo, &keys)?;
    let fail = || Error::VerificationFailed {
        algorithm: algo.name().to_string(),
        n: spec.n,
        distribution: spec.distribution.to_string(),
        seed: spec.seed,
    };
    let stats = measure_stats(algo, &input);
    (0..repetitions)
        .map(|rep| {
            let (wall_ns, ok) = run_once(algo, &input, &mut Unmetered);
            if !ok {
                return Err(fail());
            }
            Ok(BenchRecord {
                algorithm: algo,
                spec: *spec,
                rep,
                wall_ns,
                stats,
            })
        })
        .collect()
}

/// Textbook LSD radix sort on bytes, ping-ponging through an `n`-word buffer.
pub fn lsd_radix_sort(buf: &mut [u64]) -> SortStats {
    let mut stats = SortStats::default();
    lsd_radix_sort_with(buf, &mut stats);
    stats
}

fn lsd_radix_sort_with<M: Meter>(buf: &mut [u64], m: &mut M) {
    let n = buf.len();
    m.aux(n as u64 + 256 + 4);
    let max = buf.iter().copied().max().unwrap_or(0);
    let passes = (64 - max.leading_zeros()).div_ceil(8);
    let mut scratch = vec![0u64; n];
    let mut counts = [0usize; 256];
    let (mut src, mut dst) = (&mut *buf, &mut scratch[..]);
    for pass in 0..passes {
        let shift = pass * 8;
        counts.fill(0);
        for i in 0..n {
            counts[(load(src, i, m) >> shift & 0xff) as usize] += 1;
        }
        let mut sum = 0;
        for c in counts.iter_mut() {
            let here = *c;
            *c = sum;
            sum += here;
        }
        for i in 0..n {
            let x = load(src, i, m);
            let b = (x >> shift & 0xff) as usize;
            store(dst, counts[b], x, m);
            counts[b] += 1;
        }
        std::mem::swap(&mut src, &mut dst);
    }
    if passes % 2 == 1 {
        buf.copy_from_slice(&scratch);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::Distribution;

    #[test]
    fn lsd_baseline_sorts() {
        let mut v = vec![300u64, 5, 70000, 5, 1, 1 << 40];
        let mut want = v.clone();
        want.sort();
        lsd_radix_sort(&mut v);
        assert_eq!(v, want);
        let mut v = vec![3u64, 1, 2];
        lsd_radix_sort(&mut v);
        assert_eq!(v, [1, 2, 3]);
        lsd_radix_sort(&mut []);
    }

    #[test]
    fn records_per_rep_and_csv() {
        let specs = [
            InputSpec::new(1000, Distribution::Uniform, 1),
            InputSpec::new(1000, Distribution::FewDistinct(50), 2),
        ];
        let records = run_benchmark(&Algorithm::ALL, &specs, 3).unwrap();
        assert_eq!(records.len(), 4 * 2 * 3);
        assert!(records.iter().all(|r| r.wall_ns > 0));
        assert_eq!(records[0].algorithm, Algorithm::Assoc);
        assert_eq!(records[3].spec, specs[1]);
        assert!(records
            .iter()
            .all(|r| r.stats.is_none() == (r.algorithm == Algorithm::BaselineComparisonSort)));

        let mut out = Vec::new();
        write_csv(&records, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.count(), records.len());
        assert!(!text.contains('\r'));
        assert!(text.contains("few_distinct,50,"));
        assert!(text.contains("baseline_comparison_sort,1000,uniform,,1,0,"));

        assert_eq!(medians(&records).len(), 8);
    }

    #[test]
    fn threaded_matches_sequential_layout() {
        let specs = [InputSpec::new(500, Distribution::Permutation, 4)];
        let seq = run_benchmark(&Algorithm::ALL, &specs, 2).unwrap();
        let par = run_benchmark_threaded(&Algorithm::ALL, &specs, 2, 3).unwrap();
        let key = |r: &BenchRecord| (r.algorithm, r.spec, r.rep, r.stats);
        assert_eq!(
            seq.iter().map(key).collect::<Vec<_>>(),
            par.iter().map(key).collect::<Vec<_>>()
        );
    }

    #[test]
    fn empty_csv_has_header() {
        let mut out = Vec::new();
        write_csv(&[], &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("quick".parse::<Algorithm>().is_err());
    }
}
