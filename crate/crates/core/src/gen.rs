//! Seeded input generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::buffer::Word;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    /// Independent draws from `[1, n]`.
    Uniform,
    /// Independent draws from `m` distinct values chosen uniformly in `[1, n]`.
    FewDistinct(usize),
    Sorted,
    Reverse,
    AllEqual,
    /// A uniformly random permutation of `1..=n`.
    Permutation,
}

impl Distribution {
    pub fn name(&self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::FewDistinct(_) => "few_distinct",
            Distribution::Sorted => "sorted",
            Distribution::Reverse => "reverse",
            Distribution::AllEqual => "all_equal",
            Distribution::Permutation => "permutation",
        }
    }

    pub fn distinct(&self) -> Option<usize> {
        match *self {
            Distribution::FewDistinct(m) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::FewDistinct(m) => write!(f, "few_distinct={m}"),
            d => f.write_str(d.name()),
        }
    }
}

/// Accepts both the short command-line spellings (`few-distinct=M`, `equal`,
/// `perm`) and the canonical names.
impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("unknown distribution {s:?}"));
        if let Some((name, m)) = s.split_once('=') {
            if name != "few-distinct" && name != "few_distinct" {
                return Err(bad());
            }
            let m = m.parse().map_err(|_| bad())?;
            return Ok(Distribution::FewDistinct(m));
        }
        Ok(match s {
            "uniform" => Distribution::Uniform,
            "sorted" => Distribution::Sorted,
            "reverse" => Distribution::Reverse,
            "equal" | "all_equal" => Distribution::AllEqual,
            "perm" | "permutation" => Distribution::Permutation,
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InputSpec {
    pub n: usize,
    pub distribution: Distribution,
    pub seed: u64,
}

impl InputSpec {
    pub fn new(n: usize, distribution: Distribution, seed: u64) -> Self {
        InputSpec {
            n,
            distribution,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Distribution::FewDistinct(m) = self.distribution {
            if m == 0 || m > self.n {
                return Err(Error::InvalidSpec(format!(
                    "few_distinct needs 1 <= m <= n, got m={m}, n={}",
                    self.n
                )));
            }
        }
        Ok(())
    }
}

/// Keys in `[1, n]` for `spec`. The same spec always yields the same array.
pub fn generate_input(spec: &InputSpec) -> Result<Vec<Word>> {
    spec.validate()?;
    let n = spec.n;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let top = n as Word;
    let mut keys: Vec<Word> = match spec.distribution {
        Distribution::Uniform | Distribution::Sorted | Distribution::Reverse => {
            (0..n).map(|_| rng.gen_range(1..=top)).collect()
        }
        Distribution::FewDistinct(m) => {
            let values: Vec<Word> = index::sample(&mut rng, n, m)
                .into_iter()
                .map(|v| v as Word + 1)
                .collect();
            (0..n).map(|_| values[rng.gen_range(0..m)]).collect()
        }
        Distribution::AllEqual => vec![rng.gen_range(1..=top); n],
        Distribution::Permutation => {
            let mut p: Vec<Word> = (1..=top).collect();
            p.shuffle(&mut rng);
            p
        }
    };
    match spec.distribution {
        Distribution::Sorted => keys.sort_unstable(),
        Distribution::Reverse => keys.sort_unstable_by(|a, b| b.cmp(a)),
        _ => {}
    }
    Ok(keys)
}
