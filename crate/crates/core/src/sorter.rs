//! The full sort: keys to rank permutation, associative permute, then
//! reading the sorted keys back off the permuted ranks.
//!
//! After the permute every negative entry `-k` sits at the first rank of key
//! `k`, and every positive entry equals its own position. A negative and the
//! positives that follow it up to the next negative form one [`Block`]: a run
//! of equal keys in the sorted output.

use crate::assoc::assoc_permute_with;
use crate::buffer::{check_raw_keys, pos, KeyBuffer, Phase, Word};
use crate::error::{Error, Result};
use crate::pipeline::{self, keys_to_rank_permutation_with};
use crate::stats::{load, store, Meter, SortStats, Unmetered};

/// A run of equal keys, by 1-based rank range (inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub key_value: Word,
    pub first_rank: usize,
    pub last_rank: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.last_rank - self.first_rank + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Streaming decoder over a permuted rank array. See [`decode_blocks`].
#[derive(Debug, Clone)]
pub struct Blocks<'a> {
    buf: &'a [Word],
    at: usize,
}

impl Iterator for Blocks<'_> {
    type Item = Block;

    fn next(&mut self) -> Option<Block> {
        let start = self.at;
        let key = *self.buf.get(start)?;
        let mut end = start + 1;
        while end < self.buf.len() && self.buf[end] > 0 {
            end += 1;
        }
        self.at = end;
        Some(Block {
            key_value: -key,
            first_rank: start + 1,
            last_rank: end,
        })
    }
}

/// Yields one block per negative entry, in rank order. Unchecked: the input
/// must be the output of the associative permute on a valid rank
/// permutation.
pub fn decode_blocks(buf: &[Word]) -> Blocks<'_> {
    Blocks { buf, at: 0 }
}

pub fn decode_blocks_checked(buf: &[Word]) -> Result<Vec<Block>> {
    check_permuted_ranks(buf)?;
    Ok(decode_blocks(buf).collect())
}

fn check_permuted_ranks(buf: &[Word]) -> Result<()> {
    let n = buf.len() as Word;
    let mut last_key = 0;
    for (i, &v) in buf.iter().enumerate() {
        let ok = if v < 0 {
            let key = -v;
            let fresh = key > last_key && key <= n;
            last_key = key;
            fresh
        } else {
            i > 0 && v == pos(i)
        };
        if !ok {
            return Err(Error::MalformedPermutedRanks { index: i });
        }
    }
    Ok(())
}

/// Overwrites the permuted ranks with the sorted keys.
pub fn restore_sorted_keys(buf: &mut [Word]) {
    restore_sorted_keys_with(buf, &mut Unmetered);
}

pub fn restore_sorted_keys_checked(buf: &mut [Word]) -> Result<()> {
    check_permuted_ranks(buf)?;
    restore_sorted_keys(buf);
    Ok(())
}

pub fn restore_sorted_keys_with<M: Meter>(buf: &mut [Word], m: &mut M) {
    m.aux(3);
    let mut key = 0;
    for i in 0..buf.len() {
        let v = load(buf, i, m);
        if v < 0 {
            key = -v;
        }
        store(buf, i, key, m);
    }
}

/// Sorts keys in `[1, n]` in place with `O(1)` scratch words. Unchecked.
pub fn assoc_permuting_sort(buf: &mut [Word]) -> SortStats {
    let mut stats = SortStats::default();
    assoc_permuting_sort_with(buf, &mut stats);
    stats
}

pub fn assoc_permuting_sort_checked(buf: &mut [Word]) -> Result<SortStats> {
    check_raw_keys(buf)?;
    Ok(assoc_permuting_sort(buf))
}

/// The sort with a caller-chosen meter. Uses the fused front passes.
pub fn assoc_permuting_sort_with<M: Meter>(buf: &mut [Word], m: &mut M) {
    keys_to_rank_permutation_with(buf, true, m);
    assoc_permute_with(buf, m);
    restore_sorted_keys_with(buf, m);
}

/// Stops after the rank permutation, which uniquely encodes the placed keys.
pub fn rank_permutation(buf: &mut [Word]) -> SortStats {
    pipeline::keys_to_rank_permutation(buf, false)
}

pub fn rank_permutation_checked(buf: &mut [Word]) -> Result<()> {
    pipeline::keys_to_rank_permutation_checked(buf, false)
}

/// Snapshots of the buffer after each of the seven phases.
pub fn trace_phases(keys: &[Word]) -> Result<Vec<(Phase, Vec<Word>)>> {
    let mut kb = KeyBuffer::from_keys(keys.to_vec())?;
    let mut out = Vec::with_capacity(7);
    let steps: [fn(&mut KeyBuffer) -> Result<()>; 7] = [
        KeyBuffer::place_distinct,
        KeyBuffer::mark_representatives,
        KeyBuffer::count_duplicates,
        KeyBuffer::prefix_sum_negatives,
        KeyBuffer::assign_ranks,
        |kb| kb.assoc_permute().map(|_| ()),
        KeyBuffer::restore_sorted_keys,
    ];
    for step in steps {
        step(&mut kb)?;
        out.push((kb.phase(), kb.as_slice().to_vec()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(key_value: Word, first_rank: usize, last_rank: usize) -> Block {
        Block {
            key_value,
            first_rank,
            last_rank,
        }
    }

    #[test]
    fn decode_examples() {
        assert_eq!(
            decode_blocks_checked(&[-1, 2, -2, -3, 5]).unwrap(),
            [block(1, 1, 2), block(2, 3, 3), block(3, 4, 5)]
        );
        assert_eq!(
            decode_blocks_checked(&[-1, -2, -3]).unwrap(),
            [block(1, 1, 1), block(2, 2, 2), block(3, 3, 3)]
        );
        assert_eq!(
            decode_blocks_checked(&[-1, 2, 3]).unwrap(),
            [block(1, 1, 3)]
        );
        assert!(decode_blocks_checked(&[]).unwrap().is_empty());
    }

    #[test]
    fn malformed_permuted_ranks() {
        for (bad, index) in [
            (vec![1, -2], 0),
            (vec![-1, 3, 2], 1),
            (vec![-2, -1], 1),
            (vec![-1, -4, 3], 1),
        ] {
            assert_eq!(
                restore_sorted_keys_checked(&mut bad.clone()).unwrap_err(),
                Error::MalformedPermutedRanks { index },
                "{bad:?}"
            );
        }
    }

    #[test]
    fn restore_examples() {
        for (input, want) in [
            (vec![-1, 2, -2, -3, 5], vec![1, 1, 2, 3, 3]),
            (vec![-1, -2, -3], vec![1, 2, 3]),
            (vec![-1, 2, 3], vec![1, 1, 1]),
        ] {
            let mut buf = input;
            restore_sorted_keys_checked(&mut buf).unwrap();
            assert_eq!(buf, want);
        }
    }

    #[test]
    fn sort_examples() {
        for (input, want) in [
            (vec![3, 1, 3, 2, 1], vec![1, 1, 2, 3, 3]),
            (vec![], vec![]),
            (vec![1], vec![1]),
            (vec![5, 4, 3, 2, 1], vec![1, 2, 3, 4, 5]),
        ] {
            let mut buf = input;
            let stats = assoc_permuting_sort_checked(&mut buf).unwrap();
            assert_eq!(buf, want);
            assert!(stats.peak_aux_words <= 8);
        }
        assert!(assoc_permuting_sort_checked(&mut [2, 0]).is_err());
    }

    #[test]
    fn rank_permutation_examples() {
        for (input, want) in [
            (vec![3, 1, 3, 2, 1], vec![-1, -3, -4, 5, 2]),
            (vec![2, 3, 1], vec![-1, -2, -3]),
            (vec![1, 1, 1], vec![-1, 2, 3]),
        ] {
            let mut buf = input;
            rank_permutation_checked(&mut buf).unwrap();
            assert_eq!(buf, want);
        }
    }

    #[test]
    fn worked_trace() {
        let phases = trace_phases(&[3, 1, 3, 2, 1]).unwrap();
        let want: [(Phase, &[Word]); 7] = [
            (Phase::PlacedKeys, &[1, 2, 3, 3, 1]),
            (Phase::Marked, &[-1, -1, -1, 3, 1]),
            (Phase::Counted, &[-2, -1, -2, 3, 1]),
            (Phase::Lambda, &[-2, -3, -5, 3, 1]),
            (Phase::RankPerm, &[-1, -3, -4, 5, 2]),
            (Phase::PermutedRanks, &[-1, 2, -2, -3, 5]),
            (Phase::SortedKeys, &[1, 1, 2, 3, 3]),
        ];
        for ((phase, got), (want_phase, want_vals)) in phases.iter().zip(want) {
            assert_eq!(*phase, want_phase);
            assert_eq!(got.as_slice(), want_vals);
        }
    }
}
