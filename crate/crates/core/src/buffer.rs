//! The single signed-word array every phase of the sort rewrites in place.

use crate::error::{out_of_range, Error, Result};
use crate::stats::SortStats;
use crate::{assoc, pipeline, sorter};

/// Signed machine word. Buffers of length `n` hold values in `[-n, n]`.
pub type Word = isize;

/// What the contents of a [`KeyBuffer`] currently mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Keys, each in `[1, n]`.
    RawKeys,
    /// One copy of every present value `v` sits at position `v`.
    PlacedKeys,
    /// Home copies replaced by `-1`.
    Marked,
    /// Home slots hold the negated multiplicity of their value.
    Counted,
    /// Home slots hold the negated last rank of their value.
    Lambda,
    /// Sign-tagged rank permutation: home slots hold the negated first rank,
    /// duplicate slots their positive rank.
    RankPerm,
    /// After the associative permute: blocks led by `-key`.
    PermutedRanks,
    /// Non-decreasing keys.
    SortedKeys,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::RawKeys => "RawKeys",
            Phase::PlacedKeys => "PlacedKeys",
            Phase::Marked => "Marked",
            Phase::Counted => "Counted",
            Phase::Lambda => "Lambda",
            Phase::RankPerm => "RankPerm",
            Phase::PermutedRanks => "PermutedRanks",
            Phase::SortedKeys => "SortedKeys",
        }
    }
}

/// Owns the key array and tracks which phase it is in.
///
/// The phase tag is one word of metadata; no per-element space is used.
/// Every method checks the phase it expects and the input invariants, so
/// this is the checked front door. The free functions in [`crate::pipeline`],
/// [`crate::assoc`] and [`crate::sorter`] are the unchecked fast path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyBuffer {
    data: Vec<Word>,
    phase: Phase,
}

impl KeyBuffer {
    /// Wraps raw keys, rejecting any outside `[1, n]`.
    pub fn from_keys(keys: Vec<Word>) -> Result<Self> {
        check_raw_keys(&keys)?;
        Ok(KeyBuffer {
            data: keys,
            phase: Phase::RawKeys,
        })
    }

    /// Wraps an array already in `phase` without validating its contents.
    pub fn from_parts(data: Vec<Word>, phase: Phase) -> Self {
        KeyBuffer { data, phase }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Word] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Word> {
        self.data
    }

    fn expect(&self, expected: Phase) -> Result<()> {
        if self.phase == expected {
            Ok(())
        } else {
            Err(Error::PhaseMismatch {
                expected,
                found: self.phase,
            })
        }
    }

    pub fn place_distinct(&mut self) -> Result<()> {
        self.expect(Phase::RawKeys)?;
        pipeline::place_distinct(&mut self.data);
        self.phase = Phase::PlacedKeys;
        Ok(())
    }

    pub fn mark_representatives(&mut self) -> Result<()> {
        self.expect(Phase::PlacedKeys)?;
        pipeline::mark_representatives(&mut self.data);
        self.phase = Phase::Marked;
        Ok(())
    }

    pub fn count_duplicates(&mut self) -> Result<()> {
        self.expect(Phase::Marked)?;
        pipeline::count_duplicates_checked(&mut self.data)?;
        self.phase = Phase::Counted;
        Ok(())
    }

    pub fn prefix_sum_negatives(&mut self) -> Result<()> {
        self.expect(Phase::Counted)?;
        pipeline::prefix_sum_negatives(&mut self.data);
        self.phase = Phase::Lambda;
        Ok(())
    }

    pub fn assign_ranks(&mut self) -> Result<()> {
        self.expect(Phase::Lambda)?;
        pipeline::assign_ranks_checked(&mut self.data, pipeline::ScanDirection::Descending)?;
        self.phase = Phase::RankPerm;
        Ok(())
    }

    /// Runs all five key-to-rank steps, optionally fusing the first three.
    pub fn to_rank_permutation(&mut self, fused: bool) -> Result<()> {
        self.expect(Phase::RawKeys)?;
        pipeline::keys_to_rank_permutation(&mut self.data, fused);
        self.phase = Phase::RankPerm;
        Ok(())
    }

    pub fn assoc_permute(&mut self) -> Result<SortStats> {
        self.expect(Phase::RankPerm)?;
        let stats = assoc::assoc_permute_checked(&mut self.data)?;
        self.phase = Phase::PermutedRanks;
        Ok(stats)
    }

    pub fn decode_blocks(&self) -> Result<Vec<sorter::Block>> {
        self.expect(Phase::PermutedRanks)?;
        sorter::decode_blocks_checked(&self.data)
    }

    pub fn restore_sorted_keys(&mut self) -> Result<()> {
        self.expect(Phase::PermutedRanks)?;
        sorter::restore_sorted_keys_checked(&mut self.data)?;
        self.phase = Phase::SortedKeys;
        Ok(())
    }

    /// Raw keys straight to sorted keys.
    pub fn sort(&mut self) -> Result<SortStats> {
        self.expect(Phase::RawKeys)?;
        let stats = sorter::assoc_permuting_sort(&mut self.data);
        self.phase = Phase::SortedKeys;
        Ok(stats)
    }
}

/// Checks that a buffer's length admits `[-n, n]` and that every key is in `[1, n]`.
pub fn check_raw_keys(keys: &[Word]) -> Result<()> {
    let n = keys.len();
    if n > Word::MAX as usize {
        return Err(Error::TooLong(n));
    }
    match keys.iter().position(|&k| k < 1 || k as usize > n) {
        Some(i) => Err(out_of_range(i, keys[i], n)),
        None => Ok(()),
    }
}

/// Slot holding logical value `v` (values are 1-based, storage is 0-based).
#[inline(always)]
pub(crate) fn slot(v: Word) -> usize {
    (v - 1) as usize
}

/// Logical 1-based position of storage index `i`.
#[inline(always)]
pub(crate) fn pos(i: usize) -> Word {
    i as Word + 1
}
