//! Associatively permutable permutations and the in-place permute that
//! moves positive entries home while inverting the negative ones.
//!
//! A signed array `π` of length `n` is *associatively permutable* when the
//! absolute values are a permutation of `1..=n` and the negative entries,
//! read left to right, strictly increase in absolute value. Permuting it
//! sends every positive `π[i]` to position `π[i]` and every negative
//! `π[i] = -v` to position `v`, where it is stored as `-i`: the positives are
//! applied, the negatives inverted, in one cycle-leader sweep.
//!
//! Also here: sign-tagged in-place inversion and application of ordinary
//! permutations.

use crate::buffer::{pos, slot, Word};
use crate::error::{Error, Result};
use crate::stats::{load, store, Meter, SortStats};

/// Outcome of [`validate_assoc_permutable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity {
    /// Valid, with this many negative entries.
    Valid(usize),
    NotPermutation,
    NegativesOutOfOrder,
}

impl Validity {
    pub fn is_valid(self) -> bool {
        matches!(self, Validity::Valid(_))
    }
}

/// Full validity check. Uses `O(n)` scratch for the permutation clause.
pub fn validate_assoc_permutable(buf: &[Word]) -> Validity {
    let n = buf.len();
    let mut seen = vec![false; n];
    for &v in buf {
        let a = v.unsigned_abs();
        if a == 0 || a > n || seen[a - 1] {
            return Validity::NotPermutation;
        }
        seen[a - 1] = true;
    }
    if !negatives_in_order(buf) {
        return Validity::NegativesOutOfOrder;
    }
    Validity::Valid(buf.iter().filter(|&&v| v < 0).count())
}

/// Streaming check of the ordering clause alone, in `O(1)` space.
pub fn negatives_in_order(buf: &[Word]) -> bool {
    let mut last = 0usize;
    for &v in buf.iter().filter(|&&v| v < 0) {
        let a = v.unsigned_abs();
        if a <= last {
            return false;
        }
        last = a;
    }
    true
}

/// A validated associatively permutable array.
#[derive(Debug)]
pub struct AssocPerm<'a> {
    buf: &'a mut [Word],
    neg_count: usize,
}

impl<'a> AssocPerm<'a> {
    pub fn new(buf: &'a mut [Word]) -> Result<Self> {
        match validate_assoc_permutable(buf) {
            Validity::Valid(neg_count) => Ok(AssocPerm { buf, neg_count }),
            Validity::NotPermutation => Err(Error::NotPermutation),
            Validity::NegativesOutOfOrder => Err(Error::NegativesOutOfOrder),
        }
    }

    pub fn neg_count(&self) -> usize {
        self.neg_count
    }

    pub fn as_slice(&self) -> &[Word] {
        self.buf
    }

    pub fn permute_in_place(self) -> SortStats {
        assoc_permute_in_place(self.buf)
    }
}

/// Associative permute, unchecked. Returns access counts.
///
/// The input must be associatively permutable; otherwise the result is
/// unspecified, but indexing stays bounds-checked and every cycle walk stops
/// after at most `n` steps.
pub fn assoc_permute_in_place(buf: &mut [Word]) -> SortStats {
    let mut stats = SortStats::default();
    assoc_permute_with(buf, &mut stats);
    stats
}

/// Validates, then permutes.
pub fn assoc_permute_checked(buf: &mut [Word]) -> Result<SortStats> {
    Ok(AssocPerm::new(buf)?.permute_in_place())
}

pub fn assoc_permute_with<M: Meter>(buf: &mut [Word], m: &mut M) {
    m.aux(6);
    for lead in 0..buf.len() {
        let v = load(buf, lead, m);
        if v > 0 && slot(v) != lead {
            walk_cycle(buf, lead, v, m);
        }
    }
}

/// Same post-state as [`assoc_permute_in_place`], but cycles are led in the
/// given index order. Indices that are not eligible leads are skipped.
#[doc(hidden)]
pub fn assoc_permute_with_leads<I>(buf: &mut [Word], leads: I)
where
    I: IntoIterator<Item = usize>,
{
    let mut m = crate::stats::Unmetered;
    for lead in leads {
        let v = buf[lead];
        if v > 0 && slot(v) != lead {
            walk_cycle(buf, lead, v, &mut m);
        }
    }
}

// One cycle starting from a positive, non-fixed entry. The carried value
// goes to |carried|; a positive is written as-is, a negative is written as
// the negated position it came from.
#[inline(always)]
fn walk_cycle<M: Meter>(buf: &mut [Word], lead: usize, first: Word, m: &mut M) {
    m.cycle();
    let mut at = lead;
    let mut carried = first;
    // a valid cycle closes within n steps; the bound only matters on bad input
    for _ in 0..buf.len() {
        let dest = slot(carried.abs());
        let out = if carried > 0 { carried } else { -pos(at) };
        if dest == lead {
            store(buf, dest, out, m);
            return;
        }
        let next = load(buf, dest, m);
        store(buf, dest, out, m);
        at = dest;
        carried = next;
    }
}

fn check_permutation(buf: &[Word]) -> Result<()> {
    let n = buf.len();
    let mut seen = vec![false; n];
    for &v in buf {
        if v < 1 || v as usize > n || seen[slot(v)] {
            return Err(Error::NotPermutation);
        }
        seen[slot(v)] = true;
    }
    Ok(())
}

/// Replaces a permutation of `1..=n` by its inverse, using the sign bits of
/// the array itself as visited tags.
pub fn invert_permutation_in_place(buf: &mut [Word]) -> SortStats {
    let mut stats = SortStats::default();
    invert_permutation_with(buf, &mut stats);
    stats
}

pub fn invert_permutation_checked(buf: &mut [Word]) -> Result<SortStats> {
    check_permutation(buf)?;
    Ok(invert_permutation_in_place(buf))
}

pub fn invert_permutation_with<M: Meter>(buf: &mut [Word], m: &mut M) {
    m.aux(4);
    for i in 0..buf.len() {
        let first = load(buf, i, m);
        if first < 0 {
            continue;
        }
        m.cycle();
        // buf[cur] = next means cur -> next; store -prev at cur so that the
        // inverse maps cur -> prev, and the sign marks cur as done.
        let mut prev = i;
        let mut cur = slot(first);
        while cur != i {
            let next = load(buf, cur, m);
            store(buf, cur, -pos(prev), m);
            prev = cur;
            cur = slot(next);
        }
        store(buf, i, -pos(prev), m);
    }
    for i in 0..buf.len() {
        let v = load(buf, i, m);
        store(buf, i, -v, m);
    }
}

/// Moves `data[i]` to position `perm[i]` for every `i`.
///
/// `perm` is tagged with signs while cycles are walked and restored exactly
/// before returning.
pub fn apply_permutation_in_place<T: Copy>(data: &mut [T], perm: &mut [Word]) -> SortStats {
    let mut stats = SortStats::default();
    apply_permutation_with(data, perm, &mut stats);
    stats
}

pub fn apply_permutation_checked<T: Copy>(data: &mut [T], perm: &mut [Word]) -> Result<SortStats> {
    if data.len() != perm.len() {
        return Err(Error::LengthMismatch {
            left: data.len(),
            right: perm.len(),
        });
    }
    check_permutation(perm)?;
    Ok(apply_permutation_in_place(data, perm))
}

pub fn apply_permutation_with<T: Copy, M: Meter>(data: &mut [T], perm: &mut [Word], m: &mut M) {
    assert_eq!(data.len(), perm.len(), "data and perm lengths differ");
    m.aux(5);
    for i in 0..perm.len() {
        let p = load(perm, i, m);
        if p < 0 {
            continue;
        }
        m.cycle();
        store(perm, i, -p, m);
        let mut carried = load(data, i, m);
        let mut j = slot(p);
        while j != i {
            let displaced = load(data, j, m);
            store(data, j, carried, m);
            carried = displaced;
            let q = load(perm, j, m);
            store(perm, j, -q, m);
            j = slot(q);
        }
        store(data, i, carried, m);
    }
    for i in 0..perm.len() {
        let p = load(perm, i, m);
        store(perm, i, -p, m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity_examples() {
        assert_eq!(
            validate_assoc_permutable(&[-2, -1]),
            Validity::NegativesOutOfOrder
        );
        assert_eq!(validate_assoc_permutable(&[1, 1]), Validity::NotPermutation);
        assert_eq!(
            validate_assoc_permutable(&[-1, -3, -4, 5, 2]),
            Validity::Valid(3)
        );
        assert_eq!(validate_assoc_permutable(&[]), Validity::Valid(0));
        assert_eq!(validate_assoc_permutable(&[0]), Validity::NotPermutation);
        assert_eq!(
            validate_assoc_permutable(&[Word::MIN]),
            Validity::NotPermutation
        );
        assert!(!negatives_in_order(&[-2, -1]));
        assert!(negatives_in_order(&[3, -1, -2, 4]));
    }

    #[test]
    fn permute_examples() {
        let cases: &[(&[Word], &[Word])] = &[
            (&[3, -1, -2, 4], &[-2, -3, 3, 4]),
            (&[-1, -2, -3], &[-1, -2, -3]),
            (&[-1, -3, -4, 5, 2], &[-1, 2, -2, -3, 5]),
            (&[1, 2, 3], &[1, 2, 3]),
            (&[], &[]),
            (&[1], &[1]),
            (&[-1], &[-1]),
        ];
        for (input, want) in cases {
            let mut buf = input.to_vec();
            assoc_permute_checked(&mut buf).unwrap();
            assert_eq!(&buf, want, "input {input:?}");
        }
    }

    #[test]
    fn checked_permute_rejects_invalid() {
        assert_eq!(
            assoc_permute_checked(&mut [-2, -1]).unwrap_err(),
            Error::NegativesOutOfOrder
        );
        assert_eq!(
            assoc_permute_checked(&mut [2, 2]).unwrap_err(),
            Error::NotPermutation
        );
    }

    #[test]
    fn permute_counts_cycles_and_aux() {
        let mut buf = vec![-1, -3, -4, 5, 2];
        let stats = assoc_permute_in_place(&mut buf);
        assert_eq!(stats.cycles, 1);
        assert!(stats.peak_aux_words <= 8);
        // 5 scan reads, 3 displacement reads, 4 writes
        assert_eq!((stats.reads, stats.writes), (8, 4));
    }

    #[test]
    fn invert_examples() {
        for (input, want) in [
            (vec![2, 3, 1], vec![3, 1, 2]),
            (vec![1, 2, 3], vec![1, 2, 3]),
            (vec![2, 1], vec![2, 1]),
            (vec![], vec![]),
        ] {
            let mut buf = input.clone();
            invert_permutation_checked(&mut buf).unwrap();
            assert_eq!(buf, want, "input {input:?}");
        }
        assert_eq!(
            invert_permutation_checked(&mut [1, 1]).unwrap_err(),
            Error::NotPermutation
        );
    }

    #[test]
    fn apply_examples() {
        let mut data = [10, 20, 30];
        let mut perm = [2, 3, 1];
        apply_permutation_checked(&mut data, &mut perm).unwrap();
        assert_eq!(data, [30, 10, 20]);
        assert_eq!(perm, [2, 3, 1]);

        let mut data = [7];
        apply_permutation_checked(&mut data, &mut [1]).unwrap();
        assert_eq!(data, [7]);

        let mut data = [5, 6];
        apply_permutation_checked(&mut data, &mut [2, 1]).unwrap();
        assert_eq!(data, [6, 5]);

        assert!(matches!(
            apply_permutation_checked(&mut [1, 2], &mut [1]),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(
            apply_permutation_checked(&mut [1, 2], &mut [2, 3]).unwrap_err(),
            Error::NotPermutation
        );
    }
}
