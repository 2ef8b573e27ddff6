//! Keys in `[1, n]` to the sign-tagged rank permutation, in place.
//!
//! Five passes over the one buffer:
//!
//! 1. [`place_distinct`]: one copy of each present value `v` moves to slot `v`.
//! 2. [`mark_representatives`]: every home copy becomes `-1`.
//! 3. [`count_duplicates`]: each remaining copy decrements its home slot, so
//!    home slots hold the negated multiplicity.
//! 4. [`prefix_sum_negatives`]: home slots become the negated last rank.
//! 5. [`assign_ranks`]: duplicates take ranks from the top of their value's
//!    range; home slots end at the negated first rank.
//!
//! The first three can also run as one pass, [`place_mark_count_fused`],
//! with bit-identical output.

use crate::buffer::{check_raw_keys, pos, slot, Word};
use crate::error::{Error, Result};
use crate::stats::{load, store, Meter, SortStats, Unmetered};

pub fn place_distinct(buf: &mut [Word]) {
    place_distinct_with(buf, &mut Unmetered);
}

pub fn place_distinct_checked(buf: &mut [Word]) -> Result<()> {
    check_raw_keys(buf)?;
    place_distinct(buf);
    Ok(())
}

/// Swap chains: while slot `i` holds some `x != i` whose home is not yet
/// filled, exchange it with the occupant of its home. The value travelling
/// through slot `i` is kept in a register and written once at the end.
pub fn place_distinct_with<M: Meter>(buf: &mut [Word], m: &mut M) {
    m.aux(4);
    for i in 0..buf.len() {
        let mut x = load(buf, i, m);
        let mut moved = false;
        while slot(x) != i {
            let y = load(buf, slot(x), m);
            if y == x {
                break;
            }
            store(buf, slot(x), x, m);
            moved = true;
            let from_done = slot(x) < i;
            x = y;
            // a leftover from a finished slot already has its home filled
            if from_done {
                break;
            }
        }
        if moved {
            store(buf, i, x, m);
        }
    }
}

pub fn mark_representatives(buf: &mut [Word]) {
    mark_representatives_with(buf, &mut Unmetered);
}

pub fn mark_representatives_with<M: Meter>(buf: &mut [Word], m: &mut M) {
    m.aux(2);
    for i in 0..buf.len() {
        if load(buf, i, m) == pos(i) {
            store(buf, i, -1, m);
        }
    }
}

pub fn count_duplicates(buf: &mut [Word]) {
    count_duplicates_with(buf, &mut Unmetered);
}

/// Like [`count_duplicates`], but fails if a decrement would land on a slot
/// that is not a (negative) representative counter.
pub fn count_duplicates_checked(buf: &mut [Word]) -> Result<()> {
    for i in 0..buf.len() {
        let v = buf[i];
        if v > 0 {
            let target = slot(v);
            if buf[target] >= 0 {
                return Err(Error::Interference { index: i, target });
            }
            buf[target] -= 1;
        }
    }
    Ok(())
}

pub fn count_duplicates_with<M: Meter>(buf: &mut [Word], m: &mut M) {
    m.aux(3);
    for i in 0..buf.len() {
        let v = load(buf, i, m);
        if v > 0 {
            let t = load(buf, slot(v), m);
            store(buf, slot(v), t - 1, m);
        }
    }
}

pub fn prefix_sum_negatives(buf: &mut [Word]) {
    prefix_sum_negatives_with(buf, &mut Unmetered);
}

pub fn prefix_sum_negatives_with<M: Meter>(buf: &mut [Word], m: &mut M) {
    m.aux(3);
    let mut sum: Word = 0;
    for i in 0..buf.len() {
        let v = load(buf, i, m);
        if v < 0 {
            sum += v;
            store(buf, i, sum, m);
        }
    }
}

/// Order in which [`assign_ranks_with`] visits the duplicate slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanDirection {
    /// `n` down to `1`. The default.
    #[default]
    Descending,
    Ascending,
}

pub fn assign_ranks(buf: &mut [Word]) {
    assign_ranks_with(buf, ScanDirection::Descending, &mut Unmetered);
}

pub fn assign_ranks_checked(buf: &mut [Word], dir: ScanDirection) -> Result<()> {
    let n = buf.len();
    let step = |buf: &mut [Word], i: usize| -> Result<()> {
        let v = buf[i];
        if v > 0 {
            let target = slot(v);
            if buf[target] >= 0 {
                return Err(Error::Interference { index: i, target });
            }
            buf[target] += 1;
            buf[i] = -buf[target] + 1;
        }
        Ok(())
    };
    match dir {
        ScanDirection::Descending => (0..n).rev().try_for_each(|i| step(buf, i)),
        ScanDirection::Ascending => (0..n).try_for_each(|i| step(buf, i)),
    }
}

pub fn assign_ranks_with<M: Meter>(buf: &mut [Word], dir: ScanDirection, m: &mut M) {
    m.aux(3);
    let mut step = |buf: &mut [Word], i: usize| {
        let v = load(buf, i, m);
        if v > 0 {
            let lambda = load(buf, slot(v), m) + 1;
            store(buf, slot(v), lambda, m);
            store(buf, i, -lambda + 1, m);
        }
    };
    match dir {
        ScanDirection::Descending => (0..buf.len()).rev().for_each(|i| step(buf, i)),
        ScanDirection::Ascending => (0..buf.len()).for_each(|i| step(buf, i)),
    }
}

pub fn place_mark_count_fused(buf: &mut [Word]) {
    place_mark_count_fused_with(buf, &mut Unmetered);
}

/// Placement, marking and counting in a single left-to-right pass.
///
/// Performs exactly the swaps of [`place_distinct`], but marks a value's home
/// slot the moment the value arrives there, and counts each duplicate as
/// soon as it comes to rest. A duplicate pulled back out of an already
/// processed slot was counted when it first came to rest there, so it is
/// left where it lands without being counted again.
pub fn place_mark_count_fused_with<M: Meter>(buf: &mut [Word], m: &mut M) {
    m.aux(5);
    for i in 0..buf.len() {
        let mut x = load(buf, i, m);
        if x < 0 {
            // home of value i+1, already marked
            continue;
        }
        let mut moved = false;
        loop {
            if slot(x) == i {
                store(buf, i, -1, m);
                moved = false;
                break;
            }
            let y = load(buf, slot(x), m);
            if y < 0 {
                store(buf, slot(x), y - 1, m);
                break;
            }
            if y == x {
                // home filled but not reached by the scan yet
                store(buf, slot(x), -2, m);
                break;
            }
            store(buf, slot(x), -1, m);
            moved = true;
            let from_done = slot(x) < i;
            x = y;
            if from_done {
                break;
            }
        }
        if moved {
            store(buf, i, x, m);
        }
    }
}

/// Raw keys to the rank permutation. Unchecked; returns access counts.
pub fn keys_to_rank_permutation(buf: &mut [Word], fused: bool) -> SortStats {
    let mut stats = SortStats::default();
    keys_to_rank_permutation_with(buf, fused, &mut stats);
    stats
}

/// Validates the key range and checks every counter update lands on a
/// representative slot.
pub fn keys_to_rank_permutation_checked(buf: &mut [Word], fused: bool) -> Result<()> {
    check_raw_keys(buf)?;
    if fused {
        place_mark_count_fused(buf);
    } else {
        place_distinct(buf);
        mark_representatives(buf);
        count_duplicates_checked(buf)?;
    }
    prefix_sum_negatives(buf);
    assign_ranks_checked(buf, ScanDirection::Descending)
}

pub fn keys_to_rank_permutation_with<M: Meter>(buf: &mut [Word], fused: bool, m: &mut M) {
    if fused {
        place_mark_count_fused_with(buf, m);
    } else {
        place_distinct_with(buf, m);
        mark_representatives_with(buf, m);
        count_duplicates_with(buf, m);
    }
    prefix_sum_negatives_with(buf, m);
    assign_ranks_with(buf, ScanDirection::Descending, m);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(f: fn(&mut [Word]), input: &[Word]) -> Vec<Word> {
        let mut buf = input.to_vec();
        f(&mut buf);
        buf
    }

    #[test]
    fn place_examples() {
        assert_eq!(run(place_distinct, &[3, 1, 3, 2, 1]), [1, 2, 3, 3, 1]);
        assert_eq!(run(place_distinct, &[1, 2, 3]), [1, 2, 3]);
        assert_eq!(run(place_distinct, &[2, 2, 2]), [2, 2, 2]);
        assert!(matches!(
            place_distinct_checked(&mut [1, 9]),
            Err(Error::KeyOutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn mark_examples() {
        assert_eq!(
            run(mark_representatives, &[1, 2, 3, 3, 1]),
            [-1, -1, -1, 3, 1]
        );
        assert_eq!(run(mark_representatives, &[1]), [-1]);
        assert_eq!(run(mark_representatives, &[1, 2]), [-1, -1]);
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            run(count_duplicates, &[-1, -1, -1, 3, 1]),
            [-2, -1, -2, 3, 1]
        );
        assert_eq!(run(count_duplicates, &[-1]), [-1]);
        assert_eq!(run(count_duplicates, &[-1, 1, 1]), [-3, 1, 1]);
    }

    #[test]
    fn count_checked_catches_interference() {
        // slot 2 holds a duplicate, not a counter
        assert_eq!(
            count_duplicates_checked(&mut [-1, 3, 2]).unwrap_err(),
            Error::Interference {
                index: 1,
                target: 2
            }
        );
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(
            run(prefix_sum_negatives, &[-2, -1, -2, 3, 1]),
            [-2, -3, -5, 3, 1]
        );
        assert_eq!(run(prefix_sum_negatives, &[-1, -1, -1]), [-1, -2, -3]);
        assert_eq!(run(prefix_sum_negatives, &[-3, 1, 1]), [-3, 1, 1]);
    }

    #[test]
    fn assign_examples() {
        assert_eq!(run(assign_ranks, &[-2, -3, -5, 3, 1]), [-1, -3, -4, 5, 2]);
        assert_eq!(run(assign_ranks, &[-1, -2, -3]), [-1, -2, -3]);
        assert_eq!(run(assign_ranks, &[-3, 1, 1]), [-1, 2, 3]);
    }

    #[test]
    fn end_to_end_examples() {
        for fused in [false, true] {
            for (input, want) in [
                (vec![3, 1, 3, 2, 1], vec![-1, -3, -4, 5, 2]),
                (vec![2, 3, 1], vec![-1, -2, -3]),
                (vec![1, 1, 1], vec![-1, 2, 3]),
                (vec![], vec![]),
                (vec![1], vec![-1]),
            ] {
                let mut buf = input.clone();
                keys_to_rank_permutation_checked(&mut buf, fused).unwrap();
                assert_eq!(buf, want, "input {input:?}, fused {fused}");
            }
        }
    }

    #[test]
    fn fused_front_matches_unfused_front() {
        for input in [
            vec![3, 1, 3, 2, 1],
            vec![2, 2, 2],
            vec![4, 4, 1, 1],
            vec![5, 5, 5, 5, 5],
        ] {
            let mut a = input.clone();
            place_distinct(&mut a);
            mark_representatives(&mut a);
            count_duplicates(&mut a);
            let mut b = input.clone();
            place_mark_count_fused(&mut b);
            assert_eq!(a, b, "input {input:?}");
        }
    }
}
