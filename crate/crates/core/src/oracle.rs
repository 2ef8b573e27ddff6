//! Reference constructions used to check the in-place routines.
//!
//! Nothing here is space-bounded, and nothing here calls into the pipeline
//! or the permute; the point is to be obviously right.

use crate::assoc::validate_assoc_permutable;
use crate::buffer::{check_raw_keys, Word};
use crate::error::{Error, Result};

/// Comparison-counting ranks with ties broken by index:
/// `rank[i] = 1 + #{j : k[j] < k[i]} + #{j < i : k[j] = k[i]}`. `O(n²)`.
pub fn counting_ranks_oracle(keys: &[Word]) -> Result<Vec<Word>> {
    check_raw_keys(keys)?;
    Ok(keys
        .iter()
        .enumerate()
        .map(|(i, &ki)| {
            let below = keys.iter().filter(|&&kj| kj < ki).count();
            let tied_before = keys[..i].iter().filter(|&&kj| kj == ki).count();
            (1 + below + tied_before) as Word
        })
        .collect())
}

/// Builds the placed keys and the sign-tagged rank permutation from the keys
/// and a full rank permutation, using explicit (key, rank) records.
///
/// The lowest rank of each distinct value is negated; tagged records are then
/// swapped to the slot named by their key, displaced untagged records filling
/// the vacated slots in walk order.
pub fn build_pi_p_reference(keys: &[Word], ranks: &[Word]) -> Result<(Vec<Word>, Vec<Word>)> {
    check_raw_keys(keys)?;
    let n = keys.len();
    if ranks.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: ranks.len(),
        });
    }
    // ranks must be a permutation ordering the keys non-decreasingly
    let mut by_rank = vec![0; n];
    for (&k, &r) in keys.iter().zip(ranks) {
        if r < 1 || r as usize > n || by_rank[r as usize - 1] != 0 {
            return Err(Error::InconsistentRanks);
        }
        by_rank[r as usize - 1] = k;
    }
    if by_rank.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InconsistentRanks);
    }

    let mut min_rank = vec![Word::MAX; n];
    for (&k, &r) in keys.iter().zip(ranks) {
        let m = &mut min_rank[k as usize - 1];
        *m = (*m).min(r);
    }
    let mut records: Vec<(Word, Word)> = keys
        .iter()
        .zip(ranks)
        .map(|(&k, &r)| {
            if r == min_rank[k as usize - 1] {
                (k, -r)
            } else {
                (k, r)
            }
        })
        .collect();
    for i in 0..n {
        while records[i].1 < 0 && records[i].0 as usize != i + 1 {
            let home = records[i].0 as usize - 1;
            records.swap(i, home);
        }
    }
    Ok(records.into_iter().unzip())
}

/// For each position `p` of a rank permutation, the key it stands for: `p`
/// itself at a negative entry, otherwise the home slot of the negative entry
/// whose rank range contains the positive rank.
pub fn implied_keys(pi_p: &[Word]) -> Vec<Word> {
    let n = pi_p.len();
    // key owning each rank, filled forward from the first ranks
    let mut owner = vec![0; n + 1];
    for (i, &v) in pi_p.iter().enumerate() {
        if v < 0 {
            owner[(-v) as usize] = i as Word + 1;
        }
    }
    for r in 1..=n {
        if owner[r] == 0 {
            owner[r] = owner[r - 1];
        }
    }
    pi_p.iter()
        .enumerate()
        .map(|(i, &v)| {
            if v < 0 {
                i as Word + 1
            } else {
                owner[v as usize]
            }
        })
        .collect()
}

/// The platform sort, for comparison.
pub fn reference_sort<T: Ord + Clone>(keys: &[T]) -> Vec<T> {
    let mut out = keys.to_vec();
    out.sort();
    out
}

/// True iff `after` is non-decreasing and holds the same multiset as `before`.
pub fn verify_sorted_and_multiset<T: Ord + Clone>(before: &[T], after: &[T]) -> bool {
    before.len() == after.len()
        && after.windows(2).all(|w| w[0] <= w[1])
        && reference_sort(before) == after
}

/// Calls `f` on every array in `[1, n]^n`, in lexicographic order.
pub fn for_each_key_array(n: usize, mut f: impl FnMut(&[Word])) {
    let mut keys = vec![1 as Word; n];
    loop {
        f(&keys);
        // odometer increment
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if (keys[i] as usize) < n {
                keys[i] += 1;
                break;
            }
            keys[i] = 1;
        }
    }
}

/// Calls `f` on every associatively permutable array of length `n`, found by
/// filtering all `n! · 2^n` signed permutations through the validator.
pub fn for_each_assoc_permutable(n: usize, mut f: impl FnMut(&[Word])) {
    let mut perm: Vec<Word> = (1..=n as Word).collect();
    let mut signed = vec![0; n];
    loop {
        for mask in 0u32..(1 << n) {
            for (i, (&p, s)) in perm.iter().zip(signed.iter_mut()).enumerate() {
                *s = if mask >> i & 1 == 1 { -p } else { p };
            }
            if validate_assoc_permutable(&signed).is_valid() {
                f(&signed);
            }
        }
        if !next_permutation(&mut perm) {
            return;
        }
    }
}

fn next_permutation(v: &mut [Word]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
