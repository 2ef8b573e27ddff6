//! Unstable in-place MSD radix sort with `⌈log₂ n⌉`-bit digits, for keys in
//! `[1, 2^key_bits]` with `key_bits ≤ 63`.
//!
//! Keys are stored as `key - 1`, which leaves bit 63 free in every word. Each
//! level sorts every run of keys sharing the bits above the current digit.
//! Within a run of length `m` the digit is sorted with the same machinery as
//! the small-key sort:
//!
//! * the run's *region* is every bit from the digit's low end up to bit 62.
//!   Above the digit those bits are a prefix shared by the whole run, so
//!   after sorting they can be rewritten from one saved word;
//! * one key per distinct digit `d` moves to run slot `d - min`, gets bit 63
//!   set as its tag, and its region is reused as a counter;
//! * counters become last ranks, untagged keys take ranks into their region,
//!   and the associative permute moves everything into place;
//! * a final sweep rewrites every region from the block it landed in.
//!
//! Only the region is overwritten; the bits below it ride along untouched.
//! This needs the digit span in the run to be at most `m` and the region to
//! hold `m - 1`. When the span is larger, the top part of the digit is sorted
//! this way and the few remaining low digit bits are finished by binary
//! exchange inside each block. Runs shorter than
//! [`RadixConfig::small_run`] are insertion-sorted.

use crate::error::{Error, Result};
use crate::stats::{load, store, Meter, SortStats};

const TAG: u64 = 1 << 63;

/// Scratch words held by the deepest nest of loops below.
const RADIX_AUX_WORDS: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadixConfig {
    /// Keys lie in `[1, 2^key_bits]`.
    pub key_bits: u32,
    /// `⌈log₂ n⌉` of the full input, at least 1.
    pub digit_bits: u32,
    pub word_bits: u32,
    /// Runs shorter than this are insertion-sorted.
    pub small_run: usize,
}

impl RadixConfig {
    pub const DEFAULT_SMALL_RUN: usize = 16;

    pub fn new(n: usize, key_bits: u32) -> Result<Self> {
        let word_bits = u64::BITS;
        if key_bits > word_bits - 1 {
            return Err(Error::InvalidConfig(format!(
                "key_bits {key_bits} exceeds {}",
                word_bits - 1
            )));
        }
        Ok(RadixConfig {
            key_bits,
            digit_bits: ceil_log2(n as u64).max(1),
            word_bits,
            small_run: Self::DEFAULT_SMALL_RUN,
        })
    }

    /// Smallest `key_bits` covering every key.
    pub fn for_keys(keys: &[u64]) -> Result<Self> {
        let max = keys.iter().copied().max().unwrap_or(1);
        if max == 0 {
            return Err(Error::KeyOutOfRange {
                index: keys.iter().position(|&k| k == 0).unwrap_or(0),
                value: 0,
                max: 1,
            });
        }
        Self::new(keys.len(), ceil_log2(max))
    }

    pub fn with_small_run(mut self, small_run: usize) -> Self {
        self.small_run = small_run;
        self
    }

    pub fn digit_count(&self) -> u32 {
        self.key_bits.div_ceil(self.digit_bits)
    }

    /// Bit range `[lo, hi)` of `key - 1` holding digit `level`.
    fn digit_range(&self, level: u32) -> (u32, u32) {
        let hi = self.key_bits - level * self.digit_bits;
        (hi.saturating_sub(self.digit_bits), hi)
    }
}

/// `⌈log₂ x⌉`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        u64::BITS - (x - 1).leading_zeros()
    }
}

/// Digit `level` of `key`, counted from the most significant, as a value in
/// `[1, 2^digit_bits]`. The last digit is narrower when `digit_bits` does not
/// divide `key_bits`.
pub fn digit_of(key: u64, level: u32, cfg: &RadixConfig) -> u64 {
    let (lo, hi) = cfg.digit_range(level);
    ((key - 1) >> lo & mask(hi - lo)) + 1
}

#[inline(always)]
fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

pub fn msd_radix_assoc_sort(buf: &mut [u64], cfg: &RadixConfig) -> SortStats {
    let mut stats = SortStats::default();
    msd_radix_assoc_sort_with(buf, cfg, &mut stats);
    stats
}

pub fn msd_radix_assoc_sort_checked(buf: &mut [u64], cfg: &RadixConfig) -> Result<SortStats> {
    if cfg.key_bits > cfg.word_bits - 1 || cfg.digit_bits == 0 {
        return Err(Error::InvalidConfig(format!("{cfg:?}")));
    }
    let max = 1u64 << cfg.key_bits;
    if let Some(i) = buf.iter().position(|&k| k == 0 || k > max) {
        return Err(Error::KeyOutOfRange {
            index: i,
            value: buf[i] as i128,
            max: max as i128,
        });
    }
    Ok(msd_radix_assoc_sort(buf, cfg))
}

pub fn msd_radix_assoc_sort_with<M: Meter>(buf: &mut [u64], cfg: &RadixConfig, m: &mut M) {
    let n = buf.len();
    if n < 2 {
        return;
    }
    m.aux(RADIX_AUX_WORDS);
    for i in 0..n {
        let x = load(buf, i, m);
        store(buf, i, x - 1, m);
    }
    for level in 0..cfg.digit_count() {
        let (lo, hi) = cfg.digit_range(level);
        let mut a = 0;
        while a < n {
            let prefix = load(buf, a, m) >> hi;
            let mut b = a + 1;
            while b < n && load(buf, b, m) >> hi == prefix {
                b += 1;
            }
            let run = &mut buf[a..b];
            if run.len() >= 2 {
                if run.len() < cfg.small_run {
                    insertion_sort(run, m);
                } else {
                    sort_run(run, lo, hi, cfg.small_run, m);
                }
            }
            a = b;
        }
    }
    for i in 0..n {
        let x = load(buf, i, m);
        store(buf, i, x + 1, m);
    }
}

// Sorts a run (all keys equal above `hi`) by bits [lo, hi).
fn sort_run<M: Meter>(run: &mut [u64], lo: u32, hi: u32, small_run: usize, m: &mut M) {
    let len = run.len();
    let (mut umin, mut umax) = (u64::MAX, 0);
    for i in 0..len {
        let u = load(run, i, m) >> lo;
        umin = umin.min(u);
        umax = umax.max(u);
    }
    // drop low digit bits until the remaining span fits in the run
    let mut shift = 0;
    while (umax >> shift) - (umin >> shift) >= len as u64 {
        shift += 1;
    }
    let r = lo + shift;
    if (len as u64 - 1) >> (63 - r) != 0 {
        exchange_sort(run, lo, hi, m);
        return;
    }
    if umax >> shift != umin >> shift {
        region_sort(run, r, umin >> shift, m);
    }
    if shift == 0 {
        return;
    }
    let mut a = 0;
    while a < len {
        let top = load(run, a, m) >> r;
        let mut b = a + 1;
        while b < len && load(run, b, m) >> r == top {
            b += 1;
        }
        let piece = &mut run[a..b];
        if piece.len() >= 2 {
            if piece.len() < small_run {
                insertion_sort(piece, m);
            } else {
                exchange_sort(piece, lo, r, m);
            }
        }
        a = b;
    }
}

/// Sorts `run` by `x >> r`, given that `x >> r - base` lies in `[0, len)` for
/// every key and that bits `[r, 63)` can hold `len - 1`.
fn region_sort<M: Meter>(run: &mut [u64], r: u32, base: u64, m: &mut M) {
    let len = run.len();
    let low = mask(r);
    let one = 1u64 << r;
    let val = |x: u64| (x & !TAG) >> r;
    let digit = |x: u64| (val(x) - base) as usize;
    let with_val = |x: u64, v: u64| (x & low) | v << r;
    let tagged = |x: u64| x & TAG != 0;

    // place one key per digit at its slot, tag it, and count the rest;
    // counters hold count - 1
    for i in 0..len {
        let mut x = load(run, i, m);
        if tagged(x) {
            continue;
        }
        let mut moved = false;
        loop {
            let d = digit(x);
            if d == i {
                store(run, i, TAG | with_val(x, 0), m);
                moved = false;
                break;
            }
            let y = load(run, d, m);
            if tagged(y) {
                store(run, d, y + one, m);
                break;
            }
            if digit(y) == d {
                store(run, d, TAG | with_val(y, 1), m);
                break;
            }
            store(run, d, TAG | with_val(x, 0), m);
            moved = true;
            x = y;
            // leftovers from finished slots were counted when they came to rest
            if d < i {
                break;
            }
        }
        if moved {
            store(run, i, x, m);
        }
    }

    // counts to 0-based last ranks
    let mut sum = 0;
    for i in 0..len {
        let y = load(run, i, m);
        if tagged(y) {
            sum += val(y) + 1;
            store(run, i, TAG | with_val(y, sum - 1), m);
        }
    }

    // untagged keys take ranks from the top of their digit's range
    for i in (0..len).rev() {
        let x = load(run, i, m);
        if !tagged(x) {
            let d = digit(x);
            let y = load(run, d, m);
            store(run, d, y - one, m);
            store(run, i, with_val(x, val(y)), m);
        }
    }

    // associative permute on the regions
    for lead in 0..len {
        let x = load(run, lead, m);
        if tagged(x) || val(x) as usize == lead {
            continue;
        }
        m.cycle();
        let mut at = lead;
        let mut carried = x;
        loop {
            let dest = val(carried) as usize;
            let out = if tagged(carried) {
                TAG | with_val(carried, at as u64)
            } else {
                carried
            };
            if dest == lead {
                store(run, dest, out, m);
                break;
            }
            let next = load(run, dest, m);
            store(run, dest, out, m);
            at = dest;
            carried = next;
        }
    }

    // every slot takes the digit of the block it is in
    let mut d = 0;
    for i in 0..len {
        let x = load(run, i, m);
        if tagged(x) {
            d = val(x);
        }
        store(run, i, with_val(x, d + base), m);
    }
}

// Binary MSD exchange on bits [lo, hi), one bit at a time, splitting every
// run of keys that agree above the current bit.
fn exchange_sort<M: Meter>(run: &mut [u64], lo: u32, hi: u32, m: &mut M) {
    let len = run.len();
    for bit in (lo..hi).rev() {
        let mut a = 0;
        while a < len {
            let above = load(run, a, m) >> bit >> 1;
            let mut b = a + 1;
            while b < len && load(run, b, m) >> bit >> 1 == above {
                b += 1;
            }
            let (mut i, mut j) = (a, b);
            while i < j {
                let x = load(run, i, m);
                if x >> bit & 1 == 0 {
                    i += 1;
                    continue;
                }
                let y = load(run, j - 1, m);
                if y >> bit & 1 == 1 {
                    j -= 1;
                    continue;
                }
                store(run, i, y, m);
                store(run, j - 1, x, m);
                i += 1;
                j -= 1;
            }
            a = b;
        }
    }
}

fn insertion_sort<M: Meter>(run: &mut [u64], m: &mut M) {
    for i in 1..run.len() {
        let x = load(run, i, m);
        let mut j = i;
        while j > 0 {
            let y = load(run, j - 1, m);
            if y <= x {
                break;
            }
            store(run, j, y, m);
            j -= 1;
        }
        if j != i {
            store(run, j, x, m);
        }
    }
}
