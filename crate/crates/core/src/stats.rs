use serde::Serialize;

/// Access counters gathered while an in-place operation runs.
///
/// `peak_aux_words` is the largest number of word-sized scratch variables
/// any instrumented routine declared live at once. It never depends on `n`.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SortStats {
    pub reads: u64,
    pub writes: u64,
    pub cycles: u64,
    pub peak_aux_words: u64,
}

impl SortStats {
    pub fn accesses(&self) -> u64 {
        self.reads + self.writes
    }

    /// Folds another measurement into this one: counters add, peaks take the max.
    pub fn absorb(&mut self, other: &SortStats) {
        self.reads += other.reads;
        self.writes += other.writes;
        self.cycles += other.cycles;
        self.peak_aux_words = self.peak_aux_words.max(other.peak_aux_words);
    }
}

/// Sink for the instrumentation hooks threaded through every in-place routine.
///
/// [`SortStats`] counts; [`Unmetered`] compiles to nothing.
pub trait Meter {
    fn read(&mut self);
    fn write(&mut self);
    fn cycle(&mut self);
    /// Declares that the calling routine keeps `words` scratch words live.
    fn aux(&mut self, words: u64);
}

impl Meter for SortStats {
    #[inline(always)]
    fn read(&mut self) {
        self.reads += 1;
    }

    #[inline(always)]
    fn write(&mut self) {
        self.writes += 1;
    }

    #[inline(always)]
    fn cycle(&mut self) {
        self.cycles += 1;
    }

    #[inline(always)]
    fn aux(&mut self, words: u64) {
        self.peak_aux_words = self.peak_aux_words.max(words);
    }
}

/// A meter that records nothing. Used by the timed benchmark runs.
#[derive(Debug, Default, Clone, Copy)]
pub struct Unmetered;

impl Meter for Unmetered {
    #[inline(always)]
    fn read(&mut self) {}
    #[inline(always)]
    fn write(&mut self) {}
    #[inline(always)]
    fn cycle(&mut self) {}
    #[inline(always)]
    fn aux(&mut self, _words: u64) {}
}

#[inline(always)]
pub(crate) fn load<T: Copy, M: Meter>(buf: &[T], i: usize, m: &mut M) -> T {
    m.read();
    buf[i]
}

#[inline(always)]
pub(crate) fn store<T, M: Meter>(buf: &mut [T], i: usize, v: T, m: &mut M) {
    m.write();
    buf[i] = v;
}
