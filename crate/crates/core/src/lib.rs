//! In-place sorting of `n` integer keys in `[1, n]` in `O(n)` time with a
//! constant number of scratch words.
//!
//! The keys are rewritten, in the array that holds them, into a rank
//! permutation whose negative entries mark one representative per distinct
//! key. That permutation is then applied in a single cycle-leader sweep that
//! moves positive ranks home and inverts the negative ones at the same time
//! (the *associative permute*), after which the sorted keys can be read off
//! left to right.
//!
//! ```
//! use assoc_perm::assoc_permuting_sort;
//!
//! let mut keys = vec![3, 1, 3, 2, 1];
//! let stats = assoc_permuting_sort(&mut keys);
//! assert_eq!(keys, [1, 1, 2, 3, 3]);
//! assert!(stats.peak_aux_words <= 8);
//! ```
//!
//! Modules:
//!
//! * [`assoc`]: validity, the associative permute, sign-tagged inversion and
//!   application of plain permutations.
//! * [`pipeline`]: keys to rank permutation, step by step or fused.
//! * [`sorter`]: the end-to-end sort and block decoding.
//! * [`radix`]: MSD radix extension for wider keys.
//! * [`oracle`], [`gen`], [`bench`], [`alloc_probe`]: reference
//!   implementations, inputs, benchmarking and allocation counting.
//!
//! The guide under `book/` walks through the construction; its code blocks
//! are compiled and run as doc-tests of this crate.

pub mod alloc_probe;
pub mod assoc;
pub mod bench;
pub mod buffer;
pub mod error;
pub mod gen;
pub mod keyfile;
pub mod oracle;
pub mod pipeline;
pub mod radix;
pub mod sorter;
pub mod stats;

pub use assoc::{
    apply_permutation_in_place, assoc_permute_in_place, invert_permutation_in_place,
    validate_assoc_permutable, AssocPerm, Validity,
};
pub use buffer::{KeyBuffer, Phase, Word};
pub use error::{Error, Result};
pub use pipeline::keys_to_rank_permutation;
pub use radix::{digit_of, msd_radix_assoc_sort, RadixConfig};
pub use sorter::{
    assoc_permuting_sort, decode_blocks, rank_permutation, restore_sorted_keys, Block,
};
pub use stats::{Meter, SortStats, Unmetered};

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rank-permutation.md")]
    mod rank_permutation {}
    #[doc = include_str!("../../../book/src/associative-permute.md")]
    mod associative_permute {}
    #[doc = include_str!("../../../book/src/pipeline.md")]
    mod pipeline {}
    #[doc = include_str!("../../../book/src/sorting.md")]
    mod sorting {}
    #[doc = include_str!("../../../book/src/radix.md")]
    mod radix {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
