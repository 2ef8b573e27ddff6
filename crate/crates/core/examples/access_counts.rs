//! Reads+writes per key for the sort and the radix extension.
//!
//! cargo run --release -p assoc-perm --example access_counts

use assoc_perm::gen::{generate_input, Distribution, InputSpec};
use assoc_perm::{assoc_permuting_sort, msd_radix_assoc_sort, RadixConfig};

fn main() {
    for shift in [10, 14, 18, 20] {
        let n = 1usize << shift;
        for d in [
            Distribution::Uniform,
            Distribution::Permutation,
            Distribution::AllEqual,
            Distribution::FewDistinct(n / 20),
            Distribution::Sorted,
        ] {
            let keys = generate_input(&InputSpec::new(n, d, 0)).unwrap();
            let mut k = keys.clone();
            let s = assoc_permuting_sort(&mut k);
            let mut u: Vec<u64> = keys.iter().map(|&x| x as u64).collect();
            let r = msd_radix_assoc_sort(&mut u, &RadixConfig::new(n, shift).unwrap());
            println!(
                "n=2^{shift:<2} {:<18} assoc {:.3}·n (aux {})  radix {:.3}·n (aux {})",
                d.to_string(),
                s.accesses() as f64 / n as f64,
                s.peak_aux_words,
                r.accesses() as f64 / n as f64,
                r.peak_aux_words
            );
        }
    }
}
