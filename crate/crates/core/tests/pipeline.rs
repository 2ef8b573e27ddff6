use assoc_perm::gen::{generate_input, Distribution, InputSpec};
use assoc_perm::oracle::{counting_ranks_oracle, implied_keys, reference_sort};
use assoc_perm::pipeline::{
    assign_ranks_checked, assign_ranks_with, count_duplicates, keys_to_rank_permutation,
    keys_to_rank_permutation_checked, mark_representatives, place_distinct, place_mark_count_fused,
    prefix_sum_negatives, ScanDirection,
};
use assoc_perm::sorter::{decode_blocks_checked, restore_sorted_keys_checked, trace_phases};
use assoc_perm::{
    assoc_permute_in_place, assoc_permuting_sort, decode_blocks, restore_sorted_keys, Error,
    KeyBuffer, Phase, Unmetered,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_keys(rng: &mut ChaCha8Rng) -> Vec<isize> {
    let n = rng.gen_range(1..300);
    let hi = rng.gen_range(1..=n) as isize;
    (0..n).map(|_| rng.gen_range(1..=hi)).collect()
}

#[test]
fn fused_equals_unfused_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let keys = random_keys(&mut rng);
        let mut a = keys.clone();
        place_mark_count_fused(&mut a);
        let mut b = keys.clone();
        place_distinct(&mut b);
        mark_representatives(&mut b);
        count_duplicates(&mut b);
        assert_eq!(a, b, "{keys:?}");
    }
}

#[test]
fn scan_direction_changes_only_duplicate_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2000 {
        let keys = random_keys(&mut rng);
        let mut pre = keys.clone();
        place_mark_count_fused(&mut pre);
        prefix_sum_negatives(&mut pre);

        let mut down = pre.clone();
        let mut up = pre.clone();
        assign_ranks_with(&mut down, ScanDirection::Descending, &mut Unmetered);
        assign_ranks_with(&mut up, ScanDirection::Ascending, &mut Unmetered);
        let negs = |p: &[isize]| p.iter().map(|&v| v.min(0)).collect::<Vec<_>>();
        assert_eq!(negs(&down), negs(&up));
        assert_eq!(implied_keys(&down), implied_keys(&up));

        let mut c = pre.clone();
        assign_ranks_checked(&mut c, ScanDirection::Ascending).unwrap();
        assert_eq!(c, up);

        for mut p in [down, up] {
            assoc_permute_in_place(&mut p);
            restore_sorted_keys(&mut p);
            assert_eq!(p, reference_sort(&keys));
        }
    }
}

#[test]
fn rank_multiset_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let keys = random_keys(&mut rng);
        let mut pi = keys.clone();
        keys_to_rank_permutation(&mut pi, true);
        let mut abs: Vec<isize> = pi.iter().map(|v| v.abs()).collect();
        abs.sort();
        let mut want = counting_ranks_oracle(&keys).unwrap();
        want.sort();
        assert_eq!(abs, want);
    }
}

#[test]
fn blocks_cover_sorted_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..2000 {
        let keys = random_keys(&mut rng);
        let mut p = keys.clone();
        keys_to_rank_permutation(&mut p, true);
        assoc_permute_in_place(&mut p);
        let blocks = decode_blocks_checked(&p).unwrap();
        assert_eq!(blocks, decode_blocks(&p).collect::<Vec<_>>());

        let expanded: Vec<isize> = blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.key_value, b.len()))
            .collect();
        let sorted = reference_sort(&keys);
        assert_eq!(expanded, sorted);
        assert!(blocks
            .windows(2)
            .all(|w| w[0].last_rank + 1 == w[1].first_rank));

        restore_sorted_keys_checked(&mut p).unwrap();
        assert_eq!(p, sorted);
    }
}

#[test]
fn malformed_permuted_ranks_are_rejected() {
    assert!(matches!(
        decode_blocks_checked(&[1]),
        Err(Error::MalformedPermutedRanks { index: 0 })
    ));
    assert!(decode_blocks_checked(&[-1, 3, -2]).is_err());
    assert!(decode_blocks_checked(&[-2, 2, -1]).is_err());
    assert!(restore_sorted_keys_checked(&mut [-1, -1]).is_err());
    assert_eq!(decode_blocks_checked(&[]).unwrap(), vec![]);
}

#[test]
fn checked_pipeline_rejects_bad_keys() {
    assert!(matches!(
        keys_to_rank_permutation_checked(&mut [1, 4, 2], true),
        Err(Error::KeyOutOfRange { index: 1, .. })
    ));
    assert!(keys_to_rank_permutation_checked(&mut [0], false).is_err());
    let mut ok = vec![2, 2, 1];
    keys_to_rank_permutation_checked(&mut ok, false).unwrap();
    assert_eq!(ok, [-1, -2, 3]);
}

#[test]
fn key_buffer_enforces_phase_order() {
    let mut b = KeyBuffer::from_keys(vec![3, 1, 3, 2, 1]).unwrap();
    assert!(matches!(
        b.assoc_permute(),
        Err(Error::PhaseMismatch { .. })
    ));
    b.place_distinct().unwrap();
    b.mark_representatives().unwrap();
    b.count_duplicates().unwrap();
    b.prefix_sum_negatives().unwrap();
    b.assign_ranks().unwrap();
    assert_eq!(b.phase(), Phase::RankPerm);
    b.assoc_permute().unwrap();
    b.restore_sorted_keys().unwrap();
    assert_eq!(b.as_slice(), [1, 1, 2, 3, 3]);
    assert!(KeyBuffer::from_keys(vec![2, 3]).is_err());
}

#[test]
fn trace_runs_every_phase() {
    let t = trace_phases(&[3, 1, 3, 2, 1]).unwrap();
    let last = &t.last().unwrap().1;
    assert_eq!(last, &[1, 1, 2, 3, 3]);
    assert_eq!(t.len(), 7);
    assert_eq!(t[0], (Phase::PlacedKeys, vec![1, 2, 3, 3, 1]));
}

#[test]
fn generated_distributions_sort() {
    for n in [1, 2, 17, 1000] {
        for d in [
            Distribution::Uniform,
            Distribution::FewDistinct(n.min(3)),
            Distribution::Sorted,
            Distribution::Reverse,
            Distribution::AllEqual,
            Distribution::Permutation,
        ] {
            let keys = generate_input(&InputSpec::new(n, d, 9)).unwrap();
            let mut k = keys.clone();
            assoc_permuting_sort(&mut k);
            assert_eq!(k, reference_sort(&keys), "{d} n={n}");
        }
    }
}
