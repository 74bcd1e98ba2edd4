//! Property tests for the partition lattice and the permutation action.

use easywg_core::{Partition, Permutation};
use proptest::prelude::*;

fn arb_partition(max_k: usize) -> impl Strategy<Value = Partition> {
    (1..=max_k).prop_flat_map(|k| {
        proptest::collection::vec(0..k, k).prop_map(|raw| Partition::from_labels(&raw))
    })
}

fn arb_partition_pair(max_k: usize) -> impl Strategy<Value = (Partition, Partition)> {
    (1..=max_k).prop_flat_map(|k| {
        (
            proptest::collection::vec(0..k, k).prop_map(move |raw| Partition::from_labels(&raw)),
            proptest::collection::vec(0..k, k).prop_map(move |raw| Partition::from_labels(&raw)),
        )
    })
}

fn arb_permutation(k: usize) -> impl Strategy<Value = Permutation> {
    Just(k).prop_perturb(|k, mut rng| {
        let mut images: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            images.swap(i, j);
        }
        Permutation::from_images(images).unwrap()
    })
}

fn arb_partition_with_permutation(max_k: usize) -> impl Strategy<Value = (Partition, Permutation)> {
    arb_partition(max_k).prop_flat_map(|p| {
        let k = p.k();
        (Just(p), arb_permutation(k))
    })
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent(p in arb_partition(9)) {
        let again = Partition::from_labels(p.labels());
        prop_assert_eq!(&again, &p);
        // restricted growth: first label 0, each at most one above the prefix max
        let mut max_seen = 0usize;
        for (i, &l) in p.labels().iter().enumerate() {
            if i == 0 {
                prop_assert_eq!(l, 0);
            } else {
                prop_assert!(l <= max_seen + 1);
            }
            max_seen = max_seen.max(l);
        }
        prop_assert_eq!(p.block_count(), p.labels().iter().max().unwrap() + 1);
    }

    #[test]
    fn display_parse_roundtrip(p in arb_partition(9)) {
        let text = p.to_string();
        let back: Partition = text.parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn join_laws(pq in arb_partition_pair(8), r_raw in proptest::collection::vec(0usize..8, 8)) {
        let (p, q) = pq;
        let k = p.k();
        let r = Partition::from_labels(&r_raw[..k]);

        let pq_join = p.join(&q).unwrap();
        prop_assert_eq!(&pq_join, &q.join(&p).unwrap());
        prop_assert_eq!(&p.join(&p).unwrap(), &p);
        // associativity
        let left = pq_join.join(&r).unwrap();
        let right = p.join(&q.join(&r).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        // upper bound in refinement order, block count bounded by both
        prop_assert!(p.is_refinement_of(&pq_join));
        prop_assert!(q.is_refinement_of(&pq_join));
        prop_assert!(pq_join.block_count() <= p.block_count().min(q.block_count()));
    }

    #[test]
    fn refinement_is_join_absorption(pq in arb_partition_pair(8)) {
        // p ≤ q iff p ∨ q = q
        let (p, q) = pq;
        let join = p.join(&q).unwrap();
        prop_assert_eq!(p.is_refinement_of(&q), join == q);
    }

    #[test]
    fn permutation_action_is_group_action((p, g) in arb_partition_with_permutation(8)) {
        let k = p.k();
        let moved = g.apply_to(&p).unwrap();
        prop_assert_eq!(moved.block_count(), p.block_count());
        prop_assert_eq!(g.inverse().apply_to(&moved).unwrap(), p.clone());
        // definition: γ(i), γ(j) together in γ(p) iff i, j together in p
        for i in 0..k {
            for j in 0..k {
                prop_assert_eq!(
                    moved.same_block(g.apply(i), g.apply(j)),
                    p.same_block(i, j)
                );
            }
        }
    }

    #[test]
    fn fixes_labels_matches_apply_everywhere(
        (k, g) in (2usize..7).prop_flat_map(|k| (Just(k), arb_permutation(k)))
    ) {
        for p in easywg_core::enumerate_partitions(k).unwrap() {
            let by_apply = g.apply_to(&p).unwrap() == p;
            let by_labels = g.fixes_labels(p.labels());
            prop_assert_eq!(by_apply, by_labels);
        }
    }

    #[test]
    fn noncrossing_matches_quadruple_definition(p in arb_partition(8)) {
        let k = p.k();
        let mut brute = true;
        'outer: for a in 0..k {
            for b in (a + 1)..k {
                for c in (b + 1)..k {
                    for d in (c + 1)..k {
                        if p.same_block(a, c)
                            && p.same_block(b, d)
                            && !p.same_block(a, b)
                        {
                            brute = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        prop_assert_eq!(p.is_noncrossing(), brute);
    }
}
