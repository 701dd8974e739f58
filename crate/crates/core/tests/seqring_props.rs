use proptest::prelude::*;
use rrorder::order::{rr_le, RrRing};
use rrorder::seqring::{seq_rr_le, zero_one_sequences, EvPerSeq, IdempotentSupport, SeqRing};

fn seq_strategy() -> impl Strategy<Value = EvPerSeq> {
    (proptest::collection::vec(-4i64..5, 0..4), proptest::collection::vec(-4i64..5, 1..4))
        .prop_map(|(pre, per)| EvPerSeq::new(pre, per).unwrap())
}

/// Elements of the ring built from an arbitrary prefix and a period that is
/// constant mod `p`.
fn ring_seq(p: i64) -> impl Strategy<Value = EvPerSeq> {
    (proptest::collection::vec(-4i64..5, 0..4), -3i64..4, proptest::collection::vec(-1i64..2, 1..4))
        .prop_map(move |(pre, c, shifts)| EvPerSeq::new(pre, shifts.iter().map(|k| c + k * p).collect()).unwrap())
}

#[test]
fn idempotents_are_finite_or_cofinite_exhaustively() {
    for p in [2, 3, 5] {
        let ring = SeqRing::new(p).unwrap();
        let mut seen = 0;
        for e in zero_one_sequences(9) {
            match ring.seq_idempotent_support(&e) {
                Ok(IdempotentSupport::Finite) => assert_eq!(e.period(), &[0]),
                Ok(IdempotentSupport::Cofinite) => assert_eq!(e.period(), &[1]),
                Err(_) => assert!(!ring.seq_in_ring(&e)),
            }
            seen += 1;
        }
        assert!(seen > 500);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_is_strict_and_below_both(p in prop::sample::select(vec![2i64, 3, 5, 7, 11]), n in 1usize..7) {
        let ring = SeqRing::new(p).unwrap();
        let r = EvPerSeq::constant(1);
        let s = EvPerSeq::periodic(vec![1, p + 1]).unwrap();
        let cert = ring.meet_nonexistence_certificate(&r, &s, n, 6).unwrap();
        prop_assert_eq!(cert.chain.len(), n);
        prop_assert_eq!(cert.positions.clone(), (0..n).map(|k| 2 * k + 1).collect::<Vec<_>>());
        for h in &cert.chain {
            prop_assert!(ring.contains(h));
            prop_assert!(rr_le(&ring, h, &r) && rr_le(&ring, h, &s));
        }
        for w in cert.chain.windows(2) {
            prop_assert!(rr_le(&ring, &w[0], &w[1]) && w[0] != w[1]);
        }
        prop_assert!(cert.no_representable_meet());
    }

    #[test]
    fn pointwise_order_matches_product_test(a in seq_strategy(), b in seq_strategy()) {
        let ring = SeqRing::new(2).unwrap();
        prop_assert_eq!(seq_rr_le(&a, &b), rr_le(&ring, &a, &b));
    }

    #[test]
    fn ring_is_closed((p, a, b) in prop::sample::select(vec![2i64, 3, 5]).prop_flat_map(|p| (Just(p), ring_seq(p), ring_seq(p)))) {
        let ring = SeqRing::new(p).unwrap();
        prop_assert!(ring.contains(&a) && ring.contains(&b));
        prop_assert!(ring.contains(&ring.add(&a, &b)));
        prop_assert!(ring.contains(&ring.mul(&a, &b)));
        prop_assert!(ring.contains(&ring.neg(&a)));
    }

    #[test]
    fn finite_support_lower_bounds_of_one_are_in_ring(mask in proptest::collection::vec(any::<bool>(), 1..10)) {
        let ring = SeqRing::new(3).unwrap();
        let pos: Vec<usize> = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        let e = EvPerSeq::finite_indicator(&pos);
        prop_assert!(ring.contains(&e));
        prop_assert!(seq_rr_le(&e, &EvPerSeq::constant(1)));
        prop_assert_eq!(e.support_size(), Some(pos.len()));
    }
}
