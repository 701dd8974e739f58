mod common;

use common::{random_elem, random_pl, random_ring, rng};
use proptest::prelude::*;
use rrorder::lifting::RingHom;
use rrorder::order::{meet_oracle, rr_le, rr_orthogonal, MeetResult, RrRing};
use rrorder::plring::PlRing;
use rrorder::seqring::{sequences_with_entries, SeqRing};
use rrorder::zkring::CongruenceRing;

fn check_axioms<R: RrRing>(ring: &R, elems: &[R::Elem]) -> Result<(), TestCaseError> {
    for a in elems {
        prop_assert!(rr_le(ring, a, a));
        for b in elems {
            let ab = rr_le(ring, a, b);
            if ab && rr_le(ring, b, a) {
                prop_assert_eq!(a, b);
            }
            if ab {
                for c in elems {
                    if rr_le(ring, b, c) {
                        prop_assert!(rr_le(ring, a, c));
                    }
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn order_axioms_on_congruence_rings(seed in any::<u64>(), w in 1usize..=3) {
        let r = random_ring(&mut rng(seed), w, &[0, 2, 3, 5], 2);
        let elems = r.elements_in_box(2);
        check_axioms(&r, &elems[..elems.len().min(150)])?;
    }

    #[test]
    fn multiplication_preserves_order(seed in any::<u64>(), w in 1usize..=4) {
        let mut g = rng(seed);
        let r = random_ring(&mut g, w, &[0, 2, 3, 6], 3);
        for _ in 0..30 {
            let a = random_elem(&mut g, &r, 3);
            let c = random_elem(&mut g, &r, 3);
            // b above a: add something orthogonal to a
            let off = r.mask_elem(&random_elem(&mut g, &r, 3), r.full_mask() & !r.support(&a));
            let b = r.add(&a, &off);
            if r.contains(&b) && rr_le(&r, &a, &b) {
                prop_assert!(rr_le(&r, &r.mul(&c, &a), &r.mul(&c, &b)));
            }
            prop_assert!(rr_le(&r, &r.mul(&c, &a), &r.mul(&c, &a)));
        }
    }

    #[test]
    fn units_transport_meets(seed in any::<u64>(), w in 1usize..=3) {
        let mut g = rng(seed);
        let r = random_ring(&mut g, w, &[0, 2, 3, 5], 2);
        let signs: Vec<Vec<i64>> = (0..1u64 << r.width())
            .map(|m| (0..r.width()).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect())
            .map(|v: Vec<i64>| r.reduce(&v))
            .filter(|u| r.contains_vec(u))
            .collect();
        for _ in 0..10 {
            let a = random_elem(&mut g, &r, 3);
            let b = random_elem(&mut g, &r, 3);
            let MeetResult::Meet(c) = meet_oracle(&r, &a, &b, 0).unwrap().result else { continue };
            for u in &signs {
                let out = meet_oracle(&r, &r.mul(u, &a), &r.mul(u, &b), 0).unwrap().result;
                prop_assert_eq!(out, MeetResult::Meet(r.mul(u, &c)));
            }
        }
    }

    #[test]
    fn products_zero_means_orthogonal(seed in any::<u64>(), w in 1usize..=4) {
        let mut g = rng(seed);
        let r = random_ring(&mut g, w, &[0, 2, 3, 6], 3);
        for _ in 0..30 {
            let a = random_elem(&mut g, &r, 3);
            let b = r.mask_elem(&random_elem(&mut g, &r, 3), r.full_mask() & !r.support(&a));
            if r.contains(&b) {
                prop_assert!(r.is_zero(&r.mul(&a, &b)));
                prop_assert!(rr_orthogonal(&r, &a, &b, 0).unwrap());
            }
        }
    }

    #[test]
    fn coordinate_homs_preserve_order(seed in any::<u64>()) {
        let mut g = rng(seed);
        let src = random_ring(&mut g, 3, &[0], 2);
        let tgt_mod = [[0i64, 0], [2, 3], [0, 6]][seed as usize % 3];
        let tgt = CongruenceRing::full(&tgt_mod).unwrap();
        let assign = [(seed % 3) as usize, ((seed / 3) % 3) as usize];
        if let Ok(h) = RingHom::new(&src, &tgt, &assign) {
            let elems = src.elements_in_box(2);
            prop_assert!(h.preserves_order_on(&elems));
        }
    }

    #[test]
    fn restriction_preserves_order(seed in any::<u64>()) {
        let mut g = rng(seed);
        let f = random_pl(&mut g);
        let h = common::perturb(&mut g, &f, 0.5);
        let m = rrorder::plring::pl_meet(&f, &h).unwrap();
        prop_assert!(m.rr_le(&f).unwrap());
        let (lo, hi) = (rrorder::plring::upoly::q(1, 2), rrorder::plring::upoly::q(3, 1));
        prop_assert!(m.restrict(&lo, &hi).unwrap().rr_le(&f.restrict(&lo, &hi).unwrap()).unwrap());
    }
}

#[test]
fn axioms_on_sequences_and_functions() {
    let s = SeqRing::new(2).unwrap();
    let elems: Vec<_> = sequences_with_entries(3, &[0, 1, 3]).into_iter().filter(|x| s.seq_in_ring(x)).collect();
    check_axioms(&s, &elems).unwrap();
    let p = PlRing::new(rrorder::plring::upoly::q(0, 1), rrorder::plring::upoly::q(1, 1)).unwrap();
    let fs = p.elements_within(1);
    check_axioms(&p, &fs).unwrap();
}
