mod common;

use common::{random_elem, random_ring_where, rng};
use proptest::prelude::*;
use rrorder::lifting::{
    lift_orthogonal, lift_orthogonal_with, max_orthogonal_idempotent, verify_max_orthogonal, GivenPreimages, RingHom,
};
use rrorder::order::{rr_orthogonal, MeetResult, RrRing};
use rrorder::zkring::CongruenceRing;

const MAX_SET: usize = 3;

fn products(max_width: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..max_width {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                [2i64, 3, 5].into_iter().map(move |m| {
                    let mut w = v.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
        all.extend(out.iter().cloned());
    }
    all
}

/// Pairwise orthogonal lists of at most `MAX_SET` nonzero elements, each
/// listed once in increasing element order. In a product of fields two
/// elements are orthogonal when no coordinate holds the same nonzero value
/// in both, which is weaker than a zero product.
fn orthogonal_sets(ring: &CongruenceRing) -> Vec<Vec<Vec<i64>>> {
    let nonzero: Vec<Vec<i64>> = ring.elements_in_box(4).into_iter().filter(|e| !ring.is_zero(e)).collect();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<Vec<i64>>)> = vec![(0, Vec::new())];
    while let Some((start, set)) = frontier.pop() {
        for (i, e) in nonzero.iter().enumerate().skip(start) {
            if set.len() < MAX_SET && set.iter().all(|x| ring.exact_meet(x, e).unwrap() == MeetResult::Zero) {
                let mut next = set.clone();
                next.push(e.clone());
                out.push(next.clone());
                frontier.push((i + 1, next));
            }
        }
    }
    out
}

/// Every orthogonal set lifts along every surjection between products of
/// prime fields of width at most 3.
#[test]
fn strongly_regular_lifting_is_exhaustive() {
    let mut lifted_sets = 0;
    for sm in products(3) {
        let src = CongruenceRing::full(&sm).unwrap();
        for tm in products(sm.len()) {
            let tgt = CongruenceRing::full(&tm).unwrap();
            let mut sets = None;
            let k = sm.len();
            let assigns: Vec<Vec<usize>> = (0..k.pow(tm.len() as u32))
                .map(|mut c| {
                    (0..tm.len())
                        .map(|_| {
                            let d = c % k;
                            c /= k;
                            d
                        })
                        .collect()
                })
                .collect();
            for assign in assigns {
                let Ok(h) = RingHom::new(&src, &tgt, &assign) else { continue };
                if !h.check().surjective {
                    continue;
                }
                let sets = sets.get_or_insert_with(|| orthogonal_sets(&tgt));
                for set in sets.iter() {
                    let rep = lift_orthogonal(&h, set).unwrap();
                    for (r, s) in rep.lifted.iter().zip(set) {
                        assert_eq!(&h.apply(r).unwrap(), s);
                    }
                    for i in 0..rep.lifted.len() {
                        for j in i + 1..rep.lifted.len() {
                            assert!(rr_orthogonal(&src, &rep.lifted[i], &rep.lifted[j], 4).unwrap());
                        }
                    }
                    lifted_sets += 1;
                }
            }
        }
    }
    assert!(lifted_sets > 1000, "{lifted_sets}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn largest_orthogonalizing_idempotent_is_maximal(seed in any::<u64>(), w in 1usize..=4) {
        let mut g = rng(seed);
        let r = random_ring_where(&mut g, w, &[0, 2, 3], 2, |r| r.is_weakly_baer());
        for _ in 0..10 {
            let a = random_elem(&mut g, &r, 3);
            let b = random_elem(&mut g, &r, 3);
            let e = max_orthogonal_idempotent(&r, &a, &b).unwrap();
            prop_assert!(verify_max_orthogonal(&r, &a, &b, e).unwrap());
        }
    }

    #[test]
    fn adversarial_preimages_still_lift(seed in any::<u64>()) {
        let mut g = rng(seed);
        let src = CongruenceRing::integers(4);
        let tgt = CongruenceRing::integers(2);
        let h = RingHom::new(&src, &tgt, &[0, 1]).unwrap();
        let sets = [vec![vec![1, 0], vec![0, 1]], vec![vec![3, 0], vec![0, -2]], vec![vec![5, 0]], vec![vec![0, 7]]];
        for set in sets {
            let pre: Vec<Vec<i64>> = set
                .iter()
                .map(|s| {
                    let noise = random_elem(&mut g, &src, 4);
                    vec![s[0], s[1], noise[2], noise[3]]
                })
                .collect();
            let rep = lift_orthogonal_with(&h, &set, &mut GivenPreimages(pre)).unwrap();
            for (r, s) in rep.lifted.iter().zip(&set) {
                prop_assert_eq!(&h.apply(r).unwrap(), s);
            }
            for i in 0..rep.lifted.len() {
                for j in i + 1..rep.lifted.len() {
                    prop_assert!(rr_orthogonal(&src, &rep.lifted[i], &rep.lifted[j], 0).unwrap());
                }
            }
        }
    }
}
