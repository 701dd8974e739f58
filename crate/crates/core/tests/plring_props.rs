mod common;

use common::{candidate_ends, perturb, random_bump_family, random_lower_bound, random_pl, rng, DOMAIN};
use num_rational::BigRational;
use proptest::prelude::*;
use rrorder::order::RrRing;
use rrorder::plring::{
    boundary_condition_holds, pl_lift_orthogonal, pl_meet, pl_meet_detailed, pl_restrict, Extension, PlError, PlRing,
    PwPolyFunc,
};

fn qi(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ring() -> PlRing {
    PlRing::new(qi(DOMAIN.0), qi(DOMAIN.1)).unwrap()
}

/// No nonzero common lower bound. Weaker than a zero product.
fn orthogonal(a: &PwPolyFunc, b: &PwPolyFunc) -> bool {
    pl_meet(a, b).unwrap().is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn meet_is_the_greatest_lower_bound(seed in any::<u64>()) {
        let mut g = rng(seed);
        let f = random_pl(&mut g);
        let h = perturb(&mut g, &f, 0.6);
        let Ok(d) = pl_meet_detailed(&f, &h) else { return Ok(()) };
        let m = &d.meet;
        prop_assert!(m.rr_le(&f).unwrap() && m.rr_le(&h).unwrap());
        prop_assert!(boundary_condition_holds(&f, &d));
        let ends = candidate_ends(&f, &h);
        for _ in 0..60 {
            if let Some(lb) = random_lower_bound(&mut g, &f, &h, &ends) {
                prop_assert!(lb.rr_le(m).unwrap(), "{lb:?} not below {m:?}");
            }
        }
        if let Some(cands) = ring().lower_bound_candidates(&f, &h) {
            prop_assert!(cands.contains(m));
            for c in &cands {
                prop_assert!(c.rr_le(m).unwrap());
            }
        }
    }

    #[test]
    fn meet_laws(seed in any::<u64>()) {
        let mut g = rng(seed);
        let f = random_pl(&mut g);
        let h = perturb(&mut g, &f, 0.6);
        let k = perturb(&mut g, &h, 0.6);
        prop_assert_eq!(pl_meet(&f, &f).unwrap(), f.clone());
        let (Ok(fh), Ok(hf)) = (pl_meet(&f, &h), pl_meet(&h, &f)) else { return Ok(()) };
        prop_assert_eq!(&fh, &hf);
        prop_assert_eq!(pl_meet(&fh, &f).unwrap(), fh.clone());
        if let (Ok(hk), Ok(left)) = (pl_meet(&h, &k), pl_meet(&fh, &k)) {
            if let Ok(right) = pl_meet(&f, &hk) {
                prop_assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn irrational_cuts_are_reported_not_guessed(seed in any::<u64>()) {
        let mut g = rng(seed);
        let f = random_pl(&mut g);
        let h = perturb(&mut g, &f, 0.5);
        match pl_meet(&f, &h) {
            Ok(m) => prop_assert!(m.rr_le(&f).unwrap()),
            Err(e) => prop_assert!(matches!(e, PlError::IrrationalCut { .. }), "{e}"),
        }
    }

    #[test]
    fn restriction_is_a_homomorphism(seed in any::<u64>(), a in 0i64..4, w in 1i64..4) {
        let mut g = rng(seed);
        let f = random_pl(&mut g);
        let h = random_pl(&mut g);
        let (lo, hi) = (qi(a), qi((a + w).min(DOMAIN.1)));
        prop_assume!(lo < hi);
        let r = |x: &PwPolyFunc| pl_restrict(x, &lo, &hi).unwrap();
        prop_assert_eq!(r(&f.mul(&h).unwrap()), r(&f).mul(&r(&h)).unwrap());
        prop_assert_eq!(r(&f.add(&h).unwrap()), r(&f).add(&r(&h)).unwrap());
        prop_assert!(r(&ring().one()).is_one());
        if let Ok(m) = pl_meet(&f, &perturb(&mut g, &f, 0.5)) {
            prop_assert!(r(&m).rr_le(&r(&f)).unwrap());
        }
    }

    #[test]
    fn bump_families_lift(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (fs, exts) = random_bump_family(&mut g);
        for ext in [Extension::Zero, Extension::Custom(exts.clone())] {
            let out = pl_lift_orthogonal(&fs, &qi(0), &qi(4), &ext).unwrap();
            prop_assert_eq!(out.lifted.len(), fs.len());
            for (l, f) in out.lifted.iter().zip(&fs) {
                prop_assert_eq!(&pl_restrict(l, &qi(1), &qi(3)).unwrap(), f);
                prop_assert_eq!(l.domain(), (qi(0), qi(4)));
            }
            for i in 0..fs.len() {
                for j in i + 1..fs.len() {
                    prop_assert!(orthogonal(&out.lifted[i], &out.lifted[j]));
                }
            }
            if matches!(ext, Extension::Zero) {
                prop_assert!(out.zeroed.iter().all(|z| z.is_empty()));
                for i in 0..fs.len() {
                    for j in i + 1..fs.len() {
                        prop_assert!(out.lifted[i].mul(&out.lifted[j]).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
