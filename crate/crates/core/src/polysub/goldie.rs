//! The four-factor algebra with two incomparable lower bounds `a`, `b` of
//! `r`, `s` whose only possible common upper bound `(0, y, y, y)` lies
//! outside every degree-bounded span tried.

use serde::Serialize;

use super::algebra::{
    bounded_membership, exponent_vectors, rr_le_tuple, MembershipOptions, SystemStats, Tuple, TupleAlgebra,
};
use super::field::Field;
use super::poly::MultiPoly;
use super::PolysubError;

const X: [u32; 3] = [1, 0, 0];
const Y: [u32; 3] = [0, 1, 0];
const Z: [u32; 3] = [0, 0, 1];

fn tuple<F: Field>(field: &F, comps: [&[(i64, [u32; 3])]; 4]) -> Tuple<F::E> {
    comps.iter().map(|c| MultiPoly::from_ints(field, c)).collect()
}

/// Generators `r, s, a, b, b1, b2, b3` over `field`.
pub fn goldie4_algebra<F: Field>(field: F) -> TupleAlgebra<F> {
    let y: &[(i64, [u32; 3])] = &[(1, Y)];
    let z: &[(i64, [u32; 3])] = &[(1, Z)];
    let o: &[(i64, [u32; 3])] = &[];
    let gens = vec![
        ("r", tuple(&field, [&[(1, [2, 0, 0]), (1, X)], y, y, y])),
        ("s", tuple(&field, [&[(1, X)], y, y, y])),
        ("a", tuple(&field, [o, y, y, o])),
        ("b", tuple(&field, [o, o, y, y])),
        ("b1", tuple(&field, [o, z, o, o])),
        ("b2", tuple(&field, [o, o, z, o])),
        ("b3", tuple(&field, [o, o, o, z])),
    ];
    TupleAlgebra::new(field, 4, gens.into_iter().map(|(n, g)| (n.to_string(), g)).collect()).expect("arity 4")
}

/// `(0, y, y, y)`.
pub fn goldie4_target<F: Field>(field: &F) -> Tuple<F::E> {
    let y: &[(i64, [u32; 3])] = &[(1, Y)];
    tuple(field, [&[], y, y, y])
}

/// Which of `a`, `b` a generator monomial involves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Stratum {
    Constant,
    H,
    FA,
    FB,
    FAB,
}

pub fn stratum(exps: &[u32]) -> Stratum {
    let (a, b) = (exps[2] > 0, exps[3] > 0);
    match (exps.iter().all(|&e| e == 0), a, b) {
        (true, ..) => Stratum::Constant,
        (_, false, false) => Stratum::H,
        (_, true, false) => Stratum::FA,
        (_, false, true) => Stratum::FB,
        (_, true, true) => Stratum::FAB,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumCount {
    pub stratum: Stratum,
    pub monomials: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldieReport {
    pub field: String,
    pub gen_degree: u32,
    pub coeff_degree: u32,
    pub a_le_r: bool,
    pub a_le_s: bool,
    pub b_le_r: bool,
    pub b_le_s: bool,
    pub a_b_incomparable: bool,
    pub upper_candidate_bounds_both: bool,
    pub target_refused: bool,
    pub target_stats: SystemStats,
    pub generator_a_member: bool,
    pub strata: Vec<StratumCount>,
    /// Vanishing and equal-component relations of every generator monomial.
    pub strata_relations_hold: bool,
    pub passed: bool,
}

/// Zero components and equal components forced by the stratum.
fn relations_hold<E: Clone + PartialEq>(s: Stratum, t: &Tuple<E>, uses_b: bool) -> bool {
    let zero = |i: usize| t[i].is_zero();
    let vanish = match s {
        Stratum::FA => zero(0) && zero(3),
        Stratum::FB => zero(0) && zero(1),
        Stratum::FAB => zero(0) && zero(1) && zero(3),
        _ => true,
    };
    // The equalities only survive without the z-generators.
    let equal = uses_b
        || match s {
            Stratum::H => t[1] == t[2] && t[2] == t[3],
            Stratum::FA => t[1] == t[2],
            Stratum::FB => t[2] == t[3],
            _ => true,
        };
    vanish && equal
}

pub fn goldie4_verify<F: Field>(
    field: F,
    gen_degree: u32,
    coeff_degree: u32,
    opts: MembershipOptions,
) -> Result<GoldieReport, PolysubError> {
    let alg = goldie4_algebra(field.clone());
    let g = |n: &str| alg.generator(n).expect("named generator").clone();
    let (r, s, a, b) = (g("r"), g("s"), g("a"), g("b"));
    let le = |u: &Tuple<F::E>, v: &Tuple<F::E>| rr_le_tuple(u, v).expect("arity 4");
    let target = goldie4_target(&field);
    let cert = bounded_membership(&alg, &target, gen_degree, coeff_degree, opts)?;
    let gen_cert = bounded_membership(&alg, &a, gen_degree.max(1), 0, opts)?;

    let mut counts = Vec::new();
    let mut relations = true;
    for e in exponent_vectors(alg.generators().len(), gen_degree) {
        let st = stratum(&e);
        match counts.iter_mut().find(|c: &&mut StratumCount| c.stratum == st) {
            Some(c) => c.monomials += 1,
            None => counts.push(StratumCount { stratum: st, monomials: 1 }),
        }
        let uses_b = e[4..].iter().any(|&k| k > 0);
        relations &= relations_hold(st, &alg.gen_monomial(&e), uses_b);
    }

    let mut report = GoldieReport {
        field: field.name(),
        gen_degree,
        coeff_degree,
        a_le_r: le(&a, &r),
        a_le_s: le(&a, &s),
        b_le_r: le(&b, &r),
        b_le_s: le(&b, &s),
        a_b_incomparable: !le(&a, &b) && !le(&b, &a),
        upper_candidate_bounds_both: le(&a, &target) && le(&b, &target) && le(&target, &r) && le(&target, &s),
        target_refused: !cert.is_member(),
        target_stats: cert.stats().clone(),
        generator_a_member: gen_cert.is_member() && alg.verify(&gen_cert, &a),
        strata: counts,
        strata_relations_hold: relations,
        passed: false,
    };
    report.passed = report.a_le_r
        && report.a_le_s
        && report.b_le_r
        && report.b_le_s
        && report.a_b_incomparable
        && report.upper_candidate_bounds_both
        && report.target_refused
        && report.generator_a_member
        && report.strata_relations_hold;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::algebra::{bounded_membership, tuple_mul, MembershipOptions};
    use super::super::field::{PrimeField, Rationals};
    use super::*;

    #[test]
    fn order_facts() {
        let alg = goldie4_algebra(PrimeField::new(2).unwrap());
        let g = |n: &str| alg.generator(n).unwrap().clone();
        assert!(rr_le_tuple(&g("a"), &g("r")).unwrap());
        assert!(!rr_le_tuple(&g("a"), &g("b")).unwrap());
        assert!(rr_le_tuple(&alg.zero_tuple(), &g("b")).unwrap());
        assert!(rr_le_tuple(&g("a"), &alg.unit()[..3].to_vec()).is_err());
    }

    #[test]
    fn generators_and_products_are_members() {
        let f = Rationals;
        let alg = goldie4_algebra(f);
        let opts = MembershipOptions::default();
        let a = alg.generator("a").unwrap().clone();
        let cert = bounded_membership(&alg, &a, 1, 0, opts).unwrap();
        assert!(cert.is_member() && alg.verify(&cert, &a));
        let rs = tuple_mul(alg.generator("r").unwrap(), alg.generator("s").unwrap(), &f);
        assert!(!bounded_membership(&alg, &rs, 1, 0, opts).unwrap().is_member());
        let cert = bounded_membership(&alg, &rs, 2, 0, opts).unwrap();
        assert!(cert.is_member() && alg.verify(&cert, &rs));
    }

    #[test]
    fn target_refused_mod_two() {
        let report = goldie4_verify(PrimeField::new(2).unwrap(), 3, 3, MembershipOptions::default()).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn target_refused_without_reduction_small() {
        let opts = MembershipOptions { reduce_z: false, ..MembershipOptions::default() };
        let report = goldie4_verify(PrimeField::new(2).unwrap(), 2, 2, opts).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(!report.target_stats.reduced_z);
    }
}
