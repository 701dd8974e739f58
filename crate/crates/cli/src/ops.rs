//! Executes one request and renders its result as JSON.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use rrorder::lifting::{hom_preserves_meets_check, lift_orthogonal_with, CanonicalPreimage, GivenPreimages, RingHom};
use rrorder::order::{MeetResult, RrRing};
use rrorder::plring::{
    boundary_condition_holds, pl_lift_orthogonal, pl_meet, pl_meet_detailed, pl_restrict, Extension, PwPolyFunc,
    RatLit, Root, Q,
};
use rrorder::polysub::{
    bounded_membership, goldie4_verify, parse_tuple, AlgebraDescriptor, CertificateReport, Field, FieldChoice,
    MembershipOptions, PolyLiteral, PolysubError, Rationals,
};
use rrorder::seqring::SeqRing;
use rrorder::zkring::{CongruenceRing, GoodVerdict, SupResult};

use crate::scenario::{Op, Resolved};

/// Values taken from the command line when a request leaves them out.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub bound: u64,
    pub degree: u32,
    pub coeff_degree: u32,
}

#[derive(Debug)]
pub struct OpError {
    pub kind: String,
    pub message: String,
    pub cap_exceeded: bool,
}

impl OpError {
    fn from_debug<E: std::fmt::Debug + std::fmt::Display>(e: E) -> Self {
        let dbg = format!("{e:?}");
        let kind = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        OpError { kind, message: e.to_string(), cap_exceeded: false }
    }

    pub fn to_json(&self) -> Value {
        json!({ "kind": self.kind, "message": self.message })
    }
}

macro_rules! impl_from {
    ($($t:ty),*) => {$(
        impl From<$t> for OpError {
            fn from(e: $t) -> Self {
                OpError::from_debug(e)
            }
        }
    )*};
}

impl_from!(rrorder::zkring::ZkError, rrorder::lifting::LiftError, rrorder::plring::PlError, rrorder::seqring::SeqError);

impl From<PolysubError> for OpError {
    fn from(e: PolysubError) -> Self {
        let cap = matches!(e, PolysubError::CapExceeded { .. });
        OpError { cap_exceeded: cap, ..OpError::from_debug(e) }
    }
}

type OpResult = Result<Value, OpError>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn mask_coords(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

fn rat(x: &Q) -> Value {
    to_value(&RatLit::from(x))
}

fn root(r: &Root) -> Value {
    match r {
        Root::Rational(x) => json!({ "rational": rat(x) }),
        Root::Irrational(l, h) => json!({ "irrational_in": [rat(l), rat(h)] }),
    }
}

fn func(f: &PwPolyFunc) -> Value {
    to_value(&f.literal())
}

fn intervals(v: &[(Q, Q)]) -> Value {
    Value::Array(v.iter().map(|(a, b)| json!([rat(a), rat(b)])).collect())
}

pub struct Ctx<'a> {
    pub resolved: &'a Resolved,
    pub defaults: Defaults,
    pub rng: &'a mut ChaCha8Rng,
}

impl Ctx<'_> {
    fn ring(&self, name: &str) -> &CongruenceRing {
        &self.resolved.rings[name]
    }

    fn func(&self, name: &str) -> &PwPolyFunc {
        &self.resolved.functions[name]
    }

    fn hom(&self, source: &str, target: &str, assign: &[usize]) -> Result<RingHom, OpError> {
        let zero_based: Vec<usize> = assign.iter().map(|&a| a.wrapping_sub(1)).collect();
        Ok(RingHom::new(self.ring(source), self.ring(target), &zero_based)?)
    }

    pub fn run(&mut self, op: &Op) -> OpResult {
        match op {
            Op::Classify { ring } => classify(self.ring(ring)),
            Op::PierceStalks { ring } => {
                let r = self.ring(ring);
                let stalks: Vec<Value> = r
                    .pierce_stalks()
                    .iter()
                    .map(|s| json!({ "coordinates": s.coordinates.iter().map(|c| c + 1).collect::<Vec<_>>(), "moduli": s.moduli, "basis": s.basis, "is_domain": s.is_domain }))
                    .collect();
                let all = r.pierce_stalks().iter().all(|s| s.is_domain);
                Ok(json!({ "stalks": stalks, "all_domains": all, "class": to_value(&r.classify().class) }))
            }
            Op::Idempotents { ring } => {
                let l = self.ring(ring).idempotents();
                Ok(json!({ "count": l.elements.len(), "atoms": l.atom_vectors(), "dot": l.to_dot() }))
            }
            Op::Meet { ring, a, b } => {
                let r = self.ring(ring);
                let (ea, eb) = (r.from_original(a)?, r.from_original(b)?);
                let out = match r.exact_meet(&ea, &eb)? {
                    MeetResult::Meet(c) => json!({ "verdict": "meet", "meet": r.to_original(&c) }),
                    MeetResult::Zero => json!({ "verdict": "zero", "meet": r.to_original(&r.zero()) }),
                    MeetResult::Inconclusive(ev) => json!({ "verdict": "none", "evidence": to_value(&ev) }),
                };
                let mut out = out;
                if r.is_weakly_baer() {
                    out["formula"] = json!(r.to_original(&r.wb_meet(&ea, &eb)?));
                }
                Ok(out)
            }
            Op::Sup { ring, a, b } => {
                let r = self.ring(ring);
                let (ea, eb) = (r.from_original(a)?, r.from_original(b)?);
                Ok(match r.rr_sup(&ea, &eb)? {
                    SupResult::Sup(c) => json!({ "exists": true, "sup": r.to_original(&c) }),
                    SupResult::NoSup(i) => json!({ "exists": false, "obstruction_coordinate": i + 1 }),
                })
            }
            Op::Good { ring, bound } => {
                let r = self.ring(ring);
                let v = r.is_rr_good_bounded(bound.unwrap_or(self.defaults.bound));
                let orig = |xs: &[Vec<i64>]| xs.iter().map(|x| r.to_original(x)).collect::<Vec<_>>();
                Ok(match v {
                    GoodVerdict::Good { certificate, pairs_checked } => {
                        json!({ "verdict": "Good", "certificate": to_value(&certificate), "pairs_checked": pairs_checked })
                    }
                    GoodVerdict::NotGood { a, b, maxima } => json!({
                        "verdict": "NotGood", "a": r.to_original(&a), "b": r.to_original(&b), "maxima": orig(&maxima)
                    }),
                    GoodVerdict::GoodWithinBound { pairs_checked, longest_chain } => json!({
                        "verdict": "GoodWithinBound", "pairs_checked": pairs_checked, "longest_chain": orig(&longest_chain)
                    }),
                })
            }
            Op::Hull { ring } => {
                let h = self.ring(ring).wb_hull()?;
                let mut v = to_value(&h.summary());
                v["is_full_product"] = json!(h.ring.is_full_product());
                v["descriptor"] = to_value(&h.ring.descriptor());
                Ok(v)
            }
            Op::Equalizer { ring, target, phi, psi } => {
                let (f, g) = (self.hom(ring, target, phi)?, self.hom(ring, target, psi)?);
                let e = self.ring(ring).equalizer(&f, &g)?;
                let mut v = classify(&e)?;
                v["descriptor"] = to_value(&e.descriptor());
                v["basis"] = json!(e.basis());
                Ok(v)
            }
            Op::HomCheck { source, target, assign } => Ok(to_value(&self.hom(source, target, assign)?.check())),
            Op::HomMeets { source, target, assign, bound, extra } => {
                let h = self.hom(source, target, assign)?;
                let rep = hom_preserves_meets_check(&h, bound.unwrap_or(self.defaults.bound), extra)?;
                let (s, t) = (h.source(), h.target());
                let violations: Vec<Value> = rep
                    .violations
                    .iter()
                    .map(|v| {
                        json!({
                            "a": s.to_original(&v.a),
                            "b": s.to_original(&v.b),
                            "image_of_meet": t.to_original(&v.image_of_meet),
                            "meet_of_images": v.meet_of_images.as_ref().map(|m| t.to_original(m)),
                        })
                    })
                    .collect();
                let first = violations.first().map(|v| json!([v["a"], v["b"]]));
                Ok(json!({
                    "kernel_idempotent_generated": rep.kernel_idempotent_generated,
                    "pairs_checked": rep.pairs_checked,
                    "violation_count": rep.violation_count,
                    "violations": violations,
                    "first_violation": first,
                    "check": to_value(&h.check()),
                }))
            }
            Op::Lift { source, target, assign, targets, preimages, adversarial } => {
                let h = self.hom(source, target, assign)?;
                let (s, t) = (h.source(), h.target());
                let ts: Vec<Vec<i64>> = targets.iter().map(|x| t.from_original(x)).collect::<Result<_, _>>()?;
                let rep = match preimages {
                    Some(pre) => {
                        let pre: Vec<Vec<i64>> = pre.iter().map(|x| s.from_original(x)).collect::<Result<_, _>>()?;
                        lift_orthogonal_with(&h, &ts, &mut GivenPreimages(pre))?
                    }
                    None if *adversarial => {
                        let kernel = h.kernel();
                        let mut pre = Vec::new();
                        for x in &ts {
                            let Some(mut v) = h.preimage(x) else { break };
                            for k in kernel.basis() {
                                let c = self.rng.gen_range(-3..=3);
                                v.iter_mut().zip(k).for_each(|(a, b)| *a += c * b);
                            }
                            pre.push(s.reduce(&v));
                        }
                        lift_orthogonal_with(&h, &ts, &mut GivenPreimages(pre))?
                    }
                    None => lift_orthogonal_with(&h, &ts, &mut CanonicalPreimage)?,
                };
                let images_match = rep.lifted.iter().zip(&ts).all(|(l, x)| h.apply(l).as_ref() == Ok(x));
                let mut orthogonal = true;
                for i in 0..rep.lifted.len() {
                    for j in i + 1..rep.lifted.len() {
                        orthogonal &= s.exact_meet(&rep.lifted[i], &rep.lifted[j])? == MeetResult::Zero;
                    }
                }
                let steps: Vec<Value> = rep
                    .steps
                    .iter()
                    .map(|st| {
                        json!({
                            "target": t.to_original(&st.target),
                            "preimage": s.to_original(&st.preimage),
                            "epsilon": s.to_original(&st.epsilon),
                            "lifted": s.to_original(&st.lifted),
                        })
                    })
                    .collect();
                Ok(json!({
                    "lifted": rep.lifted.iter().map(|l| s.to_original(l)).collect::<Vec<_>>(),
                    "steps": steps,
                    "images_match": images_match,
                    "pairwise_orthogonal": orthogonal,
                }))
            }
            Op::SeqChain { p, r, s, n, max_description } => {
                let ring = SeqRing::new(*p)?;
                let cert = ring.meet_nonexistence_certificate(r, s, *n, *max_description)?;
                let mut v = to_value(&cert);
                v["no_representable_meet"] = json!(cert.no_representable_meet());
                v["chain_length"] = json!(cert.chain.len());
                Ok(v)
            }
            Op::PlMeet { f, g } => {
                let (f, g) = (self.func(f), self.func(g));
                let d = pl_meet_detailed(f, g)?;
                Ok(json!({
                    "meet": func(&d.meet),
                    "is_zero": d.meet.is_zero(),
                    "support": intervals(&d.support),
                    "coincidence": {
                        "intervals": to_value(&d.coincidence.intervals),
                        "isolated": d.coincidence.isolated.iter().map(root).collect::<Vec<_>>(),
                    },
                    "boundary_condition": boundary_condition_holds(f, &d),
                }))
            }
            Op::PlRestriction { f, g, lo, hi } => {
                let (f, g) = (self.func(f), self.func(g));
                let (lo, hi) = (lo.value()?, hi.value()?);
                let whole = pl_meet(f, g)?;
                let image = pl_restrict(&whole, &lo, &hi)?;
                let local = pl_meet(&pl_restrict(f, &lo, &hi)?, &pl_restrict(g, &lo, &hi)?)?;
                Ok(json!({
                    "meet": func(&whole),
                    "restriction_of_meet": func(&image),
                    "meet_of_restrictions": func(&local),
                    "preserved": image == local,
                }))
            }
            Op::PlLift { functions, lo, hi, extensions } => {
                let fs: Vec<PwPolyFunc> = functions.iter().map(|n| self.func(n).clone()).collect();
                let ext = match extensions {
                    Some(names) => Extension::Custom(names.iter().map(|n| self.func(n).clone()).collect()),
                    None => Extension::Zero,
                };
                let out = pl_lift_orthogonal(&fs, &lo.value()?, &hi.value()?, &ext)?;
                let mut orthogonal = true;
                for i in 0..out.lifted.len() {
                    for j in i + 1..out.lifted.len() {
                        orthogonal &= pl_meet(&out.lifted[i], &out.lifted[j])?.is_zero();
                    }
                }
                let (a, b) = fs[0].domain();
                let round_trip = out.lifted.iter().zip(&fs).all(|(l, f)| pl_restrict(l, &a, &b).as_ref() == Ok(f));
                Ok(json!({
                    "lifted": out.lifted.iter().map(func).collect::<Vec<_>>(),
                    "zeroed": out.zeroed.iter().map(|z| intervals(z)).collect::<Vec<_>>(),
                    "pairwise_orthogonal": orthogonal,
                    "round_trip": round_trip,
                }))
            }
            Op::Goldie4 { field, degree, coeff_degree, reduce_z, cap } => {
                let opts = options(*reduce_z, *cap);
                let (d, c) =
                    (degree.unwrap_or(self.defaults.degree), coeff_degree.unwrap_or(self.defaults.coeff_degree));
                let rep = match FieldChoice::parse(field)? {
                    FieldChoice::Rationals => to_value(&goldie4_verify(Rationals, d, c, opts)?),
                    FieldChoice::Prime(p) => to_value(&goldie4_verify(p, d, c, opts)?),
                };
                Ok(rep)
            }
            Op::Membership { algebra, target, degree, coeff_degree, reduce_z, cap } => {
                let desc = &self.resolved.scenario.algebras[algebra];
                let opts = options(*reduce_z, *cap);
                let (d, c) =
                    (degree.unwrap_or(self.defaults.degree), coeff_degree.unwrap_or(self.defaults.coeff_degree));
                match desc.field_choice()? {
                    FieldChoice::Rationals => membership(desc, Rationals, target, d, c, opts),
                    FieldChoice::Prime(p) => membership(desc, p, target, d, c, opts),
                }
            }
        }
    }
}

fn options(reduce_z: Option<bool>, cap: Option<usize>) -> MembershipOptions {
    let d = MembershipOptions::default();
    MembershipOptions { reduce_z: reduce_z.unwrap_or(d.reduce_z), cap: cap.unwrap_or(d.cap) }
}

fn membership<F: Field>(
    desc: &AlgebraDescriptor,
    field: F,
    target: &[PolyLiteral],
    degree: u32,
    coeff_degree: u32,
    opts: MembershipOptions,
) -> OpResult {
    let alg = desc.build(field)?;
    let t = parse_tuple(&alg.field, target)?;
    let cert = bounded_membership(&alg, &t, degree, coeff_degree, opts)?;
    Ok(to_value(&CertificateReport::new(&alg, &cert)))
}

fn classify(r: &CongruenceRing) -> OpResult {
    let c = r.classify();
    let witnesses: Vec<Value> = c
        .witnesses
        .iter()
        .map(|w| json!({ "support": mask_coords(w.support), "element": w.element.as_ref().map(|e| r.to_original(e)) }))
        .collect();
    let primes: Vec<Vec<usize>> =
        r.minimal_primes().iter().map(|p| p.coordinates.iter().map(|i| i + 1).collect()).collect();
    Ok(json!({
        "class": to_value(&c.class),
        "weakly_baer": c.class.is_weakly_baer(),
        "witnesses": witnesses,
        "minimal_primes": primes,
        "note": c.note,
    }))
}
