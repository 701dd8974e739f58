//! Coordinate homomorphisms between congruence rings and lifting of
//! rr-orthogonal sets along them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Lattice, LinearMap, MapEchelon};
use crate::order::{MeetResult, RrRing};
use crate::zkring::{CongruenceRing, ZkError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("homomorphism is ill formed: {0}")]
    IllFormedHom(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFailure(Hypothesis),
    #[error("inputs {0} and {1} are not rr-orthogonal")]
    NotOrthogonalInput(usize, usize),
    #[error("supplied preimage of element {0} does not map onto it")]
    BadPreimage(usize),
    #[error("element {0} has no preimage")]
    NoPreimage(usize),
    #[error("lifting invariant broken at step {step}: {detail}")]
    InvariantBroken { step: usize, detail: String },
    #[error(transparent)]
    Ring(#[from] ZkError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    NotSurjective,
    IdempotentsNotSurjective,
    SourceNotWeaklyBaer,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hypothesis::NotSurjective => "the map is not surjective",
            Hypothesis::IdempotentsNotSurjective => "idempotents of the target are not all images",
            Hypothesis::SourceNotWeaklyBaer => "the source is not weakly Baer",
        };
        f.write_str(s)
    }
}

/// A homomorphism sending refined target coordinate `j` to source coordinate
/// `assign[j]`, reduced modulo the target modulus.
#[derive(Debug, Clone)]
pub struct RingHom {
    source: CongruenceRing,
    target: CongruenceRing,
    assign: Vec<usize>,
    echelon_images: Vec<Vec<i64>>,
}

/// JSON form: `{"assign": [s_1, ..., s_k']}`, 1-based original source
/// coordinates for each original target coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDescriptor {
    pub assign: Vec<usize>,
}

impl RingHom {
    /// Builds the map from an assignment of original coordinates (0-based).
    pub fn new(source: &CongruenceRing, target: &CongruenceRing, assign: &[usize]) -> Result<Self, LiftError> {
        if assign.len() != target.original_width() {
            return Err(LiftError::IllFormedHom(format!(
                "{} assignments for {} target coordinates",
                assign.len(),
                target.original_width()
            )));
        }
        let mut refined = Vec::new();
        for tc in target.coords() {
            let s = assign[tc.orig];
            if s >= source.original_width() {
                return Err(LiftError::IllFormedHom(format!("source coordinate {} out of range", s + 1)));
            }
            let found = source.coords().iter().position(|sc| sc.orig == s && (sc.q == 0 || sc.q == tc.q));
            match found {
                Some(i) if source.coords()[i].q == 0 || tc.q != 0 => refined.push(i),
                _ => {
                    return Err(LiftError::IllFormedHom(format!(
                        "target modulus at coordinate {} does not divide source modulus at {}",
                        tc.orig + 1,
                        s + 1
                    )))
                }
            }
        }
        Self::from_refined(source, target, refined)
    }

    /// Builds the map from refined coordinates directly.
    pub fn from_refined(
        source: &CongruenceRing,
        target: &CongruenceRing,
        assign: Vec<usize>,
    ) -> Result<Self, LiftError> {
        if assign.len() != target.width() {
            return Err(LiftError::IllFormedHom("assignment length".into()));
        }
        for (j, &i) in assign.iter().enumerate() {
            let (sq, tq) = (source.coords().get(i).map(|c| c.q), target.coords()[j].q);
            match sq {
                Some(sq) if sq == 0 || sq == tq => {}
                _ => return Err(LiftError::IllFormedHom(format!("coordinate {} cannot map to {}", i + 1, j + 1))),
            }
        }
        let mut hom = RingHom { source: source.clone(), target: target.clone(), assign, echelon_images: Vec::new() };
        hom.echelon_images = source.lattice().basis().iter().map(|b| hom.apply_raw(b)).collect();
        for (b, img) in source.lattice().basis().iter().zip(&hom.echelon_images) {
            if !target.contains_vec(img) {
                return Err(LiftError::IllFormedHom(format!("basis vector {b:?} maps outside the target")));
            }
        }
        if hom.apply_raw(&source.one()) != target.one() {
            return Err(LiftError::IllFormedHom("not unital".into()));
        }
        Ok(hom)
    }

    pub fn identity(ring: &CongruenceRing) -> Self {
        Self::from_refined(ring, ring, (0..ring.width()).collect()).expect("identity")
    }

    pub fn source(&self) -> &CongruenceRing {
        &self.source
    }

    pub fn target(&self) -> &CongruenceRing {
        &self.target
    }

    pub fn refined_assign(&self) -> &[usize] {
        &self.assign
    }

    fn apply_raw(&self, r: &[i64]) -> Vec<i64> {
        let v: Vec<i64> = self.assign.iter().map(|&i| r[i]).collect();
        self.target.reduce(&v)
    }

    pub fn apply(&self, r: &[i64]) -> Result<Vec<i64>, LiftError> {
        let r = self.source.elem(r)?;
        Ok(self.apply_raw(&r))
    }

    fn echelon(&self) -> MapEchelon {
        LinearMap {
            sources: self.source.lattice().basis(),
            images: &self.echelon_images,
            moduli: &self.target.moduli(),
        }
        .echelon()
    }

    pub fn kernel(&self) -> Lattice {
        self.echelon().kernel()
    }

    /// The preimage of `s` with nonnegative coordinates reduced by the kernel.
    pub fn preimage(&self, s: &[i64]) -> Option<Vec<i64>> {
        let s = self.target.elem(s).ok()?;
        self.echelon().preimage(&s).map(|x| self.source.reduce(&x))
    }

    pub fn image_lattice(&self) -> Lattice {
        Lattice::from_generators(self.target.width(), self.echelon_images.clone())
            .sum(&Lattice::diagonal(&self.target.moduli()))
    }

    pub fn check(&self) -> HomCheck {
        let surjective = self.image_lattice() == *self.target.lattice();
        let mut images: Vec<u64> = self
            .source
            .idempotents()
            .elements
            .iter()
            .map(|&e| self.target.support(&self.apply_raw(&self.source.indicator(e))))
            .collect();
        images.sort();
        images.dedup();
        let idempotent_surjective = images == self.target.idempotents().elements;
        HomCheck { ok: true, surjective, idempotent_surjective }
    }

    /// Whether the kernel is generated by the idempotents it contains.
    pub fn kernel_idempotent_generated(&self) -> bool {
        let k = self.kernel();
        let src = &self.source;
        let e =
            src.idempotents().elements.iter().copied().filter(|&e| k.contains(&src.indicator(e))).fold(0, |a, b| a | b);
        let ideal = Lattice::from_generators(src.width(), src.lattice().basis().iter().map(|b| src.mask_elem(b, e)))
            .sum(&Lattice::diagonal(&src.moduli()));
        ideal == k.sum(&Lattice::diagonal(&src.moduli()))
    }

    /// Ring homomorphisms preserve the rr-order; checked on all pairs.
    pub fn preserves_order_on(&self, elems: &[Vec<i64>]) -> bool {
        use crate::order::rr_le;
        elems.iter().all(|a| {
            elems
                .iter()
                .all(|b| !rr_le(&self.source, a, b) || rr_le(&self.target, &self.apply_raw(a), &self.apply_raw(b)))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub ok: bool,
    pub surjective: bool,
    pub idempotent_surjective: bool,
}

/// Largest idempotent `e` with `a ^ e b = 0`, in a weakly Baer ring.
pub fn max_orthogonal_idempotent(ring: &CongruenceRing, a: &[i64], b: &[i64]) -> Result<u64, LiftError> {
    let c = ring.wb_meet(a, b)?;
    Ok(ring.largest_idempotent_off(ring.support(&c)))
}

/// Exhaustive check of maximality over the idempotent algebra: `a ^ e b = 0`
/// and `a ^ f b != 0` for every idempotent `f > e`.
pub fn verify_max_orthogonal(ring: &CongruenceRing, a: &[i64], b: &[i64], e: u64) -> Result<bool, LiftError> {
    let orth = |f: u64| -> Result<bool, LiftError> {
        let fb = ring.mask_elem(b, f);
        Ok(ring.exact_meet(a, &fb)? == MeetResult::Zero)
    };
    if !orth(e)? {
        return Ok(false);
    }
    for f in ring.idempotents().elements {
        if f != e && f & e == e && orth(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftStep {
    pub target: Vec<i64>,
    pub preimage: Vec<i64>,
    /// Meets of the earlier lifts with the preimage.
    pub meets: Vec<Vec<i64>>,
    pub idempotents: Vec<Vec<i64>>,
    pub epsilon: Vec<i64>,
    pub lifted: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub lifted: Vec<Vec<i64>>,
    pub steps: Vec<LiftStep>,
    pub source_weakly_baer: bool,
    pub idempotent_surjective: bool,
}

/// Chooses the preimage used at each step.
pub trait PreimageChooser {
    fn choose(&mut self, hom: &RingHom, step: usize, target: &[i64], earlier: &[Vec<i64>]) -> Option<Vec<i64>>;
}

/// The deterministic lattice-solve preimage.
pub struct CanonicalPreimage;

impl PreimageChooser for CanonicalPreimage {
    fn choose(&mut self, hom: &RingHom, _: usize, target: &[i64], _: &[Vec<i64>]) -> Option<Vec<i64>> {
        hom.preimage(target)
    }
}

/// Preimages supplied up front, one per target element.
pub struct GivenPreimages(pub Vec<Vec<i64>>);

impl PreimageChooser for GivenPreimages {
    fn choose(&mut self, _: &RingHom, step: usize, _: &[i64], _: &[Vec<i64>]) -> Option<Vec<i64>> {
        self.0.get(step).cloned()
    }
}

fn pairwise_orthogonal(ring: &CongruenceRing, xs: &[Vec<i64>]) -> Result<Option<(usize, usize)>, LiftError> {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if ring.exact_meet(&xs[i], &xs[j])? != MeetResult::Zero {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Lifts a pairwise rr-orthogonal list with the canonical preimages.
pub fn lift_orthogonal(hom: &RingHom, targets: &[Vec<i64>]) -> Result<LiftReport, LiftError> {
    lift_orthogonal_with(hom, targets, &mut CanonicalPreimage)
}

/// Lifts `targets` one at a time: with `u` a preimage of the next element and
/// `e_i` the largest idempotent making `r_i` orthogonal to `e_i u`, the lift
/// is `eps u` where `eps = 1 - sum (1 - e_i)`.
pub fn lift_orthogonal_with(
    hom: &RingHom,
    targets: &[Vec<i64>],
    chooser: &mut dyn PreimageChooser,
) -> Result<LiftReport, LiftError> {
    let check = hom.check();
    if !check.surjective {
        return Err(LiftError::HypothesisFailure(Hypothesis::NotSurjective));
    }
    if !check.idempotent_surjective {
        return Err(LiftError::HypothesisFailure(Hypothesis::IdempotentsNotSurjective));
    }
    let src = hom.source();
    if !src.is_weakly_baer() {
        return Err(LiftError::HypothesisFailure(Hypothesis::SourceNotWeaklyBaer));
    }
    let targets: Vec<Vec<i64>> = targets.iter().map(|t| hom.target().elem(t)).collect::<Result<_, _>>()?;
    if let Some((i, j)) = pairwise_orthogonal(hom.target(), &targets)? {
        return Err(LiftError::NotOrthogonalInput(i, j));
    }

    let full = src.full_mask();
    let mut lifted: Vec<Vec<i64>> = Vec::new();
    let mut steps = Vec::new();
    for (n, s) in targets.iter().enumerate() {
        let u = chooser.choose(hom, n, s, &lifted).ok_or(LiftError::NoPreimage(n))?;
        let u = src.elem(&u)?;
        if hom.apply_raw(&u) != *s {
            return Err(LiftError::BadPreimage(n));
        }
        let mut meets = Vec::new();
        let mut idems = Vec::new();
        let mut complement_union = 0u64;
        for r in &lifted {
            meets.push(src.wb_meet(r, &u)?);
            let e = max_orthogonal_idempotent(src, r, &u)?;
            let c = full & !e;
            if c & complement_union != 0 {
                return Err(LiftError::InvariantBroken {
                    step: n,
                    detail: "complements of the idempotents overlap".into(),
                });
            }
            complement_union |= c;
            idems.push(src.indicator(e));
        }
        let eps = full & !complement_union;
        let r = src.mask_elem(&u, eps);
        if hom.apply_raw(&r) != *s {
            return Err(LiftError::InvariantBroken { step: n, detail: "lift does not map onto the target".into() });
        }
        for (i, prev) in lifted.iter().enumerate() {
            if src.wb_meet(prev, &r)? != src.zero() {
                return Err(LiftError::InvariantBroken { step: n, detail: format!("not orthogonal to lift {i}") });
            }
        }
        steps.push(LiftStep {
            target: s.clone(),
            preimage: u,
            meets,
            idempotents: idems,
            epsilon: src.indicator(eps),
            lifted: r.clone(),
        });
        lifted.push(r);
    }
    Ok(LiftReport { lifted, steps, source_weakly_baer: true, idempotent_surjective: true })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetViolation {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub image_of_meet: Vec<i64>,
    pub meet_of_images: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub kernel_idempotent_generated: bool,
    pub pairs_checked: u64,
    pub violation_count: u64,
    /// First violations found, capped.
    pub violations: Vec<MeetViolation>,
}

const VIOLATION_CAP: usize = 16;

fn meet_value(r: &CongruenceRing, a: &[i64], b: &[i64]) -> Result<Option<Vec<i64>>, LiftError> {
    Ok(match r.exact_meet(a, b)? {
        MeetResult::Meet(c) => Some(c),
        MeetResult::Zero => Some(r.zero()),
        MeetResult::Inconclusive(_) => None,
    })
}

/// Compares `phi(a ^ b)` with `phi(a) ^ phi(b)` on every pair of source
/// elements within `bound` and on the `extra` pairs.
pub fn hom_preserves_meets_check(
    hom: &RingHom,
    bound: u64,
    extra: &[(Vec<i64>, Vec<i64>)],
) -> Result<PreservationReport, LiftError> {
    let src = hom.source();
    let tgt = hom.target();
    let elems = src.elements_in_box(bound);
    let mut report = PreservationReport {
        kernel_idempotent_generated: hom.kernel_idempotent_generated(),
        pairs_checked: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    let mut visit = |a: &Vec<i64>, b: &Vec<i64>| -> Result<(), LiftError> {
        report.pairs_checked += 1;
        let Some(m) = meet_value(src, a, b)? else { return Ok(()) };
        let img = hom.apply_raw(&m);
        let other = meet_value(tgt, &hom.apply_raw(a), &hom.apply_raw(b))?;
        if other.as_ref() != Some(&img) {
            report.violation_count += 1;
            if report.violations.len() < VIOLATION_CAP {
                report.violations.push(MeetViolation {
                    a: a.clone(),
                    b: b.clone(),
                    image_of_meet: img,
                    meet_of_images: other,
                });
            }
        }
        Ok(())
    };
    for (a, b) in extra {
        let a = src.elem(a)?;
        let b = src.elem(b)?;
        visit(&a, &b)?;
    }
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i..] {
            visit(a, b)?;
        }
    }
    Ok(report)
}
