//! Coincidence sets, exact meets and orthogonal lifting.

use num_traits::Zero;
use serde::Serialize;

use super::func::PwPolyFunc;
use super::upoly::{Root, UPoly, Q};
use super::PlError;

/// A maximal closed interval on which `f − g` vanishes identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoincidenceInterval {
    #[serde(serialize_with = "ser_q")]
    pub lo: Q,
    #[serde(serialize_with = "ser_q")]
    pub hi: Q,
    pub f_vanishes_lo: bool,
    pub f_vanishes_hi: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidenceSet {
    pub intervals: Vec<CoincidenceInterval>,
    /// Zeros of `f − g` outside every interval.
    pub isolated: Vec<Root>,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn coincidence(f: &PwPolyFunc, g: &PwPolyFunc) -> Result<CoincidenceSet, PlError> {
    let d = f.sub(g)?;
    let mut intervals = Vec::new();
    let mut isolated: Vec<Root> = Vec::new();
    for (i, (l, r, p)) in d.intervals().enumerate() {
        if p.is_zero() {
            intervals.push(CoincidenceInterval {
                lo: l.clone(),
                hi: r.clone(),
                f_vanishes_lo: f.eval(l)?.is_zero(),
                f_vanishes_hi: f.eval(r)?.is_zero(),
            });
            continue;
        }
        if i == 0 && p.eval(l).is_zero() {
            isolated.push(Root::Rational(l.clone()));
        }
        isolated.extend(p.roots_in(l, r));
    }
    isolated.retain(|z| match z {
        Root::Rational(x) => !intervals.iter().any(|iv| &iv.lo <= x && x <= &iv.hi),
        Root::Irrational(..) => true,
    });
    isolated.dedup();
    Ok(CoincidenceSet { intervals, isolated })
}

/// Smallest zero of `f` in `(a, b]`.
fn first_zero(f: &PwPolyFunc, a: &Q, b: &Q) -> Result<Option<Q>, PlError> {
    for (l, r, p) in f.intervals() {
        if r <= a || l >= b {
            continue;
        }
        let (lo, hi) = (l.max(a), r.min(b));
        if p.is_zero() {
            return Ok(Some(lo.clone()));
        }
        if let Some(z) = p.roots_in(lo, hi).into_iter().next() {
            return match z {
                Root::Rational(x) => Ok(Some(x)),
                Root::Irrational(l, r) => Err(PlError::IrrationalCut { interval: Box::new((l, r)) }),
            };
        }
    }
    Ok(None)
}

/// Largest zero of `f` in `[a, b)`.
fn last_zero(f: &PwPolyFunc, a: &Q, b: &Q) -> Result<Option<Q>, PlError> {
    let pieces: Vec<(&Q, &Q, &UPoly)> = f.intervals().collect();
    for (l, r, p) in pieces.into_iter().rev() {
        if r <= a || l >= b {
            continue;
        }
        let (lo, hi) = (l.max(a), r.min(b));
        if p.is_zero() {
            return Ok(Some(hi.clone()));
        }
        let mut roots = p.roots_in(lo, hi);
        if roots.last() == Some(&Root::Rational(hi.clone())) {
            roots.pop();
        }
        if let Some(z) = roots.pop() {
            return match z {
                Root::Rational(x) => Ok(Some(x)),
                Root::Irrational(l, r) => Err(PlError::IrrationalCut { interval: Box::new((l, r)) }),
            };
        }
        if p.eval(lo).is_zero() {
            return Ok(Some(lo.clone()));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetDetail {
    pub meet: PwPolyFunc,
    /// Closed intervals on which the meet equals `f`.
    pub support: Vec<(Q, Q)>,
    pub coincidence: CoincidenceSet,
}

/// The largest common lower bound.
///
/// On a coincidence interval `[a, b]` the kept part starts at `a` when `a` is
/// the domain end or `f(a) = 0`, and otherwise at the first zero of `f` past
/// `a`; the right end is symmetric. Everything else is zero.
pub fn pl_meet_detailed(f: &PwPolyFunc, g: &PwPolyFunc) -> Result<MeetDetail, PlError> {
    let coincidence = coincidence(f, g)?;
    let mut support = Vec::new();
    for iv in &coincidence.intervals {
        let left =
            if &iv.lo == f.lo() || iv.f_vanishes_lo { Some(iv.lo.clone()) } else { first_zero(f, &iv.lo, &iv.hi)? };
        let right =
            if &iv.hi == f.hi() || iv.f_vanishes_hi { Some(iv.hi.clone()) } else { last_zero(f, &iv.lo, &iv.hi)? };
        if let (Some(l), Some(r)) = (left, right) {
            if l < r {
                support.push((l, r));
            }
        }
    }
    // Trim to where f is not identically zero.
    let live = f.support_intervals();
    let support: Vec<(Q, Q)> = support
        .iter()
        .flat_map(|(l, r)| {
            live.iter().filter_map(move |(a, b)| {
                let (lo, hi) = (l.max(a), r.min(b));
                (lo < hi).then(|| (lo.clone(), hi.clone()))
            })
        })
        .collect();
    let meet = f.keep_on(&support)?;
    Ok(MeetDetail { meet, support, coincidence })
}

pub fn pl_meet(f: &PwPolyFunc, g: &PwPolyFunc) -> Result<PwPolyFunc, PlError> {
    Ok(pl_meet_detailed(f, g)?.meet)
}

pub fn pl_rr_le(f: &PwPolyFunc, g: &PwPolyFunc) -> Result<bool, PlError> {
    f.rr_le(g)
}

pub fn pl_restrict(f: &PwPolyFunc, a: &Q, b: &Q) -> Result<PwPolyFunc, PlError> {
    f.restrict(a, b)
}

/// Every outer end of a support interval is a domain end or a zero of `f`.
pub fn boundary_condition_holds(f: &PwPolyFunc, detail: &MeetDetail) -> bool {
    detail.support.iter().all(|(l, r)| {
        let ok = |x: &Q, end: &Q| x == end || f.eval(x).map(|v| v.is_zero()).unwrap_or(false);
        ok(l, f.lo()) && ok(r, f.hi())
    })
}

/// How each input is first extended before correction.
#[derive(Debug, Clone)]
pub enum Extension {
    Zero,
    /// Explicit candidate extensions, one per input.
    Custom(Vec<PwPolyFunc>),
}

#[derive(Debug, Clone)]
pub struct LiftedFamily {
    pub lifted: Vec<PwPolyFunc>,
    /// Intervals zeroed in each candidate.
    pub zeroed: Vec<Vec<(Q, Q)>>,
}

/// Extends pairwise orthogonal functions on `[a, b]` to `[lo, hi]`, keeping
/// them orthogonal: each candidate is zeroed on the supports of its meets
/// with the functions already lifted.
pub fn pl_lift_orthogonal(fs: &[PwPolyFunc], lo: &Q, hi: &Q, ext: &Extension) -> Result<LiftedFamily, PlError> {
    let mut out = LiftedFamily { lifted: Vec::new(), zeroed: Vec::new() };
    let Some(first) = fs.first() else { return Ok(out) };
    let (a, b) = first.domain();
    if &a < lo || &b > hi {
        return Err(PlError::OutOfDomain(a));
    }
    for f in fs {
        f.same_domain(first)?;
        for end in [&a, &b] {
            let interior = (end == &a && &a > lo) || (end == &b && &b < hi);
            if interior && !f.eval(end)?.is_zero() {
                return Err(PlError::NotZeroAtBoundary { at: end.clone() });
            }
        }
    }
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if !pl_meet(&fs[i], &fs[j])?.is_zero() {
                return Err(PlError::NotOrthogonalInput(i, j));
            }
        }
    }
    if let Extension::Custom(gs) = ext {
        if gs.len() != fs.len() {
            return Err(PlError::LiftMismatch(gs.len().min(fs.len())));
        }
    }
    for (n, f) in fs.iter().enumerate() {
        let g = match ext {
            Extension::Zero => f.extend_by_zero(lo, hi)?,
            Extension::Custom(gs) => {
                let g = &gs[n];
                if g.lo() != lo || g.hi() != hi || &g.restrict(&a, &b)? != f {
                    return Err(PlError::LiftMismatch(n));
                }
                g.clone()
            }
        };
        let mut zeroed = Vec::new();
        for prev in &out.lifted {
            zeroed.extend(pl_meet_detailed(&g, prev)?.support);
        }
        let lifted = g.zero_on(&zeroed)?;
        if &lifted.restrict(&a, &b)? != f {
            return Err(PlError::LiftInvariant(format!("input {n} no longer restricts back")));
        }
        for (i, prev) in out.lifted.iter().enumerate() {
            if !pl_meet(&lifted, prev)?.is_zero() {
                return Err(PlError::LiftInvariant(format!("lifts {i} and {n} not orthogonal")));
            }
        }
        out.lifted.push(lifted);
        out.zeroed.push(zeroed);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::upoly::{q, qi};
    use super::*;

    fn poly(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    /// `c (x - l)(r - x)` on `[l, r]`.
    fn bump(l: &Q, r: &Q, c: &Q) -> UPoly {
        UPoly::linear_root(l).mul(&UPoly::linear_root(r)).scale(&-c.clone())
    }

    fn sine_analog() -> (PwPolyFunc, PwPolyFunc) {
        let p1 = poly(&[0, 1, -1]);
        let p2 = poly(&[2, -3, 1]);
        let f = PwPolyFunc::new(qi(0), qi(2), vec![qi(1)], vec![p1.clone(), p2.clone()]).unwrap();
        let g = PwPolyFunc::new(qi(0), qi(2), vec![qi(1)], vec![p1, p2.neg()]).unwrap();
        (f, g)
    }

    fn cozbad() -> (PwPolyFunc, PwPolyFunc) {
        let f = PwPolyFunc::from_poly(qi(-1), qi(1), UPoly::new(vec![q(1, 2), qi(-1)])).unwrap();
        let g = PwPolyFunc::new(
            qi(-1),
            qi(1),
            vec![qi(0), q(1, 2)],
            vec![
                UPoly::new(vec![q(1, 2), qi(-2)]),
                UPoly::new(vec![q(1, 2), qi(-1)]),
                UPoly::new(vec![q(1, 4), qi(0), qi(-1)]),
            ],
        )
        .unwrap();
        (f, g)
    }

    #[test]
    fn sine_analog_meet() {
        let (f, g) = sine_analog();
        let d = pl_meet_detailed(&f, &g).unwrap();
        let expected = PwPolyFunc::new(qi(0), qi(2), vec![qi(1)], vec![poly(&[0, 1, -1]), UPoly::zero()]).unwrap();
        assert_eq!(d.meet, expected);
        assert_eq!(d.coincidence.isolated, vec![Root::Rational(qi(2))]);
        assert!(boundary_condition_holds(&f, &d));
        assert!(d.meet.rr_le(&f).unwrap() && d.meet.rr_le(&g).unwrap());
    }

    #[test]
    fn cozbad_restriction_changes_meet() {
        let (f, g) = cozbad();
        let c = coincidence(&f, &g).unwrap();
        assert_eq!(c.intervals.len(), 1);
        assert_eq!((c.intervals[0].lo.clone(), c.intervals[0].hi.clone()), (qi(0), q(1, 2)));
        assert!(!c.intervals[0].f_vanishes_lo && c.intervals[0].f_vanishes_hi);
        assert!(pl_meet(&f, &g).unwrap().is_zero());
        let (fr, gr) = (f.restrict(&qi(0), &qi(1)).unwrap(), g.restrict(&qi(0), &qi(1)).unwrap());
        let h = pl_meet(&fr, &gr).unwrap();
        assert_eq!(h, fr.keep_on(&[(qi(0), q(1, 2))]).unwrap());
        assert!(!h.is_zero());
    }

    #[test]
    fn coincidence_cases() {
        let (f, _) = sine_analog();
        let c = coincidence(&f, &f).unwrap();
        assert_eq!(c.intervals.len(), 1);
        assert_eq!((c.intervals[0].lo.clone(), c.intervals[0].hi.clone()), (qi(0), qi(2)));
        let x = PwPolyFunc::from_poly(qi(0), qi(1), poly(&[0, 1])).unwrap();
        let x2 = PwPolyFunc::from_poly(qi(0), qi(1), poly(&[0, 2])).unwrap();
        let c = coincidence(&x, &x2).unwrap();
        assert!(c.intervals.is_empty());
        assert_eq!(c.isolated, vec![Root::Rational(qi(0))]);
    }

    #[test]
    fn cut_at_interior_zero() {
        // f = g on [0,1] inside [-1,1]; f(0) != 0 but f vanishes at 1/2.
        let f = PwPolyFunc::from_poly(qi(-1), qi(1), UPoly::new(vec![q(1, 2), qi(-1)])).unwrap();
        let g = PwPolyFunc::new(
            qi(-1),
            qi(1),
            vec![qi(0)],
            vec![UPoly::new(vec![q(1, 2), qi(-2)]), UPoly::new(vec![q(1, 2), qi(-1)])],
        )
        .unwrap();
        let d = pl_meet_detailed(&f, &g).unwrap();
        assert_eq!(d.support, vec![(q(1, 2), qi(1))]);
        assert!(boundary_condition_holds(&f, &d));
    }

    #[test]
    fn irrational_cut_reported() {
        // f = x^2 - 1/2 with f(0) != 0 and first zero 1/sqrt(2)
        let p = UPoly::new(vec![q(-1, 2), qi(0), qi(1)]);
        let f = PwPolyFunc::from_poly(qi(-1), qi(1), p.clone()).unwrap();
        let g = PwPolyFunc::new(qi(-1), qi(1), vec![qi(0)], vec![p.add(&poly(&[0, 1])), p]).unwrap();
        assert!(matches!(pl_meet(&f, &g), Err(PlError::IrrationalCut { .. })));
    }

    #[test]
    fn meet_laws_on_examples() {
        let (f, g) = sine_analog();
        let z = PwPolyFunc::zero(qi(0), qi(2)).unwrap();
        assert_eq!(pl_meet(&f, &f).unwrap(), f);
        assert!(pl_meet(&f, &z).unwrap().is_zero());
        assert_eq!(pl_meet(&f, &g).unwrap(), pl_meet(&g, &f).unwrap());
    }

    #[test]
    fn lift_zero_extension_unchanged() {
        let b1 =
            PwPolyFunc::new(qi(0), qi(1), vec![q(1, 2)], vec![bump(&qi(0), &q(1, 2), &qi(1)), UPoly::zero()]).unwrap();
        let b2 =
            PwPolyFunc::new(qi(0), qi(1), vec![q(1, 2)], vec![UPoly::zero(), bump(&q(1, 2), &qi(1), &qi(3))]).unwrap();
        let out = pl_lift_orthogonal(&[b1.clone(), b2.clone()], &qi(0), &qi(2), &Extension::Zero).unwrap();
        assert_eq!(out.lifted[0], b1.extend_by_zero(&qi(0), &qi(2)).unwrap());
        assert_eq!(out.lifted[1], b2.extend_by_zero(&qi(0), &qi(2)).unwrap());
        assert!(out.zeroed.iter().all(Vec::is_empty));
        assert!(pl_lift_orthogonal(&[], &qi(0), &qi(2), &Extension::Zero).unwrap().lifted.is_empty());
    }

    #[test]
    fn lift_corrects_overlapping_candidate() {
        let b1 =
            PwPolyFunc::new(qi(0), qi(1), vec![q(1, 2)], vec![bump(&qi(0), &q(1, 2), &qi(1)), UPoly::zero()]).unwrap();
        let b2 =
            PwPolyFunc::new(qi(0), qi(1), vec![q(1, 2)], vec![UPoly::zero(), bump(&q(1, 2), &qi(1), &qi(3))]).unwrap();
        let tail = bump(&q(5, 4), &q(7, 4), &qi(2));
        let ext = |b: &PwPolyFunc| {
            let e = b.extend_by_zero(&qi(0), &qi(2)).unwrap();
            let t =
                PwPolyFunc::new(qi(0), qi(2), vec![q(5, 4), q(7, 4)], vec![UPoly::zero(), tail.clone(), UPoly::zero()])
                    .unwrap();
            e.add(&t).unwrap()
        };
        let (g1, g2) = (ext(&b1), ext(&b2));
        assert!(!pl_meet(&g1, &g2).unwrap().is_zero());
        let out =
            pl_lift_orthogonal(&[b1.clone(), b2.clone()], &qi(0), &qi(2), &Extension::Custom(vec![g1.clone(), g2]))
                .unwrap();
        assert_eq!(out.lifted[0], g1);
        assert_eq!(out.zeroed[1], vec![(q(5, 4), q(7, 4))]);
        assert!(pl_meet(&out.lifted[0], &out.lifted[1]).unwrap().is_zero());
        assert_eq!(out.lifted[1].restrict(&qi(0), &qi(1)).unwrap(), b2);
    }

    #[test]
    fn lift_errors() {
        let b = PwPolyFunc::from_poly(qi(0), qi(1), bump(&qi(0), &qi(1), &qi(1))).unwrap();
        assert_eq!(
            pl_lift_orthogonal(&[b.clone(), b.clone()], &qi(0), &qi(2), &Extension::Zero).unwrap_err(),
            PlError::NotOrthogonalInput(0, 1)
        );
        let x = PwPolyFunc::from_poly(qi(0), qi(1), poly(&[0, 1])).unwrap();
        assert!(matches!(
            pl_lift_orthogonal(&[x], &qi(0), &qi(2), &Extension::Zero),
            Err(PlError::NotZeroAtBoundary { .. })
        ));
    }
}
