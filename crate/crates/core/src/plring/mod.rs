//! Continuous piecewise-polynomial functions with rational data on a closed
//! interval, as a computable stand-in for `C(X)` on an interval.
//!
//! Meets are exact: a common lower bound of `f` and `g` equals `f` on a union
//! of closed intervals inside `z(f − g)` whose ends are zeros of `f` or ends
//! of the domain, and [`pl_meet`] keeps the largest such union.

mod func;
mod meet;
pub mod upoly;

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::order::RrRing;

pub use func::{one, parse_rational, FuncLiteral, PieceLiteral, PwPolyFunc, RatLit};
pub use meet::{
    boundary_condition_holds, coincidence, pl_lift_orthogonal, pl_meet, pl_meet_detailed, pl_restrict, pl_rr_le,
    CoincidenceInterval, CoincidenceSet, Extension, LiftedFamily, MeetDetail,
};
pub use upoly::{Root, UPoly, Q};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PlError {
    #[error("functions live on different domains")]
    DomainMismatch,
    #[error("domain must have lo < hi")]
    EmptyDomain,
    #[error("bad breakpoints: {0}")]
    BadBreakpoints(String),
    #[error("pieces disagree at breakpoint {at}")]
    Discontinuous { at: Q },
    #[error("point {0} outside the domain")]
    OutOfDomain(Q),
    #[error("meet boundary falls on an irrational zero in ({}, {})", .interval.0, .interval.1)]
    IrrationalCut { interval: Box<(Q, Q)> },
    #[error("inputs {0} and {1} are not rr-orthogonal")]
    NotOrthogonalInput(usize, usize),
    #[error("input does not vanish at the subdomain end {at}")]
    NotZeroAtBoundary { at: Q },
    #[error("candidate extension {0} does not restrict to its input")]
    LiftMismatch(usize),
    #[error("lifting invariant broken: {0}")]
    LiftInvariant(String),
    #[error("{0}")]
    Parse(String),
}

/// Functions on one fixed interval, as an [`RrRing`].
///
/// `size` is the least `m` for which the function is piecewise linear on the
/// uniform `m`-grid with integer node values in `[-m, m]`, and `u64::MAX`
/// otherwise; the enumeration is over those grid functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlRing {
    pub lo: Q,
    pub hi: Q,
}

/// Largest number of atoms for which lower-bound candidates are enumerated.
pub const MAX_CANDIDATE_ATOMS: usize = 14;

impl PlRing {
    pub fn new(lo: Q, hi: Q) -> Result<Self, PlError> {
        if lo >= hi {
            return Err(PlError::EmptyDomain);
        }
        Ok(PlRing { lo, hi })
    }

    fn grid(&self, m: u64) -> Vec<Q> {
        let step = (&self.hi - &self.lo) / Q::from_integer(m.into());
        (0..=m).map(|k| &self.lo + &step * Q::from_integer(k.into())).collect()
    }

    /// Closed intervals between consecutive zeros of `f` (or domain ends)
    /// inside the coincidence intervals of `f` and `g`. `None` when a zero
    /// is irrational.
    pub fn lower_bound_atoms(&self, f: &PwPolyFunc, g: &PwPolyFunc) -> Option<Vec<(Q, Q)>> {
        let c = coincidence(f, g).ok()?;
        let mut atoms = Vec::new();
        for iv in &c.intervals {
            let mut cuts: Vec<Q> = Vec::new();
            if iv.lo == self.lo {
                cuts.push(iv.lo.clone());
            }
            if iv.hi == self.hi {
                cuts.push(iv.hi.clone());
            }
            for (l, r, p) in f.intervals() {
                if r < &iv.lo || l > &iv.hi {
                    continue;
                }
                let (lo, hi) = (l.max(&iv.lo), r.min(&iv.hi));
                if p.is_zero() || p.eval(lo).is_zero() {
                    cuts.push(lo.clone());
                }
                if p.is_zero() {
                    cuts.push(hi.clone());
                    continue;
                }
                for z in p.roots_in(lo, hi) {
                    match z {
                        Root::Rational(x) => cuts.push(x),
                        Root::Irrational(..) => return None,
                    }
                }
            }
            cuts.sort();
            cuts.dedup();
            atoms.extend(cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())));
        }
        Some(atoms)
    }
}

impl RrRing for PlRing {
    type Elem = PwPolyFunc;

    fn zero(&self) -> PwPolyFunc {
        PwPolyFunc::zero(self.lo.clone(), self.hi.clone()).expect("nonempty domain")
    }

    fn one(&self) -> PwPolyFunc {
        one(self.lo.clone(), self.hi.clone()).expect("nonempty domain")
    }

    fn add(&self, a: &PwPolyFunc, b: &PwPolyFunc) -> PwPolyFunc {
        a.add(b).expect("same domain")
    }

    fn neg(&self, a: &PwPolyFunc) -> PwPolyFunc {
        a.neg()
    }

    fn mul(&self, a: &PwPolyFunc, b: &PwPolyFunc) -> PwPolyFunc {
        a.mul(b).expect("same domain")
    }

    fn contains(&self, a: &PwPolyFunc) -> bool {
        a.lo() == &self.lo && a.hi() == &self.hi
    }

    fn size(&self, a: &PwPolyFunc) -> u64 {
        if a.max_degree() > 1 {
            return u64::MAX;
        }
        (1..=64u64)
            .find(|&m| {
                let grid = self.grid(m);
                let bound = Q::from_integer(m.into());
                a.breakpoints().iter().all(|b| grid.contains(b))
                    && grid.iter().all(|x| {
                        let v = a.eval(x).expect("grid inside domain");
                        v.is_integer() && v.abs() <= bound
                    })
            })
            .unwrap_or(u64::MAX)
    }

    fn elements_within(&self, bound: u64) -> Vec<PwPolyFunc> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for m in 1..=bound {
            let grid = self.grid(m);
            let span = 2 * m as usize + 1;
            let total = span.pow(grid.len() as u32);
            for mut code in 0..total {
                let nodes: Vec<(Q, Q)> = grid
                    .iter()
                    .map(|x| {
                        let v = (code % span) as i64 - m as i64;
                        code /= span;
                        (x.clone(), Q::from_integer(v.into()))
                    })
                    .collect();
                let f = PwPolyFunc::linear_interpolation(&nodes).expect("grid nodes");
                if seen.insert(f.clone()) {
                    out.push(f);
                }
            }
        }
        out
    }

    fn lower_bound_candidates(&self, a: &PwPolyFunc, b: &PwPolyFunc) -> Option<Vec<PwPolyFunc>> {
        let atoms = self.lower_bound_atoms(a, b)?;
        if atoms.len() > MAX_CANDIDATE_ATOMS {
            return None;
        }
        let out = (0u32..1 << atoms.len())
            .map(|mask| {
                let chosen: Vec<(Q, Q)> =
                    atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect();
                a.keep_on(&chosen).expect("atoms end at zeros")
            })
            .collect();
        Some(out)
    }

    fn is_zero(&self, a: &PwPolyFunc) -> bool {
        a.is_zero()
    }
}

impl PwPolyFunc {
    /// Whether the function is the constant one.
    pub fn is_one(&self) -> bool {
        self.pieces().len() == 1 && self.pieces()[0] == UPoly::constant(Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::upoly::{q, qi};
    use super::*;
    use crate::order::{meet_oracle, MeetResult};

    #[test]
    fn oracle_agrees_on_sine_analog() {
        let ring = PlRing::new(qi(0), qi(2)).unwrap();
        let f = PwPolyFunc::new(
            qi(0),
            qi(2),
            vec![qi(1)],
            vec![UPoly::from_ints(&[0, 1, -1]), UPoly::from_ints(&[2, -3, 1])],
        )
        .unwrap();
        let g = PwPolyFunc::new(
            qi(0),
            qi(2),
            vec![qi(1)],
            vec![UPoly::from_ints(&[0, 1, -1]), UPoly::from_ints(&[-2, 3, -1])],
        )
        .unwrap();
        let out = meet_oracle(&ring, &f, &g, 1).unwrap();
        assert!(out.certified);
        assert_eq!(out.result, MeetResult::Meet(pl_meet(&f, &g).unwrap()));
    }

    #[test]
    fn grid_sizes_and_enumeration() {
        let ring = PlRing::new(qi(0), qi(1)).unwrap();
        let els = ring.elements_within(2);
        assert!(els.iter().all(|f| ring.size(f) <= 2));
        assert!(els.contains(&ring.one()));
        let tri = PwPolyFunc::linear_interpolation(&[(qi(0), qi(0)), (q(1, 2), qi(2)), (qi(1), qi(0))]).unwrap();
        assert_eq!(ring.size(&tri), 2);
        assert!(ring.one().is_one());
        let sq = PwPolyFunc::from_poly(qi(0), qi(1), UPoly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(ring.size(&sq), u64::MAX);
    }
}
