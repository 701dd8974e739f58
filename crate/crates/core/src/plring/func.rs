//! Continuous piecewise-polynomial functions on a closed rational interval.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::upoly::{UPoly, Q};
use super::PlError;

/// A continuous function on `[lo, hi]`, polynomial between breakpoints.
///
/// `pieces[i]` lives on `[cuts[i], cuts[i + 1]]` where the cuts are `lo`, the
/// interior breakpoints, then `hi`. Adjacent pieces always differ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PwPolyFunc {
    lo: Q,
    hi: Q,
    breaks: Vec<Q>,
    pieces: Vec<UPoly>,
}

impl fmt::Debug for PwPolyFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]:", self.lo, self.hi)?;
        for (l, r, p) in self.intervals() {
            write!(f, " [{l},{r}] {p:?};")?;
        }
        Ok(())
    }
}

impl PwPolyFunc {
    /// Validates strict ordering and continuity, then merges equal neighbours.
    pub fn new(lo: Q, hi: Q, breaks: Vec<Q>, pieces: Vec<UPoly>) -> Result<Self, PlError> {
        if lo >= hi {
            return Err(PlError::EmptyDomain);
        }
        if pieces.len() != breaks.len() + 1 {
            return Err(PlError::BadBreakpoints("piece count must be breakpoints + 1".into()));
        }
        let mut prev = &lo;
        for b in &breaks {
            if b <= prev || b >= &hi {
                return Err(PlError::BadBreakpoints(format!("breakpoint {b} out of order")));
            }
            prev = b;
        }
        for (i, b) in breaks.iter().enumerate() {
            if pieces[i].eval(b) != pieces[i + 1].eval(b) {
                return Err(PlError::Discontinuous { at: b.clone() });
            }
        }
        let mut out = PwPolyFunc { lo, hi, breaks: Vec::new(), pieces: Vec::new() };
        for (i, p) in pieces.into_iter().enumerate() {
            if out.pieces.last() == Some(&p) {
                continue;
            }
            if i > 0 {
                out.breaks.push(breaks[i - 1].clone());
            }
            out.pieces.push(p);
        }
        Ok(out)
    }

    pub fn from_poly(lo: Q, hi: Q, p: UPoly) -> Result<Self, PlError> {
        Self::new(lo, hi, Vec::new(), vec![p])
    }

    pub fn zero(lo: Q, hi: Q) -> Result<Self, PlError> {
        Self::from_poly(lo, hi, UPoly::zero())
    }

    pub fn constant(lo: Q, hi: Q, c: Q) -> Result<Self, PlError> {
        Self::from_poly(lo, hi, UPoly::constant(c))
    }

    /// Linear interpolation through `(x, y)` nodes; the first and last `x`
    /// become the domain.
    pub fn linear_interpolation(nodes: &[(Q, Q)]) -> Result<Self, PlError> {
        if nodes.len() < 2 {
            return Err(PlError::EmptyDomain);
        }
        let pieces = nodes
            .windows(2)
            .map(|w| {
                let (x0, y0) = &w[0];
                let (x1, y1) = &w[1];
                let slope = (y1 - y0) / (x1 - x0);
                UPoly::new(vec![y0 - &slope * x0, slope])
            })
            .collect();
        let breaks = nodes[1..nodes.len() - 1].iter().map(|n| n.0.clone()).collect();
        Self::new(nodes[0].0.clone(), nodes[nodes.len() - 1].0.clone(), breaks, pieces)
    }

    pub fn lo(&self) -> &Q {
        &self.lo
    }

    pub fn hi(&self) -> &Q {
        &self.hi
    }

    pub fn domain(&self) -> (Q, Q) {
        (self.lo.clone(), self.hi.clone())
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[UPoly] {
        &self.pieces
    }

    /// `(left, right, polynomial)` per piece.
    pub fn intervals(&self) -> impl Iterator<Item = (&Q, &Q, &UPoly)> {
        let n = self.pieces.len();
        (0..n).map(move |i| {
            let l = if i == 0 { &self.lo } else { &self.breaks[i - 1] };
            let r = if i + 1 == n { &self.hi } else { &self.breaks[i] };
            (l, r, &self.pieces[i])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].is_zero()
    }

    pub fn max_degree(&self) -> i64 {
        self.pieces.iter().map(UPoly::degree).max().unwrap_or(-1)
    }

    /// Index of the piece whose closed interval holds `x` (leftmost on ties).
    fn piece_at(&self, x: &Q) -> usize {
        self.breaks.partition_point(|b| b < x)
    }

    /// The polynomial governing the open interval `(l, r)`.
    pub fn piece_on(&self, l: &Q, r: &Q) -> &UPoly {
        let mid = (l + r) / Q::from_integer(2.into());
        &self.pieces[self.piece_at(&mid)]
    }

    pub fn eval(&self, x: &Q) -> Result<Q, PlError> {
        if x < &self.lo || x > &self.hi {
            return Err(PlError::OutOfDomain(x.clone()));
        }
        Ok(self.pieces[self.piece_at(x)].eval(x))
    }

    pub fn same_domain(&self, o: &PwPolyFunc) -> Result<(), PlError> {
        if self.lo != o.lo || self.hi != o.hi {
            return Err(PlError::DomainMismatch);
        }
        Ok(())
    }

    /// Sorted union of both breakpoint sets.
    fn merged_breaks(&self, extra: &[Q]) -> Vec<Q> {
        let mut b: Vec<Q> =
            self.breaks.iter().chain(extra).filter(|x| **x > self.lo && **x < self.hi).cloned().collect();
        b.sort();
        b.dedup();
        b
    }

    fn cuts(lo: &Q, hi: &Q, breaks: &[Q]) -> Vec<Q> {
        let mut c = Vec::with_capacity(breaks.len() + 2);
        c.push(lo.clone());
        c.extend(breaks.iter().cloned());
        c.push(hi.clone());
        c
    }

    fn combine(&self, o: &PwPolyFunc, op: impl Fn(&UPoly, &UPoly) -> UPoly) -> Result<PwPolyFunc, PlError> {
        self.same_domain(o)?;
        let breaks = self.merged_breaks(&o.breaks);
        let cuts = Self::cuts(&self.lo, &self.hi, &breaks);
        let pieces = cuts.windows(2).map(|w| op(self.piece_on(&w[0], &w[1]), o.piece_on(&w[0], &w[1]))).collect();
        PwPolyFunc::new(self.lo.clone(), self.hi.clone(), breaks, pieces)
    }

    pub fn add(&self, o: &PwPolyFunc) -> Result<PwPolyFunc, PlError> {
        self.combine(o, UPoly::add)
    }

    pub fn sub(&self, o: &PwPolyFunc) -> Result<PwPolyFunc, PlError> {
        self.combine(o, UPoly::sub)
    }

    pub fn mul(&self, o: &PwPolyFunc) -> Result<PwPolyFunc, PlError> {
        self.combine(o, UPoly::mul)
    }

    pub fn neg(&self) -> PwPolyFunc {
        PwPolyFunc {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(UPoly::neg).collect(),
        }
    }

    /// `f·(f − g) = 0`.
    pub fn rr_le(&self, o: &PwPolyFunc) -> Result<bool, PlError> {
        self.same_domain(o)?;
        let breaks = self.merged_breaks(&o.breaks);
        let cuts = Self::cuts(&self.lo, &self.hi, &breaks);
        Ok(cuts.windows(2).all(|w| {
            let f = self.piece_on(&w[0], &w[1]);
            f.is_zero() || f.mul(&f.sub(o.piece_on(&w[0], &w[1]))).is_zero()
        }))
    }

    pub fn restrict(&self, a: &Q, b: &Q) -> Result<PwPolyFunc, PlError> {
        if a < &self.lo || b > &self.hi || a >= b {
            return Err(PlError::OutOfDomain(if a < &self.lo { a.clone() } else { b.clone() }));
        }
        let breaks: Vec<Q> = self.breaks.iter().filter(|x| *x > a && *x < b).cloned().collect();
        let cuts = Self::cuts(a, b, &breaks);
        let pieces = cuts.windows(2).map(|w| self.piece_on(&w[0], &w[1]).clone()).collect();
        PwPolyFunc::new(a.clone(), b.clone(), breaks, pieces)
    }

    /// Extension to `[lo, hi]` by zero outside the current domain.
    pub fn extend_by_zero(&self, lo: &Q, hi: &Q) -> Result<PwPolyFunc, PlError> {
        if lo > &self.lo || hi < &self.hi {
            return Err(PlError::OutOfDomain(lo.clone()));
        }
        let mut breaks = Vec::new();
        let mut pieces = Vec::new();
        if lo < &self.lo {
            breaks.push(self.lo.clone());
            pieces.push(UPoly::zero());
        }
        pieces.extend(self.pieces.iter().cloned());
        breaks.extend(self.breaks.iter().cloned());
        if hi > &self.hi {
            breaks.push(self.hi.clone());
            pieces.push(UPoly::zero());
        }
        PwPolyFunc::new(lo.clone(), hi.clone(), breaks, pieces).map_err(|e| match e {
            PlError::Discontinuous { at } => PlError::NotZeroAtBoundary { at },
            e => e,
        })
    }

    /// `f` on the given closed intervals, zero elsewhere. Fails when the
    /// result is discontinuous.
    pub fn keep_on(&self, intervals: &[(Q, Q)]) -> Result<PwPolyFunc, PlError> {
        self.mask(intervals, true)
    }

    /// `f` with the given closed intervals replaced by zero.
    pub fn zero_on(&self, intervals: &[(Q, Q)]) -> Result<PwPolyFunc, PlError> {
        self.mask(intervals, false)
    }

    fn mask(&self, intervals: &[(Q, Q)], keep: bool) -> Result<PwPolyFunc, PlError> {
        let ends: Vec<Q> = intervals.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        let breaks = self.merged_breaks(&ends);
        let cuts = Self::cuts(&self.lo, &self.hi, &breaks);
        let pieces = cuts
            .windows(2)
            .map(|w| {
                let inside = intervals.iter().any(|(a, b)| a <= &w[0] && &w[1] <= b);
                if inside == keep {
                    self.piece_on(&w[0], &w[1]).clone()
                } else {
                    UPoly::zero()
                }
            })
            .collect();
        PwPolyFunc::new(self.lo.clone(), self.hi.clone(), breaks, pieces)
    }

    /// Maximal closed intervals off which `f` vanishes identically, i.e. the
    /// closure of the cozero set minus isolated zeros.
    pub fn support_intervals(&self) -> Vec<(Q, Q)> {
        let mut out: Vec<(Q, Q)> = Vec::new();
        for (l, r, p) in self.intervals() {
            if p.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if &last.1 == l => last.1 = r.clone(),
                _ => out.push((l.clone(), r.clone())),
            }
        }
        out
    }

    pub fn literal(&self) -> FuncLiteral {
        FuncLiteral {
            domain: [RatLit::from(&self.lo), RatLit::from(&self.hi)],
            pieces: self
                .intervals()
                .map(|(_, r, p)| PieceLiteral {
                    until: RatLit::from(r),
                    coeffs: if p.is_zero() {
                        vec![RatLit::from(&Q::zero())]
                    } else {
                        p.coeffs().iter().map(RatLit::from).collect()
                    },
                })
                .collect(),
        }
    }

    pub fn from_literal(lit: &FuncLiteral) -> Result<PwPolyFunc, PlError> {
        let lo = lit.domain[0].value()?;
        let hi = lit.domain[1].value()?;
        if lit.pieces.is_empty() {
            return Err(PlError::BadBreakpoints("no pieces".into()));
        }
        let mut breaks = Vec::new();
        let mut pieces = Vec::new();
        for (i, p) in lit.pieces.iter().enumerate() {
            let until = p.until.value()?;
            if i + 1 == lit.pieces.len() {
                if until != hi {
                    return Err(PlError::BadBreakpoints("last piece must end at the domain end".into()));
                }
            } else {
                breaks.push(until);
            }
            pieces.push(UPoly::new(p.coeffs.iter().map(RatLit::value).collect::<Result<_, _>>()?));
        }
        PwPolyFunc::new(lo, hi, breaks, pieces)
    }
}

impl Serialize for PwPolyFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.literal().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PwPolyFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let lit = FuncLiteral::deserialize(d)?;
        PwPolyFunc::from_literal(&lit).map_err(serde::de::Error::custom)
    }
}

/// `{"domain": [lo, hi], "pieces": [{"until": b, "coeffs": [...]}]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FuncLiteral {
    pub domain: [RatLit; 2],
    pub pieces: Vec<PieceLiteral>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PieceLiteral {
    pub until: RatLit,
    pub coeffs: Vec<RatLit>,
}

/// A rational written `"p/q"` or `"p"`; plain JSON integers are accepted too.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RatLit {
    Int(i64),
    Str(String),
}

impl RatLit {
    pub fn value(&self) -> Result<Q, PlError> {
        match self {
            RatLit::Int(n) => Ok(Q::from_integer((*n).into())),
            RatLit::Str(s) => parse_rational(s),
        }
    }
}

impl From<&Q> for RatLit {
    fn from(x: &Q) -> Self {
        RatLit::Str(x.to_string())
    }
}

pub fn parse_rational(s: &str) -> Result<Q, PlError> {
    let bad = || PlError::Parse(format!("not a rational: {s:?}"));
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Ring identity on `[lo, hi]`.
pub fn one(lo: Q, hi: Q) -> Result<PwPolyFunc, PlError> {
    PwPolyFunc::constant(lo, hi, Q::one())
}

#[cfg(test)]
mod tests {
    use super::super::upoly::{q, qi};
    use super::*;

    fn x_on(lo: i64, hi: i64) -> PwPolyFunc {
        PwPolyFunc::from_poly(qi(lo), qi(hi), UPoly::from_ints(&[0, 1])).unwrap()
    }

    #[test]
    fn canonical_merge_and_continuity() {
        let p = UPoly::from_ints(&[0, 1]);
        let f = PwPolyFunc::new(qi(0), qi(1), vec![q(1, 2)], vec![p.clone(), p.clone()]).unwrap();
        assert_eq!(f.pieces().len(), 1);
        assert_eq!(f, x_on(0, 1));
        let err = PwPolyFunc::new(qi(0), qi(1), vec![q(1, 2)], vec![p, UPoly::from_ints(&[1])]);
        assert!(matches!(err, Err(PlError::Discontinuous { .. })));
    }

    #[test]
    fn arithmetic() {
        let f = x_on(0, 1);
        assert!(f.add(&f.neg()).unwrap().is_zero());
        assert_eq!(f.mul(&one(qi(0), qi(1)).unwrap()).unwrap(), f);
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.pieces(), &[UPoly::from_ints(&[0, 0, 1])]);
        assert_eq!(f.add(&x_on(0, 2)), Err(PlError::DomainMismatch));
    }

    #[test]
    fn rr_le_cases() {
        let f = x_on(0, 1);
        let g = PwPolyFunc::from_poly(qi(0), qi(1), UPoly::from_ints(&[0, 2])).unwrap();
        assert!(f.rr_le(&f).unwrap());
        assert!(!f.rr_le(&g).unwrap());
        // triangle bump under a bump / negative bump
        let tri =
            PwPolyFunc::linear_interpolation(&[(qi(0), qi(0)), (q(1, 2), q(1, 2)), (qi(1), qi(0)), (qi(2), qi(0))])
                .unwrap();
        let big = PwPolyFunc::new(
            qi(0),
            qi(2),
            vec![q(1, 2), qi(1)],
            vec![UPoly::from_ints(&[0, 1]), UPoly::from_ints(&[1, -1]), UPoly::from_ints(&[-1, 3, -2]).neg()],
        )
        .unwrap();
        assert!(tri.rr_le(&big).unwrap());
    }

    #[test]
    fn restrict_and_extend() {
        let f = x_on(-1, 1);
        assert_eq!(f.restrict(&qi(-1), &qi(1)).unwrap(), f);
        let r = f.restrict(&qi(0), &q(1, 2)).unwrap();
        assert_eq!(r.domain(), (qi(0), q(1, 2)));
        assert!(f.restrict(&qi(-2), &qi(0)).is_err());
        let bump = PwPolyFunc::from_poly(qi(0), qi(1), UPoly::from_ints(&[0, 1, -1])).unwrap();
        let e = bump.extend_by_zero(&qi(-1), &qi(2)).unwrap();
        assert_eq!(e.restrict(&qi(0), &qi(1)).unwrap(), bump);
        assert!(matches!(x_on(0, 1).extend_by_zero(&qi(0), &qi(2)), Err(PlError::NotZeroAtBoundary { .. })));
    }

    #[test]
    fn literal_round_trip() {
        let f = PwPolyFunc::new(
            qi(0),
            qi(2),
            vec![qi(1)],
            vec![UPoly::from_ints(&[0, 1, -1]), UPoly::from_ints(&[-2, 3, -1])],
        )
        .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"domain":["0","2"],"pieces":[{"until":"1","coeffs":["0","1","-1"]},{"until":"2","coeffs":["-2","3","-1"]}]}"#
        );
        let back: PwPolyFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let g: PwPolyFunc =
            serde_json::from_str(r#"{"domain":[0,"1/2"],"pieces":[{"until":"1/2","coeffs":["1/2",-1]}]}"#).unwrap();
        assert_eq!(g.eval(&q(1, 2)).unwrap(), qi(0));
        assert!(
            serde_json::from_str::<PwPolyFunc>(r#"{"domain":[0,1],"pieces":[{"until":"1/2","coeffs":[1]}]}"#).is_err()
        );
    }
}
