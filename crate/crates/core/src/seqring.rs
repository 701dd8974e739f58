//! Eventually periodic integer sequences and the ring of sequences that are
//! eventually constant modulo a prime `p`.
//!
//! In this ring `r = 1` and `s = (1, p+1, 1, p+1, ...)` have common lower
//! bounds `1` on any finite set of odd positions, but no greatest one: that
//! would be the indicator of all odd positions, which is not eventually
//! constant mod `p`.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::RrRing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("period block must be nonempty")]
    EmptyPeriod,
    #[error("modulus {0} is not prime")]
    NotPrime(i64),
    #[error("sequence is not in the ring")]
    NotInRing,
    #[error("sequence is not idempotent")]
    NotIdempotent,
    #[error("no chain: {0}")]
    ChainNotFound(String),
}

/// An eventually periodic sequence `prefix, period, period, ...`, kept in
/// canonical form: minimal period, then minimal prefix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SeqLiteral", into = "SeqLiteral")]
pub struct EvPerSeq {
    prefix: Vec<i64>,
    period: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct SeqLiteral {
    #[serde(default)]
    prefix: Vec<i64>,
    period: Vec<i64>,
}

impl TryFrom<SeqLiteral> for EvPerSeq {
    type Error = SeqError;
    fn try_from(l: SeqLiteral) -> Result<Self, SeqError> {
        EvPerSeq::new(l.prefix, l.period)
    }
}

impl From<EvPerSeq> for SeqLiteral {
    fn from(s: EvPerSeq) -> Self {
        SeqLiteral { prefix: s.prefix, period: s.period }
    }
}

impl fmt::Debug for EvPerSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?})*", self.prefix, self.period)
    }
}

impl EvPerSeq {
    pub fn new(prefix: Vec<i64>, period: Vec<i64>) -> Result<Self, SeqError> {
        if period.is_empty() {
            return Err(SeqError::EmptyPeriod);
        }
        let mut s = EvPerSeq { prefix, period };
        s.canonicalize();
        Ok(s)
    }

    pub fn constant(c: i64) -> Self {
        EvPerSeq { prefix: Vec::new(), period: vec![c] }
    }

    pub fn periodic(period: Vec<i64>) -> Result<Self, SeqError> {
        Self::new(Vec::new(), period)
    }

    /// The sequence that is `1` at the given 0-based positions and `0` elsewhere.
    pub fn finite_indicator(positions: &[usize]) -> Self {
        let len = positions.iter().map(|&p| p + 1).max().unwrap_or(0);
        let mut prefix = vec![0; len];
        for &p in positions {
            prefix[p] = 1;
        }
        Self::new(prefix, vec![0]).expect("nonempty period")
    }

    fn canonicalize(&mut self) {
        let n = self.period.len();
        let minimal =
            (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|i| self.period[i] == self.period[i % d])).unwrap_or(n);
        self.period.truncate(minimal);
        while let Some(&last) = self.prefix.last() {
            if last != *self.period.last().expect("nonempty") {
                break;
            }
            self.prefix.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    /// Entry at 0-based position `n`.
    pub fn at(&self, n: usize) -> i64 {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.period[(n - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn description_length(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// Prefix length and period after which both sequences repeat together.
    fn horizon(&self, other: &EvPerSeq) -> (usize, usize) {
        (self.prefix.len().max(other.prefix.len()), self.period.len().lcm(&other.period.len()))
    }

    pub fn zip_with(&self, other: &EvPerSeq, f: impl Fn(i64, i64) -> i64) -> EvPerSeq {
        let (pre, per) = self.horizon(other);
        let prefix = (0..pre).map(|n| f(self.at(n), other.at(n))).collect();
        let period = (pre..pre + per).map(|n| f(self.at(n), other.at(n))).collect();
        EvPerSeq::new(prefix, period).expect("nonempty period")
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> EvPerSeq {
        EvPerSeq::new(self.prefix.iter().map(|&x| f(x)).collect(), self.period.iter().map(|&x| f(x)).collect())
            .expect("nonempty period")
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.period == [0]
    }

    /// Number of nonzero entries, or `None` if infinitely many.
    pub fn support_size(&self) -> Option<usize> {
        if self.period.iter().any(|&x| x != 0) {
            None
        } else {
            Some(self.prefix.iter().filter(|&&x| x != 0).count())
        }
    }

    /// 0/1 indicator of the nonzero entries.
    pub fn support(&self) -> EvPerSeq {
        self.map(|x| (x != 0) as i64)
    }

    /// 0-based positions of the first `n` nonzero entries, if there are that many.
    pub fn first_support_positions(&self, n: usize) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let limit = self.prefix.len() + self.period.len() * (n + 1);
        for i in 0..limit {
            if out.len() == n {
                break;
            }
            if self.at(i) != 0 {
                out.push(i);
            }
        }
        (out.len() == n).then_some(out)
    }
}

/// The ring of integer sequences eventually constant modulo a prime `p`,
/// restricted to eventually periodic elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqRing {
    pub p: i64,
}

impl SeqRing {
    pub fn new(p: i64) -> Result<Self, SeqError> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(SeqError::NotPrime(p));
        }
        Ok(SeqRing { p })
    }

    /// True iff all entries of the period block agree modulo `p`.
    pub fn seq_in_ring(&self, s: &EvPerSeq) -> bool {
        let r = s.period[0].rem_euclid(self.p);
        s.period.iter().all(|x| x.rem_euclid(self.p) == r)
    }

    /// Annihilator data: the zero set of `s`, as a 0/1 sequence.
    pub fn ann_support(&self, s: &EvPerSeq) -> EvPerSeq {
        s.map(|x| (x == 0) as i64)
    }

    pub fn seq_idempotent_support(&self, e: &EvPerSeq) -> Result<IdempotentSupport, SeqError> {
        let all = e.prefix.iter().chain(&e.period);
        if all.clone().any(|&x| x != 0 && x != 1) {
            return Err(SeqError::NotIdempotent);
        }
        if !self.seq_in_ring(e) {
            return Err(SeqError::NotInRing);
        }
        Ok(if e.period[0] == 0 { IdempotentSupport::Finite } else { IdempotentSupport::Cofinite })
    }

    /// A strictly increasing chain `h_1 < ... < h_n` of common lower bounds of
    /// `r` and `s`, where `h_k` is `r` on the first `k` coincidence positions,
    /// together with a scan of every lower bound `r 1_T` whose support pattern
    /// `T` has description length at most `max_description`.
    pub fn meet_nonexistence_certificate(
        &self,
        r: &EvPerSeq,
        s: &EvPerSeq,
        n: usize,
        max_description: usize,
    ) -> Result<NonexistenceCertificate, SeqError> {
        if !self.seq_in_ring(r) || !self.seq_in_ring(s) {
            return Err(SeqError::NotInRing);
        }
        if r == s {
            return Err(SeqError::ChainNotFound(
                "the sequences are equal, so their meet is the sequence itself".into(),
            ));
        }
        // positions where r and s agree and are nonzero
        let coincide = r.zip_with(s, |a, b| (a == b && a != 0) as i64);
        let top = r.zip_with(&coincide, |a, c| a * c);
        if self.seq_in_ring(&top) {
            return Err(SeqError::ChainNotFound(format!(
                "r restricted to the coincidence set is in the ring, so it is the meet (coincidence set size {})",
                coincide.support_size().map_or("infinite".to_string(), |k| k.to_string())
            )));
        }
        let positions = coincide
            .first_support_positions(n)
            .ok_or_else(|| SeqError::ChainNotFound("fewer coincidence positions than requested".into()))?;
        let chain: Vec<EvPerSeq> =
            (1..=n).map(|k| r.zip_with(&EvPerSeq::finite_indicator(&positions[..k]), |a, c| a * c)).collect();

        let mut scan = CandidateScan::default();
        for t in zero_one_sequences(max_description) {
            // only subsets of the coincidence set give lower bounds
            if t.zip_with(&coincide, |a, c| a * (1 - c)).support_size() != Some(0) {
                continue;
            }
            scan.examined += 1;
            let c = r.zip_with(&t, |a, b| a * b);
            if self.seq_in_ring(&c) {
                // refute: add the first coincidence position missing from T
                let missing = coincide.zip_with(&t, |a, b| a * (1 - b));
                let pos = missing
                    .first_support_positions(1)
                    .map(|v| v[0])
                    .expect("an in-ring lower bound misses some coincidence position");
                let bigger = c.zip_with(&EvPerSeq::finite_indicator(&[pos]), |x, e| if e == 1 { r.at(pos) } else { x });
                debug_assert!(self.seq_in_ring(&bigger) && bigger != c);
                scan.in_ring_refuted += 1;
                if scan.sample_refutation.is_none() && c.support_size() == Some(n) {
                    scan.sample_refutation = Some((c.clone(), bigger));
                }
            } else {
                scan.not_in_ring += 1;
                if t == coincide {
                    scan.dominating_all_in_ring = false;
                    scan.dominating_all_found = true;
                }
            }
        }
        Ok(NonexistenceCertificate { chain, positions: positions.iter().map(|p| p + 1).collect(), scan })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IdempotentSupport {
    Finite,
    Cofinite,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CandidateScan {
    /// Lower bounds examined.
    pub examined: usize,
    /// In-ring lower bounds, each strictly below another in-ring lower bound.
    pub in_ring_refuted: usize,
    pub not_in_ring: usize,
    /// Whether the lower bound on the whole coincidence set was among the
    /// candidates (it dominates every chain element).
    pub dominating_all_found: bool,
    pub dominating_all_in_ring: bool,
    pub sample_refutation: Option<(EvPerSeq, EvPerSeq)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonexistenceCertificate {
    pub chain: Vec<EvPerSeq>,
    /// 1-based coincidence positions used by the chain.
    pub positions: Vec<usize>,
    pub scan: CandidateScan,
}

impl NonexistenceCertificate {
    /// No candidate is a greatest lower bound: every in-ring candidate is
    /// strictly dominated, and the candidate dominating all others is outside
    /// the ring.
    pub fn no_representable_meet(&self) -> bool {
        self.scan.examined == self.scan.in_ring_refuted + self.scan.not_in_ring && !self.scan.dominating_all_in_ring
    }
}

/// All canonical 0/1 sequences with description length at most `max_len`.
pub fn zero_one_sequences(max_len: usize) -> Vec<EvPerSeq> {
    sequences_with_entries(max_len, &[0, 1])
}

/// All canonical sequences with entries from `values` and description length
/// at most `max_len`, sorted.
pub fn sequences_with_entries(max_len: usize, values: &[i64]) -> Vec<EvPerSeq> {
    let mut seen = HashSet::new();
    for total in 1..=max_len {
        let count = values.len().pow(total as u32);
        for code in 0..count {
            let mut c = code;
            let word: Vec<i64> = (0..total)
                .map(|_| {
                    let v = values[c % values.len()];
                    c /= values.len();
                    v
                })
                .collect();
            for split in 0..total {
                let s = EvPerSeq::new(word[..split].to_vec(), word[split..].to_vec()).expect("nonempty");
                seen.insert(s);
            }
        }
    }
    let mut v: Vec<EvPerSeq> = seen.into_iter().collect();
    v.sort();
    v
}

impl RrRing for SeqRing {
    type Elem = EvPerSeq;

    fn zero(&self) -> EvPerSeq {
        EvPerSeq::constant(0)
    }
    fn one(&self) -> EvPerSeq {
        EvPerSeq::constant(1)
    }
    fn add(&self, a: &EvPerSeq, b: &EvPerSeq) -> EvPerSeq {
        a.zip_with(b, |x, y| x + y)
    }
    fn neg(&self, a: &EvPerSeq) -> EvPerSeq {
        a.map(|x| -x)
    }
    fn mul(&self, a: &EvPerSeq, b: &EvPerSeq) -> EvPerSeq {
        a.zip_with(b, |x, y| x * y)
    }
    fn contains(&self, a: &EvPerSeq) -> bool {
        self.seq_in_ring(a)
    }
    fn size(&self, a: &EvPerSeq) -> u64 {
        let entries = a.prefix.iter().chain(&a.period).map(|x| x.unsigned_abs()).max().unwrap_or(0);
        entries.max(a.description_length() as u64)
    }
    fn elements_within(&self, bound: u64) -> Vec<EvPerSeq> {
        let b = bound as i64;
        let values: Vec<i64> = (-b..=b).collect();
        sequences_with_entries(bound as usize, &values)
            .into_iter()
            .filter(|s| self.seq_in_ring(s) && self.size(s) <= bound)
            .collect()
    }
}

/// `a <= b` iff at every position `a_n = 0` or `a_n = b_n`.
pub fn seq_rr_le(a: &EvPerSeq, b: &EvPerSeq) -> bool {
    a.zip_with(b, |x, y| (x != 0 && x != y) as i64).is_zero()
}
