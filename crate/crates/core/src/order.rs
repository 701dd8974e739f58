//! The rr-order on a reduced ring and brute-force oracles for meets, sups and
//! orthogonality.
//!
//! `a <= b` iff `a * b == a * a`. Every ring family in this crate implements
//! [`RrRing`]; the oracles here only use ring arithmetic and bounded
//! enumeration, so they serve as independent checks for the closed-form
//! procedures of each family.

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

/// A commutative reduced ring with a bounded element enumerator.
pub trait RrRing {
    type Elem: Clone + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn contains(&self, a: &Self::Elem) -> bool;

    /// Representation size used by the enumeration frontier.
    fn size(&self, a: &Self::Elem) -> u64;

    /// Every element of size at most `bound`.
    fn elements_within(&self, bound: u64) -> Vec<Self::Elem>;

    /// A finite set guaranteed to contain every common lower bound of `a` and
    /// `b`, when the family can confine lower bounds. Oracle answers built on
    /// it are certified independently of the enumeration bound.
    fn lower_bound_candidates(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Vec<Self::Elem>> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("element is not in the ring: {0}")]
    NotInRing(String),
    #[error("bound {bound} is smaller than the size {size} of an input")]
    BoundTooSmall { bound: u64, size: u64 },
}

/// Evidence that the oracle could not settle a meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Evidence<E> {
    /// Two or more maximal common lower bounds, pairwise incomparable.
    IncomparableMaxima(Vec<E>),
    /// A strictly increasing chain of common lower bounds whose top is larger
    /// than both inputs, found without a confinement guarantee.
    GrowingChain(Vec<E>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MeetResult<E> {
    Meet(E),
    Zero,
    Inconclusive(Evidence<E>),
}

impl<E> MeetResult<E> {
    pub fn is_zero(&self) -> bool {
        matches!(self, MeetResult::Zero)
    }

    pub fn meet(&self) -> Option<&E> {
        match self {
            MeetResult::Meet(c) => Some(c),
            _ => None,
        }
    }
}

/// A meet verdict together with how much it can be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleOutcome<E> {
    pub result: MeetResult<E>,
    /// True when every common lower bound was provably among the candidates,
    /// false when the verdict only holds within the enumeration bound.
    pub certified: bool,
    pub lower_bounds_found: usize,
}

pub fn rr_le<R: RrRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> bool {
    ring.mul(a, b) == ring.mul(a, a)
}

pub fn rr_lt<R: RrRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> bool {
    a != b && rr_le(ring, a, b)
}

fn check_inputs<R: RrRing>(ring: &R, xs: &[&R::Elem], bound: u64) -> Result<(), OrderError> {
    for x in xs {
        if !ring.contains(x) {
            return Err(OrderError::NotInRing(format!("{x:?}")));
        }
        let size = ring.size(x);
        if size > bound {
            return Err(OrderError::BoundTooSmall { bound, size });
        }
    }
    Ok(())
}

/// Maximal elements of a finite subset of the order.
pub fn maximal_elements<R: RrRing>(ring: &R, xs: &[R::Elem]) -> Vec<R::Elem> {
    xs.iter().filter(|x| !xs.iter().any(|y| rr_lt(ring, x, y))).cloned().collect()
}

/// Longest strictly increasing chain through a finite set, bottom first.
pub fn longest_chain<R: RrRing>(ring: &R, xs: &[R::Elem]) -> Vec<R::Elem> {
    // Sort by down-set size so every strict predecessor comes first.
    let mut order: Vec<usize> = (0..xs.len()).collect();
    let below: Vec<usize> = xs.iter().map(|x| xs.iter().filter(|y| rr_lt(ring, y, x)).count()).collect();
    order.sort_by_key(|&i| below[i]);
    let mut len = vec![1usize; xs.len()];
    let mut prev = vec![usize::MAX; xs.len()];
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            if rr_lt(ring, &xs[j], &xs[i]) && len[j] + 1 > len[i] {
                len[i] = len[j] + 1;
                prev[i] = j;
            }
        }
    }
    let Some(mut top) = (0..xs.len()).max_by_key(|&i| (len[i], below[i])) else {
        return Vec::new();
    };
    let mut chain = vec![xs[top].clone()];
    while prev[top] != usize::MAX {
        top = prev[top];
        chain.push(xs[top].clone());
    }
    chain.reverse();
    chain
}

/// Searches the common lower bounds of `a` and `b`.
///
/// Uses the family's confinement set when available, in which case `bound` is
/// ignored, otherwise every element of size at most `bound`.
pub fn meet_oracle<R: RrRing>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
    bound: u64,
) -> Result<OracleOutcome<R::Elem>, OrderError> {
    let (candidates, certified) = match ring.lower_bound_candidates(a, b) {
        Some(c) => {
            check_inputs(ring, &[a, b], u64::MAX)?;
            (c, true)
        }
        None => {
            check_inputs(ring, &[a, b], bound)?;
            (ring.elements_within(bound), false)
        }
    };
    let lower: Vec<R::Elem> = candidates.into_iter().filter(|c| rr_le(ring, c, a) && rr_le(ring, c, b)).collect();
    let found = lower.len();
    let zero = ring.zero();
    let result = if lower.iter().all(|c| *c == zero) {
        MeetResult::Zero
    } else {
        let maxima = maximal_elements(ring, &lower);
        if maxima.len() > 1 {
            MeetResult::Inconclusive(Evidence::IncomparableMaxima(maxima))
        } else {
            let top = maxima.into_iter().next().expect("finite nonempty poset");
            // Without confinement, a top larger than both inputs only shows the
            // search was cut off by the bound.
            let outgrew_inputs = ring.size(&top) > ring.size(a).max(ring.size(b));
            if !certified && outgrew_inputs {
                MeetResult::Inconclusive(Evidence::GrowingChain(longest_chain(ring, &lower)))
            } else {
                MeetResult::Meet(top)
            }
        }
    };
    Ok(OracleOutcome { result, certified, lower_bounds_found: found })
}

/// True iff the only common lower bound is zero. Short-circuits when `a * b = 0`.
pub fn rr_orthogonal<R: RrRing>(ring: &R, a: &R::Elem, b: &R::Elem, bound: u64) -> Result<bool, OrderError> {
    check_inputs(ring, &[a, b], u64::MAX)?;
    if ring.is_zero(&ring.mul(a, b)) {
        return Ok(true);
    }
    Ok(meet_oracle(ring, a, b, bound)?.result.is_zero())
}

/// Searches the least common upper bound of `a` and `b` among elements of size
/// at most `bound`. Returns `None` when the upper bounds found have no least
/// element (including when there are none).
pub fn sup_oracle<R: RrRing>(ring: &R, a: &R::Elem, b: &R::Elem, bound: u64) -> Result<Option<R::Elem>, OrderError> {
    check_inputs(ring, &[a, b], bound)?;
    let upper: Vec<R::Elem> =
        ring.elements_within(bound).into_iter().filter(|c| rr_le(ring, a, c) && rr_le(ring, b, c)).collect();
    Ok(upper.iter().find(|c| upper.iter().all(|d| rr_le(ring, c, d))).cloned())
}

/// Down-sets of every element in a finite box, computed by multiplication.
///
/// Answers meet queries for many pairs at once: the common lower bounds of
/// `a` and `b` are the intersection of their down-sets. Exact whenever the box
/// is closed under taking lower bounds (true for boxes of integer vectors).
pub struct LowerBoundIndex<E> {
    pub elements: Vec<E>,
    down: Vec<Vec<u32>>,
    zero: usize,
}

impl<E: Clone + Eq + Hash + Debug> LowerBoundIndex<E> {
    pub fn build<R: RrRing<Elem = E>>(ring: &R, elements: Vec<E>) -> Self {
        let squares: Vec<E> = elements.iter().map(|c| ring.mul(c, c)).collect();
        let mut down = vec![Vec::new(); elements.len()];
        for (ci, c) in elements.iter().enumerate() {
            for (ai, a) in elements.iter().enumerate() {
                if ring.mul(c, a) == squares[ci] {
                    down[ai].push(ci as u32);
                }
            }
        }
        let zero = ring.zero();
        let zero = elements.iter().position(|e| *e == zero).expect("zero in box");
        LowerBoundIndex { elements, down, zero }
    }

    /// Same relation as [`LowerBoundIndex::build`] but with a caller-supplied
    /// test `le(c, a)`, for flat fast representations.
    pub fn build_with(elements: Vec<E>, zero: &E, le: impl Fn(&E, &E) -> bool) -> Self {
        let mut down = vec![Vec::new(); elements.len()];
        for (ci, c) in elements.iter().enumerate() {
            for (ai, a) in elements.iter().enumerate() {
                if le(c, a) {
                    down[ai].push(ci as u32);
                }
            }
        }
        let zero = elements.iter().position(|e| e == zero).expect("zero in box");
        LowerBoundIndex { elements, down, zero }
    }

    pub fn down_set(&self, i: usize) -> &[u32] {
        &self.down[i]
    }

    /// Meet of elements `i` and `j`, as an index, or the verdict.
    pub fn meet(&self, i: usize, j: usize, scratch: &mut Vec<u32>) -> IndexMeet {
        scratch.clear();
        let (x, y) = (&self.down[i], &self.down[j]);
        let (mut p, mut q) = (0, 0);
        while p < x.len() && q < y.len() {
            match x[p].cmp(&y[q]) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    scratch.push(x[p]);
                    p += 1;
                    q += 1;
                }
            }
        }
        if scratch.len() == 1 && scratch[0] as usize == self.zero {
            return IndexMeet::Zero;
        }
        // The common lower bounds form a down-closed set, so a top element
        // exists iff some member's down-set is the whole set.
        let top =
            scratch.iter().copied().max_by_key(|&c| self.down[c as usize].len()).expect("zero is always a lower bound");
        if self.down[top as usize].len() == scratch.len() {
            IndexMeet::Meet(top as usize)
        } else {
            IndexMeet::NoTop
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMeet {
    Meet(usize),
    Zero,
    NoTop,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z^k with coordinatewise arithmetic, entries bounded by the box.
    struct Zk(usize);

    impl RrRing for Zk {
        type Elem = Vec<i64>;
        fn zero(&self) -> Vec<i64> {
            vec![0; self.0]
        }
        fn one(&self) -> Vec<i64> {
            vec![1; self.0]
        }
        fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
            a.iter().zip(b).map(|(x, y)| x + y).collect()
        }
        fn neg(&self, a: &Vec<i64>) -> Vec<i64> {
            a.iter().map(|x| -x).collect()
        }
        fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
            a.iter().zip(b).map(|(x, y)| x * y).collect()
        }
        fn contains(&self, a: &Vec<i64>) -> bool {
            a.len() == self.0
        }
        fn size(&self, a: &Vec<i64>) -> u64 {
            a.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
        }
        fn elements_within(&self, bound: u64) -> Vec<Vec<i64>> {
            let b = bound as i64;
            let mut out = vec![vec![]];
            for _ in 0..self.0 {
                out = out
                    .into_iter()
                    .flat_map(|v| {
                        (-b..=b).map(move |x| {
                            let mut w = v.clone();
                            w.push(x);
                            w
                        })
                    })
                    .collect();
            }
            out
        }
    }

    #[test]
    fn le_examples() {
        let z1 = Zk(1);
        assert!(rr_le(&z1, &vec![0], &vec![17]));
        assert!(!rr_le(&z1, &vec![7], &vec![13]));
        assert!(rr_le(&Zk(2), &vec![1, 0], &vec![1, 5]));
    }

    #[test]
    fn oracle_examples() {
        let z3 = Zk(3);
        let r = meet_oracle(&z3, &vec![2, 3, 5], &vec![2, 4, 5], 5).unwrap();
        assert_eq!(r.result, MeetResult::Meet(vec![2, 0, 5]));
        assert!(!r.certified);
        let z1 = Zk(1);
        assert!(meet_oracle(&z1, &vec![7], &vec![13], 13).unwrap().result.is_zero());
        assert_eq!(meet_oracle(&z1, &vec![4], &vec![4], 4).unwrap().result, MeetResult::Meet(vec![4]));
        assert!(matches!(meet_oracle(&z1, &vec![7], &vec![13], 5), Err(OrderError::BoundTooSmall { .. })));
    }

    #[test]
    fn orthogonality() {
        let z2 = Zk(2);
        assert!(rr_orthogonal(&z2, &vec![1, 0], &vec![0, 1], 1).unwrap());
        assert!(!rr_orthogonal(&z2, &vec![3, 1], &vec![3, 1], 3).unwrap());
        assert!(rr_orthogonal(&Zk(1), &vec![7], &vec![13], 13).unwrap());
    }

    #[test]
    fn sup_in_integers() {
        let z2 = Zk(2);
        assert_eq!(sup_oracle(&z2, &vec![1, 0], &vec![0, 2], 3).unwrap(), Some(vec![1, 2]));
        assert_eq!(sup_oracle(&z2, &vec![1, 2], &vec![1, 3], 3).unwrap(), None);
    }

    #[test]
    fn index_matches_oracle() {
        let z2 = Zk(2);
        let elems = z2.elements_within(3);
        let idx = LowerBoundIndex::build(&z2, elems.clone());
        let mut scratch = Vec::new();
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                let o = meet_oracle(&z2, &elems[i], &elems[j], 3).unwrap().result;
                match idx.meet(i, j, &mut scratch) {
                    IndexMeet::Meet(c) => assert_eq!(o, MeetResult::Meet(elems[c].clone())),
                    IndexMeet::Zero => assert_eq!(o, MeetResult::Zero),
                    IndexMeet::NoTop => panic!("Z^2 always has meets"),
                }
            }
        }
    }

    #[test]
    fn chain_is_increasing() {
        let z3 = Zk(3);
        let xs = vec![vec![0, 0, 0], vec![1, 0, 0], vec![1, 2, 0], vec![0, 2, 0], vec![1, 2, 3]];
        let chain = longest_chain(&z3, &xs);
        assert_eq!(chain.len(), 4);
        for w in chain.windows(2) {
            assert!(rr_lt(&z3, &w[0], &w[1]));
        }
    }
}
