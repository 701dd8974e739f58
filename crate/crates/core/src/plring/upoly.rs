//! Univariate polynomials over the rationals, with Sturm-sequence root
//! isolation and exact detection of rational roots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Coefficients from the constant term up, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Q>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| match i {
                0 => format!("{x}"),
                1 => format!("{x}x"),
                _ => format!("{x}x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| qi(x)).collect())
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(x: Q) -> Self {
        Self::new(vec![x])
    }

    /// `x - r`.
    pub fn linear_root(r: &Q) -> Self {
        Self::new(vec![-r.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).cloned().unwrap_or_else(Q::zero);
                    let b = o.c.get(i).cloned().unwrap_or_else(Q::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, k: &Q) -> UPoly {
        UPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * qi(i as i64)).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len();
        if r.len() < dd {
            return (UPoly::zero(), self.clone());
        }
        let lead = d.lead();
        let mut qc = vec![Q::zero(); r.len() - dd + 1];
        for k in (0..qc.len()).rev() {
            let t = &r[k + dd - 1] / &lead;
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &t * b;
                }
            }
            qc[k] = t;
        }
        (UPoly::new(qc), UPoly::new(r))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.lead()))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree(&self) -> UPoly {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1.neg();
            seq.push(r);
        }
        seq.pop();
        seq
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_roots(&self, a: &Q, b: &Q) -> usize {
        let sf = self.squarefree();
        if sf.degree() <= 0 {
            return 0;
        }
        let seq = sf.sturm_sequence();
        let changes = |x: &Q| {
            let signs: Vec<i32> = seq
                .iter()
                .map(|p| p.eval(x))
                .filter(|v| !v.is_zero())
                .map(|v| if v.is_positive() { 1 } else { -1 })
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(a) - changes(b)
    }

    /// Disjoint intervals `(l, r]` in `(a, b]`, each holding exactly one root.
    pub fn isolate_roots(&self, a: &Q, b: &Q) -> Vec<(Q, Q)> {
        let sf = self.squarefree();
        if sf.degree() <= 0 || a >= b {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((l, r)) = stack.pop() {
            match sf.count_roots(&l, &r) {
                0 => {}
                1 => out.push((l, r)),
                _ => {
                    let m = (&l + &r) / qi(2);
                    stack.push((m.clone(), r));
                    stack.push((l, m));
                }
            }
        }
        out.sort();
        out
    }

    /// Rational roots in `(a, b]`, ascending, and isolating intervals of the
    /// irrational ones.
    pub fn roots_in(&self, a: &Q, b: &Q) -> Vec<Root> {
        let sf = self.squarefree();
        self.isolate_roots(a, b)
            .into_iter()
            .map(|(l, r)| match rational_root_in(&sf, &l, &r) {
                Some(x) => Root::Rational(x),
                None => Root::Irrational(l, r),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Root {
    Rational(Q),
    /// A single irrational root in `(l, r)`.
    Irrational(Q, Q),
}

impl Root {
    pub fn lower(&self) -> &Q {
        match self {
            Root::Rational(x) => x,
            Root::Irrational(l, _) => l,
        }
    }
}

/// The rational with the smallest denominator in `[l, r]`.
pub fn simplest_rational(l: &Q, r: &Q) -> Q {
    assert!(l <= r);
    if l.is_negative() && r.is_positive() || l.is_zero() || r.is_zero() {
        return Q::zero();
    }
    if r.is_negative() {
        return -simplest_rational(&-r, &-l);
    }
    let fl = l.floor();
    if fl == *l {
        return l.clone();
    }
    if fl.clone() + Q::one() <= *r {
        return fl + Q::one();
    }
    // l and r share the integer part: recurse on the reciprocals of the fractions.
    let (lf, rf) = (l - &fl, r - &fl);
    let inner = simplest_rational(&(Q::one() / rf), &(Q::one() / lf));
    fl + Q::one() / inner
}

/// The unique root of squarefree `p` in `(l, r]`, if it is rational.
fn rational_root_in(p: &UPoly, l: &Q, r: &Q) -> Option<Q> {
    if p.eval(r).is_zero() {
        return Some(r.clone());
    }
    // A rational root n/d of the primitive integer polynomial has d dividing
    // the leading coefficient, so rationals of that height are 1/lead^2 apart.
    let den_lcm = p.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lead = (p.lead() * Q::from_integer(den_lcm)).to_integer().abs();
    let height = Q::from_integer(lead.clone() * lead);
    let (mut l, mut r) = (l.clone(), r.clone());
    // `l` may itself be a neighbouring root, so only the sign at `r` is used.
    let sign_r = p.eval(&r).is_positive();
    while (&r - &l) * &height >= Q::one() {
        let m = (&l + &r) / qi(2);
        let v = p.eval(&m);
        if v.is_zero() {
            return Some(m);
        }
        if v.is_positive() == sign_r {
            r = m;
        } else {
            l = m;
        }
    }
    let c = simplest_rational(&l, &r);
    (c > l && p.eval(&c).is_zero()).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic() {
        let p = UPoly::from_ints(&[0, 1]);
        let sq = p.mul(&p);
        assert_eq!(sq, UPoly::from_ints(&[0, 0, 1]));
        assert_eq!(sq.sub(&sq), UPoly::zero());
        let (quo, rem) = UPoly::from_ints(&[-1, 0, 1]).div_rem(&UPoly::from_ints(&[-1, 1]));
        assert_eq!(quo, UPoly::from_ints(&[1, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn sturm_counts() {
        // (x - 1)(x - 2)(x - 3)
        let p = UPoly::from_ints(&[-6, 11, -6, 1]);
        assert_eq!(p.count_roots(&qi(0), &qi(4)), 3);
        assert_eq!(p.count_roots(&qi(1), &qi(2)), 1);
        // x^2 - 2
        let s = UPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(s.count_roots(&qi(0), &qi(2)), 1);
        let roots = s.roots_in(&qi(-2), &qi(2));
        assert_eq!(roots.len(), 2);
        assert!(matches!(roots[0], Root::Irrational(..)));
    }

    #[test]
    fn rational_roots_found_exactly() {
        // (3x - 1)(5x - 2)(x + 7)
        let p = UPoly::from_ints(&[-1, 3]).mul(&UPoly::from_ints(&[-2, 5])).mul(&UPoly::from_ints(&[7, 1]));
        let roots = p.roots_in(&qi(-10), &qi(10));
        assert_eq!(roots, vec![Root::Rational(qi(-7)), Root::Rational(q(1, 3)), Root::Rational(q(2, 5))]);
        // repeated root
        let r = UPoly::from_ints(&[-1, 2]).mul(&UPoly::from_ints(&[-1, 2]));
        assert_eq!(r.roots_in(&qi(0), &qi(1)), vec![Root::Rational(q(1, 2))]);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_rational(&q(1, 3), &q(1, 2)), q(1, 2));
        assert_eq!(simplest_rational(&q(3, 10), &q(4, 10)), q(1, 3));
        assert_eq!(simplest_rational(&q(-4, 10), &q(-3, 10)), q(-1, 3));
        assert_eq!(simplest_rational(&q(-1, 2), &q(1, 2)), qi(0));
    }

    proptest! {
        #[test]
        fn product_of_linear_factors_has_those_roots(
            rs in proptest::collection::btree_set((-20i64..20, 1i64..6), 1..4)
        ) {
            let mut p = UPoly::constant(qi(1));
            let mut roots: Vec<Q> = Vec::new();
            for (n, d) in rs {
                let r = q(n, d);
                if !roots.contains(&r) {
                    p = p.mul(&UPoly::linear_root(&r));
                    roots.push(r);
                }
            }
            roots.sort();
            let found: Vec<Q> = p
                .roots_in(&qi(-21), &qi(21))
                .into_iter()
                .map(|r| match r { Root::Rational(x) => x, Root::Irrational(..) => panic!("irrational") })
                .collect();
            prop_assert_eq!(found, roots);
        }
    }
}
