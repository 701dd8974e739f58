//! Sparse polynomials in `x, y, z`, graded lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;

pub const VARS: [char; 3] = ['x', 'y', 'z'];

/// Exponents of `x, y, z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u32; 3]);

impl Mono {
    pub const ONE: Mono = Mono([0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    /// All monomials of degree at most `d`, ascending; `z` only if `with_z`.
    pub fn up_to(d: u32, with_z: bool) -> Vec<Mono> {
        let zmax = if with_z { d } else { 0 };
        let mut out = Vec::new();
        for i in 0..=d {
            for j in 0..=d - i {
                for k in 0..=zmax.min(d - i - j) {
                    out.push(Mono([i, j, k]));
                }
            }
        }
        out.sort();
        out
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Mono::ONE {
            return write!(f, "1");
        }
        let parts: Vec<String> = VARS
            .iter()
            .zip(self.0)
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly<E> {
    terms: BTreeMap<Mono, E>,
}

impl<E: fmt::Debug> fmt::Debug for MultiPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(m, c)| format!("{c:?}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<E: Clone + PartialEq> MultiPoly<E> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn from_terms<F: Field<E = E>>(field: &F, terms: impl IntoIterator<Item = (Mono, E)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(field, m, c);
        }
        p
    }

    pub fn monomial<F: Field<E = E>>(field: &F, m: Mono, c: E) -> Self {
        Self::from_terms(field, [(m, c)])
    }

    pub fn constant<F: Field<E = E>>(field: &F, c: E) -> Self {
        Self::monomial(field, Mono::ONE, c)
    }

    /// Polynomial from `(coefficient, [ex, ey, ez])` pairs with integer coefficients.
    pub fn from_ints<F: Field<E = E>>(field: &F, terms: &[(i64, [u32; 3])]) -> Self {
        Self::from_terms(field, terms.iter().map(|(c, e)| (Mono(*e), field.from_i64(*c))))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Mono::degree)
    }

    pub fn add_term<F: Field<E = E>>(&mut self, field: &F, m: Mono, c: E) {
        let v = match self.terms.get(&m) {
            Some(old) => field.add(old, &c),
            None => c,
        };
        if field.is_zero(&v) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn add<F: Field<E = E>>(&self, o: &Self, field: &F) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(field, *m, c.clone());
        }
        out
    }

    pub fn neg<F: Field<E = E>>(&self, field: &F) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect() }
    }

    pub fn sub<F: Field<E = E>>(&self, o: &Self, field: &F) -> Self {
        self.add(&o.neg(field), field)
    }

    pub fn mul<F: Field<E = E>>(&self, o: &Self, field: &F) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                out.add_term(field, m.mul(n), field.mul(c, d));
            }
        }
        out
    }

    pub fn scale_mono<F: Field<E = E>>(&self, m: &Mono, c: &E, field: &F) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), field.mul(c, d))).collect() }
    }

    /// Substitutes `z = 0`.
    pub fn at_z_zero(&self) -> Self {
        MultiPoly { terms: self.terms.iter().filter(|(m, _)| m.0[2] == 0).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn has_z(&self) -> bool {
        self.terms.keys().any(|m| m.0[2] > 0)
    }
}
