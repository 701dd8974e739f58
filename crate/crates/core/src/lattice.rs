//! Integer lattices in row Hermite normal form.
//!
//! Every additive group handled by the congruence-ring code is a sublattice of
//! `Z^n`. Lattices are stored as a basis in row Hermite normal form: the rows
//! are in echelon form, every pivot is positive, and entries above a pivot are
//! reduced into `[0, pivot)`. The form is canonical, so two lattices are equal
//! iff their bases are equal.

use std::fmt;

/// A sublattice of `Z^dim` with a basis in row Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.basis)
    }
}

fn leading(row: &[i64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Row Hermite normal form of the span of `rows` (each of length `dim`).
/// Zero rows are dropped.
pub(crate) fn hermite_rows(dim: usize, mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut out: Vec<Vec<i64>> = Vec::new();
    for col in 0..dim {
        // Rows whose leading entry is in this column.
        let mut active: Vec<Vec<i64>> = Vec::new();
        let mut rest = Vec::with_capacity(rows.len());
        for r in rows.drain(..) {
            if leading(&r) == Some(col) {
                active.push(r);
            } else {
                rest.push(r);
            }
        }
        rows = rest;
        if active.is_empty() {
            continue;
        }
        // Euclid on the column until a single row carries it.
        loop {
            active.sort_by_key(|r| r[col].unsigned_abs());
            if active.len() == 1 {
                break;
            }
            let (head, tail) = active.split_at_mut(1);
            let p = &head[0];
            for r in tail.iter_mut() {
                let q = r[col].div_euclid(p[col]);
                for (x, y) in r.iter_mut().zip(p.iter()) {
                    *x -= q * y;
                }
            }
            let pivot_row = active.remove(0);
            let mut keep = vec![pivot_row];
            for r in active.drain(..) {
                if r[col] != 0 {
                    keep.push(r);
                } else if r.iter().any(|&x| x != 0) {
                    rows.push(r);
                }
            }
            active = keep;
        }
        let mut p = active.pop().expect("nonempty");
        if p[col] < 0 {
            p.iter_mut().for_each(|x| *x = -*x);
        }
        // Reduce the rows already placed above this pivot.
        for r in out.iter_mut() {
            let q = r[col].div_euclid(p[col]);
            if q != 0 {
                for (x, y) in r.iter_mut().zip(p.iter()) {
                    *x -= q * y;
                }
            }
        }
        out.push(p);
    }
    debug_assert!(rows.is_empty());
    out
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    /// The lattice spanned by `gens`.
    pub fn from_generators<I>(dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        let rows: Vec<Vec<i64>> = gens.into_iter().inspect(|g| assert_eq!(g.len(), dim, "generator length")).collect();
        Lattice { dim, basis: hermite_rows(dim, rows) }
    }

    /// Diagonal lattice `m_1 Z x ... x m_n Z` (with `0` giving the zero factor).
    pub fn diagonal(moduli: &[i64]) -> Self {
        let dim = moduli.len();
        Self::from_generators(
            dim,
            moduli.iter().enumerate().map(|(i, &m)| {
                let mut v = vec![0; dim];
                v[i] = m;
                v
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Reduces `v` by the basis. The remainder is zero iff `v` lies in the
    /// lattice; at pivot columns it lies in `[0, pivot)`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for row in &self.basis {
            let col = leading(row).expect("basis rows are nonzero");
            let q = w[col].div_euclid(row[col]);
            if q != 0 {
                for (x, y) in w.iter_mut().zip(row.iter()) {
                    *x -= q * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.basis.iter().all(|b| other.contains(b))
    }

    /// Sum of two lattices.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        Lattice::from_generators(self.dim, self.basis.iter().chain(other.basis.iter()).cloned())
    }

    /// Coordinate projection onto `coords`, in the given order.
    pub fn project(&self, coords: &[usize]) -> Lattice {
        Lattice::from_generators(coords.len(), self.basis.iter().map(|b| coords.iter().map(|&c| b[c]).collect()))
    }

    /// Union of the supports of the basis vectors, taken modulo `moduli`
    /// (an entry counts as zero when divisible by its modulus; modulus `0`
    /// means plain integer zero).
    pub fn support_union(&self, moduli: &[i64]) -> Vec<bool> {
        let mut s = vec![false; self.dim];
        for b in &self.basis {
            for (i, &x) in b.iter().enumerate() {
                if !is_zero_mod(x, moduli[i]) {
                    s[i] = true;
                }
            }
        }
        s
    }
}

pub(crate) fn is_zero_mod(x: i64, m: i64) -> bool {
    if m == 0 {
        x == 0
    } else {
        x.rem_euclid(m) == 0
    }
}

/// A linear map `Z^n -> Z^m / D` given by the images of the generators of a
/// lattice, where `D` is the diagonal lattice of the target moduli.
///
/// Used for kernels (annihilators, equalizers, constraint lattices) and for
/// solving preimage problems.
pub struct LinearMap<'a> {
    /// Source lattice vectors `b_t` (length `n`).
    pub sources: &'a [Vec<i64>],
    /// Their images `f(b_t)` (length `m`).
    pub images: &'a [Vec<i64>],
    /// Target moduli (length `m`), `0` meaning the factor is `Z`.
    pub moduli: &'a [i64],
}

/// Echelon data for a [`LinearMap`]: HNF of the stacked rows `[f(b) | b]`
/// together with the target-modulus rows `[m_j e_j | 0]`.
pub struct MapEchelon {
    m: usize,
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl LinearMap<'_> {
    pub fn echelon(&self) -> MapEchelon {
        let m = self.moduli.len();
        let n = self.sources.first().map(|v| v.len()).unwrap_or(0);
        let mut rows = Vec::new();
        for (b, img) in self.sources.iter().zip(self.images.iter()) {
            assert_eq!(img.len(), m);
            let mut r = img.clone();
            r.extend_from_slice(b);
            rows.push(r);
        }
        for (j, &mj) in self.moduli.iter().enumerate() {
            if mj != 0 {
                let mut r = vec![0; m + n];
                r[j] = mj;
                rows.push(r);
            }
        }
        MapEchelon { m, n, rows: hermite_rows(m + n, rows) }
    }

    /// Lattice of source vectors mapping to zero.
    pub fn kernel(&self, source_dim: usize) -> Lattice {
        if self.sources.is_empty() {
            return Lattice::zero(source_dim);
        }
        self.echelon().kernel()
    }
}

impl MapEchelon {
    pub fn kernel(&self) -> Lattice {
        let basis: Vec<Vec<i64>> = self
            .rows
            .iter()
            .filter(|r| leading(r).is_some_and(|c| c >= self.m))
            .map(|r| r[self.m..].to_vec())
            .collect();
        Lattice { dim: self.n, basis }
    }

    /// A source vector `x` in the span of the sources with `f(x) = target`
    /// modulo the target moduli, reduced by the kernel. `None` when the target
    /// is not in the image.
    pub fn preimage(&self, target: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(target.len(), self.m);
        let mut w = target.to_vec();
        w.extend(std::iter::repeat_n(0, self.n));
        for row in &self.rows {
            let col = leading(row).expect("nonzero");
            if col >= self.m {
                break;
            }
            if w[col] % row[col] != 0 {
                return None;
            }
            let q = w[col] / row[col];
            for (x, y) in w.iter_mut().zip(row.iter()) {
                *x -= q * y;
            }
        }
        if w[..self.m].iter().any(|&x| x != 0) {
            return None;
        }
        let x: Vec<i64> = w[self.m..].iter().map(|v| -v).collect();
        Some(self.kernel().reduce(&x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hnf_of_congruence_lattice() {
        // {(a, b) : a = b mod 2}
        let l = Lattice::from_generators(2, vec![vec![1, 1], vec![2, 0], vec![0, 2]]);
        assert_eq!(l.basis(), &[vec![1, 1], vec![0, 2]]);
        assert!(l.contains(&[3, 5]));
        assert!(!l.contains(&[1, 2]));
    }

    #[test]
    fn kernel_of_coordinate_map() {
        // vectors of {(a,b): a = b mod 2} with first coordinate zero
        let basis = vec![vec![1, 1], vec![0, 2]];
        let images: Vec<Vec<i64>> = basis.iter().map(|b| vec![b[0]]).collect();
        let k = LinearMap { sources: &basis, images: &images, moduli: &[0] }.kernel(2);
        assert_eq!(k.basis(), &[vec![0, 2]]);
    }

    #[test]
    fn preimage_modulo_target() {
        // Z -> Z/2 x Z/3 diagonal: preimage of (1, 2) is 5 mod 6
        let sources = vec![vec![1]];
        let images = vec![vec![1, 1]];
        let e = LinearMap { sources: &sources, images: &images, moduli: &[2, 3] }.echelon();
        assert_eq!(e.preimage(&[1, 2]), Some(vec![5]));
        assert_eq!(e.kernel().basis(), &[vec![6]]);
    }

    #[test]
    fn preimage_absent() {
        let sources = vec![vec![1, 1]];
        let images = vec![vec![1, 1]];
        let e = LinearMap { sources: &sources, images: &images, moduli: &[0, 0] }.echelon();
        assert_eq!(e.preimage(&[1, 2]), None);
        assert_eq!(e.preimage(&[3, 3]), Some(vec![3, 3]));
    }

    proptest! {
        #[test]
        fn generators_belong_and_form_is_canonical(
            gens in proptest::collection::vec(proptest::collection::vec(-6i64..6, 3), 1..5)
        ) {
            let l = Lattice::from_generators(3, gens.clone());
            for g in &gens {
                prop_assert!(l.contains(g));
            }
            let mut shuffled = gens.clone();
            shuffled.reverse();
            let doubled: Vec<Vec<i64>> = shuffled.iter().map(|g| g.iter().map(|x| 2 * x).collect()).collect();
            let l2 = Lattice::from_generators(3, shuffled.into_iter().chain(doubled));
            prop_assert_eq!(l, l2);
        }
    }
}
