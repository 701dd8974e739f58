use std::sync::OnceLock;

use num_integer::Integer;
use thiserror::Error;

use crate::lattice::{is_zero_mod, Lattice, LinearMap};
use crate::order::RrRing;

use super::structure::Structure;

/// Largest refined width accepted; idempotent machinery enumerates `2^width`
/// coordinate masks.
pub const MAX_REFINED_WIDTH: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZkError {
    #[error("ring must have at least one coordinate")]
    EmptyWidth,
    #[error("modulus {modulus} at coordinate {index} is not squarefree")]
    NonSquarefreeModulus { index: usize, modulus: i64 },
    #[error("modulus {modulus} at coordinate {index} is not allowed (use 0 for Z or a squarefree m >= 2)")]
    InvalidModulus { index: usize, modulus: i64 },
    #[error("constraint index {index} out of range for width {width}")]
    IndexOutOfRange { index: usize, width: usize },
    #[error("constraint x{i} = x{j} mod {n} is not well defined for moduli {mi} and {mj}")]
    IllDefinedConstraint { i: usize, j: usize, n: i64, mi: i64, mj: i64 },
    #[error("refined width {0} exceeds the supported maximum")]
    WidthTooLarge(usize),
    #[error("vector length {got} does not match ring width {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the all-ones vector is not in the lattice")]
    NotUnital,
    #[error("product of {a:?} and {b:?} leaves the lattice")]
    NotMultiplicativelyClosed { a: Vec<i64>, b: Vec<i64> },
    #[error("element {0:?} is not in the ring")]
    NotInRing(Vec<i64>),
    #[error("ring is not weakly Baer")]
    NotWeaklyBaer,
    #[error("embedding is not essential: no nonzero element is supported only on coordinate {coordinate}")]
    NotEssentialExtension { coordinate: usize },
    #[error("homomorphisms are incompatible: {0}")]
    IncompatibleHoms(String),
    #[error("arithmetic overflow")]
    Overflow,
}

/// A pairwise congruence `x_i = x_j (mod n)`, with `n = 0` meaning equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub i: usize,
    pub j: usize,
    pub n: i64,
}

impl Constraint {
    pub fn new(i: usize, j: usize, n: i64) -> Self {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        Constraint { i, j, n }
    }
}

/// One coordinate of the refined ambient product: `Z` when `q = 0`, otherwise
/// the prime field `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord {
    pub orig: usize,
    pub q: i64,
}

/// A unital subring of `prod Z/m_i` (`m_i` squarefree or `0`).
///
/// Composite moduli are split into prime coordinates (`Z/6 -> F_2 x F_3`), so
/// internally every ambient factor is a domain. Elements ([`Vec<i64>`]) are
/// refined vectors with residues in `[0, q)` at prime coordinates; use
/// [`CongruenceRing::from_original`] and [`CongruenceRing::to_original`] to
/// convert.
#[derive(Debug)]
pub struct CongruenceRing {
    orig_moduli: Vec<i64>,
    constraints: Option<Vec<Constraint>>,
    coords: Vec<Coord>,
    lattice: Lattice,
    pub(crate) structure: OnceLock<Structure>,
}

impl Clone for CongruenceRing {
    fn clone(&self) -> Self {
        CongruenceRing {
            orig_moduli: self.orig_moduli.clone(),
            constraints: self.constraints.clone(),
            coords: self.coords.clone(),
            lattice: self.lattice.clone(),
            structure: OnceLock::new(),
        }
    }
}

impl PartialEq for CongruenceRing {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.lattice == other.lattice
    }
}

impl Eq for CongruenceRing {}

pub(crate) fn primes_of(m: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut n = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_squarefree(m: i64) -> bool {
    let mut n = m;
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

fn refine_coords(moduli: &[i64]) -> Vec<Coord> {
    let mut coords = Vec::new();
    for (orig, &m) in moduli.iter().enumerate() {
        if m == 0 {
            coords.push(Coord { orig, q: 0 });
        } else {
            coords.extend(primes_of(m).into_iter().map(|q| Coord { orig, q }));
        }
    }
    coords
}

fn validate_moduli(moduli: &[i64]) -> Result<(), ZkError> {
    if moduli.is_empty() {
        return Err(ZkError::EmptyWidth);
    }
    for (index, &m) in moduli.iter().enumerate() {
        if m < 0 || m == 1 {
            return Err(ZkError::InvalidModulus { index, modulus: m });
        }
        if m > 0 && !is_squarefree(m) {
            return Err(ZkError::NonSquarefreeModulus { index, modulus: m });
        }
    }
    Ok(())
}

impl CongruenceRing {
    /// The full product `prod Z/m_i`.
    pub fn full(moduli: &[i64]) -> Result<Self, ZkError> {
        Self::new(moduli, &[])
    }

    /// `prod Z^width`.
    pub fn integers(width: usize) -> Self {
        Self::full(&vec![0; width]).expect("valid")
    }

    /// The subring cut out by pairwise congruences `(i, j, n)` (0-based indices).
    pub fn new(moduli: &[i64], constraints: &[(usize, usize, i64)]) -> Result<Self, ZkError> {
        validate_moduli(moduli)?;
        let width = moduli.len();
        let mut cons = Vec::new();
        for &(i, j, n) in constraints {
            for index in [i, j] {
                if index >= width {
                    return Err(ZkError::IndexOutOfRange { index, width });
                }
            }
            let (mi, mj) = (moduli[i], moduli[j]);
            let ok = if n == 0 { mi == mj } else { n > 0 && [mi, mj].iter().all(|&m| m == 0 || m % n == 0) };
            if !ok {
                return Err(ZkError::IllDefinedConstraint { i, j, n, mi, mj });
            }
            cons.push(Constraint::new(i, j, n));
        }
        cons.sort();
        cons.dedup();

        let coords = refine_coords(moduli);
        if coords.len() > MAX_REFINED_WIDTH {
            return Err(ZkError::WidthTooLarge(coords.len()));
        }
        let k = coords.len();
        let refined_index = |orig: usize, p: Option<i64>| -> usize {
            coords
                .iter()
                .position(|c| c.orig == orig && (c.q == 0 || Some(c.q) == p))
                .expect("refined coordinate exists")
        };

        // Each original constraint becomes congruences between refined coordinates.
        let mut refined: Vec<(usize, usize, i64)> = Vec::new();
        for c in &cons {
            let (mi, mj) = (moduli[c.i], moduli[c.j]);
            if mi == 0 && mj == 0 {
                refined.push((refined_index(c.i, None), refined_index(c.j, None), c.n));
                continue;
            }
            let primes = if c.n == 0 { primes_of(mi.max(mj)) } else { primes_of(c.n) };
            for p in primes {
                refined.push((refined_index(c.i, Some(p)), refined_index(c.j, Some(p)), p));
            }
        }

        let sources: Vec<Vec<i64>> = (0..k)
            .map(|t| {
                let mut v = vec![0; k];
                v[t] = 1;
                v
            })
            .collect();
        let images: Vec<Vec<i64>> =
            (0..k).map(|t| refined.iter().map(|&(a, b, _)| (t == a) as i64 - (t == b) as i64).collect()).collect();
        let cmod: Vec<i64> = refined.iter().map(|&(_, _, n)| n).collect();
        let mut lattice = if refined.is_empty() {
            Lattice::from_generators(k, sources.clone())
        } else {
            LinearMap { sources: &sources, images: &images, moduli: &cmod }.kernel(k)
        };
        lattice = lattice.sum(&Lattice::diagonal(&coords.iter().map(|c| c.q).collect::<Vec<_>>()));

        let ring = CongruenceRing {
            orig_moduli: moduli.to_vec(),
            constraints: Some(cons),
            coords,
            lattice,
            structure: OnceLock::new(),
        };
        ring.check_closure()?;
        Ok(ring)
    }

    /// A ring given directly by its additive lattice inside `prod F_q` (`q`
    /// prime or `0`, one entry per coordinate). Unitality and closure under
    /// products are verified on the basis.
    pub fn from_lattice(moduli: &[i64], generators: Vec<Vec<i64>>) -> Result<Self, ZkError> {
        validate_moduli(moduli)?;
        for (index, &m) in moduli.iter().enumerate() {
            if m > 0 && primes_of(m).len() != 1 {
                return Err(ZkError::InvalidModulus { index, modulus: m });
            }
        }
        let k = moduli.len();
        if k > MAX_REFINED_WIDTH {
            return Err(ZkError::WidthTooLarge(k));
        }
        for g in &generators {
            if g.len() != k {
                return Err(ZkError::LengthMismatch { expected: k, got: g.len() });
            }
        }
        let lattice = Lattice::from_generators(k, generators).sum(&Lattice::diagonal(moduli));
        let ring = CongruenceRing {
            orig_moduli: moduli.to_vec(),
            constraints: None,
            coords: moduli.iter().enumerate().map(|(orig, &q)| Coord { orig, q }).collect(),
            lattice,
            structure: OnceLock::new(),
        };
        if !ring.lattice.contains(&vec![1; k]) {
            return Err(ZkError::NotUnital);
        }
        ring.check_closure()?;
        Ok(ring)
    }

    fn check_closure(&self) -> Result<(), ZkError> {
        let basis = self.lattice.basis();
        for (s, a) in basis.iter().enumerate() {
            for b in &basis[s..] {
                let p = self.mul_raw(a, b);
                if !self.lattice.contains(&p) {
                    return Err(ZkError::NotMultiplicativelyClosed { a: a.clone(), b: b.clone() });
                }
            }
        }
        if !self.lattice.contains(&vec![1; self.width()]) {
            return Err(ZkError::NotUnital);
        }
        Ok(())
    }

    /// Refined width.
    pub fn width(&self) -> usize {
        self.coords.len()
    }

    pub fn original_width(&self) -> usize {
        self.orig_moduli.len()
    }

    pub fn original_moduli(&self) -> &[i64] {
        &self.orig_moduli
    }

    /// Constraints as given at construction (0-based), sorted. `None` for
    /// rings built from a lattice.
    pub fn constraints(&self) -> Option<&[Constraint]> {
        self.constraints.as_deref()
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    /// Refined moduli, one prime or `0` per coordinate.
    pub fn moduli(&self) -> Vec<i64> {
        self.coords.iter().map(|c| c.q).collect()
    }

    /// Additive lattice, including the multiples `q e_i` at prime coordinates.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Lattice basis rows reduced modulo the coordinate moduli, zero rows dropped.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        reduced_generators(&self.lattice, &self.moduli())
    }

    pub fn is_full_product(&self) -> bool {
        self.lattice == Lattice::from_generators(self.width(), identity(self.width()))
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.coords).map(|(&x, c)| if c.q > 0 { x.rem_euclid(c.q) } else { x }).collect()
    }

    pub(crate) fn mul_raw(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
        self.reduce(&v)
    }

    /// True iff `v` (refined coordinates) lies in the ring.
    pub fn contains_vec(&self, v: &[i64]) -> bool {
        v.len() == self.width() && self.lattice.contains(v)
    }

    /// Validates and reduces a refined vector.
    pub fn elem(&self, v: &[i64]) -> Result<Vec<i64>, ZkError> {
        if v.len() != self.width() {
            return Err(ZkError::LengthMismatch { expected: self.width(), got: v.len() });
        }
        let r = self.reduce(v);
        if self.lattice.contains(&r) {
            Ok(r)
        } else {
            Err(ZkError::NotInRing(v.to_vec()))
        }
    }

    /// Converts a vector in original coordinates to a ring element.
    pub fn from_original(&self, v: &[i64]) -> Result<Vec<i64>, ZkError> {
        if v.len() != self.original_width() {
            return Err(ZkError::LengthMismatch { expected: self.original_width(), got: v.len() });
        }
        let refined: Vec<i64> = self.coords.iter().map(|c| v[c.orig]).collect();
        self.elem(&refined).map_err(|_| ZkError::NotInRing(v.to_vec()))
    }

    /// Recombines refined residues into original coordinates.
    pub fn to_original(&self, e: &[i64]) -> Vec<i64> {
        (0..self.original_width())
            .map(|i| {
                let m = self.orig_moduli[i];
                let parts: Vec<(i64, i64)> =
                    self.coords.iter().zip(e).filter(|(c, _)| c.orig == i).map(|(c, &x)| (c.q, x)).collect();
                if m == 0 {
                    return parts[0].1;
                }
                let mut x = 0i64;
                let mut step = 1i64;
                for (q, r) in parts {
                    while x.rem_euclid(q) != r.rem_euclid(q) {
                        x += step;
                    }
                    step = step.lcm(&q);
                }
                x
            })
            .collect()
    }

    /// Indicator vector of a coordinate mask.
    pub fn indicator(&self, mask: u64) -> Vec<i64> {
        (0..self.width()).map(|i| (mask >> i & 1) as i64).collect()
    }

    /// Coordinates where `v` is nonzero, as a bit mask.
    pub fn support(&self, v: &[i64]) -> u64 {
        v.iter()
            .zip(&self.coords)
            .enumerate()
            .filter(|(_, (&x, c))| !is_zero_mod(x, c.q))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.width()) - 1
    }

    /// Keeps the coordinates in `mask`, zeroing the rest.
    pub fn mask_elem(&self, v: &[i64], mask: u64) -> Vec<i64> {
        v.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { x } else { 0 }).collect()
    }

    /// Elements vanishing on every coordinate in `zero_mask`.
    pub fn vanishing(&self, zero_mask: u64) -> Lattice {
        let basis = self.lattice.basis();
        let cols: Vec<usize> = (0..self.width()).filter(|i| zero_mask >> i & 1 == 1).collect();
        if cols.is_empty() {
            return self.lattice.clone();
        }
        let images: Vec<Vec<i64>> = basis.iter().map(|b| cols.iter().map(|&c| b[c]).collect()).collect();
        let moduli: Vec<i64> = cols.iter().map(|&c| self.coords[c].q).collect();
        LinearMap { sources: basis, images: &images, moduli: &moduli }.kernel(self.width())
    }

    /// Union of supports of a sublattice, as a mask.
    pub fn support_union(&self, l: &Lattice) -> u64 {
        l.support_union(&self.moduli()).iter().enumerate().filter(|(_, &s)| s).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Every ring element with `|x_i| <= bound` at integer coordinates and
    /// residue at most `bound` at prime coordinates.
    pub fn elements_in_box(&self, bound: u64) -> Vec<Vec<i64>> {
        let b = bound as i64;
        let ranges: Vec<(i64, i64)> =
            self.coords.iter().map(|c| if c.q == 0 { (-b, b) } else { (0, (c.q - 1).min(b)) }).collect();
        let mut out = Vec::new();
        let mut v: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            if self.lattice.contains(&v) {
                out.push(v.clone());
            }
            let mut t = 0;
            loop {
                if t == v.len() {
                    return out;
                }
                if v[t] < ranges[t].1 {
                    v[t] += 1;
                    break;
                }
                v[t] = ranges[t].0;
                t += 1;
            }
        }
    }
}

pub(crate) fn identity(k: usize) -> Vec<Vec<i64>> {
    (0..k)
        .map(|t| {
            let mut v = vec![0; k];
            v[t] = 1;
            v
        })
        .collect()
}

pub(crate) fn reduced_generators(l: &Lattice, moduli: &[i64]) -> Vec<Vec<i64>> {
    l.basis()
        .iter()
        .map(|b| b.iter().zip(moduli).map(|(&x, &q)| if q > 0 { x.rem_euclid(q) } else { x }).collect::<Vec<i64>>())
        .filter(|b| b.iter().any(|&x| x != 0))
        .collect()
}

impl RrRing for CongruenceRing {
    type Elem = Vec<i64>;

    fn zero(&self) -> Vec<i64> {
        vec![0; self.width()]
    }
    fn one(&self) -> Vec<i64> {
        self.reduce(&vec![1; self.width()])
    }
    fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        let v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&v)
    }
    fn neg(&self, a: &Vec<i64>) -> Vec<i64> {
        let v: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&v)
    }
    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        self.mul_raw(a, b)
    }
    fn contains(&self, a: &Vec<i64>) -> bool {
        self.contains_vec(a) && self.reduce(a) == *a
    }
    fn size(&self, a: &Vec<i64>) -> u64 {
        a.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }
    fn elements_within(&self, bound: u64) -> Vec<Vec<i64>> {
        self.elements_in_box(bound)
    }

    /// Lower bounds of `a` and `b` agree with both on their support, so they
    /// are `a` masked to a subset of `{i : a_i = b_i != 0}`.
    fn lower_bound_candidates(&self, a: &Vec<i64>, b: &Vec<i64>) -> Option<Vec<Vec<i64>>> {
        let e = self.support(a) & !self.support(&self.sub(a, b));
        Some(submasks(e).map(|t| self.mask_elem(a, t)).filter(|c| self.lattice.contains(c)).collect())
    }
}

/// All submasks of `m`, including `0` and `m`.
pub fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}
