//! Idempotents, annihilators, classification, minimal primes and Pierce stalks.

use serde::Serialize;

use crate::lattice::Lattice;

use super::ring::{reduced_generators, CongruenceRing, ZkError};

/// Precomputed per-ring tables over coordinate masks.
#[derive(Debug)]
pub(crate) struct Structure {
    pub idempotents: Vec<u64>,
    pub atoms: Vec<u64>,
    /// `vanish_support[z]`: union of supports of the elements vanishing on `z`.
    pub vanish_support: Vec<u64>,
    pub classification: Classification,
}

/// The Boolean algebra of idempotents of a ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentLattice {
    pub width: usize,
    /// Idempotents as coordinate masks, ascending.
    pub elements: Vec<u64>,
    /// Minimal nonzero idempotents; they partition the coordinates.
    pub atoms: Vec<u64>,
}

impl IdempotentLattice {
    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.elements.iter().map(|&m| mask_vec(m, self.width)).collect()
    }

    pub fn atom_vectors(&self) -> Vec<Vec<i64>> {
        self.atoms.iter().map(|&m| mask_vec(m, self.width)).collect()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.elements.binary_search(&mask).is_ok()
    }

    pub fn meet(&self, e: u64, f: u64) -> u64 {
        e & f
    }

    pub fn join(&self, e: u64, f: u64) -> u64 {
        e | f
    }

    /// Graphviz Hasse diagram of the algebra.
    pub fn to_dot(&self) -> String {
        let name = |m: u64| {
            let v: Vec<String> = mask_vec(m, self.width).iter().map(|x| x.to_string()).collect();
            format!("\"({})\"", v.join(","))
        };
        let mut s = String::from("digraph idempotents {\n  rankdir=BT;\n");
        for &e in &self.elements {
            s.push_str(&format!("  {};\n", name(e)));
        }
        for &e in &self.elements {
            for &f in &self.elements {
                // f covers e
                if e != f && e & f == e && (f & !e).count_ones() > 0 {
                    let covered = self.elements.iter().any(|&g| g != e && g != f && e & g == e && g & f == g);
                    if !covered {
                        s.push_str(&format!("  {} -> {};\n", name(e), name(f)));
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn mask_vec(m: u64, width: usize) -> Vec<i64> {
    (0..width).map(|i| (m >> i & 1) as i64).collect()
}

/// The annihilator of an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnIdeal {
    /// Generators reduced modulo the coordinate moduli.
    pub basis: Vec<Vec<i64>>,
    /// Union of the supports of the ideal, as a mask.
    pub support: u64,
    /// Largest idempotent of the ring inside the ideal.
    pub idempotent: u64,
    /// Whether the ideal is generated by that idempotent.
    pub idempotent_generated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RingClass {
    Boolean,
    WeaklyBaer,
    /// Never produced: with a finite idempotent algebra the two notions agree.
    AlmostWeaklyBaerNotWeaklyBaer,
    Neither,
}

impl RingClass {
    pub fn is_weakly_baer(self) -> bool {
        matches!(self, RingClass::Boolean | RingClass::WeaklyBaer)
    }
}

/// An element whose annihilator is not generated by idempotents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassWitness {
    pub support: u64,
    /// A ring element with exactly this support, when a small one was found.
    pub element: Option<Vec<i64>>,
    pub annihilator: AnnIdeal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: RingClass,
    pub witnesses: Vec<ClassWitness>,
    /// Supports realized by ring elements, as masks.
    pub realizable_supports: Vec<u64>,
    pub note: &'static str,
}

pub const FINITE_IDEMPOTENTS_NOTE: &str = "the idempotent algebra is finite, so every annihilator generated by idempotents is generated by one idempotent: almost weakly Baer coincides with weakly Baer";

impl Classification {
    pub fn witness(&self) -> Option<&ClassWitness> {
        self.witnesses.first()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalPrime {
    /// Coordinates whose kernel equals this prime.
    pub coordinates: Vec<usize>,
    pub basis: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PierceStalk {
    pub atom: u64,
    pub coordinates: Vec<usize>,
    pub moduli: Vec<i64>,
    pub basis: Vec<Vec<i64>>,
    pub is_domain: bool,
}

impl CongruenceRing {
    pub(crate) fn structure(&self) -> &Structure {
        self.structure.get_or_init(|| build_structure(self))
    }

    pub fn idempotents(&self) -> IdempotentLattice {
        let s = self.structure();
        IdempotentLattice { width: self.width(), elements: s.idempotents.clone(), atoms: s.atoms.clone() }
    }

    /// Largest idempotent vanishing on `mask`: the join of the atoms disjoint from it.
    pub fn largest_idempotent_off(&self, mask: u64) -> u64 {
        self.structure().atoms.iter().filter(|&&a| a & mask == 0).fold(0, |e, &a| e | a)
    }

    pub fn ann(&self, r: &[i64]) -> Result<AnnIdeal, ZkError> {
        let r = self.elem(r)?;
        Ok(self.ann_of_support(self.support(&r)))
    }

    /// Annihilator of any element with support `mask`.
    pub fn ann_of_support(&self, mask: u64) -> AnnIdeal {
        let l = self.vanishing(mask);
        let support = self.structure().vanish_support[mask as usize];
        let idempotent = self.largest_idempotent_off(mask);
        AnnIdeal {
            basis: reduced_generators(&l, &self.moduli()),
            support,
            idempotent,
            idempotent_generated: support == idempotent,
        }
    }

    pub fn is_realizable_support(&self, mask: u64) -> bool {
        let full = self.full_mask();
        self.structure().vanish_support[(full & !mask) as usize] == mask
    }

    pub fn classify(&self) -> &Classification {
        &self.structure().classification
    }

    pub fn is_weakly_baer(&self) -> bool {
        self.classify().class.is_weakly_baer()
    }

    /// Kernels of the coordinate projections.
    pub fn coordinate_kernel(&self, i: usize) -> Lattice {
        self.vanishing(1 << i)
    }

    pub fn minimal_primes(&self) -> Vec<MinimalPrime> {
        let k = self.width();
        let kernels: Vec<Lattice> = (0..k).map(|i| self.coordinate_kernel(i)).collect();
        let mut groups: Vec<(Lattice, Vec<usize>)> = Vec::new();
        for (i, l) in kernels.into_iter().enumerate() {
            match groups.iter_mut().find(|(g, _)| *g == l) {
                Some((_, cs)) => cs.push(i),
                None => groups.push((l, vec![i])),
            }
        }
        let moduli = self.moduli();
        groups
            .iter()
            .filter(|(l, _)| !groups.iter().any(|(m, _)| m != l && m.is_sublattice_of(l)))
            .map(|(l, cs)| MinimalPrime { coordinates: cs.clone(), basis: reduced_generators(l, &moduli) })
            .collect()
    }

    /// One coordinate per minimal prime, ascending.
    pub fn prime_representatives(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.minimal_primes().iter().map(|p| p.coordinates[0]).collect();
        v.sort();
        v
    }

    /// The same ring viewed inside the product of its minimal-prime quotients:
    /// the projection onto one coordinate per minimal prime, which is injective.
    pub fn reduce_to_primes(&self) -> CongruenceRing {
        let reps = self.prime_representatives();
        let moduli: Vec<i64> = reps.iter().map(|&i| self.coords()[i].q).collect();
        let l = self.lattice().project(&reps);
        CongruenceRing::from_lattice(&moduli, l.basis().to_vec()).expect("projection of a ring is a ring")
    }

    pub fn pierce_stalks(&self) -> Vec<PierceStalk> {
        let moduli = self.moduli();
        self.structure()
            .atoms
            .iter()
            .map(|&atom| {
                let coords: Vec<usize> = (0..self.width()).filter(|i| atom >> i & 1 == 1).collect();
                let sm: Vec<i64> = coords.iter().map(|&i| moduli[i]).collect();
                let proj = self.lattice().project(&coords).sum(&Lattice::diagonal(&sm));
                let stalk =
                    CongruenceRing::from_lattice(&sm, proj.basis().to_vec()).expect("projection of a ring is a ring");
                // A subring of a product of domains is a domain iff one
                // coordinate projection is injective on it.
                let is_domain = (0..coords.len()).any(|i| {
                    let k = stalk.coordinate_kernel(i);
                    reduced_generators(&k, &sm).is_empty()
                });
                PierceStalk { atom, coordinates: coords, moduli: sm, basis: stalk.basis(), is_domain }
            })
            .collect()
    }

    /// Projection of an element to the stalk at `atom`.
    pub fn stalk_part(&self, v: &[i64], atom: u64) -> Vec<i64> {
        (0..self.width()).filter(|i| atom >> i & 1 == 1).map(|i| v[i]).collect()
    }

    /// A small ring element with support exactly `mask`, if one is found.
    pub fn element_with_support(&self, mask: u64) -> Option<Vec<i64>> {
        let full = self.full_mask();
        let l = self.vanishing(full & !mask);
        let gens = reduced_generators(&l, &self.moduli());
        find_support_combination(self, &gens, mask)
    }
}

fn build_structure(ring: &CongruenceRing) -> Structure {
    let k = ring.width();
    let full = ring.full_mask();
    let idempotents: Vec<u64> = (0..=full).filter(|&m| ring.contains_vec(&ring.indicator(m))).collect();
    let atoms: Vec<u64> = idempotents
        .iter()
        .copied()
        .filter(|&e| e != 0 && !idempotents.iter().any(|&f| f != 0 && f != e && f & e == f))
        .collect();
    let vanish_support: Vec<u64> = (0..=full).map(|z| ring.support_union(&ring.vanishing(z))).collect();

    let realizable: Vec<u64> = (0..=full).filter(|&y| vanish_support[(full & !y) as usize] == y).collect();
    let largest_off = |mask: u64| atoms.iter().filter(|&&a| a & mask == 0).fold(0u64, |e, &a| e | a);

    let mut failing = Vec::new();
    for &y in &realizable {
        if vanish_support[y as usize] != largest_off(y) {
            failing.push(y);
        }
    }
    let boolean = ring.coords().iter().all(|c| c.q == 2);
    let class = if boolean {
        RingClass::Boolean
    } else if failing.is_empty() {
        RingClass::WeaklyBaer
    } else {
        RingClass::Neither
    };
    let moduli = ring.moduli();
    let witnesses = failing
        .iter()
        .map(|&y| {
            let l = ring.vanishing(y);
            let idempotent = largest_off(y);
            let ann = AnnIdeal {
                basis: reduced_generators(&l, &moduli),
                support: vanish_support[y as usize],
                idempotent,
                idempotent_generated: false,
            };
            let gens = reduced_generators(&ring.vanishing(full & !y), &moduli);
            ClassWitness { support: y, element: find_support_combination(ring, &gens, y), annihilator: ann }
        })
        .collect();
    debug_assert!(atoms.iter().fold(0, |m, &a| m | a) == full || k == 0);
    Structure {
        idempotents,
        atoms,
        vanish_support,
        classification: Classification {
            class,
            witnesses,
            realizable_supports: realizable,
            note: FINITE_IDEMPOTENTS_NOTE,
        },
    }
}

/// Searches small integer combinations of `gens` for an element with support
/// exactly `mask`. Falls back to merging generators with
/// `f = S + T - ST + P S^2 T^2` (`S`, `T` high powers, `P` the product of the
/// primes present), whose support is the union of the supports.
fn find_support_combination(ring: &CongruenceRing, gens: &[Vec<i64>], mask: u64) -> Option<Vec<i64>> {
    if mask == 0 {
        return Some(ring.indicator(0));
    }
    let n = gens.len();
    let mut best: Option<((u64, usize), Vec<i64>)> = None;
    if n <= 6 {
        let coeffs = [0i64, 1, -1, 2, -2];
        let total = coeffs.len().pow(n as u32);
        for idx in 1..total {
            let mut t = idx;
            let mut v = vec![0i64; ring.width()];
            for g in gens {
                let c = coeffs[t % coeffs.len()];
                t /= coeffs.len();
                for (x, y) in v.iter_mut().zip(g) {
                    *x += c * y;
                }
            }
            let v = ring.reduce(&v);
            if ring.support(&v) == mask {
                let size = v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
                let key = (size, v.iter().filter(|&&x| x < 0).count());
                if best.as_ref().is_none_or(|(k, b)| (key, &v) < (*k, b)) {
                    best = Some((key, v));
                }
            }
        }
    }
    if let Some((_, v)) = best {
        return Some(v);
    }
    merge_supports(ring, gens).filter(|v| ring.support(v) == mask)
}

fn merge_supports(ring: &CongruenceRing, gens: &[Vec<i64>]) -> Option<Vec<i64>> {
    let primes: Vec<i64> = {
        let mut p: Vec<i64> = ring.coords().iter().map(|c| c.q).filter(|&q| q > 0).collect();
        p.sort();
        p.dedup();
        p
    };
    let p_prod: i128 = primes.iter().map(|&p| p as i128).product();
    let n: u32 = primes.iter().map(|&p| (p - 1) as u32).fold(1, num_integer::lcm);
    let k = ring.width();
    let power = |v: &[i64]| -> Option<Vec<i128>> {
        v.iter()
            .zip(ring.coords())
            .map(|(&x, c)| {
                let r = (x as i128).checked_pow(2 * n)?;
                Some(if c.q > 0 { r.rem_euclid(c.q as i128) } else { r })
            })
            .collect()
    };
    let mut acc: Vec<i128> = vec![0; k];
    for g in gens {
        let t = power(g)?;
        let mut next = Vec::with_capacity(k);
        for i in 0..k {
            let (s, t) = (acc[i], t[i]);
            let st = s.checked_mul(t)?;
            let extra = p_prod.checked_mul(st.checked_mul(st)?)?;
            let v = s.checked_add(t)?.checked_sub(st)?.checked_add(extra)?;
            let q = ring.coords()[i].q as i128;
            next.push(if q > 0 { v.rem_euclid(q) } else { v });
        }
        acc = next;
    }
    acc.into_iter().map(|x| i64::try_from(x).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mod2() -> CongruenceRing {
        CongruenceRing::new(&[0, 0], &[(0, 1, 2)]).unwrap()
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(CongruenceRing::integers(2).idempotents().elements, vec![0, 1, 2, 3]);
        assert_eq!(mod2().idempotents().elements, vec![0, 3]);
        assert_eq!(CongruenceRing::integers(1).idempotents().elements, vec![0, 1]);
    }

    #[test]
    fn annihilator_examples() {
        let a = mod2().ann(&[2, 0]).unwrap();
        assert_eq!(a.basis, vec![vec![0, 2]]);
        assert_eq!(a.support, 0b10);
        assert_eq!(a.idempotent, 0);
        let z2 = CongruenceRing::integers(2);
        let a = z2.ann(&[2, 0]).unwrap();
        assert_eq!(a.basis, vec![vec![0, 1]]);
        assert_eq!(a.idempotent, 0b10);
        assert!(a.idempotent_generated);
        let a = mod2().ann(&[0, 0]).unwrap();
        assert_eq!(a.idempotent, 0b11);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(CongruenceRing::integers(3).classify().class, RingClass::WeaklyBaer);
        let c = mod2().classify().clone();
        assert_eq!(c.class, RingClass::Neither);
        assert_eq!(c.witness().unwrap().element, Some(vec![2, 0]));
        assert_eq!(c.witnesses[1].element, Some(vec![0, 2]));
        assert_eq!(CongruenceRing::full(&[2, 2, 2]).unwrap().classify().class, RingClass::Boolean);
        assert_eq!(CongruenceRing::full(&[6]).unwrap().classify().class, RingClass::WeaklyBaer);
    }

    #[test]
    fn minimal_prime_examples() {
        assert_eq!(CongruenceRing::integers(3).minimal_primes().len(), 3);
        let diag = CongruenceRing::new(&[0, 0], &[(0, 1, 0)]).unwrap();
        assert_eq!(diag.minimal_primes().len(), 1);
        assert_eq!(mod2().minimal_primes().len(), 2);
    }

    #[test]
    fn stalk_examples() {
        let s = CongruenceRing::integers(2).pierce_stalks();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|x| x.is_domain));
        let s = mod2().pierce_stalks();
        assert_eq!(s.len(), 1);
        assert!(!s[0].is_domain);
        assert_eq!(s[0].basis, vec![vec![1, 1], vec![0, 2]]);
        let s = CongruenceRing::full(&[2, 2]).unwrap().pierce_stalks();
        assert!(s.len() == 2 && s.iter().all(|x| x.is_domain));
    }

    #[test]
    fn support_merge_over_two_element_fields() {
        // In F_2^3 cut out by x1 = x2 and x2 = x3 only constants live.
        let r = CongruenceRing::new(&[2, 2, 2], &[(0, 1, 2), (1, 2, 2)]).unwrap();
        assert_eq!(r.element_with_support(0b111), Some(vec![1, 1, 1]));
        assert!(!r.is_realizable_support(0b001));
        let z = CongruenceRing::new(&[0, 0, 2], &[(0, 2, 2), (1, 2, 2)]).unwrap();
        for y in z.classify().realizable_supports.clone() {
            let e = z.element_with_support(y).expect("realizable support has an element");
            assert_eq!(z.support(&e), y);
        }
    }

    #[test]
    fn dot_output_lists_covers() {
        let dot = CongruenceRing::integers(2).idempotents().to_dot();
        assert!(dot.contains("\"(0,0)\" -> \"(1,0)\""));
        assert!(!dot.contains("\"(0,0)\" -> \"(1,1)\""));
    }
}
