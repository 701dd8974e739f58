//! The weakly Baer hull inside the ambient product, and equalizers.

use serde::Serialize;

use crate::lattice::{Lattice, LinearMap};
use crate::lifting::RingHom;

use super::ring::{CongruenceRing, ZkError};
use super::structure::RingClass;

#[derive(Debug, Clone)]
pub struct Hull {
    pub ring: CongruenceRing,
    /// Indicators of the zero sets of ring elements, as masks.
    pub zero_set_idempotents: Vec<u64>,
    /// Those zero-set idempotents that were not already in the ring.
    pub adjoined: Vec<u64>,
    pub class: RingClass,
    /// For every element whose annihilator is already `eR`, its zero-set
    /// idempotent equals `e`.
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HullSummary {
    pub basis: Vec<Vec<i64>>,
    pub moduli: Vec<i64>,
    pub adjoined: Vec<Vec<i64>>,
    pub class: RingClass,
    pub consistent: bool,
}

impl Hull {
    pub fn summary(&self) -> HullSummary {
        let w = self.ring.width();
        HullSummary {
            basis: self.ring.basis(),
            moduli: self.ring.moduli(),
            adjoined: self.adjoined.iter().map(|&m| super::structure::mask_vec(m, w)).collect(),
            class: self.ring.classify().class,
            consistent: self.consistent,
        }
    }
}

impl CongruenceRing {
    /// Checks that every coordinate carries a nonzero element supported on it
    /// alone, i.e. every nonzero ideal of the ambient product meets the ring.
    pub fn check_essential(&self) -> Result<(), ZkError> {
        let full = self.full_mask();
        for i in 0..self.width() {
            let only_i = self.support_union(&self.vanishing(full & !(1 << i)));
            if only_i & (1 << i) == 0 {
                return Err(ZkError::NotEssentialExtension { coordinate: i });
            }
        }
        Ok(())
    }

    /// The subring of the ambient product generated by the ring and the
    /// indicators of the zero sets of its elements.
    pub fn wb_hull(&self) -> Result<Hull, ZkError> {
        self.check_essential()?;
        let full = self.full_mask();
        let realizable = self.classify().realizable_supports.clone();
        let zero_sets: Vec<u64> = realizable.iter().map(|&y| full & !y).collect();

        // Atoms of the Boolean algebra generated by the zero sets.
        let mut blocks = vec![full];
        for &z in &zero_sets {
            blocks = blocks.into_iter().flat_map(|b| [b & z, b & !z]).filter(|&b| b != 0).collect();
        }
        blocks.sort();

        let basis = self.lattice().basis();
        let gens: Vec<Vec<i64>> =
            blocks.iter().flat_map(|&f| basis.iter().map(move |b| (f, b))).map(|(f, b)| self.mask_elem(b, f)).collect();
        let ring = CongruenceRing::from_lattice(&self.moduli(), gens)?;

        let own = self.idempotents();
        let mut idems: Vec<u64> = zero_sets.clone();
        idems.sort();
        idems.dedup();
        let adjoined: Vec<u64> = idems.iter().copied().filter(|&e| !own.contains(e)).collect();

        let consistent = realizable.iter().all(|&y| {
            let ann = self.ann_of_support(y);
            !ann.idempotent_generated || ann.idempotent == full & !y
        });
        let class = ring.classify().class;
        Ok(Hull { ring, zero_set_idempotents: idems, adjoined, class, consistent })
    }

    /// `{r : phi(r) = psi(r)}` for two homomorphisms out of this ring.
    pub fn equalizer(&self, phi: &RingHom, psi: &RingHom) -> Result<CongruenceRing, ZkError> {
        if phi.source() != self || psi.source() != self {
            return Err(ZkError::IncompatibleHoms("sources differ from the ring".into()));
        }
        if phi.target() != psi.target() {
            return Err(ZkError::IncompatibleHoms("targets differ".into()));
        }
        let target_moduli = phi.target().moduli();
        let pairs: Vec<(usize, usize, i64)> = phi
            .refined_assign()
            .iter()
            .zip(psi.refined_assign())
            .zip(&target_moduli)
            .map(|((&a, &b), &q)| (a, b, q))
            .collect();

        let basis = self.lattice().basis();
        let images: Vec<Vec<i64>> =
            basis.iter().map(|v| pairs.iter().map(|&(a, b, _)| v[a] - v[b]).collect()).collect();
        let lat = if pairs.is_empty() {
            self.lattice().clone()
        } else {
            LinearMap { sources: basis, images: &images, moduli: &target_moduli }.kernel(self.width())
        };

        // Keep a constraint presentation when the ring has one in refined coordinates.
        let plain = self.coords().iter().enumerate().all(|(i, c)| c.orig == i);
        if let (Some(cons), true) = (self.constraints(), plain) {
            let mut all: Vec<(usize, usize, i64)> = cons.iter().map(|c| (c.i, c.j, c.n)).collect();
            all.extend(pairs.iter().filter(|p| p.0 != p.1).copied());
            if let Ok(r) = CongruenceRing::new(self.original_moduli(), &all) {
                if *r.lattice() == lat.sum(&Lattice::diagonal(&self.moduli())) {
                    return Ok(r);
                }
            }
        }
        CongruenceRing::from_lattice(&self.moduli(), lat.basis().to_vec())
    }
}
