//! Congruence rings: unital subrings of `prod Z/m_i` with `m_i` squarefree or
//! `0`, cut out by pairwise congruences or given by an additive lattice.

mod descriptor;
mod hull;
mod meets;
mod ring;
mod structure;

pub use descriptor::RingDescriptor;
pub use hull::{Hull, HullSummary};
pub use meets::{GoodCertificate, GoodVerdict, StalkPattern, SupResult};
pub use ring::{submasks, CongruenceRing, Constraint, Coord, ZkError, MAX_REFINED_WIDTH};
pub use structure::{
    AnnIdeal, ClassWitness, Classification, IdempotentLattice, MinimalPrime, PierceStalk, RingClass,
    FINITE_IDEMPOTENTS_NOTE,
};
