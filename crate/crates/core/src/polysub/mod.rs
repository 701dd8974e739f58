//! Finitely generated `K[x,y,z]`-subalgebras of `K[x,y,z]^t` over a prime
//! field or the rationals.
//!
//! Membership is decided only up to degree bounds: the span of generator
//! monomials of degree at most `D` times base monomials of degree at most `d`
//! is computed exactly and the target is tested against it.

mod algebra;
mod descriptor;
mod field;
mod goldie;
mod poly;

use thiserror::Error;

pub use algebra::{
    bounded_membership, exponent_vectors, rr_le_tuple, tuple_add, tuple_mul, tuple_sub, CertTerm,
    MembershipCertificate, MembershipOptions, SystemStats, Tuple, TupleAlgebra,
};
pub use descriptor::{
    parse_poly, parse_tuple, poly_literal, AlgebraDescriptor, CertificateReport, FieldChoice, PolyLiteral,
};
pub use field::{Field, PrimeField, Rationals};
pub use goldie::{goldie4_algebra, goldie4_target, goldie4_verify, stratum, GoldieReport, Stratum, StratumCount};
pub use poly::{Mono, MultiPoly, VARS};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolysubError {
    #[error("expected {expected} components, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("echelon form holds {entries} nonzero entries, above the cap {cap}")]
    CapExceeded { entries: usize, cap: usize },
    #[error("bad field {0:?}: use Q or F<p> with p prime")]
    BadField(String),
    #[error("{0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}
