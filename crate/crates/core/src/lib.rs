//! Exact computations with the reduced-ring order `a <= b iff ab = a^2`.
//!
//! Ring families:
//! - [`zkring`]: congruence subrings of finite products of `Z` and prime fields;
//! - [`seqring`]: eventually periodic sequences, eventually constant mod `p`;
//! - [`plring`]: continuous piecewise polynomials on a rational interval;
//! - [`polysub`]: subalgebras of products of polynomial rings.
//!
//! [`order`] holds the order itself and the brute-force oracles, [`lifting`]
//! the homomorphisms and orthogonal lifting.

pub mod lattice;
pub mod lifting;
pub mod order;
pub mod plring;
pub mod polysub;
pub mod seqring;
pub mod zkring;
