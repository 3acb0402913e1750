//! Element-order spectra and order E-lattices of finite abelian groups.
//!
//! Everything revolves around one map: send each divisor of a group's
//! exponent to the number of elements of exactly that order. This crate
//! computes that spectrum exactly from the group's primary decomposition,
//! packages it as the order canonical E-lattice (the divisor lattice of the
//! exponent with class cardinalities attached), decides E-lattice
//! isomorphism between groups, and inverts the map — recovering a group, up
//! to isomorphism, from a claimed spectrum or rejecting it as unrealizable.
//!
//! Module map:
//!
//! - [`arith`] — arbitrary-precision naturals, factorization, divisor
//!   lattices with componentwise meet/join.
//! - [`group`] — canonical finite abelian groups: primary decomposition,
//!   invariant factors, the `Z4 x Z16` text grammar.
//! - [`spectra`] — the counting formulas and the full [`OrderSpectrum`].
//! - [`elattice`] — descriptors, explicit small-group E-lattices, the axiom
//!   checker, and the isomorphism test.
//! - [`reconstruct`] — spectrum validation and inversion.
//! - [`oracle`] — brute-force enumeration used to cross-check everything;
//!   shares nothing with the formulas but gcd/lcm.
//!
//! Counts are exact at every size; nothing here rounds or approximates.

#![forbid(unsafe_code)]

pub mod arith;
pub mod elattice;
pub mod group;
pub mod oracle;
pub mod reconstruct;
pub mod spectra;

pub use arith::{factorize, nat, DivisorLattice, Factorization, Natural};
pub use elattice::{
    build_explicit, check_axioms, descriptor, iso, AxiomReport, ELatticeDescriptor,
    ExplicitELattice, IsoDecision,
};
pub use group::{parse_group_spec, AbelianGroup, PrimaryComponent};
pub use oracle::enumerate_spectrum;
pub use reconstruct::{reconstruct, NotRealizable, SpectrumCandidate};
pub use spectra::{count_order, spectrum, OrderSpectrum};
