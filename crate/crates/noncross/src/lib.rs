//! Exact combinatorics for the hyperoctahedral group `C_n` and its index-two
//! subgroup `D_n`: reflection length, the absolute order, noncrossing
//! partition intervals below a Coxeter element, the associated dual monoid
//! with its word problem, the quotient complex with its low-dimensional
//! homology, and mechanical verification of the presentation identities that
//! tie the interval monoid to the Artin groups of types C and D.
//!
//! Everything is exact integer arithmetic; no floating point anywhere.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! signed_perm  ->  absolute_order  ->  dual_monoid  ->  complex
//!                                  \->  presentations
//! ```
//!
//! with [`signed_perm::SignedPerm`] as the carrier for every group
//! computation and [`absolute_order::Interval`] as the carrier for every
//! order-theoretic one.

pub mod absolute_order;
pub mod complex;
pub mod dual_monoid;
pub mod presentations;
pub mod signed_perm;
pub mod smith;

pub use absolute_order::{Interval, LatticeCertificate, NoncrossingPartition};
pub use dual_monoid::PositiveWord;
pub use presentations::GroupPresentation;
pub use signed_perm::{Cycle, CycleDecomposition, GroupType, Reflection, SignedPerm};
