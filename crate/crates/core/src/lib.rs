//! Dirac series of GL(n,H).
//!
//! A chain calculus classifies the irreducible unitary representations with
//! nonzero Dirac cohomology: each representation is a disjoint union of
//! descending step-2 chains (s-chains for A_q(lambda) factors, one u-chain
//! for the trivial factor). On top of that sit the spin lowest K-type
//! machinery, a Blattner-type multiplicity formula through u∩k-cohomology
//! and S(u∩p), and exhaustive small-rank verification of the uniqueness,
//! multiplicity-one, and FS-scattered-count theorems.

pub mod blattner;
pub mod chains;
pub mod cli;
pub mod dirac;
mod error;
pub mod partitions;
pub mod weights;
pub mod weyl;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
