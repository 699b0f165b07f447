//! Word meanings as positive-semidefinite operators.
//!
//! This crate is the allocation-only core: a small symmetric eigensolver and
//! operator functions ([`specmat`]), density matrices with fidelity,
//! relative entropy and the support-inclusion entailment order ([`density`]),
//! a pregroup type reducer ([`pregroup`]), tensor contraction of word
//! operators along a reduction ([`compose`]), and lexicon construction from
//! aggregated co-occurrence records ([`lexicon`]).
//!
//! It is `no_std` and needs only `alloc`. File formats and the command-line
//! tool live in the `densem-cli` crate.
//!
//! ```
//! use densem::density::{pure, representativeness};
//! use densem::specmat::SymMatrix;
//! use densem::density::DensityMatrix;
//!
//! let lions = pure(&[1.0, 0.0]).unwrap();
//! let mammals = DensityMatrix::new(SymMatrix::diag(&[0.5, 0.5])).unwrap();
//! assert!((representativeness(&lions, &mammals).unwrap() - 0.5).abs() < 1e-12);
//! assert_eq!(representativeness(&mammals, &lions).unwrap(), 0.0);
//! ```
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod compose;
pub mod density;
mod error;
pub mod lexicon;
pub mod pregroup;
pub mod specmat;

pub use error::{Error, Result};
