//! Exact diagonalization of the spin-1/2 XX ring.
//!
//! The crate is organised bottom-up:
//!
//! * [`spinbasis`] enumerates bit configurations, fixed-magnetization sectors,
//!   translation orbits and dihedral classes.
//! * [`xxmodel`] assembles the Hamiltonian per sector and per momentum block.
//! * [`eigen`] holds the dense Hermitian eigensolver and ground-manifold
//!   extraction.
//! * [`entangle`] builds two-site reduced density matrices and evaluates
//!   Wootters concurrence.
//! * [`polarize`] decomposes ground states into translation-orbit
//!   probabilities.
//! * [`bruteforce`] is an independent full `2^n` oracle.
//! * [`analysis`] runs concurrence sweeps over `n` and the large-`n` fit.
//! * [`report`] encodes and decodes tabular reports (JSON and CSV).
//!
//! Sites are 0-based throughout the library.

pub mod analysis;
pub mod bruteforce;
pub mod eigen;
pub mod entangle;
mod error;
pub mod polarize;
pub mod report;
pub mod spinbasis;
pub mod xxmodel;

pub use error::{Error, Result};
pub use num_complex::Complex64;
