//! Desk-scale machinery for quaternary Goldbach representations over dense
//! prime subsets.
//!
//! The crate has five layers:
//!
//! * [`residue`] — exact arithmetic over `Z_q`: factorization, unit groups,
//!   CRT splitting and recombination.
//! * [`local`] — constructive solvers for the local problem: four functions
//!   on `Z_q^*`, a quadruple summing to a target residue whose pairwise
//!   values beat the unit-group means, plus sumset covering.
//! * [`primes`] — sieve-backed prime subsets, relative density estimation,
//!   W-trick statistics and normalized log-weights.
//! * [`spectral`] — DFT over `Z_N` (`N` prime), convolution, large spectra,
//!   Bohr sets, mollification, and weighted quadruple counting.
//! * [`pipeline`] — the full transference run: parameter selection, residue
//!   selection via the local solver, weighted counting, and an independent
//!   direct representation finder.
//!
//! All seeded randomness flows through [`rng::SplitMix64`] so that runs are
//! reproducible across platforms and reimplementations.
//!
//! With the default `parallel` feature, sweep-style entry points fan out via
//! rayon; worker count is capped by the `GOLDBACH_THREADS` environment
//! variable. Disabling the feature yields identical results sequentially.

pub mod error;
pub mod local;
pub mod parallel;
pub mod pipeline;
pub mod primes;
pub mod residue;
pub mod rng;
pub mod spectral;

mod fft;

pub use error::{Error, Result};
