//! Numerical experiments with regularized Euler products.
//!
//! - [`primes`]: segmented sieve, prime counting, Möbius and squarefree divisors.
//! - [`zeta`]: ζ(z) by Dirichlet sums, the accelerated alternating series,
//!   counterterm-subtracted partial sums and truncated Euler products.
//! - [`prime_zeta`]: P(z) by direct sums, Möbius inversion, inclusion–exclusion
//!   and integral counterterms, plus identity checks against log ζ.
//! - [`dipole`]: the dipole pairing of consecutive partial prime sums.
//! - [`elliptic`]: point counts, BSD partial products, rank fits, rational
//!   points by height, and L-function Euler products.
//!
//! Heavy loops (per-prime point counts, prime-product enumeration, rational
//! point search) run on rayon with the `parallel` feature. Reductions are
//! always sequential in a fixed order, so results are bit-identical for every
//! thread count.

// Negated float comparisons below are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dipole;
pub mod elliptic;
mod error;
pub mod fit;
pub mod par;
pub mod prime_zeta;
pub mod primes;
pub mod special;
pub mod sum;
pub mod trace;
pub mod zeta;

pub use error::{Error, Result};
pub use trace::{Checkpoint, SeriesTrace};

/// A complex argument or value z = re + i·im.
pub type ComplexValue = num_complex::Complex64;
