//! Exact arithmetic for the discrete invariants of spectral data on a
//! compact Riemann surface.
//!
//! The crate has five subject modules and a verification driver:
//!
//! * [`f2`] — linear algebra over the two-element field: bilinear forms,
//!   quadratic refinements, symplectic bases, Arf invariants and zero
//!   counts (closed form and brute force).
//! * [`ko`] — the reduced KO group of a surface modeled as triples
//!   (rank, w1, w2) with twisted addition, the alpha map, the point
//!   class Omega, and mod-2 index homomorphisms.
//! * [`symbolic`] — exact sparse polynomials in `lambda` and weighted
//!   generators `a2..an`, matrices thereof, characteristic polynomials
//!   by direct determinant and by truncated power-series inversion, and
//!   the canonical Higgs matrices for the split real forms.
//! * [`geometry`] — integer bookkeeping for spectral curves: genera,
//!   branch counts, Prym dimensions, degree ledgers, Milnor-Wood bounds
//!   and Lefschetz dimension counts.
//! * [`census`] — big-integer counts of order-2 spectral data per
//!   characteristic class for SL(n,R) and Sp(2m,R), with independent
//!   cross-check routes.
//! * [`verify`] — named consistency checks over all of the above,
//!   surfaced by the CLI `verify` subcommand.
//!
//! All arithmetic is exact; counts use unbounded integers.

pub mod census;
pub mod error;
pub mod f2;
pub mod geometry;
pub mod ko;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};

/// Integer-coefficient sparse polynomial in `lambda` and `a2..an`.
pub type ZPoly = symbolic::WeightedPolynomial<num_bigint::BigInt>;
/// Matrix of integer-coefficient polynomials.
pub type ZMatrix = symbolic::SymbolicMatrix<num_bigint::BigInt>;
/// Characteristic polynomial with integer-coefficient entries.
pub type ZCharPoly = symbolic::CharPoly<num_bigint::BigInt>;
