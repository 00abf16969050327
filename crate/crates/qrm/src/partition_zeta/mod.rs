//! Partition functions, Ω/Ω_odd, spectral zeta functions by Mellin and
//! Hankel contour, zeta-regularized spectral determinants, and exact
//! Rabi–Bernoulli polynomials.

pub mod omega;
pub mod rb;
pub mod zeta;

pub use omega::{
    omega, omega_odd, partition, partition_literal_corollary, partition_parity, OmegaEvaluator,
};
pub use rb::{rb_family, rb_polynomial, RBPoly, RBTag};
pub use zeta::{
    spectral_determinant, zeta_contour, zeta_mellin, DeterminantEvaluator, HankelContour,
    SpectrumKind, ZetaEvaluator,
};
