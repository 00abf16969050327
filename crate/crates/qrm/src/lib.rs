//! Closed-form spectral analysis of the quantum Rabi model (QRM).
//!
//! The QRM Hamiltonian `H = a†a + Δσ_z + g(a + a†)σ_x` (ω = 1) admits a
//! parity decomposition `H = H₊ ⊕ H₋`. This crate evaluates, from explicit
//! analytical formulas,
//!
//! * the heat kernel `K(x,y,t)` of `e^{-tH}` and the parity kernels `K_±`,
//! * the Schrödinger propagators `U`, `U_±` obtained by Wick rotation,
//! * partition functions `Z(β)`, `Z_±(β)` and the entire function `Ω`,
//! * spectral zeta functions `ζ(s;τ)` by Mellin transform and by Hankel
//!   contour, zeta-regularized spectral determinants, and the exact
//!   rational Rabi–Bernoulli polynomials,
//! * Braak G-functions, constraint polynomials, exceptional G-functions and
//!   the entire completed `𝒢_±` whose zeros are the spectrum,
//!
//! and cross-validates every formula against an independent truncated-Fock
//! diagonalization oracle ([`fock_oracle`]).
//!
//! All evaluation paths are pure and deterministic for a fixed
//! configuration; grid sweeps may be parallelized by the caller.

pub mod error;
pub mod fock_oracle;
pub mod gfunction;
pub mod heat_propagator;
pub mod kernel_core;
pub mod numerics;
pub mod params;
pub mod partition_zeta;
pub mod verify;

pub use error::{QrmError, Result};
pub use params::{ModelParams, OrderedTuple, Parity, TimePoint};
