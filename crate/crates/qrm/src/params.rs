//! Model parameters and validated argument types.

use crate::error::{QrmError, Result};
use num_complex::Complex64;

/// Coupling and level splitting of the Rabi Hamiltonian
/// `H = a†a + Δσ_z + g(a + a†)σ_x`; the oscillator frequency is fixed to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub g: f64,
    pub delta: f64,
}

impl ModelParams {
    pub fn new(g: f64, delta: f64) -> Result<Self> {
        if !(g >= 0.0) || !g.is_finite() {
            return Err(QrmError::InvalidArgument(format!(
                "coupling g must be finite and >= 0, got {g}"
            )));
        }
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(QrmError::InvalidArgument(format!(
                "level splitting delta must be finite and >= 0, got {delta}"
            )));
        }
        Ok(Self { g, delta })
    }

    pub fn g2(&self) -> f64 {
        self.g * self.g
    }
}

/// Parity sector of `H = H₊ ⊕ H₋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    /// +1 for `H₊`, -1 for `H₋`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }

    /// Parity with the opposite sign.
    pub fn flip(self) -> Self {
        match self {
            Parity::Plus => Parity::Minus,
            Parity::Minus => Parity::Plus,
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Plus => write!(f, "+"),
            Parity::Minus => write!(f, "-"),
        }
    }
}

/// Domain tag carried by a complex time argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeDomain {
    /// Complement of the left-horizontal cuts `{a + iπn : a ≤ 0}`,
    /// where the heat-kernel series converges.
    Heat,
    /// Half-plane `Re t > 0` united with the disc `|t| < π`, where Ω is
    /// holomorphic.
    Omega,
    /// Real `t ∉ πZ`, where the propagator's circular forms apply.
    PropagatorReal,
}

/// A complex time point validated against one of the three evaluation
/// domains. Construct through [`TimePoint::heat`], [`TimePoint::omega`]
/// or [`TimePoint::propagator`]; the tag is checked once at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimePoint {
    t: Complex64,
    domain: TimeDomain,
}

/// Distance from `y` to the nearest integer multiple of π.
fn dist_to_pi_grid(y: f64) -> f64 {
    let k = (y / std::f64::consts::PI).round();
    (y - k * std::f64::consts::PI).abs()
}

impl TimePoint {
    /// Validate `t` against the heat-kernel domain (complement of the
    /// closed left-horizontal cuts at `Im t = πn`).
    pub fn heat(t: Complex64) -> Result<Self> {
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(QrmError::InvalidArgument("non-finite time".into()));
        }
        if t.re <= 0.0 && dist_to_pi_grid(t.im) < 1e-12 {
            return Err(QrmError::Domain(format!(
                "t = {t} lies on a heat-kernel cut {{a + iπn, a ≤ 0}}"
            )));
        }
        // sinh(t) ~ 0 makes the printed formulas meaningless even when the
        // point is technically inside the domain.
        if t.sinh().norm() < 1e-8 {
            return Err(QrmError::IllConditioned(format!(
                "sinh(t) ≈ 0 at t = {t}"
            )));
        }
        Ok(Self { t, domain: TimeDomain::Heat })
    }

    /// Validate `w` against the Ω holomorphy domain
    /// (`Re w > 0` or `|w| < π`), excluding `w ∈ iπZ`.
    pub fn omega(w: Complex64) -> Result<Self> {
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(QrmError::InvalidArgument("non-finite time".into()));
        }
        if !(w.re > 0.0 || w.norm() < std::f64::consts::PI) {
            return Err(QrmError::Domain(format!(
                "w = {w} outside the Ω domain (Re w > 0 or |w| < π)"
            )));
        }
        if w.norm() < 1e-12 || (w.re.abs() < 1e-12 && dist_to_pi_grid(w.im) < 1e-12) {
            return Err(QrmError::Domain(format!("w = {w} too close to iπZ")));
        }
        Ok(Self { t: w, domain: TimeDomain::Omega })
    }

    /// Validate real `t` for propagator evaluation, rejecting the
    /// caustic neighborhoods `|t - kπ| < 1e-3` where the kernel is
    /// distributional.
    pub fn propagator(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(QrmError::InvalidArgument("non-finite time".into()));
        }
        if dist_to_pi_grid(t) < 1e-3 {
            return Err(QrmError::IllConditioned(format!(
                "t = {t} within 1e-3 of a caustic kπ"
            )));
        }
        Ok(Self {
            t: Complex64::new(t, 0.0),
            domain: TimeDomain::PropagatorReal,
        })
    }

    pub fn value(&self) -> Complex64 {
        self.t
    }

    pub fn domain(&self) -> TimeDomain {
        self.domain
    }

    /// Real part of the time value (the full value for propagator points).
    pub fn real(&self) -> f64 {
        self.t.re
    }
}

/// Ordered simplex point `0 ≤ μ₁ ≤ … ≤ μ_λ ≤ 1`. The convention `μ₀ = 0`
/// is hard-wired: the tuple stores only `μ₁…μ_λ` and accessors expose the
/// implicit leading zero.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedTuple {
    mu: Vec<f64>,
}

impl OrderedTuple {
    pub fn new(mu: Vec<f64>) -> Result<Self> {
        let mut prev = 0.0;
        for (i, &m) in mu.iter().enumerate() {
            if !(m >= prev) || m > 1.0 + 1e-14 {
                return Err(QrmError::InvalidArgument(format!(
                    "μ_{} = {m} violates 0 ≤ μ₁ ≤ … ≤ μ_λ ≤ 1",
                    i + 1
                )));
            }
            prev = m;
        }
        Ok(Self { mu })
    }

    pub fn empty() -> Self {
        Self { mu: Vec::new() }
    }

    /// Number of stored coordinates λ.
    pub fn lambda(&self) -> usize {
        self.mu.len()
    }

    /// `μ_γ` with the convention `μ₀ = 0`; valid for `0 ≤ γ ≤ λ`.
    pub fn mu(&self, gamma: usize) -> f64 {
        if gamma == 0 {
            0.0
        } else {
            self.mu[gamma - 1]
        }
    }

    /// The stored coordinates `μ₁…μ_λ`.
    pub fn coords(&self) -> &[f64] {
        &self.mu
    }
}
