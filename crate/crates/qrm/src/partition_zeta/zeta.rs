//! Spectral zeta functions `ζ(s;τ) = Σ_j (λ_j + τ)^{-s}` by Mellin
//! transform and Hankel contour, their derivative at `s = 0`, and the
//! zeta-regularized spectral determinant `exp(-ζ'(0;τ))`.
//!
//! The contour representation
//! `ζ(s;τ) = -Γ(1-s)/(2πi) ∮ (-w)^{s-1} Z(w) e^{-τw} dw`
//! is evaluated with the ray pair collapsed to `2i sin(π(s-1)) ∫_r^W …`
//! plus a circle of radius `r < π` (Ω is holomorphic on `|w| < π`; at
//! nonpositive integer `s` the ray factor vanishes and the circle reduces
//! to the residue that produces the Rabi–Bernoulli special values).
//! It converges for `τ` above `-λ₁`; the determinant continues below by
//! removing the lowest eigenvalues from `Z` (G-function route for g > 0,
//! closed forms at g = 0) and restoring them as explicit factors
//! `Π (λ_j + τ)`.
//!
//! The Ω series tolerance is relaxed exponentially along the ray: at
//! large `t` the integrand carries `e^{-(λ₁+τ)t}`, so cheap Z values
//! there cannot move the result.

use crate::error::{QrmError, Result};
use crate::numerics::gauss::gauss_legendre_01;
use crate::numerics::simplex::QuadratureScheme;
use crate::numerics::special::{gamma, reciprocal_gamma, EULER_GAMMA};
use crate::params::{ModelParams, Parity, TimePoint};
use crate::partition_zeta::omega::OmegaEvaluator;
use num_complex::Complex64;

/// Which spectrum the zeta function runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Full,
    Parity(Parity),
}

impl SpectrumKind {
    /// Residue of `Z(w)` at `w = 0` (`Ω(0) = 2` split evenly between the
    /// parities), which is also the residue of `ζ` at `s = 1`.
    fn z_residue(&self) -> f64 {
        match self {
            SpectrumKind::Full => 2.0,
            SpectrumKind::Parity(_) => 1.0,
        }
    }
}

/// Hankel contour layout: circle radius, node counts, ray extent.
#[derive(Debug, Clone)]
pub struct HankelContour {
    /// circle radius; must stay inside the proven Ω disc (r < π)
    pub radius: f64,
    pub circle_panels: usize,
    pub circle_order: usize,
    /// composite-GL panel width on the return rays
    pub ray_panel: f64,
    pub ray_order: usize,
    /// hard cutoff for the rays
    pub max_w: f64,
}

impl Default for HankelContour {
    fn default() -> Self {
        Self {
            radius: 1.0,
            circle_panels: 8,
            circle_order: 12,
            ray_panel: 1.0,
            ray_order: 16,
            max_w: 200.0,
        }
    }
}

impl HankelContour {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius < std::f64::consts::PI) {
            return Err(QrmError::InvalidArgument(format!(
                "contour radius {} outside (0, π)",
                self.radius
            )));
        }
        if self.circle_panels == 0 || self.circle_order == 0 || self.ray_order == 0 {
            return Err(QrmError::InvalidArgument("empty contour rule".into()));
        }
        if self.ray_panel <= 0.0 || self.max_w <= self.radius {
            return Err(QrmError::InvalidArgument("bad ray layout".into()));
        }
        Ok(())
    }
}

/// Switch point beyond which `Z(t)` on the real axis is summed
/// spectrally over G-function eigenvalues instead of integrating the Ω
/// series: the simplex quadrature's accuracy ceiling at high dimensions
/// (large tΔ) would otherwise cap the zeta accuracy near 1e-6.
const SPECTRAL_SPLIT: f64 = 3.0;

/// Eigenvalue list backing the spectral tail; excludes any subtracted
/// modes.
struct SpectralTail {
    t_split: f64,
    lambdas: Vec<f64>,
}

/// Z evaluation with optional eigenvalue subtraction, decay-aware
/// tolerance relaxation, and the spectral large-t tail.
struct ZContext<'a> {
    ev: &'a OmegaEvaluator,
    kind: SpectrumKind,
    subtract: &'a [f64],
    tol: f64,
    /// lower bound on the integrand decay exponent along the real axis
    decay: f64,
    spectral: Option<&'a SpectralTail>,
}

impl ZContext<'_> {
    fn tol_at(&self, w: Complex64) -> f64 {
        if w.im == 0.0 && w.re > 1.0 {
            (self.tol * (self.decay * (w.re - 1.0)).exp()).clamp(self.tol, 1e-4)
        } else {
            self.tol
        }
    }

    fn z(&self, w: Complex64) -> Result<Complex64> {
        if let Some(sp) = self.spectral {
            if w.im == 0.0 && w.re >= sp.t_split {
                let mut acc = Complex64::new(0.0, 0.0);
                for &l in &sp.lambdas {
                    acc += (-l * w).exp();
                }
                return Ok(acc);
            }
        }
        let tp = TimePoint::omega(w)?;
        let tol = self.tol_at(w);
        let mut v = match self.kind {
            SpectrumKind::Full => self.ev.z_full(&tp, tol)?,
            SpectrumKind::Parity(parity) => self.ev.z_parity(&tp, parity, tol)?,
        };
        for &l in self.subtract {
            v -= (-l * w).exp();
        }
        Ok(v)
    }
}

/// Spectral tail for the given kind: all eigenvalues below `lambda_max`,
/// minus the subtracted set.
fn spectral_tail(
    kind: SpectrumKind,
    subtract: &[f64],
    p: &ModelParams,
    tol: f64,
) -> Result<SpectralTail> {
    // modes above λ₁ + 13 are below the e^{-37} floor at the split point
    let lambda_max = 13.0 - p.delta - p.g2();
    let all = low_eigenvalues(kind, lambda_max, p, tol)?;
    let lambdas = all
        .into_iter()
        .filter(|&l| !subtract.iter().any(|&s| (s - l).abs() < 1e-9))
        .collect();
    Ok(SpectralTail { t_split: SPECTRAL_SPLIT, lambdas })
}

/// Cached quadrature nodes with Z values; reusable across `s` (and, for
/// the determinant, across `τ`).
struct ContourData {
    /// circle: (w, dw-weight, log(-w), Z(w))
    circle: Vec<(Complex64, Complex64, Complex64, Complex64)>,
    /// ray: (ρ, weight, Z(ρ)) on [radius, W]
    ray: Vec<(f64, f64, f64)>,
}

fn build_circle(
    zctx: &ZContext<'_>,
    contour: &HankelContour,
) -> Result<Vec<(Complex64, Complex64, Complex64, Complex64)>> {
    let r = contour.radius;
    let (gx, gw) = gauss_legendre_01(contour.circle_order);
    let mut out = Vec::with_capacity(contour.circle_panels * contour.circle_order);
    let panel = 2.0 * std::f64::consts::PI / contour.circle_panels as f64;
    for k in 0..contour.circle_panels {
        let lo = k as f64 * panel;
        for (x, wq) in gx.iter().zip(&gw) {
            let phi = lo + x * panel;
            let w = r * Complex64::new(phi.cos(), phi.sin());
            // dw = i r e^{iφ} dφ
            let dw = Complex64::new(0.0, 1.0) * w * (wq * panel);
            let logmw = Complex64::new(r.ln(), phi - std::f64::consts::PI);
            out.push((w, dw, logmw, zctx.z(w)?));
        }
    }
    Ok(out)
}

/// Ray nodes on [radius, w_end] (composite GL).
fn build_ray(
    zctx: &ZContext<'_>,
    contour: &HankelContour,
    w_end: f64,
) -> Result<Vec<(f64, f64, f64)>> {
    let (gx, gw) = gauss_legendre_01(contour.ray_order);
    let mut out = Vec::new();
    let mut lo = contour.radius;
    while lo < w_end {
        let hi = (lo + contour.ray_panel).min(w_end);
        for (x, wq) in gx.iter().zip(&gw) {
            let rho = lo + x * (hi - lo);
            let z = zctx.z(Complex64::new(rho, 0.0))?;
            out.push((rho, wq * (hi - lo), z.re));
        }
        lo = hi;
    }
    Ok(out)
}

/// End of the ray for an effective decay exponent `m`: truncation error
/// `≲ W^{s-1}e^{-mW}`, small for the s range in use, clipped to the
/// contour's hard cutoff.
fn ray_end(m: f64, contour: &HankelContour) -> f64 {
    (33.0 / m.max(0.05)).clamp(contour.radius + 1.0, contour.max_w)
}

impl ContourData {
    fn build(zctx: &ZContext<'_>, contour: &HankelContour) -> Result<Self> {
        contour.validate()?;
        Ok(Self {
            circle: build_circle(zctx, contour)?,
            ray: build_ray(zctx, contour, ray_end(zctx.decay, contour))?,
        })
    }

    /// `I_ray(s; τ) = ∫_r^W ρ^{s-1} Z(ρ) e^{-τρ} dρ`
    fn i_ray(&self, s: Complex64, tau: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(rho, w, z) in &self.ray {
            acc += w * z * (-tau * rho).exp() * ((s - 1.0) * rho.ln()).exp();
        }
        acc
    }

    /// `I_circle(s; τ) = ∮ (-w)^{s-1} Z(w) e^{-τw} dw`
    fn i_circle(&self, s: Complex64, tau: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(w, dw, logmw, z) in &self.circle {
            acc += dw * z * (-tau * w).exp() * ((s - 1.0) * logmw).exp();
        }
        acc
    }

    /// ζ(s;τ) from the cached nodes.
    fn zeta(&self, s: Complex64, tau: f64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let ray_factor = 2.0 * Complex64::new(0.0, 1.0) * (std::f64::consts::PI * (s - 1.0)).sin();
        let bracket = ray_factor * self.i_ray(s, tau) + self.i_circle(s, tau);
        -gamma(Complex64::new(1.0, 0.0) - s) / two_pi_i * bracket
    }

    /// ζ'(0;τ) by differentiation under the integral:
    /// `ζ'(0) = -γ A(0) + I_ray(0) - (1/2πi) I_circle'(0)` with
    /// `A(0) = (1/2πi) I_circle(0)` and the `log(-w)` insertion in
    /// `I_circle'` (the digamma term at s = 0 is `ψ(1) = -γ`).
    fn zeta_prime0(&self, tau: f64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let s0 = Complex64::new(0.0, 0.0);
        let a0 = self.i_circle(s0, tau) / two_pi_i;
        let mut circle_prime = Complex64::new(0.0, 0.0);
        for &(w, dw, logmw, z) in &self.circle {
            circle_prime += dw * z * (-tau * w).exp() * (-logmw).exp() * logmw;
        }
        let r0 = self.i_ray(s0, tau);
        -EULER_GAMMA * a0 + r0 - circle_prime / two_pi_i
    }
}

/// Shared-node zeta evaluator at fixed `(kind, τ, params)`: the Mellin
/// tail reuses the contour-ray Z values.
pub struct ZetaEvaluator {
    kind: SpectrumKind,
    tau: f64,
    data: ContourData,
    /// Mellin inner nodes: (t, weight, R(t)) with R = Z e^{-τt} - c/t
    inner: Vec<(f64, f64, f64)>,
    /// bridge nodes on [t0, radius]: (t, weight, Z(t))
    bridge: Vec<(f64, f64, f64)>,
    t0: f64,
}

impl ZetaEvaluator {
    pub fn new(
        kind: SpectrumKind,
        tau: f64,
        p: &ModelParams,
        contour: &HankelContour,
        tol: f64,
        scheme: &QuadratureScheme,
    ) -> Result<Self> {
        if tau <= p.delta + p.g2() {
            return Err(QrmError::Domain(format!(
                "zeta representations need τ > Δ + g² = {}, got {tau}",
                p.delta + p.g2()
            )));
        }
        let ev = OmegaEvaluator::new(p, scheme)?;
        // effective decay of the integrand tails: λ₁ + τ ≥ τ - (Δ + g²)
        let decay = tau - p.delta - p.g2();
        let tail = spectral_tail(kind, &[], p, tol)?;
        let zctx = ZContext { ev: &ev, kind, subtract: &[], tol, decay, spectral: Some(&tail) };
        let data = ContourData::build(&zctx, contour)?;
        // Mellin inner region (0, t0]: geometric u-panels with t = u²
        let t0: f64 = 0.5;
        let c = kind.z_residue();
        let (gx, gw) = gauss_legendre_01(16);
        // 16 halvings put t_min ≈ 1e-10; the remaining (0, t_min] piece
        // is O(t_min) even at Re s → 1⁺
        let mut inner = Vec::new();
        let mut hi = t0.sqrt();
        for _ in 0..16 {
            let lo = hi * 0.5;
            for (x, wq) in gx.iter().zip(&gw) {
                let u = lo + x * (hi - lo);
                let t = u * u;
                let z = zctx.z(Complex64::new(t, 0.0))?.re;
                let r_reg = z * (-tau * t).exp() - c / t;
                inner.push((t, wq * (hi - lo) * 2.0 * u, r_reg));
            }
            hi = lo;
        }
        // bridge [t0, radius]
        let mut bridge = Vec::new();
        if contour.radius > t0 {
            for (x, wq) in gx.iter().zip(&gw) {
                let t = t0 + x * (contour.radius - t0);
                let z = zctx.z(Complex64::new(t, 0.0))?.re;
                bridge.push((t, wq * (contour.radius - t0), z));
            }
        }
        Ok(Self { kind, tau, data, inner, bridge, t0 })
    }

    /// Dirichlet-region evaluation by Mellin transform (`Re s > 1`).
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        if s.re <= 1.0 {
            return Err(QrmError::Domain(format!(
                "Mellin representation needs Re s > 1, got {s}"
            )));
        }
        let c = self.kind.z_residue();
        // ∫₀^{t0} t^{s-1}(c/t) dt = c·t0^{s-1}/(s-1)
        let mut total = c * ((s - 1.0) * self.t0.ln()).exp() / (s - 1.0);
        for &(t, w, r_reg) in &self.inner {
            total += w * r_reg * ((s - 1.0) * t.ln()).exp();
        }
        for &(t, w, z) in &self.bridge {
            total += w * z * (-self.tau * t).exp() * ((s - 1.0) * t.ln()).exp();
        }
        // tail [radius, W] reuses the contour-ray nodes
        total += self.data.i_ray(s, self.tau);
        Ok(total * reciprocal_gamma(s))
    }

    /// Contour evaluation, meromorphic in `s`. Positive integers `s ≥ 2`
    /// hit the Γ(1-s) pole and are routed to the Mellin form; `s = 1` is
    /// the zeta pole itself.
    pub fn contour(&self, s: Complex64) -> Result<Complex64> {
        if s.im == 0.0 && (s.re - s.re.round()).abs() < 1e-12 && s.re.round() >= 1.0 {
            if s.re.round() == 1.0 {
                return Err(QrmError::Domain("ζ(s;τ) has its pole at s = 1".into()));
            }
            return self.mellin(s);
        }
        Ok(self.data.zeta(s, self.tau))
    }

    /// ζ'(0;τ).
    pub fn zeta_prime0(&self) -> Complex64 {
        self.data.zeta_prime0(self.tau)
    }
}

/// One-shot Mellin-transform zeta (`Re s > 1`, `τ > Δ + g²`).
pub fn zeta_mellin(
    s: Complex64,
    tau: f64,
    kind: SpectrumKind,
    p: &ModelParams,
    tol: f64,
) -> Result<Complex64> {
    ZetaEvaluator::new(
        kind,
        tau,
        p,
        &HankelContour::default(),
        tol,
        &QuadratureScheme::zeta(),
    )?
    .mellin(s)
}

/// One-shot Hankel-contour zeta (meromorphic continuation in `s`).
pub fn zeta_contour(
    s: Complex64,
    tau: f64,
    kind: SpectrumKind,
    p: &ModelParams,
    contour: &HankelContour,
    tol: f64,
) -> Result<Complex64> {
    ZetaEvaluator::new(kind, tau, p, contour, tol, &QuadratureScheme::zeta())?.contour(s)
}

/// Zeta-regularized spectral determinant `exp(-ζ'(0;τ))`, continued in τ
/// past `-λ₁` by eigenvalue subtraction; zeros sit exactly at `τ = -λ_j`.
pub struct DeterminantEvaluator {
    subtract: Vec<f64>,
    data: ContourData,
    tau_lo: f64,
}

impl DeterminantEvaluator {
    /// Prepare for evaluations with the zeta parameter `τ ≥ tau_lo`.
    pub fn new(kind: SpectrumKind, tau_lo: f64, p: &ModelParams, tol: f64) -> Result<Self> {
        let contour = HankelContour::default();
        let bound = p.delta + p.g2();
        let subtract = if tau_lo > bound + 0.25 {
            Vec::new()
        } else {
            // need all λ_j with λ_j + τ below a safety margin
            let margin = 2.0;
            let lambda_max = margin - tau_lo;
            low_eigenvalues(kind, lambda_max, p, tol)?
        };
        let ev = OmegaEvaluator::new(p, &QuadratureScheme::zeta())?;
        let decay = if subtract.is_empty() { tau_lo - bound } else { 2.0 };
        // beyond the spectral split the subtraction is performed exactly
        // on the eigenvalue list, so no noise cap is needed there; the
        // quadrature segment [r, split) is noise-safe
        let tail = spectral_tail(kind, &subtract, p, tol)?;
        let zctx =
            ZContext { ev: &ev, kind, subtract: &subtract, tol, decay, spectral: Some(&tail) };
        let data = ContourData::build(&zctx, &contour)?;
        Ok(Self { subtract, data, tau_lo })
    }

    /// `det(τ) = Π_{j∈S}(λ_j + τ) · exp(-ζ'_S(0;τ))`.
    pub fn eval(&self, tau: f64) -> Result<f64> {
        if tau < self.tau_lo - 1e-12 {
            return Err(QrmError::Domain(format!(
                "determinant evaluator prepared for τ ≥ {}, got {tau}",
                self.tau_lo
            )));
        }
        let zp = self.data.zeta_prime0(tau);
        if zp.im.abs() > 1e-6 * zp.re.abs().max(1.0) {
            return Err(QrmError::Convergence(format!(
                "ζ'(0;{tau}) has non-negligible imaginary part {:.3e}",
                zp.im
            )));
        }
        let mut det = (-zp.re).exp();
        for &l in &self.subtract {
            det *= l + tau;
        }
        Ok(det)
    }

    pub fn subtracted(&self) -> &[f64] {
        &self.subtract
    }
}

/// Eigenvalues `λ_j ≤ lambda_max`: G-function route for g > 0, closed
/// forms `n ± Δ(-1)ⁿ` at g = 0 (independent of the Fock oracle either
/// way).
fn low_eigenvalues(
    kind: SpectrumKind,
    lambda_max: f64,
    p: &ModelParams,
    tol: f64,
) -> Result<Vec<f64>> {
    let parities: Vec<Parity> = match kind {
        SpectrumKind::Full => vec![Parity::Plus, Parity::Minus],
        SpectrumKind::Parity(parity) => vec![parity],
    };
    let mut out = Vec::new();
    for parity in parities {
        if p.g == 0.0 {
            let mut n = 0usize;
            loop {
                let alt = if n % 2 == 0 { 1.0 } else { -1.0 };
                let l = n as f64 + parity.sign() * p.delta * alt;
                if n as f64 - p.delta > lambda_max {
                    break;
                }
                if l <= lambda_max {
                    out.push(l);
                }
                n += 1;
            }
        } else {
            let x_lo = -p.delta - 0.3;
            let x_hi = lambda_max + p.g2();
            if x_hi <= x_lo {
                continue;
            }
            let recs = crate::gfunction::find_eigenvalues(parity, (x_lo, x_hi), 0.02, tol, p)?;
            out.extend(recs.iter().map(|r| r.lambda).filter(|&l| l <= lambda_max));
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

/// One-shot spectral determinant at the zeta parameter `τ` (zeros at
/// `τ = -λ_j`); `Full` is the product of the two parity determinants.
pub fn spectral_determinant(
    tau: f64,
    kind: SpectrumKind,
    p: &ModelParams,
    tol: f64,
) -> Result<f64> {
    match kind {
        SpectrumKind::Full => {
            let dp = DeterminantEvaluator::new(SpectrumKind::Parity(Parity::Plus), tau, p, tol)?
                .eval(tau)?;
            let dm = DeterminantEvaluator::new(SpectrumKind::Parity(Parity::Minus), tau, p, tol)?
                .eval(tau)?;
            Ok(dp * dm)
        }
        SpectrumKind::Parity(_) => DeterminantEvaluator::new(kind, tau, p, tol)?.eval(tau),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::hurwitz_zeta;

    fn params(g: f64, delta: f64) -> ModelParams {
        ModelParams::new(g, delta).unwrap()
    }

    fn real(s: f64) -> Complex64 {
        Complex64::new(s, 0.0)
    }

    /// Δ = 0: ζ(s;τ) = 2 ζ_H(s, τ - g²) (doubly degenerate shifted
    /// oscillator).
    #[test]
    fn mellin_delta_zero_hurwitz() {
        let p = params(0.6, 0.0);
        let tau = 2.0;
        for &s in &[1.5, 2.0, 3.0] {
            let z = zeta_mellin(real(s), tau, SpectrumKind::Full, &p, 1e-12).unwrap();
            let expect = 2.0 * hurwitz_zeta(s, tau - p.g2());
            assert!(
                (z.re - expect).abs() < 1e-9 * expect.abs(),
                "s={s}: {z} vs {expect}"
            );
            assert!(z.im.abs() < 1e-10);
        }
    }

    /// g = 0, Δ = 0.5, s = 2, τ = 2: ζ = ζ_H(2, 2.5) + ζ_H(2, 1.5).
    #[test]
    fn mellin_g_zero_hurwitz_pair() {
        let p = params(0.0, 0.5);
        let z = zeta_mellin(real(2.0), 2.0, SpectrumKind::Full, &p, 1e-12).unwrap();
        let expect = hurwitz_zeta(2.0, 2.5) + hurwitz_zeta(2.0, 1.5);
        assert!((z.re - expect).abs() < 1e-9 * expect, "{z} vs {expect}");
    }

    /// The spectral tail and the Ω-series quadrature agree across the
    /// hand-over point.
    #[test]
    fn spectral_tail_matches_quadrature() {
        let p = params(0.7, 0.4);
        let ev = OmegaEvaluator::new(&p, &QuadratureScheme::zeta()).unwrap();
        for kind in [SpectrumKind::Full, SpectrumKind::Parity(Parity::Plus)] {
            let tail = spectral_tail(kind, &[], &p, 1e-12).unwrap();
            for &t in &[2.5, 3.0, 3.5] {
                let w = Complex64::new(t, 0.0);
                let quad = {
                    let zc = ZContext {
                        ev: &ev,
                        kind,
                        subtract: &[],
                        tol: 1e-12,
                        decay: 1.0,
                        spectral: None,
                    };
                    zc.z(w).unwrap().re
                };
                let spec: f64 = tail.lambdas.iter().map(|&l| (-l * t).exp()).sum();
                assert!(
                    (quad - spec).abs() < 2e-6 * spec,
                    "{kind:?} t={t}: quadrature {quad} vs spectral {spec}"
                );
            }
        }
    }

    /// Mellin vs the oracle Dirichlet sum (Weyl-tail-continued) at s = 3.
    #[test]
    fn mellin_matches_oracle_dirichlet() {
        let p = params(0.7, 0.4);
        let tau = p.g2() + p.delta + 1.0;
        let z = zeta_mellin(real(3.0), tau, SpectrumKind::Full, &p, 1e-12).unwrap();
        let spec = crate::fock_oracle::spectrum(&crate::fock_oracle::full_matrix(300, &p).unwrap())
            .unwrap();
        let (direct, unc) =
            crate::fock_oracle::oracle_zeta_dirichlet(3.0, tau, &spec).unwrap();
        assert!(
            (z.re - direct).abs() < 1e-6 * direct + unc,
            "{z} vs {direct} (± {unc:.2e})"
        );
    }

    /// Contour and Mellin agree on the overlap, full and parity.
    #[test]
    fn contour_matches_mellin() {
        let p = params(0.7, 0.4);
        let tau = p.g2() + p.delta + 1.0;
        let scheme = QuadratureScheme::zeta();
        for kind in [
            SpectrumKind::Full,
            SpectrumKind::Parity(Parity::Plus),
            SpectrumKind::Parity(Parity::Minus),
        ] {
            let ev = ZetaEvaluator::new(kind, tau, &p, &HankelContour::default(), 1e-12, &scheme)
                .unwrap();
            for &s in &[1.5, 2.5, 3.5] {
                let a = ev.contour(real(s)).unwrap();
                let b = ev.mellin(real(s)).unwrap();
                assert!(
                    (a - b).norm() < 1e-8,
                    "{kind:?}, s={s}: contour {a} vs mellin {b}"
                );
            }
        }
    }

    /// Residue at s = 1: (s-1)ζ(s;τ) → 2 (full) and 1 (parity).
    #[test]
    fn pole_residues() {
        let p = params(0.7, 0.4);
        let tau = 2.5;
        for (kind, expect) in [
            (SpectrumKind::Full, 2.0),
            (SpectrumKind::Parity(Parity::Plus), 1.0),
            (SpectrumKind::Parity(Parity::Minus), 1.0),
        ] {
            let contour = HankelContour::default();
            let s = real(1.0 + 1e-3);
            let z = zeta_contour(s, tau, kind, &p, &contour, 1e-12).unwrap();
            let r = ((s - 1.0) * z).re;
            assert!((r - expect).abs() < 1e-3, "{kind:?}: residue {r}");
        }
    }

    /// DD-relation ∂_τ ζ(s;τ) = -s ζ(s+1;τ) by central difference.
    #[test]
    fn dd_relation_by_central_difference() {
        let p = params(0.7, 0.4);
        let tau = 2.5;
        let s = 2.5;
        let h = 1e-3;
        let zp = zeta_mellin(real(s), tau + h, SpectrumKind::Full, &p, 1e-12).unwrap();
        let zm = zeta_mellin(real(s), tau - h, SpectrumKind::Full, &p, 1e-12).unwrap();
        let deriv = (zp - zm).re / (2.0 * h);
        let rhs = -s * zeta_mellin(real(s + 1.0), tau, SpectrumKind::Full, &p, 1e-12)
            .unwrap()
            .re;
        assert!(
            (deriv - rhs).abs() < 1e-6 * rhs.abs(),
            "∂τζ = {deriv} vs -sζ(s+1) = {rhs}"
        );
    }

    /// ζ'(0) against a finite-difference Richardson stencil of the
    /// contour representation.
    #[test]
    fn zeta_prime0_matches_finite_difference() {
        let p = params(0.7, 0.4);
        let tau = 2.5;
        let ev = ZetaEvaluator::new(
            SpectrumKind::Parity(Parity::Plus),
            tau,
            &p,
            &HankelContour::default(),
            1e-12,
            &QuadratureScheme::zeta(),
        )
        .unwrap();
        let analytic = ev.zeta_prime0().re;
        let d = |h: f64| {
            let a = ev.contour(real(h)).unwrap();
            let b = ev.contour(real(-h)).unwrap();
            ((a - b) / (2.0 * h)).re
        };
        let d1 = d(1e-3);
        let d2 = d(5e-4);
        let extrap = (4.0 * d2 - d1) / 3.0;
        assert!(
            (analytic - extrap).abs() < 1e-7 * analytic.abs().max(1.0),
            "{analytic} vs {extrap}"
        );
    }

    /// g = Δ = 0 determinant against Lerch's formula:
    /// det_full(τ) = 2π/Γ(τ)².
    #[test]
    fn determinant_matches_lerch_at_free_point() {
        let p = params(0.0, 0.0);
        for &tau in &[0.3, 1.7] {
            let det = spectral_determinant(tau, SpectrumKind::Full, &p, 1e-12).unwrap();
            let rg = reciprocal_gamma(real(tau)).re;
            let expect = 2.0 * std::f64::consts::PI * rg * rg;
            assert!(
                (det - expect).abs() < 1e-6 * expect,
                "τ={tau}: {det} vs {expect}"
            );
        }
    }

    /// The continued determinant changes sign exactly at -λ_j and stays
    /// consistent with the direct evaluation in the overlap region.
    #[test]
    fn determinant_continuation_and_zeros() {
        let p = params(0.7, 0.4);
        let kind = SpectrumKind::Parity(Parity::Plus);
        let direct = DeterminantEvaluator::new(kind, 2.0, &p, 1e-12).unwrap();
        assert!(direct.subtracted().is_empty());
        let subtr = DeterminantEvaluator::new(kind, -1.0, &p, 1e-12).unwrap();
        assert!(!subtr.subtracted().is_empty());
        let a = direct.eval(2.0).unwrap();
        let b = subtr.eval(2.0).unwrap();
        assert!((a - b).abs() < 1e-4 * a.abs(), "overlap: {a} vs {b}");
        // sign change across the ground state λ₁
        let oracle = crate::fock_oracle::spectrum(
            &crate::fock_oracle::parity_matrix(200, Parity::Plus, &p).unwrap(),
        )
        .unwrap();
        let l1 = oracle.values()[0];
        let ev = DeterminantEvaluator::new(kind, -(l1 + 0.2), &p, 1e-12).unwrap();
        let before = ev.eval(-(l1 - 0.05)).unwrap();
        let after = ev.eval(-(l1 + 0.05)).unwrap();
        assert!(
            before * after < 0.0,
            "no sign change across λ₁: {before}, {after}"
        );
    }
}
