//! Braak G-functions for the parity Hamiltonians: the `K_n` three-term
//! recurrence, regular `G_±`, Juddian constraint values `K_N(N)`,
//! exceptional `G^{(N)}_±`, residues at the integer poles, the entire
//! completed `𝒢_± = G_±/Γ(-x)`, and eigenvalue extraction by scanning
//! `𝒢_±` for sign changes.
//!
//! Sign conventions for the exceptional G-function follow the residue
//! identity `Res_{x=N} G_± = Δ²gᴺ/(2(N+1)) · K_N(N) · G^{(N)}_±`:
//! expanding the recurrence poles termwise gives
//! `G^{(N)}_± = ∓2(N+1)/Δ + Σ_{n>N} K̃_n(N)(1 ∓ Δ/(N-n)) g^{n-N-1}`,
//! which also makes the flip `G^{(N)}_-(g,Δ) = G^{(N)}_+(g,-Δ)` exact.
//! Both readings are verified numerically against the Richardson limit
//! of `(x-N)G_±(x)`.

use crate::error::{QrmError, Result};
use crate::numerics::special::reciprocal_gamma;
use crate::params::{ModelParams, Parity};
use num_complex::Complex64;

/// Recurrence coefficients `K₀ … K_nmax` at a spectral parameter
/// `x = λ + g²`.
#[derive(Debug, Clone)]
pub struct GCoeffs {
    pub x: f64,
    pub values: Vec<f64>,
}

/// `f_n(x) = 2g + (n - x + Δ²/(x-n)) / (2g)`.
fn f_coeff(n: f64, x: Complex64, p: &ModelParams) -> Complex64 {
    2.0 * p.g + (n - x + p.delta * p.delta / (x - n)) / (2.0 * p.g)
}

fn require_coupling(p: &ModelParams) -> Result<()> {
    if p.g <= 0.0 {
        return Err(QrmError::Domain(
            "G-function machinery needs g > 0 (f_n carries 1/2g)".into(),
        ));
    }
    Ok(())
}

/// `K₀ = 1, K₁ = f₀(x), n K_n = f_{n-1}(x) K_{n-1} - K_{n-2}` up to
/// `nmax`. Errors when `x` sits on an integer ≤ nmax (pole of some `f_n`).
pub fn coeff_k(x: f64, nmax: usize, p: &ModelParams) -> Result<GCoeffs> {
    require_coupling(p)?;
    for n in 0..=nmax {
        if (x - n as f64).abs() < 1e-12 {
            return Err(QrmError::Domain(format!(
                "x = {x} hits the pole of f_{n}"
            )));
        }
    }
    let xc = Complex64::new(x, 0.0);
    let mut values = Vec::with_capacity(nmax + 1);
    values.push(1.0);
    if nmax >= 1 {
        values.push(f_coeff(0.0, xc, p).re);
    }
    for n in 2..=nmax {
        let next =
            (f_coeff(n as f64 - 1.0, xc, p).re * values[n - 1] - values[n - 2]) / n as f64;
        if !next.is_finite() || next.abs() > 1e250 {
            return Err(QrmError::Convergence(format!(
                "K_n recurrence overflow at n = {n} (g = {})",
                p.g
            )));
        }
        values.push(next);
    }
    Ok(GCoeffs { x, values })
}

/// Default series cap; terms decay like 2⁻ⁿ so this is generous.
pub const G_SERIES_CAP: usize = 200;

/// Sign factor of the parity in the series term `(1 ∓ Δ/(x-n))`:
/// `-1` for `G₊`, `+1` for `G₋`.
fn delta_term_sign(parity: Parity) -> f64 {
    -parity.sign()
}

/// Regular G-function series at a complex argument, stopping after five
/// consecutive terms below `tol` relative to the running magnitude.
fn g_series(x: Complex64, parity: Parity, p: &ModelParams, tol: f64, cap: usize) -> Result<Complex64> {
    let sign = delta_term_sign(parity);
    let mut k_prev = Complex64::new(0.0, 0.0); // K_{-1}
    let mut k_cur = Complex64::new(1.0, 0.0); // K_0
    let mut sum = Complex64::new(0.0, 0.0);
    let mut g_pow = Complex64::new(1.0, 0.0);
    let mut scale: f64 = 1.0;
    let mut small_streak = 0;
    for n in 0..=cap {
        let term = k_cur * (1.0 + sign * p.delta / (x - n as f64)) * g_pow;
        sum += term;
        scale = scale.max(sum.norm());
        if term.norm() <= tol * scale {
            small_streak += 1;
            if small_streak >= 5 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
        // advance recurrence: K_{n+1} = (f_n K_n - K_{n-1})/(n+1)
        let k_next = (f_coeff(n as f64, x, p) * k_cur - k_prev) / (n as f64 + 1.0);
        if !k_next.re.is_finite() || k_next.norm() > 1e250 {
            return Err(QrmError::Convergence(format!(
                "K_n recurrence overflow at n = {} before series convergence",
                n + 1
            )));
        }
        k_prev = k_cur;
        k_cur = k_next;
        g_pow *= p.g;
    }
    Err(QrmError::Convergence(format!(
        "G series not converged after {cap} terms at x = {x}"
    )))
}

/// `G_±(x) = Σ K_n(x)(1 ∓ Δ/(x-n)) gⁿ` for real `x` off the nonnegative
/// integers. Pole proximity `|x-n| < 1e-3` is reported as ill-conditioned.
pub fn g_function(x: f64, parity: Parity, p: &ModelParams, tol: f64) -> Result<f64> {
    require_coupling(p)?;
    let nearest = x.round();
    if nearest >= 0.0 && (x - nearest).abs() < 1e-3 {
        return Err(QrmError::IllConditioned(format!(
            "x = {x} within 1e-3 of the G-function pole at {nearest}"
        )));
    }
    Ok(g_series(Complex64::new(x, 0.0), parity, p, tol, G_SERIES_CAP)?.re)
}

/// Juddian constraint value `K_N(N; g, Δ)`: the recurrence run at `x = N`,
/// where all needed `f_n(N)`, `n < N`, are finite.
pub fn constraint_k(n_level: usize, p: &ModelParams) -> Result<f64> {
    require_coupling(p)?;
    let x = Complex64::new(n_level as f64, 0.0);
    let mut k_prev = Complex64::new(0.0, 0.0);
    let mut k_cur = Complex64::new(1.0, 0.0);
    for n in 0..n_level {
        let k_next = (f_coeff(n as f64, x, p) * k_cur - k_prev) / (n as f64 + 1.0);
        k_prev = k_cur;
        k_cur = k_next;
    }
    Ok(k_cur.re)
}

/// Exceptional (non-Juddian) G-function
/// `G^{(N)}_± = ∓2(N+1)/Δ + Σ_{n≥N+1} K̃_n(N)(1 ∓ Δ/(N-n)) g^{n-N-1}`
/// with the restarted recurrence `K̃_N = 0, K̃_{N+1} = 1`.
pub fn g_exceptional(n_level: usize, parity: Parity, p: &ModelParams, tol: f64) -> Result<f64> {
    require_coupling(p)?;
    if p.delta <= 0.0 {
        return Err(QrmError::Domain(
            "exceptional G-function needs Δ > 0 (leading term ∓2(N+1)/Δ)".into(),
        ));
    }
    let sign = delta_term_sign(parity);
    let nf = n_level as f64;
    let x = Complex64::new(nf, 0.0);
    let mut sum = Complex64::new(sign * 2.0 * (nf + 1.0) / p.delta, 0.0);
    let mut k_prev = Complex64::new(0.0, 0.0); // K̃_N
    let mut k_cur = Complex64::new(1.0, 0.0); // K̃_{N+1}
    let mut g_pow = Complex64::new(1.0, 0.0); // g^{n-N-1}
    let mut scale = sum.norm();
    let mut small_streak = 0;
    for n in (n_level + 1)..=(n_level + 1 + G_SERIES_CAP) {
        let term = k_cur * (1.0 + sign * p.delta / (nf - n as f64)) * g_pow;
        sum += term;
        scale = scale.max(sum.norm());
        if term.norm() <= tol * scale {
            small_streak += 1;
            if small_streak >= 5 {
                return Ok(sum.re);
            }
        } else {
            small_streak = 0;
        }
        let k_next = (f_coeff(n as f64, x, p) * k_cur - k_prev) / (n as f64 + 1.0);
        if !k_next.re.is_finite() || k_next.norm() > 1e250 {
            return Err(QrmError::Convergence("K̃ recurrence overflow".into()));
        }
        k_prev = k_cur;
        k_cur = k_next;
        g_pow *= p.g;
    }
    Err(QrmError::Convergence(format!(
        "exceptional G series not converged at N = {n_level}"
    )))
}

/// Residue of `G_±` at its simple pole `x = N`:
/// `Δ²gᴺ/(2(N+1)) · K_N(N) · G^{(N)}_±`. Returns 0 directly at Δ = 0.
pub fn residue_at(n_level: usize, parity: Parity, p: &ModelParams) -> Result<f64> {
    require_coupling(p)?;
    if p.delta == 0.0 {
        return Ok(0.0);
    }
    let kn = constraint_k(n_level, p)?;
    let gexc = g_exceptional(n_level, parity, p, 1e-14)?;
    let nf = n_level as f64;
    Ok(p.delta * p.delta * p.g.powi(n_level as i32) / (2.0 * (nf + 1.0)) * kn * gexc)
}

/// Handover radius: inside `|x - N| < RESIDUE_SWITCH_RADIUS` the completed
/// G-function is evaluated through the residue + Cauchy regular part.
pub const RESIDUE_SWITCH_RADIUS: f64 = 1e-3;

/// Evaluator for the entire completed G-function `𝒢_± = G_±(x)/Γ(-x)`,
/// caching the Cauchy-circle data used near the integer poles.
pub struct CompleteG {
    parity: Parity,
    params: ModelParams,
    tol: f64,
    circle_cache: std::cell::RefCell<std::collections::HashMap<i64, CircleData>>,
}

struct CircleData {
    /// residue A of G at N
    residue: f64,
    /// samples of the regular part H(z) = G(z) - A/(z-N) on |z-N| = r
    samples: Vec<Complex64>,
    radius: f64,
}

const CIRCLE_NODES: usize = 64;

impl CompleteG {
    pub fn new(parity: Parity, p: &ModelParams, tol: f64) -> Result<Self> {
        require_coupling(p)?;
        if tol <= 0.0 {
            return Err(QrmError::InvalidArgument("tol must be positive".into()));
        }
        Ok(Self {
            parity,
            params: *p,
            tol,
            circle_cache: std::cell::RefCell::new(std::collections::HashMap::new()),
        })
    }

    /// `𝒢_±(x)`, entire in x: direct product away from the nonnegative
    /// integers, residue-based limit value near and at them.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let nearest = x.round();
        if nearest >= 0.0 && (x - nearest).abs() < RESIDUE_SWITCH_RADIUS {
            return self.eval_near_integer(nearest as i64, x);
        }
        let g = g_series(Complex64::new(x, 0.0), self.parity, &self.params, self.tol, G_SERIES_CAP)?;
        Ok(g.re * reciprocal_gamma(Complex64::new(-x, 0.0)).re)
    }

    /// Laurent data at N: `G(x) = A/(x-N) + H(x)` with H analytic in
    /// `|x-N| < 1`; H from a trapezoidal Cauchy integral on `|z-N| = r`.
    fn eval_near_integer(&self, n_level: i64, x: f64) -> Result<f64> {
        let data = self.circle_data(n_level)?;
        let nf = n_level as f64;
        if x == nf {
            // 𝒢(N) = A · (-1)^{N+1} N!  (Laurent expansion of Γ near -N)
            return Ok(data.residue * limit_factor(n_level as usize));
        }
        // H(x) = (1/2πi) ∮ H(z)/(z-x) dz, spectrally accurate for
        // |x-N| ≪ r
        let mut h = Complex64::new(0.0, 0.0);
        let m = data.samples.len();
        for (k, sample) in data.samples.iter().enumerate() {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            let z = nf + data.radius * Complex64::new(phi.cos(), phi.sin());
            // dz/(2πi) = r e^{iφ} dφ / (2π); trapezoid on the periodic circle
            let dz_factor = data.radius * Complex64::new(phi.cos(), phi.sin()) / m as f64;
            h += sample / (z - x) * dz_factor;
        }
        let g_val = data.residue / (x - nf) + h.re;
        Ok(g_val * reciprocal_gamma(Complex64::new(-x, 0.0)).re)
    }

    fn circle_data(&self, n_level: i64) -> Result<std::cell::Ref<'_, CircleData>> {
        if !self.circle_cache.borrow().contains_key(&n_level) {
            let radius = 0.5;
            let nf = n_level as f64;
            let residue = residue_at(n_level as usize, self.parity, &self.params)?;
            let mut samples = Vec::with_capacity(CIRCLE_NODES);
            for k in 0..CIRCLE_NODES {
                let phi = 2.0 * std::f64::consts::PI * k as f64 / CIRCLE_NODES as f64;
                let z = nf + radius * Complex64::new(phi.cos(), phi.sin());
                let g = g_series(z, self.parity, &self.params, self.tol, G_SERIES_CAP)?;
                samples.push(g - residue / (z - nf));
            }
            self.circle_cache
                .borrow_mut()
                .insert(n_level, CircleData { residue, samples, radius });
        }
        Ok(std::cell::Ref::map(self.circle_cache.borrow(), |c| {
            c.get(&n_level).expect("just inserted")
        }))
    }
}

/// `lim_{x→N} (x-N)⁻¹-free factor`: `𝒢(N) = Res_{x=N}G_± · (-1)^{N+1} N!`.
fn limit_factor(n_level: usize) -> f64 {
    let sign = if n_level % 2 == 0 { -1.0 } else { 1.0 };
    let mut fact = 1.0;
    for k in 2..=n_level {
        fact *= k as f64;
    }
    sign * fact
}

/// One-shot completed G-function `𝒢_±(x) = G_±(x)/Γ(-x)`.
pub fn complete_g(x: f64, parity: Parity, p: &ModelParams, tol: f64) -> Result<f64> {
    CompleteG::new(parity, p, tol)?.eval(x)
}

/// How an eigenvalue was classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Regular,
    Juddian,
    NonJuddianExceptional,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Regular => write!(f, "regular"),
            Classification::Juddian => write!(f, "Juddian"),
            Classification::NonJuddianExceptional => write!(f, "non-Juddian-exceptional"),
        }
    }
}

/// An eigenvalue located as a zero of `𝒢_±`.
#[derive(Debug, Clone)]
pub struct EigenvalueRecord {
    /// eigenvalue λ = x - g²
    pub lambda: f64,
    /// zero location x = λ + g²
    pub x: f64,
    pub parity: Parity,
    pub classification: Classification,
    /// |𝒢(x)| at the refined root
    pub residual: f64,
}

/// Scan `𝒢_±` over `[x_lo, x_hi]` with the given grid step, bisect each
/// sign change to `1e-10` in `x`, and classify roots within `1e-8` of a
/// nonnegative integer as exceptional (Juddian iff `|K_N(N)| < 1e-8`).
/// An empty window returns an empty list.
pub fn find_eigenvalues(
    parity: Parity,
    x_window: (f64, f64),
    grid_step: f64,
    tol: f64,
    p: &ModelParams,
) -> Result<Vec<EigenvalueRecord>> {
    let (x_lo, x_hi) = x_window;
    if !(x_hi > x_lo) || grid_step <= 0.0 {
        return Err(QrmError::InvalidArgument("bad scan window".into()));
    }
    let ev = CompleteG::new(parity, p, tol)?;
    let steps = ((x_hi - x_lo) / grid_step).ceil() as usize;
    let mut records = Vec::new();
    let mut prev_x = x_lo;
    let mut prev_v = ev.eval(prev_x)?;
    for k in 1..=steps {
        let x = (x_lo + k as f64 * grid_step).min(x_hi);
        let v = ev.eval(x)?;
        if prev_v == 0.0 {
            // grid point exactly on a root: treat as a zero-width bracket
            records.push(make_record(prev_x, parity, 0.0, p)?);
        } else if prev_v * v < 0.0 {
            let (mut a, mut b) = (prev_x, x);
            let mut fa = prev_v;
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                let fm = ev.eval(mid)?;
                if fa * fm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
                if b - a < 1e-10 {
                    break;
                }
            }
            let root = 0.5 * (a + b);
            let residual = ev.eval(root)?.abs();
            records.push(make_record(root, parity, residual, p)?);
        }
        prev_x = x;
        prev_v = v;
    }
    Ok(records)
}

fn make_record(x: f64, parity: Parity, residual: f64, p: &ModelParams) -> Result<EigenvalueRecord> {
    let nearest = x.round();
    let classification = if nearest >= 0.0 && (x - nearest).abs() < 1e-8 {
        let kn = constraint_k(nearest as usize, p)?;
        if kn.abs() < 1e-8 {
            Classification::Juddian
        } else {
            Classification::NonJuddianExceptional
        }
    } else {
        Classification::Regular
    };
    Ok(EigenvalueRecord {
        lambda: x - p.g2(),
        x,
        parity,
        classification,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: f64, delta: f64) -> ModelParams {
        ModelParams::new(g, delta).unwrap()
    }

    #[test]
    fn coeff_k_initial_conditions_and_frozen_values() {
        // K₀ = 1, K₁ = 2g + (1/2g)(-x + Δ²/x)
        let p = params(0.5, 0.0);
        let k = coeff_k(0.3, 6, &p).unwrap();
        assert_eq!(k.values[0], 1.0);
        // frozen exact-rational unrolling at Δ=0, g=1/2, x=3/10
        let expect = [
            1.0,
            0.7,
            0.095,
            -887.0 / 6000.0,
            -38519.0 / 240000.0,
            -1455593.0 / 12000000.0,
            -63709301.0 / 720000000.0,
        ];
        for (n, e) in expect.iter().enumerate() {
            assert!(
                (k.values[n] - e).abs() < 1e-12,
                "K_{n} = {} vs {e}",
                k.values[n]
            );
        }
        // integer x within range → pole error
        assert!(coeff_k(3.0, 6, &p).is_err());
        assert!(coeff_k(0.3, 6, &params(0.0, 0.4)).is_err());
    }

    #[test]
    fn constraint_values() {
        // N = 0: K₀ = 1 identically
        let p = params(0.7, 0.9);
        assert_eq!(constraint_k(0, &p).unwrap(), 1.0);
        // N = 1: f₀(1) = (4g² - 1 + Δ²)/(2g)
        let v = constraint_k(1, &p).unwrap();
        let expect = (4.0 * p.g2() - 1.0 + p.delta * p.delta) / (2.0 * p.g);
        assert!((v - expect).abs() < 1e-14);
        // Juddian curve Δ² = 1 - 4g² at g = 0.3, Δ = 0.8
        let pj = params(0.3, 0.8);
        assert!(constraint_k(1, &pj).unwrap().abs() < 1e-12);
    }

    /// G₋(x; g, Δ) = G₊(x; g, -Δ) — the parity flip relation, sampled.
    #[test]
    fn parity_flip_relation() {
        let xs = [-0.7, 0.4, 1.3, 2.6, 3.45, 5.2];
        for &(g, d) in &[(0.7, 0.4), (0.3, 0.8), (1.0, 0.25)] {
            let p = params(g, d);
            for &x in &xs {
                let gm = g_function(x, Parity::Minus, &p, 1e-14).unwrap();
                // G₊ at -Δ: flip the series sign by hand through delta sign
                let sign = 1.0; // (1 - (-Δ)/(x-n)) = (1 + Δ/(x-n))
                let _ = sign;
                let gp_flip = {
                    // evaluate the series with Δ → -Δ via raw params
                    let pf = ModelParams { g, delta: -d };
                    g_series(Complex64::new(x, 0.0), Parity::Plus, &pf, 1e-14, G_SERIES_CAP)
                        .unwrap()
                        .re
                };
                assert!(
                    (gm - gp_flip).abs() < 1e-12 * gm.abs().max(1.0),
                    "x={x}, g={g}, Δ={d}: {gm} vs {gp_flip}"
                );
            }
        }
    }

    /// Residue formula vs the Richardson-extrapolated numeric limit of
    /// (x-N)G_±(x); this arbitrates the exceptional-G sign reading.
    #[test]
    fn residue_matches_numeric_limit() {
        let p = params(0.7, 0.4);
        for n_level in 0..4usize {
            for parity in [Parity::Plus, Parity::Minus] {
                let formula = residue_at(n_level, parity, &p).unwrap();
                let nf = n_level as f64;
                let lim = |h: f64| {
                    let gp = g_function(nf + h, parity, &p, 1e-14).unwrap();
                    let gm = g_function(nf - h, parity, &p, 1e-14).unwrap();
                    0.5 * (h * gp + (-h) * gm)
                };
                // Richardson: L(h) = A + O(h²) → (4L(h/2) - L(h))/3
                let l1 = lim(1e-2);
                let l2 = lim(5e-3);
                let extrap = (4.0 * l2 - l1) / 3.0;
                assert!(
                    (formula - extrap).abs() < 1e-7 * formula.abs().max(1e-3),
                    "N={n_level} {parity}: formula {formula} vs limit {extrap}"
                );
            }
        }
    }

    #[test]
    fn residue_zero_cases() {
        // Δ = 0 → 0 directly
        let p = params(0.7, 0.0);
        assert_eq!(residue_at(2, Parity::Plus, &p).unwrap(), 0.0);
        // vanishes exactly on the Juddian constraint curve K₁(1) = 0
        let pj = params(0.3, 0.8);
        assert!(residue_at(1, Parity::Plus, &pj).unwrap().abs() < 1e-10);
        assert!(residue_at(1, Parity::Minus, &pj).unwrap().abs() < 1e-10);
    }

    /// Exceptional-G flip analogue G^{(N)}₋(g,Δ) = G^{(N)}₊(g,-Δ): holds
    /// with the residue-derived signs.
    #[test]
    fn exceptional_flip_relation() {
        for n_level in 0..3usize {
            let p = params(0.6, 0.35);
            let gm = g_exceptional(n_level, Parity::Minus, &p, 1e-13).unwrap();
            let pf = ModelParams { g: 0.6, delta: -0.35 };
            // evaluate G^{(N)}₊ with Δ negated (internal: signs flow
            // through delta_term_sign and the leading term)
            let gp_flip = {
                let sign = delta_term_sign(Parity::Plus);
                let nf = n_level as f64;
                let x = Complex64::new(nf, 0.0);
                let mut sum = Complex64::new(sign * 2.0 * (nf + 1.0) / pf.delta, 0.0);
                let mut k_prev = Complex64::new(0.0, 0.0);
                let mut k_cur = Complex64::new(1.0, 0.0);
                let mut g_pow = Complex64::new(1.0, 0.0);
                for n in (n_level + 1)..(n_level + 120) {
                    sum += k_cur * (1.0 + sign * pf.delta / (nf - n as f64)) * g_pow;
                    let k_next =
                        (f_coeff(n as f64, x, &pf) * k_cur - k_prev) / (n as f64 + 1.0);
                    k_prev = k_cur;
                    k_cur = k_next;
                    g_pow *= pf.g;
                }
                sum.re
            };
            assert!(
                (gm - gp_flip).abs() < 1e-9 * gm.abs().max(1.0),
                "N={n_level}: {gm} vs {gp_flip}"
            );
        }
    }

    #[test]
    fn exceptional_needs_positive_delta() {
        let p = params(0.7, 0.0);
        assert!(g_exceptional(1, Parity::Plus, &p, 1e-12).is_err());
        // magnitude diverges like 2(N+1)/Δ as Δ → 0⁺
        let small = params(1.0, 1e-6);
        let v = g_exceptional(0, Parity::Plus, &small, 1e-12).unwrap();
        assert!(v.abs() > 1e5);
    }

    /// 𝒢 is finite at integers and the residue path is continuous with
    /// the direct path across the handover (checked at |x-N| = 1e-2).
    #[test]
    fn complete_g_continuity_across_handover() {
        let p = params(0.7, 0.4);
        for parity in [Parity::Plus, Parity::Minus] {
            let ev = CompleteG::new(parity, &p, 1e-14).unwrap();
            for n_level in 0..4i64 {
                let nf = n_level as f64;
                // finite value at the integer itself
                let at_n = ev.eval(nf).unwrap();
                assert!(at_n.is_finite());
                for &h in &[1e-2, -1e-2] {
                    let x = nf + h;
                    let direct = {
                        let g = g_series(
                            Complex64::new(x, 0.0),
                            parity,
                            &p,
                            1e-14,
                            G_SERIES_CAP,
                        )
                        .unwrap()
                        .re;
                        g * reciprocal_gamma(Complex64::new(-x, 0.0)).re
                    };
                    let near = ev.eval_near_integer(n_level, x).unwrap();
                    assert!(
                        (direct - near).abs() < 1e-8 * direct.abs().max(1e-6),
                        "N={n_level}, h={h}: direct {direct} vs near {near}"
                    );
                }
            }
        }
    }

    /// Limit consistency: 𝒢(N) computed through the residue formula
    /// agrees with the shrinking direct evaluation (x → N).
    #[test]
    fn complete_g_limit_at_integers() {
        let p = params(0.7, 0.4);
        let ev = CompleteG::new(Parity::Plus, &p, 1e-14).unwrap();
        for n_level in 0..3i64 {
            let nf = n_level as f64;
            let lim_val = ev.eval(nf).unwrap();
            // direct 𝒢 at N ± 2e-3 (outside the switch radius) should be
            // close to the limit value up to O(h)
            let d1 = ev.eval(nf + 2e-3).unwrap();
            let d2 = ev.eval(nf - 2e-3).unwrap();
            let mid = 0.5 * (d1 + d2);
            assert!(
                (mid - lim_val).abs() < 1e-4 * lim_val.abs().max(1e-3),
                "N={n_level}: {mid} vs {lim_val}"
            );
        }
    }

    /// Truncation stability: doubling the series cap changes nothing
    /// beyond tol.
    #[test]
    fn series_truncation_stability() {
        let p = params(0.9, 0.55);
        for &x in &[0.37, 1.62, 4.81] {
            let a = g_series(Complex64::new(x, 0.0), Parity::Plus, &p, 1e-14, 200).unwrap();
            let b = g_series(Complex64::new(x, 0.0), Parity::Plus, &p, 1e-14, 400).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
        }
    }

    /// Lowest zeros of 𝒢_± against the truncated-Fock oracle.
    #[test]
    fn eigenvalues_match_fock_oracle() {
        let p = params(0.7, 0.4);
        for parity in [Parity::Plus, Parity::Minus] {
            let found = find_eigenvalues(parity, (-1.0, 6.0), 0.02, 1e-12, &p).unwrap();
            let oracle = crate::fock_oracle::spectrum(
                &crate::fock_oracle::parity_matrix(300, parity, &p).unwrap(),
            )
            .unwrap();
            assert!(found.len() >= 5, "{parity}: found {}", found.len());
            for (j, rec) in found.iter().take(5).enumerate() {
                assert!(
                    (rec.lambda - oracle.values()[j]).abs() < 1e-6,
                    "{parity} level {j}: {} vs {}",
                    rec.lambda,
                    oracle.values()[j]
                );
                assert_eq!(rec.classification, Classification::Regular);
            }
        }
    }

    /// Juddian point (g, Δ) = (0.3, 0.8): λ = 1 - g² = 0.91 appears in
    /// both parities and is classified as Juddian.
    #[test]
    fn juddian_double_degeneracy() {
        let p = params(0.3, 0.8);
        for parity in [Parity::Plus, Parity::Minus] {
            let found = find_eigenvalues(parity, (0.5, 1.5), 0.01, 1e-12, &p).unwrap();
            let judd: Vec<_> = found
                .iter()
                .filter(|r| (r.lambda - 0.91).abs() < 1e-6)
                .collect();
            assert_eq!(judd.len(), 1, "{parity}: {found:?}");
            assert_eq!(judd[0].classification, Classification::Juddian);
        }
    }

    #[test]
    fn empty_window_returns_empty() {
        let p = params(0.7, 0.4);
        let found = find_eigenvalues(Parity::Plus, (-3.0, -2.0), 0.05, 1e-12, &p).unwrap();
        assert!(found.is_empty());
    }
}
