//! Exponent building blocks of the Rabi heat kernel and propagator:
//! `θ_λ`, `ξ_λ`, `ψ_λ^±`, their circular (Wick-rotated) forms, and the
//! Mehler prefactors `K₀`/`U₀`.
//!
//! Hyperbolic functions are evaluated through exponential forms with all
//! exponents `≤ 0` for `Re t ≥ 0`, so large real times cannot overflow;
//! the unstable region `Re t < 0` only ever appears at small `|t|`
//! (contour circles inside the Ω disc), where direct evaluation is safe.

use crate::error::{QrmError, Result};
use crate::params::{ModelParams, OrderedTuple, TimeDomain, TimePoint};
use num_complex::Complex64;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// θ is linear in the endpoints: `θ_λ(x,y,μ,t) = a·x + b·y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaCoeffs {
    pub a: Complex64,
    pub b: Complex64,
}

impl ThetaCoeffs {
    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        self.a * x + self.b * y
    }
}

/// Reusable exponential data at a fixed complex time.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TimeBasis {
    pub t: Complex64,
    /// e^{-t}
    pub em: Complex64,
    /// 1 - e^{-2t}
    pub one_m_e2: Complex64,
    /// true when the factored (Re t ≥ 0) forms apply
    stable: bool,
}

impl TimeBasis {
    pub fn new(t: Complex64) -> Self {
        let em = (-t).exp();
        Self {
            t,
            em,
            one_m_e2: 1.0 - em * em,
            stable: t.re >= 0.0,
        }
    }

    /// e^{-ct} for c ≥ 0.
    fn e(&self, c: f64) -> Complex64 {
        (-self.t * c).exp()
    }

    /// 2·cosh(t(1-μ))/sinh(t)
    fn two_cosh1m_over_sinh(&self, mu: f64) -> Complex64 {
        if self.stable {
            2.0 * (self.e(mu) + self.e(2.0 - mu)) / self.one_m_e2
        } else {
            2.0 * (self.t * (1.0 - mu)).cosh() / self.t.sinh()
        }
    }

    /// 2·cosh(tμ)/sinh(t)
    fn two_coshmu_over_sinh(&self, mu: f64) -> Complex64 {
        if self.stable {
            2.0 * (self.e(1.0 - mu) + self.e(1.0 + mu)) / self.one_m_e2
        } else {
            2.0 * (self.t * mu).cosh() / self.t.sinh()
        }
    }

    /// coth(t/2)
    pub fn coth_half(&self) -> Complex64 {
        (1.0 + self.em) / (1.0 - self.em)
    }

    /// tanh(t/2)
    pub fn tanh_half(&self) -> Complex64 {
        (1.0 - self.em) / (1.0 + self.em)
    }
}

fn check_hyperbolic_domain(t: &TimePoint) -> Result<()> {
    match t.domain() {
        TimeDomain::Heat | TimeDomain::Omega => Ok(()),
        TimeDomain::PropagatorReal => Err(QrmError::Domain(
            "hyperbolic exponent functions need a heat- or Ω-domain time".into(),
        )),
    }
}

fn check_tuple(lambda: usize, mu: &OrderedTuple) -> Result<()> {
    if mu.lambda() != lambda {
        return Err(QrmError::InvalidArgument(format!(
            "μ tuple has {} coordinates, expected λ = {lambda}",
            mu.lambda()
        )));
    }
    Ok(())
}

/// `θ_λ(x, y, μ, t)`: the endpoint-linear exponent inside the matrix part
/// of the heat-kernel series.
pub fn theta(
    lambda: usize,
    mu: &OrderedTuple,
    x: f64,
    y: f64,
    t: &TimePoint,
    p: &ModelParams,
) -> Result<Complex64> {
    Ok(theta_coeffs(lambda, mu, t, p)?.eval(x, y))
}

/// Coefficients `(a, b)` with `θ_λ = a·x + b·y`.
pub fn theta_coeffs(
    lambda: usize,
    mu: &OrderedTuple,
    t: &TimePoint,
    p: &ModelParams,
) -> Result<ThetaCoeffs> {
    check_hyperbolic_domain(t)?;
    check_tuple(lambda, mu)?;
    let tb = TimeBasis::new(t.value());
    Ok(theta_coeffs_tb(lambda, |g| mu.mu(g), &tb, p))
}

pub(crate) fn theta_coeffs_tb<M: Fn(usize) -> f64>(
    lambda: usize,
    mu: M,
    tb: &TimeBasis,
    p: &ModelParams,
) -> ThetaCoeffs {
    let sg = SQRT2 * p.g;
    let odd = lambda % 2 == 1;
    let parity_sign = if odd { -1.0 } else { 1.0 }; // (-1)^λ
    let mut a = Complex64::new(0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    if odd {
        // (2√2 g / sinh t)(x cosh t - y)
        a += sg * tb.two_cosh1m_over_sinh(0.0);
        b -= sg * tb.two_coshmu_over_sinh(0.0);
    }
    // -√2 g (x-y) coth(t/2)
    let ch = tb.coth_half();
    a -= sg * ch;
    b += sg * ch;
    // (2√2 g (-1)^λ / sinh t) Σ_γ (-1)^γ [x cosh(t(1-μ_γ)) - y cosh(t μ_γ)]
    let mut sa = Complex64::new(0.0, 0.0);
    let mut sb = Complex64::new(0.0, 0.0);
    for gamma in 0..=lambda {
        let sign = if gamma % 2 == 0 { 1.0 } else { -1.0 };
        let m = mu(gamma);
        sa += sign * tb.two_cosh1m_over_sinh(m);
        sb -= sign * tb.two_coshmu_over_sinh(m);
    }
    a += sg * parity_sign * sa;
    b += sg * parity_sign * sb;
    ThetaCoeffs { a, b }
}

/// `ξ_λ(μ, t)` for λ ≥ 1; `ξ₀ := 0` by convention. The double sum runs
/// over `0 ≤ α < β ≤ λ-1` with `β - α` odd.
pub fn xi(lambda: usize, mu: &OrderedTuple, t: &TimePoint, p: &ModelParams) -> Result<Complex64> {
    check_hyperbolic_domain(t)?;
    check_tuple(lambda, mu)?;
    let tb = TimeBasis::new(t.value());
    Ok(xi_tb(lambda, |g| mu.mu(g), &tb, p))
}

pub(crate) fn xi_tb<M: Fn(usize) -> f64>(
    lambda: usize,
    mu: M,
    tb: &TimeBasis,
    p: &ModelParams,
) -> Complex64 {
    if lambda == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let g2 = p.g2();
    let parity_sign = if lambda % 2 == 0 { 1.0 } else { -1.0 };
    let mu_l = mu(lambda);

    let first = if tb.stable {
        // -2g²(1-e^{-t(1-μ_λ)})²(-1)^λ Σ_γ (-1)^γ e^{-t(μ_λ-μ_γ)}(1+e^{-2tμ_γ}) / (1-e^{-2t})
        let d = 1.0 - tb.e(1.0 - mu_l);
        let mut s = Complex64::new(0.0, 0.0);
        for gamma in 0..=lambda {
            let sign = if gamma % 2 == 0 { 1.0 } else { -1.0 };
            let m = mu(gamma);
            s += sign * tb.e(mu_l - m) * (1.0 + tb.e(2.0 * m));
        }
        -2.0 * g2 * parity_sign * d * d * s / tb.one_m_e2
    } else {
        let sh = (tb.t * (0.5 * (1.0 - mu_l))).sinh();
        let mut s = Complex64::new(0.0, 0.0);
        for gamma in 0..=lambda {
            let sign = if gamma % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * (tb.t * mu(gamma)).cosh();
        }
        -8.0 * g2 / tb.t.sinh() * sh * sh * parity_sign * s
    };

    // -(4g²/sinh t) Σ_{α<β≤λ-1, β-α odd} [cosh(t(μ_{β+1}-1)) - cosh(t(μ_β-1))]
    //                                  × [cosh(tμ_α) - cosh(tμ_{α+1})]
    let mut pair_sum = Complex64::new(0.0, 0.0);
    if lambda >= 2 {
        for beta in 1..lambda {
            let mb = mu(beta);
            let mb1 = mu(beta + 1);
            let alpha0 = 1 - (beta % 2); // smallest α ≥ 0 with β-α odd
            if tb.stable {
                // D_β C_α / sinh t = ½ e^{-t(μ_β-μ_{α+1})} A_β B_α / (1-e^{-2t})
                let a_b = tb.e(2.0 - mb1 - mb) + tb.e(mb1 - mb) - tb.e(2.0 * (1.0 - mb)) - 1.0;
                let mut alpha = alpha0;
                while alpha < beta {
                    let ma = mu(alpha);
                    let ma1 = mu(alpha + 1);
                    let b_a = tb.e(ma1 - ma) + tb.e(ma1 + ma) - 1.0 - tb.e(2.0 * ma1);
                    pair_sum += 0.5 * tb.e(mb - ma1) * a_b * b_a / tb.one_m_e2;
                    alpha += 2;
                }
            } else {
                let d = (tb.t * (mb1 - 1.0)).cosh() - (tb.t * (mb - 1.0)).cosh();
                let mut alpha = alpha0;
                while alpha < beta {
                    let c = (tb.t * mu(alpha)).cosh() - (tb.t * mu(alpha + 1)).cosh();
                    pair_sum += d * c / tb.t.sinh();
                    alpha += 2;
                }
            }
        }
    }
    first - 4.0 * g2 * pair_sum
}

/// `ψ_λ^±(μ, t) = (4g²/sinh t)[Σ_γ (-1)^γ f(t(1/2-μ_γ))]²` with
/// `f = cosh` for `+` and `f = sinh` for `-`.
pub fn psi(
    lambda: usize,
    mu: &OrderedTuple,
    t: &TimePoint,
    plus: bool,
    p: &ModelParams,
) -> Result<Complex64> {
    check_hyperbolic_domain(t)?;
    check_tuple(lambda, mu)?;
    let tb = TimeBasis::new(t.value());
    Ok(psi_tb(lambda, |g| mu.mu(g), &tb, plus, p))
}

pub(crate) fn psi_tb<M: Fn(usize) -> f64>(
    lambda: usize,
    mu: M,
    tb: &TimeBasis,
    plus: bool,
    p: &ModelParams,
) -> Complex64 {
    let g2 = p.g2();
    if tb.stable {
        // ψ = 2g² S² / (1-e^{-2t}), S = Σ (-1)^γ (e^{-tμ_γ} ± e^{-t(1-μ_γ)})
        let mut s = Complex64::new(0.0, 0.0);
        for gamma in 0..=lambda {
            let sign = if gamma % 2 == 0 { 1.0 } else { -1.0 };
            let m = mu(gamma);
            let inner = if plus {
                tb.e(m) + tb.e(1.0 - m)
            } else {
                tb.e(m) - tb.e(1.0 - m)
            };
            s += sign * inner;
        }
        2.0 * g2 * s * s / tb.one_m_e2
    } else {
        let mut s = Complex64::new(0.0, 0.0);
        for gamma in 0..=lambda {
            let sign = if gamma % 2 == 0 { 1.0 } else { -1.0 };
            let arg = tb.t * (0.5 - mu(gamma));
            s += sign * if plus { arg.cosh() } else { arg.sinh() };
        }
        4.0 * g2 / tb.t.sinh() * s * s
    }
}

/// Circular-form θ̄ for the propagator: real `t ∉ πZ`.
pub fn theta_bar(
    lambda: usize,
    mu: &OrderedTuple,
    x: f64,
    y: f64,
    t: &TimePoint,
    p: &ModelParams,
) -> Result<Complex64> {
    Ok(theta_bar_coeffs(lambda, mu, t, p)?.eval(x, y))
}

pub fn theta_bar_coeffs(
    lambda: usize,
    mu: &OrderedTuple,
    t: &TimePoint,
    p: &ModelParams,
) -> Result<ThetaCoeffs> {
    if t.domain() != TimeDomain::PropagatorReal {
        return Err(QrmError::Domain("θ̄ needs a real propagator time".into()));
    }
    check_tuple(lambda, mu)?;
    Ok(theta_bar_coeffs_raw(lambda, |g| mu.mu(g), t.real(), p))
}

pub(crate) fn theta_bar_coeffs_raw<M: Fn(usize) -> f64>(
    lambda: usize,
    mu: M,
    t: f64,
    p: &ModelParams,
) -> ThetaCoeffs {
    let sg = SQRT2 * p.g;
    let odd = lambda % 2 == 1;
    let parity_sign = if odd { -1.0 } else { 1.0 };
    let inv_isin = Complex64::new(0.0, -1.0) / t.sin(); // 1/(i sin t)
    let mut a = Complex64::new(0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    if odd {
        a += sg * 2.0 * t.cos() * inv_isin;
        b -= sg * 2.0 * inv_isin;
    }
    // +i√2 g (x-y) cot(t/2)
    let cot_half = Complex64::new(0.0, 1.0) * (0.5 * t).cos() / (0.5 * t).sin();
    a += sg * cot_half;
    b -= sg * cot_half;
    let mut sa = 0.0;
    let mut sb = 0.0;
    for gamma in 0..=lambda {
        let sign = if gamma % 2 == 0 { 1.0 } else { -1.0 };
        let m = mu(gamma);
        sa += sign * (t * (1.0 - m)).cos();
        sb -= sign * (t * m).cos();
    }
    a += sg * parity_sign * 2.0 * sa * inv_isin;
    b += sg * parity_sign * 2.0 * sb * inv_isin;
    ThetaCoeffs { a, b }
}

/// Circular-form ξ̄ for the propagator.
pub fn xi_bar(
    lambda: usize,
    mu: &OrderedTuple,
    t: &TimePoint,
    p: &ModelParams,
) -> Result<Complex64> {
    if t.domain() != TimeDomain::PropagatorReal {
        return Err(QrmError::Domain("ξ̄ needs a real propagator time".into()));
    }
    check_tuple(lambda, mu)?;
    Ok(xi_bar_raw(lambda, |g| mu.mu(g), t.real(), p))
}

pub(crate) fn xi_bar_raw<M: Fn(usize) -> f64>(
    lambda: usize,
    mu: M,
    t: f64,
    p: &ModelParams,
) -> Complex64 {
    if lambda == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let g2 = p.g2();
    let parity_sign = if lambda % 2 == 0 { 1.0 } else { -1.0 };
    let inv_isin = Complex64::new(0.0, -1.0) / t.sin();
    let mu_l = mu(lambda);
    let mut s = 0.0;
    for gamma in 0..=lambda {
        let sign = if gamma % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * (t * mu(gamma)).cos();
    }
    let sn = (0.5 * t * (1.0 - mu_l)).sin();
    let first = 8.0 * g2 * sn * sn * parity_sign * s * inv_isin;
    let mut pair_sum = 0.0;
    if lambda >= 2 {
        for beta in 1..lambda {
            let d = (t * (mu(beta + 1) - 1.0)).cos() - (t * (mu(beta) - 1.0)).cos();
            let mut alpha = 1 - (beta % 2);
            while alpha < beta {
                let c = (t * mu(alpha)).cos() - (t * mu(alpha + 1)).cos();
                pair_sum += d * c;
                alpha += 2;
            }
        }
    }
    first - 4.0 * g2 * pair_sum * inv_isin
}

/// Heat-kernel Mehler prefactor
/// `K₀ = e^{t(g²+1/2)}/√(2π sinh t) · exp(-((x²+y²)cosh t - 2xy)/(2 sinh t))`.
pub fn k0(x: f64, y: f64, t: &TimePoint, p: &ModelParams) -> Result<Complex64> {
    check_hyperbolic_domain(t)?;
    Ok(k0_raw(x, y, t.value(), p))
}

pub(crate) fn k0_raw(x: f64, y: f64, t: Complex64, p: &ModelParams) -> Complex64 {
    let sh = t.sinh();
    let q = ((x * x + y * y) * t.cosh() - 2.0 * x * y) / (2.0 * sh);
    let pref = (t * (p.g2() + 0.5) - q).exp();
    // principal-branch square root
    pref / (2.0 * std::f64::consts::PI * sh).sqrt()
}

/// Propagator Mehler prefactor
/// `U₀ = e^{it(g²+1/2)}/√(2iπ sin t) · exp(-((x²+y²)cos t - 2xy)/(2i sin t))`,
/// principal-branch square root.
pub fn u0(x: f64, y: f64, t: &TimePoint, p: &ModelParams) -> Result<Complex64> {
    if t.domain() != TimeDomain::PropagatorReal {
        return Err(QrmError::Domain("U₀ needs a real propagator time".into()));
    }
    Ok(u0_raw(x, y, t.real(), p))
}

pub(crate) fn u0_raw(x: f64, y: f64, t: f64, p: &ModelParams) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let sin_t = t.sin();
    let q = ((x * x + y * y) * t.cos() - 2.0 * x * y) / (2.0 * i * sin_t);
    let pref = (i * t * (p.g2() + 0.5) - q).exp();
    pref / (2.0 * std::f64::consts::PI * i * sin_t).sqrt()
}

/// Dispatch on the rotated flag: `K₀` for heat-domain times, `U₀` for
/// real propagator times.
pub fn mehler_prefactor(
    x: f64,
    y: f64,
    t: &TimePoint,
    p: &ModelParams,
    rotated: bool,
) -> Result<Complex64> {
    if rotated {
        u0(x, y, t, p)
    } else {
        k0(x, y, t, p)
    }
}

/// Scalar exponent of the λ-th heat-kernel term, excluding θ:
/// `-2g² coth(t/2)^{(-1)^λ} + 4g² cosh(t(1-μ_λ))/sinh(t)·[λ even] + ξ_λ`,
/// with the pole pair of the even-λ case combined before exponentiation.
/// The λ = 0 instance is the arbitrated `-2g² tanh(t/2)` (the sign forced
/// by the parity-kernel Φ₀^± and the Δ = 0 displaced-oscillator limit).
pub(crate) fn scalar_exponent_tb<M: Fn(usize) -> f64 + Copy>(
    lambda: usize,
    mu: M,
    tb: &TimeBasis,
    p: &ModelParams,
) -> Complex64 {
    let g2 = p.g2();
    if lambda == 0 {
        return -2.0 * g2 * tb.tanh_half();
    }
    let base = if lambda % 2 == 0 {
        combined_even_exponent_tb(tb, mu(lambda), p)
    } else {
        -2.0 * g2 * tb.tanh_half()
    };
    base + xi_tb(lambda, mu, tb, p)
}

/// `-2g² coth(t/2) + 4g² cosh(t(1-μ))/sinh(t)` with the two `1/t` poles
/// cancelled analytically:
/// `2g²[2(e^{-tμ} + e^{-t(2-μ)}) - (1+e^{-t})²]/(1-e^{-2t})`.
pub(crate) fn combined_even_exponent_tb(tb: &TimeBasis, mu: f64, p: &ModelParams) -> Complex64 {
    let g2 = p.g2();
    if tb.stable {
        let n = 2.0 * (tb.e(mu) + tb.e(2.0 - mu)) - (1.0 + tb.em) * (1.0 + tb.em);
        2.0 * g2 * n / tb.one_m_e2
    } else {
        -2.0 * g2 * tb.coth_half() + 4.0 * g2 * (tb.t * (1.0 - mu)).cosh() / tb.t.sinh()
    }
}

/// Fast path for the Ω integrand exponent at simplex dimension `dims`:
/// `combined_even + ξ + ψ⁻` for even dims, `ξ + ψ⁺` for odd dims.
/// Mathematically identical to composing [`combined_even_exponent_tb`],
/// [`xi_tb`] and [`psi_tb`], but O(dims) per node: one exponential per
/// coordinate plus prefix sums over the ξ pair structure. `scratch` holds
/// `e^{-tμ_γ}` and its reciprocal and is reused across nodes.
pub(crate) fn omega_integrand_exponent(
    dims: usize,
    mu: &[f64],
    tb: &TimeBasis,
    p: &ModelParams,
    scratch: &mut Vec<Complex64>,
) -> Complex64 {
    debug_assert_eq!(mu.len(), dims);
    debug_assert!(tb.stable, "Ω table path assumes Re t ≥ 0 factored forms");
    let g2 = p.g2();
    let even = dims % 2 == 0;
    let parity_sign = if even { 1.0 } else { -1.0 };
    scratch.clear();
    scratch.resize(2 * (dims + 1), Complex64::new(0.0, 0.0));
    let (e_tab, d_tab) = scratch.split_at_mut(dims + 1);
    e_tab[0] = Complex64::new(1.0, 0.0);
    d_tab[0] = Complex64::new(1.0, 0.0);
    for g in 1..=dims {
        let e = (-tb.t * mu[g - 1]).exp();
        e_tab[g] = e;
        d_tab[g] = 1.0 / e;
    }
    let em = tb.em;
    let em2 = em * em;
    let inv_denom = 1.0 / tb.one_m_e2;

    let mut total = Complex64::new(0.0, 0.0);
    if even {
        // 2g²[2(e^{-tμ_d} + e^{-t(2-μ_d)}) - (1+e^{-t})²]/(1-e^{-2t})
        let n = 2.0 * (e_tab[dims] + em2 * d_tab[dims]) - (1.0 + em) * (1.0 + em);
        total += 2.0 * g2 * n * inv_denom;
    }
    // ξ first sum
    {
        let d1m = 1.0 - em * d_tab[dims];
        let mut s = Complex64::new(0.0, 0.0);
        for g in 0..=dims {
            let sign = if g % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * (e_tab[dims] * d_tab[g]) * (1.0 + e_tab[g] * e_tab[g]);
        }
        total += -2.0 * g2 * parity_sign * d1m * d1m * s * inv_denom;
    }
    // ξ pair sum via parity-class prefix sums over α:
    // Σ_{β} ½ A_β E[β] (Σ_{α<β, β-α odd} D[α+1] B_α) / (1-e^{-2t})
    if dims >= 2 {
        let mut prefix = [Complex64::new(0.0, 0.0); 2];
        let mut pair_sum = Complex64::new(0.0, 0.0);
        for beta in 1..dims {
            // add α = β-1 to its parity class
            let alpha = beta - 1;
            let b_a = e_tab[alpha + 1] * d_tab[alpha] + e_tab[alpha + 1] * e_tab[alpha]
                - 1.0
                - e_tab[alpha + 1] * e_tab[alpha + 1];
            prefix[alpha % 2] += d_tab[alpha + 1] * b_a;
            let a_b = em2 * d_tab[beta + 1] * d_tab[beta] + e_tab[beta + 1] * d_tab[beta]
                - em2 * d_tab[beta] * d_tab[beta]
                - 1.0;
            // β-α odd ⇒ α parity opposite to β parity
            pair_sum += 0.5 * a_b * e_tab[beta] * prefix[1 - beta % 2];
        }
        total += -4.0 * g2 * pair_sum * inv_denom;
    }
    // ψ^∓: 2g² S²/(1-e^{-2t}), S = Σ (-1)^γ (e^{-tμ_γ} ± e^{-t(1-μ_γ)})
    {
        let mut s = Complex64::new(0.0, 0.0);
        for g in 0..=dims {
            let sign = if g % 2 == 0 { 1.0 } else { -1.0 };
            let e1m = em * d_tab[g];
            s += sign * if even { e_tab[g] - e1m } else { e_tab[g] + e1m };
        }
        total += 2.0 * g2 * s * s * inv_denom;
    }
    total
}

/// Circular-form scalar exponent for the propagator term, the Wick image
/// of [`scalar_exponent_tb`]: even λ uses `2ig²cot(t/2) - 4ig²cos(t(1-μ_λ))/sin t`,
/// odd λ and the arbitrated λ = 0 use `-2ig² tan(t/2)`.
pub(crate) fn scalar_exponent_bar<M: Fn(usize) -> f64 + Copy>(
    lambda: usize,
    mu: M,
    t: f64,
    p: &ModelParams,
) -> Complex64 {
    let g2 = p.g2();
    let i = Complex64::new(0.0, 1.0);
    if lambda == 0 {
        return -2.0 * i * g2 * (0.5 * t).tan();
    }
    let base = if lambda % 2 == 0 {
        let m = mu(lambda);
        i * g2 * (2.0 * (0.5 * t).cos() / (0.5 * t).sin() - 4.0 * (t * (1.0 - m)).cos() / t.sin())
    } else {
        -2.0 * i * g2 * (0.5 * t).tan()
    };
    base + xi_bar_raw(lambda, mu, t, p)
}
