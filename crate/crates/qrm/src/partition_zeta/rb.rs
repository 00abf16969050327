//! Exact Rabi–Bernoulli polynomials from the generating function
//! `wΩ(w)e^{-τw}/(1-e^{-w}) = 2 Σ_k (-1)^k (RB)_k w^k/k!` (full) and
//! `½[wΩe^{-τw}/(1-e^{-w}) ∓ wΩ_odd e^{-τw}/(1+e^{-w})] = Σ_k (-1)^k (RB)^±_k w^k/k!`.
//!
//! Each Ω integrand exponent is expanded as an exact Laurent series in
//! `w` with polynomial-in-μ rational coefficients; the
//! `-2g²coth(w/2) + 4g²cosh(w(1-μ))/sinh w` pole pair cancels
//! analytically before exponentiation, and each μ-monomial is integrated
//! over the ordered simplex in closed form. The result is independent of
//! floating point end to end.

use crate::error::{QrmError, Result};
use crate::numerics::mupoly::MuPoly;
use crate::numerics::poly::{rat, rat_int, MultiPoly, Rational, RingTag};
use crate::numerics::series::FormalSeries;
use num_traits::One;

type MuSeries = FormalSeries<MuPoly>;
type PolySeries = FormalSeries<MultiPoly>;

/// Which generating function a Rabi–Bernoulli polynomial came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RBTag {
    Full,
    Plus,
    Minus,
}

/// Exact Rabi–Bernoulli polynomial: full ring `Q[τ, g², Δ²]`, parity ring
/// `Q[τ, g², Δ]`; monic in τ of degree k.
#[derive(Debug, Clone)]
pub struct RBPoly {
    pub poly: MultiPoly,
    pub k: usize,
    pub tag: RBTag,
}

/// `cosh(c·w)` as an exact series, `c` a μ-polynomial.
fn cosh_mu(c: &MuPoly, tmax: i64) -> MuSeries {
    let mut coeffs = vec![MuPoly::zero(); (tmax + 1).max(1) as usize];
    let mut c_pow = MuPoly::one();
    let mut fact = Rational::one();
    let mut m = 0i64;
    while m <= tmax {
        coeffs[m as usize] = c_pow.scale(&(Rational::one() / fact.clone()));
        // advance two orders: c^{m+2}/(m+1)(m+2)
        c_pow = c_pow.mul(c).mul(c);
        fact = fact * rat_int(m + 1) * rat_int(m + 2);
        m += 2;
    }
    FormalSeries::from_coeffs(0, coeffs)
}

/// `sinh(c·w)` as an exact series.
fn sinh_mu(c: &MuPoly, tmax: i64) -> MuSeries {
    let mut coeffs = vec![MuPoly::zero(); (tmax + 1).max(1) as usize];
    let mut c_pow = c.clone();
    let mut fact = Rational::one();
    let mut m = 1i64;
    while m <= tmax {
        coeffs[m as usize] = c_pow.scale(&(Rational::one() / fact.clone()));
        c_pow = c_pow.mul(c).mul(c);
        fact = fact * rat_int(m + 1) * rat_int(m + 2);
        m += 2;
    }
    FormalSeries::from_coeffs(0, coeffs)
}

/// `1/sinh(w)` as a Laurent series (min degree -1).
fn inv_sinh(tmax: i64) -> Result<MuSeries> {
    // sinh(w)/w = Σ w^{2m}/(2m+1)!
    let mut coeffs = vec![MuPoly::zero(); (tmax + 3) as usize];
    let mut fact = Rational::one();
    let mut m = 0i64;
    while m < tmax + 3 {
        coeffs[m as usize] = MuPoly::constant(Rational::one() / fact.clone());
        fact = fact * rat_int(m + 2) * rat_int(m + 3);
        m += 2;
    }
    Ok(FormalSeries::from_coeffs(0, coeffs).recip()?.shift(-1))
}

/// `coth(w/2)` as a Laurent series (min degree -1).
fn coth_half(tmax: i64) -> Result<MuSeries> {
    let half = rat(1, 2);
    let c = MuPoly::constant(half);
    // cosh(w/2) / [ (w/2) · (sinh(w/2)/(w/2)) ]
    let mut coeffs = vec![MuPoly::zero(); (tmax + 3) as usize];
    let mut fact = Rational::one();
    let mut pow = Rational::one(); // (1/2)^{2m}
    let mut m = 0i64;
    while m < tmax + 3 {
        coeffs[m as usize] = MuPoly::constant(pow.clone() / fact.clone());
        fact = fact * rat_int(m + 2) * rat_int(m + 3);
        pow = pow * rat(1, 4);
        m += 2;
    }
    let sh_over = FormalSeries::from_coeffs(0, coeffs); // sinh(w/2)/(w/2)
    let ch = cosh_mu(&c, tmax + 2);
    Ok(ch.mul(&sh_over.recip()?).shift(-1).scale(&rat_int(2)))
}

/// `tanh(w/2)` as a series (min degree 1).
fn tanh_half(tmax: i64) -> Result<FormalSeries<Rational>> {
    let mut sh = vec![<Rational as Zero>::zero(); (tmax + 1).max(1) as usize];
    let mut ch = vec![<Rational as Zero>::zero(); (tmax + 1).max(1) as usize];
    let mut fact = Rational::one();
    let mut pow = Rational::one(); // (1/2)^m
    for m in 0..=tmax as usize {
        let c = pow.clone() / fact.clone();
        if m % 2 == 0 {
            ch[m] = c;
        } else {
            sh[m] = c;
        }
        fact = fact * rat_int(m as i64 + 1);
        pow = pow * rat(1, 2);
    }
    let sinh = FormalSeries::from_coeffs(0, sh);
    let cosh = FormalSeries::from_coeffs(0, ch);
    Ok(sinh.mul(&cosh.recip()?))
}

use num_traits::Zero;

/// The exact scalar exponent of the Ω integrand at simplex dimension
/// `dims`: the pole-cancelled
/// `-2g²coth(w/2) + 4g²cosh(w(1-μ_dims))/sinh w` (even dims only),
/// plus `ξ_dims` and `ψ^∓_dims` (`ψ⁻` for even, `ψ⁺` for odd).
fn integrand_exponent(dims: usize, tmax: i64) -> Result<MuSeries> {
    let g2 = MuPoly::g2();
    let inv_sh = inv_sinh(tmax + 1)?;
    let mu = |gamma: usize| MuPoly::mu(gamma);
    let one_minus = |gamma: usize| MuPoly::affine(Rational::one(), &[(gamma, rat_int(-1))]);
    let even = dims % 2 == 0;
    let parity_sign = if even { rat_int(1) } else { rat_int(-1) };

    let mut e = FormalSeries::zero(tmax);

    if even {
        // -2g² coth(w/2) + 4g² cosh(w(1-μ_d))/sinh(w): the w⁻¹ (and w⁰)
        // coefficients cancel exactly, leaving min degree 1
        let a = coth_half(tmax + 1)?.scale_coeff(&g2.scale(&rat_int(-2)));
        let b = cosh_mu(&one_minus(dims), tmax + 2)
            .mul(&inv_sh)
            .scale_coeff(&g2.scale(&rat_int(4)));
        let combined = a.add(&b);
        assert!(combined.min_deg() >= 1, "pole pair failed to cancel");
        e = e.add(&combined);
    }

    // ξ first part: -(8g²/sinh w)·sinh²(w(1-μ_d)/2)·(-1)^dims·Σ_γ(-1)^γ cosh(wμ_γ)
    let half_arg = MuPoly::affine(rat(1, 2), &[(dims, rat(-1, 2))]);
    let sh2 = {
        let s = sinh_mu(&half_arg, tmax + 2);
        s.mul(&s)
    };
    let mut alt_cosh = FormalSeries::zero(tmax + 2);
    for gamma in 0..=dims {
        let term = cosh_mu(&mu(gamma), tmax + 2);
        alt_cosh = if gamma % 2 == 0 { alt_cosh.add(&term) } else { alt_cosh.sub(&term) };
    }
    let xi_first = sh2
        .mul(&alt_cosh)
        .mul(&inv_sh)
        .scale(&(parity_sign.clone() * rat_int(-8)))
        .scale_coeff(&g2);
    e = e.add(&xi_first);

    // ξ pair part: -(4g²/sinh w) Σ_{α<β≤dims-1, β-α odd}
    //   [cosh(w(1-μ_{β+1})) - cosh(w(1-μ_β))]·[cosh(wμ_α) - cosh(wμ_{α+1})]
    if dims >= 2 {
        let mut pair_sum = FormalSeries::zero(tmax + 2);
        for beta in 1..dims {
            let d = cosh_mu(&one_minus(beta + 1), tmax + 2)
                .sub(&cosh_mu(&one_minus(beta), tmax + 2));
            let mut alpha = 1 - (beta % 2);
            while alpha < beta {
                let c = cosh_mu(&mu(alpha), tmax + 2).sub(&cosh_mu(&mu(alpha + 1), tmax + 2));
                pair_sum = pair_sum.add(&d.mul(&c));
                alpha += 2;
            }
        }
        e = e.add(
            &pair_sum
                .mul(&inv_sh)
                .scale(&rat_int(-4))
                .scale_coeff(&g2),
        );
    }

    // ψ^∓: (4g²/sinh w)[Σ_γ (-1)^γ f(w(1/2-μ_γ))]², f = sinh (even dims,
    // ψ⁻) or cosh (odd dims, ψ⁺)
    let mut alt_f = FormalSeries::zero(tmax + 2);
    for gamma in 0..=dims {
        let arg = MuPoly::affine(rat(1, 2), &[(gamma, rat_int(-1))]);
        let term = if even {
            sinh_mu(&arg, tmax + 2)
        } else {
            cosh_mu(&arg, tmax + 2)
        };
        alt_f = if gamma % 2 == 0 { alt_f.add(&term) } else { alt_f.sub(&term) };
    }
    let psi = alt_f
        .mul(&alt_f)
        .mul(&inv_sh)
        .scale(&rat_int(4))
        .scale_coeff(&g2);
    e = e.add(&psi);

    let e = e.truncate(tmax);
    assert!(
        e.min_deg() >= 1 || e.is_zero(),
        "Ω integrand exponent must vanish at w = 0 (min degree {})",
        e.min_deg()
    );
    Ok(e)
}

/// `∫ exp(exponent) dμ` over the ordered `dims`-simplex, exactly, as a
/// series in `w` with `Q[g²]` coefficients embedded in the given ring.
fn integrated_block(dims: usize, tmax: i64, ring: RingTag) -> Result<PolySeries> {
    if tmax < 0 {
        return Ok(FormalSeries::zero(tmax.max(0)));
    }
    let exponent = integrand_exponent(dims, tmax)?;
    let f = crate::numerics::series::series_exp(&exponent)?;
    let mut coeffs = Vec::with_capacity((tmax + 1) as usize);
    for k in 0..=tmax {
        let mp = f.coeff(k);
        let g2_poly = mp.integrate_simplex(dims);
        let mut poly = MultiPoly::zero(ring);
        for (g2_pow, c) in g2_poly {
            poly = poly.add(&MultiPoly::monomial(ring, [0, g2_pow, 0], c));
        }
        coeffs.push(poly);
    }
    Ok(FormalSeries::from_coeffs(0, coeffs))
}

/// Exact series of `Ω(w)` to order `tmax` in the parity ring
/// (`D = Δ`, appearing in even powers).
pub(crate) fn omega_series_exact(tmax: i64) -> Result<PolySeries> {
    let ring = RingTag::Parity;
    let mut inner = FormalSeries::constant(MultiPoly::one(ring), tmax);
    let mut lam = 1usize;
    while 2 * lam as i64 <= tmax {
        let dims = 2 * lam;
        let block = integrated_block(dims, tmax - dims as i64, ring)?;
        let pref = FormalSeries::monomial(
            MultiPoly::monomial(ring, [0, 0, dims as u32], Rational::one()),
            dims as i64,
            tmax,
        );
        inner = inner.add(&pref.mul(&block));
        lam += 1;
    }
    // 2 e^{g²w} · inner
    let expg = crate::numerics::series::series_exp(&FormalSeries::monomial(
        MultiPoly::var_g2(ring),
        1,
        tmax,
    ))?;
    Ok(expg.mul(&inner).scale(&rat_int(2)))
}

/// Exact series of `Ω_odd(w)` to order `tmax` in the parity ring
/// (odd powers of Δ only).
pub(crate) fn omega_odd_series_exact(tmax: i64) -> Result<PolySeries> {
    let ring = RingTag::Parity;
    let mut inner = FormalSeries::zero(tmax);
    let mut lam = 0usize;
    while (2 * lam + 1) as i64 <= tmax {
        let dims = 2 * lam + 1;
        let block = integrated_block(dims, tmax - dims as i64, ring)?;
        let pref = FormalSeries::monomial(
            MultiPoly::monomial(ring, [0, 0, dims as u32], Rational::one()),
            dims as i64,
            tmax,
        );
        inner = inner.add(&pref.mul(&block));
        lam += 1;
    }
    // 2 e^{g²w - 2g²tanh(w/2)} · inner
    let th = tanh_half(tmax)?;
    let mut exponent = FormalSeries::monomial(MultiPoly::var_g2(ring), 1, tmax);
    for k in 1..=tmax {
        let c = th.coeff(k);
        if !Zero::is_zero(&c) {
            exponent = exponent.add(&FormalSeries::monomial(
                MultiPoly::var_g2(ring).scale(&(c * rat_int(-2))),
                k,
                tmax,
            ));
        }
    }
    let pref = crate::numerics::series::series_exp(&exponent)?;
    Ok(pref.mul(&inner).scale(&rat_int(2)))
}

/// `w/(1-e^{-w})` as an exact unit series.
fn w_over_one_minus_exp_neg(tmax: i64) -> Result<PolySeries> {
    // (1-e^{-w})/w = Σ (-1)^k w^k/(k+1)!
    let ring = RingTag::Parity;
    let mut coeffs = Vec::with_capacity((tmax + 1) as usize);
    let mut fact = Rational::one(); // (k+1)!
    for k in 0..=tmax {
        fact = fact * rat_int(k + 1);
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        coeffs.push(MultiPoly::constant(ring, sign / fact.clone()));
    }
    FormalSeries::from_coeffs(0, coeffs).recip()
}

/// `w/(1+e^{-w})` as an exact series (min degree 1).
fn w_over_one_plus_exp_neg(tmax: i64) -> Result<PolySeries> {
    // 1+e^{-w} = 2 + Σ_{k≥1} (-1)^k w^k/k!
    let ring = RingTag::Parity;
    let mut coeffs = Vec::with_capacity((tmax + 1) as usize);
    let mut fact = Rational::one();
    coeffs.push(MultiPoly::constant(ring, rat_int(2)));
    for k in 1..=tmax {
        fact = fact * rat_int(k);
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        coeffs.push(MultiPoly::constant(ring, sign / fact.clone()));
    }
    let denom = FormalSeries::from_coeffs(0, coeffs);
    Ok(denom.recip()?.shift(1))
}

/// `e^{-τw}` as an exact series.
fn exp_neg_tau_w(tmax: i64) -> Result<PolySeries> {
    crate::numerics::series::series_exp(&FormalSeries::monomial(
        MultiPoly::var_tau(RingTag::Parity).neg(),
        1,
        tmax,
    ))
}

fn factorial_rat(k: usize) -> Rational {
    let mut f = Rational::one();
    for j in 2..=k {
        f = f * rat_int(j as i64);
    }
    f
}

/// Embed a parity-ring polynomial with even Δ powers into the full ring.
fn to_full_ring(p: &MultiPoly) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(RingTag::Full);
    for (e, v) in p.terms() {
        if e[2] % 2 != 0 {
            return Err(QrmError::Truncation(
                "odd Δ power cannot live in the full ring".into(),
            ));
        }
        out = out.add(&MultiPoly::monomial(RingTag::Full, [e[0], e[1], e[2] / 2], v.clone()));
    }
    Ok(out)
}

/// All Rabi–Bernoulli polynomials `(RB)_0 … (RB)_kmax` for one tag, from
/// a single exact expansion of the generating function.
pub fn rb_family(kmax: usize, tag: RBTag) -> Result<Vec<RBPoly>> {
    let tmax = kmax as i64;
    let omega = omega_series_exact(tmax)?;
    let gen_full = omega
        .mul(&exp_neg_tau_w(tmax)?)
        .mul(&w_over_one_minus_exp_neg(tmax)?);
    let series = match tag {
        RBTag::Full => gen_full,
        RBTag::Plus | RBTag::Minus => {
            let odd = omega_odd_series_exact(tmax)?
                .mul(&exp_neg_tau_w(tmax)?)
                .mul(&w_over_one_plus_exp_neg(tmax)?.shift(-1))
                .truncate(tmax);
            // ½[gen ∓ odd]
            let signed = match tag {
                RBTag::Plus => gen_full.sub(&odd),
                _ => gen_full.add(&odd),
            };
            signed.scale(&rat(1, 2))
        }
    };
    let norm = match tag {
        RBTag::Full => rat(1, 2),
        _ => Rational::one(),
    };
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        let c = series.coeff(k as i64).scale(&(sign * factorial_rat(k) * norm.clone()));
        let poly = match tag {
            RBTag::Full => to_full_ring(&c)?,
            _ => c,
        };
        // degree/monic invariants from the rationality theorem
        if poly.degree_tau() != k as u32
            || poly.coeff([k as u32, 0, 0]) != Rational::one()
        {
            return Err(QrmError::Truncation(format!(
                "(RB)_{k} failed the monic-degree-{k} invariant"
            )));
        }
        out.push(RBPoly { poly, k, tag });
    }
    Ok(out)
}

/// `k`-th Rabi–Bernoulli polynomial. `k` beyond the supported expansion
/// order is an error (never silently truncated).
pub fn rb_polynomial(k: usize, tag: RBTag) -> Result<RBPoly> {
    const KMAX_DEFAULT: usize = 10;
    if k > KMAX_DEFAULT {
        return Err(QrmError::Truncation(format!(
            "rb_polynomial supports k ≤ {KMAX_DEFAULT}, got {k}"
        )));
    }
    Ok(rb_family(k, tag)?.pop().expect("family is non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::poly::{bernoulli_poly, rat, rat_int};

    /// Golden values: (RB)₀ = 1, (RB)₁ = τ - 1/2 - g²,
    /// (RB)₂ = τ² - (1+2g²)τ + 1/6 + g² + g⁴ + Δ².
    #[test]
    fn golden_low_order_polynomials() {
        let fam = rb_family(2, RBTag::Full).unwrap();
        let r = RingTag::Full;
        assert_eq!(fam[0].poly, MultiPoly::one(r));
        let rb1 = MultiPoly::var_tau(r)
            .sub(&MultiPoly::constant(r, rat(1, 2)))
            .sub(&MultiPoly::var_g2(r));
        assert_eq!(fam[1].poly, rb1, "RB₁ = {}", fam[1].poly);
        let rb2 = MultiPoly::var_tau(r)
            .pow(2)
            .sub(
                &MultiPoly::var_tau(r)
                    .mul(&MultiPoly::one(r).add(&MultiPoly::var_g2(r).scale(&rat_int(2)))),
            )
            .add(&MultiPoly::constant(r, rat(1, 6)))
            .add(&MultiPoly::var_g2(r))
            .add(&MultiPoly::var_g2(r).pow(2))
            .add(&MultiPoly::var_d(r));
        assert_eq!(fam[2].poly, rb2, "RB₂ = {}", fam[2].poly);
    }

    /// Difference-differential relation ∂_τ(RB)_{k+1} = (k+1)(RB)_k,
    /// exactly, through k = 9. The sign is fixed by the golden values
    /// ((RB)₁ = ½∂_τ(RB)₂), by the Bernoulli limit B'_{k+1} = (k+1)B_k,
    /// and by ∂_τζ(s;τ) = -sζ(s+1;τ) applied at s = -k.
    #[test]
    fn dd_relation_exact() {
        let fam = rb_family(10, RBTag::Full).unwrap();
        for k in 0..=9usize {
            let lhs = fam[k + 1].poly.dtau();
            let rhs = fam[k].poly.scale(&rat_int(k as i64 + 1));
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    /// Bernoulli degenerations: (RB)_k(τ,0,0) = B_k(τ) and
    /// (RB)_k(τ,g²,0) = B_k(τ-g²), exactly.
    #[test]
    fn bernoulli_degenerations_exact() {
        let fam = rb_family(9, RBTag::Full).unwrap();
        for (k, rbk) in fam.iter().enumerate() {
            let zero = <Rational as num_traits::Zero>::zero();
            let at_zero = rbk.poly.substitute(None, Some(&zero), Some(&zero));
            assert_eq!(at_zero, bernoulli_poly(k, RingTag::Full), "k = {k}");
            let delta_zero = rbk.poly.substitute(None, None, Some(&zero));
            let shifted = bernoulli_poly(k, RingTag::Full).shift_tau_by_neg_g2();
            assert_eq!(delta_zero, shifted, "k = {k} (g²-shift)");
        }
    }

    /// Parity sum (RB)⁺_k + (RB)⁻_k = 2(RB)_k, exactly.
    #[test]
    fn parity_sum_identity() {
        let kmax = 6;
        let full = rb_family(kmax, RBTag::Full).unwrap();
        let plus = rb_family(kmax, RBTag::Plus).unwrap();
        let minus = rb_family(kmax, RBTag::Minus).unwrap();
        for k in 0..=kmax {
            let lhs = plus[k].poly.add(&minus[k].poly);
            let rhs = full[k].poly.to_parity_ring().scale(&rat_int(2));
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    /// Δ-flip: (RB)^±_k(τ,g²,Δ) = (RB)^∓_k(τ,g²,-Δ), exactly (Ω_odd is
    /// odd in Δ).
    #[test]
    fn delta_flip_identity() {
        let kmax = 6;
        let plus = rb_family(kmax, RBTag::Plus).unwrap();
        let minus = rb_family(kmax, RBTag::Minus).unwrap();
        for k in 0..=kmax {
            assert_eq!(plus[k].poly.flip_delta(), minus[k].poly, "k = {k}");
        }
    }

    /// Monic of exact degree k in τ (asserted in construction; also spot
    /// check the τ-coefficient structure).
    #[test]
    fn monic_degree_structure() {
        let fam = rb_family(7, RBTag::Plus).unwrap();
        for (k, rbk) in fam.iter().enumerate() {
            assert_eq!(rbk.poly.degree_tau(), k as u32);
            assert_eq!(rbk.poly.coeff([k as u32, 0, 0]), Rational::one());
        }
    }

    #[test]
    fn order_limit_is_an_error() {
        assert!(rb_polynomial(11, RBTag::Full).is_err());
    }
}
