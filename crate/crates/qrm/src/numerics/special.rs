//! Reciprocal gamma, Hurwitz zeta and related special-function helpers.

use num_complex::Complex64;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos approximation, g = 7, 9 terms (Godfrey coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `1/Γ(z)`, entire in `z`. Exactly zero at the gamma poles `z = 0, -1, -2, …`.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    1.0 / gamma(z)
}

/// `Γ(z)` by Lanczos with reflection for `Re z < 0.5`.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let pi = std::f64::consts::PI;
        let s = (pi * z).sin();
        Complex64::new(pi, 0.0) / (s * gamma(Complex64::new(1.0, 0.0) - z))
    } else {
        let zm1 = z - 1.0;
        let mut a = Complex64::new(LANCZOS_COEF[0], 0.0);
        for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            a += c / (zm1 + i as f64);
        }
        let t = zm1 + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powc(zm1 + 0.5) * (-t).exp() * a
    }
}

// Bernoulli numbers B_2 … B_20 for Euler–Maclaurin.
const B2K: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n+a)^{-s}` for real `s ≠ 1`, `a > 0`,
/// by Euler–Maclaurin. Used as an independent oracle for the decoupled
/// (`g = 0` or `Δ = 0`) spectra.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(a > 0.0, "hurwitz_zeta requires a > 0");
    assert!(s != 1.0, "hurwitz_zeta has a pole at s = 1");
    let n = 24usize;
    let mut sum = 0.0;
    for k in 0..n {
        sum += (k as f64 + a).powf(-s);
    }
    let x = n as f64 + a;
    sum += x.powf(1.0 - s) / (s - 1.0);
    sum += 0.5 * x.powf(-s);
    // correction Σ B_{2k}/(2k)! · (s)_{2k-1} · x^{-s-2k+1}
    let mut poch = s; // (s)_1
    let mut fact = 1.0;
    for (k, &b) in B2K.iter().enumerate() {
        let m = 2 * (k + 1);
        fact *= ((m - 1) * m) as f64;
        sum += b / fact * poch * x.powf(-s - (m as f64) + 1.0);
        poch *= (s + m as f64 - 1.0) * (s + m as f64);
    }
    sum
}
