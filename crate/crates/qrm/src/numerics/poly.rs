//! Exact multivariate polynomials over arbitrary-precision rationals.
//!
//! [`MultiPoly`] lives in one of two rings distinguished by a tag:
//! the full ring `Q[τ, g², Δ²]` and the parity ring `Q[τ, g², Δ]`. The
//! third variable `D` means `Δ²` in the full ring and `Δ` in the parity
//! ring; all arithmetic requires matching tags (the zero polynomial
//! unifies with either).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Arbitrary-precision rational; always stored reduced with positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Coefficient ring tag for [`MultiPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingTag {
    /// `Q[τ, g², Δ²]`: D ↦ Δ².
    Full,
    /// `Q[τ, g², Δ]`: D ↦ Δ.
    Parity,
}

/// Exponents `[τ, G, D]` with `G = g²` and `D` per ring tag.
pub type Exponents = [u32; 3];

/// Sparse exact polynomial in `(τ, g², D)`. No zero coefficients are
/// stored and exponent keys are kept in canonical (BTreeMap) order.
/// Equality ignores the ring tag on constants, which live in both rings.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    ring: RingTag,
    terms: BTreeMap<Exponents, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && (self.ring == other.ring || (self.is_constant() && other.is_constant()))
    }
}

impl MultiPoly {
    pub fn zero(ring: RingTag) -> Self {
        Self { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: RingTag, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert([0, 0, 0], c);
        }
        p
    }

    pub fn one(ring: RingTag) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn monomial(ring: RingTag, exps: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var_tau(ring: RingTag) -> Self {
        Self::monomial(ring, [1, 0, 0], Rational::one())
    }

    pub fn var_g2(ring: RingTag) -> Self {
        Self::monomial(ring, [0, 1, 0], Rational::one())
    }

    pub fn var_d(ring: RingTag) -> Self {
        Self::monomial(ring, [0, 0, 1], Rational::one())
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: Exponents) -> Rational {
        self.terms.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant polynomials (including zero) live in `Q`, hence in both
    /// rings; they unify with either tag.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    fn unified_ring(&self, other: &Self) -> RingTag {
        match (self.is_constant(), other.is_constant()) {
            (true, false) => other.ring,
            (false, true) => self.ring,
            (true, true) => self.ring,
            (false, false) => {
                assert_eq!(self.ring, other.ring, "mixed polynomial rings");
                self.ring
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let ring = self.unified_ring(other);
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let entry = terms.entry(*k).or_insert_with(Rational::zero);
            *entry += v;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Self { ring, terms }
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring,
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ring = self.unified_ring(other);
        let mut terms: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]];
                let entry = terms.entry(key).or_insert_with(Rational::zero);
                *entry += va * vb;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Self { ring, terms }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.ring);
        }
        Self {
            ring: self.ring,
            terms: self.terms.iter().map(|(k, v)| (*k, v * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact partial derivative with respect to τ.
    pub fn dtau(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            if k[0] > 0 {
                terms.insert([k[0] - 1, k[1], k[2]], v * rat_int(k[0] as i64));
            }
        }
        Self { ring: self.ring, terms }
    }

    /// Degree in τ (zero polynomial reports 0).
    pub fn degree_tau(&self) -> u32 {
        self.terms.keys().map(|k| k[0]).max().unwrap_or(0)
    }

    /// Coefficient polynomial of `τ^k` (in the remaining variables).
    pub fn tau_coefficient(&self, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            if e[0] == k {
                terms.insert([0, e[1], e[2]], v.clone());
            }
        }
        Self { ring: self.ring, terms }
    }

    /// Substitute exact rational values for any subset of the variables.
    pub fn substitute(
        &self,
        tau: Option<&Rational>,
        g2: Option<&Rational>,
        d: Option<&Rational>,
    ) -> Self {
        let mut terms: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, v) in &self.terms {
            let mut coeff = v.clone();
            let mut key = *e;
            if let Some(t) = tau {
                coeff *= pow_rat(t, e[0]);
                key[0] = 0;
            }
            if let Some(g) = g2 {
                coeff *= pow_rat(g, e[1]);
                key[1] = 0;
            }
            if let Some(dv) = d {
                coeff *= pow_rat(dv, e[2]);
                key[2] = 0;
            }
            let entry = terms.entry(key).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        terms.retain(|_, v| !v.is_zero());
        Self { ring: self.ring, terms }
    }

    /// Substitute `τ → τ - g²` exactly.
    pub fn shift_tau_by_neg_g2(&self) -> Self {
        let shifted_tau = Self::var_tau(self.ring).sub(&Self::var_g2(self.ring));
        let mut out = Self::zero(self.ring);
        for (e, v) in &self.terms {
            let term = shifted_tau
                .pow(e[0])
                .mul(&Self::monomial(self.ring, [0, e[1], e[2]], v.clone()));
            out = out.add(&term);
        }
        out
    }

    /// Embed a full-ring polynomial into the parity ring (`Δ²` powers
    /// become even `Δ` powers).
    pub fn to_parity_ring(&self) -> Self {
        match self.ring {
            RingTag::Parity => self.clone(),
            RingTag::Full => Self {
                ring: RingTag::Parity,
                terms: self
                    .terms
                    .iter()
                    .map(|(e, v)| ([e[0], e[1], 2 * e[2]], v.clone()))
                    .collect(),
            },
        }
    }

    /// Flip the sign of Δ (parity ring: negate odd-D coefficients).
    pub fn flip_delta(&self) -> Self {
        assert!(self.ring == RingTag::Parity || self.is_constant());
        Self {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, if e[2] % 2 == 1 { -v.clone() } else { v.clone() }))
                .collect(),
        }
    }

    /// Evaluate at floating-point values; `d` is the value of the ring's
    /// D variable (Δ² for the full ring, Δ for the parity ring).
    pub fn eval_f64(&self, tau: f64, g2: f64, d: f64) -> f64 {
        let mut acc = 0.0;
        for (e, v) in &self.terms {
            let c = rational_to_f64(v);
            acc += c * tau.powi(e[0] as i32) * g2.powi(e[1] as i32) * d.powi(e[2] as i32);
        }
        acc
    }
}

pub fn pow_rat(r: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= r;
    }
    acc
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // num's to_f64 handles bignum magnitudes by scaling
    num_traits::ToPrimitive::to_f64(r).expect("rational out of f64 range")
}

impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let d_name = match self.ring {
            RingTag::Full => "Δ²",
            RingTag::Parity => "Δ",
        };
        let mut first = true;
        // highest τ power first for readability
        for (e, v) in self.terms.iter().rev() {
            let mut parts = Vec::new();
            if e[0] > 0 {
                parts.push(if e[0] == 1 { "τ".into() } else { format!("τ^{}", e[0]) });
            }
            if e[1] > 0 {
                parts.push(if e[1] == 1 { "g²".into() } else { format!("(g²)^{}", e[1]) });
            }
            if e[2] > 0 {
                parts.push(if e[2] == 1 {
                    d_name.into()
                } else {
                    format!("({d_name})^{}", e[2])
                });
            }
            let mono = parts.join("·");
            let sign = if v.is_negative() { "-" } else { "+" };
            let mag = v.abs();
            let coeff = if mag.is_one() && !mono.is_empty() {
                String::new()
            } else {
                format!("{mag}")
            };
            if first {
                if v.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match (coeff.is_empty(), mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{coeff}")?,
                (false, false) => write!(f, "{coeff}·{mono}")?,
                (true, true) => write!(f, "1")?,
            }
        }
        Ok(())
    }
}

/// Exact Bernoulli numbers `B_0 … B_n` (B₁ = -1/2 convention).
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::zero(); n + 1];
    b[0] = Rational::one();
    for m in 1..=n {
        // B_m = -1/(m+1) Σ_{k<m} C(m+1,k) B_k
        let mut sum = Rational::zero();
        for (k, bk) in b.iter().enumerate().take(m) {
            sum += binomial(m as u64 + 1, k as u64) * bk;
        }
        b[m] = -sum / rat_int(m as i64 + 1);
    }
    b
}

/// Exact Bernoulli polynomial `B_k(τ)` as a [`MultiPoly`] in τ.
pub fn bernoulli_poly(k: usize, ring: RingTag) -> MultiPoly {
    let b = bernoulli_numbers(k);
    let mut p = MultiPoly::zero(ring);
    for (j, bj) in b.iter().enumerate().take(k + 1) {
        // C(k,j) B_j τ^{k-j}
        let c = binomial(k as u64, j as u64) * bj;
        p = p.add(&MultiPoly::monomial(ring, [(k - j) as u32, 0, 0], c));
    }
    p
}

pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_derivative() {
        let r = RingTag::Full;
        // p = τ² - (1+2g²)τ + Δ²
        let p = MultiPoly::var_tau(r)
            .pow(2)
            .sub(&MultiPoly::var_tau(r).mul(&MultiPoly::one(r).add(&MultiPoly::var_g2(r).scale(&rat_int(2)))))
            .add(&MultiPoly::var_d(r));
        assert_eq!(p.degree_tau(), 2);
        // ∂τ p = 2τ - 1 - 2g²
        let dp = p.dtau();
        assert_eq!(dp.coeff([1, 0, 0]), rat_int(2));
        assert_eq!(dp.coeff([0, 0, 0]), rat_int(-1));
        assert_eq!(dp.coeff([0, 1, 0]), rat_int(-2));
        // evaluation
        let v = p.eval_f64(2.0, 0.25, 0.16);
        assert!((v - (4.0 - 1.5 * 2.0 + 0.16)).abs() < 1e-15);
    }

    #[test]
    fn bernoulli_numbers_match_table() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[0], rat_int(1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], rat_int(0));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
    }

    #[test]
    fn bernoulli_polys_match_table() {
        let r = RingTag::Full;
        // B₂(τ) = τ² - τ + 1/6
        let b2 = bernoulli_poly(2, r);
        assert_eq!(b2.coeff([2, 0, 0]), rat_int(1));
        assert_eq!(b2.coeff([1, 0, 0]), rat_int(-1));
        assert_eq!(b2.coeff([0, 0, 0]), rat(1, 6));
        // B₃(τ) = τ³ - 3τ²/2 + τ/2
        let b3 = bernoulli_poly(3, r);
        assert_eq!(b3.coeff([3, 0, 0]), rat_int(1));
        assert_eq!(b3.coeff([2, 0, 0]), rat(-3, 2));
        assert_eq!(b3.coeff([1, 0, 0]), rat(1, 2));
        assert_eq!(b3.coeff([0, 0, 0]), rat_int(0));
    }

    #[test]
    fn ring_embedding_and_delta_flip() {
        let full = MultiPoly::var_d(RingTag::Full); // Δ²
        let par = full.to_parity_ring();
        assert_eq!(par.coeff([0, 0, 2]), rat_int(1));
        let q = MultiPoly::var_d(RingTag::Parity).add(&MultiPoly::one(RingTag::Parity));
        let flipped = q.flip_delta();
        assert_eq!(flipped.coeff([0, 0, 1]), rat_int(-1));
        assert_eq!(flipped.coeff([0, 0, 0]), rat_int(1));
    }

    #[test]
    fn tau_shift_matches_direct_expansion() {
        let r = RingTag::Full;
        // (τ - g²)² = τ² - 2 g² τ + g⁴
        let p = MultiPoly::var_tau(r).pow(2).shift_tau_by_neg_g2();
        assert_eq!(p.coeff([2, 0, 0]), rat_int(1));
        assert_eq!(p.coeff([1, 1, 0]), rat_int(-2));
        assert_eq!(p.coeff([0, 2, 0]), rat_int(1));
    }
}
