//! Internal exact polynomials in the simplex variables `μ₁, μ₂, …` and
//! `g²`, used while expanding the Ω integrand as a power series in `t`
//! before termwise simplex integration.

use crate::numerics::poly::{pow_rat, Rational};
use crate::numerics::simplex::monomial_simplex_integral;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Monomial key: power of `g²` plus powers of `μ₁…μ_k` with trailing
/// zeros trimmed (so the key length is independent of the ambient
/// dimension).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct MuKey {
    g2: u32,
    mu: Vec<u32>,
}

impl MuKey {
    fn product(&self, other: &Self) -> Self {
        let len = self.mu.len().max(other.mu.len());
        let mut mu = vec![0u32; len];
        for (i, m) in mu.iter_mut().enumerate() {
            *m = self.mu.get(i).copied().unwrap_or(0) + other.mu.get(i).copied().unwrap_or(0);
        }
        Self { g2: self.g2 + other.g2, mu }
    }
}

/// Sparse exact polynomial in `(g², μ₁, μ₂, …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuPoly {
    terms: BTreeMap<MuKey, Rational>,
}

impl MuPoly {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(MuKey { g2: 0, mu: Vec::new() }, c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn g2() -> Self {
        let mut p = Self::zero();
        p.terms.insert(MuKey { g2: 1, mu: Vec::new() }, Rational::one());
        p
    }

    /// The variable `μ_γ` for 1-based γ; γ = 0 is the hard-wired μ₀ = 0,
    /// i.e. the zero polynomial.
    pub fn mu(gamma: usize) -> Self {
        if gamma == 0 {
            return Self::zero();
        }
        let mut mu = vec![0u32; gamma];
        mu[gamma - 1] = 1;
        let mut p = Self::zero();
        p.terms.insert(MuKey { g2: 0, mu }, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let e = terms.entry(k.clone()).or_insert_with(Rational::zero);
            *e += v;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<MuKey, Rational> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key = ka.product(kb);
                let e = terms.entry(key).or_insert_with(Rational::zero);
                *e += va * vb;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Self { terms }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Affine combination `c + Σ_γ a_γ μ_γ` (γ 1-based).
    pub fn affine(c: Rational, lin: &[(usize, Rational)]) -> Self {
        let mut p = Self::constant(c);
        for (gamma, a) in lin {
            p = p.add(&Self::mu(*gamma).scale(a));
        }
        p
    }

    /// Exact integral over the ordered λ-simplex; returns a polynomial in
    /// `g²` as coefficient map `power ↦ value`.
    pub fn integrate_simplex(&self, lambda: usize) -> BTreeMap<u32, Rational> {
        let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
        for (k, v) in &self.terms {
            assert!(
                k.mu.len() <= lambda,
                "μ variable index beyond simplex dimension"
            );
            let mut exps = k.mu.clone();
            exps.resize(lambda, 0);
            let integral = monomial_simplex_integral(&exps);
            let e = out.entry(k.g2).or_insert_with(Rational::zero);
            *e += v * integral;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Numeric evaluation (for cross-checks against floating-point paths).
    pub fn eval_f64(&self, g2: f64, mu: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (k, v) in &self.terms {
            let mut m = crate::numerics::poly::rational_to_f64(v) * g2.powi(k.g2 as i32);
            for (i, &e) in k.mu.iter().enumerate() {
                m *= mu[i].powi(e as i32);
            }
            acc += m;
        }
        acc
    }

    /// Exact rational power helper for substituting a rational μ value.
    pub fn eval_rational(&self, g2: &Rational, mu: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (k, v) in &self.terms {
            let mut m = v * pow_rat(g2, k.g2);
            for (i, &e) in k.mu.iter().enumerate() {
                m *= pow_rat(&mu[i], e);
            }
            acc += m;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::poly::{rat, rat_int};

    #[test]
    fn trailing_zero_keys_are_canonical() {
        let a = MuPoly::mu(2);
        let b = MuPoly::mu(2).mul(&MuPoly::one());
        assert_eq!(a, b);
    }

    #[test]
    fn simplex_integration_of_terms() {
        // ∫ (μ1 μ2 + g² μ2²) over ordered 2-simplex = 1/8 + g²/(1·... )
        let p = MuPoly::mu(1)
            .mul(&MuPoly::mu(2))
            .add(&MuPoly::g2().mul(&MuPoly::mu(2).pow(2)));
        let res = p.integrate_simplex(2);
        assert_eq!(res.get(&0), Some(&rat(1, 8)));
        // ∫ μ2² over 2-simplex: exponents (0,2): 1/(1+0) · 1/(2+2) = 1/4
        assert_eq!(res.get(&1), Some(&rat(1, 4)));
    }

    #[test]
    fn affine_and_eval() {
        // 1/2 - μ1
        let p = MuPoly::affine(rat(1, 2), &[(1, rat_int(-1))]);
        assert!((p.eval_f64(0.0, &[0.3]) - 0.2).abs() < 1e-15);
        let v = p.eval_rational(&rat_int(0), &[rat(3, 10)]);
        assert_eq!(v, rat(1, 5));
    }
}
