//! Quadrature over the ordered simplex `0 ≤ μ₁ ≤ … ≤ μ_λ ≤ 1`, plus the
//! exact rational monomial integral.
//!
//! The simplex is parameterized from the unit cube by the smooth product
//! map `μ_k = v_k v_{k+1} ⋯ v_λ` with polynomial Jacobian `Π_j v_j^{j-1}`,
//! so the transformed integrand of an analytic function stays analytic.
//! Low dimensions use tensor Gauss–Legendre with a per-dimension order
//! schedule; higher dimensions switch to a deterministic Kronecker lattice
//! on the same map.

use crate::error::{QrmError, Result};
use crate::numerics::gauss::gauss_legendre_01;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

/// Exact value of `∫_{0≤μ₁≤…≤μ_λ≤1} Π μ_i^{a_i} dμ` as a rational number,
/// by the iterated product formula `Π_{i=1..λ} 1/(i + a₁+…+a_i)`.
/// The empty exponent list gives 1 (λ = 0 convention).
pub fn monomial_simplex_integral(exponents: &[u32]) -> BigRational {
    let mut value = BigRational::from_integer(BigInt::from(1));
    let mut prefix: u64 = 0;
    for (i, &a) in exponents.iter().enumerate() {
        prefix += a as u64;
        let denom = (i as u64 + 1) + prefix;
        value /= BigRational::from_integer(BigInt::from(denom));
    }
    value
}

/// Node source for one simplex dimension count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NodeSource {
    TensorGauss(usize),
    Lattice(usize),
}

/// Per-dimension quadrature schedule. `gl_orders[λ-1]` is the tensor
/// Gauss–Legendre order used at dimension λ; dimensions beyond the list
/// use a Kronecker lattice with `lattice_points` nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureScheme {
    pub gl_orders: Vec<usize>,
    pub lattice_points: usize,
}

impl QuadratureScheme {
    /// High-accuracy profile for pointwise kernel/zeta evaluations.
    pub fn accurate() -> Self {
        Self {
            gl_orders: vec![24, 24, 14, 10, 8, 6, 5],
            lattice_points: 32768,
        }
    }

    /// Profile for zeta/partition integrands: the Ω series is re-evaluated
    /// at hundreds of quadrature times, and high simplex dimensions only
    /// activate where the surrounding integrand is exponentially small.
    pub fn zeta() -> Self {
        Self {
            gl_orders: vec![16, 12, 8, 6, 5, 5],
            lattice_points: 8192,
        }
    }

    /// Cheaper profile for dense grid sweeps (wavepacket evolution).
    pub fn fast() -> Self {
        Self {
            gl_orders: vec![16, 10, 8, 6, 6, 5],
            lattice_points: 8192,
        }
    }

    fn source(&self, lambda: usize) -> NodeSource {
        match self.gl_orders.get(lambda - 1) {
            Some(&q) => NodeSource::TensorGauss(q),
            None => NodeSource::Lattice(self.lattice_points_for(lambda)),
        }
    }

    /// Lattice size tapers with dimension: very high dimensions only
    /// activate at large |tΔ|, where the λ-terms (and the surrounding
    /// integrands) are exponentially suppressed, so cheaper estimates
    /// there do not move the final accuracy.
    fn lattice_points_for(&self, lambda: usize) -> usize {
        let n = if lambda <= 10 {
            self.lattice_points
        } else if lambda <= 16 {
            self.lattice_points / 4
        } else {
            self.lattice_points / 16
        };
        n.max(512)
    }

    pub fn validate(&self) -> Result<()> {
        if self.gl_orders.iter().any(|&q| q == 0) || self.lattice_points == 0 {
            return Err(QrmError::InvalidArgument(
                "quadrature orders and lattice size must be positive".into(),
            ));
        }
        Ok(())
    }
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        Self::accurate()
    }
}

/// Quadrature rule over the ordered λ-simplex: ordered nodes `μ` with
/// weights that already include the cube→simplex Jacobian. Weights sum to
/// the simplex volume `1/λ!`.
#[derive(Debug, Clone)]
pub struct SimplexRule {
    lambda: usize,
    nodes: Vec<f64>, // flattened, λ coords per node, ordered ascending
    weights: Vec<f64>,
}

impl SimplexRule {
    pub fn new(lambda: usize, scheme: &QuadratureScheme) -> Self {
        assert!(lambda >= 1);
        match scheme.source(lambda) {
            NodeSource::TensorGauss(q) => Self::tensor_gauss(lambda, q),
            NodeSource::Lattice(n) => Self::lattice(lambda, n),
        }
    }

    fn tensor_gauss(lambda: usize, q: usize) -> Self {
        let (x, w) = gauss_legendre_01(q);
        let count = q.pow(lambda as u32);
        let mut nodes = Vec::with_capacity(count * lambda);
        let mut weights = Vec::with_capacity(count);
        let mut idx = vec![0usize; lambda];
        let mut v = vec![0.0; lambda];
        loop {
            let mut weight = 1.0;
            for j in 0..lambda {
                v[j] = x[idx[j]];
                weight *= w[idx[j]];
                // Jacobian factor v_j^{j-1} (1-based j)
                weight *= v[j].powi(j as i32);
            }
            // μ_k = v_k v_{k+1} ... v_λ, accumulated from the top
            let mut prod = 1.0;
            let base = nodes.len();
            nodes.resize(base + lambda, 0.0);
            for k in (0..lambda).rev() {
                prod *= v[k];
                nodes[base + k] = prod;
            }
            weights.push(weight);
            // advance the multi-index
            let mut carry = true;
            for d in idx.iter_mut() {
                *d += 1;
                if *d == q {
                    *d = 0;
                } else {
                    carry = false;
                    break;
                }
            }
            if carry {
                break;
            }
        }
        Self { lambda, nodes, weights }
    }

    /// Kronecker (additive) lattice with irrational generators
    /// `α_j = frac(√p_j)`; deterministic, no tables. Uses the
    /// equal-measure power map `v_j = u_j^{1/j}`, `μ_k = Π_{j≥k} v_j`,
    /// whose Jacobian is the constant `1/λ!`, so the lattice samples the
    /// simplex measure uniformly. (The power map's endpoint derivative
    /// singularities rule it out for Gauss nodes but are harmless here.)
    fn lattice(lambda: usize, n: usize) -> Self {
        let alphas: Vec<f64> = primes(lambda)
            .iter()
            .map(|&p| (p as f64).sqrt().fract())
            .collect();
        let mut nodes = Vec::with_capacity(n * lambda);
        let weight = 1.0 / (n as f64 * factorial(lambda));
        let weights = vec![weight; n];
        let mut v = vec![0.0; lambda];
        for k in 0..n {
            let kf = (k + 1) as f64;
            for j in 0..lambda {
                let u = (kf * alphas[j]).fract();
                v[j] = u.powf(1.0 / (j as f64 + 1.0));
            }
            let mut prod = 1.0;
            let base = nodes.len();
            nodes.resize(base + lambda, 0.0);
            for j in (0..lambda).rev() {
                prod *= v[j];
                nodes[base + j] = prod;
            }
        }
        Self { lambda, nodes, weights }
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Iterate over `(ordered μ slice, weight)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.nodes
            .chunks_exact(self.lambda)
            .zip(self.weights.iter().copied())
    }

    /// Apply the rule to a complex-valued integrand.
    pub fn apply<F: FnMut(&[f64]) -> Complex64>(&self, mut f: F) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (mu, w) in self.iter() {
            acc += w * f(mu);
        }
        acc
    }
}

fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut candidate: u64 = 2;
    while out.len() < count {
        if out.iter().all(|&p| candidate % p != 0) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

/// Integrate `f` over the ordered λ-simplex. `λ = 0` returns `f(&[])`
/// exactly. The result is checked against a refined rule; failure to agree
/// within `tol` is a convergence error.
pub fn simplex_integrate<F: FnMut(&[f64]) -> Complex64>(
    mut f: F,
    lambda: usize,
    scheme: &QuadratureScheme,
    tol: f64,
) -> Result<Complex64> {
    if tol <= 0.0 {
        return Err(QrmError::InvalidArgument("tol must be positive".into()));
    }
    if lambda == 0 {
        return Ok(f(&[]));
    }
    scheme.validate()?;
    let coarse = SimplexRule::new(lambda, scheme);
    let refined = match scheme.source(lambda) {
        NodeSource::TensorGauss(q) => SimplexRule::tensor_gauss(lambda, q + 2),
        NodeSource::Lattice(n) => SimplexRule::lattice(lambda, 2 * n),
    };
    let a = coarse.apply(&mut f);
    let b = refined.apply(&mut f);
    let scale = b.norm().max(1.0 / factorial(lambda));
    if (a - b).norm() > tol * scale {
        return Err(QrmError::Convergence(format!(
            "simplex quadrature at λ = {lambda} did not meet tol = {tol:.2e} \
             (refinement difference {:.2e})",
            (a - b).norm()
        )));
    }
    Ok(b)
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
