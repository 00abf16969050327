//! Independent ground truth: truncated-Fock-basis matrices for `H_Rabi`
//! and `H_±`, their spectra, spectral-expansion kernels, partition sums
//! and counting functions.
//!
//! Everything here goes through dense symmetric diagonalization and the
//! position-space oscillator eigenfunctions — no closed-form kernel or
//! zeta machinery — so agreement with the analytic modules is a genuine
//! two-route check. Only the lowest `⌊M/2⌋` eigenvalues are trusted;
//! truncation distorts the upper edge.

use crate::error::{QrmError, Result};
use crate::params::{ModelParams, Parity};
use nalgebra::DMatrix;

/// Which operator a truncated matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// Scalar parity Hamiltonian `H_± = a†a + g(a+a†) ± ΔT̂` in the Fock
    /// basis (dimension M).
    ParityFock(Parity),
    /// Full `H = a†a + Δσ_z + g(a+a†)σ_x` in the Fock⊗spin basis
    /// (dimension 2M, spin-up block first).
    FullFock,
}

/// Dense real symmetric truncation of a Rabi Hamiltonian.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    m: usize,
    basis: BasisKind,
    matrix: DMatrix<f64>,
}

impl TruncatedOperator {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// `H_±` on the first `M` Fock states: diagonal `n ± Δ(-1)ⁿ`,
/// off-diagonal `g√(n+1)`.
pub fn parity_matrix(m: usize, parity: Parity, p: &ModelParams) -> Result<TruncatedOperator> {
    if m < 2 {
        return Err(QrmError::InvalidArgument("truncation M must be >= 2".into()));
    }
    let mut h = DMatrix::<f64>::zeros(m, m);
    let s = parity.sign();
    for n in 0..m {
        let alt = if n % 2 == 0 { 1.0 } else { -1.0 };
        h[(n, n)] = n as f64 + s * p.delta * alt;
        if n + 1 < m {
            let c = p.g * ((n + 1) as f64).sqrt();
            h[(n, n + 1)] = c;
            h[(n + 1, n)] = c;
        }
    }
    Ok(TruncatedOperator { m, basis: BasisKind::ParityFock(parity), matrix: h })
}

/// Full `H` on `M` Fock states ⊗ two spin states; spin-up block first.
pub fn full_matrix(m: usize, p: &ModelParams) -> Result<TruncatedOperator> {
    if m < 2 {
        return Err(QrmError::InvalidArgument("truncation M must be >= 2".into()));
    }
    let dim = 2 * m;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for s in 0..2usize {
        let sz = if s == 0 { 1.0 } else { -1.0 };
        for n in 0..m {
            let i = s * m + n;
            h[(i, i)] = n as f64 + p.delta * sz;
            // g(a+a†)σ_x couples (n,s) ↔ (n±1, 1-s)
            if n + 1 < m {
                let j = (1 - s) * m + n + 1;
                let c = p.g * ((n + 1) as f64).sqrt();
                h[(i, j)] = c;
                h[(j, i)] = c;
            }
        }
    }
    Ok(TruncatedOperator { m, basis: BasisKind::FullFock, matrix: h })
}

/// Ascending eigenvalues with their provenance. Only the lowest
/// `⌊dim/2⌋` values are trusted for comparisons.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<f64>,
    basis: BasisKind,
    m: usize,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn parity(&self) -> Option<Parity> {
        match self.basis {
            BasisKind::ParityFock(p) => Some(p),
            BasisKind::FullFock => None,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of trusted eigenvalues (`⌊dim/2⌋`).
    pub fn trusted_len(&self) -> usize {
        self.values.len() / 2
    }

    /// Largest trusted eigenvalue.
    pub fn trusted_edge(&self) -> f64 {
        self.values[self.trusted_len() - 1]
    }

    pub fn trusted(&self) -> &[f64] {
        &self.values[..self.trusted_len()]
    }
}

/// Full eigendecomposition (ascending values, matching eigenvector
/// columns), for kernel reconstruction.
#[derive(Debug, Clone)]
pub struct EigenDecomp {
    pub spectrum: Spectrum,
    pub vectors: DMatrix<f64>,
}

/// Ascending eigenvalues of a truncated operator.
pub fn spectrum(op: &TruncatedOperator) -> Result<Spectrum> {
    Ok(eigenpairs(op)?.spectrum)
}

/// Ascending eigenpairs of a truncated operator.
pub fn eigenpairs(op: &TruncatedOperator) -> Result<EigenDecomp> {
    let eig = op
        .matrix
        .clone()
        .try_symmetric_eigen(1e-13, 10_000)
        .ok_or_else(|| QrmError::Convergence("symmetric eigensolver did not converge".into()))?;
    let dim = op.dim();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<f64>::zeros(dim, dim);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok(EigenDecomp {
        spectrum: Spectrum { values, basis: op.basis, m: op.m },
        vectors,
    })
}

/// Normalized oscillator eigenfunction `ψ_n(x)` by stable upward
/// recurrence on the normalized values.
pub fn hermite_state(n: usize, x: f64) -> Result<f64> {
    if n > 2000 {
        return Err(QrmError::InvalidArgument(format!(
            "hermite_state supports n ≤ 2000, got {n}"
        )));
    }
    Ok(hermite_all(n, x)[n])
}

/// `ψ_0(x) … ψ_nmax(x)` in one upward pass:
/// `ψ_n = √(2/n) x ψ_{n-1} - √((n-1)/n) ψ_{n-2}`.
pub fn hermite_all(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let psi0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(psi0);
    if nmax == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x * psi0);
    for n in 2..=nmax {
        let nf = n as f64;
        let v = (2.0 / nf).sqrt() * x * out[n - 1] - ((nf - 1.0) / nf).sqrt() * out[n - 2];
        out.push(v);
    }
    out
}

/// Spectral-expansion evaluator for the oracle heat kernels: holds one
/// eigendecomposition and reconstructs `Σ_j e^{-tλ_j} φ_j(x) φ_j(y)` at
/// arbitrary points.
#[derive(Debug, Clone)]
pub struct OracleKernelEvaluator {
    decomp: EigenDecomp,
}

impl OracleKernelEvaluator {
    pub fn new_parity(m: usize, parity: Parity, p: &ModelParams) -> Result<Self> {
        Ok(Self { decomp: eigenpairs(&parity_matrix(m, parity, p)?)? })
    }

    pub fn new_full(m: usize, p: &ModelParams) -> Result<Self> {
        Ok(Self { decomp: eigenpairs(&full_matrix(m, p)?)? })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.decomp.spectrum
    }

    fn check_tail(&self, t: f64, tol: f64) -> Result<()> {
        if t <= 0.0 {
            return Err(QrmError::Domain("oracle kernel needs real t > 0".into()));
        }
        let edge = self.decomp.spectrum.trusted_edge();
        let ground = self.decomp.spectrum.values()[0];
        // weight of the first untrusted mode relative to the ground mode
        if (-t * (edge - ground)).exp() > tol {
            return Err(QrmError::Convergence(format!(
                "oracle truncation insufficient at t = {t}: tail weight {:.2e} > tol {tol:.2e}",
                (-t * (edge - ground)).exp()
            )));
        }
        Ok(())
    }

    /// Eigenfunction values `φ_j(x)` for all j (scalar parity basis).
    fn parity_states_at(&self, x: f64) -> Vec<f64> {
        let m = self.decomp.spectrum.m;
        let psi = hermite_all(m - 1, x);
        let v = &self.decomp.vectors;
        (0..m)
            .map(|j| (0..m).map(|n| v[(n, j)] * psi[n]).sum())
            .collect()
    }

    /// Spinor eigenfunction values `(φ_j↑(x), φ_j↓(x))` for all j.
    fn full_states_at(&self, x: f64) -> Vec<[f64; 2]> {
        let m = self.decomp.spectrum.m;
        let dim = 2 * m;
        let psi = hermite_all(m - 1, x);
        let v = &self.decomp.vectors;
        (0..dim)
            .map(|j| {
                let up = (0..m).map(|n| v[(n, j)] * psi[n]).sum();
                let down = (0..m).map(|n| v[(m + n, j)] * psi[n]).sum();
                [up, down]
            })
            .collect()
    }

    /// Parity heat kernel `⟨x|e^{-tH_±}|y⟩`.
    pub fn parity_kernel(&self, x: f64, y: f64, t: f64, tol: f64) -> Result<f64> {
        if !matches!(self.decomp.spectrum.basis, BasisKind::ParityFock(_)) {
            return Err(QrmError::InvalidArgument("parity_kernel needs a parity decomposition".into()));
        }
        self.check_tail(t, tol)?;
        let fx = self.parity_states_at(x);
        let fy = self.parity_states_at(y);
        let vals = self.decomp.spectrum.values();
        let ground = vals[0];
        let mut acc = 0.0;
        for j in 0..vals.len() {
            acc += (-t * (vals[j] - ground)).exp() * fx[j] * fy[j];
        }
        Ok(acc * (-t * ground).exp())
    }

    /// Full 2×2 heat kernel `⟨x|e^{-tH}|y⟩` in the σ_z basis.
    pub fn full_kernel(&self, x: f64, y: f64, t: f64, tol: f64) -> Result<[[f64; 2]; 2]> {
        if self.decomp.spectrum.basis != BasisKind::FullFock {
            return Err(QrmError::InvalidArgument("full_kernel needs the full decomposition".into()));
        }
        self.check_tail(t, tol)?;
        let fx = self.full_states_at(x);
        let fy = self.full_states_at(y);
        let vals = self.decomp.spectrum.values();
        let ground = vals[0];
        let mut acc = [[0.0; 2]; 2];
        for j in 0..vals.len() {
            let w = (-t * (vals[j] - ground)).exp();
            for a in 0..2 {
                for b in 0..2 {
                    acc[a][b] += w * fx[j][a] * fy[j][b];
                }
            }
        }
        let scale = (-t * ground).exp();
        for row in acc.iter_mut() {
            for v in row.iter_mut() {
                *v *= scale;
            }
        }
        Ok(acc)
    }

    /// Evolve a sampled state spectrally: `ψ_t = Σ_j e^{-itλ_j}⟨φ_j,ψ₀⟩φ_j`
    /// with the inner product taken by trapezoid on the supplied grid.
    /// Independent check for the propagator-based evolution.
    pub fn parity_evolve_on_grid(
        &self,
        xs: &[f64],
        psi0: &[num_complex::Complex64],
        t: f64,
    ) -> Result<Vec<num_complex::Complex64>> {
        use num_complex::Complex64;
        if xs.len() != psi0.len() || xs.len() < 2 {
            return Err(QrmError::InvalidArgument("grid/state size mismatch".into()));
        }
        let h = xs[1] - xs[0];
        let states: Vec<Vec<f64>> = xs.iter().map(|&x| self.parity_states_at(x)).collect();
        let vals = self.decomp.spectrum.values();
        let nj = vals.len();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); nj];
        for (i, &x) in xs.iter().enumerate() {
            let w = if i == 0 || i == xs.len() - 1 { 0.5 * h } else { h };
            let _ = x;
            for (j, c) in coeffs.iter_mut().enumerate() {
                *c += w * states[i][j] * psi0[i];
            }
        }
        let mut out = vec![Complex64::new(0.0, 0.0); xs.len()];
        for j in 0..nj {
            let phase = Complex64::new(0.0, -t * vals[j]).exp();
            let cj = coeffs[j] * phase;
            for (i, o) in out.iter_mut().enumerate() {
                *o += cj * states[i][j];
            }
        }
        Ok(out)
    }
}

/// One-shot oracle heat kernel (spec operation form). Prefer the
/// evaluator for repeated points: the eigendecomposition dominates.
pub fn oracle_heat_kernel_full(
    x: f64,
    y: f64,
    t: f64,
    m: usize,
    p: &ModelParams,
    tol: f64,
) -> Result<[[f64; 2]; 2]> {
    OracleKernelEvaluator::new_full(m, p)?.full_kernel(x, y, t, tol)
}

pub fn oracle_heat_kernel_parity(
    x: f64,
    y: f64,
    t: f64,
    m: usize,
    parity: Parity,
    p: &ModelParams,
    tol: f64,
) -> Result<f64> {
    OracleKernelEvaluator::new_parity(m, parity, p)?.parity_kernel(x, y, t, tol)
}

/// Number of trusted eigenvalues `≤ T`. Errors if `T` reaches beyond the
/// trusted truncation edge.
pub fn counting(t_level: f64, spec: &Spectrum) -> Result<usize> {
    if t_level > spec.trusted_edge() {
        return Err(QrmError::Domain(format!(
            "counting level {t_level} beyond trusted edge {}",
            spec.trusted_edge()
        )));
    }
    Ok(spec.trusted().iter().take_while(|&&v| v <= t_level).count())
}

/// Oracle Dirichlet sum `Σ_j (λ_j + τ)^{-s}` over the trusted spectrum,
/// continued past the truncation edge with the Weyl-density tail
/// `d·(E+τ)^{1-s}/(s-1)` (`d` = 2 levels per unit for the full spectrum,
/// 1 per parity). Returns `(value, tail_uncertainty)`; the uncertainty is
/// the next-order term of the Euler–Maclaurin continuation.
pub fn oracle_zeta_dirichlet(s: f64, tau: f64, spec: &Spectrum) -> Result<(f64, f64)> {
    if s <= 1.0 {
        return Err(QrmError::InvalidArgument("Dirichlet sum needs s > 1".into()));
    }
    let trusted = spec.trusted();
    if trusted[0] + tau <= 0.0 {
        return Err(QrmError::Domain(format!(
            "τ = {tau} does not keep λ₁ + τ positive"
        )));
    }
    let value: f64 = trusted.iter().map(|&l| (l + tau).powf(-s)).sum();
    let density = match spec.parity() {
        Some(_) => 1.0,
        None => 2.0,
    };
    let k = trusted.len();
    let gap = (trusted[k - 1] - trusted[k - 6]) / 5.0;
    let edge = trusted[k - 1] + 0.5 * gap;
    let tail = density * (edge + tau).powf(1.0 - s) / (s - 1.0);
    let uncertainty = s * tail * gap / (edge + tau);
    Ok((value + tail, uncertainty))
}

/// Trusted partition sum `Σ_j e^{-βλ_j}` with a geometric bound on the
/// neglected tail, returned as `(value, tail_bound)`.
pub fn oracle_partition(beta: f64, spec: &Spectrum) -> Result<(f64, f64)> {
    if beta <= 0.0 {
        return Err(QrmError::InvalidArgument("β must be positive".into()));
    }
    let trusted = spec.trusted();
    let value: f64 = trusted.iter().map(|&l| (-beta * l).exp()).sum();
    let edge = spec.trusted_edge();
    // asymptotic spacing of the Rabi spectrum is ~1/2 per unit (two
    // parities interleaved); use the observed mean gap near the edge
    let k = trusted.len();
    let gap = ((trusted[k - 1] - trusted[k - 6]) / 5.0).max(0.05);
    let tail = (-beta * (edge + gap)).exp() / (1.0 - (-beta * gap).exp());
    Ok((value, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: f64, delta: f64) -> ModelParams {
        ModelParams::new(g, delta).unwrap()
    }

    #[test]
    fn parity_matrix_structure_and_2x2_example() {
        // M=2, g=1, Δ=0.5, parity +: [[0.5, 1], [1, 0.5]], eigenvalues ∓
        let op = parity_matrix(2, Parity::Plus, &params(1.0, 0.5)).unwrap();
        assert_eq!(op.matrix()[(0, 0)], 0.5);
        assert_eq!(op.matrix()[(1, 1)], 0.5);
        assert_eq!(op.matrix()[(0, 1)], 1.0);
        let spec = spectrum(&op).unwrap();
        assert!((spec.values()[0] + 0.5).abs() < 1e-12);
        assert!((spec.values()[1] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn g_zero_spectra_are_exact() {
        let p = params(0.0, 0.4);
        let spec = spectrum(&parity_matrix(30, Parity::Plus, &p).unwrap()).unwrap();
        // n + Δ(-1)^n sorted ascending
        let mut expect: Vec<f64> = (0..30)
            .map(|n| n as f64 + 0.4 * if n % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in spec.values().iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
        // full spectrum = {n±Δ}
        let fs = spectrum(&full_matrix(30, &p).unwrap()).unwrap();
        let mut expect: Vec<f64> = (0..30)
            .flat_map(|n| [n as f64 + 0.4, n as f64 - 0.4])
            .collect();
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in fs.values().iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn delta_zero_displaced_oscillator_spectrum() {
        // Δ=0: eigenvalues converge to n - g²
        let p = params(0.8, 0.0);
        let spec = spectrum(&parity_matrix(200, Parity::Plus, &p).unwrap()).unwrap();
        for n in 0..10 {
            let expect = n as f64 - p.g2();
            assert!(
                (spec.values()[n] - expect).abs() < 1e-8,
                "n={n}: {} vs {expect}",
                spec.values()[n]
            );
        }
    }

    #[test]
    fn parity_union_equals_full_spectrum() {
        let p = params(0.7, 0.4);
        let m = 80;
        let sp = spectrum(&parity_matrix(m, Parity::Plus, &p).unwrap()).unwrap();
        let sm = spectrum(&parity_matrix(m, Parity::Minus, &p).unwrap()).unwrap();
        let sf = spectrum(&full_matrix(m, &p).unwrap()).unwrap();
        let mut union: Vec<f64> = sp.values().iter().chain(sm.values()).copied().collect();
        union.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // compare the trusted lower half
        for j in 0..m / 2 {
            assert!(
                (union[j] - sf.values()[j]).abs() < 1e-10,
                "j={j}: {} vs {}",
                union[j],
                sf.values()[j]
            );
        }
    }

    #[test]
    fn eigenvalues_stable_under_truncation_growth() {
        let p = params(0.7, 0.4);
        let s1 = spectrum(&parity_matrix(100, Parity::Plus, &p).unwrap()).unwrap();
        let s2 = spectrum(&parity_matrix(200, Parity::Plus, &p).unwrap()).unwrap();
        for j in 0..25 {
            assert!(
                (s1.values()[j] - s2.values()[j]).abs() < 1e-10,
                "j={j}"
            );
        }
    }

    #[test]
    fn hermite_state_basics() {
        // ψ₀(0) = π^{-1/4}
        assert!((hermite_state(0, 0.0).unwrap() - std::f64::consts::PI.powf(-0.25)).abs() < 1e-15);
        // ladder identity x ψ_n = √(n/2) ψ_{n-1} + √((n+1)/2) ψ_{n+1}
        for &x in &[0.3, -1.7, 2.9] {
            let psi = hermite_all(12, x);
            for n in 1..11 {
                let lhs = x * psi[n];
                let rhs = (n as f64 / 2.0).sqrt() * psi[n - 1]
                    + ((n as f64 + 1.0) / 2.0).sqrt() * psi[n + 1];
                assert!((lhs - rhs).abs() < 1e-12, "n={n}, x={x}");
            }
        }
    }

    #[test]
    fn hermite_orthonormality_by_quadrature() {
        // trapezoid on [-12, 12] resolves m,n ≤ 20 comfortably
        let n_grid = 1201;
        let l = 12.0;
        let h = 2.0 * l / (n_grid - 1) as f64;
        let mut gram = [[0.0f64; 6]; 6];
        for i in 0..n_grid {
            let x = -l + i as f64 * h;
            let w = if i == 0 || i == n_grid - 1 { 0.5 * h } else { h };
            let psi = hermite_all(20, x);
            let picks = [0, 1, 2, 5, 12, 20];
            for (a, &na) in picks.iter().enumerate() {
                for (b, &nb) in picks.iter().enumerate() {
                    gram[a][b] += w * psi[na] * psi[nb];
                }
            }
        }
        for a in 0..6 {
            for b in 0..6 {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!(
                    (gram[a][b] - expect).abs() < 1e-10,
                    "({a},{b}): {}",
                    gram[a][b]
                );
            }
        }
    }

    #[test]
    fn oracle_kernel_g_zero_reduction() {
        // g=0: K = K₀ · diag(e^{-tΔ}, e^{tΔ})
        let p = params(0.0, 0.4);
        let ev = OracleKernelEvaluator::new_full(120, &p).unwrap();
        let (x, y, t) = (0.3, -0.5, 1.0);
        let k = ev.full_kernel(x, y, t, 1e-12).unwrap();
        let tp = crate::params::TimePoint::heat(num_complex::Complex64::new(t, 0.0)).unwrap();
        let k0 = crate::kernel_core::k0(x, y, &tp, &p).unwrap().re;
        assert!((k[0][0] - k0 * (-t * 0.4).exp()).abs() < 1e-9, "{} vs {}", k[0][0], k0 * (-t * 0.4f64).exp());
        assert!((k[1][1] - k0 * (t * 0.4).exp()).abs() < 1e-9);
        assert!(k[0][1].abs() < 1e-10 && k[1][0].abs() < 1e-10);
    }

    #[test]
    fn oracle_kernel_symmetry() {
        let p = params(0.7, 0.4);
        let ev = OracleKernelEvaluator::new_full(120, &p).unwrap();
        let a = ev.full_kernel(0.4, -0.8, 0.7, 1e-10).unwrap();
        let b = ev.full_kernel(-0.8, 0.4, 0.7, 1e-10).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[j][i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn counting_enumerated_examples() {
        let p = params(0.0, 0.5);
        let spec = spectrum(&parity_matrix(60, Parity::Plus, &p).unwrap()).unwrap();
        // below the ground state
        assert_eq!(counting(-1.0, &spec).unwrap(), 0);
        // enumerate n + 0.5(-1)^n ≤ 10.2 by hand: 0.5,0.5,2.5,2.5,…,8.5 → 10
        assert_eq!(counting(10.2, &spec).unwrap(), 10);
        // minus parity: -0.5,1.5,1.5,…,9.5,9.5 → 11
        let specm = spectrum(&parity_matrix(60, Parity::Minus, &p).unwrap()).unwrap();
        assert_eq!(counting(10.2, &specm).unwrap(), 11);
        // beyond trusted edge errors
        assert!(counting(40.0, &spec).is_err());
    }

    #[test]
    fn ground_state_stable_at_standard_coupling() {
        let p = params(0.7, 0.4);
        let s300 = spectrum(&parity_matrix(300, Parity::Plus, &p).unwrap()).unwrap();
        let s400 = spectrum(&parity_matrix(400, Parity::Plus, &p).unwrap()).unwrap();
        assert!((s300.values()[0] - s400.values()[0]).abs() < 1e-10);
    }
}
