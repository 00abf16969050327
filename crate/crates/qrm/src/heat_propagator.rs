//! Assembly of the full and parity heat kernels, their Wick-rotated
//! propagators, and quadrature-based wavepacket evolution.
//!
//! Evaluators precompute, per λ, the simplex-quadrature node data
//! (scalar exponent, θ coefficients, weights with the `(tΔ)^λ` prefactor
//! folded in); each point evaluation is then a weighted sum of
//! `cosh/sinh(a·x + b·y)` over the nodes. The λ-series is stopped by the
//! same two-consecutive-small-terms rule as [`sum_lambda_series`].
//!
//! [`sum_lambda_series`]: crate::numerics::sum_lambda_series

use crate::error::{QrmError, Result};
use crate::kernel_core::{
    k0_raw, scalar_exponent_bar, scalar_exponent_tb, theta_bar_coeffs_raw, theta_coeffs_tb,
    u0_raw, TimeBasis,
};
use crate::numerics::simplex::{QuadratureScheme, SimplexRule};
use crate::params::{ModelParams, Parity, TimeDomain, TimePoint};
use num_complex::Complex64;
use rayon::prelude::*;

/// 2×2 kernel value with truncation metadata.
#[derive(Debug, Clone, Copy)]
pub struct KernelMatrix {
    /// entries indexed (↑↑, ↑↓; ↓↑, ↓↓) in the σ_z basis
    pub entries: [[Complex64; 2]; 2],
    pub terms_used: usize,
    pub tail_estimate: [[f64; 2]; 2],
}

impl KernelMatrix {
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn max_abs_diff(&self, other: &KernelMatrix) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        m
    }
}

/// Per-λ quadrature data with everything point-independent folded in.
struct LambdaBlock {
    lambda: usize,
    /// quadrature weight × (tΔ)^λ (or (itΔ)^λ) × e^{E_λ(μ)}
    w: Vec<Complex64>,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    /// Σ|w|, used for the precompute cutoff
    norm: f64,
}

enum KernelKind {
    Heat(Complex64),
    Propagator(f64),
}

fn build_block(
    kind: &KernelKind,
    lambda: usize,
    p: &ModelParams,
    scheme: &QuadratureScheme,
) -> LambdaBlock {
    let pref = match kind {
        KernelKind::Heat(t) => t * p.delta,
        KernelKind::Propagator(t) => Complex64::new(0.0, t * p.delta),
    };
    let pref_l = pref.powu(lambda as u32);
    if lambda == 0 {
        let (w, coeffs) = match kind {
            KernelKind::Heat(t) => {
                let tb = TimeBasis::new(*t);
                (
                    scalar_exponent_tb(0, |_| 0.0, &tb, p).exp(),
                    theta_coeffs_tb(0, |_| 0.0, &tb, p),
                )
            }
            KernelKind::Propagator(t) => (
                scalar_exponent_bar(0, |_| 0.0, *t, p).exp(),
                theta_bar_coeffs_raw(0, |_| 0.0, *t, p),
            ),
        };
        return LambdaBlock {
            lambda: 0,
            norm: w.norm(),
            w: vec![w],
            a: vec![coeffs.a],
            b: vec![coeffs.b],
        };
    }
    let rule = SimplexRule::new(lambda, scheme);
    let mut w = Vec::with_capacity(rule.len());
    let mut a = Vec::with_capacity(rule.len());
    let mut b = Vec::with_capacity(rule.len());
    let mut norm = 0.0;
    match kind {
        KernelKind::Heat(t) => {
            let tb = TimeBasis::new(*t);
            for (mu, wq) in rule.iter() {
                let getmu = |g: usize| if g == 0 { 0.0 } else { mu[g - 1] };
                let e = scalar_exponent_tb(lambda, getmu, &tb, p);
                let coeffs = theta_coeffs_tb(lambda, getmu, &tb, p);
                let weight = pref_l * wq * e.exp();
                norm += weight.norm();
                w.push(weight);
                a.push(coeffs.a);
                b.push(coeffs.b);
            }
        }
        KernelKind::Propagator(t) => {
            for (mu, wq) in rule.iter() {
                let getmu = |g: usize| if g == 0 { 0.0 } else { mu[g - 1] };
                let e = scalar_exponent_bar(lambda, getmu, *t, p);
                let coeffs = theta_bar_coeffs_raw(lambda, getmu, *t, p);
                let weight = pref_l * wq * e.exp();
                norm += weight.norm();
                w.push(weight);
                a.push(coeffs.a);
                b.push(coeffs.b);
            }
        }
    }
    LambdaBlock { lambda, w, a, b, norm }
}

/// Evaluator of the full 2×2 kernel series at a fixed time; reusable
/// across many `(x, y)` points.
pub struct RabiKernelEvaluator {
    kind: KernelKind,
    params: ModelParams,
    tol: f64,
    blocks: Vec<LambdaBlock>,
    theta_bound: f64,
}

/// Series cap for the λ-expansion; factorial decay makes 40 ample for
/// `|tΔ| ≲ 8`.
pub const LAMBDA_CAP: usize = 40;

impl RabiKernelEvaluator {
    /// Heat-kernel evaluator at complex time `t` in the heat domain.
    /// `extent` bounds the |x|, |y| the evaluator will be asked for.
    pub fn heat(
        t: &TimePoint,
        p: &ModelParams,
        tol: f64,
        scheme: &QuadratureScheme,
        extent: f64,
    ) -> Result<Self> {
        match t.domain() {
            TimeDomain::Heat | TimeDomain::Omega => {}
            TimeDomain::PropagatorReal => {
                return Err(QrmError::Domain("heat evaluator needs a heat-domain time".into()))
            }
        }
        Self::build(KernelKind::Heat(t.value()), p, tol, scheme, extent)
    }

    /// Propagator evaluator at real time `t ∉ πZ`.
    pub fn propagator(
        t: &TimePoint,
        p: &ModelParams,
        tol: f64,
        scheme: &QuadratureScheme,
        extent: f64,
    ) -> Result<Self> {
        if t.domain() != TimeDomain::PropagatorReal {
            return Err(QrmError::Domain("propagator evaluator needs a real time".into()));
        }
        Self::build(KernelKind::Propagator(t.real()), p, tol, scheme, extent)
    }

    fn build(
        kind: KernelKind,
        p: &ModelParams,
        tol: f64,
        scheme: &QuadratureScheme,
        extent: f64,
    ) -> Result<Self> {
        if tol <= 0.0 {
            return Err(QrmError::InvalidArgument("tol must be positive".into()));
        }
        scheme.validate()?;
        let mut blocks = Vec::new();
        let mut small_streak = 0;
        for lambda in 0..=LAMBDA_CAP {
            let block = build_block(&kind, lambda, p, scheme);
            // bound on the block's contribution for |x|,|y| ≤ extent
            let amp = block
                .a
                .iter()
                .zip(&block.b)
                .map(|(a, b)| (a.norm() + b.norm()) * extent)
                .fold(0.0f64, f64::max);
            let bound = block.norm * amp.min(700.0).exp();
            blocks.push(block);
            if bound < tol * 1e-4 {
                small_streak += 1;
                if small_streak >= 2 {
                    break;
                }
            } else {
                small_streak = 0;
            }
        }
        Ok(Self { kind, params: *p, tol, blocks, theta_bound: extent })
    }

    /// Kernel matrix at `(x, y)`.
    pub fn evaluate(&self, x: f64, y: f64) -> Result<KernelMatrix> {
        if x.abs() > self.theta_bound || y.abs() > self.theta_bound {
            return Err(QrmError::InvalidArgument(format!(
                "point ({x}, {y}) outside the evaluator extent {}",
                self.theta_bound
            )));
        }
        let mut e = [[Complex64::new(0.0, 0.0); 2]; 2];
        let mut small_streak = 0;
        let mut terms_used = 0;
        let mut prev_inc = f64::INFINITY;
        let mut last_inc = 0.0;
        let mut converged = false;
        let mut tail = 0.0;
        for block in &self.blocks {
            let (mut c, mut s) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for k in 0..block.w.len() {
                let th = block.a[k] * x + block.b[k] * y;
                let ep = th.exp();
                let em = 1.0 / ep;
                c += block.w[k] * (ep + em);
                s += block.w[k] * (ep - em);
            }
            c *= 0.5;
            s *= 0.5;
            let sgn = if block.lambda % 2 == 0 { 1.0 } else { -1.0 };
            e[0][0] += sgn * c;
            e[0][1] -= sgn * s;
            e[1][0] -= s;
            e[1][1] += c;
            terms_used = block.lambda + 1;
            let inc = c.norm().max(s.norm());
            let scale = e
                .iter()
                .flatten()
                .map(|v| v.norm())
                .fold(0.0f64, f64::max);
            if inc <= self.tol * scale + f64::MIN_POSITIVE {
                small_streak += 1;
                if small_streak >= 2 {
                    let ratio = if prev_inc > 0.0 { (inc / prev_inc).min(0.9) } else { 0.0 };
                    tail = inc * ratio / (1.0 - ratio);
                    converged = true;
                    break;
                }
            } else {
                small_streak = 0;
            }
            prev_inc = if inc > 0.0 { inc } else { prev_inc };
            last_inc = inc;
        }
        if !converged {
            return Err(QrmError::Convergence(format!(
                "kernel λ-series not converged after {} blocks (last increment {last_inc:.3e})",
                self.blocks.len()
            )));
        }
        let pref = match &self.kind {
            KernelKind::Heat(t) => k0_raw(x, y, *t, &self.params),
            KernelKind::Propagator(t) => u0_raw(x, y, *t, &self.params),
        };
        let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
        let mut tails = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                entries[i][j] = pref * e[i][j];
                tails[i][j] = pref.norm() * tail;
            }
        }
        Ok(KernelMatrix { entries, terms_used, tail_estimate: tails })
    }
}

/// Scalar parity-kernel evaluator:
/// `K_± = K₀(x,y) Σ (tΔ)^{2λ} Φ⁻_{2λ}(x,y) ∓ K₀(x,-y) Σ (tΔ)^{2λ+1} Φ⁺_{2λ+1}(x,-y)`,
/// with `Φ^±_λ = ∫ e^{E_λ(μ) ± θ_λ}dμ` and `K̃₀` read as `K₀`.
pub struct ParityKernelEvaluator {
    kind: KernelKind,
    params: ModelParams,
    parity: Parity,
    tol: f64,
    blocks: Vec<LambdaBlock>,
    theta_bound: f64,
}

impl ParityKernelEvaluator {
    pub fn heat(
        t: &TimePoint,
        parity: Parity,
        p: &ModelParams,
        tol: f64,
        scheme: &QuadratureScheme,
        extent: f64,
    ) -> Result<Self> {
        match t.domain() {
            TimeDomain::Heat | TimeDomain::Omega => {}
            TimeDomain::PropagatorReal => {
                return Err(QrmError::Domain("heat evaluator needs a heat-domain time".into()))
            }
        }
        Self::build(KernelKind::Heat(t.value()), parity, p, tol, scheme, extent)
    }

    pub fn propagator(
        t: &TimePoint,
        parity: Parity,
        p: &ModelParams,
        tol: f64,
        scheme: &QuadratureScheme,
        extent: f64,
    ) -> Result<Self> {
        if t.domain() != TimeDomain::PropagatorReal {
            return Err(QrmError::Domain("propagator evaluator needs a real time".into()));
        }
        Self::build(KernelKind::Propagator(t.real()), parity, p, tol, scheme, extent)
    }

    fn build(
        kind: KernelKind,
        parity: Parity,
        p: &ModelParams,
        tol: f64,
        scheme: &QuadratureScheme,
        extent: f64,
    ) -> Result<Self> {
        if tol <= 0.0 {
            return Err(QrmError::InvalidArgument("tol must be positive".into()));
        }
        scheme.validate()?;
        let mut blocks = Vec::new();
        let mut small_streak = 0;
        for lambda in 0..=LAMBDA_CAP {
            let block = build_block(&kind, lambda, p, scheme);
            let amp = block
                .a
                .iter()
                .zip(&block.b)
                .map(|(a, b)| (a.norm() + b.norm()) * extent)
                .fold(0.0f64, f64::max);
            let bound = block.norm * amp.min(700.0).exp();
            blocks.push(block);
            if bound < tol * 1e-4 {
                small_streak += 1;
                if small_streak >= 2 {
                    break;
                }
            } else {
                small_streak = 0;
            }
        }
        Ok(Self { kind, params: *p, parity, tol, blocks, theta_bound: extent })
    }

    /// Parity kernel value at `(x, y)`.
    pub fn evaluate(&self, x: f64, y: f64) -> Result<Complex64> {
        if x.abs() > self.theta_bound || y.abs() > self.theta_bound {
            return Err(QrmError::InvalidArgument(format!(
                "point ({x}, {y}) outside the evaluator extent {}",
                self.theta_bound
            )));
        }
        let (k_even, k_odd) = match &self.kind {
            KernelKind::Heat(t) => (
                k0_raw(x, y, *t, &self.params),
                k0_raw(x, -y, *t, &self.params),
            ),
            KernelKind::Propagator(t) => (
                u0_raw(x, y, *t, &self.params),
                u0_raw(x, -y, *t, &self.params),
            ),
        };
        // ∓ in front of the odd sub-series: "-" for parity +
        let odd_sign = -self.parity.sign();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut small_streak = 0;
        let mut last_inc = 0.0;
        for block in &self.blocks {
            let even = block.lambda % 2 == 0;
            // even: Φ⁻ at (x, y): exponent -θ(x,y)
            // odd:  Φ⁺ at (x, -y): exponent +θ(x,-y) = a·x - b·y
            let mut phi = Complex64::new(0.0, 0.0);
            for k in 0..block.w.len() {
                let th = if even {
                    -(block.a[k] * x + block.b[k] * y)
                } else {
                    block.a[k] * x - block.b[k] * y
                };
                phi += block.w[k] * th.exp();
            }
            let contrib = if even { k_even * phi } else { odd_sign * k_odd * phi };
            sum += contrib;
            let inc = contrib.norm();
            if inc <= self.tol * sum.norm() + f64::MIN_POSITIVE {
                small_streak += 1;
                if small_streak >= 2 {
                    return Ok(sum);
                }
            } else {
                small_streak = 0;
            }
            last_inc = inc;
        }
        Err(QrmError::Convergence(format!(
            "parity kernel series not converged after {} blocks (last increment {last_inc:.3e})",
            self.blocks.len()
        )))
    }
}

/// Heat kernel `K(x,y,t)` of `e^{-tH}` (one-shot; build an evaluator for
/// grids).
pub fn heat_kernel(
    x: f64,
    y: f64,
    t: &TimePoint,
    p: &ModelParams,
    tol: f64,
) -> Result<KernelMatrix> {
    let extent = x.abs().max(y.abs()) + 1.0;
    RabiKernelEvaluator::heat(t, p, tol, &QuadratureScheme::accurate(), extent)?.evaluate(x, y)
}

/// Parity heat kernel `K_±(x,y,t)`.
pub fn heat_kernel_parity(
    x: f64,
    y: f64,
    t: &TimePoint,
    parity: Parity,
    p: &ModelParams,
    tol: f64,
) -> Result<Complex64> {
    let extent = x.abs().max(y.abs()) + 1.0;
    ParityKernelEvaluator::heat(t, parity, p, tol, &QuadratureScheme::accurate(), extent)?
        .evaluate(x, y)
}

/// Propagator `U(x,y,t)` of `e^{-itH}` in circular form.
pub fn propagator(x: f64, y: f64, t: f64, p: &ModelParams, tol: f64) -> Result<KernelMatrix> {
    let tp = TimePoint::propagator(t)?;
    let extent = x.abs().max(y.abs()) + 1.0;
    RabiKernelEvaluator::propagator(&tp, p, tol, &QuadratureScheme::accurate(), extent)?
        .evaluate(x, y)
}

/// Parity propagator `U_±(x,y,t)`.
pub fn propagator_parity(
    x: f64,
    y: f64,
    t: f64,
    parity: Parity,
    p: &ModelParams,
    tol: f64,
) -> Result<Complex64> {
    let tp = TimePoint::propagator(t)?;
    let extent = x.abs().max(y.abs()) + 1.0;
    ParityKernelEvaluator::propagator(&tp, parity, p, tol, &QuadratureScheme::accurate(), extent)?
        .evaluate(x, y)
}

/// Uniform grid `x_i = -L + i·2L/(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub half_width: f64,
    pub points: usize,
}

impl UniformGrid {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if points < 2 || half_width <= 0.0 {
            return Err(QrmError::InvalidArgument("grid needs L > 0 and n ≥ 2".into()));
        }
        Ok(Self { half_width, points })
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.points).map(|i| -self.half_width + i as f64 * h).collect()
    }

    fn trapezoid_weight(&self, i: usize) -> f64 {
        let h = self.step();
        if i == 0 || i == self.points - 1 {
            0.5 * h
        } else {
            h
        }
    }
}

/// A wavefunction sampled on a uniform grid; one component for parity
/// states, two (σ_z basis) for the full model.
#[derive(Debug, Clone)]
pub struct SampledState {
    pub grid: UniformGrid,
    pub components: Vec<Vec<Complex64>>,
}

impl SampledState {
    /// Normalized Gaussian wavepacket
    /// `ψ₀(x) = π^{-1/4} e^{-(x-x₀)²/2} e^{ip₀x}` (single component).
    pub fn gaussian(grid: UniformGrid, x0: f64, p0: f64) -> Self {
        let norm = std::f64::consts::PI.powf(-0.25);
        let data = grid
            .xs()
            .iter()
            .map(|&x| {
                let phase = Complex64::new(0.0, p0 * x).exp();
                norm * (-0.5 * (x - x0) * (x - x0)).exp() * phase
            })
            .collect();
        Self { grid, components: vec![data] }
    }

    /// Gaussian wavepacket in the spin-up component, zero spin-down,
    /// for full-model evolution.
    pub fn gaussian_spin_up(grid: UniformGrid, x0: f64, p0: f64) -> Self {
        let mut s = Self::gaussian(grid, x0, p0);
        let zero = vec![Complex64::new(0.0, 0.0); grid.points];
        s.components.push(zero);
        s
    }

    /// L² norm by trapezoid over all components.
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for comp in &self.components {
            for (i, v) in comp.iter().enumerate() {
                acc += self.grid.trapezoid_weight(i) * v.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// L² distance to another state on the same grid.
    pub fn distance(&self, other: &SampledState) -> f64 {
        assert_eq!(self.components.len(), other.components.len());
        let mut acc = 0.0;
        for (a, b) in self.components.iter().zip(&other.components) {
            for (i, (va, vb)) in a.iter().zip(b).enumerate() {
                acc += self.grid.trapezoid_weight(i) * (va - vb).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// Which propagator drives [`evolve_state`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolveKind {
    Full,
    Parity(Parity),
}

/// Evolve a sampled state by quadrature against the propagator kernel:
/// `ψ(x,t) = ∫ U(x,y,t) ψ₀(y) dy` with trapezoid weights on the grid.
/// If `norm_drift_threshold` is set, a drift of the L² norm beyond it is
/// reported as a too-coarse-grid error.
pub fn evolve_state(
    initial: &SampledState,
    t: f64,
    p: &ModelParams,
    tol: f64,
    scheme: &QuadratureScheme,
    kind: EvolveKind,
    norm_drift_threshold: Option<f64>,
) -> Result<SampledState> {
    let tp = TimePoint::propagator(t)?;
    let grid = initial.grid;
    let xs = grid.xs();
    let extent = grid.half_width + 1e-9;
    let expected_components = match kind {
        EvolveKind::Full => 2,
        EvolveKind::Parity(_) => 1,
    };
    if initial.components.len() != expected_components {
        return Err(QrmError::InvalidArgument(format!(
            "state has {} components, expected {expected_components}",
            initial.components.len()
        )));
    }
    let components = match kind {
        EvolveKind::Full => {
            let ev = RabiKernelEvaluator::propagator(&tp, p, tol, scheme, extent)?;
            let rows: Result<Vec<[Complex64; 2]>> = xs
                .par_iter()
                .map(|&x| {
                    let mut acc = [Complex64::new(0.0, 0.0); 2];
                    let mut row_err = None;
                    for (j, &y) in xs.iter().enumerate() {
                        match ev.evaluate(x, y) {
                            Ok(m) => {
                                let w = grid.trapezoid_weight(j);
                                for (a, acc_a) in acc.iter_mut().enumerate() {
                                    for b in 0..2 {
                                        *acc_a += w * m.entries[a][b] * initial.components[b][j];
                                    }
                                }
                            }
                            Err(e) => {
                                row_err = Some(e);
                                break;
                            }
                        }
                    }
                    match row_err {
                        Some(e) => Err(e),
                        None => Ok(acc),
                    }
                })
                .collect();
            let rows = rows?;
            let mut up = Vec::with_capacity(xs.len());
            let mut down = Vec::with_capacity(xs.len());
            for r in rows {
                up.push(r[0]);
                down.push(r[1]);
            }
            vec![up, down]
        }
        EvolveKind::Parity(parity) => {
            let ev = ParityKernelEvaluator::propagator(&tp, parity, p, tol, scheme, extent)?;
            let out: Result<Vec<Complex64>> = xs
                .par_iter()
                .map(|&x| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, &y) in xs.iter().enumerate() {
                        acc += grid.trapezoid_weight(j)
                            * ev.evaluate(x, y)?
                            * initial.components[0][j];
                    }
                    Ok(acc)
                })
                .collect();
            vec![out?]
        }
    };
    let result = SampledState { grid, components };
    if let Some(threshold) = norm_drift_threshold {
        let drift = (result.norm() - initial.norm()).abs();
        if drift > threshold {
            return Err(QrmError::Convergence(format!(
                "norm drift {drift:.3e} beyond threshold {threshold:.3e}: grid too coarse"
            )));
        }
    }
    Ok(result)
}
