//! Cross-module consistency checks that need several subsystems at once.

use num_complex::Complex64;
use qrm::heat_propagator::RabiKernelEvaluator;
use qrm::numerics::QuadratureScheme;
use qrm::params::{ModelParams, Parity, TimePoint};
use qrm::partition_zeta::partition_parity;

/// Parity decomposition at the level of a literally testable trace
/// identity: ∫ tr K(x,x,β) dx = Z₊(β) + Z₋(β).
#[test]
fn kernel_trace_equals_parity_partition_sum() {
    let p = ModelParams::new(0.7, 0.4).unwrap();
    let beta = 1.0;
    let tp = TimePoint::heat(Complex64::new(beta, 0.0)).unwrap();
    let ev = RabiKernelEvaluator::heat(&tp, &p, 1e-11, &QuadratureScheme::accurate(), 9.0).unwrap();
    let n = 321;
    let l = 8.5;
    let h = 2.0 * l / (n - 1) as f64;
    let mut trace = 0.0;
    for i in 0..n {
        let x = -l + i as f64 * h;
        let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
        let k = ev.evaluate(x, x).unwrap();
        trace += w * (k.entry(0, 0).re + k.entry(1, 1).re);
    }
    let zp = partition_parity(beta, Parity::Plus, &p, 1e-12).unwrap();
    let zm = partition_parity(beta, Parity::Minus, &p, 1e-12).unwrap();
    let total = zp + zm;
    assert!(
        (trace - total).abs() < 1e-7 * total,
        "∫tr K = {trace} vs Z₊+Z₋ = {total}"
    );
}

/// Series decay at the strong-coupling reference point (g, Δ, t) =
/// (1, 1, 1): the kernel λ-series terms fall below 1e-14 around λ ≈ 25,
/// the empirical behaviour the truncation rule relies on.
#[test]
fn kernel_series_decay_at_strong_coupling() {
    let p = ModelParams::new(1.0, 1.0).unwrap();
    let tp = TimePoint::heat(Complex64::new(1.0, 0.0)).unwrap();
    let ev = RabiKernelEvaluator::heat(&tp, &p, 1e-14, &QuadratureScheme::fast(), 2.0).unwrap();
    let k = ev.evaluate(0.4, -0.3).unwrap();
    assert!(
        (12..=32).contains(&k.terms_used),
        "terms_used = {} (expected a few dozen at tol 1e-14)",
        k.terms_used
    );
    let max_tail = k
        .tail_estimate
        .iter()
        .flatten()
        .fold(0.0f64, |a, &b| a.max(b));
    assert!(max_tail < 1e-13, "tail estimate {max_tail}");
}

/// The closed-form parity kernels against the оracle parity spectral
/// expansion at a generic point.
#[test]
fn parity_kernel_matches_oracle() {
    let p = ModelParams::new(0.7, 0.4).unwrap();
    let t = 0.8;
    let tp = TimePoint::heat(Complex64::new(t, 0.0)).unwrap();
    for parity in [Parity::Plus, Parity::Minus] {
        let oracle =
            qrm::fock_oracle::OracleKernelEvaluator::new_parity(400, parity, &p).unwrap();
        for &(x, y) in &[(0.3, -0.2), (1.1, 0.6), (-0.8, -0.5)] {
            let closed =
                qrm::heat_propagator::heat_kernel_parity(x, y, &tp, parity, &p, 1e-10).unwrap();
            let expect = oracle.parity_kernel(x, y, t, 1e-12).unwrap();
            assert!(
                (closed.re - expect).abs() < 1e-8,
                "{parity} at ({x},{y}): {closed} vs {expect}"
            );
            assert!(closed.im.abs() < 1e-12);
        }
    }
}

/// Propagator-based evolution against the oracle's spectral evolution on
/// the same grid.
#[test]
fn evolution_matches_spectral_oracle() {
    use qrm::heat_propagator::{evolve_state, EvolveKind, SampledState, UniformGrid};
    let p = ModelParams::new(0.7, 0.4).unwrap();
    let grid = UniformGrid::new(8.0, 257).unwrap();
    let psi0 = SampledState::gaussian(grid, 0.5, 0.0);
    let t = 0.5;
    let out = evolve_state(
        &psi0,
        t,
        &p,
        1e-9,
        &QuadratureScheme::fast(),
        EvolveKind::Parity(Parity::Plus),
        None,
    )
    .unwrap();
    let oracle = qrm::fock_oracle::OracleKernelEvaluator::new_parity(200, Parity::Plus, &p).unwrap();
    let xs = grid.xs();
    let spectral = oracle
        .parity_evolve_on_grid(&xs, &psi0.components[0], t)
        .unwrap();
    let spectral_state = SampledState { grid, components: vec![spectral] };
    let d = out.distance(&spectral_state);
    assert!(d < 1e-6, "‖propagator - spectral‖ = {d}");
}
