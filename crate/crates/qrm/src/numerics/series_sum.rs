//! Truncated summation of the λ-series with empirical tail control.
//!
//! The heat-kernel and Ω series decay factorially, but the bounding
//! constants are not available in closed form, so the stopping rule is
//! empirical: stop once two consecutive terms fall below `tol` times the
//! running magnitude, and estimate the tail from the observed decay ratio.

use crate::error::{QrmError, Result};
use num_complex::Complex64;

/// Result of a truncated series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms_used: usize,
    pub tail_estimate: f64,
}

/// Sum `Σ_{λ=0}^{∞} term(λ)` with the two-consecutive-small-terms stopping
/// rule. Fails if `lambda_cap` is reached while the last term is still
/// above threshold.
pub fn sum_lambda_series<F: FnMut(usize) -> Complex64>(
    mut term: F,
    tol: f64,
    lambda_cap: usize,
) -> Result<SeriesValue> {
    if tol <= 0.0 {
        return Err(QrmError::InvalidArgument("tol must be positive".into()));
    }
    if lambda_cap < 1 {
        return Err(QrmError::InvalidArgument("lambda_cap must be >= 1".into()));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_streak = 0usize;
    let mut prev_mag = f64::INFINITY;
    let mut last_mag = 0.0f64;
    for lambda in 0..=lambda_cap {
        let t = term(lambda);
        sum += t;
        let mag = t.norm();
        let threshold = tol * sum.norm() + f64::MIN_POSITIVE;
        if mag <= threshold {
            small_streak += 1;
        } else {
            small_streak = 0;
        }
        if small_streak >= 2 {
            // tail from the observed geometric envelope of the last terms
            let ratio = if prev_mag > 0.0 {
                (mag / prev_mag).min(0.9)
            } else {
                0.0
            };
            let tail = mag * ratio / (1.0 - ratio);
            return Ok(SeriesValue {
                value: sum,
                terms_used: lambda + 1,
                tail_estimate: tail,
            });
        }
        prev_mag = if mag > 0.0 { mag } else { prev_mag };
        last_mag = mag;
    }
    Err(QrmError::Convergence(format!(
        "λ-series not converged at λ_cap = {lambda_cap}; last |term| = {last_mag:.3e}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_series_reaches_e() {
        // term λ ↦ z^λ/λ! at z = 1
        let mut fact = 1.0;
        let v = sum_lambda_series(
            |l| {
                if l > 0 {
                    fact *= l as f64;
                }
                Complex64::new(1.0 / fact, 0.0)
            },
            1e-14,
            60,
        )
        .unwrap();
        assert!((v.value.re - std::f64::consts::E).abs() < 1e-13);
        assert!(v.tail_estimate < 1e-13);
    }

    #[test]
    fn zero_series_stops_immediately() {
        let v = sum_lambda_series(|_| Complex64::new(0.0, 0.0), 1e-10, 40).unwrap();
        assert_eq!(v.value, Complex64::new(0.0, 0.0));
        assert!(v.terms_used <= 2);
        assert_eq!(v.tail_estimate, 0.0);
    }

    #[test]
    fn divergent_series_errors_at_cap() {
        let err = sum_lambda_series(|l| Complex64::new(1.5f64.powi(l as i32), 0.0), 1e-10, 25);
        assert!(matches!(err, Err(QrmError::Convergence(_))));
    }
}
