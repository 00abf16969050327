//! Gauss–Legendre nodes and weights.

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre recurrence. Deterministic
/// to the last bit for a fixed `n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre order must be >= 1");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for k in 0..m {
        // Tricomi initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // Polish once more at the converged point.
        let (p, d) = legendre_with_deriv(n, x);
        x -= p / d;
        let dp = legendre_with_deriv(n, x).1;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_deriv(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

/// Same rule scaled to `[0, 1]`.
pub fn gauss_legendre_01(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    (
        x.iter().map(|&v| 0.5 * (v + 1.0)).collect(),
        w.iter().map(|&v| 0.5 * v).collect(),
    )
}

/// Value and derivative of the Legendre polynomial `P_n` at `x`.
fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        // order n is exact through degree 2n-1
        let (x, w) = gauss_legendre(6);
        let int_x10: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(10)).sum();
        assert!((int_x10 - 2.0 / 11.0).abs() < 1e-14);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn unit_interval_rule() {
        let (x, w) = gauss_legendre_01(8);
        let int: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(3)).sum();
        assert!((int - 0.25).abs() < 1e-14);
        assert!(x.iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn high_order_node_accuracy() {
        // exp integrates to e - 1/e
        let (x, w) = gauss_legendre(24);
        let int: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.exp()).sum();
        assert!((int - (1f64.exp() - (-1f64).exp())).abs() < 1e-14);
    }
}
