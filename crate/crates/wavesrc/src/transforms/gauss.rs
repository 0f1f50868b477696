//! Gauss–Legendre quadrature on (-1, 1).

/// Nodes and weights of the n-point Gauss–Legendre rule on (-1, 1), nodes in
/// increasing order. Computed by Newton iteration on the Legendre polynomial
/// from the Chebyshev-like initial guesses, then mirrored so the rule is
/// exactly symmetric about 0.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n / 2;
    for i in 0..(n + 1) / 2 {
        // i-th root counted from the +1 end
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        // one clean-up iteration to settle the weight formula inputs
        let (p, d) = legendre_with_derivative(n, x);
        x -= p / d;
        let dp = legendre_with_derivative(n, x).1;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[half] = 0.0;
        let dp = legendre_with_derivative(n, 0.0).1;
        weights[half] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

/// Legendre polynomial P_n(x) and its derivative via the three-term
/// recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate(nodes: &[f64], weights: &[f64], f: impl Fn(f64) -> f64) -> f64 {
        nodes.iter().zip(weights).map(|(&x, &w)| w * f(x)).sum()
    }

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        for n in [2, 3, 8, 16, 33, 64] {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n}: weight sum {total}");
            for i in 0..n {
                assert_eq!(x[i], -x[n - 1 - i], "n={n}: node symmetry broken");
                assert_eq!(w[i], w[n - 1 - i], "n={n}: weight symmetry broken");
            }
            assert!(w.iter().all(|&wi| wi > 0.0));
            assert!(x.windows(2).all(|p| p[0] < p[1]), "nodes must increase");
        }
    }

    #[test]
    fn integrates_polynomials_of_degree_2n_minus_1() {
        let (x, w) = gauss_legendre(8);
        assert!((integrate(&x, &w, |t| t * t) - 2.0 / 3.0).abs() < 1e-14);
        assert!((integrate(&x, &w, |t| t.powi(4)) - 2.0 / 5.0).abs() < 1e-14);
        assert!((integrate(&x, &w, |t| t.powi(14)) - 2.0 / 15.0).abs() < 1e-13);
        assert!(integrate(&x, &w, |t| t.powi(7)).abs() < 1e-15);
        // degree 16 is beyond an 8-point rule: expect a visible error
        let e16 = integrate(&x, &w, |t| t.powi(16)) - 2.0 / 17.0;
        assert!(e16.abs() > 1e-9);
    }

    #[test]
    fn known_two_point_rule() {
        let (x, w) = gauss_legendre(2);
        let r = 1.0 / 3.0f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15);
        assert!((x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        assert!((w[1] - 1.0).abs() < 1e-15);
    }
}
