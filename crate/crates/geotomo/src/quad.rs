//! Gauss-Legendre quadrature on finite intervals.
//!
//! Radial integrals of the section and body estimators all reduce to smooth
//! one-dimensional integrands on [0, rho], so a fixed-order rule is exact up
//! to floating error for the polynomial cases and spectrally accurate for
//! the catalog densities.

/// Nodes and weights of the order-`order` rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let m = order.div_ceil(2);
        for i in 0..m {
            // Chebyshev initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(order, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integrate `f` over [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Value and derivative of the Legendre polynomial P_n at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
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
    fn polynomials_integrate_exactly() {
        let gl = GaussLegendre::new(32);
        for k in 0..=63u32 {
            let exact = 1.0 / (k as f64 + 1.0);
            let got = gl.integrate(0.0, 1.0, |x| x.powi(k as i32));
            assert!(
                (got - exact).abs() < 1e-13 * exact.max(1.0),
                "x^{k}: {got} vs {exact}"
            );
        }
    }

    #[test]
    fn smooth_integrand() {
        let gl = GaussLegendre::new(32);
        let got = gl.integrate(0.0, 1.0, |x| (-x * x).exp());
        let exact = 0.746_824_132_812_427_4;
        assert!((got - exact).abs() < 1e-14);
    }

    #[test]
    fn interval_mapping() {
        let gl = GaussLegendre::new(16);
        let got = gl.integrate(-2.0, 3.0, |x| x * x);
        assert!((got - (27.0 + 8.0) / 3.0).abs() < 1e-12);
    }
}
