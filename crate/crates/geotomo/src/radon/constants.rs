//! Dimensional constants of the section and projection formulas.
//!
//! Everything is evaluated in log space so the quantities stay finite far
//! past the dimensions where factorials overflow.

use statrs::function::gamma::ln_gamma;

/// ln of the unit-ball volume omega_n = pi^{n/2} / Gamma(n/2 + 1).
pub fn ln_omega(n: usize) -> f64 {
    assert!(n >= 1);
    let n = n as f64;
    0.5 * n * std::f64::consts::PI.ln() - ln_gamma(0.5 * n + 1.0)
}

/// Volume of the unit Euclidean ball in R^n.
pub fn omega(n: usize) -> f64 {
    ln_omega(n).exp()
}

/// gamma_{n,k} = omega_n^{(n-k)/n} / omega_{n-k}; the ball-section ratio
/// constant, strictly between e^{-k/2} and 1.
pub fn gamma_nk(n: usize, k: usize) -> f64 {
    assert!(k >= 1 && k < n, "need 1 <= k < n");
    let f = (n - k) as f64 / n as f64;
    (f * ln_omega(n) - ln_omega(n - k)).exp()
}

/// ln of the Blaschke-Petkantschin constant
/// p(n,s) = (s!)^{n-s} * prod_{j=n-s+1}^{n} (j omega_j)
///        / (prod_{j=2}^{s} (j omega_j) * omega_1).
pub fn ln_p_const(n: usize, s: usize) -> f64 {
    assert!(s >= 1 && s <= n, "need 1 <= s <= n");
    let mut lp = (n - s) as f64 * ln_gamma(s as f64 + 1.0);
    for j in (n - s + 1)..=n {
        lp += (j as f64).ln() + ln_omega(j);
    }
    for j in 2..=s {
        lp -= (j as f64).ln() + ln_omega(j);
    }
    lp - ln_omega(1)
}

pub fn p_const(n: usize, s: usize) -> f64 {
    ln_p_const(n, s).exp()
}

/// c(n,1) = omega_{n-1} / omega_n^{(n-1)/n}; bounded by sqrt(e).
pub fn c_n1(n: usize) -> f64 {
    assert!(n >= 2);
    (ln_omega(n - 1) - (n - 1) as f64 / n as f64 * ln_omega(n)).exp()
}

/// The combined constant [gamma_{n,k}^{-n} p(n, n-k)]^{1/(k(n-k))},
/// which tracks sqrt(n-k) up to modest factors.
pub fn combined_bp_constant(n: usize, k: usize) -> f64 {
    let s = n - k;
    let f = s as f64 / n as f64;
    let ln_gamma_nk = f * ln_omega(n) - ln_omega(s);
    let ln_val = (-(n as f64) * ln_gamma_nk + ln_p_const(n, s)) / (k as f64 * s as f64);
    ln_val.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn omega_closed_forms() {
        assert!((omega(1) - 2.0).abs() < 1e-14);
        assert!((omega(2) - PI).abs() < 1e-14);
        assert!((omega(3) - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((omega(4) - PI * PI / 2.0).abs() < 1e-13);
        assert!((omega(8) - PI.powi(4) / 24.0).abs() < 1e-13);
    }

    #[test]
    fn omega_stays_finite_in_high_dimension() {
        let v = omega(400);
        assert!(v > 0.0 && v.is_finite());
        assert!(ln_omega(2000).is_finite());
    }

    #[test]
    fn gamma_nk_bounds_hold_through_dimension_64() {
        for n in 2..=64 {
            for k in 1..n {
                let g = gamma_nk(n, k);
                let lower = (-(k as f64) / 2.0).exp();
                assert!(g < 1.0, "gamma({n},{k}) = {g} not < 1");
                assert!(g > lower, "gamma({n},{k}) = {g} not > e^(-k/2) = {lower}");
            }
        }
    }

    #[test]
    fn p_const_small_cases() {
        // p(2,1) = 2 omega_2 / omega_1 = pi, p(3,1) = 3 omega_3 / omega_1 = 2 pi.
        assert!((p_const(2, 1) - PI).abs() < 1e-12);
        assert!((p_const(3, 1) - 2.0 * PI).abs() < 1e-12);
        // s = n degenerates to the identity: the only n-dimensional subspace
        // is the whole space, so the constant must be 1.
        assert!((p_const(2, 2) - 1.0).abs() < 1e-12);
        assert!((p_const(5, 5) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn c_n1_bounded_by_sqrt_e() {
        let budget = (1.0f64).exp().sqrt();
        let mut max_seen: f64 = 0.0;
        for n in 2..=200 {
            let c = c_n1(n);
            assert!(c <= budget, "c({n},1) = {c} exceeds sqrt(e)");
            max_seen = max_seen.max(c);
        }
        // The bound is asymptotically sharp; make sure we got close.
        assert!(max_seen > 1.6);
    }

    #[test]
    fn combined_constant_tracks_sqrt_codim() {
        for n in 3..=20 {
            for k in 1..(n - 1) {
                let ratio = combined_bp_constant(n, k) / ((n - k) as f64).sqrt();
                assert!(
                    (0.2..=5.0).contains(&ratio),
                    "n={n} k={k}: ratio {ratio} outside envelope"
                );
            }
        }
    }
}
