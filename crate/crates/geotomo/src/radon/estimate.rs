//! Monte Carlo estimates and their merge rules.

use serde::Serialize;

/// A scalar estimate with a standard error and the sample count behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            std_error: 0.0,
            samples: 0,
        }
    }

    /// Pool independent estimates of the same quantity.
    ///
    /// Inverse-variance weighting when every part has a positive standard
    /// error; parts with zero error (constant integrands) make that rule
    /// degenerate, so the merge falls back to sample-count weights, which
    /// reproduces the full-sample mean for an exhaustive partition.
    pub fn pool(parts: &[Estimate]) -> Estimate {
        assert!(!parts.is_empty(), "cannot pool zero estimates");
        let samples = parts.iter().map(|e| e.samples).sum();
        if parts.iter().all(|e| e.std_error > 0.0) {
            let mut wsum = 0.0;
            let mut acc = 0.0;
            for e in parts {
                let w = 1.0 / (e.std_error * e.std_error);
                wsum += w;
                acc += w * e.value;
            }
            Estimate {
                value: acc / wsum,
                std_error: (1.0 / wsum).sqrt(),
                samples,
            }
        } else {
            let total = parts.iter().map(|e| e.samples.max(1) as f64).sum::<f64>();
            let mut value = 0.0;
            let mut var = 0.0;
            for e in parts {
                let w = e.samples.max(1) as f64 / total;
                value += w * e.value;
                var += w * w * e.std_error * e.std_error;
            }
            Estimate {
                value,
                std_error: var.sqrt(),
                samples,
            }
        }
    }

    pub fn scale(self, c: f64) -> Estimate {
        Estimate {
            value: c * self.value,
            std_error: c.abs() * self.std_error,
            samples: self.samples,
        }
    }

    /// Delta-method power: value^alpha for positive values.
    pub fn powf(self, alpha: f64) -> Estimate {
        let v = self.value.powf(alpha);
        let se = if self.value > 0.0 {
            (alpha * v / self.value).abs() * self.std_error
        } else {
            f64::NAN
        };
        Estimate {
            value: v,
            std_error: se,
            samples: self.samples,
        }
    }

    /// Standard error of the difference against an independent estimate.
    pub fn pooled_se(self, other: Estimate) -> f64 {
        self.std_error.hypot(other.std_error)
    }
}

/// Streaming mean and variance accumulator (Welford), mergeable in fixed
/// order so that parallel and sequential runs agree bitwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct BatchStats {
    pub n: u64,
    pub mean: f64,
    pub m2: f64,
}

impl BatchStats {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&mut self, other: BatchStats) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = other;
            return;
        }
        let n1 = self.n as f64;
        let n2 = other.n as f64;
        let d = other.mean - self.mean;
        let n = n1 + n2;
        self.mean += d * n2 / n;
        self.m2 += other.m2 + d * d * n1 * n2 / n;
        self.n += other.n;
    }

    /// Estimate of `scale * mean`.
    pub fn to_estimate(self, scale: f64) -> Estimate {
        let n = self.n as f64;
        let var = if self.n > 1 { self.m2 / (n - 1.0) } else { 0.0 };
        Estimate {
            value: scale * self.mean,
            std_error: scale.abs() * (var / n).sqrt(),
            samples: self.n,
        }
    }
}

/// Bivariate accumulator for common-random-number pairs; tracks the
/// covariance needed by the delta-method ratio estimate.
#[derive(Debug, Clone, Copy, Default)]
pub struct PairedStats {
    pub n: u64,
    pub mean_a: f64,
    pub mean_b: f64,
    pub m2a: f64,
    pub m2b: f64,
    pub cab: f64,
}

impl PairedStats {
    pub fn push(&mut self, a: f64, b: f64) {
        self.n += 1;
        let n = self.n as f64;
        let da = a - self.mean_a;
        let db = b - self.mean_b;
        self.mean_a += da / n;
        self.mean_b += db / n;
        let da2 = a - self.mean_a;
        let db2 = b - self.mean_b;
        self.m2a += da * da2;
        self.m2b += db * db2;
        self.cab += da * db2;
    }

    pub fn merge(&mut self, other: PairedStats) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = other;
            return;
        }
        let n1 = self.n as f64;
        let n2 = other.n as f64;
        let n = n1 + n2;
        let da = other.mean_a - self.mean_a;
        let db = other.mean_b - self.mean_b;
        self.mean_a += da * n2 / n;
        self.mean_b += db * n2 / n;
        self.m2a += other.m2a + da * da * n1 * n2 / n;
        self.m2b += other.m2b + db * db * n1 * n2 / n;
        self.cab += other.cab + da * db * n1 * n2 / n;
        self.n += other.n;
    }

    pub fn estimate_a(self, scale: f64) -> Estimate {
        BatchStats {
            n: self.n,
            mean: self.mean_a,
            m2: self.m2a,
        }
        .to_estimate(scale)
    }

    pub fn estimate_b(self, scale: f64) -> Estimate {
        BatchStats {
            n: self.n,
            mean: self.mean_b,
            m2: self.m2b,
        }
        .to_estimate(scale)
    }

    /// Delta-method estimate of (scale_a * mean_a) / (scale_b * mean_b).
    /// Identical inputs cancel exactly: the ratio is 1 with zero error.
    pub fn ratio(self, scale_a: f64, scale_b: f64) -> Estimate {
        let n = self.n as f64;
        let a = self.mean_a * scale_a;
        let b = self.mean_b * scale_b;
        let va = self.m2a / (n - 1.0).max(1.0) * scale_a * scale_a;
        let vb = self.m2b / (n - 1.0).max(1.0) * scale_b * scale_b;
        let cab = self.cab / (n - 1.0).max(1.0) * scale_a * scale_b;
        let r = a / b;
        let var = (va - 2.0 * r * cab + r * r * vb) / (b * b) / n;
        Estimate {
            value: r,
            std_error: var.max(0.0).sqrt(),
            samples: self.n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pooling_matches_full_sample() {
        // Split a fixed data set; pooled mean must match within the rule's
        // scope and errors must shrink.
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64).collect();
        let mut all = BatchStats::default();
        let mut left = BatchStats::default();
        let mut right = BatchStats::default();
        for (i, &x) in xs.iter().enumerate() {
            all.push(x);
            if i % 2 == 0 {
                left.push(x)
            } else {
                right.push(x)
            }
        }
        let pooled = Estimate::pool(&[left.to_estimate(1.0), right.to_estimate(1.0)]);
        let full = all.to_estimate(1.0);
        assert!((pooled.value - full.value).abs() < 0.5);
        assert!((pooled.std_error - full.std_error).abs() / full.std_error < 0.1);
    }

    #[test]
    fn inverse_variance_prefers_tight_parts() {
        let a = Estimate {
            value: 10.0,
            std_error: 0.1,
            samples: 100,
        };
        let b = Estimate {
            value: 20.0,
            std_error: 10.0,
            samples: 100,
        };
        let p = Estimate::pool(&[a, b]);
        assert!((p.value - 10.0).abs() < 0.01);
        assert!(p.std_error < 0.1);
    }

    #[test]
    fn zero_error_parts_fall_back_to_counts() {
        let a = Estimate {
            value: 4.0,
            std_error: 0.0,
            samples: 100,
        };
        let b = Estimate {
            value: 8.0,
            std_error: 0.0,
            samples: 300,
        };
        let p = Estimate::pool(&[a, b]);
        assert_eq!(p.value, 7.0);
        assert_eq!(p.std_error, 0.0);
    }

    #[test]
    fn merge_equals_sequential_push() {
        let xs: Vec<f64> = (0..500).map(|i| (i as f64 * 0.73).sin()).collect();
        let mut whole = BatchStats::default();
        for &x in &xs {
            whole.push(x);
        }
        let mut a = BatchStats::default();
        let mut b = BatchStats::default();
        for &x in &xs[..123] {
            a.push(x);
        }
        for &x in &xs[123..] {
            b.push(x);
        }
        a.merge(b);
        assert!((a.mean - whole.mean).abs() < 1e-12);
        assert!((a.m2 - whole.m2).abs() < 1e-9);
    }

    #[test]
    fn paired_ratio_cancels_exactly_on_identical_inputs() {
        let mut st = PairedStats::default();
        for i in 0..100 {
            let v = 1.0 + (i as f64 * 0.11).cos();
            st.push(v, v);
        }
        let r = st.ratio(2.5, 2.5);
        assert_eq!(r.value, 1.0);
        assert_eq!(r.std_error, 0.0);
    }
}
