//! Seeded, splittable sample streams and the batch execution engine.
//!
//! Every estimator draws from a ChaCha stream addressed by
//! (instance, role, batch). The batch partition is fixed by the run
//! configuration, batches accumulate independently, and results merge in
//! batch order, so a run is reproducible bit for bit no matter how many
//! threads execute it. The parallel path simply maps batches onto a rayon
//! pool; without the `parallel` feature it degrades to the sequential loop.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Address of one sample stream within a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stream {
    /// Checker instance (one per suite row).
    pub instance: u32,
    /// Estimator role within the instance.
    pub role: u16,
}

impl Stream {
    pub fn new(instance: u32, role: u16) -> Self {
        Stream { instance, role }
    }

    /// Derived role, for checkers that spin up one estimator per net element.
    pub fn sub(self, offset: u16) -> Self {
        Stream {
            instance: self.instance,
            role: self.role + offset,
        }
    }

    fn id(self, batch: u16) -> u64 {
        ((self.instance as u64) << 32) | ((self.role as u64) << 16) | batch as u64
    }
}

/// Execution mode for the batch engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExecMode {
    #[default]
    Parallel,
    Sequential,
}

/// Knobs shared by all estimators in a run.
#[derive(Debug, Clone)]
pub struct McConfig {
    pub seed: u64,
    /// Number of batches a sample budget is split into. Part of the run
    /// configuration: changing it changes the streams, hence the estimates.
    pub workers: u32,
    pub mode: ExecMode,
    /// Order of the radial Gauss-Legendre rule.
    pub quad_order: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            seed: 0,
            workers: 64,
            mode: ExecMode::default(),
            quad_order: 32,
        }
    }
}

impl McConfig {
    pub fn rng(&self, stream: Stream, batch: u16) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream.id(batch));
        rng
    }
}

/// Batch results that can merge in a fixed order.
pub trait Accumulator: Send {
    fn merge(&mut self, other: Self);
}

impl Accumulator for crate::radon::estimate::BatchStats {
    fn merge(&mut self, other: Self) {
        // Resolves to the inherent method.
        crate::radon::estimate::BatchStats::merge(self, other);
    }
}

impl Accumulator for crate::radon::estimate::PairedStats {
    fn merge(&mut self, other: Self) {
        crate::radon::estimate::PairedStats::merge(self, other);
    }
}

impl<A: Accumulator> Accumulator for Vec<A> {
    fn merge(&mut self, other: Self) {
        // The reduction starts from Vec::default(), which is empty.
        if self.is_empty() {
            *self = other;
            return;
        }
        assert_eq!(self.len(), other.len());
        for (a, b) in self.iter_mut().zip(other) {
            a.merge(b);
        }
    }
}

/// Split `total` into per-batch sizes, front-loading the remainder.
pub fn partition(total: u64, workers: u32) -> Vec<u64> {
    let workers = workers.max(1).min(u16::MAX as u32) as u64;
    let base = total / workers;
    let extra = total % workers;
    (0..workers)
        .map(|i| base + u64::from(i < extra))
        .filter(|&c| c > 0)
        .collect()
}

/// Run `step` once per sample, split into seeded batches, and merge the
/// per-batch accumulators in batch order.
pub fn accumulate<A, Init, Step>(
    cfg: &McConfig,
    stream: Stream,
    total: u64,
    init: Init,
    step: Step,
) -> A
where
    A: Accumulator + Default,
    Init: Fn() -> A + Sync,
    Step: Fn(&mut A, &mut ChaCha8Rng) + Sync,
{
    let sizes = partition(total, cfg.workers);
    let run_batch = |(i, &count): (usize, &u64)| {
        let mut rng = cfg.rng(stream, i as u16);
        let mut acc = init();
        for _ in 0..count {
            step(&mut acc, &mut rng);
        }
        acc
    };
    let parts: Vec<A> = match cfg.mode {
        ExecMode::Sequential => sizes.iter().enumerate().map(run_batch).collect(),
        ExecMode::Parallel => run_parallel(&sizes, run_batch),
    };
    let mut out = A::default();
    for p in parts {
        out.merge(p);
    }
    out
}

#[cfg(feature = "parallel")]
fn run_parallel<A, F>(sizes: &[u64], run_batch: F) -> Vec<A>
where
    A: Send,
    F: Fn((usize, &u64)) -> A + Sync + Send,
{
    use rayon::prelude::*;
    sizes.par_iter().enumerate().map(run_batch).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<A, F>(sizes: &[u64], run_batch: F) -> Vec<A>
where
    A: Send,
    F: Fn((usize, &u64)) -> A + Sync + Send,
{
    sizes.iter().enumerate().map(run_batch).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radon::estimate::BatchStats;
    use rand::Rng;

    fn mean_of_uniforms(mode: ExecMode, workers: u32) -> BatchStats {
        let cfg = McConfig {
            seed: 99,
            workers,
            mode,
            quad_order: 32,
        };
        accumulate(
            &cfg,
            Stream::new(3, 1),
            50_000,
            BatchStats::default,
            |acc, rng| acc.push(rng.gen::<f64>()),
        )
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let a = mean_of_uniforms(ExecMode::Parallel, 16);
        let b = mean_of_uniforms(ExecMode::Sequential, 16);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.m2.to_bits(), b.m2.to_bits());
    }

    #[test]
    fn partition_is_exhaustive() {
        for total in [0u64, 1, 63, 64, 65, 100_000] {
            for workers in [1u32, 7, 64] {
                let sizes = partition(total, workers);
                assert_eq!(sizes.iter().sum::<u64>(), total);
            }
        }
    }

    #[test]
    fn distinct_streams_decorrelate() {
        let cfg = McConfig {
            seed: 5,
            ..McConfig::default()
        };
        let mut a = cfg.rng(Stream::new(0, 0), 0);
        let mut b = cfg.rng(Stream::new(0, 1), 0);
        let xa: f64 = a.gen();
        let xb: f64 = b.gen();
        assert_ne!(xa.to_bits(), xb.to_bits());
    }

    #[test]
    fn same_stream_reproduces() {
        let cfg = McConfig {
            seed: 5,
            ..McConfig::default()
        };
        let mut a = cfg.rng(Stream::new(7, 2), 3);
        let mut b = cfg.rng(Stream::new(7, 2), 3);
        for _ in 0..16 {
            assert_eq!(a.gen::<u64>(), b.gen::<u64>());
        }
    }
}
