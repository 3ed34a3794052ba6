//! Haar-averaged section lemmas and the random-hull envelope.
//!
//! The two averaged checks estimate a Grassmannian expectation by direct
//! Haar sampling: the outer randomness is the subspace draw, so the spread
//! of per-subspace values is the reported standard error. Inner section
//! integrals use closed forms when the body has one and Monte Carlo
//! otherwise; plugging a noisy inner estimate into an n-th power biases the
//! mean upward slightly, which only makes these upper-bound checks harder
//! to pass.

use super::suite::{seconds_since, RunConfig};
use crate::bodies::{Density, StarBody};
use crate::error::{Error, Result};
use crate::hull::convex_hull;
use crate::linalg::simplex_volume_from_edges;
use crate::radon::constants::{gamma_nk, omega};
use crate::radon::{
    accumulate, integrate_body, integrate_section_mc, sample_grassmann, sample_sphere,
    Accumulator, BatchStats, Estimate, Stream,
};
use crate::report::{ConstantUse, InequalityReport, ReportInputs};
use nalgebra::DMatrix;
use rand::Rng;
use std::time::Instant;

fn section_volume(
    body: &StarBody,
    h: &crate::bodies::Subspace,
    cfg: &RunConfig,
    instance: u32,
    role: u16,
) -> f64 {
    match body.section_volume_exact(h) {
        Some(v) => v,
        None => {
            integrate_section_mc(
                body,
                h,
                &Density::constant(1.0),
                cfg.samples_per_section,
                &cfg.mc(),
                Stream::new(instance, role),
            )
            .value
        }
    }
}

/// E_H |K cap H|^n <= gamma_{n,k}^{-n} for |K| = 1.
pub fn check_grinberg(
    body: &StarBody,
    k: usize,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    let n = body.dim();
    if k == 0 || k >= n {
        return Err(Error::Config {
            field: "k".into(),
            reason: format!("codimension must lie in 1..{n}"),
        });
    }
    let scale = body.volume().powf(-1.0 / n as f64);
    let t = DMatrix::identity(n, n) * scale;
    let unit = body.linear_image(&t)?;
    let m = n - k;
    let mc = cfg.mc();
    let mut rng = mc.rng(Stream::new(instance, 6), 0);
    let mut stats = BatchStats::default();
    for j in 0..cfg.expectation_draws {
        let h = sample_grassmann(n, m, &mut rng);
        let v = section_volume(&unit, &h, cfg, instance, 16 + j as u16);
        stats.push(v.powi(n as i32));
    }
    let lhs = stats.to_estimate(1.0);
    let gamma = gamma_nk(n, k);
    let rhs = Estimate::exact(gamma.powi(-(n as i32)));

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "grinberg",
        body_k: body.tag(),
        body_l: None,
        n,
        k: Some(k),
        p: None,
        lhs,
        rhs,
        constants: vec![ConstantUse::new("gamma_{n,k}", gamma, "closed form")],
        exact_bound: true,
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

/// E_H [ ||g||_inf^{-k} (int_{K cap H} g)^n ] <= gamma_{n,k}^{-n}
/// (int_K g)^{n-k}, with the sup taken over the central section.
pub fn check_dpp(
    body: &StarBody,
    g: &Density,
    k: usize,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    let n = body.dim();
    if k == 0 || k >= n {
        return Err(Error::Config {
            field: "k".into(),
            reason: format!("codimension must lie in 1..{n}"),
        });
    }
    let m = n - k;
    let mc = cfg.mc();
    let sup = g.sup();
    let sup_k = sup.powi(k as i32);
    let mut rng = mc.rng(Stream::new(instance, 6), 0);
    let mut stats = BatchStats::default();
    for j in 0..cfg.expectation_draws {
        let h = sample_grassmann(n, m, &mut rng);
        let sect = match (g.as_constant(), body.section_volume_exact(&h)) {
            (Some(c), Some(v)) => c * v,
            _ => {
                integrate_section_mc(
                    body,
                    &h,
                    g,
                    cfg.samples_per_section,
                    &mc,
                    Stream::new(instance, 16 + j as u16),
                )
                .value
            }
        };
        stats.push(sect.powi(n as i32) / sup_k);
    }
    let lhs = stats.to_estimate(1.0);
    let total = integrate_body(body, g, cfg.samples, &mc, Stream::new(instance, 0));
    let gamma = gamma_nk(n, k);
    let rhs = total
        .powf((n - k) as f64)
        .scale(gamma.powi(-(n as i32)));

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "dpp",
        body_k: body.tag(),
        body_l: None,
        n,
        k: Some(k),
        p: None,
        lhs,
        rhs,
        constants: vec![
            ConstantUse::new("gamma_{n,k}", gamma, "closed form"),
            ConstantUse::new("sup g", sup, "central section sup"),
        ],
        exact_bound: true,
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

#[derive(Clone, Copy)]
struct Max(f64);

impl Default for Max {
    fn default() -> Self {
        Max(f64::NEG_INFINITY)
    }
}

impl Accumulator for Max {
    fn merge(&mut self, other: Self) {
        self.0 = self.0.max(other.0);
    }
}

fn uniform_in_ball<R: Rng>(m: usize, rng: &mut R) -> Vec<f64> {
    let theta = sample_sphere(m, rng);
    let r = rng.gen::<f64>().powf(1.0 / m as f64);
    theta.into_iter().map(|x| r * x).collect()
}

/// Normalized random-hull statistic: for s uniform points in B_2^m,
/// (|conv w|/|B_2^m|)^{1/m} sqrt(m) / sqrt(ln(1+s/m)) stays below an
/// absolute constant. The empirical max over the trials is reported
/// against a generous desk budget.
pub fn check_barany_furedi(
    m: usize,
    s: usize,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    if !(2..=6).contains(&m) {
        return Err(Error::Config {
            field: "m".into(),
            reason: "hull dimension must lie in 2..=6".into(),
        });
    }
    if s < m + 1 {
        return Err(Error::Config {
            field: "s".into(),
            reason: format!("need at least {} points in dimension {m}", m + 1),
        });
    }
    let mc = cfg.mc();
    let ball_vol = omega(m);
    let normalizer = (m as f64).sqrt() / (1.0 + s as f64 / m as f64).ln().sqrt();
    let max = accumulate(
        &mc,
        Stream::new(instance, 7),
        cfg.bf_trials,
        Max::default,
        |acc: &mut Max, rng| {
            let pts: Vec<Vec<f64>> = (0..s).map(|_| uniform_in_ball(m, rng)).collect();
            let vol = if s == m + 1 {
                let base = &pts[0];
                let edges: Vec<Vec<f64>> = pts[1..]
                    .iter()
                    .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                simplex_volume_from_edges(&edges)
            } else {
                // A degenerate draw has measure zero; treating a failed hull
                // as empty only lowers the max.
                convex_hull(&pts, m, false).map(|h| h.volume).unwrap_or(0.0)
            };
            let stat = (vol / ball_vol).powf(1.0 / m as f64) * normalizer;
            acc.merge(Max(stat));
        },
    );
    let lhs = Estimate::exact(max.0);
    let rhs = Estimate::exact(10.0);
    let tag = format!("ball({m},1)");

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "barany-furedi",
        body_k: &tag,
        body_l: None,
        n: m,
        k: None,
        p: None,
        lhs,
        rhs,
        constants: vec![
            ConstantUse::new("s", s as f64, "points per trial"),
            ConstantUse::new("normalizer", normalizer, "envelope scale"),
        ],
        exact_bound: true,
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::make_catalog_body;
    use crate::report::Verdict;

    fn quick() -> RunConfig {
        RunConfig {
            samples: 20_000,
            samples_per_section: 2_000,
            expectation_draws: 60,
            bf_trials: 400,
            ..RunConfig::default()
        }
    }

    #[test]
    fn grinberg_is_equality_on_the_ball() {
        let ball = make_catalog_body("ball(3,1)").unwrap();
        let r = check_grinberg(&ball, 1, &quick(), 0).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        // Normalized ball sections all have the same volume, so the mean
        // hits the bound exactly.
        assert!((r.lhs - r.rhs).abs() <= 3.0 * r.lhs_se + 1e-9 * r.rhs);
    }

    #[test]
    fn grinberg_holds_with_margin_on_the_cube() {
        let cube = make_catalog_body("cube(4,1)").unwrap();
        let r = check_grinberg(&cube, 1, &quick(), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.lhs < r.rhs);
    }

    #[test]
    fn dpp_is_equality_for_the_ball_indicator() {
        let ball = make_catalog_body("ball(3,1)").unwrap();
        let one = Density::constant(1.0);
        let r = check_dpp(&ball, &one, 1, &quick(), 2).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        let pi3 = std::f64::consts::PI.powi(3);
        assert!((r.lhs - pi3).abs() < 1e-9 * pi3);
        assert!((r.rhs - pi3).abs() < 1e-9 * pi3);
    }

    #[test]
    fn dpp_holds_for_a_gaussian_on_the_cube() {
        let cube = make_catalog_body("cube(3,2)").unwrap();
        let g = Density::gaussian();
        let r = check_dpp(&cube, &g, 1, &quick(), 3).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn hull_statistic_stays_small() {
        for (m, s) in [(2usize, 3usize), (2, 20), (3, 30), (4, 5)] {
            let r = check_barany_furedi(m, s, &quick(), 10 + s as u32).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "m={m} s={s}");
            assert!(r.lhs < 2.0, "m={m} s={s}: statistic {}", r.lhs);
            assert!(r.lhs > 0.0);
        }
    }

    #[test]
    fn degenerate_hull_dimensions_are_rejected() {
        assert!(check_barany_furedi(7, 10, &quick(), 0).is_err());
        assert!(check_barany_furedi(3, 3, &quick(), 0).is_err());
    }
}
