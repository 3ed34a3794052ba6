//! Integral transforms over star bodies: section integrals, the spherical
//! Radon transform, polar-coordinate volume, and the Blaschke-Petkantschin
//! consistency check.
//!
//! Every estimator integrates the radial direction with Gauss-Legendre and
//! leaves only the spherical average to Monte Carlo. Directions are drawn in
//! antithetic pairs +-theta (one Welford value per pair; reported sample
//! counts stay in raw draws), except for the Blaschke-Petkantschin right-hand
//! side, whose integrand is already flip-invariant.

pub mod constants;
mod estimate;
mod mc;

pub use estimate::{BatchStats, Estimate, PairedStats};
pub use mc::{accumulate, partition, Accumulator, ExecMode, McConfig, Stream};

use crate::bodies::{Density, StarBody, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{norm, simplex_volume_from_edges};
use crate::quad::GaussLegendre;
use nalgebra::DMatrix;
use rand::Rng;

fn gauss_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    let u: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let v: f64 = rng.gen();
    let r = (-2.0 * u.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * v;
    (r * t.cos(), r * t.sin())
}

/// Uniform point on S^{n-1}.
pub fn sample_sphere<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let mut x = Vec::with_capacity(n);
        while x.len() < n {
            let (a, b) = gauss_pair(rng);
            x.push(a);
            if x.len() < n {
                x.push(b);
            }
        }
        let s = norm(&x);
        if s > 1e-8 {
            x.iter_mut().for_each(|v| *v /= s);
            return x;
        }
    }
}

/// Haar-distributed m-dimensional subspace of R^n (QR of a Gaussian matrix,
/// with the sign convention fixed so the draw is deterministic).
pub fn sample_grassmann<R: Rng>(n: usize, m: usize, rng: &mut R) -> Subspace {
    loop {
        let mut g = DMatrix::zeros(n, m);
        for j in 0..m {
            for i in 0..n {
                g[(i, j)] = gauss_pair(rng).0;
            }
        }
        let qr = g.qr();
        let r = qr.r();
        if (0..m).any(|j| r[(j, j)].abs() < 1e-10) {
            continue;
        }
        let mut q = qr.q();
        for j in 0..m {
            if r[(j, j)] < 0.0 {
                for i in 0..n {
                    q[(i, j)] = -q[(i, j)];
                }
            }
        }
        if let Ok(sub) = Subspace::new(q) {
            return sub;
        }
    }
}

/// Volume by the polar formula |K| = omega_n E[rho^n].
pub fn polar_volume(body: &StarBody, samples: u64, cfg: &McConfig, stream: Stream) -> Estimate {
    let n = body.dim();
    // The antithetic mate repeats the draw exactly on a symmetric body, so
    // there the budget goes to fresh directions instead.
    if body.is_symmetric() {
        let stats = accumulate(
            cfg,
            stream,
            samples,
            BatchStats::default,
            |acc: &mut BatchStats, rng| {
                let theta = sample_sphere(n, rng);
                acc.push(body.radial(&theta).powi(n as i32));
            },
        );
        return stats.to_estimate(constants::omega(n));
    }
    let pairs = samples.div_ceil(2);
    let stats = accumulate(
        cfg,
        stream,
        pairs,
        BatchStats::default,
        |acc: &mut BatchStats, rng| {
            let theta = sample_sphere(n, rng);
            let neg: Vec<f64> = theta.iter().map(|v| -v).collect();
            let rp = body.radial(&theta).powi(n as i32);
            let rm = body.radial(&neg).powi(n as i32);
            acc.push(0.5 * (rp + rm));
        },
    );
    let mut est = stats.to_estimate(constants::omega(n));
    est.samples = stats.n * 2;
    est
}

/// Integral of a density over the body; constant densities short-circuit to
/// the exact volume.
pub fn integrate_body(
    body: &StarBody,
    f: &Density,
    samples: u64,
    cfg: &McConfig,
    stream: Stream,
) -> Estimate {
    if let Some(c) = f.as_constant() {
        return Estimate::exact(c * body.volume());
    }
    integrate_body_mc(body, f, samples, cfg, stream)
}

/// Monte Carlo body integral, radial direction by quadrature:
/// int_K f = n omega_n E_theta[ int_0^rho r^{n-1} f(r theta) dr ].
pub fn integrate_body_mc(
    body: &StarBody,
    f: &Density,
    samples: u64,
    cfg: &McConfig,
    stream: Stream,
) -> Estimate {
    let n = body.dim();
    let gl = GaussLegendre::new(cfg.quad_order);
    let pairs = samples.div_ceil(2);
    let stats = accumulate(
        cfg,
        stream,
        pairs,
        BatchStats::default,
        |acc: &mut BatchStats, rng| {
            let theta = sample_sphere(n, rng);
            let neg: Vec<f64> = theta.iter().map(|v| -v).collect();
            let a = radial_integral(body, f, &theta, n, &gl);
            let b = radial_integral(body, f, &neg, n, &gl);
            acc.push(0.5 * (a + b));
        },
    );
    let mut est = stats.to_estimate(n as f64 * constants::omega(n));
    est.samples = stats.n * 2;
    est
}

fn radial_integral(
    body: &StarBody,
    f: &Density,
    dir: &[f64],
    moment_dim: usize,
    gl: &GaussLegendre,
) -> f64 {
    let rho = body.radial(dir);
    let mut x = vec![0.0; dir.len()];
    gl.integrate(0.0, rho, |r| {
        for (xi, di) in x.iter_mut().zip(dir) {
            *xi = r * di;
        }
        r.powi(moment_dim as i32 - 1) * f.eval(&x)
    })
}

/// Integral of a density over the central section K ∩ H; exact when the
/// density is constant and the section volume has a closed form.
pub fn integrate_section(
    body: &StarBody,
    h: &Subspace,
    f: &Density,
    samples: u64,
    cfg: &McConfig,
    stream: Stream,
) -> Estimate {
    if let Some(c) = f.as_constant() {
        if let Some(v) = body.section_volume_exact(h) {
            return Estimate::exact(c * v);
        }
    }
    integrate_section_mc(body, h, f, samples, cfg, stream)
}

/// Monte Carlo section integral in the polar coordinates of H.
pub fn integrate_section_mc(
    body: &StarBody,
    h: &Subspace,
    f: &Density,
    samples: u64,
    cfg: &McConfig,
    stream: Stream,
) -> Estimate {
    let m = h.dim();
    let gl = GaussLegendre::new(cfg.quad_order);
    let pairs = samples.div_ceil(2);
    let stats = accumulate(
        cfg,
        stream,
        pairs,
        BatchStats::default,
        |acc: &mut BatchStats, rng| {
            let psi = sample_sphere(m, rng);
            let dir = h.lift(&psi);
            let neg: Vec<f64> = dir.iter().map(|v| -v).collect();
            let a = radial_integral(body, f, &dir, m, &gl);
            let b = radial_integral(body, f, &neg, m, &gl);
            acc.push(0.5 * (a + b));
        },
    );
    let mut est = stats.to_estimate(m as f64 * constants::omega(m));
    est.samples = stats.n * 2;
    est
}

#[derive(Debug, Clone, Copy)]
pub struct SectionRatio {
    pub num: Estimate,
    pub den: Estimate,
    pub ratio: Estimate,
}

/// Ratio of two section integrals over the same subspace, with common random
/// numbers: both integrands see the same directions, so identical inputs
/// cancel exactly and nearby bodies give strongly correlated errors.
pub fn section_ratio(
    k: &StarBody,
    f: &Density,
    l: &StarBody,
    g: &Density,
    h: &Subspace,
    samples: u64,
    cfg: &McConfig,
    stream: Stream,
) -> SectionRatio {
    if let (Some(cf), Some(cg)) = (f.as_constant(), g.as_constant()) {
        if let (Some(vk), Some(vl)) = (k.section_volume_exact(h), l.section_volume_exact(h)) {
            return SectionRatio {
                num: Estimate::exact(cf * vk),
                den: Estimate::exact(cg * vl),
                ratio: Estimate::exact((cf * vk) / (cg * vl)),
            };
        }
    }
    let m = h.dim();
    let gl = GaussLegendre::new(cfg.quad_order);
    let pairs = samples.div_ceil(2);
    let stats = accumulate(
        cfg,
        stream,
        pairs,
        PairedStats::default,
        |acc: &mut PairedStats, rng| {
            let psi = sample_sphere(m, rng);
            let dir = h.lift(&psi);
            let neg: Vec<f64> = dir.iter().map(|v| -v).collect();
            let a = 0.5 * (radial_integral(k, f, &dir, m, &gl) + radial_integral(k, f, &neg, m, &gl));
            let b = 0.5 * (radial_integral(l, g, &dir, m, &gl) + radial_integral(l, g, &neg, m, &gl));
            acc.push(a, b);
        },
    );
    let scale = m as f64 * constants::omega(m);
    let mut num = stats.estimate_a(scale);
    let mut den = stats.estimate_b(scale);
    let mut ratio = stats.ratio(scale, scale);
    num.samples = stats.n * 2;
    den.samples = stats.n * 2;
    ratio.samples = stats.n * 2;
    SectionRatio { num, den, ratio }
}

/// Spherical Radon transform: the integral of g over the unit sphere of H.
pub fn spherical_radon<G>(
    h: &Subspace,
    g: G,
    samples: u64,
    cfg: &McConfig,
    stream: Stream,
) -> Estimate
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    let m = h.dim();
    let pairs = samples.div_ceil(2);
    let stats = accumulate(
        cfg,
        stream,
        pairs,
        BatchStats::default,
        |acc: &mut BatchStats, rng| {
            let psi = sample_sphere(m, rng);
            let x = h.lift(&psi);
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            acc.push(0.5 * (g(&x) + g(&neg)));
        },
    );
    let mut est = stats.to_estimate(m as f64 * constants::omega(m));
    est.samples = stats.n * 2;
    est
}

/// Uniform sample from K ∩ H together with the importance weight
/// omega_m rho^m (the reciprocal of the sampling density).
pub fn uniform_in_section<R: Rng>(body: &StarBody, h: &Subspace, rng: &mut R) -> (Vec<f64>, f64) {
    let m = h.dim();
    let psi = sample_sphere(m, rng);
    let dir = h.lift(&psi);
    let rho = body.radial(&dir);
    let u: f64 = rng.gen();
    let r = rho * u.powf(1.0 / m as f64);
    let x = dir.iter().map(|v| v * r).collect();
    (x, constants::omega(m) * rho.powi(m as i32))
}

/// Both sides of the Blaschke-Petkantschin identity for an s-dimensional
/// flag: (int_K f)^s against p(n,s) E_H[ prod f(x_j) w_j |conv(0,x)|^{n-s} ].
pub fn blaschke_check(
    body: &StarBody,
    f: &Density,
    s: usize,
    samples: u64,
    cfg: &McConfig,
    stream: Stream,
) -> Result<(Estimate, Estimate)> {
    let n = body.dim();
    if s < 1 || s >= n {
        return Err(Error::Config {
            field: "s".into(),
            reason: format!("flag dimension must lie in 1..{n}"),
        });
    }
    let lhs = integrate_body(body, f, samples, cfg, stream.sub(1)).powf(s as f64);
    let p = constants::p_const(n, s);
    let stats = accumulate(
        cfg,
        stream,
        samples,
        BatchStats::default,
        |acc: &mut BatchStats, rng| {
            let h = sample_grassmann(n, s, rng);
            let mut value = p;
            let mut edges = Vec::with_capacity(s);
            for _ in 0..s {
                let (x, w) = uniform_in_section(body, &h, rng);
                value *= f.eval(&x) * w;
                edges.push(x);
            }
            acc.push(value * simplex_volume_from_edges(&edges).powi(n as i32 - s as i32));
        },
    );
    Ok((lhs, stats.to_estimate(1.0)))
}

/// Second-moment matrix of the uniform measure on the body, normalized by
/// its volume: Cov_ij = (n/(n+2)) E[theta_i theta_j rho^{n+2}] / E[rho^n].
/// Returns the matrix of values and the matrix of standard errors.
pub fn covariance_matrix(
    body: &StarBody,
    samples: u64,
    cfg: &McConfig,
    stream: Stream,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = body.dim();
    let entries: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    let m = entries.len();
    let stats: Vec<PairedStats> = accumulate(
        cfg,
        stream,
        samples,
        || vec![PairedStats::default(); m],
        |acc: &mut Vec<PairedStats>, rng| {
            let theta = sample_sphere(n, rng);
            let rho = body.radial(&theta);
            let rn = rho.powi(n as i32);
            let rn2 = rho.powi(n as i32 + 2);
            for (st, &(i, j)) in acc.iter_mut().zip(&entries) {
                st.push(theta[i] * theta[j] * rn2, rn);
            }
        },
    );
    let scale = n as f64 / (n as f64 + 2.0);
    let mut cov = DMatrix::zeros(n, n);
    let mut se = DMatrix::zeros(n, n);
    for (st, &(i, j)) in stats.iter().zip(&entries) {
        let e = st.ratio(scale, 1.0);
        cov[(i, j)] = e.value;
        cov[(j, i)] = e.value;
        se[(i, j)] = e.std_error;
        se[(j, i)] = e.std_error;
    }
    (cov, se)
}
