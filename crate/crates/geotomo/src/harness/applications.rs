//! Applications: containment, slicing, mean value, hull distance,
//! minimal projection, and isotropic position.

use super::nets::{DirectionNet, SubspaceNet};
use super::suite::{seconds_since, RunConfig};
use crate::bodies::{make_catalog_body, Density, StarBody, Subspace};
use crate::brunn::projection_volume;
use crate::ellipsoid::{dovr_bp_bound, dvr_projection_bound, ovr};
use crate::error::{Error, Result};
use crate::radon::constants::{c_n1, gamma_nk};
use crate::radon::{
    covariance_matrix, integrate_body, integrate_section, section_ratio, Estimate, Stream,
};
use crate::report::{ConstantUse, InequalityReport, ReportInputs};
use nalgebra::DMatrix;
use std::time::Instant;

fn check_codim(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::Config {
            field: "k".into(),
            reason: format!("codimension must lie in 1..{n}"),
        });
    }
    Ok(())
}

/// K inside L turns the section quotient bound into a direct comparison:
/// int_K f <= (n/(n-k)) d_ovr(K)^k |K|^{k/n} (int_L f)^{(n-k)/n}.
/// Containment is verified on the direction net first.
pub fn check_containment_sections(
    k_body: &StarBody,
    l_body: &StarBody,
    f: &Density,
    k: usize,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    let n = k_body.dim();
    if l_body.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: l_body.dim(),
        });
    }
    check_codim(n, k)?;
    if !f.central_normalized() {
        return Err(Error::Normalization(format!(
            "density {} must have sup = value at the origin = 1",
            f.tag()
        )));
    }
    let mc = cfg.mc();
    let net = DirectionNet::for_bodies(&[k_body, l_body], cfg.directions, &mc, Stream::new(instance, 4));
    for theta in net.iter() {
        if k_body.radial(theta) > l_body.radial(theta) * (1.0 + 1e-9) {
            return Err(Error::Config {
                field: "bodies".into(),
                reason: format!("{} is not contained in {}", k_body.tag(), l_body.tag()),
            });
        }
    }
    let dovr = dovr_bp_bound(k_body, &cfg.loewner())?;
    let lhs = integrate_body(k_body, f, cfg.samples, &mc, Stream::new(instance, 0));
    let outer = integrate_body(l_body, f, cfg.samples, &mc, Stream::new(instance, 1));
    let cfac = n as f64 / (n - k) as f64;
    let dk = dovr.value.powi(k as i32);
    let rhs = outer
        .powf((n - k) as f64 / n as f64)
        .scale(cfac * dk * k_body.volume().powf(k as f64 / n as f64));

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "containment-sections",
        body_k: k_body.tag(),
        body_l: Some(l_body.tag()),
        n,
        k: Some(k),
        p: None,
        lhs,
        rhs,
        constants: vec![
            ConstantUse::new("n/(n-k)", cfac, "dimensional factor"),
            ConstantUse::new("d_ovr(K)^k", dk, &dovr.provenance),
        ],
        exact_bound: dovr.is_exact(),
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

/// Slicing: |K|^{(n-k)/n} against the maximal section, with constant
/// 2 d_ovr for hyperplanes and (n/(n-k)) gamma_{n,k} d_ovr^k in general.
pub fn check_slicing(
    body: &StarBody,
    k: usize,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    let n = body.dim();
    check_codim(n, k)?;
    let mc = cfg.mc();
    let dovr = dovr_bp_bound(body, &cfg.loewner())?;
    let one = Density::constant(1.0);
    let net = SubspaceNet::for_bodies(&[body], n - k, cfg.subspaces, &mc, Stream::new(instance, 5))?;
    let mut best: Option<Estimate> = None;
    for (j, h) in net.iter().enumerate() {
        let sect = integrate_section(
            body,
            h,
            &one,
            cfg.samples_per_section,
            &mc,
            Stream::new(instance, 16 + j as u16),
        );
        if best.as_ref().map_or(true, |b| sect.value > b.value) {
            best = Some(sect);
        }
    }
    let best = best.ok_or_else(|| Error::Degenerate("empty subspace net".into()))?;
    let dk = dovr.value.powi(k as i32);
    let cfac = if k == 1 {
        2.0
    } else {
        n as f64 / (n - k) as f64 * gamma_nk(n, k)
    };
    let rhs = best.scale(cfac * dk);
    let lhs = Estimate::exact(body.volume().powf((n - k) as f64 / n as f64));

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "slicing",
        body_k: body.tag(),
        body_l: None,
        n,
        k: Some(k),
        p: None,
        lhs,
        rhs,
        constants: vec![
            ConstantUse::new("slicing factor", cfac, "closed form"),
            ConstantUse::new("d_ovr(K)^k", dk, &dovr.provenance),
        ],
        exact_bound: dovr.is_exact(),
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

/// Mean value: the body average of f against the best section average.
pub fn check_mean_value(
    body: &StarBody,
    f: &Density,
    k: usize,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    let n = body.dim();
    check_codim(n, k)?;
    let mc = cfg.mc();
    let dovr = dovr_bp_bound(body, &cfg.loewner())?;
    let one = Density::constant(1.0);
    let lhs = integrate_body(body, f, cfg.samples, &mc, Stream::new(instance, 0))
        .scale(1.0 / body.volume());
    let net = SubspaceNet::for_bodies(&[body], n - k, cfg.subspaces, &mc, Stream::new(instance, 5))?;
    let mut best: Option<Estimate> = None;
    for (j, h) in net.iter().enumerate() {
        let sr = section_ratio(
            body,
            f,
            body,
            &one,
            h,
            cfg.samples_per_section,
            &mc,
            Stream::new(instance, 16 + j as u16),
        );
        if !sr.den.value.is_finite() || sr.den.value <= 3.0 * sr.den.std_error.max(f64::MIN_POSITIVE)
        {
            continue;
        }
        if best.as_ref().map_or(true, |b| sr.ratio.value > b.value) {
            best = Some(sr.ratio);
        }
    }
    let best = best.ok_or_else(|| Error::Degenerate("every section vanished on the net".into()))?;
    let cfac = n as f64 / (n - k) as f64;
    let dk = dovr.value.powi(k as i32);
    let rhs = best.scale(cfac * dk);

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "mean-value",
        body_k: body.tag(),
        body_l: None,
        n,
        k: Some(k),
        p: None,
        lhs,
        rhs,
        constants: vec![
            ConstantUse::new("n/(n-k)", cfac, "dimensional factor"),
            ConstantUse::new("d_ovr(K)^k", dk, &dovr.provenance),
        ],
        exact_bound: dovr.is_exact(),
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

/// Outer volume ratio of the symmetric hull of s = 2*pairs sphere points,
/// reported against a generous multiple of the sqrt(n / ln(1+s/n)) curve.
pub fn check_ovr_convex_hull(
    n: usize,
    pairs: usize,
    seed: u64,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    let tag = format!("random_polytope({n},{pairs},{seed})");
    let body = make_catalog_body(&tag)?;
    let ovr_bound = ovr(&body, &cfg.loewner())?;
    let s = 2 * pairs;
    let curve = (n as f64 / (1.0 + s as f64 / n as f64).ln()).sqrt();
    let rhs = Estimate::exact(10.0 * curve);
    let lhs = Estimate::exact(ovr_bound.value);

    let _ = instance;
    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "ovr-convex-hull",
        body_k: &tag,
        body_l: None,
        n,
        k: None,
        p: None,
        lhs,
        rhs,
        constants: vec![
            ConstantUse::new("s", s as f64, "vertex count"),
            ConstantUse::new("curve", curve, "sqrt(n/ln(1+s/n))"),
            ConstantUse::new("ovr(K)", ovr_bound.value, &ovr_bound.provenance),
        ],
        exact_bound: true,
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

/// Minimal shadow: min_xi |L|xi^perp| <= sqrt(e) d_vr(L) |L|^{(n-1)/n}.
pub fn check_min_projection(
    body: &StarBody,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    let n = body.dim();
    let dvr = dvr_projection_bound(body, 1.0, &cfg.loewner())?;
    let mc = cfg.mc();
    let net = DirectionNet::for_bodies(&[body], cfg.directions, &mc, Stream::new(instance, 4));
    let mut min_shadow = f64::INFINITY;
    for xi in net.iter() {
        min_shadow = min_shadow.min(projection_volume(body, xi)?);
    }
    let sqrt_e = 0.5f64.exp();
    let lhs = Estimate::exact(min_shadow);
    let rhs = Estimate::exact(sqrt_e * dvr.value * body.volume().powf((n - 1) as f64 / n as f64));

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "min-projection",
        body_k: body.tag(),
        body_l: None,
        n,
        k: None,
        p: None,
        lhs,
        rhs,
        constants: vec![
            ConstantUse::new("sqrt(e)", sqrt_e, "envelope of c(n,1)"),
            ConstantUse::new("c(n,1)", c_n1(n), "closed form"),
            ConstantUse::new("d_vr(L)", dvr.value, &dvr.provenance),
        ],
        exact_bound: dvr.is_exact(),
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

fn quad_form(m: &DMatrix<f64>, xi: &[f64]) -> f64 {
    let n = xi.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += xi[i] * m[(i, j)] * xi[j];
        }
    }
    acc
}

/// Worst-case propagation of per-entry errors through the quadratic form.
fn quad_form_abs(m: &DMatrix<f64>, xi: &[f64]) -> f64 {
    let n = xi.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (xi[i] * m[(i, j)] * xi[j]).abs();
        }
    }
    acc
}

/// Isotropic position: map the body to volume one with identity-multiple
/// covariance, then read the isotropic constant off the new covariance.
/// The reported inequality is the directional spread of L_K against 2%;
/// the constant value, the Hensley section products, and the outer volume
/// ratio for the Milman comparison ride along in the constants column.
pub fn check_isotropy(body: &StarBody, cfg: &RunConfig, instance: u32) -> Result<InequalityReport> {
    let start = Instant::now();
    if !body.is_symmetric() {
        return Err(Error::NotSymmetric(
            body.tag().into(),
            "isotropic position is computed for symmetric bodies only",
        ));
    }
    let n = body.dim();
    let mc = cfg.mc();
    let (cov, _) = covariance_matrix(body, cfg.samples, &mc, Stream::new(instance, 3));
    let eig = cov.clone().symmetric_eigen();
    if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(Error::Degenerate(
            "covariance estimate is not positive definite".into(),
        ));
    }
    let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.powf(-0.5)));
    let whiten = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
    let det_w: f64 = eig.eigenvalues.iter().map(|l| l.powf(-0.5)).product();
    let scale = (body.volume() * det_w).powf(-1.0 / n as f64);
    let iso = body.linear_image(&(whiten * scale))?;

    let (cov2, se2) = covariance_matrix(&iso, cfg.samples, &mc, Stream::new(instance, 8));
    let net = DirectionNet::for_bodies(&[body], 8, &mc, Stream::new(instance, 4));
    let mut min_l = f64::INFINITY;
    let mut max_l = f64::NEG_INFINITY;
    let mut se_at_extremes = 0.0;
    let mut sum_l = 0.0;
    for xi in net.iter() {
        let l = quad_form(&cov2, xi).sqrt();
        let se = quad_form_abs(&se2, xi) / (2.0 * l);
        if l < min_l {
            min_l = l;
        }
        if l > max_l {
            max_l = l;
            se_at_extremes = se;
        }
        sum_l += l;
    }
    let mean_l = sum_l / net.len() as f64;
    let spread = max_l / min_l - 1.0;
    // Rough error bar: extreme values move by about their own SE.
    let lhs = Estimate {
        value: spread,
        std_error: 2.0 * se_at_extremes / mean_l,
        samples: cfg.samples,
    };
    let rhs = Estimate::exact(0.02);

    // Hensley products over the coordinate hyperplanes.
    let one = Density::constant(1.0);
    let mut hensley_min = f64::INFINITY;
    let mut hensley_max = f64::NEG_INFINITY;
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        let h = Subspace::hyperplane(&e)?;
        let sect = integrate_section(
            &iso,
            &h,
            &one,
            cfg.samples_per_section,
            &mc,
            Stream::new(instance, 9 + i as u16),
        );
        let l = quad_form(&cov2, &e).sqrt();
        let prod = l * sect.value;
        hensley_min = hensley_min.min(prod);
        hensley_max = hensley_max.max(prod);
    }
    let ovr_bound = ovr(body, &cfg.loewner())?;

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "isotropy",
        body_k: body.tag(),
        body_l: None,
        n,
        k: None,
        p: None,
        lhs,
        rhs,
        constants: vec![
            ConstantUse::new("L_K", mean_l, "covariance of the normalized body"),
            ConstantUse::new("hensley_min", hensley_min, "L_K(xi) |K cap xi^perp|"),
            ConstantUse::new("hensley_max", hensley_max, "L_K(xi) |K cap xi^perp|"),
            ConstantUse::new("ovr(K)", ovr_bound.value, &ovr_bound.provenance),
        ],
        exact_bound: true,
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}
