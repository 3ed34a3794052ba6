//! The quotient-form section inequalities and the arbitrary-measure variant.
//!
//! All three checks share the same skeleton: an exact or estimated global
//! quantity on the left, a net maximum of section ratios on the right,
//! scaled by a dimensional factor and an outer volume ratio distance. A
//! section whose denominator vanishes numerically is dropped from the max;
//! dropping can only shrink the right-hand side, so the check stays sound.

use super::nets::SubspaceNet;
use super::suite::{div_independent, seconds_since, RunConfig};
use crate::bodies::{Density, StarBody};
use crate::ellipsoid::{dovr_bp_bound, ovr};
use crate::error::{Error, Result};
use crate::radon::{integrate_body, section_ratio, Estimate, Stream};
use crate::report::{ConstantUse, InequalityReport, ReportInputs};
use std::time::Instant;

fn validate(k_body: &StarBody, l_body: &StarBody, k: usize) -> Result<()> {
    let n = k_body.dim();
    if l_body.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: l_body.dim(),
        });
    }
    if k == 0 || k >= n {
        return Err(Error::Config {
            field: "k".into(),
            reason: format!("codimension must lie in 1..{n}"),
        });
    }
    Ok(())
}

fn require_normalized(g: &Density) -> Result<()> {
    if !g.central_normalized() {
        return Err(Error::Normalization(format!(
            "denominator density {} must have sup = value at the origin = 1",
            g.tag()
        )));
    }
    Ok(())
}

/// Max of section-integral ratios over a net, skipping sections where the
/// denominator is indistinguishable from zero.
fn net_max_ratio(
    k_body: &StarBody,
    f: &Density,
    l_body: &StarBody,
    g: &Density,
    net: &SubspaceNet,
    cfg: &RunConfig,
    instance: u32,
) -> Result<Estimate> {
    let mc = cfg.mc();
    let mut best: Option<Estimate> = None;
    for (j, h) in net.iter().enumerate() {
        let sr = section_ratio(
            k_body,
            f,
            l_body,
            g,
            h,
            cfg.samples_per_section,
            &mc,
            Stream::new(instance, 16 + j as u16),
        );
        let den_floor = 3.0 * sr.den.std_error.max(f64::MIN_POSITIVE);
        if !sr.den.value.is_finite() || sr.den.value <= den_floor {
            continue;
        }
        if best.as_ref().map_or(true, |b| sr.ratio.value > b.value) {
            best = Some(sr.ratio);
        }
    }
    best.ok_or_else(|| {
        Error::Degenerate("every denominator section vanished on the net".into())
    })
}

/// LHS: int_K f / (|K|^{k/n} (int_L g)^{(n-k)/n}).
/// RHS: (n/(n-k)) d_ovr(K)^k max_H int_{K cap H} f / int_{L cap H} g.
pub fn check_quotient_main(
    k_body: &StarBody,
    l_body: &StarBody,
    f: &Density,
    g: &Density,
    k: usize,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    validate(k_body, l_body, k)?;
    require_normalized(g)?;
    let n = k_body.dim();
    let mc = cfg.mc();
    let dovr = dovr_bp_bound(k_body, &cfg.loewner())?;

    let num = integrate_body(k_body, f, cfg.samples, &mc, Stream::new(instance, 0));
    let den_body = integrate_body(l_body, g, cfg.samples, &mc, Stream::new(instance, 1));
    let alpha = (n - k) as f64 / n as f64;
    let den = den_body
        .powf(alpha)
        .scale(k_body.volume().powf(k as f64 / n as f64));
    let lhs = div_independent(num, den);

    let net = SubspaceNet::for_bodies(
        &[k_body, l_body],
        n - k,
        cfg.subspaces,
        &mc,
        Stream::new(instance, 5),
    )?;
    let best = net_max_ratio(k_body, f, l_body, g, &net, cfg, instance)?;
    let cfac = n as f64 / (n - k) as f64;
    let dk = dovr.value.powi(k as i32);
    let rhs = best.scale(cfac * dk);

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "quotient-main",
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

/// Constant-density corollary: (|K|/|L|)^{(n-k)/n} against the max of
/// section volume ratios.
pub fn check_quotient_holder(
    k_body: &StarBody,
    l_body: &StarBody,
    k: usize,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    validate(k_body, l_body, k)?;
    let n = k_body.dim();
    let mc = cfg.mc();
    let dovr = dovr_bp_bound(k_body, &cfg.loewner())?;
    let one = Density::constant(1.0);

    let alpha = (n - k) as f64 / n as f64;
    let lhs = Estimate::exact((k_body.volume() / l_body.volume()).powf(alpha));

    let net = SubspaceNet::for_bodies(
        &[k_body, l_body],
        n - k,
        cfg.subspaces,
        &mc,
        Stream::new(instance, 5),
    )?;
    let best = net_max_ratio(k_body, &one, l_body, &one, &net, cfg, instance)?;
    let dk = dovr.value.powi(k as i32);
    let rhs = best.scale(dk);

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "quotient-holder",
        body_k: k_body.tag(),
        body_l: Some(l_body.tag()),
        n,
        k: Some(k),
        p: None,
        lhs,
        rhs,
        constants: vec![ConstantUse::new("d_ovr(K)^k", dk, &dovr.provenance)],
        exact_bound: dovr.is_exact(),
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

/// Arbitrary-measure form: the constant C_required that makes the section
/// bound an equality, which the theorem promises stays below an absolute
/// multiple of ovr(K). Reported as C_required against the budget.
pub fn check_arb_ovr(
    body: &StarBody,
    f: &Density,
    g: &Density,
    k: usize,
    budget: f64,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    validate(body, body, k)?;
    require_normalized(g)?;
    let n = body.dim();
    let mc = cfg.mc();
    let ovr_bound = ovr(body, &cfg.loewner())?;

    let num = integrate_body(body, f, cfg.samples, &mc, Stream::new(instance, 0));
    let den_body = integrate_body(body, g, cfg.samples, &mc, Stream::new(instance, 1));
    let alpha = (n - k) as f64 / n as f64;
    let den = den_body
        .powf(alpha)
        .scale(body.volume().powf(k as f64 / n as f64));
    let lhs_full = div_independent(num, den);

    let net = SubspaceNet::for_bodies(
        &[body],
        n - k,
        cfg.subspaces,
        &mc,
        Stream::new(instance, 5),
    )?;
    let best = net_max_ratio(body, f, body, g, &net, cfg, instance)?;
    let c_required = div_independent(lhs_full, best).powf(1.0 / k as f64);
    let rhs = Estimate::exact(budget);

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "arb-ovr",
        body_k: body.tag(),
        body_l: None,
        n,
        k: Some(k),
        p: None,
        lhs: c_required,
        rhs,
        constants: vec![
            ConstantUse::new("C_budget", budget, "absolute constant budget"),
            ConstantUse::new("ovr(K)", ovr_bound.value, &ovr_bound.provenance),
        ],
        exact_bound: true,
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}
