//! Projection-body comparisons and the projection/section mixed check.

use super::nets::{DirectionNet, SubspaceNet};
use super::suite::{div_independent, seconds_since, RunConfig};
use crate::bodies::{Density, StarBody};
use crate::brunn::{p_projection_support, projection_volume_subspace};
use crate::ellipsoid::dvr_projection_bound;
use crate::error::{Error, Result};
use crate::radon::{integrate_section, Estimate, Stream};
use crate::report::{ConstantUse, InequalityReport, ReportInputs};
use std::time::Instant;

fn validate_p(n: usize, p: f64) -> Result<()> {
    if !(1.0..n as f64).contains(&p) {
        return Err(Error::Config {
            field: "p".into(),
            reason: format!("p must lie in [1, {n})"),
        });
    }
    Ok(())
}

/// (|K|/|L|)^{(n-p)/(pn)} <= d_vr(L) max_xi h_{Pi_p K}(xi) / h_{Pi_p L}(xi).
pub fn check_main_proj(
    k_body: &StarBody,
    l_body: &StarBody,
    p: f64,
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
    validate_p(n, p)?;
    let dvr = dvr_projection_bound(l_body, p, &cfg.loewner())?;
    let mc = cfg.mc();
    let net = DirectionNet::for_bodies(&[k_body, l_body], cfg.directions, &mc, Stream::new(instance, 4));
    let mut max_ratio = f64::NEG_INFINITY;
    for xi in net.iter() {
        let hk = p_projection_support(k_body, xi, p)?;
        let hl = p_projection_support(l_body, xi, p)?;
        max_ratio = max_ratio.max(hk / hl);
    }
    let exponent = (n as f64 - p) / (p * n as f64);
    let lhs = Estimate::exact((k_body.volume() / l_body.volume()).powf(exponent));
    let rhs = Estimate::exact(dvr.value * max_ratio);

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "main-proj",
        body_k: k_body.tag(),
        body_l: Some(l_body.tag()),
        n,
        k: None,
        p: Some(p),
        lhs,
        rhs,
        constants: vec![ConstantUse::new("d_vr(L)", dvr.value, &dvr.provenance)],
        exact_bound: dvr.is_exact(),
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

/// Dominated projections force a volume comparison: if
/// h_{Pi_p K} <= h_{Pi_p L} on the net, then |K| <= d_vr(L)^{pn/(n-p)} |L|.
/// The hypothesis is verified pointwise and its failure is a config error,
/// not a violation.
pub fn check_proj_dominance(
    k_body: &StarBody,
    l_body: &StarBody,
    p: f64,
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
    validate_p(n, p)?;
    let dvr = dvr_projection_bound(l_body, p, &cfg.loewner())?;
    let mc = cfg.mc();
    let net = DirectionNet::for_bodies(&[k_body, l_body], cfg.directions, &mc, Stream::new(instance, 4));
    for xi in net.iter() {
        let hk = p_projection_support(k_body, xi, p)?;
        let hl = p_projection_support(l_body, xi, p)?;
        if hk > hl * (1.0 + 1e-9) {
            return Err(Error::Config {
                field: "bodies".into(),
                reason: format!(
                    "projection dominance fails: {} exceeds {} on the net",
                    k_body.tag(),
                    l_body.tag()
                ),
            });
        }
    }
    let lhs = Estimate::exact(k_body.volume());
    let power = p * n as f64 / (n as f64 - p);
    let rhs = Estimate::exact(dvr.value.powf(power) * l_body.volume());

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "proj-dominance",
        body_k: k_body.tag(),
        body_l: Some(l_body.tag()),
        n,
        k: None,
        p: Some(p),
        lhs,
        rhs,
        constants: vec![ConstantUse::new(
            "d_vr(L)^{pn/(n-p)}",
            dvr.value.powf(power),
            &dvr.provenance,
        )],
        exact_bound: dvr.is_exact(),
        seconds: seconds_since(cfg.timing, start),
        seed: cfg.seed,
    }))
}

/// (|K|/|D|)^{(n-k)/n} <= max_H |K|H| / |D cap H| over (n-k)-subspaces:
/// shadows of K against sections of D.
pub fn check_proj_section_mixed(
    k_body: &StarBody,
    d_body: &StarBody,
    k: usize,
    cfg: &RunConfig,
    instance: u32,
) -> Result<InequalityReport> {
    let start = Instant::now();
    let n = k_body.dim();
    if d_body.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: d_body.dim(),
        });
    }
    if k == 0 || k >= n {
        return Err(Error::Config {
            field: "k".into(),
            reason: format!("codimension must lie in 1..{n}"),
        });
    }
    let m = n - k;
    let mc = cfg.mc();
    let one = Density::constant(1.0);
    let net = SubspaceNet::for_bodies(&[k_body, d_body], m, cfg.subspaces, &mc, Stream::new(instance, 5))?;
    let mut best: Option<Estimate> = None;
    for (j, h) in net.iter().enumerate() {
        let shadow = Estimate::exact(projection_volume_subspace(k_body, h)?);
        let sect = integrate_section(
            d_body,
            h,
            &one,
            cfg.samples_per_section,
            &mc,
            Stream::new(instance, 16 + j as u16),
        );
        if !sect.value.is_finite() || sect.value <= 3.0 * sect.std_error.max(f64::MIN_POSITIVE) {
            continue;
        }
        let ratio = div_independent(shadow, sect);
        if best.as_ref().map_or(true, |b| ratio.value > b.value) {
            best = Some(ratio);
        }
    }
    let rhs = best.ok_or_else(|| {
        Error::Degenerate("every section of the dividing body vanished on the net".into())
    })?;
    let lhs = Estimate::exact((k_body.volume() / d_body.volume()).powf(m as f64 / n as f64));

    Ok(InequalityReport::from_inputs(ReportInputs {
        check_id: "proj-section-mixed",
        body_k: k_body.tag(),
        body_l: Some(d_body.tag()),
        n,
        k: Some(k),
        p: None,
        lhs,
        rhs,
        constants: Vec::new(),
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
            samples: 10_000,
            samples_per_section: 2_000,
            subspaces: 4,
            directions: 16,
            ..RunConfig::default()
        }
    }

    #[test]
    fn equal_bodies_sit_exactly_at_the_ratio_one_point() {
        let cube = make_catalog_body("cube(3,1)").unwrap();
        let r = check_main_proj(&cube, &cube, 1.0, &quick(), 0).unwrap();
        assert_eq!(r.lhs, 1.0);
        assert!(r.rhs >= 1.0);
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn ball_against_cube_zonotope_path_is_exact() {
        let ball = make_catalog_body("ball(3,1)").unwrap();
        let cube = make_catalog_body("cube(3,1)").unwrap();
        let r = check_main_proj(&ball, &cube, 1.0, &quick(), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.rhs_se, 0.0);
    }

    #[test]
    fn dominated_projections_bound_the_volume() {
        let cross = make_catalog_body("lp_ball(3,1)").unwrap();
        let ball = make_catalog_body("ball(3,1)").unwrap();
        let r = check_proj_dominance(&cross, &ball, 1.0, &quick(), 2).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        // Reversed pair must fail the hypothesis, not report a violation.
        assert!(matches!(
            check_proj_dominance(&ball, &cross, 1.0, &quick(), 3),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn shadows_against_sections_hold_on_the_cube_ball_pair() {
        let cube = make_catalog_body("cube(3,1)").unwrap();
        let ball = make_catalog_body("ball(3,1)").unwrap();
        let r = check_proj_section_mixed(&cube, &ball, 1, &quick(), 4).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.margin_se_units > 3.0 || r.rhs_se == 0.0);
    }

    #[test]
    fn out_of_range_p_is_rejected() {
        let cube = make_catalog_body("cube(3,1)").unwrap();
        assert!(check_main_proj(&cube, &cube, 0.5, &quick(), 5).is_err());
        assert!(check_main_proj(&cube, &cube, 3.0, &quick(), 6).is_err());
    }
}
