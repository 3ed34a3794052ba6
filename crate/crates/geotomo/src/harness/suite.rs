//! Run configuration, the check dispatcher, and the default suite.

use super::applications::{
    check_containment_sections, check_isotropy, check_mean_value, check_min_projection,
    check_ovr_convex_hull, check_slicing,
};
use super::lemmas::{check_barany_furedi, check_dpp, check_grinberg};
use super::proj::{check_main_proj, check_proj_dominance, check_proj_section_mixed};
use super::quotient::{check_arb_ovr, check_quotient_holder, check_quotient_main};
use crate::bodies::{make_catalog_body, Density};
use crate::ellipsoid::LoewnerConfig;
use crate::error::{Error, Result};
use crate::radon::{Estimate, ExecMode, McConfig};
use crate::report::InequalityReport;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Whether the `seconds` column reports wall time or a fixed zero.
/// Fixed timing makes two runs of the same config byte-identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Timing {
    #[default]
    Measured,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Sampling budgets shared by every checker in a run. All fields are part
/// of the reproducibility contract: two runs agree bit for bit exactly
/// when the whole struct agrees.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub seed: u64,
    /// Monte Carlo budget for full-body integrals.
    pub samples: u64,
    /// Budget for each section estimate on a subspace net.
    pub samples_per_section: u64,
    /// Haar draws appended to the deterministic part of a subspace net.
    pub subspaces: usize,
    /// Haar draws for checks that estimate a Grassmannian expectation
    /// rather than a supremum. Those margins are often a few percent, so
    /// the outer budget must be large enough for the per-draw spread to
    /// resolve them.
    pub expectation_draws: usize,
    /// Sphere draws appended to the deterministic part of a direction net.
    pub directions: usize,
    pub workers: u32,
    pub quad_order: usize,
    pub mode: ExecMode,
    pub timing: Timing,
    /// Trials for the convex hull volume statistic.
    pub bf_trials: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            samples: 100_000,
            samples_per_section: 2_000,
            subspaces: 16,
            expectation_draws: 600,
            directions: 48,
            workers: 64,
            quad_order: 32,
            mode: ExecMode::default(),
            timing: Timing::default(),
            bf_trials: 10_000,
        }
    }
}

impl RunConfig {
    pub fn mc(&self) -> McConfig {
        McConfig {
            seed: self.seed,
            workers: self.workers,
            mode: self.mode,
            quad_order: self.quad_order,
        }
    }

    pub(crate) fn loewner(&self) -> LoewnerConfig {
        LoewnerConfig::default()
    }
}

pub(crate) fn seconds_since(timing: Timing, start: Instant) -> f64 {
    match timing {
        Timing::Measured => start.elapsed().as_secs_f64(),
        Timing::Fixed => 0.0,
    }
}

/// Quotient of two estimates with independent errors, first order.
pub(crate) fn div_independent(a: Estimate, b: Estimate) -> Estimate {
    let value = a.value / b.value;
    let ra = if a.value != 0.0 {
        a.std_error / a.value.abs()
    } else {
        0.0
    };
    let rb = if b.value != 0.0 {
        b.std_error / b.value.abs()
    } else {
        0.0
    };
    Estimate {
        value,
        std_error: value.abs() * ra.hypot(rb),
        samples: a.samples.min(b.samples),
    }
}

/// One row of a verification suite. The serialized form tags each row with
/// `check` and spells bodies as catalog descriptors and densities as
/// `gaussian`, `constant(c)`, or `half_space(axis)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum CheckSpec {
    QuotientMain {
        body_k: String,
        body_l: String,
        f: String,
        g: String,
        k: usize,
    },
    QuotientHolder {
        body_k: String,
        body_l: String,
        k: usize,
    },
    ArbOvr {
        body: String,
        f: String,
        g: String,
        k: usize,
        budget: f64,
    },
    Grinberg {
        body: String,
        k: usize,
    },
    Dpp {
        body: String,
        g: String,
        k: usize,
    },
    BaranyFuredi {
        m: usize,
        s: usize,
    },
    MainProj {
        body_k: String,
        body_l: String,
        p: f64,
    },
    ProjDominance {
        body_k: String,
        body_l: String,
        p: f64,
    },
    ProjSectionMixed {
        body_k: String,
        body_d: String,
        k: usize,
    },
    ContainmentSections {
        body_k: String,
        body_l: String,
        f: String,
        k: usize,
    },
    Slicing {
        body: String,
        k: usize,
    },
    MeanValue {
        body: String,
        f: String,
        k: usize,
    },
    OvrConvexHull {
        n: usize,
        pairs: usize,
        seed: u64,
    },
    MinProjection {
        body: String,
    },
    Isotropy {
        body: String,
    },
}

impl CheckSpec {
    pub fn id(&self) -> &'static str {
        match self {
            CheckSpec::QuotientMain { .. } => "quotient-main",
            CheckSpec::QuotientHolder { .. } => "quotient-holder",
            CheckSpec::ArbOvr { .. } => "arb-ovr",
            CheckSpec::Grinberg { .. } => "grinberg",
            CheckSpec::Dpp { .. } => "dpp",
            CheckSpec::BaranyFuredi { .. } => "barany-furedi",
            CheckSpec::MainProj { .. } => "main-proj",
            CheckSpec::ProjDominance { .. } => "proj-dominance",
            CheckSpec::ProjSectionMixed { .. } => "proj-section-mixed",
            CheckSpec::ContainmentSections { .. } => "containment-sections",
            CheckSpec::Slicing { .. } => "slicing",
            CheckSpec::MeanValue { .. } => "mean-value",
            CheckSpec::OvrConvexHull { .. } => "ovr-convex-hull",
            CheckSpec::MinProjection { .. } => "min-projection",
            CheckSpec::Isotropy { .. } => "isotropy",
        }
    }
}

/// Parse a density descriptor. `half_space(i)` takes the i-th coordinate
/// axis as its normal.
pub fn parse_density(tag: &str, n: usize) -> Result<Density> {
    let t = tag.trim();
    if t == "gaussian" {
        return Ok(Density::gaussian());
    }
    let inner = |prefix: &str| -> Option<&str> {
        t.strip_prefix(prefix)?.strip_suffix(')')
    };
    if let Some(arg) = inner("constant(").or_else(|| inner("const(")) {
        let c: f64 = arg.trim().parse().map_err(|_| Error::Config {
            field: "density".into(),
            reason: format!("bad constant in `{t}`"),
        })?;
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Config {
                field: "density".into(),
                reason: format!("constant must be positive and finite, got {c}"),
            });
        }
        return Ok(Density::constant(c));
    }
    if let Some(arg) = inner("half_space(").or_else(|| inner("halfspace(")) {
        let axis: usize = arg.trim().parse().map_err(|_| Error::Config {
            field: "density".into(),
            reason: format!("bad axis in `{t}`"),
        })?;
        if axis >= n {
            return Err(Error::Config {
                field: "density".into(),
                reason: format!("axis {axis} out of range for dimension {n}"),
            });
        }
        let mut normal = vec![0.0; n];
        normal[axis] = 1.0;
        return Ok(Density::half_space(normal));
    }
    Err(Error::Config {
        field: "density".into(),
        reason: format!("unknown density `{t}`; use gaussian, constant(c), or half_space(axis)"),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    #[serde(default)]
    pub run: RunConfig,
    pub checks: Vec<CheckSpec>,
}

/// Run a single row. `instance` fixes the random streams, so a row keeps
/// its estimates when other rows are added or removed around it only if
/// its index stays put.
pub fn run_one(spec: &CheckSpec, cfg: &RunConfig, instance: u32) -> Result<InequalityReport> {
    match spec {
        CheckSpec::QuotientMain {
            body_k,
            body_l,
            f,
            g,
            k,
        } => {
            let kb = make_catalog_body(body_k)?;
            let lb = make_catalog_body(body_l)?;
            let fd = parse_density(f, kb.dim())?;
            let gd = parse_density(g, lb.dim())?;
            check_quotient_main(&kb, &lb, &fd, &gd, *k, cfg, instance)
        }
        CheckSpec::QuotientHolder { body_k, body_l, k } => {
            let kb = make_catalog_body(body_k)?;
            let lb = make_catalog_body(body_l)?;
            check_quotient_holder(&kb, &lb, *k, cfg, instance)
        }
        CheckSpec::ArbOvr {
            body,
            f,
            g,
            k,
            budget,
        } => {
            let b = make_catalog_body(body)?;
            let fd = parse_density(f, b.dim())?;
            let gd = parse_density(g, b.dim())?;
            check_arb_ovr(&b, &fd, &gd, *k, *budget, cfg, instance)
        }
        CheckSpec::Grinberg { body, k } => {
            let b = make_catalog_body(body)?;
            check_grinberg(&b, *k, cfg, instance)
        }
        CheckSpec::Dpp { body, g, k } => {
            let b = make_catalog_body(body)?;
            let gd = parse_density(g, b.dim())?;
            check_dpp(&b, &gd, *k, cfg, instance)
        }
        CheckSpec::BaranyFuredi { m, s } => check_barany_furedi(*m, *s, cfg, instance),
        CheckSpec::MainProj { body_k, body_l, p } => {
            let kb = make_catalog_body(body_k)?;
            let lb = make_catalog_body(body_l)?;
            check_main_proj(&kb, &lb, *p, cfg, instance)
        }
        CheckSpec::ProjDominance { body_k, body_l, p } => {
            let kb = make_catalog_body(body_k)?;
            let lb = make_catalog_body(body_l)?;
            check_proj_dominance(&kb, &lb, *p, cfg, instance)
        }
        CheckSpec::ProjSectionMixed { body_k, body_d, k } => {
            let kb = make_catalog_body(body_k)?;
            let db = make_catalog_body(body_d)?;
            check_proj_section_mixed(&kb, &db, *k, cfg, instance)
        }
        CheckSpec::ContainmentSections {
            body_k,
            body_l,
            f,
            k,
        } => {
            let kb = make_catalog_body(body_k)?;
            let lb = make_catalog_body(body_l)?;
            let fd = parse_density(f, kb.dim())?;
            check_containment_sections(&kb, &lb, &fd, *k, cfg, instance)
        }
        CheckSpec::Slicing { body, k } => {
            let b = make_catalog_body(body)?;
            check_slicing(&b, *k, cfg, instance)
        }
        CheckSpec::MeanValue { body, f, k } => {
            let b = make_catalog_body(body)?;
            let fd = parse_density(f, b.dim())?;
            check_mean_value(&b, &fd, *k, cfg, instance)
        }
        CheckSpec::OvrConvexHull { n, pairs, seed } => {
            check_ovr_convex_hull(*n, *pairs, *seed, cfg, instance)
        }
        CheckSpec::MinProjection { body } => {
            let b = make_catalog_body(body)?;
            check_min_projection(&b, cfg, instance)
        }
        CheckSpec::Isotropy { body } => {
            let b = make_catalog_body(body)?;
            check_isotropy(&b, cfg, instance)
        }
    }
}

/// Run every row in order. Row index doubles as the stream instance, so
/// reports depend only on the configuration, not on wall clock or thread
/// scheduling.
pub fn run_suite(suite: &SuiteConfig) -> Result<Vec<InequalityReport>> {
    let mut out = Vec::with_capacity(suite.checks.len());
    for (i, spec) in suite.checks.iter().enumerate() {
        out.push(run_one(spec, &suite.run, i as u32)?);
    }
    Ok(out)
}

fn ellipsoid_tag(n: usize) -> String {
    let axes: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    format!("ellipsoid({})", axes.join(","))
}

/// The default catalog: every checker exercised over small dimensions,
/// hyperplane and codimension-two sections, and both p exponents where
/// one applies.
pub fn paper_suite() -> SuiteConfig {
    let mut checks = Vec::new();
    let nk_all: [(usize, usize); 7] = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (5, 2)];
    let nk_345: [(usize, usize); 6] = [(3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (5, 2)];

    for &(n, k) in &nk_all {
        for (bk, bl) in [
            (format!("ball({n},1)"), format!("cube({n},1)")),
            (format!("lp_ball({n},1)"), format!("ball({n},1)")),
            (format!("cube({n},1)"), format!("ball({n},1)")),
            (format!("ball({n},1)"), format!("ball({n},1)")),
        ] {
            let same = bk == bl;
            checks.push(CheckSpec::QuotientMain {
                body_k: bk,
                body_l: bl,
                f: if same { "constant(1)" } else { "gaussian" }.into(),
                g: if same { "constant(1)" } else { "gaussian" }.into(),
                k,
            });
        }
    }

    for &(n, k) in &nk_all {
        for bk in [
            format!("cube({n},1)"),
            format!("lp_ball({n},1)"),
            ellipsoid_tag(n),
            format!("ball({n},1)"),
        ] {
            checks.push(CheckSpec::QuotientHolder {
                body_k: bk,
                body_l: format!("ball({n},1)"),
                k,
            });
        }
    }

    for &(n, k) in &nk_345 {
        checks.push(CheckSpec::ArbOvr {
            body: format!("cube({n},1)"),
            f: "gaussian".into(),
            g: "gaussian".into(),
            k,
            budget: 10.0,
        });
    }
    for &(n, k) in &nk_345 {
        let tight = (n as f64 / (n - k) as f64).powf(1.0 / k as f64) + 0.1;
        checks.push(CheckSpec::ArbOvr {
            body: format!("ball({n},1)"),
            f: "gaussian".into(),
            g: "gaussian".into(),
            k,
            budget: tight,
        });
    }
    for n in [3, 4] {
        checks.push(CheckSpec::ArbOvr {
            body: format!("cube({n},1)"),
            f: "half_space(0)".into(),
            g: "gaussian".into(),
            k: 1,
            budget: 10.0,
        });
    }
    checks.push(CheckSpec::ArbOvr {
        body: "random_polytope(3,20,5)".into(),
        f: "gaussian".into(),
        g: "gaussian".into(),
        k: 1,
        budget: 10.0,
    });

    for body in ["cube", "lp_ball", "ball"] {
        for &(n, k) in &nk_345 {
            checks.push(CheckSpec::Grinberg {
                body: format!("{body}({n},1)"),
                k,
            });
        }
    }

    for &(n, k) in &nk_345 {
        checks.push(CheckSpec::Dpp {
            body: format!("ball({n},1)"),
            g: "constant(1)".into(),
            k,
        });
        checks.push(CheckSpec::Dpp {
            body: format!("cube({n},1)"),
            g: "gaussian".into(),
            k,
        });
    }

    for m in 2..=6 {
        for s in [m + 1, 2 * m, 10 * m] {
            checks.push(CheckSpec::BaranyFuredi { m, s });
        }
    }

    let main_proj: [(&str, &str, usize, f64); 15] = [
        ("cube", "ball", 3, 1.0),
        ("cube", "ball", 3, 2.0),
        ("cube", "ball", 4, 1.0),
        ("cube", "ball", 4, 2.0),
        ("cube", "ball", 5, 1.0),
        ("lp_ball", "ball", 3, 1.0),
        ("lp_ball", "ball", 3, 2.0),
        ("lp_ball", "ball", 4, 1.0),
        ("lp_ball", "ball", 4, 2.0),
        ("ball", "cube", 3, 1.0),
        ("ball", "cube", 4, 1.0),
        ("ball", "cube", 5, 1.0),
        ("ball", "ball", 3, 1.0),
        ("ball", "ball", 3, 2.0),
        ("ball", "ball", 4, 2.0),
    ];
    for (bk, bl, n, p) in main_proj {
        checks.push(CheckSpec::MainProj {
            body_k: format!("{bk}({n},1)"),
            body_l: format!("{bl}({n},1)"),
            p,
        });
    }

    for n in [3, 4, 5] {
        checks.push(CheckSpec::ProjDominance {
            body_k: format!("lp_ball({n},1)"),
            body_l: format!("ball({n},1)"),
            p: 1.0,
        });
        checks.push(CheckSpec::ProjDominance {
            body_k: format!("ball({n},1)"),
            body_l: format!("cube({n},1)"),
            p: 1.0,
        });
    }

    let mixed: [(&str, &str, usize, usize); 9] = [
        ("cube", "ball", 3, 1),
        ("cube", "ball", 4, 1),
        ("cube", "ball", 4, 2),
        ("ball", "cube", 3, 1),
        ("ball", "cube", 4, 1),
        ("ball", "cube", 4, 2),
        ("lp_ball", "ball", 3, 1),
        ("cube", "lp_ball", 3, 1),
        ("ball", "ball", 5, 2),
    ];
    for (bk, bd, n, k) in mixed {
        checks.push(CheckSpec::ProjSectionMixed {
            body_k: format!("{bk}({n},1)"),
            body_d: format!("{bd}({n},1)"),
            k,
        });
    }

    for &(n, k) in &[(3usize, 1usize), (3, 2), (4, 1), (4, 2)] {
        checks.push(CheckSpec::ContainmentSections {
            body_k: format!("lp_ball({n},1.5)"),
            body_l: format!("ball({n},1)"),
            f: "gaussian".into(),
            k,
        });
    }
    for n in [3, 4, 5] {
        checks.push(CheckSpec::ContainmentSections {
            body_k: format!("lp_ball({n},1)"),
            body_l: format!("cube({n},1)"),
            f: "gaussian".into(),
            k: 1,
        });
    }

    for body in ["cube", "lp_ball", "ball"] {
        for &(n, k) in &nk_345 {
            checks.push(CheckSpec::Slicing {
                body: format!("{body}({n},1)"),
                k,
            });
        }
    }
    checks.push(CheckSpec::Slicing {
        body: "cube(2,1)".into(),
        k: 1,
    });
    checks.push(CheckSpec::Slicing {
        body: "random_polytope(3,20,5)".into(),
        k: 1,
    });

    for &(n, k) in &nk_345 {
        checks.push(CheckSpec::MeanValue {
            body: format!("cube({n},1)"),
            f: "gaussian".into(),
            k,
        });
        checks.push(CheckSpec::MeanValue {
            body: format!("ball({n},1)"),
            f: "gaussian".into(),
            k,
        });
        checks.push(CheckSpec::MeanValue {
            body: format!("lp_ball({n},1)"),
            f: "constant(2)".into(),
            k,
        });
    }

    for (n, pairs, seed) in [(3, 6, 11), (3, 20, 12), (4, 16, 13), (4, 40, 14), (5, 32, 15)] {
        checks.push(CheckSpec::OvrConvexHull { n, pairs, seed });
    }

    for body in [
        "cube(3,1)",
        "cube(4,1)",
        "ball(3,1)",
        "lp_ball(3,1)",
        "lp_ball(4,1)",
        "ellipsoid(1,2,3)",
        "ball(4,1)",
        "random_polytope(3,20,5)",
    ] {
        checks.push(CheckSpec::MinProjection { body: body.into() });
    }

    for body in [
        "cube(3,1)",
        "cube(4,1)",
        "ball(3,1)",
        "lp_ball(3,1.5)",
        "lp_ball(3,1)",
        "ellipsoid(1,2,3)",
    ] {
        checks.push(CheckSpec::Isotropy { body: body.into() });
    }

    SuiteConfig {
        run: RunConfig::default(),
        checks,
    }
}

pub fn list_checkers() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "quotient-main",
            "section quotient bound for two measures on two bodies",
        ),
        (
            "quotient-holder",
            "volume quotient against the best section ratio",
        ),
        (
            "arb-ovr",
            "constant required by a quotient instance against a budget",
        ),
        (
            "grinberg",
            "average n-th power of central sections of a volume-one body",
        ),
        (
            "dpp",
            "average section functional power against the full integral",
        ),
        (
            "barany-furedi",
            "volume statistic of the convex hull of random ball points",
        ),
        (
            "main-proj",
            "volume quotient against the best p-projection ratio",
        ),
        (
            "proj-dominance",
            "volume comparison from dominated p-projections",
        ),
        (
            "proj-section-mixed",
            "volume quotient against shadow-to-section ratios",
        ),
        (
            "containment-sections",
            "integral of a nested body against the outer one",
        ),
        ("slicing", "volume against the maximal central section"),
        (
            "mean-value",
            "body average of a density against section averages",
        ),
        (
            "ovr-convex-hull",
            "outer volume ratio of a random symmetric polytope",
        ),
        (
            "min-projection",
            "minimal shadow against the volume radius bound",
        ),
        (
            "isotropy",
            "isotropic constant spread, Hensley products, and the Milman comparison",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn config_roundtrips_and_fills_defaults() {
        let json = r#"{
            "run": { "seed": 7, "samples": 1000, "timing": "fixed" },
            "checks": [
                { "check": "slicing", "body": "cube(3,1)", "k": 1 },
                { "check": "barany-furedi", "m": 2, "s": 6 }
            ]
        }"#;
        let cfg: SuiteConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.run.seed, 7);
        assert_eq!(cfg.run.samples, 1000);
        assert_eq!(cfg.run.timing, Timing::Fixed);
        assert_eq!(cfg.run.samples_per_section, 2_000);
        assert_eq!(cfg.checks.len(), 2);
        assert_eq!(cfg.checks[0].id(), "slicing");
        let back = serde_json::to_string(&cfg).unwrap();
        let again: SuiteConfig = serde_json::from_str(&back).unwrap();
        assert_eq!(again.checks[1].id(), "barany-furedi");
    }

    #[test]
    fn density_parser_accepts_the_three_families() {
        assert_eq!(parse_density("gaussian", 3).unwrap().tag(), "gaussian");
        assert_eq!(parse_density("constant(2)", 3).unwrap().tag(), "const(2)");
        assert_eq!(parse_density("const(1)", 3).unwrap().tag(), "const(1)");
        assert_eq!(
            parse_density("half_space(1)", 3).unwrap().tag(),
            "halfspace"
        );
        assert!(parse_density("half_space(3)", 3).is_err());
        assert!(parse_density("constant(-1)", 3).is_err());
        assert!(parse_density("poisson", 3).is_err());
    }

    #[test]
    fn default_suite_covers_every_checker() {
        let suite = paper_suite();
        assert!(suite.checks.len() >= 200);
        for (id, _) in list_checkers() {
            assert!(
                suite.checks.iter().any(|c| c.id() == id),
                "no row for {id}"
            );
        }
    }

    #[test]
    fn run_one_dispatches_and_reports() {
        let cfg = RunConfig {
            samples: 5_000,
            samples_per_section: 500,
            subspaces: 4,
            directions: 8,
            timing: Timing::Fixed,
            ..RunConfig::default()
        };
        let spec = CheckSpec::Slicing {
            body: "cube(3,1)".into(),
            k: 1,
        };
        let r = run_one(&spec, &cfg, 0).unwrap();
        assert_eq!(r.check_id, "slicing");
        assert_eq!(r.seconds, 0.0);
        assert!(matches!(r.verdict, Verdict::Holds | Verdict::HoldsWithBound));
    }

    #[test]
    fn suite_rows_are_reproducible() {
        let cfg = RunConfig {
            samples: 4_000,
            samples_per_section: 400,
            subspaces: 3,
            directions: 8,
            timing: Timing::Fixed,
            ..RunConfig::default()
        };
        let suite = SuiteConfig {
            run: cfg,
            checks: vec![
                CheckSpec::QuotientMain {
                    body_k: "ball(3,1)".into(),
                    body_l: "cube(3,1)".into(),
                    f: "gaussian".into(),
                    g: "gaussian".into(),
                    k: 1,
                },
                CheckSpec::Grinberg {
                    body: "cube(3,1)".into(),
                    k: 1,
                },
            ],
        };
        let a = run_suite(&suite).unwrap();
        let b = run_suite(&suite).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.lhs.to_bits(), y.lhs.to_bits());
            assert_eq!(x.rhs.to_bits(), y.rhs.to_bits());
            assert_eq!(x.verdict, y.verdict);
        }
    }
}
