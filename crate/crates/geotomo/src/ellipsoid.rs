//! Ellipsoids, Loewner ellipsoids, and volume-ratio distance bounds.
//!
//! An ellipsoid is {x : x^T A x <= 1} with A positive definite. The Loewner
//! (minimum-volume enclosing) ellipsoid is computed analytically where a
//! closed form exists (balls, ellipsoids, the l_p family, linear images of
//! those) and by a Frank-Wolfe ascent with away steps on the vertex cloud
//! otherwise. Every result is certified on a direction net before use.

use crate::bodies::{mat_vec, Kernel, StarBody, Subspace};
use crate::error::{Error, Result};
use crate::radon::constants;
use crate::radon::sample_sphere;
use nalgebra::{DMatrix, DVector};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Ellipsoid {
    a: DMatrix<f64>,
    a_inv: DMatrix<f64>,
    det_a: f64,
}

impl Ellipsoid {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        if n != a.ncols() {
            return Err(Error::DimensionMismatch { expected: n, got: a.ncols() });
        }
        let scale = a.amax();
        for i in 0..n {
            for j in 0..n {
                if (a[(i, j)] - a[(j, i)]).abs() > 1e-10 * scale {
                    return Err(Error::Degenerate("ellipsoid matrix is not symmetric".into()));
                }
            }
        }
        let sym = (&a + a.transpose()) * 0.5;
        let chol = sym
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Degenerate("ellipsoid matrix is not positive definite".into()))?;
        let a_inv = chol.inverse();
        let det_a = sym.determinant();
        Ok(Ellipsoid { a: sym, a_inv, det_a })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn gauge(&self, x: &[f64]) -> f64 {
        quad_form(&self.a, x).max(0.0).sqrt()
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        quad_form(&self.a_inv, u).max(0.0).sqrt()
    }

    pub fn support_point(&self, u: &[f64]) -> Vec<f64> {
        let h = self.support(u);
        let y = mat_vec(&self.a_inv, u);
        y.iter().map(|v| v / h).collect()
    }

    pub fn volume(&self) -> f64 {
        constants::omega(self.dim()) / self.det_a.sqrt()
    }

    /// Image under an invertible map: T E has matrix T^{-T} A T^{-1}.
    pub fn transform(&self, t: &DMatrix<f64>) -> Result<Self> {
        let t_inv = t
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMap(t.clone().lu().determinant().abs()))?;
        Ellipsoid::new(t_inv.transpose() * &self.a * t_inv)
    }

    pub fn polar(&self) -> Self {
        Ellipsoid::new(self.a_inv.clone()).expect("inverse of SPD is SPD")
    }

    /// Volume of the central section E ∩ H.
    pub fn section_volume(&self, h: &Subspace) -> f64 {
        let m = h.dim();
        let restricted = h.basis().transpose() * &self.a * h.basis();
        constants::omega(m) / restricted.determinant().sqrt()
    }

    /// Volume of the orthogonal projection onto H.
    pub fn shadow_subspace(&self, h: &Subspace) -> f64 {
        let m = h.dim();
        let restricted = h.basis().transpose() * &self.a_inv * h.basis();
        constants::omega(m) * restricted.determinant().sqrt()
    }

    /// Volume of the shadow on the hyperplane orthogonal to unit xi.
    pub fn shadow(&self, xi: &[f64]) -> f64 {
        let n = self.dim();
        constants::omega(n - 1) * (quad_form(&self.a, xi) / self.det_a).sqrt()
    }
}

fn quad_form(m: &DMatrix<f64>, x: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..m.nrows() {
        let mut row = 0.0;
        for j in 0..m.ncols() {
            row += m[(i, j)] * x[j];
        }
        s += x[i] * row;
    }
    s
}

#[derive(Debug, Clone)]
pub struct LoewnerConfig {
    pub tol: f64,
    pub cert_dirs: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub max_rounds: usize,
}

impl Default for LoewnerConfig {
    fn default() -> Self {
        LoewnerConfig {
            tol: 1e-6,
            cert_dirs: 100_000,
            seed: 0x10e3_ce11,
            max_iters: 200_000,
            max_rounds: 3,
        }
    }
}

const MAX_LOEWNER_DIM: usize = 10;
const CERT_SLACK: f64 = 1e-8;

/// How a distance value was obtained; non-exact bounds downgrade a checker
/// verdict from Holds to HoldsWithBound.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundKind {
    ExactOne,
    Loewner,
    Formula,
}

#[derive(Debug, Clone)]
pub struct DistanceBound {
    pub value: f64,
    pub kind: BoundKind,
    pub provenance: String,
}

impl DistanceBound {
    pub fn exact_one() -> Self {
        DistanceBound {
            value: 1.0,
            kind: BoundKind::ExactOne,
            provenance: "registry".into(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == BoundKind::ExactOne
    }
}

/// Minimum-volume ellipsoid containing a symmetric convex body.
pub fn loewner(body: &StarBody, cfg: &LoewnerConfig) -> Result<Ellipsoid> {
    let n = body.dim();
    if n > MAX_LOEWNER_DIM {
        return Err(Error::DimensionCap { op: "loewner", cap: MAX_LOEWNER_DIM, got: n });
    }
    if !body.is_symmetric() {
        return Err(Error::NotSymmetric(
            body.tag().to_string(),
            "the Loewner computation here assumes central symmetry",
        ));
    }
    if !body.is_convex() {
        return Err(Error::NotConvex(
            body.tag().to_string(),
            "the Loewner ellipsoid needs a convex body",
        ));
    }
    let e = match body.kernel() {
        Kernel::Ball { r } => Ellipsoid::new(DMatrix::identity(n, n) / (r * r))?,
        Kernel::Ellipsoid(e) => e.clone(),
        Kernel::LpBall { p } => {
            // Loewner ellipsoid of B_p^n: the unit ball for p <= 2, the
            // ball through the corners n^{1/2 - 1/p} for p >= 2.
            let r = if *p <= 2.0 {
                1.0
            } else {
                (n as f64).powf(0.5 - 1.0 / p)
            };
            Ellipsoid::new(DMatrix::identity(n, n) / (r * r))?
        }
        Kernel::Polytope(_) => {
            let cloud = body.vertices().expect("polytope kernel has vertices");
            mvee_symmetric(&cloud, n, cfg)?
        }
        Kernel::Linear { base, t, .. } => loewner(base, cfg)?.transform(t)?,
    };
    certify(body, e, cfg, 0)
}

/// Certify containment on a direction net; on failure, extend the cloud with
/// the violating support point and re-solve.
fn certify(body: &StarBody, e: Ellipsoid, cfg: &LoewnerConfig, round: usize) -> Result<Ellipsoid> {
    let n = body.dim();
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        dirs.push(v);
    }
    let r2 = 2f64.sqrt();
    for i in 0..n {
        for j in i + 1..n {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; n];
                v[i] = 1.0 / r2;
                v[j] = s / r2;
                dirs.push(v);
            }
        }
    }
    let rn = (n as f64).sqrt();
    for mask in 0u32..(1 << (n - 1)) {
        dirs.push(
            (0..n)
                .map(|i| {
                    if i > 0 && mask >> (i - 1) & 1 == 1 {
                        -1.0 / rn
                    } else {
                        1.0 / rn
                    }
                })
                .collect(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst: Option<Vec<f64>> = None;
    let mut worst_ratio = 1.0 + CERT_SLACK;
    let check = |d: &Vec<f64>, worst: &mut Option<Vec<f64>>, worst_ratio: &mut f64| {
        let hk = body.support(d).expect("convex body");
        let he = e.support(d);
        if hk > *worst_ratio * he {
            *worst_ratio = hk / he;
            *worst = Some(d.clone());
        }
    };
    for d in &dirs {
        check(d, &mut worst, &mut worst_ratio);
    }
    for _ in 0..cfg.cert_dirs {
        let d = sample_sphere(n, &mut rng);
        check(&d, &mut worst, &mut worst_ratio);
    }
    match worst {
        None => Ok(e),
        Some(d) => {
            if round + 1 >= cfg.max_rounds {
                return Err(Error::Certification(format!(
                    "loewner containment failed after {} rounds (ratio {:.3e})",
                    round + 1,
                    worst_ratio
                )));
            }
            let mut cloud = body.vertices().unwrap_or_default();
            if cloud.is_empty() {
                return Err(Error::Certification(
                    "analytic loewner ellipsoid failed certification".into(),
                ));
            }
            cloud.push(body.support_point(&d)?);
            let e2 = mvee_symmetric(&cloud, body.dim(), cfg)?;
            certify(body, e2, cfg, round + 1)
        }
    }
}

/// Symmetric MVEE of a point cloud by Frank-Wolfe on the log-det dual with
/// Wolfe away steps. The returned ellipsoid {x^T M^{-1} x <= kappa_max}
/// contains the cloud by construction.
fn mvee_symmetric(cloud: &[Vec<f64>], n: usize, cfg: &LoewnerConfig) -> Result<Ellipsoid> {
    let pts: Vec<DVector<f64>> = cloud
        .iter()
        .map(|p| DVector::from_row_slice(p))
        .collect();
    let np = pts.len();
    if np <= n {
        return Err(Error::Degenerate("loewner cloud does not span".into()));
    }
    let mut u = vec![1.0 / np as f64; np];
    let eps = cfg.tol / n as f64;
    let mut kappa = vec![0.0; np];
    for iter in 0..cfg.max_iters {
        let mut m = DMatrix::zeros(n, n);
        for (j, x) in pts.iter().enumerate() {
            if u[j] > 0.0 {
                m.syger(u[j], x, x, 1.0);
            }
        }
        let m_inv = m
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Degenerate("loewner cloud does not span".into()))?
            .inverse();
        let mut jmax = 0;
        let mut jmin = usize::MAX;
        for (j, x) in pts.iter().enumerate() {
            kappa[j] = (x.transpose() * &m_inv * x)[(0, 0)];
            if kappa[j] > kappa[jmax] {
                jmax = j;
            }
            if u[j] > 0.0 && (jmin == usize::MAX || kappa[j] < kappa[jmin]) {
                jmin = j;
            }
        }
        let nf = n as f64;
        let up = kappa[jmax] / nf - 1.0;
        let down = 1.0 - kappa[jmin] / nf;
        if up <= eps && down <= eps {
            return Ellipsoid::new(m_inv / kappa[jmax]);
        }
        if iter + 1 == cfg.max_iters {
            break;
        }
        if up >= down {
            let k = kappa[jmax];
            let beta = (k - nf) / (nf * (k - 1.0));
            for w in u.iter_mut() {
                *w *= 1.0 - beta;
            }
            u[jmax] += beta;
        } else {
            let k = kappa[jmin];
            let beta_raw = (k - nf) / (nf * (k - 1.0));
            let beta = beta_raw.max(-u[jmin] / (1.0 - u[jmin]));
            for w in u.iter_mut() {
                *w *= 1.0 - beta;
            }
            u[jmin] += beta;
            if u[jmin] < 1e-18 {
                u[jmin] = 0.0;
            }
        }
    }
    Err(Error::Certification(
        "loewner iteration did not reach the duality-gap target".into(),
    ))
}

/// Outer volume ratio of a symmetric convex body: (|Loewner(K)| / |K|)^{1/n}.
pub fn ovr(body: &StarBody, cfg: &LoewnerConfig) -> Result<DistanceBound> {
    if body.as_ellipsoid().is_some() {
        return Ok(DistanceBound {
            value: 1.0,
            kind: BoundKind::ExactOne,
            provenance: "ellipsoid: own Loewner ellipsoid".into(),
        });
    }
    let analytic = matches!(body.kernel(), Kernel::Ball { .. } | Kernel::LpBall { .. });
    let e = loewner(body, cfg)?;
    let value = (e.volume() / body.volume()).powf(1.0 / body.dim() as f64);
    Ok(DistanceBound {
        value,
        kind: if analytic { BoundKind::Formula } else { BoundKind::Loewner },
        provenance: if analytic {
            "analytic Loewner ellipsoid of the l_p family".into()
        } else {
            "certified Loewner ellipsoid".into()
        },
    })
}

/// Upper bound for the outer volume-ratio distance to the k-intersection
/// classes: exactly 1 for balls, ellipsoids, l_p balls with p <= 2 and their
/// linear images; otherwise the outer volume ratio, which dominates it.
pub fn dovr_bp_bound(body: &StarBody, cfg: &LoewnerConfig) -> Result<DistanceBound> {
    if body.dovr_exact_one() {
        return Ok(DistanceBound {
            value: 1.0,
            kind: BoundKind::ExactOne,
            provenance: "registry: intersection-body class".into(),
        });
    }
    if !body.is_symmetric() {
        return Err(Error::NotSymmetric(
            body.tag().to_string(),
            "distance bound is maintained for symmetric bodies only",
        ));
    }
    let mut b = ovr(body, cfg)?;
    b.provenance = format!("outer volume ratio bound ({})", b.provenance);
    Ok(b)
}

/// Upper bound for the volume-ratio distance to the p-projection class:
/// exactly 1 for ellipsoids (any p) and for zonotopes at p = 1; otherwise
/// (|K| / |John(K)|)^{1/n} through the inner John ellipsoid, an ellipsoid
/// being a p-projection body for every p >= 1.
pub fn dvr_projection_bound(body: &StarBody, p: f64, cfg: &LoewnerConfig) -> Result<DistanceBound> {
    if body.as_ellipsoid().is_some() || matches!(body.kernel(), Kernel::Ball { .. }) {
        return Ok(DistanceBound {
            value: 1.0,
            kind: BoundKind::ExactOne,
            provenance: "registry: ellipsoids are p-projection bodies".into(),
        });
    }
    if body.is_zonotope() && p == 1.0 {
        return Ok(DistanceBound {
            value: 1.0,
            kind: BoundKind::ExactOne,
            provenance: "registry: zonotopes are projection bodies".into(),
        });
    }
    if !body.is_symmetric() {
        return Err(Error::NotSymmetric(
            body.tag().to_string(),
            "distance bound is maintained for symmetric bodies only",
        ));
    }
    // John inner ellipsoid by polarity: John(K) = Loewner(K*)*.
    let inner = loewner(&body.polar()?, cfg)?.polar();
    let value = (body.volume() / inner.volume()).powf(1.0 / body.dim() as f64);
    Ok(DistanceBound {
        value,
        kind: BoundKind::Loewner,
        provenance: "inner John ellipsoid via polar Loewner".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::make_catalog_body;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn diag_ellipsoid(d: &[f64]) -> Ellipsoid {
        Ellipsoid::new(DMatrix::from_diagonal(&DVector::from_row_slice(d))).unwrap()
    }

    #[test]
    fn ellipsoid_closed_forms() {
        let e = diag_ellipsoid(&[1.0, 4.0, 9.0]);
        assert_relative_eq!(e.volume(), 4.0 * std::f64::consts::PI / 18.0, epsilon = 1e-12);
        assert_relative_eq!(e.support(&[0.0, 1.0, 0.0]), 0.5, epsilon = 1e-12);
        assert_relative_eq!(e.gauge(&[0.0, 0.5, 0.0]), 1.0, epsilon = 1e-12);
        let x = e.support_point(&[0.0, 1.0, 0.0]);
        assert_relative_eq!(x[1], 0.5, epsilon = 1e-12);
        assert_relative_eq!(e.gauge(&x), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sections_and_shadows_of_a_diagonal_ellipsoid() {
        // Semiaxes 1, 1/2, 1/3.
        let e = diag_ellipsoid(&[1.0, 4.0, 9.0]);
        let h = Subspace::coordinate(3, &[0, 1]).unwrap();
        assert_relative_eq!(
            e.section_volume(&h),
            std::f64::consts::PI / 2.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            e.shadow_subspace(&h),
            std::f64::consts::PI / 2.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            e.shadow(&[0.0, 0.0, 1.0]),
            std::f64::consts::PI / 2.0,
            epsilon = 1e-12
        );
        // Shadows dominate sections for any subspace of an ellipsoid.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let xi = sample_sphere(3, &mut rng);
            let hp = Subspace::hyperplane(&xi).unwrap();
            assert!(e.shadow(&xi) >= e.section_volume(&hp) - 1e-12);
            assert_relative_eq!(e.shadow(&xi), e.shadow_subspace(&hp), epsilon = 1e-10);
        }
    }

    #[test]
    fn transform_then_gauge_matches_preimage() {
        let e = diag_ellipsoid(&[1.0, 4.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let t = DMatrix::from_fn(2, 2, |_, _| rng.gen::<f64>() - 0.5)
            + DMatrix::identity(2, 2) * 2.0;
        let te = e.transform(&t).unwrap();
        let t_inv = t.clone().try_inverse().unwrap();
        for _ in 0..20 {
            let x: Vec<f64> = (0..2).map(|_| rng.gen::<f64>() - 0.5).collect();
            let pre = mat_vec(&t_inv, &x);
            assert_relative_eq!(te.gauge(&x), e.gauge(&pre), epsilon = 1e-10);
        }
        assert_relative_eq!(
            te.volume(),
            t.determinant().abs() * e.volume(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn loewner_of_cube_is_the_circumscribed_ball() {
        let cfg = LoewnerConfig::default();
        for n in 2..=5 {
            let cube = make_catalog_body(&format!("cube({n},1)")).unwrap();
            let e = loewner(&cube, &cfg).unwrap();
            let rn = (n as f64).sqrt();
            let mut e1 = vec![0.0; n];
            e1[0] = 1.0;
            assert_relative_eq!(e.support(&e1), rn, max_relative = 1e-5);
            assert_relative_eq!(
                e.volume(),
                constants::omega(n) * rn.powi(n as i32),
                max_relative = 1e-4
            );
        }
    }

    #[test]
    fn loewner_analytic_paths() {
        let cfg = LoewnerConfig::default();
        let cross = make_catalog_body("lp_ball(4,1)").unwrap();
        let e = loewner(&cross, &cfg).unwrap();
        assert_relative_eq!(e.volume(), constants::omega(4), max_relative = 1e-5);

        let thin = make_catalog_body("lp_ball(3,1.5)").unwrap();
        let e = loewner(&thin, &cfg).unwrap();
        assert_relative_eq!(e.volume(), constants::omega(3), epsilon = 1e-10);

        let fat = make_catalog_body("lp_ball(3,4)").unwrap();
        let e = loewner(&fat, &cfg).unwrap();
        let r = 3f64.powf(0.5 - 0.25);
        assert_relative_eq!(e.volume(), constants::omega(3) * r.powi(3), epsilon = 1e-9);
    }

    #[test]
    fn loewner_touches_its_cloud() {
        let cfg = LoewnerConfig::default();
        let body = make_catalog_body("random_polytope(4,40,3)").unwrap();
        let e = loewner(&body, &cfg).unwrap();
        let mut max_gauge = 0.0f64;
        for v in body.as_polytope().unwrap().vertices() {
            let g = e.gauge(v);
            assert!(g <= 1.0 + 1e-9, "vertex escapes: {g}");
            max_gauge = max_gauge.max(g);
        }
        // Minimality witness: the ellipsoid is tight on the cloud, so any
        // shrink beyond the tolerance loses a vertex.
        assert!(max_gauge > 1.0 - 10.0 * cfg.tol);
    }

    #[test]
    fn loewner_commutes_with_linear_maps() {
        let cfg = LoewnerConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let t = DMatrix::from_fn(3, 3, |_, _| rng.gen::<f64>() - 0.5)
            + DMatrix::identity(3, 3) * 2.0;
        let lp = make_catalog_body("lp_ball(3,4)").unwrap();
        let image = lp.linear_image(&t).unwrap();
        let e_img = loewner(&image, &cfg).unwrap();
        let e_base = loewner(&lp, &cfg).unwrap().transform(&t).unwrap();
        assert_relative_eq!(e_img.volume(), e_base.volume(), max_relative = 1e-8);

        let cube = make_catalog_body("cube(3,1)").unwrap();
        let skew = cube.linear_image(&t).unwrap();
        let o1 = ovr(&cube, &cfg).unwrap().value;
        let o2 = ovr(&skew, &cfg).unwrap().value;
        assert_relative_eq!(o1, o2, epsilon = 3.0 * cfg.tol);
    }

    #[test]
    fn distance_registries() {
        let cfg = LoewnerConfig::default();
        assert!(dovr_bp_bound(&make_catalog_body("ball(3,2)").unwrap(), &cfg)
            .unwrap()
            .is_exact());
        assert!(dovr_bp_bound(&make_catalog_body("lp_ball(4,1.5)").unwrap(), &cfg)
            .unwrap()
            .is_exact());
        let cube_bound = dovr_bp_bound(&make_catalog_body("cube(3,1)").unwrap(), &cfg).unwrap();
        assert!(!cube_bound.is_exact());
        // ovr(cube_n) = (omega_n n^{n/2} / 2^n)^{1/n}.
        let want = (constants::omega(3) * 3f64.powf(1.5) / 8.0).powf(1.0 / 3.0);
        assert_relative_eq!(cube_bound.value, want, max_relative = 1e-5);
        assert!(cube_bound.value <= 3f64.sqrt() * (1.0 + cfg.tol));

        assert!(
            dvr_projection_bound(&make_catalog_body("ellipsoid(1,3)").unwrap(), 2.0, &cfg)
                .unwrap()
                .is_exact()
        );
        assert!(
            dvr_projection_bound(&make_catalog_body("cube(4,1)").unwrap(), 1.0, &cfg)
                .unwrap()
                .is_exact()
        );
        let cross = make_catalog_body("lp_ball(3,1)").unwrap();
        let b = dvr_projection_bound(&cross, 1.0, &cfg).unwrap();
        assert!(!b.is_exact());
        let want = (3f64.powf(1.5) / std::f64::consts::PI).powf(1.0 / 3.0);
        assert_relative_eq!(b.value, want, epsilon = 1e-3);
        assert!(b.value <= 3f64.sqrt() * (1.0 + 1e-6));
    }

    #[test]
    fn simplex_is_rejected() {
        let cfg = LoewnerConfig::default();
        let s = make_catalog_body("simplex(3)").unwrap();
        assert!(matches!(loewner(&s, &cfg), Err(Error::NotSymmetric(..))));
        assert!(dovr_bp_bound(&s, &cfg).is_err());
    }
}
