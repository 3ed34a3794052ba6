//! Star bodies, convex bodies, and the catalog.
//!
//! A star body is encoded by its gauge (Minkowski functional): the radial
//! function in direction θ is 1/gauge(θ). Concrete geometry lives in a
//! `Kernel`; the `StarBody` wrapper carries the catalog metadata (exact
//! volume, symmetry, distance registries) that the checkers consume.

mod catalog;
mod density;
mod polytope;

pub use catalog::{build_body, canonical_catalog, make_catalog_body, parse_descriptor, BodySpec};
pub use density::{Density, DensityKind};
pub use polytope::{ConvexPolytope, Facet};

use crate::ellipsoid::Ellipsoid;
use crate::error::{Error, Result};
use crate::linalg::norm;
use crate::radon::constants;
use nalgebra::DMatrix;

/// A point of the Grassmannian: an m-dimensional linear subspace of R^n,
/// held as an n x m matrix with orthonormal columns.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: DMatrix<f64>,
}

impl Subspace {
    pub fn new(basis: DMatrix<f64>) -> Result<Self> {
        let (n, m) = basis.shape();
        if m == 0 || m >= n {
            return Err(Error::DimensionMismatch { expected: n - 1, got: m });
        }
        let gram = basis.transpose() * &basis;
        for i in 0..m {
            for j in 0..m {
                let want = if i == j { 1.0 } else { 0.0 };
                if (gram[(i, j)] - want).abs() > 1e-10 {
                    return Err(Error::Degenerate(
                        "subspace basis is not orthonormal".into(),
                    ));
                }
            }
        }
        Ok(Subspace { basis })
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Map subspace coordinates to the ambient space.
    pub fn lift(&self, y: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.ambient()];
        for (j, &yj) in y.iter().enumerate() {
            for i in 0..x.len() {
                x[i] += self.basis[(i, j)] * yj;
            }
        }
        x
    }

    /// Orthogonal coordinates of an ambient point (exact for points in the
    /// subspace, the orthogonal projection otherwise).
    pub fn coords(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim())
            .map(|j| (0..x.len()).map(|i| self.basis[(i, j)] * x[i]).sum())
            .collect()
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(n: usize, axes: &[usize]) -> Result<Self> {
        let mut basis = DMatrix::zeros(n, axes.len());
        for (j, &a) in axes.iter().enumerate() {
            if a >= n {
                return Err(Error::DimensionMismatch { expected: n - 1, got: a });
            }
            basis[(a, j)] = 1.0;
        }
        Subspace::new(basis)
    }

    /// The hyperplane orthogonal to `xi`.
    pub fn hyperplane(xi: &[f64]) -> Result<Self> {
        Self::complement(&[xi.to_vec()], xi.len())
    }

    /// Orthogonal complement of the span of `dirs` in R^n.
    pub fn complement(dirs: &[Vec<f64>], n: usize) -> Result<Self> {
        let j = dirs.len();
        if j == 0 || j >= n {
            return Err(Error::DimensionMismatch { expected: n - 1, got: j });
        }
        // QR of [dirs | I]: the trailing n-j columns of Q span dirs^perp.
        let mut m = DMatrix::zeros(n, j + n);
        for (c, d) in dirs.iter().enumerate() {
            if d.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: d.len() });
            }
            for i in 0..n {
                m[(i, c)] = d[i];
            }
        }
        for i in 0..n {
            m[(i, j + i)] = 1.0;
        }
        let qr = m.qr();
        let r = qr.r();
        for c in 0..j {
            if r[(c, c)].abs() < 1e-10 {
                return Err(Error::Degenerate(
                    "complement of linearly dependent directions".into(),
                ));
            }
        }
        let q = qr.q();
        Subspace::new(q.columns(j, n - j).into_owned())
    }
}

/// Geometry dispatch. Linear images that have no exact native form keep a
/// reference to the base body plus the map.
#[derive(Debug, Clone)]
pub(crate) enum Kernel {
    Ball {
        r: f64,
    },
    LpBall {
        p: f64,
    },
    Ellipsoid(Ellipsoid),
    Polytope(ConvexPolytope),
    Linear {
        base: Box<StarBody>,
        t: DMatrix<f64>,
        t_inv: DMatrix<f64>,
        abs_det: f64,
    },
}

#[derive(Debug, Clone)]
pub struct StarBody {
    dim: usize,
    tag: String,
    kernel: Kernel,
    volume: f64,
    symmetric: bool,
    /// d_ovr(K, BP_k^n) = 1 for every k: balls, ellipsoids, l_p balls with
    /// p <= 2, and their linear images.
    dovr_exact_one: bool,
    /// Zonotopes are exactly the 1-projection bodies.
    zonotope: bool,
    /// Directions worth probing when maximizing over sections/projections.
    hints: Vec<Vec<f64>>,
}

impl StarBody {
    pub(crate) fn assemble(
        tag: String,
        dim: usize,
        kernel: Kernel,
        volume: f64,
        symmetric: bool,
        dovr_exact_one: bool,
        zonotope: bool,
        hints: Vec<Vec<f64>>,
    ) -> Self {
        StarBody {
            dim,
            tag,
            kernel,
            volume,
            symmetric,
            dovr_exact_one,
            zonotope,
            hints,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Exact volume. Every catalog body has one: closed forms for balls,
    /// cubes, l_p balls and ellipsoids, the facet formula for polytopes,
    /// |det T| times the base volume for linear images.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn dovr_exact_one(&self) -> bool {
        self.dovr_exact_one
    }

    pub fn is_zonotope(&self) -> bool {
        self.zonotope
    }

    pub fn hint_directions(&self) -> &[Vec<f64>] {
        &self.hints
    }

    pub(crate) fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    /// Minkowski functional: min{a >= 0 : x in aK}. Zero only at the origin.
    pub fn gauge(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        match &self.kernel {
            Kernel::Ball { r } => norm(x) / r,
            Kernel::LpBall { p } => {
                let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                if scale == 0.0 {
                    return 0.0;
                }
                let s: f64 = x.iter().map(|v| (v.abs() / scale).powf(*p)).sum();
                scale * s.powf(1.0 / p)
            }
            Kernel::Ellipsoid(e) => e.gauge(x),
            Kernel::Polytope(p) => p.gauge(x),
            Kernel::Linear { base, t_inv, .. } => {
                base.gauge(&mat_vec(t_inv, x))
            }
        }
    }

    /// Radial function at a unit direction.
    pub fn radial(&self, theta: &[f64]) -> f64 {
        1.0 / self.gauge(theta)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.gauge(x) <= 1.0
    }

    pub fn is_convex(&self) -> bool {
        match &self.kernel {
            Kernel::LpBall { p } => *p >= 1.0,
            Kernel::Linear { base, .. } => base.is_convex(),
            _ => true,
        }
    }

    /// Support function h(u) = max over K of <x, u>. Convex bodies only;
    /// star bodies without convex structure are rejected to keep the
    /// Brunn-Minkowski machinery honest.
    pub fn support(&self, u: &[f64]) -> Result<f64> {
        match &self.kernel {
            Kernel::Ball { r } => Ok(r * norm(u)),
            Kernel::LpBall { p } if *p >= 1.0 => {
                let scale = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                if scale == 0.0 {
                    return Ok(0.0);
                }
                if *p == 1.0 {
                    return Ok(scale);
                }
                let q = p / (p - 1.0);
                let s: f64 = u.iter().map(|v| (v.abs() / scale).powf(q)).sum();
                Ok(scale * s.powf(1.0 / q))
            }
            Kernel::LpBall { .. } => Err(Error::NotConvex(
                self.tag.clone(),
                "support function requires a convex body",
            )),
            Kernel::Ellipsoid(e) => Ok(e.support(u)),
            Kernel::Polytope(p) => Ok(p.support(u)),
            Kernel::Linear { base, t, .. } => base.support(&tr_mat_vec(t, u)),
        }
    }

    /// A maximizer of <x, u> over K.
    pub fn support_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        match &self.kernel {
            Kernel::Ball { r } => {
                let nu = norm(u);
                Ok(u.iter().map(|&v| r * v / nu).collect())
            }
            Kernel::LpBall { p } if *p >= 1.0 => {
                let scale = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                if *p == 1.0 {
                    let mut best = 0;
                    for i in 0..u.len() {
                        if u[i].abs() > u[best].abs() {
                            best = i;
                        }
                    }
                    let mut x = vec![0.0; u.len()];
                    x[best] = u[best].signum();
                    return Ok(x);
                }
                let q = p / (p - 1.0);
                let denom: f64 = u.iter().map(|v| (v.abs() / scale).powf(q)).sum();
                let denom = denom.powf(1.0 / p);
                Ok(u
                    .iter()
                    .map(|&v| v.signum() * (v.abs() / scale).powf(q - 1.0) / denom)
                    .collect())
            }
            Kernel::LpBall { .. } => Err(Error::NotConvex(
                self.tag.clone(),
                "support point requires a convex body",
            )),
            Kernel::Ellipsoid(e) => Ok(e.support_point(u)),
            Kernel::Polytope(p) => Ok(p.support_point(u)),
            Kernel::Linear { base, t, .. } => {
                Ok(mat_vec(t, &base.support_point(&tr_mat_vec(t, u))?))
            }
        }
    }

    pub fn as_polytope(&self) -> Option<&ConvexPolytope> {
        match &self.kernel {
            Kernel::Polytope(p) => Some(p),
            _ => None,
        }
    }

    /// The body as an ellipsoid, when it is one (balls included).
    pub fn as_ellipsoid(&self) -> Option<Ellipsoid> {
        match &self.kernel {
            Kernel::Ellipsoid(e) => Some(e.clone()),
            Kernel::Ball { r } => {
                Ellipsoid::new(DMatrix::identity(self.dim, self.dim) / (r * r)).ok()
            }
            _ => None,
        }
    }

    /// Vertex list, for kernels that carry one.
    pub fn vertices(&self) -> Option<Vec<Vec<f64>>> {
        match &self.kernel {
            Kernel::Polytope(p) => Some(p.vertices().to_vec()),
            Kernel::Linear { base, t, .. } => base
                .vertices()
                .map(|vs| vs.iter().map(|v| mat_vec(t, v)).collect()),
            _ => None,
        }
    }

    /// Image under an invertible linear map. Balls and ellipsoids map to
    /// ellipsoids, polytopes transform exactly; everything else composes
    /// through a Linear kernel.
    pub fn linear_image(&self, t: &DMatrix<f64>) -> Result<StarBody> {
        if t.nrows() != self.dim || t.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.nrows().max(t.ncols()),
            });
        }
        let det = t.clone().lu().determinant();
        if det.abs() < 1e-12 {
            return Err(Error::SingularMap(det.abs()));
        }
        let tag = format!("image({})", self.tag);
        let t_inv = t
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMap(det.abs()))?;
        let kernel = match &self.kernel {
            Kernel::Ball { r } => {
                let a = &t_inv.transpose() * &t_inv / (r * r);
                Kernel::Ellipsoid(Ellipsoid::new(a)?)
            }
            Kernel::Ellipsoid(e) => Kernel::Ellipsoid(e.transform(t)?),
            Kernel::Polytope(p) => Kernel::Polytope(p.transform(t)?),
            Kernel::Linear {
                base,
                t: t0,
                abs_det: d0,
                ..
            } => {
                let t2 = t * t0;
                let t2_inv = t2.clone().try_inverse().ok_or(Error::SingularMap(0.0))?;
                Kernel::Linear {
                    base: base.clone(),
                    abs_det: d0 * det.abs(),
                    t: t2,
                    t_inv: t2_inv,
                }
            }
            Kernel::LpBall { .. } => Kernel::Linear {
                base: Box::new(self.clone()),
                t: t.clone(),
                t_inv: t_inv.clone(),
                abs_det: det.abs(),
            },
        };
        let volume = match &kernel {
            Kernel::Ellipsoid(e) => e.volume(),
            Kernel::Polytope(p) => p.volume(),
            Kernel::Linear { abs_det, base, .. } => abs_det * base.volume(),
            _ => unreachable!(),
        };
        let hints = self
            .hints
            .iter()
            .map(|h| {
                let ih = mat_vec(t, h);
                let nm = norm(&ih);
                ih.iter().map(|v| v / nm).collect()
            })
            .collect();
        Ok(StarBody::assemble(
            tag,
            self.dim,
            kernel,
            volume,
            self.symmetric,
            self.dovr_exact_one,
            self.zonotope,
            hints,
        ))
    }

    /// Polar body K* = {y : <x,y> <= 1 for all x in K}. Origin-symmetric
    /// convex bodies only.
    pub fn polar(&self) -> Result<StarBody> {
        if !self.symmetric {
            return Err(Error::NotSymmetric(
                self.tag.clone(),
                "polar duality is used only for symmetric bodies here",
            ));
        }
        if !self.is_convex() {
            return Err(Error::NotConvex(self.tag.clone(), "polar of a non-convex body"));
        }
        let tag = format!("polar({})", self.tag);
        match &self.kernel {
            Kernel::Ball { r } => Ok(StarBody::assemble(
                tag,
                self.dim,
                Kernel::Ball { r: 1.0 / r },
                constants::omega(self.dim) / r.powi(self.dim as i32),
                true,
                true,
                false,
                vec![],
            )),
            Kernel::Ellipsoid(e) => {
                let pe = e.polar();
                let vol = pe.volume();
                Ok(StarBody::assemble(
                    tag,
                    self.dim,
                    Kernel::Ellipsoid(pe),
                    vol,
                    true,
                    true,
                    false,
                    vec![],
                ))
            }
            Kernel::LpBall { p } => {
                let q = if *p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
                let vol = catalog::lp_ball_volume(self.dim, q);
                Ok(StarBody::assemble(
                    tag,
                    self.dim,
                    Kernel::LpBall { p: q },
                    vol,
                    true,
                    q <= 2.0,
                    false,
                    self.hints.clone(),
                ))
            }
            Kernel::Polytope(p) => {
                let pp = p.polar()?;
                let vol = pp.volume();
                Ok(StarBody::assemble(
                    tag,
                    self.dim,
                    Kernel::Polytope(pp),
                    vol,
                    true,
                    false,
                    false,
                    vec![],
                ))
            }
            Kernel::Linear { base, t_inv, .. } => {
                base.polar()?.linear_image(&t_inv.transpose())
            }
        }
    }

    /// Exact volume of the central section K ∩ H when the kernel admits one:
    /// closed forms for balls and ellipsoids, vertex enumeration for
    /// polytopes, coordinate subspaces for l_p balls, and the determinant
    /// factorization for linear images.
    pub fn section_volume_exact(&self, h: &Subspace) -> Option<f64> {
        let m = h.dim();
        match &self.kernel {
            Kernel::Ball { r } => Some(constants::omega(m) * r.powi(m as i32)),
            Kernel::Ellipsoid(e) => Some(e.section_volume(h)),
            Kernel::Polytope(p) => p.section_volume(h).ok(),
            Kernel::LpBall { p } => {
                coordinate_axes(h).map(|_| catalog::lp_ball_volume(m, *p))
            }
            Kernel::Linear { base, t_inv, .. } => {
                // T K ∩ H = T (K ∩ T^{-1}H); the sub-determinant of T from
                // the pre-image frame to H carries the m-volume scaling.
                let pre = t_inv * h.basis();
                let qr = pre.qr();
                let bq = qr.q();
                let r = qr.r();
                for i in 0..m {
                    if r[(i, i)].abs() < 1e-12 {
                        return None;
                    }
                }
                let sub = Subspace::new(bq.clone()).ok()?;
                let base_vol = base.section_volume_exact(&sub)?;
                // det(B^T T B') maps base-section volume to the image's.
                let t = match &self.kernel {
                    Kernel::Linear { t, .. } => t,
                    _ => unreachable!(),
                };
                let factor = (h.basis().transpose() * t * bq).determinant().abs();
                Some(base_vol * factor)
            }
        }
    }
}

/// Indices when every basis column is a signed coordinate axis.
fn coordinate_axes(h: &Subspace) -> Option<Vec<usize>> {
    let mut axes = Vec::with_capacity(h.dim());
    for j in 0..h.dim() {
        let mut hit = None;
        for i in 0..h.ambient() {
            let v = h.basis()[(i, j)];
            if v.abs() > 1e-12 {
                if hit.is_some() || (v.abs() - 1.0).abs() > 1e-12 {
                    return None;
                }
                hit = Some(i);
            }
        }
        axes.push(hit?);
    }
    Some(axes)
}

pub(crate) fn mat_vec(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * x[j]).sum())
        .collect()
}

pub(crate) fn tr_mat_vec(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)] * x[i]).sum())
        .collect()
}
