//! Surface-area measures, shadows, and (p-)mixed volumes.
//!
//! Polytopes carry their surface-area measure as a finite list of atoms
//! (unit normal, facet area), which turns the Cauchy projection formula and
//! the p-mixed volumes into plain sums. Balls and ellipsoids use closed
//! forms. Nothing here is sampled; these quantities are exact up to hull
//! arithmetic.

use crate::bodies::{Kernel, StarBody, Subspace};
use crate::error::{Error, Result};
use crate::hull::convex_hull;
use crate::linalg::dot;
use statrs::function::gamma::ln_gamma;

const MAX_SURFACE_DIM: usize = 6;
const MAX_SHADOW_DIM: usize = 4;

/// Finite surface-area measure: atoms of (unit outward normal, mass).
#[derive(Debug, Clone)]
pub struct SurfaceMeasure {
    atoms: Vec<(Vec<f64>, f64)>,
}

impl SurfaceMeasure {
    pub fn atoms(&self) -> &[(Vec<f64>, f64)] {
        &self.atoms
    }

    pub fn total(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// | integral of u dS(u) |, zero for any convex body.
    pub fn closure_defect(&self) -> f64 {
        let n = self.atoms[0].0.len();
        let mut s = vec![0.0; n];
        for (u, m) in &self.atoms {
            for i in 0..n {
                s[i] += m * u[i];
            }
        }
        crate::linalg::norm(&s)
    }
}

/// Surface-area measure of a polytope.
pub fn surface_measure(body: &StarBody) -> Result<SurfaceMeasure> {
    let n = body.dim();
    if n > MAX_SURFACE_DIM {
        return Err(Error::DimensionCap {
            op: "surface_measure",
            cap: MAX_SURFACE_DIM,
            got: n,
        });
    }
    let poly = body.as_polytope().ok_or_else(|| Error::Unsupported {
        op: "surface_measure",
        tag: body.tag().to_string(),
    })?;
    Ok(SurfaceMeasure {
        atoms: poly
            .facets()
            .iter()
            .map(|f| (f.normal.clone(), f.area))
            .collect(),
    })
}

/// Volume of the shadow on the hyperplane orthogonal to unit xi: the Cauchy
/// formula (1/2) sum m_F |<u_F, xi>| for polytopes, the closed form for
/// balls and ellipsoids.
pub fn projection_volume(body: &StarBody, xi: &[f64]) -> Result<f64> {
    if let Some(e) = body.as_ellipsoid() {
        return Ok(e.shadow(xi));
    }
    let poly = body.as_polytope().ok_or_else(|| Error::Unsupported {
        op: "projection_volume",
        tag: body.tag().to_string(),
    })?;
    Ok(0.5
        * poly
            .facets()
            .iter()
            .map(|f| f.area * dot(&f.normal, xi).abs())
            .sum::<f64>())
}

/// Volume of the orthogonal projection onto a subspace: hull of the
/// projected vertices for polytopes, the Gram closed form for ellipsoids.
pub fn projection_volume_subspace(body: &StarBody, h: &Subspace) -> Result<f64> {
    let m = h.dim();
    if m > MAX_SHADOW_DIM {
        return Err(Error::DimensionCap {
            op: "projection_volume_subspace",
            cap: MAX_SHADOW_DIM,
            got: m,
        });
    }
    if let Some(e) = body.as_ellipsoid() {
        return Ok(e.shadow_subspace(h));
    }
    let poly = body.as_polytope().ok_or_else(|| Error::Unsupported {
        op: "projection_volume_subspace",
        tag: body.tag().to_string(),
    })?;
    let pts: Vec<Vec<f64>> = poly.vertices().iter().map(|v| h.coords(v)).collect();
    Ok(convex_hull(&pts, m, false)?.volume)
}

/// First mixed volume V_1(K, L) = (1/n) sum h_L(u_F) m_F; K a polytope,
/// L any convex body.
pub fn mixed_volume_v1(k: &StarBody, l: &StarBody) -> Result<f64> {
    let poly = k.as_polytope().ok_or_else(|| Error::Unsupported {
        op: "mixed_volume_v1",
        tag: k.tag().to_string(),
    })?;
    let mut s = 0.0;
    for f in poly.facets() {
        s += l.support(&f.normal)? * f.area;
    }
    Ok(s / k.dim() as f64)
}

/// p-mixed volume V_p(K, L) = (1/n) sum h_L(u)^p h_K(u)^{1-p} m; requires
/// p >= 1 and the origin interior to K.
pub fn p_mixed_volume(k: &StarBody, l: &StarBody, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Config {
            field: "p".into(),
            reason: "p-mixed volumes need p >= 1".into(),
        });
    }
    let poly = k.as_polytope().ok_or_else(|| Error::Unsupported {
        op: "p_mixed_volume",
        tag: k.tag().to_string(),
    })?;
    let mut s = 0.0;
    for f in poly.facets() {
        s += l.support(&f.normal)?.powf(p) * f.offset.powf(1.0 - p) * f.area;
    }
    Ok(s / k.dim() as f64)
}

/// int_{S^{n-1}} |u_1|^p dsigma(u) = 2 pi^{(n-1)/2} G((p+1)/2) / G((n+p)/2).
fn sphere_abs_moment(n: usize, p: f64) -> f64 {
    let nf = n as f64;
    (2f64.ln() + 0.5 * (nf - 1.0) * std::f64::consts::PI.ln() + ln_gamma((p + 1.0) / 2.0)
        - ln_gamma((nf + p) / 2.0))
    .exp()
}

/// Support function of the p-projection body at unit xi:
/// h(xi)^p = (1/(2n)) sum |<u, xi>|^p h_K(u)^{1-p} m for polytopes, with the
/// spherical closed form for balls; p = 1 recovers the classical projection
/// body normalized so that n h(xi) equals the shadow volume.
pub fn p_projection_support(body: &StarBody, xi: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Config {
            field: "p".into(),
            reason: "p-projection bodies need p >= 1".into(),
        });
    }
    let n = body.dim() as f64;
    if let Kernel::Ball { r } = body.kernel() {
        let hp = r.powf(n - p) / (2.0 * n) * sphere_abs_moment(body.dim(), p);
        return Ok(hp.powf(1.0 / p));
    }
    if p == 1.0 {
        if let Some(e) = body.as_ellipsoid() {
            return Ok(e.shadow(xi) / n);
        }
    }
    let poly = body.as_polytope().ok_or_else(|| Error::Unsupported {
        op: "p_projection_support",
        tag: body.tag().to_string(),
    })?;
    let mut s = 0.0;
    for f in poly.facets() {
        s += dot(&f.normal, xi).abs().powf(p) * f.offset.powf(1.0 - p) * f.area;
    }
    Ok((s / (2.0 * n)).powf(1.0 / p))
}
