//! Convex polytopes with explicit vertex and facet data.
//!
//! Facets carry unit outward normals, support offsets, and surface areas,
//! so the surface-area measure is available as a sum of atoms. The cube,
//! cross-polytope and regular simplex are built analytically; everything
//! else goes through the hull engine.

use crate::error::{Error, Result};
use crate::hull::convex_hull;
use crate::linalg::{dot, norm};
use nalgebra::DMatrix;

use super::Subspace;

#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Family {
    Cube { a: f64 },
    Cross { a: f64 },
    Simplex,
    General,
}

#[derive(Debug, Clone)]
pub struct ConvexPolytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    facets: Vec<Facet>,
    family: Family,
    volume: f64,
}

impl ConvexPolytope {
    /// [-a, a]^n.
    pub fn cube(n: usize, a: f64) -> Self {
        let mut vertices = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            vertices.push(
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { a } else { -a })
                    .collect(),
            );
        }
        let side_area = (2.0 * a).powi(n as i32 - 1);
        let mut facets = Vec::with_capacity(2 * n);
        for i in 0..n {
            for s in [1.0, -1.0] {
                let mut normal = vec![0.0; n];
                normal[i] = s;
                facets.push(Facet { normal, offset: a, area: side_area });
            }
        }
        ConvexPolytope {
            dim: n,
            vertices,
            facets,
            family: Family::Cube { a },
            volume: (2.0 * a).powi(n as i32),
        }
    }

    /// conv(±a e_1, ..., ±a e_n), the unit l_1 ball scaled by a.
    pub fn cross(n: usize, a: f64) -> Self {
        let mut vertices = Vec::with_capacity(2 * n);
        for i in 0..n {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; n];
                v[i] = s * a;
                vertices.push(v);
            }
        }
        let rn = (n as f64).sqrt();
        let facet_area = a.powi(n as i32 - 1) * rn / factorial(n - 1);
        let mut facets = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let normal: Vec<f64> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { 1.0 / rn } else { -1.0 / rn })
                .collect();
            facets.push(Facet { normal, offset: a / rn, area: facet_area });
        }
        ConvexPolytope {
            dim: n,
            vertices,
            facets,
            family: Family::Cross { a },
            volume: (2.0 * a).powi(n as i32) / factorial(n),
        }
    }

    /// Regular simplex with circumradius 1, centered at its centroid.
    pub fn regular_simplex(n: usize) -> Self {
        // Vertices of the standard simplex in R^{n+1}, recentred and
        // expressed in an orthonormal frame of the sum-zero hyperplane.
        let np1 = n + 1;
        let mut m = DMatrix::zeros(np1, np1 + 1);
        for i in 0..np1 {
            m[(i, 0)] = 1.0;
            m[(i, 1 + i)] = 1.0;
        }
        let q = m.qr().q();
        let frame = q.columns(1, n).into_owned();
        let scale = (np1 as f64 / n as f64).sqrt();
        let mut vertices = Vec::with_capacity(np1);
        for i in 0..np1 {
            let mut w = vec![-1.0 / np1 as f64; np1];
            w[i] += 1.0;
            let v: Vec<f64> = (0..n)
                .map(|j| scale * (0..np1).map(|r| frame[(r, j)] * w[r]).sum::<f64>())
                .collect();
            vertices.push(v);
        }
        let edge = (2.0 + 2.0 / n as f64).sqrt();
        let facet_area =
            edge.powi(n as i32 - 1) / factorial(n - 1) * (n as f64 / 2f64.powi(n as i32 - 1)).sqrt();
        let offset = 1.0 / n as f64;
        let facets: Vec<Facet> = vertices
            .iter()
            .map(|v| Facet {
                normal: v.iter().map(|x| -x).collect(),
                offset,
                area: facet_area,
            })
            .collect();
        let volume = facets.iter().map(|f| f.offset * f.area).sum::<f64>() / n as f64;
        ConvexPolytope {
            dim: n,
            vertices,
            facets,
            family: Family::Simplex,
            volume,
        }
    }

    /// Hull of a point cloud containing the origin in its interior.
    pub fn from_vertices(points: &[Vec<f64>], dim: usize) -> Result<Self> {
        let hull = convex_hull(points, dim, false)?;
        let vertices: Vec<Vec<f64>> = hull
            .vertices
            .iter()
            .map(|&i| points[i].clone())
            .collect();
        let facets: Vec<Facet> = hull
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: f.offset,
                area: f.area,
            })
            .collect();
        for f in &facets {
            if f.offset <= 0.0 {
                return Err(Error::Degenerate(
                    "polytope does not contain the origin in its interior".into(),
                ));
            }
        }
        let poly = ConvexPolytope {
            dim,
            vertices,
            facets,
            family: Family::General,
            volume: hull.volume,
        };
        let total: f64 = poly.facets.iter().map(|f| f.area).sum();
        if poly.closure_defect() > 1e-8 * total.max(1.0) {
            return Err(Error::Degenerate("facet normals do not close up".into()));
        }
        Ok(poly)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// | sum of area * normal |, zero for any closed surface.
    pub fn closure_defect(&self) -> f64 {
        let mut s = vec![0.0; self.dim];
        for f in &self.facets {
            for i in 0..self.dim {
                s[i] += f.area * f.normal[i];
            }
        }
        norm(&s)
    }

    pub fn gauge(&self, x: &[f64]) -> f64 {
        match self.family {
            Family::Cube { a } => x.iter().fold(0.0f64, |m, v| m.max(v.abs())) / a,
            Family::Cross { a } => x.iter().map(|v| v.abs()).sum::<f64>() / a,
            _ => self
                .facets
                .iter()
                .fold(0.0f64, |m, f| m.max(dot(&f.normal, x) / f.offset)),
        }
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        match self.family {
            Family::Cube { a } => a * u.iter().map(|v| v.abs()).sum::<f64>(),
            Family::Cross { a } => a * u.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            _ => self
                .vertices
                .iter()
                .fold(f64::NEG_INFINITY, |m, v| m.max(dot(v, u))),
        }
    }

    pub fn support_point(&self, u: &[f64]) -> Vec<f64> {
        match self.family {
            Family::Cube { a } => u
                .iter()
                .map(|&v| if v >= 0.0 { a } else { -a })
                .collect(),
            Family::Cross { a } => {
                let mut best = 0;
                for i in 0..u.len() {
                    if u[i].abs() > u[best].abs() {
                        best = i;
                    }
                }
                let mut x = vec![0.0; u.len()];
                x[best] = a * u[best].signum();
                x
            }
            _ => {
                let mut best = 0;
                let mut bv = f64::NEG_INFINITY;
                for (i, v) in self.vertices.iter().enumerate() {
                    let d = dot(v, u);
                    if d > bv {
                        bv = d;
                        best = i;
                    }
                }
                self.vertices[best].clone()
            }
        }
    }

    /// Exact volume of the central section: restrict the facet system to H,
    /// enumerate the vertices of the resulting m-dimensional polytope, and
    /// take its hull.
    pub fn section_volume(&self, h: &Subspace) -> Result<f64> {
        let m = h.dim();
        if h.ambient() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: h.ambient(),
            });
        }
        // Rows of the restricted system <B^T a_i, y> <= b_i.
        let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
        for f in &self.facets {
            let c = h.coords(&f.normal);
            if norm(&c) > 1e-12 {
                rows.push((c, f.offset));
            }
        }
        let scale = rows.iter().fold(0.0f64, |s, r| s.max(r.1.abs())).max(1.0);
        let feas = 1e-9 * scale;
        // A section vertex on more than m facets is recovered by several row
        // subsets, each with its own rounding; merge those clusters well above
        // solver noise or the hull sees spurious degenerate ridges.
        let vertex_tol = 1e-7 * scale;
        let mut pts: Vec<Vec<f64>> = Vec::new();
        let mut idx: Vec<usize> = (0..m).collect();
        loop {
            let mut a = DMatrix::zeros(m, m);
            let mut b = nalgebra::DVector::zeros(m);
            for (r, &i) in idx.iter().enumerate() {
                for c in 0..m {
                    a[(r, c)] = rows[i].0[c];
                }
                b[r] = rows[i].1;
            }
            if let Some(sol) = a.lu().solve(&b) {
                let y: Vec<f64> = sol.iter().copied().collect();
                if y.iter().all(|v| v.is_finite())
                    && rows.iter().all(|(c, off)| dot(c, &y) <= off + feas)
                    && !pts.iter().any(|p| {
                        p.iter().zip(&y).all(|(a, b)| (a - b).abs() <= vertex_tol)
                    })
                {
                    pts.push(y);
                }
            }
            if !advance(&mut idx, rows.len()) {
                break;
            }
        }
        if pts.len() <= m {
            return Err(Error::Degenerate("section has empty interior".into()));
        }
        Ok(convex_hull(&pts, m, false)?.volume)
    }

    /// Image under an invertible linear map; normals and areas follow the
    /// usual cofactor transformation.
    pub fn transform(&self, t: &DMatrix<f64>) -> Result<Self> {
        let det = t.clone().lu().determinant();
        if det.abs() < 1e-12 {
            return Err(Error::SingularMap(det.abs()));
        }
        let t_inv_t = t
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMap(det.abs()))?
            .transpose();
        let vertices: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .map(|v| super::mat_vec(t, v))
            .collect();
        let facets: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| {
                let un = super::mat_vec(&t_inv_t, &f.normal);
                let s = norm(&un);
                Facet {
                    normal: un.iter().map(|v| v / s).collect(),
                    offset: f.offset / s,
                    area: det.abs() * s * f.area,
                }
            })
            .collect();
        Ok(ConvexPolytope {
            dim: self.dim,
            vertices,
            facets,
            family: Family::General,
            volume: det.abs() * self.volume,
        })
    }

    /// Polar body. Cube and cross-polytope are exchanged analytically; a
    /// general symmetric polytope's polar is the hull of a_i / b_i.
    pub fn polar(&self) -> Result<Self> {
        match self.family {
            Family::Cube { a } => Ok(ConvexPolytope::cross(self.dim, 1.0 / a)),
            Family::Cross { a } => Ok(ConvexPolytope::cube(self.dim, 1.0 / a)),
            Family::Simplex => Err(Error::NotSymmetric(
                "simplex".into(),
                "polar duality is used only for symmetric bodies here",
            )),
            Family::General => {
                let pts: Vec<Vec<f64>> = self
                    .facets
                    .iter()
                    .map(|f| f.normal.iter().map(|v| v / f.offset).collect())
                    .collect();
                ConvexPolytope::from_vertices(&pts, self.dim)
            }
        }
    }
}

fn advance(idx: &mut [usize], total: usize) -> bool {
    let m = idx.len();
    if m > total {
        return false;
    }
    let mut i = m;
    while i > 0 {
        i -= 1;
        if idx[i] < total - (m - i) {
            idx[i] += 1;
            for j in i + 1..m {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product::<f64>().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cube_facet_data() {
        let c = ConvexPolytope::cube(3, 0.5);
        assert_eq!(c.facets().len(), 6);
        assert_relative_eq!(c.volume(), 1.0);
        for f in c.facets() {
            assert_relative_eq!(f.offset, 0.5);
            assert_relative_eq!(f.area, 1.0);
        }
        assert!(c.closure_defect() < 1e-14);
    }

    #[test]
    fn cross_polytope_volume_and_closure() {
        for n in 2..=5 {
            let c = ConvexPolytope::cross(n, 1.0);
            assert_relative_eq!(
                c.volume(),
                2f64.powi(n as i32) / factorial(n),
                epsilon = 1e-12
            );
            assert!(c.closure_defect() < 1e-12);
            assert_eq!(c.facets().len(), 1 << n);
            let v = c
                .facets()
                .iter()
                .map(|f| f.offset * f.area)
                .sum::<f64>()
                / n as f64;
            assert_relative_eq!(v, c.volume(), epsilon = 1e-12);
        }
    }

    #[test]
    fn simplex_geometry() {
        for n in 2..=5 {
            let s = ConvexPolytope::regular_simplex(n);
            assert_eq!(s.vertices().len(), n + 1);
            for v in s.vertices() {
                assert_relative_eq!(norm(v), 1.0, epsilon = 1e-12);
            }
            for (i, vi) in s.vertices().iter().enumerate() {
                for vj in &s.vertices()[i + 1..] {
                    assert_relative_eq!(dot(vi, vj), -1.0 / n as f64, epsilon = 1e-12);
                }
            }
            assert!(s.closure_defect() < 1e-12);
            // Centroid at the origin.
            let mut c = vec![0.0; n];
            for v in s.vertices() {
                for i in 0..n {
                    c[i] += v[i] / (n + 1) as f64;
                }
            }
            assert!(norm(&c) < 1e-12);
        }
        let tet = ConvexPolytope::regular_simplex(3);
        assert_relative_eq!(tet.volume(), 8.0 * 3f64.sqrt() / 27.0, epsilon = 1e-12);
    }

    #[test]
    fn support_matches_offsets_on_facet_normals() {
        for poly in [
            ConvexPolytope::cube(4, 1.0),
            ConvexPolytope::cross(4, 1.0),
            ConvexPolytope::regular_simplex(4),
        ] {
            for f in poly.facets() {
                assert_relative_eq!(poly.support(&f.normal), f.offset, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn gauge_is_one_on_vertices() {
        for poly in [
            ConvexPolytope::cube(3, 2.0),
            ConvexPolytope::cross(3, 0.5),
            ConvexPolytope::regular_simplex(3),
        ] {
            for v in poly.vertices() {
                assert_relative_eq!(poly.gauge(v), 1.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn diagonal_cube_section_is_a_hexagon() {
        let cube = ConvexPolytope::cube(3, 1.0);
        let d = 3f64.sqrt().recip();
        let h = Subspace::hyperplane(&[d, d, d]).unwrap();
        assert_relative_eq!(
            cube.section_volume(&h).unwrap(),
            3.0 * 3f64.sqrt(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn coordinate_sections_recover_lower_cubes() {
        let cube = ConvexPolytope::cube(4, 1.0);
        let h = Subspace::coordinate(4, &[0, 2, 3]).unwrap();
        assert_relative_eq!(cube.section_volume(&h).unwrap(), 8.0, epsilon = 1e-6);
        let cross = ConvexPolytope::cross(4, 1.0);
        assert_relative_eq!(
            cross.section_volume(&h).unwrap(),
            8.0 / 6.0,
            epsilon = 1e-6
        );
    }

    #[test]
    fn from_vertices_recovers_octahedron() {
        let cross = ConvexPolytope::cross(3, 1.0);
        let rebuilt = ConvexPolytope::from_vertices(cross.vertices(), 3).unwrap();
        // from_vertices joggles, so expect joggle-level accuracy only.
        assert_relative_eq!(rebuilt.volume(), cross.volume(), max_relative = 1e-6);
        assert_eq!(rebuilt.facets().len(), 8);
    }

    #[test]
    fn transform_keeps_surface_closed_and_scales_volume() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = DMatrix::from_fn(3, 3, |_, _| rng.gen::<f64>() - 0.5)
            + DMatrix::identity(3, 3) * 2.0;
        let det = t.clone().lu().determinant().abs();
        for poly in [ConvexPolytope::cube(3, 1.0), ConvexPolytope::cross(3, 1.0)] {
            let img = poly.transform(&t).unwrap();
            assert_relative_eq!(img.volume(), det * poly.volume(), epsilon = 1e-10);
            let total: f64 = img.facets().iter().map(|f| f.area).sum();
            assert!(img.closure_defect() < 1e-10 * total);
            // h_{TK}(u) = h_K(T^T u).
            for _ in 0..20 {
                let u: Vec<f64> = (0..3).map(|_| rng.gen::<f64>() - 0.5).collect();
                let tu = super::super::tr_mat_vec(&t, &u);
                assert_relative_eq!(img.support(&u), poly.support(&tu), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn polar_exchanges_cube_and_cross() {
        let cube = ConvexPolytope::cube(3, 2.0);
        let p = cube.polar().unwrap();
        assert_relative_eq!(p.volume(), ConvexPolytope::cross(3, 0.5).volume());
        let general = ConvexPolytope::from_vertices(cube.vertices(), 3).unwrap();
        let gp = general.polar().unwrap();
        // Two joggled hulls in a row; accuracy is joggle-limited.
        assert_relative_eq!(gp.volume(), p.volume(), max_relative = 1e-5);
    }
}
