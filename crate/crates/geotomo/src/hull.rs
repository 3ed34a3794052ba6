//! Convex hulls in dimensions 1 through 8.
//!
//! Dimension 2 uses the exact monotone chain. Higher dimensions run an
//! incremental beneath-beyond pass that assumes general position; inputs
//! with structured coincidences (projected lattice vertices and the like)
//! are nudged by a deterministic joggle first, either on request or
//! automatically when a degeneracy is detected. Joggled output is accurate
//! to roughly the joggle amplitude, which callers on the exact path avoid
//! by not asking for it.

use crate::error::{Error, Result};
use crate::linalg::{dot, hyperplane_through, simplex_volume_from_edges};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A facet of the hull, grouped by supporting hyperplane. `vertices` are
/// indices into the input point list.
#[derive(Debug, Clone)]
pub struct HullFacet {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub area: f64,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Hull {
    pub dim: usize,
    pub volume: f64,
    pub facets: Vec<HullFacet>,
    /// Indices of input points that are hull vertices.
    pub vertices: Vec<usize>,
}

const VIS_EPS_REL: f64 = 1e-10;
const JOGGLE_REL: f64 = 3e-8;

/// Convex hull of `points` in R^dim. `joggle` forces the perturbation from
/// the start; otherwise it is applied only after a degeneracy is detected.
pub fn convex_hull(points: &[Vec<f64>], dim: usize, joggle: bool) -> Result<Hull> {
    if dim == 0 || dim > 8 {
        return Err(Error::DimensionCap {
            op: "convex_hull",
            cap: 8,
            got: dim,
        });
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::Degenerate("point dimension mismatch".into()));
    }
    if dim == 1 {
        return hull_1d(points);
    }
    if dim == 2 {
        return hull_2d(points);
    }
    if !joggle {
        match beneath_beyond(points, dim) {
            Ok(h) => return Ok(h),
            Err(Error::Degenerate(_)) => {}
            Err(e) => return Err(e),
        }
    }
    // A joggled pass can itself leave some coincidence within the visibility
    // tolerance, so the perturbation grows tenfold per retry; keep it
    // deterministic.
    for round in 0..4u64 {
        if let Ok(h) = beneath_beyond(&joggled(points, dim, round), dim) {
            return Ok(h);
        }
    }
    Err(Error::Degenerate(
        "hull construction failed even after joggling".into(),
    ))
}

fn scale_of(points: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |m, &x| m.max(x.abs()))
        .max(1e-300)
}

fn joggled(points: &[Vec<f64>], dim: usize, round: u64) -> Vec<Vec<f64>> {
    let amp = JOGGLE_REL * scale_of(points) * 10f64.powi(round as i32);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a6f_67676c65 ^ round);
    points
        .iter()
        .map(|p| {
            (0..dim)
                .map(|j| p[j] + amp * (rng.gen::<f64>() - 0.5))
                .collect()
        })
        .collect()
}

fn hull_1d(points: &[Vec<f64>]) -> Result<Hull> {
    if points.is_empty() {
        return Err(Error::Degenerate("empty point set".into()));
    }
    let (mut imin, mut imax) = (0, 0);
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[imin][0] {
            imin = i;
        }
        if p[0] > points[imax][0] {
            imax = i;
        }
    }
    let (a, b) = (points[imin][0], points[imax][0]);
    if b - a <= 0.0 {
        return Err(Error::Degenerate("1-d hull has zero length".into()));
    }
    Ok(Hull {
        dim: 1,
        volume: b - a,
        facets: vec![
            HullFacet {
                normal: vec![1.0],
                offset: b,
                area: 1.0,
                vertices: vec![imax],
            },
            HullFacet {
                normal: vec![-1.0],
                offset: -a,
                area: 1.0,
                vertices: vec![imin],
            },
        ],
        vertices: vec![imin, imax],
    })
}

fn hull_2d(points: &[Vec<f64>]) -> Result<Hull> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a]
            .partial_cmp(&points[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    idx.dedup_by(|&mut a, &mut b| points[a] == points[b]);
    if idx.len() < 3 {
        return Err(Error::Degenerate("2-d hull needs 3 distinct points".into()));
    }
    let cross = |o: usize, a: usize, b: usize| -> f64 {
        let (po, pa, pb) = (&points[o], &points[a], &points[b]);
        (pa[0] - po[0]) * (pb[1] - po[1]) - (pa[1] - po[1]) * (pb[0] - po[0])
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    let ring: Vec<usize> = lower.into_iter().chain(upper).collect();
    if ring.len() < 3 {
        return Err(Error::Degenerate("2-d hull is collinear".into()));
    }
    let mut area2 = 0.0;
    let mut facets = Vec::with_capacity(ring.len());
    for i in 0..ring.len() {
        let a = &points[ring[i]];
        let b = &points[ring[(i + 1) % ring.len()]];
        area2 += a[0] * b[1] - b[0] * a[1];
        let edge = [b[0] - a[0], b[1] - a[1]];
        let len = (edge[0] * edge[0] + edge[1] * edge[1]).sqrt();
        // Ring is counterclockwise, so the outward normal is the edge
        // rotated clockwise.
        let normal = vec![edge[1] / len, -edge[0] / len];
        let offset = normal[0] * a[0] + normal[1] * a[1];
        facets.push(HullFacet {
            normal,
            offset,
            area: len,
            vertices: vec![ring[i], ring[(i + 1) % ring.len()]],
        });
    }
    Ok(Hull {
        dim: 2,
        volume: 0.5 * area2.abs(),
        facets,
        vertices: ring,
    })
}

/// One simplicial facet of the working hull.
struct Simplex {
    verts: Vec<usize>,
    normal: Vec<f64>,
    offset: f64,
}

fn beneath_beyond(points: &[Vec<f64>], dim: usize) -> Result<Hull> {
    let eps = VIS_EPS_REL * scale_of(points);
    let seed = initial_simplex(points, dim, eps)?;
    let mut interior = vec![0.0; dim];
    for &i in &seed {
        for j in 0..dim {
            interior[j] += points[i][j] / (dim as f64 + 1.0);
        }
    }
    let mut facets: Vec<Simplex> = Vec::new();
    for skip in 0..=dim {
        let verts: Vec<usize> = seed
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect();
        facets.push(oriented_facet(points, verts, &interior, dim)?);
    }
    let in_seed = |i: usize| seed.contains(&i);
    for p in 0..points.len() {
        if in_seed(p) {
            continue;
        }
        let pt = &points[p];
        let visible: Vec<usize> = (0..facets.len())
            .filter(|&f| dot(&facets[f].normal, pt) - facets[f].offset > eps)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Ridges of the visible patch that occur exactly once bound the
        // horizon. In general position nothing occurs three times. Ordered
        // map so facet insertion order, and with it every later summation
        // order, is a function of the input alone.
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for &f in &visible {
            let vs = &facets[f].verts;
            for skip in 0..vs.len() {
                let mut ridge: Vec<usize> = vs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut new_facets = Vec::new();
        for (ridge, count) in ridges {
            match count {
                1 => {
                    let mut verts = ridge;
                    verts.push(p);
                    new_facets.push(oriented_facet(points, verts, &interior, dim)?);
                }
                2 => {}
                _ => {
                    return Err(Error::Degenerate(format!(
                        "ridge shared by {count} visible facets"
                    )))
                }
            }
        }
        let mut keep = Vec::with_capacity(facets.len() - visible.len() + new_facets.len());
        let mut vis_iter = visible.iter().peekable();
        for (i, f) in facets.into_iter().enumerate() {
            if vis_iter.peek() == Some(&&i) {
                vis_iter.next();
            } else {
                keep.push(f);
            }
        }
        keep.extend(new_facets);
        facets = keep;
    }
    finish_hull(points, dim, facets, &interior)
}

fn initial_simplex(points: &[Vec<f64>], dim: usize, eps: f64) -> Result<Vec<usize>> {
    let mut chosen: Vec<usize> = vec![0];
    // Greedy: extend with the point farthest from the current affine hull,
    // tracked through an orthonormal edge frame.
    let mut frame: Vec<Vec<f64>> = Vec::new();
    while chosen.len() <= dim {
        let base = &points[chosen[0]];
        let mut best = (0.0, usize::MAX);
        for (i, p) in points.iter().enumerate() {
            if chosen.contains(&i) {
                continue;
            }
            let mut r: Vec<f64> = p.iter().zip(base).map(|(a, b)| a - b).collect();
            for e in &frame {
                let c = dot(&r, e);
                for (rj, ej) in r.iter_mut().zip(e) {
                    *rj -= c * ej;
                }
            }
            let d = dot(&r, &r).sqrt();
            if d > best.0 {
                best = (d, i);
            }
        }
        if best.1 == usize::MAX || best.0 <= eps.max(1e-12) {
            return Err(Error::Degenerate(format!(
                "points span only {} dimensions, need {}",
                chosen.len() - 1,
                dim
            )));
        }
        let p = &points[best.1];
        let mut r: Vec<f64> = p.iter().zip(base).map(|(a, b)| a - b).collect();
        for e in &frame {
            let c = dot(&r, e);
            for (rj, ej) in r.iter_mut().zip(e) {
                *rj -= c * ej;
            }
        }
        let nrm = dot(&r, &r).sqrt();
        for x in &mut r {
            *x /= nrm;
        }
        frame.push(r);
        chosen.push(best.1);
    }
    Ok(chosen)
}

fn oriented_facet(
    points: &[Vec<f64>],
    verts: Vec<usize>,
    interior: &[f64],
    dim: usize,
) -> Result<Simplex> {
    let rows: Vec<&[f64]> = verts.iter().map(|&v| points[v].as_slice()).collect();
    let (mut normal, mut offset) = hyperplane_through(&rows, dim)
        .ok_or_else(|| Error::Degenerate("degenerate facet hyperplane".into()))?;
    if dot(&normal, interior) > offset {
        for x in &mut normal {
            *x = -*x;
        }
        offset = -offset;
    }
    Ok(Simplex {
        verts,
        normal,
        offset,
    })
}

fn finish_hull(
    points: &[Vec<f64>],
    dim: usize,
    simplices: Vec<Simplex>,
    interior: &[f64],
) -> Result<Hull> {
    let scale = scale_of(points);
    let mut volume = 0.0;
    // Group simplicial pieces by supporting hyperplane.
    let mut groups: BTreeMap<Vec<i64>, (Vec<f64>, f64, f64, Vec<usize>)> = BTreeMap::new();
    let quant_dir = |x: f64| (x / 1e-7).round() as i64;
    let quant_off = |x: f64| (x / (1e-7 * scale)).round() as i64;
    for s in &simplices {
        let base = &points[s.verts[0]];
        let edges: Vec<Vec<f64>> = s.verts[1..]
            .iter()
            .map(|&v| points[v].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let area = simplex_volume_from_edges(&edges);
        let height = s.offset - dot(&s.normal, interior);
        volume += area * height / dim as f64;
        let mut key: Vec<i64> = s.normal.iter().map(|&x| quant_dir(x)).collect();
        key.push(quant_off(s.offset));
        let entry = groups
            .entry(key)
            .or_insert_with(|| (s.normal.clone(), s.offset, 0.0, Vec::new()));
        entry.2 += area;
        for &v in &s.verts {
            if !entry.3.contains(&v) {
                entry.3.push(v);
            }
        }
    }
    let mut facets: Vec<HullFacet> = groups
        .into_values()
        .map(|(normal, offset, area, mut vertices)| {
            vertices.sort_unstable();
            HullFacet {
                normal,
                offset,
                area,
                vertices,
            }
        })
        .collect();
    // Deterministic order regardless of hash iteration.
    facets.sort_by(|a, b| {
        a.normal
            .partial_cmp(&b.normal)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut vertices: Vec<usize> = facets.iter().flat_map(|f| f.vertices.clone()).collect();
    vertices.sort_unstable();
    vertices.dedup();
    if volume <= 0.0 {
        return Err(Error::Degenerate("hull has zero volume".into()));
    }
    Ok(Hull {
        dim,
        volume,
        facets,
        vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_points(n: usize, a: f64) -> Vec<Vec<f64>> {
        (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .map(|j| if mask >> j & 1 == 1 { a } else { -a })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn square_hull() {
        let h = convex_hull(&cube_points(2, 1.0), 2, false).unwrap();
        assert!((h.volume - 4.0).abs() < 1e-12);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.vertices.len(), 4);
        for f in &h.facets {
            assert!((f.area - 2.0).abs() < 1e-12);
            assert!((f.offset - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cube_3d_needs_joggle_but_gets_volume_right() {
        let h = convex_hull(&cube_points(3, 1.0), 3, true).unwrap();
        assert!((h.volume - 8.0).abs() < 1e-5);
        let total_area: f64 = h.facets.iter().map(|f| f.area).sum();
        assert!((total_area - 24.0).abs() < 1e-4);
    }

    #[test]
    fn simplex_4d() {
        let mut pts = vec![vec![0.0; 4]];
        for i in 0..4 {
            let mut p = vec![0.0; 4];
            p[i] = 1.0;
            pts.push(p);
        }
        let h = convex_hull(&pts, 4, false).unwrap();
        assert!((h.volume - 1.0 / 24.0).abs() < 1e-12);
        assert_eq!(h.facets.len(), 5);
    }

    #[test]
    fn octahedron_volume_and_closure() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [-1.0, 1.0] {
                let mut p = vec![0.0; 3];
                p[i] = s;
                pts.push(p);
            }
        }
        let h = convex_hull(&pts, 3, false).unwrap();
        assert!((h.volume - 8.0 / 6.0).abs() < 1e-12);
        assert_eq!(h.facets.len(), 8);
        // Surface closure: sum of area-weighted normals vanishes.
        let mut closure = [0.0; 3];
        for f in &h.facets {
            for j in 0..3 {
                closure[j] += f.area * f.normal[j];
            }
        }
        for c in closure {
            assert!(c.abs() < 1e-12);
        }
    }

    #[test]
    fn interior_points_are_ignored() {
        let mut pts = cube_points(3, 1.0);
        pts.push(vec![0.1, 0.2, -0.3]);
        pts.push(vec![0.0, 0.0, 0.0]);
        let h = convex_hull(&pts, 3, true).unwrap();
        assert!((h.volume - 8.0).abs() < 1e-5);
        assert_eq!(h.vertices.len(), 8);
    }

    #[test]
    fn collinear_input_is_degenerate() {
        let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, 2.0 * i as f64]).collect();
        assert!(matches!(
            convex_hull(&pts, 2, false),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn random_point_hulls_match_across_insertion_orders() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in [3usize, 4, 5] {
            let pts: Vec<Vec<f64>> = (0..24)
                .map(|_| (0..dim).map(|_| rng.gen::<f64>() - 0.5).collect())
                .collect();
            let h1 = convex_hull(&pts, dim, false).unwrap();
            let mut rev = pts.clone();
            rev.reverse();
            let h2 = convex_hull(&rev, dim, false).unwrap();
            assert!(
                (h1.volume - h2.volume).abs() < 1e-10 * h1.volume.max(1e-12),
                "dim {dim}: {} vs {}",
                h1.volume,
                h2.volume
            );
        }
    }
}
