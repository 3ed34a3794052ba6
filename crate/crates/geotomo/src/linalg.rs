//! Small dense helpers used in sampling and hull hot paths, where going
//! through heap-allocated matrices per sample would dominate the runtime.

/// Determinant by Gaussian elimination with partial pivoting; `a` is a
/// row-major d x d buffer and is destroyed.
pub fn det_in_place(a: &mut [f64], d: usize) -> f64 {
    debug_assert_eq!(a.len(), d * d);
    let mut det = 1.0;
    for col in 0..d {
        let mut pivot = col;
        let mut best = a[col * d + col].abs();
        for row in (col + 1)..d {
            let v = a[row * d + col].abs();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..d {
                a.swap(col * d + j, pivot * d + j);
            }
            det = -det;
        }
        let diag = a[col * d + col];
        det *= diag;
        for row in (col + 1)..d {
            let f = a[row * d + col] / diag;
            if f != 0.0 {
                for j in col..d {
                    a[row * d + j] -= f * a[col * d + j];
                }
            }
        }
    }
    det
}

/// Unit normal and offset of the hyperplane through `d` points in R^d
/// (rows of `pts`). Returns None when the points are affinely degenerate.
pub fn hyperplane_through(pts: &[&[f64]], d: usize) -> Option<(Vec<f64>, f64)> {
    debug_assert_eq!(pts.len(), d);
    if d == 1 {
        return Some((vec![1.0], pts[0][0]));
    }
    // Normal by cofactor expansion of the (d-1) x d edge matrix.
    let mut edges = vec![0.0; (d - 1) * d];
    for i in 1..d {
        for j in 0..d {
            edges[(i - 1) * d + j] = pts[i][j] - pts[0][j];
        }
    }
    let mut normal = vec![0.0; d];
    let mut minor = vec![0.0; (d - 1) * (d - 1)];
    let mut sign = 1.0;
    for j in 0..d {
        let mut idx = 0;
        for r in 0..(d - 1) {
            for c in 0..d {
                if c != j {
                    minor[idx] = edges[r * d + c];
                    idx += 1;
                }
            }
        }
        normal[j] = sign * det_in_place(&mut minor, d - 1);
        sign = -sign;
    }
    let norm = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return None;
    }
    for x in &mut normal {
        *x /= norm;
    }
    let offset = dot(&normal, pts[0]);
    Some((normal, offset))
}

/// (m)-dimensional volume of the simplex spanned by `m` edge vectors in R^d,
/// via the Gram determinant.
pub fn simplex_volume_from_edges(edges: &[Vec<f64>]) -> f64 {
    let m = edges.len();
    if m == 0 {
        return 1.0;
    }
    let mut gram = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            gram[i * m + j] = dot(&edges[i], &edges[j]);
        }
    }
    let g = det_in_place(&mut gram, m);
    let mut fact = 1.0;
    for i in 2..=m {
        fact *= i as f64;
    }
    g.max(0.0).sqrt() / fact
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
