//! Direction and subspace nets for the max/min sides of the checks.
//!
//! Every net lists its structured entries first (coordinate axes and
//! subspaces, diagonals, body hints) and only then the seeded random fill,
//! so growing the fill parameter appends entries without reordering the
//! prefix. Estimates taken over a net are therefore monotone in the net
//! size for a fixed seed.

use crate::bodies::{StarBody, Subspace};
use crate::error::Result;
use crate::radon::{sample_grassmann, sample_sphere, McConfig, Stream};

/// Unit directions for support-function and projection extrema.
pub struct DirectionNet {
    dirs: Vec<Vec<f64>>,
}

impl DirectionNet {
    pub fn for_bodies(
        bodies: &[&StarBody],
        extra: usize,
        cfg: &McConfig,
        stream: Stream,
    ) -> Self {
        let n = bodies[0].dim();
        let mut dirs: Vec<Vec<f64>> = Vec::new();
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            dirs.push(e);
        }
        let r2 = std::f64::consts::SQRT_2;
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
        // Full diagonals up to sign, first coordinate positive.
        let rn = (n as f64).sqrt();
        for mask in 0..(1u32 << (n - 1)) {
            let mut v = vec![1.0 / rn; n];
            for b in 0..n - 1 {
                if mask >> b & 1 == 1 {
                    v[b + 1] = -1.0 / rn;
                }
            }
            dirs.push(v);
        }
        for b in bodies {
            dirs.extend(b.hint_directions().iter().cloned());
        }
        let mut rng = cfg.rng(stream, 0);
        for _ in 0..extra {
            dirs.push(sample_sphere(n, &mut rng));
        }
        DirectionNet { dirs }
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.dirs.iter().map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }
}

/// m-dimensional subspaces for section extrema: every coordinate subspace,
/// complements of hint directions, then Haar-random fill.
pub struct SubspaceNet {
    subs: Vec<Subspace>,
}

impl SubspaceNet {
    pub fn for_bodies(
        bodies: &[&StarBody],
        m: usize,
        extra: usize,
        cfg: &McConfig,
        stream: Stream,
    ) -> Result<Self> {
        let n = bodies[0].dim();
        let k = n - m;
        let mut subs = Vec::new();
        for axes in combinations(n, m) {
            subs.push(Subspace::coordinate(n, &axes)?);
        }
        // Sections orthogonal to hint directions; a hint set that does not
        // span is skipped rather than an error.
        let mut hinted = 0usize;
        for b in bodies {
            let hints = b.hint_directions();
            if k == 1 {
                for h in hints {
                    if hinted >= 16 {
                        break;
                    }
                    if let Ok(s) = Subspace::hyperplane(h) {
                        subs.push(s);
                        hinted += 1;
                    }
                }
            } else {
                for w in hints.windows(k) {
                    if hinted >= 16 {
                        break;
                    }
                    if let Ok(s) = Subspace::complement(w, n) {
                        subs.push(s);
                        hinted += 1;
                    }
                }
            }
        }
        let mut rng = cfg.rng(stream, 0);
        for _ in 0..extra {
            subs.push(sample_grassmann(n, m, &mut rng));
        }
        Ok(SubspaceNet { subs })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subspace> {
        self.subs.iter()
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }
}

/// m-subsets of 0..n in lexicographic order.
fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        out.push(idx.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - m {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
