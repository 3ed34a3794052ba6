//! Densities integrated over bodies and sections.
//!
//! The quotient-type checkers require g(0) = ||g||_inf = 1 with g continuous
//! at 0; `central_normalized` reports whether a density qualifies. Bounded
//! measurable densities without that normalization are still usable on the
//! numerator side.

#[derive(Debug, Clone)]
pub enum DensityKind {
    Constant(f64),
    /// exp(-|x|^2 / 2).
    Gaussian,
    /// Indicator of {<x, normal> >= 0}.
    HalfSpace { normal: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct Density {
    tag: String,
    kind: DensityKind,
}

impl Density {
    pub fn constant(c: f64) -> Self {
        Density {
            tag: format!("const({c})"),
            kind: DensityKind::Constant(c),
        }
    }

    pub fn gaussian() -> Self {
        Density {
            tag: "gaussian".into(),
            kind: DensityKind::Gaussian,
        }
    }

    pub fn half_space(normal: Vec<f64>) -> Self {
        Density {
            tag: "halfspace".into(),
            kind: DensityKind::HalfSpace { normal },
        }
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn kind(&self) -> &DensityKind {
        &self.kind
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match &self.kind {
            DensityKind::Constant(c) => *c,
            DensityKind::Gaussian => {
                (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp()
            }
            DensityKind::HalfSpace { normal } => {
                let s: f64 = normal.iter().zip(x).map(|(a, b)| a * b).sum();
                if s >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Supremum over any central subspace (all three kinds attain their
    /// global sup on every subspace through the origin).
    pub fn sup(&self) -> f64 {
        match &self.kind {
            DensityKind::Constant(c) => *c,
            DensityKind::Gaussian => 1.0,
            DensityKind::HalfSpace { .. } => 1.0,
        }
    }

    /// The constant, when the density is one.
    pub fn as_constant(&self) -> Option<f64> {
        match self.kind {
            DensityKind::Constant(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_continuous(&self) -> bool {
        !matches!(self.kind, DensityKind::HalfSpace { .. })
    }

    /// g(0) = ||g||_inf = 1 with continuity at the origin, as the
    /// denominator side of the quotient inequalities requires.
    pub fn central_normalized(&self) -> bool {
        match &self.kind {
            DensityKind::Constant(c) => *c == 1.0,
            DensityKind::Gaussian => true,
            DensityKind::HalfSpace { .. } => false,
        }
    }
}
