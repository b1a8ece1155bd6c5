use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const BARY_TOL: f64 = 1e-12;

/// A point of the standard simplex in barycentric coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaryPoint(Vec<f64>);

impl BaryPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("no coordinates".into()));
        }
        if coords.iter().any(|c| !c.is_finite() || *c < -BARY_TOL) {
            return Err(Error::InvalidPoint(format!("negative or non-finite coordinate in {coords:?}")));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > BARY_TOL * coords.len() as f64 {
            return Err(Error::InvalidPoint(format!("coordinates sum to {sum}")));
        }
        Ok(BaryPoint(coords))
    }

    pub fn vertex(n: usize, k: usize) -> Self {
        let mut c = vec![0.0; n + 1];
        c[k] = 1.0;
        BaryPoint(c)
    }

    pub fn barycenter(n: usize) -> Self {
        BaryPoint(vec![1.0 / (n + 1) as f64; n + 1])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn max_abs_diff(&self, other: &BaryPoint) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordKind {
    /// `ε^i: Δ^{n-1} -> Δ^n`
    Face,
    /// `η^i: Δ^{n+1} -> Δ^n`
    Degeneracy,
}

/// `ε^i` inserts a zero at slot `i`; `η^i` replaces `(t_i, t_{i+1})` by their sum.
pub fn eval_coord_map(kind: CoordKind, i: usize, t: &BaryPoint) -> Result<BaryPoint> {
    let mut c = t.0.clone();
    match kind {
        CoordKind::Face => {
            if i > c.len() {
                return Err(Error::IndexOutOfRange { index: i, context: format!("ε on Δ^{}", t.dim()) });
            }
            c.insert(i, 0.0);
        }
        CoordKind::Degeneracy => {
            if i + 1 >= c.len() {
                return Err(Error::IndexOutOfRange { index: i, context: format!("η on Δ^{}", t.dim()) });
            }
            let merged = c.remove(i + 1);
            c[i] += merged;
        }
    }
    Ok(BaryPoint(c))
}

pub fn eps(i: usize, t: &BaryPoint) -> Result<BaryPoint> {
    eval_coord_map(CoordKind::Face, i, t)
}

pub fn eta(i: usize, t: &BaryPoint) -> Result<BaryPoint> {
    eval_coord_map(CoordKind::Degeneracy, i, t)
}
