use serde::{Deserialize, Serialize};

use super::cell::{PrismCell, PrismaticSet};
use super::degree::{Construction, MultiDegree};
use crate::error::{Error, Result};
use crate::simplicial_core::{canonical_point, eps, BaryPoint, NormalForm, BARY_TOL};

/// A point `(t, s^0, ..., s^p)` of `Δ^p × Δ^{q_0} × ... × Δ^{q_p}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrismPoint {
    pub t: BaryPoint,
    pub s: Vec<BaryPoint>,
}

impl PrismPoint {
    pub fn check(&self, deg: &MultiDegree) -> Result<()> {
        if self.t.dim() != deg.p() || self.s.len() != deg.p() + 1 {
            return Err(Error::ShapeMismatch(format!("point does not fit {deg}")));
        }
        for (k, (si, &qi)) in self.s.iter().zip(deg.q()).enumerate() {
            if si.dim() != qi {
                return Err(Error::ShapeMismatch(format!("fiber point {k} has dim {}, expected {qi}", si.dim())));
            }
        }
        Ok(())
    }

    pub fn barycenter(deg: &MultiDegree) -> Self {
        PrismPoint { t: BaryPoint::barycenter(deg.p()), s: deg.q().iter().map(|&q| BaryPoint::barycenter(q)).collect() }
    }
}

/// `λ_p(t, s, x)`: the point `(t_0 s^0, ..., t_p s^p)` of `Δ^{q+p}` together
/// with the simplex it lives on.
pub fn lambda_eval(cell: &PrismCell, pt: &PrismPoint) -> Result<(BaryPoint, NormalForm)> {
    if cell.construction == Construction::Pbar {
        return Err(Error::Invalid("λ is defined on P and Pf cells".into()));
    }
    pt.check(&cell.deg)?;
    let mut coords = Vec::with_capacity(cell.deg.payload_dim(cell.construction) + 1);
    for (ti, si) in pt.t.coords().iter().zip(&pt.s) {
        coords.extend(si.coords().iter().map(|c| ti * c));
    }
    Ok((BaryPoint::new(coords)?, cell.simplex().clone()))
}

/// Largest coordinate gap between `λ_p(ε^i t, s, x)` and
/// `λ_{p-1}(t, proj_i s, d_(i) x)` as points of the realization;
/// infinite when they land in different cells.
pub fn lambda_face_discrepancy(ps: &PrismaticSet<'_>, cell: &PrismCell, i: usize, t: &BaryPoint, s: &[BaryPoint]) -> Result<f64> {
    let full = PrismPoint { t: eps(i, t)?, s: s.to_vec() };
    let (u, x) = lambda_eval(cell, &full)?;
    let face = ps.base_face(cell, i)?;
    let mut rest = s.to_vec();
    rest.remove(i);
    let (u2, x2) = lambda_eval(&face, &PrismPoint { t: t.clone(), s: rest })?;
    let tol = 10.0 * BARY_TOL;
    let (g1, c1) = canonical_point(ps.base(), &x, u.coords(), tol)?;
    let (g2, c2) = canonical_point(ps.base(), &x2, u2.coords(), tol)?;
    if g1 != g2 {
        return Ok(f64::INFINITY);
    }
    Ok(c1.iter().zip(&c2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}
