use serde::Serialize;

use crate::error::{Error, Result};
use crate::prismatic::{Construction, MultiDegree};
use crate::simplicial_core::{eval_coord_map, BaryPoint, CoordKind, Monotone, BARY_TOL};

/// Interior coordinates `1 ≥ t_1 ≥ ... ≥ t_p ≥ 0` of a point of `Δ^p`, with
/// `t_k` the barycentric mass on vertices `k..=p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InteriorPoint(Vec<f64>);

impl InteriorPoint {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        let mut prev = 1.0;
        for &x in &t {
            if !x.is_finite() || x > prev + BARY_TOL || x < -BARY_TOL {
                return Err(Error::InvalidPoint(format!("interior coordinates {t:?} are not decreasing in [0, 1]")));
            }
            prev = x;
        }
        Ok(InteriorPoint(t))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

pub fn to_interior(b: &BaryPoint) -> InteriorPoint {
    let c = b.coords();
    let mut t = vec![0.0; c.len() - 1];
    let mut acc = 0.0;
    for k in (1..c.len()).rev() {
        acc += c[k];
        t[k - 1] = acc.min(1.0);
    }
    InteriorPoint(t)
}

pub fn from_interior(t: &InteriorPoint) -> Result<BaryPoint> {
    let u = &t.0;
    let n = u.len();
    let at = |k: usize| if k == 0 { 1.0 } else { u[k - 1] };
    let c: Vec<f64> = (0..=n).map(|k| if k == n { at(n) } else { at(k) - at(k + 1) }).map(|x| x.max(0.0)).collect();
    BaryPoint::new(c)
}

fn check_fibers(deg: &MultiDegree, t: &InteriorPoint, s: &[BaryPoint]) -> Result<()> {
    if t.dim() != deg.p() || s.len() != deg.p() + 1 || s.iter().zip(deg.q()).any(|(x, &q)| x.dim() != q) {
        let dims: Vec<usize> = s.iter().map(BaryPoint::dim).collect();
        return Err(Error::ShapeMismatch(format!("base point of dim {} and fiber points of dims {dims:?} at {deg}", t.dim())));
    }
    Ok(())
}

/// The blockwise affine map `Δ^p × Δ^{q_0} × ... × Δ^{q_p} -> Δ^{q+2p+1}` in
/// interior coordinates.
pub fn lambda_interior(deg: &MultiDegree, t: &InteriorPoint, s: &[BaryPoint]) -> Result<InteriorPoint> {
    check_fibers(deg, t, s)?;
    let p = deg.p();
    let tk = |k: usize| if k == 0 { 1.0 } else { t.0[k - 1] };
    let mut out = Vec::with_capacity(deg.payload_dim(Construction::Pbar));
    for (i, si) in s.iter().enumerate() {
        let fib = to_interior(si);
        if i < p {
            let (hi, lo) = (tk(i), tk(i + 1));
            out.extend(fib.0.iter().map(|x| x * (hi - lo) + lo));
            out.extend([lo, lo]);
        } else {
            out.extend(fib.0.iter().map(|x| x * tk(p)));
            out.push(0.0);
        }
    }
    InteriorPoint::new(out)
}

pub fn lambda_bar(deg: &MultiDegree, t: &InteriorPoint, s: &[BaryPoint]) -> Result<BaryPoint> {
    from_interior(&lambda_interior(deg, t, s)?)
}

/// Dimension of the target of `ρ^{(i)}`.
pub fn rho_target_dim(deg: &MultiDegree, i: usize) -> usize {
    deg.offset(i) + 2 * i - 1
}

/// `ρ^{(i)}`: all barycentric mass past the last retained coordinate is
/// added onto it.
pub fn rho_eval(i: usize, deg: &MultiDegree, u: &BaryPoint) -> Result<BaryPoint> {
    if i == 0 || i > deg.p() {
        return Err(Error::IndexOutOfRange { index: i, context: format!("ρ at {deg}") });
    }
    let n = deg.payload_dim(Construction::Pbar);
    if u.dim() != n {
        return Err(Error::ShapeMismatch(format!("point of Δ^{} for Δ^{n}", u.dim())));
    }
    let l = rho_target_dim(deg, i);
    let c = u.coords();
    let mut out = c[..l].to_vec();
    out.push(c[l..].iter().sum());
    BaryPoint::new(out)
}

/// `ρ^{(i)} λ(t)(s)` recomputed as `Σ_k t'_k ι_k(s^k)`, `ι_k` the inclusion of
/// block `k`, followed by the composite `η^l ∘ ... ∘ η^{n-1}`.
pub fn rho_lambda_composed(i: usize, deg: &MultiDegree, t: &InteriorPoint, s: &[BaryPoint]) -> Result<BaryPoint> {
    check_fibers(deg, t, s)?;
    if i == 0 || i > deg.p() {
        return Err(Error::IndexOutOfRange { index: i, context: format!("ρ at {deg}") });
    }
    let n = deg.payload_dim(Construction::Pbar);
    let weights = from_interior(t)?;
    let mut acc = vec![0.0; n + 1];
    for (k, (w, sk)) in weights.coords().iter().zip(s).enumerate() {
        let block: Vec<usize> = deg.block_positions(Construction::Pbar, k).collect();
        for (a, x) in acc.iter_mut().zip(Monotone::inclusion(&block, n).push_coords(sk.coords())) {
            *a += w * x;
        }
    }
    let mut u = BaryPoint::new(acc)?;
    for j in (rho_target_dim(deg, i)..n).rev() {
        u = eval_coord_map(CoordKind::Degeneracy, j, &u)?;
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(q: &[usize]) -> MultiDegree {
        MultiDegree::new(q.to_vec()).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn interior_conversion() {
        assert_eq!(to_interior(&BaryPoint::vertex(3, 0)).coords(), &[0.0, 0.0, 0.0]);
        assert_eq!(to_interior(&BaryPoint::vertex(3, 3)).coords(), &[1.0, 1.0, 1.0]);
        assert!(close(to_interior(&BaryPoint::new(vec![0.25, 0.75]).unwrap()).coords(), &[0.75]));
        let b = BaryPoint::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!(from_interior(&to_interior(&b)).unwrap().max_abs_diff(&b) < 1e-12);
        assert_eq!(from_interior(&InteriorPoint::new(vec![]).unwrap()).unwrap().coords(), &[1.0]);
        assert!(InteriorPoint::new(vec![0.2, 0.5]).is_err());
        assert!(InteriorPoint::new(vec![1.5]).is_err());
    }

    #[test]
    fn lambda_examples() {
        let d = deg(&[0, 0]);
        let t = InteriorPoint::new(vec![0.4]).unwrap();
        let s = vec![BaryPoint::vertex(0, 0), BaryPoint::vertex(0, 0)];
        assert!(close(lambda_interior(&d, &t, &s).unwrap().coords(), &[0.4, 0.4, 0.0]));
        assert!(close(lambda_bar(&d, &t, &s).unwrap().coords(), &[0.6, 0.0, 0.4, 0.0]));

        let d = deg(&[1, 2, 1]);
        let s: Vec<BaryPoint> = d.q().iter().map(|&q| BaryPoint::barycenter(q)).collect();
        let u = lambda_interior(&d, &InteriorPoint::new(vec![0.0, 0.0]).unwrap(), &s).unwrap();
        assert!(u.coords()[2..].iter().all(|&x| x == 0.0));
        let u = lambda_interior(&d, &InteriorPoint::new(vec![0.7, 0.2]).unwrap(), &s).unwrap();
        assert_eq!(u.dim(), d.payload_dim(Construction::Pbar));

        assert!(lambda_bar(&d, &InteriorPoint::new(vec![0.5]).unwrap(), &s).is_err());
    }

    #[test]
    fn rho_examples() {
        let d = deg(&[0, 0]);
        let u = BaryPoint::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!(close(rho_eval(1, &d, &u).unwrap().coords(), &[0.1, 0.9]));
        assert!(close(rho_eval(1, &d, &BaryPoint::vertex(3, 0)).unwrap().coords(), &[1.0, 0.0]));
        assert!(rho_eval(0, &d, &u).is_err());
        assert!(rho_eval(2, &d, &u).is_err());
    }

    #[test]
    fn composed_path_agrees() {
        let d = deg(&[2, 1, 0]);
        let s = vec![BaryPoint::new(vec![0.2, 0.5, 0.3]).unwrap(), BaryPoint::new(vec![0.6, 0.4]).unwrap(), BaryPoint::vertex(0, 0)];
        for t in [vec![0.9, 0.3], vec![1.0, 1.0], vec![0.0, 0.0], vec![0.5, 0.5]] {
            let t = InteriorPoint::new(t).unwrap();
            let lam = lambda_bar(&d, &t, &s).unwrap();
            for i in 1..=2 {
                let direct = rho_eval(i, &d, &lam).unwrap();
                assert!(direct.max_abs_diff(&rho_lambda_composed(i, &d, &t, &s).unwrap()) < 1e-12);
            }
        }
    }
}
