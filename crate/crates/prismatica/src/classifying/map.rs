use serde::Serialize;

use super::coords::{lambda_bar, rho_eval, rho_target_dim, InteriorPoint};
use crate::error::{Error, Result};
use crate::gauge::{Element, FaceSpec, Group, GroupOps, TransitionFn, TransitionSet};
use crate::prismatic::{Construction, MultiDegree, PrismCell};
use crate::simplicial_core::BaryPoint;

/// The components `a_0..a_p` of `m(γ)` as evaluators. `faces[i]` is
/// `v_{σ,τ_i}` for the front face `τ_i` of `σ` on `0..=ρ-dim`; `a_i` is its
/// inverse at `ρ^{(i+1)} λ(t)(s)` and `a_p = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifyingTuple {
    pub deg: MultiDegree,
    pub faces: Vec<TransitionFn>,
}

/// Evaluations of the components at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TupleValue(pub Vec<Element>);

impl ClassifyingTuple {
    pub fn p(&self) -> usize {
        self.deg.p()
    }

    pub fn eval(&self, t: &TransitionSet, base_pt: &InteriorPoint, s: &[BaryPoint]) -> Result<TupleValue> {
        let g = t.group();
        let lam = lambda_bar(&self.deg, base_pt, s)?;
        let mut out = Vec::with_capacity(self.p() + 1);
        for (i, f) in self.faces.iter().enumerate() {
            let u = rho_eval(i + 1, &self.deg, &lam)?;
            out.push(g.inverse(&f.eval(g, u.coords())?)?);
        }
        out.push(g.identity());
        Ok(TupleValue(out))
    }
}

/// `m(γ)` for a cell of `P̄·S`.
pub fn classify_cell(t: &TransitionSet, cell: &PrismCell) -> Result<ClassifyingTuple> {
    if cell.construction != Construction::Pbar {
        return Err(Error::Invalid(format!("{cell} is not a Pbar cell")));
    }
    let sigma = cell.simplex();
    let n = cell.deg.payload_dim(Construction::Pbar);
    if sigma.dim() != n {
        return Err(Error::ShapeMismatch(format!("payload of dim {} at {}", sigma.dim(), cell.deg)));
    }
    let faces = (1..=cell.deg.p())
        .map(|i| t.extend_to_faces(sigma, &FaceSpec::Composite { kept: (0..=rho_target_dim(&cell.deg, i)).collect() }))
        .collect::<Result<_>>()?;
    Ok(ClassifyingTuple { deg: cell.deg.clone(), faces })
}

/// How two tuples representing the same class differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Translation {
    /// `a_j = b_j g`
    Right,
    /// `a_j = g b_j`
    Left,
}

/// Largest deviation from `a_j = b_j g` (or `g b_j`) with `g` read off the last
/// components.
pub fn translation_discrepancy(g: &Group, a: &TupleValue, b: &TupleValue, side: Translation) -> Result<f64> {
    if a.0.len() != b.0.len() || a.0.is_empty() {
        return Err(Error::ShapeMismatch(format!("tuples of lengths {} and {}", a.0.len(), b.0.len())));
    }
    let (al, bl) = (a.0.last().unwrap(), b.0.last().unwrap());
    let shift = match side {
        Translation::Right => g.multiply(&g.inverse(bl)?, al),
        Translation::Left => g.multiply(al, &g.inverse(bl)?),
    };
    let mut worst = 0.0f64;
    for (x, y) in a.0.iter().zip(&b.0) {
        let moved = match side {
            Translation::Right => g.multiply(y, &shift),
            Translation::Left => g.multiply(&shift, y),
        };
        worst = worst.max(g.distance(x, &moved));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::fixtures::fixture;
    use crate::prismatic::{Payload, PrismaticSet};

    #[test]
    fn trivial_and_degree_zero() {
        let s = fixture("simplex2", 6).unwrap();
        let t = TransitionSet::trivial(&s, Group::Zmod { m: 5 });
        let pbar = PrismaticSet::pbar(&s);
        let d = MultiDegree::new(vec![1, 0]).unwrap();
        for cell in pbar.cells(&d).unwrap() {
            let m = classify_cell(&t, &cell).unwrap();
            let v = m.eval(&t, &InteriorPoint::new(vec![0.3]).unwrap(), &[BaryPoint::barycenter(1), BaryPoint::vertex(0, 0)]).unwrap();
            assert_eq!(v.0, vec![Element::Mod(0); 2]);
        }
        let cell = pbar.cells(&MultiDegree::new(vec![2]).unwrap()).unwrap().remove(4);
        let m = classify_cell(&t, &cell).unwrap();
        assert!(m.faces.is_empty());
        assert_eq!(m.eval(&t, &InteriorPoint::new(vec![]).unwrap(), &[BaryPoint::barycenter(2)]).unwrap().0, vec![Element::Mod(0)]);
    }

    #[test]
    fn rejects_other_constructions() {
        let s = fixture("simplex2", 4).unwrap();
        let t = TransitionSet::trivial(&s, Group::Zmod { m: 5 });
        let cell = PrismaticSet::p(&s).cells(&MultiDegree::new(vec![0, 0]).unwrap()).unwrap().remove(0);
        assert!(matches!(classify_cell(&t, &cell), Err(Error::Invalid(_))));
        assert!(matches!(cell.payload, Payload::Simplex(_)));
    }

    #[test]
    fn translations() {
        let g = Group::Perm { n: 3 };
        let a = TupleValue(vec![Element::Perm(vec![1, 0, 2]), Element::Perm(vec![0, 1, 2])]);
        let h = Element::Perm(vec![0, 2, 1]);
        let right = TupleValue(a.0.iter().map(|x| g.multiply(x, &h)).collect());
        let left = TupleValue(a.0.iter().map(|x| g.multiply(&h, x)).collect());
        assert_eq!(translation_discrepancy(&g, &right, &a, Translation::Right).unwrap(), 0.0);
        assert_eq!(translation_discrepancy(&g, &left, &a, Translation::Left).unwrap(), 0.0);
        assert_eq!(translation_discrepancy(&g, &right, &a, Translation::Left).unwrap(), 1.0);
    }
}
