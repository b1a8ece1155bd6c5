use serde::{Deserialize, Serialize};

use super::cell::{Payload, PrismCell};
use super::degree::{Construction, MultiDegree};
use crate::error::{Error, Result};
use crate::simplicial_core::{GenId, Monotone, NormalForm, SimplicialSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonKind {
    InclusionI,
    RetractionR,
    MapF,
}

/// `i(t, x) = (t, 1, s_0 ... s_p x)`: doubles every vertex of `x ∈ S_p`.
pub fn inclusion(s: &SimplicialSet, x: &NormalForm) -> Result<PrismCell> {
    let p = x.dim();
    let double = Monotone::new((0..2 * p + 2).map(|k| k / 2).collect(), p);
    Ok(PrismCell { construction: Construction::Pbar, deg: MultiDegree::zero(p), payload: Payload::Simplex(s.apply(x, &double)?) })
}

fn pbar_payload(cell: &PrismCell) -> Result<&NormalForm> {
    match (&cell.payload, cell.construction) {
        (Payload::Simplex(x), Construction::Pbar) => Ok(x),
        _ => Err(Error::ShapeMismatch(format!("expected a Pbar cell, got {cell}"))),
    }
}

/// `r`: keeps only the separator positions, giving an element of `S_p`.
pub fn retraction(s: &SimplicialSet, cell: &PrismCell) -> Result<NormalForm> {
    let x = pbar_payload(cell)?;
    s.apply(x, &Monotone::inclusion(&cell.deg.separators(), x.dim()))
}

/// `f`: deletes the separator positions, giving a `P` cell of the same multidegree.
pub fn map_f(s: &SimplicialSet, cell: &PrismCell) -> Result<PrismCell> {
    let x = pbar_payload(cell)?;
    let y = s.delete_positions(x, &cell.deg.separators())?;
    Ok(PrismCell { construction: Construction::P, deg: cell.deg.clone(), payload: Payload::Simplex(y) })
}

/// The operator of `aw` on a term: the last vertex of each block is repeated
/// as the first vertex of the next.
pub fn aw_operator(deg: &MultiDegree) -> Monotone {
    let n = deg.qsum();
    let mut values = Vec::with_capacity(n + deg.p() + 1);
    for i in 0..=deg.p() {
        let a = deg.offset(i);
        values.extend(a..=a + deg.q()[i]);
    }
    Monotone::new(values, n)
}

/// `aw(x)` in column `p`: one term per composition of `dim x` into `p+1` parts,
/// each with coefficient `+1`.
pub fn aw_map(s: &SimplicialSet, x: GenId, p: usize) -> Result<Vec<(i64, PrismCell)>> {
    s.generator(x)?;
    let n = x.dim;
    if n + p > s.truncation() {
        return Err(Error::DimensionOutOfRange { dim: (n + p) as i64, bound: s.truncation() });
    }
    MultiDegree::compositions(p, n)
        .into_iter()
        .map(|deg| {
            let y = s.apply(&NormalForm::of(x), &aw_operator(&deg))?;
            Ok((1, PrismCell { construction: Construction::P, deg, payload: Payload::Simplex(y) }))
        })
        .collect()
}
