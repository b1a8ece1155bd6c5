use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::ChainComplex;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::prismatic::{aw_map, inclusion, map_f, MultiDegree, PrismCell, PrismaticSet};
use crate::simplicial_core::{GenId, NormalForm, SimplicialSet};

/// Sign convention for the vertical differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Block `i` carries `(-1)^{q_0+...+q_{i-1}+i}`.
    Total,
    /// Block `i` carries `(-1)^{q_0+...+q_{i-1}}` (Koszul signs of a product).
    Product,
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Bases plus index lookup for one degree.
struct Basis<T> {
    cells: Vec<T>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> Basis<T> {
    fn new(mut cells: Vec<T>, key: impl Fn(&T) -> String) -> Self {
        let mut keyed: Vec<(String, T)> = cells.drain(..).map(|c| (key(&c), c)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let cells: Vec<T> = keyed.into_iter().map(|(_, c)| c).collect();
        let index = cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Basis { cells, index }
    }
}

/// Builds `∂_n` for every degree from a per-cell boundary rule; terms that are
/// not basis elements must be reported as `None` by `keep`.
fn assemble<T, B, K>(bases: &[Basis<T>], boundary: B, keep: K) -> Result<Vec<IntMatrix>>
where
    T: Clone + Eq + Hash + Sync + Send + std::fmt::Display,
    B: Fn(&T) -> Result<Vec<(i64, T)>> + Sync,
    K: Fn(&T) -> bool + Sync,
{
    let mut mats = vec![IntMatrix::zeros(0, bases.first().map_or(0, |b| b.cells.len()))];
    for n in 1..bases.len() {
        let cols: Vec<Vec<(usize, i64)>> = bases[n]
            .cells
            .par_iter()
            .map(|c| {
                let mut col = Vec::new();
                for (coef, t) in boundary(c)? {
                    if !keep(&t) {
                        continue;
                    }
                    let row = *bases[n - 1]
                        .index
                        .get(&t)
                        .ok_or_else(|| Error::InternalInvariantBroken(format!("face {t} of {c} is not a basis cell")))?;
                    col.push((row, coef));
                }
                Ok(col)
            })
            .collect::<Result<_>>()?;
        let mut m = IntMatrix::zeros(bases[n - 1].cells.len(), bases[n].cells.len());
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col {
                m.add(i, j, &BigInt::from(v));
            }
        }
        mats.push(m);
    }
    Ok(mats)
}

/// The normalized chain complex of `S`: generators as basis, degenerate faces dropped.
pub fn simplicial_chain_complex(s: &SimplicialSet) -> Result<ChainComplex> {
    let top = match s.max_generator_dim() {
        Some(t) => t,
        None => return ChainComplex::new(Vec::new(), Vec::new(), false),
    };
    let bases: Vec<Basis<GenId>> = (0..=top)
        .map(|n| Basis::new((0..s.generator_count(n)).map(|index| GenId { dim: n, index }).collect(), |g| format!("{:08}", g.index)))
        .collect();
    let boundary = |g: &GenId| -> Result<Vec<(i64, GenId)>> {
        Ok(s.generator(*g)?.faces.iter().enumerate().filter(|(_, f)| !f.is_degenerate()).map(|(i, f)| (sign(i), f.gen)).collect())
    };
    let mats = assemble(&bases, boundary, |_| true)?;
    ChainComplex::new(bases.iter().map(|b| b.cells.iter().map(|g| g.to_string()).collect()).collect(), mats, false)
}

fn prism_basis(ps: &PrismaticSet<'_>, degs: Vec<MultiDegree>) -> Result<Basis<PrismCell>> {
    let mut cells = Vec::new();
    for d in degs {
        cells.extend(ps.cells(&d)?.into_iter().filter(|c| !ps.is_fiber_degenerate(c)));
    }
    Ok(Basis::new(cells, PrismCell::key))
}

fn vertical_terms(ps: &PrismaticSet<'_>, c: &PrismCell, orientation: Orientation) -> Result<Vec<(i64, PrismCell)>> {
    let deg = &c.deg;
    let mut out = Vec::new();
    for i in 0..=deg.p() {
        let qi = deg.q()[i];
        if qi == 0 {
            continue;
        }
        let block_sign = match orientation {
            Orientation::Total => sign(deg.offset(i) + i),
            Orientation::Product => sign(deg.offset(i)),
        };
        for j in 0..=qi {
            out.push((block_sign * sign(j), ps.fiber_face(c, i, j)?));
        }
    }
    Ok(out)
}

fn horizontal_terms(ps: &PrismaticSet<'_>, c: &PrismCell) -> Result<Vec<(i64, PrismCell)>> {
    let deg = &c.deg;
    let mut out = Vec::new();
    if deg.p() == 0 {
        return Ok(out);
    }
    for k in 0..=deg.p() {
        if deg.q()[k] == 0 {
            out.push((sign(deg.offset(k) + k), ps.base_face(c, k)?));
        }
    }
    Ok(out)
}

/// Fiber-normalized cells of total degree `0..=n_max` with `∂ = ∂_V + ∂_H`.
pub fn prismatic_total_complex(ps: &PrismaticSet<'_>, n_max: usize) -> Result<ChainComplex> {
    let bases: Vec<Basis<PrismCell>> =
        (0..=n_max).map(|n| prism_basis(ps, (0..=n).flat_map(|p| MultiDegree::compositions(p, n - p)).collect())).collect::<Result<_>>()?;
    let boundary = |c: &PrismCell| {
        let mut t = vertical_terms(ps, c, Orientation::Total)?;
        t.extend(horizontal_terms(ps, c)?);
        Ok(t)
    };
    let mats = assemble(&bases, boundary, |t| !ps.is_fiber_degenerate(t))?;
    ChainComplex::new(bases.iter().map(|b| b.cells.iter().map(PrismCell::key).collect()).collect(), mats, true)
}

/// Column `p` of the double complex with only the vertical differential,
/// graded by `q_0 + ... + q_p` up to `q_max`.
pub fn fibre_complex(ps: &PrismaticSet<'_>, p: usize, q_max: usize, orientation: Orientation) -> Result<ChainComplex> {
    let bases: Vec<Basis<PrismCell>> = (0..=q_max).map(|n| prism_basis(ps, MultiDegree::compositions(p, n))).collect::<Result<_>>()?;
    let mats = assemble(&bases, |c| vertical_terms(ps, c, orientation), |t| !ps.is_fiber_degenerate(t))?;
    ChainComplex::new(bases.iter().map(|b| b.cells.iter().map(PrismCell::key).collect()).collect(), mats, true)
}

fn index_of(basis: &[String], key: &str) -> Option<usize> {
    basis.binary_search_by(|k| k.as_str().cmp(key)).ok()
}

/// Matrices of `aw: C_*(S) -> fibre complex of column p`, degree by degree.
pub fn aw_chain_map(s: &SimplicialSet, c: &ChainComplex, fibre: &ChainComplex, p: usize) -> Result<Vec<IntMatrix>> {
    let top = c.top().unwrap_or(0).min(fibre.top().unwrap_or(0));
    let mut out = Vec::new();
    for n in 0..=top {
        let mut m = IntMatrix::zeros(fibre.rank(n), c.rank(n));
        for j in 0..s.generator_count(n) {
            for (coef, cell) in aw_map(s, GenId { dim: n, index: j }, p)? {
                if let Some(i) = index_of(fibre.basis(n), &cell.key()) {
                    m.add(i, j, &BigInt::from(coef));
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Matrices of the cellular map induced by `f: P̄(S) -> P(S)`.
pub fn map_f_chain_map(s: &SimplicialSet, pbar: &ChainComplex, p: &ChainComplex, pbar_cells: &PrismaticSet<'_>) -> Result<Vec<IntMatrix>> {
    let top = pbar.top().unwrap_or(0).min(p.top().unwrap_or(0));
    let mut out = Vec::new();
    for n in 0..=top {
        let mut m = IntMatrix::zeros(p.rank(n), pbar.rank(n));
        let cells = total_cells(pbar_cells, n)?;
        for (j, key) in pbar.basis(n).iter().enumerate() {
            let cell = cells.get(key.as_str()).ok_or_else(|| Error::InternalInvariantBroken(format!("lost basis cell {key}")))?;
            let image = map_f(s, cell)?;
            if let Some(i) = index_of(p.basis(n), &image.key()) {
                m.add(i, j, &BigInt::from(1));
            }
        }
        out.push(m);
    }
    Ok(out)
}

fn total_cells(ps: &PrismaticSet<'_>, n: usize) -> Result<HashMap<String, PrismCell>> {
    let mut out = HashMap::new();
    for p in 0..=n {
        for d in MultiDegree::compositions(p, n - p) {
            for c in ps.cells(&d)? {
                out.insert(c.key(), c);
            }
        }
    }
    Ok(out)
}

/// Matrices of `i: C_*(S) -> P̄` total complex, `x ↦ s_0 ... s_p x` at `(p; 0,...,0)`.
pub fn inclusion_chain_map(s: &SimplicialSet, c: &ChainComplex, pbar: &ChainComplex) -> Result<Vec<IntMatrix>> {
    let top = c.top().unwrap_or(0).min(pbar.top().unwrap_or(0));
    let mut out = Vec::new();
    for n in 0..=top {
        let mut m = IntMatrix::zeros(pbar.rank(n), c.rank(n));
        for j in 0..s.generator_count(n) {
            let cell = inclusion(s, &NormalForm::of(GenId { dim: n, index: j }))?;
            if let Some(i) = index_of(pbar.basis(n), &cell.key()) {
                m.add(i, j, &BigInt::from(1));
            }
        }
        out.push(m);
    }
    Ok(out)
}
