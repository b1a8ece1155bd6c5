use std::fmt;

use serde::Serialize;

use super::cell::PrismOp;
use super::degree::MultiDegree;
use super::identities::PrismaticOps;
use crate::error::{Error, Result};
use crate::simplicial_core::{NormalForm, SimplicialSet};

/// A cell of `E_p S = S × ... × S` (`p+1` factors) at `(p; q_0..q_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EsCell {
    pub deg: MultiDegree,
    pub factors: Vec<NormalForm>,
}

impl fmt::Display for EsCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "E {} ({})", self.deg, parts.join(", "))
    }
}

/// The strong prismatic set `E·S`: base faces project a factor away, base
/// degeneracies repeat one.
#[derive(Debug, Clone, Copy)]
pub struct ProductPrismatic<'a> {
    base: &'a SimplicialSet,
}

impl<'a> ProductPrismatic<'a> {
    pub fn new(base: &'a SimplicialSet) -> Self {
        ProductPrismatic { base }
    }

    fn factor_op(&self, c: &EsCell, i: usize, f: impl Fn(&NormalForm) -> Result<NormalForm>, dq: isize) -> Result<EsCell> {
        c.deg.check_block(i)?;
        let mut factors = c.factors.clone();
        factors[i] = f(&factors[i])?;
        let qi = c.deg.q()[i] as isize + dq;
        Ok(EsCell { deg: c.deg.with_block(i, qi as usize), factors })
    }
}

impl PrismaticOps for ProductPrismatic<'_> {
    type Cell = EsCell;

    fn degree<'c>(&self, c: &'c EsCell) -> &'c MultiDegree {
        &c.deg
    }

    fn cells(&self, deg: &MultiDegree) -> Result<Vec<EsCell>> {
        let per: Vec<Vec<NormalForm>> = deg.q().iter().map(|&q| self.base.simplices(q)).collect::<Result<_>>()?;
        let mut out = vec![Vec::new()];
        for choices in &per {
            let mut next = Vec::with_capacity(out.len() * choices.len());
            for prefix in &out {
                for x in choices {
                    let mut v: Vec<NormalForm> = prefix.clone();
                    v.push(x.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        Ok(out.into_iter().map(|factors| EsCell { deg: deg.clone(), factors }).collect())
    }

    fn apply_op(&self, c: &EsCell, op: PrismOp) -> Result<EsCell> {
        match op {
            PrismOp::FiberFace { block, index } => self.factor_op(c, block, |x| self.base.face(x, index), -1),
            PrismOp::FiberDegeneracy { block, index } => self.factor_op(c, block, |x| self.base.degeneracy(x, index), 1),
            PrismOp::BaseFace { block } => {
                let deg = c.deg.without_block(block)?;
                let mut factors = c.factors.clone();
                factors.remove(block);
                Ok(EsCell { deg, factors })
            }
            PrismOp::BaseDegeneracy { block } => {
                let deg = c.deg.with_repeated_block(block)?;
                let mut factors = c.factors.clone();
                factors.insert(block, factors[block].clone());
                Ok(EsCell { deg, factors })
            }
        }
        .and_then(|cell| {
            if cell.factors.iter().any(|x| x.dim() > self.base.truncation()) {
                Err(Error::DimensionOutOfRange { dim: self.base.truncation() as i64 + 1, bound: self.base.truncation() })
            } else {
                Ok(cell)
            }
        })
    }

    fn strong(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prismatic::identities::check_operator_identities;
    use crate::simplicial_core::OrderedComplex;

    #[test]
    fn es_is_strong_prismatic() {
        let s = SimplicialSet::from_complex(&OrderedComplex::from_facets(2, &[vec![0, 1]])).unwrap().with_truncation(3).unwrap();
        let es = ProductPrismatic::new(&s);
        let degs = MultiDegree::bounded(2, 1);
        assert_eq!(es.cells(&MultiDegree::new(vec![0, 1]).unwrap()).unwrap().len(), 2 * 3);
        let rep = check_operator_identities(&es, &degs).unwrap();
        assert!(rep.ok(), "{:?}", rep.violations.first());
        assert!(rep.checked > 0);
    }
}
