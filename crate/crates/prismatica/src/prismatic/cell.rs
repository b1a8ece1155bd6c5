use std::collections::HashMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::degree::{Construction, MultiDegree};
use crate::error::{Error, Result};
use crate::simplicial_core::{block_surjection, NormalForm, SimplicialMap, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Simplex(NormalForm),
    Pair { sigma: NormalForm, sigma_bar: NormalForm },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrismCell {
    pub construction: Construction,
    pub deg: MultiDegree,
    pub payload: Payload,
}

impl PrismCell {
    /// The simplex of `S` carried by the cell (`σ` for `Pf`).
    pub fn simplex(&self) -> &NormalForm {
        match &self.payload {
            Payload::Simplex(x) => x,
            Payload::Pair { sigma, .. } => sigma,
        }
    }

    pub fn sigma_bar(&self) -> Option<&NormalForm> {
        match &self.payload {
            Payload::Pair { sigma_bar, .. } => Some(sigma_bar),
            Payload::Simplex(_) => None,
        }
    }

    /// Deterministic key used to order bases.
    pub fn key(&self) -> String {
        serde_json::to_string(self).expect("cells serialize")
    }
}

impl Serialize for PrismCell {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("PrismCell", 4)?;
        st.serialize_field("construction", &self.construction)?;
        st.serialize_field("p", &self.deg.p())?;
        st.serialize_field("q", self.deg.q())?;
        st.serialize_field("payload", &self.payload)?;
        st.end()
    }
}

impl fmt::Display for PrismCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Simplex(x) => write!(f, "{} {} {}", self.construction, self.deg, x),
            Payload::Pair { sigma, sigma_bar } => write!(f, "{} {} ({}, {})", self.construction, self.deg, sigma, sigma_bar),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrismOp {
    FiberFace {
        block: usize,
        index: usize,
    },
    FiberDegeneracy {
        block: usize,
        index: usize,
    },
    BaseFace {
        block: usize,
    },
    /// Only the product construction `E·S` has these.
    BaseDegeneracy {
        block: usize,
    },
}

/// One of the three prismatic constructions over a fixed simplicial set.
#[derive(Debug, Clone, Copy)]
pub struct PrismaticSet<'a> {
    construction: Construction,
    base: &'a SimplicialSet,
    map: Option<&'a SimplicialMap>,
}

impl<'a> PrismaticSet<'a> {
    pub fn p(base: &'a SimplicialSet) -> Self {
        PrismaticSet { construction: Construction::P, base, map: None }
    }

    pub fn pbar(base: &'a SimplicialSet) -> Self {
        PrismaticSet { construction: Construction::Pbar, base, map: None }
    }

    pub fn pf(base: &'a SimplicialSet, map: &'a SimplicialMap) -> Self {
        PrismaticSet { construction: Construction::Pf, base, map: Some(map) }
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn base(&self) -> &'a SimplicialSet {
        self.base
    }

    pub fn map(&self) -> Option<&'a SimplicialMap> {
        self.map
    }

    fn pf_map(&self) -> Result<&'a SimplicialMap> {
        self.map.ok_or_else(|| Error::Invalid("Pf needs a simplicial map".into()))
    }

    /// `μ_{q_0..q_p}(σ̄)` in the target of the map.
    pub fn mu(&self, deg: &MultiDegree, sigma_bar: &NormalForm) -> Result<NormalForm> {
        self.pf_map()?.target().apply(sigma_bar, &block_surjection(deg.q()))
    }

    /// Wraps a payload, checking dimensions and (for `Pf`) the membership condition.
    pub fn cell(&self, deg: MultiDegree, payload: Payload) -> Result<PrismCell> {
        let want = deg.payload_dim(self.construction);
        match (&payload, self.construction) {
            (Payload::Simplex(x), Construction::P | Construction::Pbar) => {
                if x.dim() != want {
                    return Err(Error::ShapeMismatch(format!("payload of dim {} at {deg}, expected {want}", x.dim())));
                }
                self.base.generator(x.gen)?;
            }
            (Payload::Pair { sigma, sigma_bar }, Construction::Pf) => {
                if sigma.dim() != want || sigma_bar.dim() != deg.p() {
                    return Err(Error::ShapeMismatch(format!("pair of dims ({}, {}) at {deg}", sigma.dim(), sigma_bar.dim())));
                }
                if self.pf_map()?.apply(sigma)? != self.mu(&deg, sigma_bar)? {
                    return Err(Error::Invalid(format!("f(σ) ≠ μ(σ̄) for ({sigma}, {sigma_bar})")));
                }
            }
            _ => return Err(Error::ShapeMismatch(format!("payload kind does not match {}", self.construction))),
        }
        Ok(PrismCell { construction: self.construction, deg, payload })
    }

    /// Every cell of the given multidegree, degenerate payloads included.
    pub fn cells(&self, deg: &MultiDegree) -> Result<Vec<PrismCell>> {
        let dim = deg.payload_dim(self.construction);
        let simplices = self.base.simplices(dim)?;
        let wrap = |payload| PrismCell { construction: self.construction, deg: deg.clone(), payload };
        match self.construction {
            Construction::P | Construction::Pbar => Ok(simplices.into_iter().map(|x| wrap(Payload::Simplex(x))).collect()),
            Construction::Pf => {
                let f = self.pf_map()?;
                let mut by_image: HashMap<NormalForm, Vec<NormalForm>> = HashMap::new();
                for x in simplices {
                    by_image.entry(f.apply(&x)?).or_default().push(x);
                }
                let mut out = Vec::new();
                for sb in f.target().simplices(deg.p())? {
                    if let Some(sigmas) = by_image.get(&self.mu(deg, &sb)?) {
                        for s in sigmas {
                            out.push(wrap(Payload::Pair { sigma: s.clone(), sigma_bar: sb.clone() }));
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn apply(&self, cell: &PrismCell, op: PrismOp) -> Result<PrismCell> {
        match op {
            PrismOp::FiberFace { block, index } => self.fiber_face(cell, block, index),
            PrismOp::FiberDegeneracy { block, index } => self.fiber_degeneracy(cell, block, index),
            PrismOp::BaseFace { block } => self.base_face(cell, block),
            PrismOp::BaseDegeneracy { .. } => Err(Error::Invalid(format!("{} has no base degeneracies", self.construction))),
        }
    }

    /// Applies `ops` left to right.
    pub fn apply_all(&self, cell: &PrismCell, ops: &[PrismOp]) -> Result<PrismCell> {
        let mut cur = cell.clone();
        for &op in ops {
            cur = self.apply(&cur, op)?;
        }
        Ok(cur)
    }

    fn check_cell(&self, cell: &PrismCell) -> Result<()> {
        if cell.construction != self.construction {
            return Err(Error::ShapeMismatch(format!("{} cell given to {}", cell.construction, self.construction)));
        }
        Ok(())
    }

    fn replace_simplex(&self, cell: &PrismCell, deg: MultiDegree, x: NormalForm) -> PrismCell {
        let payload = match &cell.payload {
            Payload::Simplex(_) => Payload::Simplex(x),
            Payload::Pair { sigma_bar, .. } => Payload::Pair { sigma: x, sigma_bar: sigma_bar.clone() },
        };
        PrismCell { construction: self.construction, deg, payload }
    }

    /// `d_j^{(i)}`.
    pub fn fiber_face(&self, cell: &PrismCell, i: usize, j: usize) -> Result<PrismCell> {
        self.check_cell(cell)?;
        let deg = &cell.deg;
        deg.check_block(i)?;
        let qi = deg.q()[i];
        if qi == 0 {
            return Err(Error::DimensionOutOfRange { dim: -1, bound: 0 });
        }
        if j > qi {
            return Err(Error::IndexOutOfRange { index: j, context: format!("fiber face of block {i} in {deg}") });
        }
        let pos = deg.block_start(self.construction, i) + j;
        let x = self.base.face(cell.simplex(), pos)?;
        Ok(self.replace_simplex(cell, deg.with_block(i, qi - 1), x))
    }

    /// `s_j^{(i)}`.
    pub fn fiber_degeneracy(&self, cell: &PrismCell, i: usize, j: usize) -> Result<PrismCell> {
        self.check_cell(cell)?;
        let deg = &cell.deg;
        deg.check_block(i)?;
        let qi = deg.q()[i];
        if j > qi {
            return Err(Error::IndexOutOfRange { index: j, context: format!("fiber degeneracy of block {i} in {deg}") });
        }
        let pos = deg.block_start(self.construction, i) + j;
        let x = self.base.degeneracy(cell.simplex(), pos)?;
        Ok(self.replace_simplex(cell, deg.with_block(i, qi + 1), x))
    }

    /// `d_(i)`: removes block `i` (and, for `Pbar`, its separator).
    pub fn base_face(&self, cell: &PrismCell, i: usize) -> Result<PrismCell> {
        self.check_cell(cell)?;
        let deg = &cell.deg;
        let new_deg = deg.without_block(i)?;
        let x = self.base.delete_positions(cell.simplex(), &deg.base_face_positions(self.construction, i))?;
        match &cell.payload {
            Payload::Simplex(_) => Ok(PrismCell { construction: self.construction, deg: new_deg, payload: Payload::Simplex(x) }),
            Payload::Pair { sigma_bar, .. } => {
                let f = self.pf_map()?;
                let sb = f.target().face(sigma_bar, i)?;
                if f.apply(&x)? != self.mu(&new_deg, &sb)? {
                    return Err(Error::InternalInvariantBroken(format!("base face {i} of {cell} leaves P(f)")));
                }
                Ok(PrismCell { construction: self.construction, deg: new_deg, payload: Payload::Pair { sigma: x, sigma_bar: sb } })
            }
        }
    }

    /// True when the cell lies in the image of some fiber degeneracy.
    pub fn is_fiber_degenerate(&self, cell: &PrismCell) -> bool {
        let phi = cell.simplex().surjection();
        (0..=cell.deg.p()).any(|i| {
            let r = cell.deg.block_positions(self.construction, i);
            (r.start..r.end - 1).any(|m| phi.apply(m) == phi.apply(m + 1))
        })
    }
}
