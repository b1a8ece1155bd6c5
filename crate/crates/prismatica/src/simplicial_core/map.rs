use super::complex::OrderedComplex;
use super::monotone::Monotone;
use super::set::{GenId, NormalForm, SimplicialSet};
use crate::error::{Error, Result};

/// A simplicial map given by the images of the generators of its source.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    target: SimplicialSet,
    images: Vec<Vec<NormalForm>>,
}

impl SimplicialMap {
    /// Checks that the images commute with the face tables of `source`.
    pub fn new(source: &SimplicialSet, target: SimplicialSet, images: Vec<Vec<NormalForm>>) -> Result<Self> {
        let m = SimplicialMap { target, images };
        for g in source.all_generators() {
            let img = m.image(g)?;
            if img.dim() != g.dim {
                return Err(Error::ShapeMismatch(format!("image of {g} has dim {}", img.dim())));
            }
            for (i, face) in source.generator(g)?.faces.iter().enumerate() {
                let lhs = m.target.face(img, i)?;
                let rhs = m.apply(face)?;
                if lhs != rhs {
                    return Err(Error::Invalid(format!("map does not commute with d{i} on {g}")));
                }
            }
        }
        Ok(m)
    }

    pub fn identity(s: &SimplicialSet) -> Self {
        let images = group_by_dim(s, NormalForm::of);
        SimplicialMap { target: s.clone(), images }
    }

    /// The unique map to the one-point simplicial set, truncated like `s`.
    pub fn to_point(s: &SimplicialSet) -> Result<Self> {
        let point = SimplicialSet::from_complex(&OrderedComplex::from_facets(1, &[vec![0]]))?.with_truncation(s.truncation())?;
        let v = GenId { dim: 0, index: 0 };
        let images = group_by_dim(s, |g| NormalForm { degens: (0..g.dim).rev().collect(), gen: v });
        Ok(SimplicialMap { target: point, images })
    }

    /// Map `K^s -> L^s` induced by a vertex map that is weakly increasing on
    /// every simplex of `K`.
    pub fn from_vertex_map(source: &SimplicialSet, target: SimplicialSet, vmap: &[usize]) -> Result<Self> {
        let mut images = Vec::new();
        for g in source.all_generators() {
            let seq: Vec<usize> = source
                .generator_tuple(g)?
                .iter()
                .map(|&v| vmap.get(v).copied().ok_or(Error::UnknownVertex { index: v, count: vmap.len() }))
                .collect::<Result<_>>()?;
            while images.len() <= g.dim {
                images.push(Vec::new());
            }
            images[g.dim].push(target.simplex_from_vertices(&seq)?);
        }
        SimplicialMap::new(source, target, images)
    }

    pub fn target(&self) -> &SimplicialSet {
        &self.target
    }

    pub fn image(&self, g: GenId) -> Result<&NormalForm> {
        self.images.get(g.dim).and_then(|r| r.get(g.index)).ok_or(Error::UnknownGenerator { dim: g.dim, index: g.index })
    }

    pub fn apply(&self, x: &NormalForm) -> Result<NormalForm> {
        let img = self.image(x.gen)?;
        if x.degens.is_empty() {
            return Ok(img.clone());
        }
        self.target.apply(img, &x.surjection())
    }
}

fn group_by_dim(s: &SimplicialSet, f: impl Fn(GenId) -> NormalForm) -> Vec<Vec<NormalForm>> {
    let mut out: Vec<Vec<NormalForm>> = Vec::new();
    for g in s.all_generators() {
        while out.len() <= g.dim {
            out.push(Vec::new());
        }
        out[g.dim].push(f(g));
    }
    out
}

/// Canonical representative of the point `(u, x)` of the realization: the
/// nondegenerate simplex carrying it and its strictly positive coordinates.
pub fn canonical_point(s: &SimplicialSet, x: &NormalForm, u: &[f64], tol: f64) -> Result<(GenId, Vec<f64>)> {
    if u.len() != x.dim() + 1 {
        return Err(Error::ShapeMismatch(format!("{} coordinates for a {}-simplex", u.len(), x.dim())));
    }
    let keep: Vec<usize> = (0..u.len()).filter(|&k| u[k] > tol).collect();
    if keep.is_empty() {
        return Err(Error::InvalidPoint("all coordinates vanish".into()));
    }
    let face = s.apply(x, &Monotone::inclusion(&keep, x.dim()))?;
    let coords: Vec<f64> = keep.iter().map(|&k| u[k]).collect();
    Ok((face.gen, face.surjection().push_coords(&coords)))
}
