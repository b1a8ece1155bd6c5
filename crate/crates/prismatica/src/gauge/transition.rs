use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::group::{rotation, Element, Group, GroupOps};
use crate::error::{Error, Result};
use crate::simplicial_core::{GenId, Monotone, NormalForm, SimplicialSet};

/// A map `Δ^k -> G`, kept symbolic so exact backends stay exact.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransitionFn {
    Identity,
    Constant {
        value: Element,
    },
    /// `t ↦ R(Σ t_k angles_k)` in the 2×2 matrix group.
    Rotation {
        angles: Vec<f64>,
    },
    Product {
        factors: Vec<TransitionFn>,
    },
    /// `inner ∘ map_*` where `map_*` pushes barycentric coordinates along `map`.
    Precompose {
        inner: Box<TransitionFn>,
        map: Monotone,
    },
    Inverse {
        inner: Box<TransitionFn>,
    },
}

impl TransitionFn {
    pub fn precompose(self, map: Monotone) -> TransitionFn {
        match self {
            TransitionFn::Identity | TransitionFn::Constant { .. } => self,
            inner => TransitionFn::Precompose { inner: Box::new(inner), map },
        }
    }

    pub fn times(self, other: TransitionFn) -> TransitionFn {
        match (self, other) {
            (TransitionFn::Identity, x) | (x, TransitionFn::Identity) => x,
            (a, b) => TransitionFn::Product { factors: vec![a, b] },
        }
    }

    pub fn inverse(self) -> TransitionFn {
        match self {
            TransitionFn::Identity => TransitionFn::Identity,
            inner => TransitionFn::Inverse { inner: Box::new(inner) },
        }
    }

    pub fn eval(&self, g: &Group, t: &[f64]) -> Result<Element> {
        match self {
            TransitionFn::Identity => Ok(g.identity()),
            TransitionFn::Constant { value } => Ok(value.clone()),
            TransitionFn::Rotation { angles } => {
                if angles.len() != t.len() || *g != (Group::Matrix { dim: 2 }) {
                    return Err(Error::ShapeMismatch(format!("rotation with {} angles at a point of length {}", angles.len(), t.len())));
                }
                Ok(rotation(angles.iter().zip(t).map(|(a, x)| a * x).sum()))
            }
            TransitionFn::Product { factors } => {
                let mut acc = g.identity();
                for f in factors {
                    acc = g.multiply(&acc, &f.eval(g, t)?);
                }
                Ok(acc)
            }
            TransitionFn::Precompose { inner, map } => {
                if t.len() != map.source_dim() + 1 {
                    return Err(Error::ShapeMismatch(format!("point of length {} for a map from Δ^{}", t.len(), map.source_dim())));
                }
                inner.eval(g, &map.push_coords(t))
            }
            TransitionFn::Inverse { inner } => g.inverse(&inner.eval(g, t)?),
        }
    }
}

/// Which face `τ` of `σ` a transition function `v_{σ,τ}` is requested for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FaceSpec {
    /// `d_i σ`
    Single { i: usize },
    /// `d_i ∘ ... ∘ d_p σ`, the front face on vertices `0..i-1`.
    IteratedLast { i: usize },
    /// The face on the listed vertex positions.
    Composite { kept: Vec<usize> },
}

/// Transition functions `v_σ: Δ^{p-1} -> G` on the nondegenerate simplices of
/// dimension `p ≥ 1`.
#[derive(Debug, Clone)]
pub struct TransitionSet<'a> {
    base: &'a SimplicialSet,
    group: Group,
    values: BTreeMap<GenId, TransitionFn>,
}

impl<'a> TransitionSet<'a> {
    pub fn new(base: &'a SimplicialSet, group: Group) -> Self {
        TransitionSet { base, group, values: BTreeMap::new() }
    }

    /// `v_σ = 1` for every generator.
    pub fn trivial(base: &'a SimplicialSet, group: Group) -> Self {
        let mut t = Self::new(base, group);
        for g in base.all_generators().filter(|g| g.dim >= 1) {
            t.values.insert(g, TransitionFn::Identity);
        }
        t
    }

    pub fn base(&self) -> &'a SimplicialSet {
        self.base
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn entries(&self) -> impl Iterator<Item = (&GenId, &TransitionFn)> {
        self.values.iter()
    }

    pub fn insert(&mut self, g: GenId, f: TransitionFn) -> Result<()> {
        self.base.generator(g)?;
        if g.dim == 0 {
            return Err(Error::Invalid(format!("vertex {g} carries no transition function")));
        }
        match &f {
            TransitionFn::Constant { value } => self.group.check(value)?,
            TransitionFn::Rotation { angles } if angles.len() != g.dim || self.group != (Group::Matrix { dim: 2 }) => {
                return Err(Error::ShapeMismatch(format!("rotation on {g} needs {} angles in the 2×2 matrix group", g.dim)))
            }
            _ => {}
        }
        self.values.insert(g, f);
        Ok(())
    }

    /// Key of a generator in gauge JSON: its vertex labels for `K^s`, else `dim:index`.
    pub fn key(&self, g: GenId) -> Result<String> {
        match self.base.vertex_labels() {
            Some(labels) => {
                let tuple = self.base.generator_tuple(g)?;
                Ok(tuple.iter().map(|&v| labels[v].as_str()).collect::<Vec<_>>().join(","))
            }
            None => Ok(g.to_string()),
        }
    }

    fn parse_key(&self, key: &str) -> Result<GenId> {
        if let Some((d, i)) = key.split_once(':') {
            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad generator key {key:?}")));
            return Ok(GenId { dim: parse(d)?, index: parse(i)? });
        }
        let labels = self.base.vertex_labels().ok_or_else(|| Error::Invalid(format!("vertex key {key:?} needs a simplicial complex")))?;
        let seq = key
            .split(',')
            .map(|l| labels.iter().position(|x| x == l.trim()).ok_or_else(|| Error::Invalid(format!("unknown vertex {l:?} in {key:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let x = self.base.simplex_from_vertices(&seq)?;
        if x.is_degenerate() {
            return Err(Error::Invalid(format!("key {key:?} names a degenerate simplex")));
        }
        Ok(x.gen)
    }

    /// Reads `{"group": ..., "values": {key: value}}`. A value is a group
    /// element or, for the 2×2 matrix group, `{"angles": [...]}`.
    pub fn from_json(base: &'a SimplicialSet, v: &Value) -> Result<Self> {
        let group: Group =
            serde_json::from_value(v.get("group").cloned().ok_or_else(|| Error::Invalid("gauge JSON lacks \"group\"".into()))?)
                .map_err(|e| Error::Invalid(format!("gauge group: {e}")))?;
        let values = v.get("values").and_then(Value::as_object).ok_or_else(|| Error::Invalid("gauge JSON lacks \"values\"".into()))?;
        let mut t = Self::new(base, group);
        for (key, val) in values {
            let g = t.parse_key(key)?;
            let f = match val.get("angles") {
                Some(a) => TransitionFn::Rotation {
                    angles: serde_json::from_value(a.clone()).map_err(|e| Error::Invalid(format!("angles for {key}: {e}")))?,
                },
                None => TransitionFn::Constant { value: group.parse_element(val)? },
            };
            t.insert(g, f)?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> Result<Value> {
        let mut values = Map::new();
        for (g, f) in &self.values {
            let v = match f {
                TransitionFn::Constant { value } => serde_json::to_value(value).expect("elements serialize"),
                TransitionFn::Rotation { angles } => json!({ "angles": angles }),
                other => serde_json::to_value(other).expect("transition functions serialize"),
            };
            values.insert(self.key(*g)?, v);
        }
        Ok(json!({ "group": self.group, "values": values }))
    }

    fn lookup(&self, g: GenId) -> Result<TransitionFn> {
        self.values.get(&g).cloned().ok_or_else(|| Error::MissingEntry(self.key(g).unwrap_or_else(|_| g.to_string())))
    }

    /// `v_σ` for any simplex of dimension `p ≥ 1`. A degenerate `σ = s_j σ'`
    /// (smallest such `j`) gets `v_{σ'} ∘ η^j`, or `1` when `j = p-1`.
    pub fn v(&self, x: &NormalForm) -> Result<TransitionFn> {
        let p = x.dim();
        if p == 0 {
            return Err(Error::Invalid("vertices carry no transition function".into()));
        }
        if !x.is_degenerate() {
            return self.lookup(x.gen);
        }
        let j = *x.degens.last().unwrap();
        if j == p - 1 {
            return Ok(TransitionFn::Identity);
        }
        let inner = self.base.face(x, j)?;
        Ok(self.v(&inner)?.precompose(Monotone::codegeneracy(j, p - 2)))
    }

    /// `v_{σ, d_i σ}`: `v_σ` for the last face and `1` for the others when
    /// `σ` is nondegenerate; the degeneracy case table otherwise.
    pub fn single_face(&self, x: &NormalForm, i: usize) -> Result<TransitionFn> {
        let p = x.dim();
        if p == 0 || i > p {
            return Err(Error::UnsupportedFaceSpec(format!("face {i} of a {p}-simplex")));
        }
        if !x.is_degenerate() {
            return if i == p { self.lookup(x.gen) } else { Ok(TransitionFn::Identity) };
        }
        let j = x.degens[0];
        let inner = NormalForm { degens: x.degens[1..].to_vec(), gen: x.gen };
        if i < j {
            Ok(self.single_face(&inner, i)?.precompose(Monotone::codegeneracy(j - 1, p - 2)))
        } else if i == j || i == j + 1 {
            Ok(TransitionFn::Identity)
        } else {
            Ok(self.single_face(&inner, i - 1)?.precompose(Monotone::codegeneracy(j, p - 2)))
        }
    }

    /// `v_{σ,τ}` for the face `τ = δ^* σ`, chained through the largest missing
    /// vertex: `v_{σ,τ} = (v_{σ,d_jσ} ∘ δ') · v_{d_jσ,τ}`.
    pub fn face(&self, x: &NormalForm, delta: &Monotone) -> Result<TransitionFn> {
        let p = x.dim();
        if delta.target_dim() != p || !delta.is_injective() {
            return Err(Error::UnsupportedFaceSpec(format!("{:?} is not a face of a {p}-simplex", delta.values())));
        }
        let missing = delta.missing();
        let Some(&j) = missing.last() else { return Ok(TransitionFn::Identity) };
        let shifted = Monotone::new(delta.values().iter().map(|&v| if v > j { v - 1 } else { v }).collect(), p - 1);
        let step = self.single_face(x, j)?;
        if missing.len() == 1 {
            return Ok(step);
        }
        let gamma = self.base.face(x, j)?;
        Ok(step.precompose(shifted.clone()).times(self.face(&gamma, &shifted)?))
    }

    /// `v_{σ,τ}` for the requested face. Iterated last faces use the explicit
    /// product `Π_k v_{d̃^k σ} ∘ (ε^i)^{p-i-k}`.
    pub fn extend_to_faces(&self, x: &NormalForm, spec: &FaceSpec) -> Result<TransitionFn> {
        let p = x.dim();
        match spec {
            FaceSpec::Single { i } => self.single_face(x, *i),
            FaceSpec::IteratedLast { i } => {
                let i = *i;
                if i == 0 || i > p {
                    return Err(Error::UnsupportedFaceSpec(format!("iterated last face {i} of a {p}-simplex")));
                }
                let front: Vec<usize> = (0..i).collect();
                let mut acc = TransitionFn::Identity;
                for k in 0..=p - i {
                    let face = self.base.apply(x, &Monotone::inclusion(&(0..=p - k).collect::<Vec<_>>(), p))?;
                    let f = self.v(&face)?;
                    let f = if k == p - i { f } else { f.precompose(Monotone::inclusion(&front, p - k - 1)) };
                    acc = acc.times(f);
                }
                Ok(acc)
            }
            FaceSpec::Composite { kept } => {
                if kept.is_empty() || kept.len() > p || !kept.windows(2).all(|w| w[0] < w[1]) || kept.iter().any(|&k| k > p) {
                    return Err(Error::UnsupportedFaceSpec(format!("positions {kept:?} of a {p}-simplex")));
                }
                self.face(x, &Monotone::inclusion(kept, p))
            }
        }
    }
}

/// Re-trivializes a constant family `{v_{σ, d_i σ}}` so that every face but
/// the last carries `1`, processing generators by dimension then index.
/// Returns the resulting set and the faces where that was impossible.
pub fn normalize_constant<'a>(
    base: &'a SimplicialSet,
    group: Group,
    family: &BTreeMap<(GenId, usize), Element>,
) -> Result<(TransitionSet<'a>, Vec<String>)> {
    let mut h: BTreeMap<GenId, Element> = BTreeMap::new();
    let mut out = TransitionSet::new(base, group);
    let mut residual = Vec::new();
    let get = |g: GenId, i: usize| family.get(&(g, i)).cloned().ok_or_else(|| Error::MissingEntry(format!("{g} face {i}")));
    for g in base.all_generators() {
        if g.dim == 0 {
            h.insert(g, group.identity());
            continue;
        }
        let x = NormalForm::of(g);
        let face_h = |i: usize| -> Result<Element> { Ok(h[&base.face(&x, i)?.gen].clone()) };
        let hg = group.multiply(&face_h(0)?, &group.inverse(&get(g, 0)?)?);
        let conj = |i: usize| -> Result<Element> { Ok(group.multiply(&group.multiply(&hg, &get(g, i)?), &group.inverse(&face_h(i)?)?)) };
        for i in 1..g.dim {
            let w = conj(i)?;
            if !group.equal(&w, &group.identity(), group.tolerance()) {
                residual.push(format!("{} face {i}: {w}", out.key(g)?));
            }
        }
        out.insert(g, TransitionFn::Constant { value: conj(g.dim)? })?;
        h.insert(g, hg);
    }
    Ok((out, residual))
}
