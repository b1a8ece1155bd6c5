use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::complex::OrderedComplex;
use super::monotone::{subsets, Monotone};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct GenId {
    pub dim: usize,
    pub index: usize,
}

impl From<(usize, usize)> for GenId {
    fn from((dim, index): (usize, usize)) -> Self {
        GenId { dim, index }
    }
}

impl From<GenId> for (usize, usize) {
    fn from(g: GenId) -> Self {
        (g.dim, g.index)
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.index)
    }
}

/// Eilenberg–Zilber normal form `s_{i_1} ... s_{i_k} x` with
/// `i_1 > ... > i_k` and `x` nondegenerate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalForm {
    pub degens: Vec<usize>,
    pub gen: GenId,
}

impl NormalForm {
    pub fn of(gen: GenId) -> Self {
        NormalForm { degens: Vec::new(), gen }
    }

    /// Builds the normal form of `sur^* gen`.
    pub fn from_surjection(gen: GenId, sur: &Monotone) -> Self {
        debug_assert!(sur.is_surjective() && sur.target_dim() == gen.dim);
        let mut degens = sur.repeats();
        degens.reverse();
        NormalForm { degens, gen }
    }

    pub fn dim(&self) -> usize {
        self.gen.dim + self.degens.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degens.is_empty()
    }

    pub fn surjection(&self) -> Monotone {
        Monotone::from_repeats(&self.degens, self.dim())
    }

    pub fn is_valid(&self) -> bool {
        self.degens.windows(2).all(|w| w[0] > w[1]) && self.degens.first().is_none_or(|&i| i < self.dim())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.degens {
            write!(f, "s{d} ")?;
        }
        write!(f, "[{}]", self.gen)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: Option<String>,
    pub faces: Vec<NormalForm>,
}

/// A finite simplicial set truncated at dimension `D`, stored as
/// nondegenerate generators with their face tables.
#[derive(Debug, Clone)]
pub struct SimplicialSet {
    truncation: usize,
    gens: Vec<Vec<Generator>>,
    complex: Option<ComplexData>,
}

#[derive(Debug, Clone)]
struct ComplexData {
    vertex_labels: Vec<String>,
    tuples: Vec<Vec<Vec<usize>>>,
    lookup: HashMap<Vec<usize>, GenId>,
}

impl SimplicialSet {
    /// The simplicial set `K^s` of an ordered simplicial complex. Its
    /// truncation is `dim K`; raise it with [`SimplicialSet::with_truncation`].
    pub fn from_complex(k: &OrderedComplex) -> Result<Self> {
        let by_dim = k.validated()?;
        let mut lookup = HashMap::new();
        for (d, group) in by_dim.iter().enumerate() {
            for (i, s) in group.iter().enumerate() {
                lookup.insert(s.clone(), GenId { dim: d, index: i });
            }
        }
        let mut gens = Vec::with_capacity(by_dim.len());
        for group in &by_dim {
            let mut row = Vec::with_capacity(group.len());
            for s in group {
                let faces = if s.len() == 1 {
                    Vec::new()
                } else {
                    (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            NormalForm::of(lookup[&f])
                        })
                        .collect()
                };
                let label = s.iter().map(|&v| k.vertices[v].as_str()).collect::<Vec<_>>().join(",");
                row.push(Generator { label: Some(label), faces });
            }
            gens.push(row);
        }
        let truncation = by_dim.len() - 1;
        Ok(SimplicialSet { truncation, gens, complex: Some(ComplexData { vertex_labels: k.vertices.clone(), tuples: by_dim, lookup }) })
    }

    pub fn empty() -> Self {
        SimplicialSet { truncation: 0, gens: Vec::new(), complex: None }
    }

    /// Same set with truncation bound `d`; fails if a generator lies above `d`.
    pub fn with_truncation(&self, d: usize) -> Result<Self> {
        if self.max_generator_dim().is_some_and(|m| m > d) {
            return Err(Error::DimensionOutOfRange { dim: self.max_generator_dim().unwrap() as i64, bound: d });
        }
        let mut s = self.clone();
        s.truncation = d;
        Ok(s)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn max_generator_dim(&self) -> Option<usize> {
        (0..self.gens.len()).rev().find(|&d| !self.gens[d].is_empty())
    }

    pub fn is_from_complex(&self) -> bool {
        self.complex.is_some()
    }

    pub fn generator(&self, g: GenId) -> Result<&Generator> {
        self.gens.get(g.dim).and_then(|row| row.get(g.index)).ok_or(Error::UnknownGenerator { dim: g.dim, index: g.index })
    }

    pub fn generator_count(&self, n: usize) -> usize {
        self.gens.get(n).map_or(0, Vec::len)
    }

    pub fn nondegenerate_cells(&self, n: usize) -> Result<Vec<GenId>> {
        self.check_dim(n as i64)?;
        Ok((0..self.generator_count(n)).map(|index| GenId { dim: n, index }).collect())
    }

    pub fn all_generators(&self) -> impl Iterator<Item = GenId> + '_ {
        self.gens.iter().enumerate().flat_map(|(dim, row)| (0..row.len()).map(move |index| GenId { dim, index }))
    }

    fn check_dim(&self, dim: i64) -> Result<()> {
        if dim < 0 || dim > self.truncation as i64 {
            Err(Error::DimensionOutOfRange { dim, bound: self.truncation })
        } else {
            Ok(())
        }
    }

    /// `θ^* x` for `θ: [k] -> [dim x]`.
    pub fn apply(&self, x: &NormalForm, theta: &Monotone) -> Result<NormalForm> {
        if theta.target_dim() != x.dim() {
            return Err(Error::ShapeMismatch(format!("operator targets [{}] but simplex has dim {}", theta.target_dim(), x.dim())));
        }
        self.check_dim(x.dim() as i64)?;
        self.check_dim(theta.source_dim() as i64)?;
        self.apply_unchecked(x, theta)
    }

    fn apply_unchecked(&self, x: &NormalForm, theta: &Monotone) -> Result<NormalForm> {
        let psi = x.surjection().compose(theta);
        let (epi, mono) = psi.epi_mono();
        let z = self.face_chain(x.gen, &mono)?;
        let sur = z.surjection().compose(&epi);
        Ok(NormalForm::from_surjection(z.gen, &sur))
    }

    /// `δ^* g` for an injection `δ` into `[dim g]`, resolved through face tables
    /// starting from the largest missing index.
    fn face_chain(&self, g: GenId, delta: &Monotone) -> Result<NormalForm> {
        let missing = delta.missing();
        let Some(&m) = missing.last() else {
            return Ok(NormalForm::of(g));
        };
        let w =
            self.generator(g)?.faces.get(m).ok_or_else(|| Error::InternalInvariantBroken(format!("generator {g} lacks face {m}")))?.clone();
        let rest: Vec<usize> = delta.values().iter().map(|&v| if v < m { v } else { v - 1 }).collect();
        let rest = Monotone::new(rest, g.dim - 1);
        self.apply_unchecked(&w, &rest)
    }

    pub fn face(&self, x: &NormalForm, i: usize) -> Result<NormalForm> {
        let n = x.dim();
        if n == 0 {
            return Err(Error::DimensionOutOfRange { dim: -1, bound: self.truncation });
        }
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, context: format!("face of a {n}-simplex") });
        }
        self.apply(x, &Monotone::coface(i, n))
    }

    pub fn degeneracy(&self, x: &NormalForm, j: usize) -> Result<NormalForm> {
        let n = x.dim();
        if j > n {
            return Err(Error::IndexOutOfRange { index: j, context: format!("degeneracy of a {n}-simplex") });
        }
        self.check_dim(n as i64 + 1)?;
        self.apply(x, &Monotone::codegeneracy(j, n))
    }

    /// Deletes the listed positions (any order, distinct).
    pub fn delete_positions(&self, x: &NormalForm, positions: &[usize]) -> Result<NormalForm> {
        let n = x.dim();
        if positions.len() > n {
            return Err(Error::DimensionOutOfRange { dim: n as i64 - positions.len() as i64, bound: self.truncation });
        }
        let keep: Vec<usize> = (0..=n).filter(|i| !positions.contains(i)).collect();
        if keep.len() + positions.len() != n + 1 {
            return Err(Error::IndexOutOfRange { index: *positions.iter().max().unwrap(), context: format!("{n}-simplex") });
        }
        self.apply(x, &Monotone::inclusion(&keep, n))
    }

    /// All simplices of dimension `n` (generators with every admissible
    /// degeneracy word), ordered by generator dimension, then index, then word.
    pub fn simplices(&self, n: usize) -> Result<Vec<NormalForm>> {
        self.check_dim(n as i64)?;
        let mut out = Vec::new();
        for k in 0..=n.min(self.gens.len().saturating_sub(1)) {
            if self.generator_count(k) == 0 {
                continue;
            }
            let words: Vec<Vec<usize>> = subsets(n, n - k)
                .into_iter()
                .map(|mut s| {
                    s.reverse();
                    s
                })
                .collect();
            for index in 0..self.generator_count(k) {
                for w in &words {
                    out.push(NormalForm { degens: w.clone(), gen: GenId { dim: k, index } });
                }
            }
        }
        Ok(out)
    }

    /// The `i`-th vertex of `x` as a 0-dimensional generator.
    pub fn vertex(&self, x: &NormalForm, i: usize) -> Result<GenId> {
        let v = self.apply(x, &Monotone::new(vec![i], x.dim()))?;
        Ok(v.gen)
    }

    pub fn vertices(&self, x: &NormalForm) -> Result<Vec<usize>> {
        (0..=x.dim()).map(|i| self.vertex(x, i).map(|g| g.index)).collect()
    }

    /// Vertex tuple of a generator of `K^s`.
    pub fn generator_tuple(&self, g: GenId) -> Result<&[usize]> {
        let c = self.complex.as_ref().ok_or(Error::NotFromComplex)?;
        c.tuples.get(g.dim).and_then(|r| r.get(g.index)).map(Vec::as_slice).ok_or(Error::UnknownGenerator { dim: g.dim, index: g.index })
    }

    /// The simplex of `K^s` with the given (nondecreasing) vertex sequence.
    pub fn simplex_from_vertices(&self, seq: &[usize]) -> Result<NormalForm> {
        let c = self.complex.as_ref().ok_or(Error::NotFromComplex)?;
        if seq.is_empty() || !seq.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::UnorderedVertices(seq.to_vec()));
        }
        let mut distinct = seq.to_vec();
        distinct.dedup();
        let gen = *c.lookup.get(&distinct).ok_or_else(|| Error::NotClosedUnderFaces(distinct.clone()))?;
        let values: Vec<usize> = seq.iter().map(|v| distinct.binary_search(v).unwrap()).collect();
        Ok(NormalForm::from_surjection(gen, &Monotone::new(values, gen.dim)))
    }

    pub fn complex_contains(&self, vertices: &[usize]) -> Result<bool> {
        let c = self.complex.as_ref().ok_or(Error::NotFromComplex)?;
        Ok(c.lookup.contains_key(vertices))
    }

    pub fn vertex_labels(&self) -> Option<&[String]> {
        self.complex.as_ref().map(|c| c.vertex_labels.as_slice())
    }

    pub fn to_json(&self) -> Value {
        let mut generators = serde_json::Map::new();
        let mut faces = serde_json::Map::new();
        for (d, row) in self.gens.iter().enumerate() {
            generators
                .insert(d.to_string(), Value::Array(row.iter().map(|g| g.label.clone().map_or(Value::Null, Value::String)).collect()));
            for (i, g) in row.iter().enumerate() {
                if d > 0 {
                    faces.insert(format!("{d}:{i}"), serde_json::to_value(&g.faces).unwrap());
                }
            }
        }
        json!({ "D": self.truncation, "generators": generators, "faces": faces })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("simplicial set JSON: {m}"));
        let d = v.get("D").and_then(Value::as_u64).ok_or_else(|| bad("missing D"))? as usize;
        let gens = v.get("generators").and_then(Value::as_object).ok_or_else(|| bad("missing generators"))?;
        let faces = v.get("faces").and_then(Value::as_object).ok_or_else(|| bad("missing faces"))?;
        let mut dims: Vec<usize> = gens.keys().map(|k| k.parse().map_err(|_| bad("dimension key"))).collect::<Result<_>>()?;
        dims.sort_unstable();
        let mut b = SimplicialSetBuilder::new(d);
        for dim in dims {
            let labels = gens[&dim.to_string()].as_array().ok_or_else(|| bad("generator list"))?;
            for (i, l) in labels.iter().enumerate() {
                let f: Vec<NormalForm> = if dim == 0 {
                    Vec::new()
                } else {
                    let raw = faces.get(&format!("{dim}:{i}")).ok_or_else(|| bad("missing face entry"))?;
                    serde_json::from_value(raw.clone()).map_err(|e| bad(&e.to_string()))?
                };
                b.add_generator(dim, l.as_str().map(str::to_owned), f)?;
            }
        }
        Ok(b.build())
    }
}

/// Incremental construction of a simplicial set from generators and faces.
#[derive(Debug, Clone)]
pub struct SimplicialSetBuilder {
    set: SimplicialSet,
}

impl SimplicialSetBuilder {
    pub fn new(truncation: usize) -> Self {
        SimplicialSetBuilder { set: SimplicialSet { truncation, gens: Vec::new(), complex: None } }
    }

    pub fn add_generator(&mut self, dim: usize, label: Option<String>, faces: Vec<NormalForm>) -> Result<GenId> {
        if dim > self.set.truncation {
            return Err(Error::DimensionOutOfRange { dim: dim as i64, bound: self.set.truncation });
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::ShapeMismatch(format!("{dim}-generator needs {expected} faces, got {}", faces.len())));
        }
        for f in &faces {
            if f.dim() + 1 != dim || !f.is_valid() {
                return Err(Error::ShapeMismatch(format!("face {f} invalid for a {dim}-generator")));
            }
            self.set.generator(f.gen)?;
        }
        while self.set.gens.len() <= dim {
            self.set.gens.push(Vec::new());
        }
        self.set.gens[dim].push(Generator { label, faces });
        Ok(GenId { dim, index: self.set.gens[dim].len() - 1 })
    }

    pub fn build(self) -> SimplicialSet {
        self.set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex2() -> SimplicialSet {
        SimplicialSet::from_complex(&OrderedComplex::from_facets(3, &[vec![0, 1, 2]])).unwrap()
    }

    #[test]
    fn from_complex_counts_and_faces() {
        let s = simplex2();
        assert_eq!((0..3).map(|d| s.generator_count(d)).collect::<Vec<_>>(), vec![3, 3, 1]);
        let top = NormalForm::of(GenId { dim: 2, index: 0 });
        let d1 = s.face(&top, 1).unwrap();
        assert_eq!(s.generator_tuple(d1.gen).unwrap(), &[0, 2]);
        assert_eq!(s.truncation(), 2);
    }

    #[test]
    fn degeneracy_normal_form() {
        let s = simplex2().with_truncation(4).unwrap();
        let v = NormalForm::of(GenId { dim: 0, index: 1 });
        let s0 = s.degeneracy(&v, 0).unwrap();
        assert_eq!(s0.degens, vec![0]);
        let s00 = s.degeneracy(&s0, 0).unwrap();
        assert_eq!(s00.degens, vec![1, 0]);
        assert_eq!(s.face(&s0, 1).unwrap(), v);
    }

    #[test]
    fn truncation_is_enforced() {
        let s = simplex2();
        let top = NormalForm::of(GenId { dim: 2, index: 0 });
        assert!(matches!(s.degeneracy(&top, 0), Err(Error::DimensionOutOfRange { .. })));
        assert!(s.simplices(3).is_err());
    }

    #[test]
    fn simplices_count_matches_monotone_maps() {
        let s = simplex2().with_truncation(5).unwrap();
        for n in 0..=5 {
            // monotone maps [n] -> [2]
            assert_eq!(s.simplices(n).unwrap().len(), (n + 3) * (n + 2) / 2);
        }
    }

    #[test]
    fn vertex_sequences() {
        let s = simplex2().with_truncation(3).unwrap();
        let x = s.simplex_from_vertices(&[0, 0, 2, 2]).unwrap();
        assert_eq!(s.vertices(&x).unwrap(), vec![0, 0, 2, 2]);
        assert_eq!(x.degens, vec![2, 0]);
    }

    #[test]
    fn json_round_trip() {
        let s = simplex2();
        let back = SimplicialSet::from_json(&s.to_json()).unwrap();
        assert_eq!(back.to_json(), s.to_json());
    }
}
