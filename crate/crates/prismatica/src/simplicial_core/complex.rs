use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered simplicial complex: vertices are ordered by position, each
/// simplex lists vertex indices in strictly increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedComplex {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<usize>>,
}

impl OrderedComplex {
    /// Closes `facets` under faces. Vertex labels default to their indices.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Self {
        let mut all = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                all.insert(face);
            }
        }
        for v in 0..n_vertices {
            all.insert(vec![v]);
        }
        let mut simplices: Vec<Vec<usize>> = all.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Self { vertices: (0..n_vertices).map(|v| v.to_string()).collect(), simplices }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("complex JSON: {e}")))
    }

    /// Validates ordering and closure; returns all simplices grouped by
    /// dimension, each group sorted. Vertices are always present.
    pub fn validated(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        let n = self.vertices.len();
        let mut set = BTreeSet::new();
        for s in &self.simplices {
            if s.is_empty() {
                return Err(Error::Invalid("empty simplex".into()));
            }
            if !s.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::UnorderedVertices(s.clone()));
            }
            if let Some(&bad) = s.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownVertex { index: bad, count: n });
            }
            set.insert(s.clone());
        }
        for v in 0..n {
            set.insert(vec![v]);
        }
        for s in &set {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                if !set.contains(&f) {
                    return Err(Error::NotClosedUnderFaces(f));
                }
            }
        }
        let top = set.iter().map(|s| s.len()).max().unwrap_or(1);
        let mut by_dim = vec![Vec::new(); top];
        for s in set {
            by_dim[s.len() - 1].push(s);
        }
        Ok(by_dim)
    }

    pub fn dim(&self) -> usize {
        self.simplices.iter().map(|s| s.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        simplex.len() == 1 && simplex[0] < self.vertices.len() || self.simplices.iter().any(|s| s == simplex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_triangle() {
        let k = OrderedComplex::from_facets(3, &[vec![0, 1, 2]]);
        assert_eq!(k.simplices.len(), 7);
        assert_eq!(k.validated().unwrap().iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 3, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        let k = OrderedComplex { vertices: vec!["a".into(), "b".into()], simplices: vec![vec![1, 0]] };
        assert_eq!(k.validated(), Err(Error::UnorderedVertices(vec![1, 0])));
        let k = OrderedComplex { vertices: vec!["a".into(); 3], simplices: vec![vec![0, 1, 2]] };
        assert!(matches!(k.validated(), Err(Error::NotClosedUnderFaces(_))));
        let k = OrderedComplex { vertices: vec!["a".into()], simplices: vec![vec![0, 4]] };
        assert!(matches!(k.validated(), Err(Error::UnknownVertex { .. })));
    }
}
