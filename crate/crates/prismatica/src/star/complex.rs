use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::membership::in_star;
use crate::error::Result;
use crate::simplicial_core::{OrderedComplex, SimplicialSet};

/// `St(K)`: pairs `(σ, τ)` of simplices of `K` whose union is a simplex, as a
/// subcomplex of `K × K`. Pair-vertices are ordered lexicographically.
pub fn star_complex(k: &OrderedComplex) -> Result<OrderedComplex> {
    let groups = k.validated()?;
    let all: Vec<&Vec<usize>> = groups.iter().flatten().collect();
    let facets: Vec<&Vec<usize>> =
        all.iter().copied().filter(|f| !all.iter().any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v)))).collect();

    let mut chains: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for f in facets {
        let grid: Vec<(usize, usize)> = f.iter().flat_map(|&a| f.iter().map(move |&b| (a, b))).collect();
        let mut stack: Vec<Vec<(usize, usize)>> = grid.iter().map(|&v| vec![v]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            for &v in &grid {
                if v != last && v.0 >= last.0 && v.1 >= last.1 {
                    let mut next = chain.clone();
                    next.push(v);
                    stack.push(next);
                }
            }
            chains.insert(chain);
        }
    }

    let pairs: BTreeSet<(usize, usize)> = chains.iter().flatten().copied().collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let vertices = pairs.iter().map(|&(a, b)| format!("({},{})", k.vertices[a], k.vertices[b])).collect();
    let simplices = chains.iter().map(|c| c.iter().map(|p| index[p]).collect()).collect();
    let out = OrderedComplex { vertices, simplices };
    out.validated()?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StIsoDegree {
    pub dim: usize,
    /// `|St(K)^s_n|`
    pub complex_side: usize,
    /// `|St(K^s)_n|`
    pub set_side: usize,
    /// Elements of `St(K)^s_n` whose image is not in `St(K^s)`.
    pub outside_image: usize,
    pub bijective: bool,
}

/// Compares `St(K)^s` with `St(K^s)` in dimensions `0..=max_dim`. An element of
/// `St(K)^s_n` is a chain of pair-vertices; `st` reads it as the pair of its
/// projected vertex sequences.
pub fn st_iso(k: &OrderedComplex, max_dim: usize) -> Result<Vec<StIsoDegree>> {
    let st = star_complex(k)?;
    let pair_of: Vec<(usize, usize)> = st
        .vertices
        .iter()
        .map(|label| {
            let inner = &label[1..label.len() - 1];
            let (a, b) = inner.split_once(',').unwrap();
            (k.vertices.iter().position(|v| v == a).unwrap(), k.vertices.iter().position(|v| v == b).unwrap())
        })
        .collect();
    let left = SimplicialSet::from_complex(&st)?;
    let left = left.with_truncation(max_dim.max(left.truncation()))?;
    let right = SimplicialSet::from_complex(k)?;
    let right = right.with_truncation(max_dim.max(right.truncation()))?;
    let mut out = Vec::new();
    for n in 0..=max_dim {
        let mut images = BTreeSet::new();
        let mut outside = 0;
        for x in left.simplices(n)? {
            let seq = left.vertices(&x)?;
            let a: Vec<usize> = seq.iter().map(|&v| pair_of[v].0).collect();
            let b: Vec<usize> = seq.iter().map(|&v| pair_of[v].1).collect();
            let (ea, eb) = (right.simplex_from_vertices(&a)?, right.simplex_from_vertices(&b)?);
            if !in_star(&right, &ea, &eb)? {
                outside += 1;
            }
            images.insert((ea, eb));
        }
        let complex_side = left.simplices(n)?.len();
        let simplices = right.simplices(n)?;
        let mut set_side = 0;
        for a in &simplices {
            for b in &simplices {
                if in_star(&right, a, b)? {
                    set_side += 1;
                }
            }
        }
        let bijective = outside == 0 && images.len() == complex_side && complex_side == set_side;
        out.push(StIsoDegree { dim: n, complex_side, set_side, outside_image: outside, bijective });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_and_edge() {
        let p = star_complex(&OrderedComplex::from_facets(1, &[])).unwrap();
        assert_eq!(p.vertices, vec!["(0,0)"]);
        assert_eq!(p.simplices.len(), 1);

        let e = star_complex(&OrderedComplex::from_facets(2, &[vec![0, 1]])).unwrap();
        assert_eq!(e.vertices.len(), 4);
        // the square (0,1)×(0,1) triangulated by its two product-order chains
        let tops: Vec<_> = e.simplices.iter().filter(|s| s.len() == 3).collect();
        assert_eq!(tops.len(), 2);
        assert_eq!(e.simplices.len(), 4 + 5 + 2);
    }

    #[test]
    fn disjoint_edges_have_no_mixed_pairs() {
        let k = OrderedComplex::from_facets(4, &[vec![0, 1], vec![2, 3]]);
        let st = star_complex(&k).unwrap();
        assert_eq!(st.vertices.len(), 8);
        assert!(!st.vertices.iter().any(|v| v == "(0,2)" || v == "(3,1)"));
    }

    #[test]
    fn iso_counts() {
        let point = OrderedComplex::from_facets(1, &[]);
        for d in st_iso(&point, 4).unwrap() {
            assert_eq!((d.complex_side, d.set_side), (1, 1));
            assert!(d.bijective);
        }
        let edge = OrderedComplex::from_facets(2, &[vec![0, 1]]);
        assert!(st_iso(&edge, 4).unwrap().iter().all(|d| d.bijective));
        let circle = OrderedComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let rows = st_iso(&circle, 3).unwrap();
        assert_eq!(rows[0].complex_side, 3 + 6);
        assert!(rows.iter().all(|d| d.bijective), "{rows:?}");
    }

    #[test]
    fn full_triangle_is_not_bijective() {
        let tri = OrderedComplex::from_facets(3, &[vec![0, 1, 2]]);
        let rows = st_iso(&tri, 2).unwrap();
        assert!(rows[0].bijective);
        assert!(rows[1].outside_image > 0, "{rows:?}");
    }
}
