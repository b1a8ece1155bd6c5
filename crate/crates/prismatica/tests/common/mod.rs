//! Oracles that share no code with the library: homology of a simplicial
//! complex from its facet list, by dense `i128` Smith reduction.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

/// Betti number and torsion coefficients of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

pub fn free(b: usize) -> Group {
    Group { betti: b, torsion: vec![] }
}

pub fn torsion(b: usize, t: &[u64]) -> Group {
    Group { betti: b, torsion: t.to_vec() }
}

/// All faces of the facets, grouped by dimension, each list sorted.
pub fn closure(facets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let k = f.len();
        for mask in 1u32..(1 << k) {
            all.insert((0..k).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect());
        }
    }
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![Vec::new(); top];
    for s in all {
        out[s.len() - 1].push(s);
    }
    out
}

/// Dense boundary matrix `C_n -> C_{n-1}`.
pub fn boundary(lower: &[Vec<usize>], upper: &[Vec<usize>]) -> Vec<Vec<i128>> {
    let index: BTreeMap<&Vec<usize>, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = vec![vec![0i128; upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for k in 0..s.len() {
            let mut f = s.clone();
            f.remove(k);
            m[index[&f]][j] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Nonzero invariant factors of a dense integer matrix.
pub fn smith(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry as pivot
        let mut piv = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && piv.is_none_or(|(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        let p = a[t][t];
        let mut reduced = true;
        for i in t + 1..rows {
            let q = a[i][t] / p;
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            reduced &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / p;
            if q != 0 {
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
            }
            reduced &= a[t][j] == 0;
        }
        if !reduced {
            continue;
        }
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

/// Homology of the complex spanned by `facets` in degrees `0..=top`.
pub fn homology(facets: &[Vec<usize>]) -> Vec<Group> {
    let cells = closure(facets);
    let n = cells.len();
    let ranks: Vec<Vec<i128>> =
        (0..=n).map(|k| if k == 0 || k >= n { vec![] } else { smith(boundary(&cells[k - 1], &cells[k])) }).collect();
    (0..n)
        .map(|k| {
            let rank_in = ranks[k].len();
            let out = ranks.get(k + 1).cloned().unwrap_or_default();
            Group { betti: cells[k].len() - rank_in - out.len(), torsion: out.iter().filter(|&&d| d != 1).map(|&d| d as u64).collect() }
        })
        .collect()
}

pub fn circle() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 2], vec![0, 2]]
}

pub fn torus7() -> Vec<Vec<usize>> {
    let mut f = Vec::new();
    for i in 0..7 {
        for (a, b) in [(1, 3), (2, 3)] {
            let mut s = vec![i, (i + a) % 7, (i + b) % 7];
            s.sort_unstable();
            f.push(s);
        }
    }
    f
}

/// The 6-vertex projective plane: the hemi-icosahedron.
pub fn rp2_6() -> Vec<Vec<usize>> {
    [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5], [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5]]
        .iter()
        .map(|x| x.to_vec())
        .collect()
}

pub fn mobius5() -> Vec<Vec<usize>> {
    [[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]].iter().map(|x| x.to_vec()).collect()
}
