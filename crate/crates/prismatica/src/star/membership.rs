use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial_core::{Monotone, NormalForm, SimplicialSet};

/// An element `(first, second)` of `St(S)_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StarPair {
    pub first: NormalForm,
    pub second: NormalForm,
    pub dim: usize,
}

impl StarPair {
    pub fn new(s: &SimplicialSet, first: NormalForm, second: NormalForm) -> Result<Self> {
        if !in_star(s, &first, &second)? {
            return Err(Error::Invalid(format!("({first}, {second}) is not in the star")));
        }
        let dim = first.dim();
        Ok(StarPair { first, second, dim })
    }
}

/// `(a, b) = (g^* s_ν d_ν σ', g^* s_μ d_μ σ')`; `g` is the identity when `σ'`
/// already has the dimension of the pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    pub sigma_prime: NormalForm,
    pub nu: Vec<usize>,
    pub mu: Vec<usize>,
    pub g: Vec<usize>,
}

/// `s_{ν_q..ν_1} d_{ν_1..ν_q}` as a map `[n] -> [n]`: each position in `ν`
/// takes the value of the next position outside `ν`.
pub(crate) fn fill_forward(nu: &[usize], n: usize) -> Monotone {
    let values = (0..=n).map(|k| (k..=n).find(|l| !nu.contains(l)).expect("top position is never deleted")).collect();
    Monotone::new(values, n)
}

/// Whether the pair of maps `(θ, κ)` into a simplex is reachable from
/// `(s_ν d_ν, s_μ d_μ)` on some possibly degenerate simplex, up to faces.
pub fn achievable(theta: &[usize], kappa: &[usize]) -> bool {
    let bad = |x: &[usize], y: &[usize]| (0..x.len()).any(|s| (0..s).any(|r| x[r] < x[s] && y[s] < x[r]));
    theta.len() == kappa.len() && !bad(theta, kappa) && !bad(kappa, theta)
}

/// Membership in `St(S)`.
pub fn in_star(s: &SimplicialSet, a: &NormalForm, b: &NormalForm) -> Result<bool> {
    let n = a.dim();
    if b.dim() != n {
        return Ok(false);
    }
    if s.is_from_complex() {
        let (va, vb) = (s.vertices(a)?, s.vertices(b)?);
        let mut union: Vec<usize> = va.iter().chain(&vb).copied().collect();
        union.sort_unstable();
        union.dedup();
        return Ok(s.complex_contains(&union)? && achievable(&va, &vb));
    }
    for x in s.all_generators() {
        let x = NormalForm::of(x);
        let reach = |target: &NormalForm| -> Result<Vec<Monotone>> {
            let mut out = Vec::new();
            for th in Monotone::all(n, x.dim()) {
                if &s.apply(&x, &th)? == target {
                    out.push(th);
                }
            }
            Ok(out)
        };
        let thetas = reach(a)?;
        if thetas.is_empty() {
            continue;
        }
        let kappas = reach(b)?;
        if thetas.iter().any(|t| kappas.iter().any(|k| achievable(t.values(), k.values()))) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Brute-force witness scan over `σ'` of dimension `n..=min(2n+2, D)`,
/// disjoint `ν, μ` and monotone `g`. Returns the first witness found.
pub fn star_membership(s: &SimplicialSet, a: &NormalForm, b: &NormalForm) -> Result<Option<StarWitness>> {
    let n = a.dim();
    if b.dim() != n {
        return Ok(None);
    }
    for top in n..=(2 * n + 2).min(s.truncation()) {
        let gs = if top == n { vec![Monotone::identity(n)] } else { Monotone::all(n, top) };
        let sigmas = s.simplices(top)?;
        for labels in 0..3usize.pow(top as u32) {
            let (mut nu, mut mu) = (Vec::new(), Vec::new());
            let mut code = labels;
            for k in 0..top {
                match code % 3 {
                    1 => nu.push(k),
                    2 => mu.push(k),
                    _ => {}
                }
                code /= 3;
            }
            let (fnu, fmu) = (fill_forward(&nu, top), fill_forward(&mu, top));
            for sp in &sigmas {
                let (x, y) = (s.apply(sp, &fnu)?, s.apply(sp, &fmu)?);
                for g in &gs {
                    if &s.apply(&x, g)? == a && &s.apply(&y, g)? == b {
                        return Ok(Some(StarWitness { sigma_prime: sp.clone(), nu, mu, g: g.values().to_vec() }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial_core::{GenId, OrderedComplex, SimplicialSetBuilder};

    fn loop_set(d: usize) -> SimplicialSet {
        let mut b = SimplicialSetBuilder::new(d);
        let v = b.add_generator(0, Some("v".into()), vec![]).unwrap();
        let v = NormalForm::of(v);
        b.add_generator(1, Some("e".into()), vec![v.clone(), v]).unwrap();
        b.build()
    }

    #[test]
    fn loop_example() {
        let s = loop_set(4);
        let e = NormalForm::of(GenId { dim: 1, index: 0 });
        let v = NormalForm::of(GenId { dim: 0, index: 0 });
        let s0v = s.degeneracy(&v, 0).unwrap();
        let w = star_membership(&s, &s0v, &e).unwrap().unwrap();
        assert_eq!((w.sigma_prime, w.nu, w.mu), (e.clone(), vec![0], vec![]));
        assert!(in_star(&s, &s0v, &e).unwrap());
        let w = star_membership(&s, &e, &e).unwrap().unwrap();
        assert!(w.nu.is_empty() && w.mu.is_empty());
    }

    #[test]
    fn disjoint_components() {
        let s =
            SimplicialSet::from_complex(&OrderedComplex::from_facets(4, &[vec![0, 1], vec![2, 3]])).unwrap().with_truncation(4).unwrap();
        let a = s.simplex_from_vertices(&[0, 1]).unwrap();
        let b = s.simplex_from_vertices(&[2, 3]).unwrap();
        assert!(star_membership(&s, &a, &b).unwrap().is_none());
        assert!(!in_star(&s, &a, &b).unwrap());
    }

    #[test]
    fn degenerate_witness_is_needed() {
        let s = SimplicialSet::from_complex(&OrderedComplex::from_facets(2, &[vec![0, 1]])).unwrap().with_truncation(4).unwrap();
        let a = s.simplex_from_vertices(&[0, 1]).unwrap();
        let b = s.simplex_from_vertices(&[0, 0]).unwrap();
        let w = star_membership(&s, &a, &b).unwrap().unwrap();
        assert!(w.sigma_prime.is_degenerate());
    }

    fn agree(s: &SimplicialSet, max_n: usize) {
        for n in 0..=max_n {
            let xs = s.simplices(n).unwrap();
            for a in &xs {
                for b in &xs {
                    let fast = in_star(s, a, b).unwrap();
                    let slow = star_membership(s, a, b).unwrap().is_some();
                    assert_eq!(fast, slow, "({a}, {b})");
                }
            }
        }
    }

    #[test]
    fn criterion_matches_witness_scan() {
        let edge = SimplicialSet::from_complex(&OrderedComplex::from_facets(2, &[vec![0, 1]])).unwrap().with_truncation(6).unwrap();
        agree(&edge, 2);
        let tri = SimplicialSet::from_complex(&OrderedComplex::from_facets(3, &[vec![0, 1, 2]])).unwrap().with_truncation(4).unwrap();
        agree(&tri, 1);
        agree(&loop_set(6), 2);
    }
}
