use serde::{Deserialize, Serialize};

use super::coords::BaryPoint;
use super::monotone::Monotone;
use super::set::{NormalForm, SimplicialSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpKind {
    Face,
    Degeneracy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub kind: OpKind,
    pub index: usize,
}

impl Letter {
    pub fn d(index: usize) -> Self {
        Letter { kind: OpKind::Face, index }
    }

    pub fn s(index: usize) -> Self {
        Letter { kind: OpKind::Degeneracy, index }
    }
}

/// A composite of faces and degeneracies written in composition order:
/// the rightmost letter acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperatorWord {
    pub letters: Vec<Letter>,
}

impl OperatorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        OperatorWord { letters }
    }

    pub fn identity() -> Self {
        OperatorWord::default()
    }

    /// The degeneracy word of a normal form, as an operator on its generator.
    pub fn of_normal_form(x: &NormalForm) -> Self {
        OperatorWord { letters: x.degens.iter().map(|&i| Letter::s(i)).collect() }
    }

    /// Dimension after acting on an `n`-simplex, if every letter is valid.
    pub fn output_dim(&self, n: usize) -> Option<usize> {
        let mut d = n;
        for l in self.letters.iter().rev() {
            match l.kind {
                OpKind::Face if d >= 1 && l.index <= d => d -= 1,
                OpKind::Degeneracy if l.index <= d => d += 1,
                _ => return None,
            }
        }
        Some(d)
    }

    /// The underlying monotone map `[out] -> [n]`.
    pub fn to_monotone(&self, n: usize) -> Option<Monotone> {
        let out = self.output_dim(n)?;
        let mut acc = Monotone::identity(n);
        let mut d = n;
        for l in self.letters.iter().rev() {
            let step = match l.kind {
                OpKind::Face => {
                    d -= 1;
                    Monotone::coface(l.index, d + 1)
                }
                OpKind::Degeneracy => {
                    d += 1;
                    Monotone::codegeneracy(l.index, d - 1)
                }
            };
            acc = acc.compose(&step);
        }
        debug_assert_eq!(acc.source_dim(), out);
        Some(acc)
    }
}

/// Applies `w` to `x` letter by letter, checking every intermediate dimension
/// against the truncation bound.
pub fn normalize_word(s: &SimplicialSet, w: &OperatorWord, x: &NormalForm) -> Result<NormalForm> {
    let mut cur = x.clone();
    for l in w.letters.iter().rev() {
        cur = apply_operator(s, l.kind, l.index, &cur)?;
    }
    Ok(cur)
}

pub fn apply_operator(s: &SimplicialSet, kind: OpKind, i: usize, x: &NormalForm) -> Result<NormalForm> {
    match kind {
        OpKind::Face => s.face(x, i),
        OpKind::Degeneracy => s.degeneracy(x, i),
    }
}

/// Block surjection `[q+p] -> [p]` sending block `i` (with `q_i + 1` entries) to `i`.
pub fn block_surjection(qvec: &[usize]) -> Monotone {
    let values: Vec<usize> = qvec.iter().enumerate().flat_map(|(i, &q)| std::iter::repeat_n(i, q + 1)).collect();
    Monotone::new(values, qvec.len() - 1)
}

/// The composite degeneracy `μ_{q_0..q_p}: S_p -> S_{q+p}` and its dual
/// coordinate map `Δ^{q+p} -> Δ^p` summing barycentric coordinates blockwise.
pub fn mu_operator(qvec: &[usize]) -> (OperatorWord, impl Fn(&BaryPoint) -> Result<BaryPoint>) {
    assert!(!qvec.is_empty(), "μ needs at least one block");
    let sur = block_surjection(qvec);
    let mut reps = sur.repeats();
    reps.reverse();
    let word = OperatorWord { letters: reps.into_iter().map(Letter::s).collect() };
    let len = sur.source_dim() + 1;
    let map = move |t: &BaryPoint| {
        if t.len() != len {
            return Err(Error::ShapeMismatch(format!("μ expects {len} coordinates, got {}", t.len())));
        }
        BaryPoint::new(sur.push_coords(t.coords()))
    };
    (word, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial_core::complex::OrderedComplex;
    use crate::simplicial_core::set::GenId;

    fn circle() -> SimplicialSet {
        SimplicialSet::from_complex(&OrderedComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]))
            .unwrap()
            .with_truncation(6)
            .unwrap()
    }

    #[test]
    fn spec_examples() {
        let s = circle();
        let v = NormalForm::of(GenId { dim: 0, index: 0 });
        let e = NormalForm::of(GenId { dim: 1, index: 0 });
        let w = OperatorWord::new(vec![Letter::d(0), Letter::s(0)]);
        assert_eq!(normalize_word(&s, &w, &e).unwrap(), e);
        let w = OperatorWord::new(vec![Letter::s(0), Letter::s(0)]);
        assert_eq!(normalize_word(&s, &w, &v).unwrap(), NormalForm { degens: vec![1, 0], gen: v.gen });
        let w = OperatorWord::new(vec![Letter::d(1), Letter::s(0)]);
        assert_eq!(normalize_word(&s, &w, &v).unwrap(), v);
        assert_eq!(apply_operator(&s, OpKind::Face, 0, &e).unwrap(), NormalForm::of(GenId { dim: 0, index: 1 }));
    }

    #[test]
    fn normalizing_a_normal_form_is_identity() {
        let s = circle();
        for x in s.simplices(4).unwrap() {
            let w = OperatorWord::of_normal_form(&x);
            assert_eq!(normalize_word(&s, &w, &NormalForm::of(x.gen)).unwrap(), x);
        }
    }

    #[test]
    fn dimension_errors() {
        let s = circle().with_truncation(1).unwrap();
        let e = NormalForm::of(GenId { dim: 1, index: 0 });
        let w = OperatorWord::new(vec![Letter::d(0), Letter::s(0)]);
        assert!(matches!(normalize_word(&s, &w, &e), Err(Error::DimensionOutOfRange { .. })));
        let v = NormalForm::of(GenId { dim: 0, index: 0 });
        assert!(normalize_word(&s, &OperatorWord::new(vec![Letter::d(0)]), &v).is_err());
    }

    #[test]
    fn mu_examples() {
        let (w, f) = mu_operator(&[1, 0]);
        assert_eq!(w.letters, vec![Letter::s(0)]);
        let out = f(&BaryPoint::new(vec![0.2, 0.3, 0.5]).unwrap()).unwrap();
        assert!((out.coords()[0] - 0.5).abs() < 1e-15 && (out.coords()[1] - 0.5).abs() < 1e-15);
        let (w, _) = mu_operator(&[0, 0, 0]);
        assert!(w.letters.is_empty());
        let (w, f) = mu_operator(&[2]);
        assert_eq!(w.letters, vec![Letter::s(1), Letter::s(0)]);
        assert_eq!(f(&BaryPoint::new(vec![0.1, 0.2, 0.7]).unwrap()).unwrap().coords(), &[1.0]);
    }

    #[test]
    fn mu_word_matches_explicit_composite() {
        // s_{(q+p-1)..(q+p-q_p)} ... s_{(q_0+q_1)..(q_0+1)} s_{(q_0-1)..0}
        let q = [2usize, 1, 3];
        let p = q.len() - 1;
        let total: usize = q.iter().sum::<usize>() + p;
        let mut expected = Vec::new();
        let mut start = 0;
        for &qi in &q {
            for j in (start..start + qi).rev() {
                expected.push(j);
            }
            start += qi + 1;
        }
        expected.sort_unstable_by(|a, b| b.cmp(a));
        let (w, _) = mu_operator(&q);
        assert_eq!(w.letters.iter().map(|l| l.index).collect::<Vec<_>>(), expected);
        assert_eq!(w.output_dim(p), Some(total));
    }
}
