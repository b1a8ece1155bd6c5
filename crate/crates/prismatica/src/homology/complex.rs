use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SmithForm};
use crate::error::{Error, Result};

/// Integer chain complex; `boundaries[n]` is `∂_n: C_n -> C_{n-1}` with
/// `boundaries[0]` the zero map to the trivial group.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    bases: Vec<Vec<String>>,
    boundaries: Vec<IntMatrix>,
    truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<u64>,
    pub reliable: bool,
}

impl DegreeHomology {
    pub fn group(&self) -> HomologyGroup {
        HomologyGroup { betti: self.betti, torsion: self.torsion.clone() }
    }
}

impl ChainComplex {
    /// `truncated` marks complexes cut off above their top degree, whose top
    /// homology is then missing the boundaries from above.
    pub fn new(bases: Vec<Vec<String>>, boundaries: Vec<IntMatrix>, truncated: bool) -> Result<Self> {
        if bases.len() != boundaries.len() {
            return Err(Error::ShapeMismatch(format!("{} bases but {} boundary maps", bases.len(), boundaries.len())));
        }
        for (n, d) in boundaries.iter().enumerate() {
            let rows = if n == 0 { 0 } else { bases[n - 1].len() };
            if d.rows() != rows || d.cols() != bases[n].len() {
                return Err(Error::ShapeMismatch(format!("∂_{n} is {}x{}, expected {rows}x{}", d.rows(), d.cols(), bases[n].len())));
            }
        }
        Ok(ChainComplex { bases, boundaries, truncated })
    }

    /// Highest degree present, if any.
    pub fn top(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.bases.get(n).map_or(0, Vec::len)
    }

    pub fn basis(&self, n: usize) -> &[String] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, n: usize) -> Option<&IntMatrix> {
        self.boundaries.get(n)
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Keeps degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> ChainComplex {
        let k = (n + 1).min(self.bases.len());
        ChainComplex {
            bases: self.bases[..k].to_vec(),
            boundaries: self.boundaries[..k].to_vec(),
            truncated: self.truncated || k < self.bases.len(),
        }
    }

    /// Verifies `∂_{n-1} ∂_n = 0` in every degree.
    pub fn check_d_squared(&self) -> Result<()> {
        (2..self.boundaries.len()).into_par_iter().try_for_each(|n| {
            if self.boundaries[n - 1].mul(&self.boundaries[n])?.is_zero() {
                Ok(())
            } else {
                Err(Error::NotAComplex(n))
            }
        })
    }

    pub fn smith_forms(&self) -> Vec<SmithForm> {
        self.boundaries.par_iter().map(smith_normal_form).collect()
    }

    pub fn homology(&self) -> Result<Vec<DegreeHomology>> {
        self.check_d_squared()?;
        let snf = self.smith_forms();
        let top = self.bases.len();
        (0..top)
            .map(|n| {
                let rank_in = snf[n].rank;
                let (rank_out, torsion) = match snf.get(n + 1) {
                    Some(s) => (s.rank, s.factors.iter().filter(|f| !f.is_one()).map(to_u64).collect::<Result<Vec<_>>>()?),
                    None => (0, Vec::new()),
                };
                let betti = self.bases[n].len() - rank_in - rank_out;
                Ok(DegreeHomology { degree: n, betti, torsion, reliable: !(self.truncated && n + 1 == top) })
            })
            .collect()
    }
}

fn to_u64(b: &BigInt) -> Result<u64> {
    b.to_u64().ok_or_else(|| Error::Invalid(format!("torsion coefficient {b} exceeds 64 bits")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainMapViolation {
    pub degree: usize,
    pub basis: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ChainMapReport {
    pub checked: usize,
    pub violations: Vec<ChainMapViolation>,
}

impl ChainMapReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `f_{n-1} ∂^C_n = ∂^D_n f_n` column by column, where `f[n]: C_n -> D_n`.
pub fn verify_chain_map(f: &[IntMatrix], c: &ChainComplex, d: &ChainComplex) -> Result<ChainMapReport> {
    let mut rep = ChainMapReport::default();
    let top = f.len().min(c.bases.len()).min(d.bases.len());
    for (n, fm) in f.iter().enumerate().take(top) {
        if fm.rows() != d.rank(n) || fm.cols() != c.rank(n) {
            return Err(Error::ShapeMismatch(format!("f_{n} is {}x{}", fm.rows(), fm.cols())));
        }
    }
    for n in 1..top {
        let lhs = f[n - 1].mul(&c.boundaries[n])?.columns();
        let rhs = d.boundaries[n].mul(&f[n])?.columns();
        for (j, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
            rep.checked += 1;
            if a != b {
                rep.violations.push(ChainMapViolation { degree: n, basis: c.bases[n][j].clone() });
            }
        }
    }
    Ok(rep)
}

/// The identity chain map of `c`.
pub fn identity_map(c: &ChainComplex) -> Vec<IntMatrix> {
    (0..c.bases.len())
        .map(|n| {
            let k = c.rank(n);
            let mut m = IntMatrix::zeros(k, k);
            for i in 0..k {
                m.set(i, i, BigInt::one());
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_complex() -> ChainComplex {
        let bases = vec![vec!["a".into(), "b".into(), "c".into()], vec!["ab".into(), "bc".into(), "ac".into()]];
        let d1 = IntMatrix::from_dense(&[vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]]);
        ChainComplex::new(bases, vec![IntMatrix::zeros(0, 3), d1], false).unwrap()
    }

    #[test]
    fn circle_homology() {
        let h = circle_complex().homology().unwrap();
        assert_eq!(h.iter().map(|d| d.betti).collect::<Vec<_>>(), vec![1, 1]);
        assert!(h.iter().all(|d| d.torsion.is_empty() && d.reliable));
    }

    #[test]
    fn not_a_complex() {
        let bases = vec![vec!["v".into()], vec!["e".into()], vec!["f".into()]];
        let c = ChainComplex::new(
            bases,
            vec![IntMatrix::zeros(0, 1), IntMatrix::from_dense(&[vec![1]]), IntMatrix::from_dense(&[vec![1]])],
            false,
        )
        .unwrap();
        assert_eq!(c.homology(), Err(Error::NotAComplex(2)));
    }

    #[test]
    fn identity_is_chain_map_and_flip_is_caught() {
        let c = circle_complex();
        let id = identity_map(&c);
        assert!(verify_chain_map(&id, &c, &c).unwrap().ok());
        let mut bad = id.clone();
        bad[1].set(2, 2, BigInt::from(-1));
        let rep = verify_chain_map(&bad, &c, &c).unwrap();
        assert_eq!(rep.violations, vec![ChainMapViolation { degree: 1, basis: "ac".into() }]);
    }

    #[test]
    fn truncated_top_is_unreliable() {
        let h = circle_complex().truncate(0).homology().unwrap();
        assert_eq!(h.len(), 1);
        assert!(!h[0].reliable);
    }
}
