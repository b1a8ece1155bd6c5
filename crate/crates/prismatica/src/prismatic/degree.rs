use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Construction {
    P,
    Pbar,
    Pf,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::P => "P",
            Construction::Pbar => "Pbar",
            Construction::Pf => "Pf",
        })
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(Construction::P),
            "Pbar" | "pbar" => Ok(Construction::Pbar),
            "Pf" | "pf" => Ok(Construction::Pf),
            _ => Err(Error::Invalid(format!("unknown construction {s:?}"))),
        }
    }
}

/// Multidegree `(p; q_0, ..., q_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    q: Vec<usize>,
}

impl MultiDegree {
    pub fn new(q: Vec<usize>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::ShapeMismatch("a multidegree needs at least one block".into()));
        }
        Ok(MultiDegree { q })
    }

    /// `(p; 0, ..., 0)`.
    pub fn zero(p: usize) -> Self {
        MultiDegree { q: vec![0; p + 1] }
    }

    pub fn p(&self) -> usize {
        self.q.len() - 1
    }

    pub fn q(&self) -> &[usize] {
        &self.q
    }

    pub fn qsum(&self) -> usize {
        self.q.iter().sum()
    }

    pub fn total_degree(&self) -> usize {
        self.p() + self.qsum()
    }

    /// `q_0 + ... + q_{i-1}`.
    pub fn offset(&self, i: usize) -> usize {
        self.q[..i].iter().sum()
    }

    pub fn payload_dim(&self, c: Construction) -> usize {
        match c {
            Construction::P | Construction::Pf => self.qsum() + self.p(),
            Construction::Pbar => self.qsum() + 2 * self.p() + 1,
        }
    }

    /// Payload position of the first vertex of block `i`.
    pub fn block_start(&self, c: Construction, i: usize) -> usize {
        match c {
            Construction::P | Construction::Pf => self.offset(i) + i,
            Construction::Pbar => self.offset(i) + 2 * i,
        }
    }

    /// The payload positions belonging to block `i` (fiber positions only).
    pub fn block_positions(&self, c: Construction, i: usize) -> std::ops::Range<usize> {
        let a = self.block_start(c, i);
        a..a + self.q[i] + 1
    }

    /// In a `Pbar` payload, the extra position that closes block `i`.
    pub fn separator(&self, i: usize) -> usize {
        self.offset(i) + 2 * i + self.q[i] + 1
    }

    pub fn separators(&self) -> Vec<usize> {
        (0..=self.p()).map(|i| self.separator(i)).collect()
    }

    /// Positions removed by the base face `d_(i)`.
    pub fn base_face_positions(&self, c: Construction, i: usize) -> Vec<usize> {
        let r = self.block_positions(c, i);
        match c {
            Construction::Pbar => (r.start..=r.end).collect(),
            _ => r.collect(),
        }
    }

    pub fn check_block(&self, i: usize) -> Result<()> {
        if i > self.p() {
            return Err(Error::IndexOutOfRange { index: i, context: format!("blocks of {self}") });
        }
        Ok(())
    }

    pub fn with_block(&self, i: usize, qi: usize) -> Self {
        let mut q = self.q.clone();
        q[i] = qi;
        MultiDegree { q }
    }

    pub fn without_block(&self, i: usize) -> Result<Self> {
        self.check_block(i)?;
        if self.p() == 0 {
            return Err(Error::DimensionOutOfRange { dim: -1, bound: 0 });
        }
        let mut q = self.q.clone();
        q.remove(i);
        Ok(MultiDegree { q })
    }

    pub fn with_repeated_block(&self, i: usize) -> Result<Self> {
        self.check_block(i)?;
        let mut q = self.q.clone();
        q.insert(i, q[i]);
        Ok(MultiDegree { q })
    }

    /// All multidegrees with base degree `p` and fiber total `n`.
    pub fn compositions(p: usize, n: usize) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        let mut cur = vec![0; p + 1];
        fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiDegree>) {
            if k + 1 == cur.len() {
                cur[k] = left;
                out.push(MultiDegree { q: cur.clone() });
                return;
            }
            for v in 0..=left {
                cur[k] = v;
                rec(k + 1, left - v, cur, out);
            }
        }
        rec(0, n, &mut cur, &mut out);
        out
    }

    /// All multidegrees with `p <= max_p` and every `q_i <= max_q`.
    pub fn bounded(max_p: usize, max_q: usize) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        for p in 0..=max_p {
            let mut cur = vec![0; p + 1];
            loop {
                out.push(MultiDegree { q: cur.clone() });
                let mut k = 0;
                while k <= p && cur[k] == max_q {
                    cur[k] = 0;
                    k += 1;
                }
                if k > p {
                    break;
                }
                cur[k] += 1;
            }
        }
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> = self.q.iter().map(|v| v.to_string()).collect();
        write!(f, "({}; {})", self.p(), q.join(","))
    }
}

impl FromStr for MultiDegree {
    type Err = Error;

    /// Parses `p,q0,...,qp`.
    fn from_str(s: &str) -> Result<Self> {
        let nums: Vec<usize> =
            s.split(',').map(|t| t.trim().parse().map_err(|_| Error::Invalid(format!("bad multidegree {s:?}")))).collect::<Result<_>>()?;
        let (&p, q) = nums.split_first().ok_or_else(|| Error::Invalid("empty multidegree".into()))?;
        if q.len() != p + 1 {
            return Err(Error::ShapeMismatch(format!("multidegree with p = {p} needs {} fiber entries", p + 1)));
        }
        MultiDegree::new(q.to_vec())
    }
}
