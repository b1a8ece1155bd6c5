use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) and the rank `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    #[serde(serialize_with = "ser_bigints")]
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn is_unit(&self) -> bool;
    fn is_nil(&self) -> bool;
    fn times(&self, o: &Self) -> Option<Self>;
    fn minus(&self, o: &Self) -> Option<Self>;
    fn big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn times(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
}

type Row<C> = Vec<(usize, C)>;

/// `a - f * b` on sorted sparse rows.
fn axpy<C: Coeff>(a: &Row<C>, f: &C, b: &Row<C>) -> Option<Row<C>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = C::minus(&zero_like(f)?, &f.times(&b[j].1)?)?;
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = a[i].1.minus(&f.times(&b[j].1)?)?;
            if !v.is_nil() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn zero_like<C: Coeff>(f: &C) -> Option<C> {
    f.minus(f)
}

/// Eliminates unit pivots, shortest rows first. Returns the number of pivots
/// and the remaining rows, or `None` on coefficient overflow.
fn eliminate_units<C: Coeff>(mut rows: Vec<Row<C>>, ncols: usize) -> Option<(usize, Vec<Row<C>>)> {
    let n = rows.len();
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut version = vec![0u32; n];
    let mut dead = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, usize, u32)>> = (0..n).map(|r| Reverse((rows[r].len(), r, 0))).collect();
    let mut units = 0;
    while let Some(Reverse((_, r, ver))) = heap.pop() {
        if dead[r] || ver != version[r] {
            continue;
        }
        if rows[r].is_empty() {
            dead[r] = true;
            continue;
        }
        let Some((c, u)) = rows[r].iter().filter(|(_, v)| v.is_unit()).min_by_key(|(c, _)| (col_rows[*c].len(), *c)).cloned() else {
            continue;
        };
        let pivot = std::mem::take(&mut rows[r]);
        dead[r] = true;
        for (c2, _) in &pivot {
            col_rows[*c2].remove(&r);
        }
        let mut targets: Vec<usize> = col_rows[c].iter().copied().collect();
        targets.sort_unstable();
        for r2 in targets {
            let a = rows[r2].iter().find(|(cc, _)| *cc == c).map(|(_, v)| v.clone())?;
            let f = a.times(&u)?;
            let new = axpy(&rows[r2], &f, &pivot)?;
            for (c2, _) in &rows[r2] {
                col_rows[*c2].remove(&r2);
            }
            for (c2, _) in &new {
                col_rows[*c2].insert(r2);
            }
            rows[r2] = new;
            version[r2] += 1;
            heap.push(Reverse((rows[r2].len(), r2, version[r2])));
        }
        units += 1;
    }
    let rest = rows.into_iter().enumerate().filter(|(r, row)| !dead[*r] && !row.is_empty()).map(|(_, row)| row).collect();
    Some((units, rest))
}

fn residual_dense<C: Coeff>(rows: &[Row<C>]) -> Vec<Vec<BigInt>> {
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    rows.iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); cols.len()];
            for (c, v) in r {
                d[pos[c]] = v.big();
            }
            d
        })
        .collect()
}

/// Smith normal form of a dense matrix; returns the nonzero invariant factors.
/// Every pass moves the smallest remaining entry to the pivot and reduces
/// its row and column by it, which keeps the entries from growing.
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let piv = a[t][t].clone();
        let mut clean = true;
        for i in t + 1..m {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&piv);
            for j in t..n {
                let d = &q * &a[t][j];
                a[i][j] -= d;
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..n {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&piv);
            for row in a.iter_mut().skip(t) {
                let d = &q * &row[t];
                row[j] -= d;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        if let Some(i) = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&piv))) {
            for j in t..n {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(piv.abs());
        t += 1;
    }
    diag
}

/// Smith normal form by sparse unit-pivot elimination followed by a dense
/// reduction of whatever remains.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (units, residual) = match m.to_i64_rows().and_then(|rows| {
        let rows: Vec<Row<i64>> = rows.into_iter().map(sorted).collect();
        eliminate_units(rows, m.cols())
    }) {
        Some((u, rest)) => (u, residual_dense(&rest)),
        None => {
            let rows: Vec<Row<BigInt>> = big_rows(m);
            let (u, rest) = eliminate_units(rows, m.cols()).expect("big integers do not overflow");
            (u, residual_dense(&rest))
        }
    };
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_smith(residual));
    let rank = factors.len();
    SmithForm { factors, rank }
}

fn sorted<C>(mut r: Row<C>) -> Row<C> {
    r.sort_unstable_by_key(|(c, _)| *c);
    r
}

fn big_rows(m: &IntMatrix) -> Vec<Row<BigInt>> {
    let mut rows = vec![Vec::new(); m.rows()];
    for (i, j, v) in m.entries() {
        rows[i].push((j, v.clone()));
    }
    rows.into_iter().map(sorted).collect()
}
