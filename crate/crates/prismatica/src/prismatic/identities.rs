use std::fmt;

use serde::Serialize;

use super::cell::{PrismCell, PrismOp, PrismaticSet};
use super::degree::MultiDegree;
use crate::error::{Error, Result};

/// Operator access shared by the prismatic structures.
pub trait PrismaticOps {
    type Cell: Clone + PartialEq + fmt::Display;
    fn degree<'c>(&self, c: &'c Self::Cell) -> &'c MultiDegree;
    fn cells(&self, deg: &MultiDegree) -> Result<Vec<Self::Cell>>;
    fn apply_op(&self, c: &Self::Cell, op: PrismOp) -> Result<Self::Cell>;
    /// Whether base degeneracies exist.
    fn strong(&self) -> bool {
        false
    }
}

impl PrismaticOps for PrismaticSet<'_> {
    type Cell = PrismCell;

    fn degree<'c>(&self, c: &'c PrismCell) -> &'c MultiDegree {
        &c.deg
    }

    fn cells(&self, deg: &MultiDegree) -> Result<Vec<PrismCell>> {
        PrismaticSet::cells(self, deg)
    }

    fn apply_op(&self, c: &PrismCell, op: PrismOp) -> Result<PrismCell> {
        self.apply(c, op)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PrismIdentityReport {
    pub checked: usize,
    pub skipped: usize,
    pub violations: Vec<String>,
}

impl PrismIdentityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

type Instance = (String, Vec<PrismOp>, Vec<PrismOp>);

fn ff(block: usize, index: usize) -> PrismOp {
    PrismOp::FiberFace { block, index }
}

fn fd(block: usize, index: usize) -> PrismOp {
    PrismOp::FiberDegeneracy { block, index }
}

fn bf(block: usize) -> PrismOp {
    PrismOp::BaseFace { block }
}

fn bd(block: usize) -> PrismOp {
    PrismOp::BaseDegeneracy { block }
}

fn name(op: &PrismOp) -> String {
    match op {
        PrismOp::FiberFace { block, index } => format!("d{index}^({block})"),
        PrismOp::FiberDegeneracy { block, index } => format!("s{index}^({block})"),
        PrismOp::BaseFace { block } => format!("d({block})"),
        PrismOp::BaseDegeneracy { block } => format!("s({block})"),
    }
}

/// Renders a word applied left to right in composition order.
fn word(ops: &[PrismOp]) -> String {
    if ops.is_empty() {
        return "id".into();
    }
    ops.iter().rev().map(name).collect::<Vec<_>>().join(" ")
}

fn with_block(op: PrismOp, block: usize) -> PrismOp {
    match op {
        PrismOp::FiberFace { index, .. } => ff(block, index),
        PrismOp::FiberDegeneracy { index, .. } => fd(block, index),
        other => other,
    }
}

fn instances(deg: &MultiDegree, strong: bool) -> Vec<Instance> {
    let p = deg.p();
    let q = deg.q();
    let mut out: Vec<Instance> = Vec::new();
    let mut push = |l: Vec<PrismOp>, r: Vec<PrismOp>| {
        let label = format!("{} = {}", word(&l), word(&r));
        out.push((label, l, r));
    };
    for i in 0..=p {
        let qi = q[i];
        for k in 1..=qi {
            for j in 0..k {
                push(vec![ff(i, k), ff(i, j)], vec![ff(i, j), ff(i, k - 1)]);
            }
        }
        for k in 0..=qi {
            for j in 0..=k {
                push(vec![fd(i, k), fd(i, j)], vec![fd(i, j), fd(i, k + 1)]);
            }
        }
        for b in 0..=qi {
            for a in 0..=qi + 1 {
                let rhs = if a < b {
                    vec![ff(i, a), fd(i, b - 1)]
                } else if a == b || a == b + 1 {
                    vec![]
                } else {
                    vec![ff(i, a - 1), fd(i, b)]
                };
                push(vec![fd(i, b), ff(i, a)], rhs);
            }
        }
    }
    let fiber_ops = |i: usize| -> Vec<PrismOp> {
        let mut v: Vec<PrismOp> = (0..=q[i]).map(|j| fd(i, j)).collect();
        if q[i] > 0 {
            v.extend((0..=q[i]).map(|j| ff(i, j)));
        }
        v
    };
    for i in 0..=p {
        for k in i + 1..=p {
            for &x in &fiber_ops(i) {
                for &y in &fiber_ops(k) {
                    push(vec![x, y], vec![y, x]);
                }
            }
        }
    }
    if p >= 1 {
        for k in 0..=p {
            for i in 0..=p {
                for &x in &fiber_ops(i) {
                    if i == k {
                        push(vec![x, bf(k)], vec![bf(k)]);
                    } else {
                        let i2 = if i < k { i } else { i - 1 };
                        push(vec![x, bf(k)], vec![bf(k), with_block(x, i2)]);
                    }
                }
            }
        }
        for j in 1..=p {
            for i in 0..j {
                push(vec![bf(j), bf(i)], vec![bf(i), bf(j - 1)]);
            }
        }
    }
    if strong {
        for k in 0..=p {
            for j in 0..=k {
                push(vec![bd(k), bd(j)], vec![bd(j), bd(k + 1)]);
            }
        }
        for b in 0..=p {
            for a in 0..=p + 1 {
                if a < b && p == 0 {
                    continue;
                }
                let rhs = if a < b {
                    vec![bf(a), bd(b - 1)]
                } else if a == b || a == b + 1 {
                    vec![]
                } else {
                    vec![bf(a - 1), bd(b)]
                };
                push(vec![bd(b), bf(a)], rhs);
            }
        }
        for k in 0..=p {
            for i in 0..=p {
                if i == k {
                    continue;
                }
                let i2 = if i < k { i } else { i + 1 };
                for &x in &fiber_ops(i) {
                    push(vec![x, bd(k)], vec![bd(k), with_block(x, i2)]);
                }
            }
        }
    }
    out
}

fn run<T: PrismaticOps + ?Sized>(ps: &T, c: &T::Cell, ops: &[PrismOp]) -> Result<T::Cell> {
    let mut cur = c.clone();
    for &op in ops {
        cur = ps.apply_op(&cur, op)?;
    }
    Ok(cur)
}

/// Checks the prismatic identities on every cell of the given multidegrees.
/// Instances leaving the truncation range on either side are skipped.
pub fn check_operator_identities<T: PrismaticOps + ?Sized>(ps: &T, degs: &[MultiDegree]) -> Result<PrismIdentityReport> {
    let mut rep = PrismIdentityReport::default();
    for deg in degs {
        let cells = ps.cells(deg)?;
        let inst = instances(deg, ps.strong());
        for c in &cells {
            for (label, l, r) in &inst {
                match (run(ps, c, l), run(ps, c, r)) {
                    (Ok(a), Ok(b)) => {
                        rep.checked += 1;
                        if a != b {
                            rep.violations.push(format!("{label} on {c}: {a} vs {b}"));
                        }
                    }
                    (Err(Error::DimensionOutOfRange { .. }), _) | (_, Err(Error::DimensionOutOfRange { .. })) => rep.skipped += 1,
                    (a, b) => {
                        rep.checked += 1;
                        let show = |x: Result<T::Cell>| x.map_or_else(|e| e.to_string(), |v| v.to_string());
                        rep.violations.push(format!("{label} on {c}: {} vs {}", show(a), show(b)));
                    }
                }
            }
        }
    }
    Ok(rep)
}
