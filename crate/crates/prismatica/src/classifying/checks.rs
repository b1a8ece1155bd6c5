use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use super::coords::{from_interior, lambda_bar, rho_eval, rho_lambda_composed, to_interior, InteriorPoint};
use super::map::{classify_cell, translation_discrepancy, Translation, TupleValue};
use crate::error::Result;
use crate::gauge::{random_simplex_point, GroupOps, TransitionSet};
use crate::prismatic::{Construction, MultiDegree, PrismCell, PrismaticSet};
use crate::simplicial_core::{eps, BaryPoint};

/// Agreement required between the two evaluations of `ρ λ`.
pub const DUAL_PATH_TOL: f64 = 1e-12;

/// Points of `Δ^n` whose interior coordinates all lie in `{0, 1/2, 1}`.
pub fn grid_points(n: usize) -> Vec<BaryPoint> {
    let mut seqs: Vec<Vec<f64>> = vec![Vec::new()];
    for _ in 0..n {
        seqs = seqs
            .into_iter()
            .flat_map(|s| {
                let prev = s.last().copied().unwrap_or(1.0);
                [1.0, 0.5, 0.0].into_iter().filter(move |&v| v <= prev).map(move |v| {
                    let mut s2 = s.clone();
                    s2.push(v);
                    s2
                })
            })
            .collect();
    }
    seqs.into_iter().map(|s| from_interior(&InteriorPoint::new(s).expect("grid is decreasing")).expect("grid is a point")).collect()
}

/// A point of `Δ^p × Δ^{q_0} × ... × Δ^{q_p}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductPoint {
    pub t: InteriorPoint,
    pub s: Vec<BaryPoint>,
}

/// The tensor grid over every factor, then `random` seeded random points.
pub fn product_samples(deg: &MultiDegree, random: usize, rng: &mut SplitMix64) -> Vec<ProductPoint> {
    let mut factors: Vec<Vec<BaryPoint>> = vec![grid_points(deg.p())];
    factors.extend(deg.q().iter().map(|&q| grid_points(q)));
    let mut combos: Vec<Vec<BaryPoint>> = vec![Vec::new()];
    for f in &factors {
        combos = combos.into_iter().flat_map(|c| f.iter().map(move |x| [c.clone(), vec![x.clone()]].concat())).collect();
    }
    let mut out: Vec<ProductPoint> = combos
        .into_iter()
        .map(|mut c| {
            let s = c.split_off(1);
            ProductPoint { t: to_interior(&c[0]), s }
        })
        .collect();
    let bary = |n: usize, rng: &mut SplitMix64| BaryPoint::new(random_simplex_point(n, rng)).expect("random points are valid");
    for _ in 0..random {
        let t = to_interior(&bary(deg.p(), rng));
        let s = deg.q().iter().map(|&q| bary(q, rng)).collect();
        out.push(ProductPoint { t, s });
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MCompatFailure {
    pub cell: String,
    pub face: usize,
    pub point: ProductPoint,
    pub check: String,
    pub discrepancy: f64,
}

/// Outcome of comparing `m(d_(i)γ)` with the `i`-th base face of `m(γ)`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct MCompatReport {
    pub cells: usize,
    pub evaluations: usize,
    /// Worst deviation when the two tuples are matched by right translation.
    pub right_max: f64,
    pub left_max: f64,
    /// Worst change of `a_j`, `j ≠ i`, when `s^i` varies over `ε^i`.
    pub independence_max: f64,
    pub dual_path_max: f64,
    pub last_not_identity: usize,
    pub failures: Vec<MCompatFailure>,
    pub tolerance: f64,
}

const MAX_FAILURES: usize = 5;

impl MCompatReport {
    pub fn right_holds(&self) -> bool {
        self.right_max <= self.tolerance
    }

    pub fn left_holds(&self) -> bool {
        self.left_max <= self.tolerance
    }

    pub fn convention(&self) -> Option<Translation> {
        if self.right_holds() {
            Some(Translation::Right)
        } else if self.left_holds() {
            Some(Translation::Left)
        } else {
            None
        }
    }

    pub fn independence_holds(&self) -> bool {
        self.independence_max <= self.tolerance
    }

    pub fn dual_path_holds(&self) -> bool {
        self.dual_path_max <= DUAL_PATH_TOL
    }

    pub fn ok(&self) -> bool {
        self.convention().is_some() && self.independence_holds() && self.dual_path_holds() && self.last_not_identity == 0
    }

    pub fn merge(&mut self, o: MCompatReport) {
        self.cells += o.cells;
        self.evaluations += o.evaluations;
        self.right_max = self.right_max.max(o.right_max);
        self.left_max = self.left_max.max(o.left_max);
        self.independence_max = self.independence_max.max(o.independence_max);
        self.dual_path_max = self.dual_path_max.max(o.dual_path_max);
        self.last_not_identity += o.last_not_identity;
        self.tolerance = self.tolerance.max(o.tolerance);
        for f in o.failures {
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(f);
            }
        }
    }

    fn fail(&mut self, cell: &PrismCell, face: usize, point: &ProductPoint, check: &str, discrepancy: f64) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(MCompatFailure { cell: cell.to_string(), face, point: point.clone(), check: check.into(), discrepancy });
        }
    }
}

fn eval_checked(
    t: &TransitionSet,
    cell: &PrismCell,
    m: &super::map::ClassifyingTuple,
    pt: &ProductPoint,
    rep: &mut MCompatReport,
) -> Result<TupleValue> {
    let g = t.group();
    let v = m.eval(t, &pt.t, &pt.s)?;
    rep.evaluations += 1;
    if !g.equal(v.0.last().expect("tuples are nonempty"), &g.identity(), 0.0) {
        rep.last_not_identity += 1;
        rep.fail(cell, usize::MAX, pt, "a_p", 1.0);
    }
    let lam = lambda_bar(&cell.deg, &pt.t, &pt.s)?;
    for i in 1..=cell.deg.p() {
        let d = rho_eval(i, &cell.deg, &lam)?.max_abs_diff(&rho_lambda_composed(i, &cell.deg, &pt.t, &pt.s)?);
        rep.dual_path_max = rep.dual_path_max.max(d);
        if d > DUAL_PATH_TOL {
            rep.fail(cell, i, pt, "dual path", d);
        }
    }
    Ok(v)
}

/// Compares `m(d_(i)γ)` with the `i`-th base face of `m(γ)` at sampled points
/// of the face, and checks that the surviving components of `m(γ)` ignore
/// `s^i` there.
pub fn check_m_compatibility(t: &TransitionSet, cell: &PrismCell, i: usize, random: usize, seed: u64) -> Result<MCompatReport> {
    let g = t.group();
    let pbar = PrismaticSet::pbar(t.base());
    let mut rep = MCompatReport { tolerance: g.tolerance(), ..Default::default() };
    let m = classify_cell(t, cell)?;
    let face = pbar.base_face(cell, i)?;
    let mf = classify_cell(t, &face)?;
    let mut rng = SplitMix64::seed_from_u64(seed);
    let fiber_grid = grid_points(cell.deg.q()[i]);
    for fp in product_samples(&face.deg, random, &mut rng) {
        let b = eval_checked(t, &face, &mf, &fp, &mut rep)?;
        let tb = to_interior(&eps(i, &from_interior(&fp.t)?)?);
        let mut first: Option<TupleValue> = None;
        for si in &fiber_grid {
            let mut s = fp.s.clone();
            s.insert(i, si.clone());
            let full = ProductPoint { t: tb.clone(), s };
            let mut a = eval_checked(t, cell, &m, &full, &mut rep)?;
            a.0.remove(i);
            match &first {
                None => {
                    let r = translation_discrepancy(g, &a, &b, Translation::Right)?;
                    let l = translation_discrepancy(g, &a, &b, Translation::Left)?;
                    rep.right_max = rep.right_max.max(r);
                    rep.left_max = rep.left_max.max(l);
                    if r > rep.tolerance && l > rep.tolerance {
                        rep.fail(cell, i, &full, "face", r.min(l));
                    }
                    first = Some(a);
                }
                Some(a0) => {
                    let d = a.0.iter().zip(&a0.0).map(|(x, y)| g.distance(x, y)).fold(0.0, f64::max);
                    rep.independence_max = rep.independence_max.max(d);
                    if d > rep.tolerance {
                        rep.fail(cell, i, &full, "independence", d);
                    }
                }
            }
        }
    }
    rep.cells = 1;
    Ok(rep)
}

/// Every base face of every `P̄` cell with `p ≤ max_p` and `q_i ≤ max_q` that
/// fits under the truncation of the base.
pub fn check_all(t: &TransitionSet, max_p: usize, max_q: usize, random: usize, seed: u64) -> Result<MCompatReport> {
    let base = t.base();
    let pbar = PrismaticSet::pbar(base);
    let mut cells = Vec::new();
    for deg in MultiDegree::bounded(max_p, max_q) {
        if deg.payload_dim(Construction::Pbar) <= base.truncation() {
            cells.extend(pbar.cells(&deg)?);
        }
    }
    let parts: Vec<MCompatReport> = cells
        .par_iter()
        .enumerate()
        .map(|(k, cell)| {
            let cell_seed = seed.wrapping_add((k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut rep = MCompatReport { tolerance: t.group().tolerance(), cells: 1, ..Default::default() };
            if cell.deg.p() == 0 {
                let m = classify_cell(t, cell)?;
                let mut rng = SplitMix64::seed_from_u64(cell_seed);
                for pt in product_samples(&cell.deg, random, &mut rng) {
                    eval_checked(t, cell, &m, &pt, &mut rep)?;
                }
            }
            for i in 0..=cell.deg.p() {
                if cell.deg.p() > 0 {
                    let mut r = check_m_compatibility(t, cell, i, random, cell_seed.wrapping_add(i as u64))?;
                    r.cells = 0;
                    rep.merge(r);
                }
            }
            Ok(rep)
        })
        .collect::<Result<_>>()?;
    let mut rep = MCompatReport { tolerance: t.group().tolerance(), ..Default::default() };
    for p in parts {
        rep.merge(p);
    }
    Ok(rep)
}
