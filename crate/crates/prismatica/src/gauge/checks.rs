use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use super::group::{Element, GroupOps};
use super::transition::{FaceSpec, TransitionFn, TransitionSet};
use crate::error::{Error, Result};
use crate::simplicial_core::{GenId, Monotone, NormalForm, SimplicialSet};

#[derive(Debug, Clone, Serialize)]
pub struct GaugeViolation {
    pub check: String,
    pub simplex: String,
    pub point: Vec<f64>,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct GaugeReport {
    /// Number of pointwise comparisons made.
    pub evaluations: usize,
    pub max_discrepancy: f64,
    pub violations: Vec<GaugeViolation>,
}

impl GaugeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(&mut self, other: GaugeReport) {
        self.evaluations += other.evaluations;
        self.max_discrepancy = self.max_discrepancy.max(other.max_discrepancy);
        self.violations.extend(other.violations);
    }

    fn compare(&mut self, t: &TransitionSet, check: &str, simplex: &str, point: &[f64], a: &Element, b: &Element) {
        let g = t.group();
        let d = g.distance(a, b);
        self.evaluations += 1;
        self.max_discrepancy = self.max_discrepancy.max(d);
        if !g.equal(a, b, g.tolerance()) {
            self.violations.push(GaugeViolation { check: check.into(), simplex: simplex.into(), point: point.to_vec(), discrepancy: d });
        }
    }

    fn compare_fns(
        &mut self,
        t: &TransitionSet,
        check: &str,
        simplex: &str,
        points: &[Vec<f64>],
        f: &TransitionFn,
        h: &TransitionFn,
    ) -> Result<()> {
        for pt in points {
            let (a, b) = (f.eval(t.group(), pt)?, h.eval(t.group(), pt)?);
            self.compare(t, check, simplex, pt, &a, &b);
        }
        Ok(())
    }
}

/// Per-simplex generator so that reports do not depend on scheduling.
pub fn simplex_rng(seed: u64, g: GenId) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed ^ ((g.dim as u64) << 48) ^ (g.index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A uniformly distributed point of `Δ^n`.
pub fn random_simplex_point(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let e: Vec<f64> = (0..=n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = e.iter().sum();
    e.into_iter().map(|x| x / sum).collect()
}

/// Barycenter, vertices, edge midpoints, then `extra` random points of `Δ^n`.
pub fn sample_points(n: usize, extra: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let mut out = vec![vec![1.0 / (n + 1) as f64; n + 1]];
    for k in 0..=n {
        let mut v = vec![0.0; n + 1];
        v[k] = 1.0;
        out.push(v);
    }
    for a in 0..=n {
        for b in a + 1..=n {
            let mut v = vec![0.0; n + 1];
            v[a] = 0.5;
            v[b] = 0.5;
            out.push(v);
        }
    }
    out.extend((0..extra).map(|_| random_simplex_point(n, rng)));
    out
}

fn label(s: &SimplicialSet, x: &NormalForm) -> String {
    match s.vertex_labels() {
        Some(labels) => match s.vertices(x) {
            Ok(vs) => format!("<{}>", vs.iter().map(|&v| labels[v].as_str()).collect::<Vec<_>>().join(",")),
            Err(_) => x.to_string(),
        },
        None => x.to_string(),
    }
}

fn nondegenerate(s: &SimplicialSet, min_dim: usize) -> Vec<GenId> {
    s.all_generators().filter(|g| g.dim >= min_dim).collect()
}

fn per_simplex(t: &TransitionSet, min_dim: usize, f: impl Fn(GenId) -> Result<GaugeReport> + Sync + Send) -> Result<GaugeReport> {
    let parts: Vec<GaugeReport> = nondegenerate(t.base(), min_dim).into_par_iter().map(f).collect::<Result<_>>()?;
    let mut rep = GaugeReport::default();
    for p in parts {
        rep.merge(p);
    }
    Ok(rep)
}

/// `v_σ ∘ ε^i = v_{d_iσ}` for `i < p-1` and `v_{d_{p-1}σ} · v_{d_pσ}^{-1}` for
/// `i = p-1`, on every nondegenerate `σ`; then the degeneracy rule, comparing
/// the two decompositions of each degenerate simplex up to two dimensions above
/// the generators.
pub fn check_compatibility(t: &TransitionSet, samples: usize, seed: u64) -> Result<GaugeReport> {
    let s = t.base();
    let mut rep = per_simplex(t, 2, |g| {
        let x = NormalForm::of(g);
        let p = g.dim;
        let mut rng = simplex_rng(seed, g);
        let pts = sample_points(p - 2, samples, &mut rng);
        let vs = t.v(&x)?;
        let mut rep = GaugeReport::default();
        for i in 0..p {
            let lhs = vs.clone().precompose(Monotone::coface(i, p - 1));
            let rhs = if i + 1 < p { t.v(&s.face(&x, i)?)? } else { t.v(&s.face(&x, p - 1)?)?.times(t.v(&s.face(&x, p)?)?.inverse()) };
            rep.compare_fns(t, &format!("compatibility ε^{i}"), &label(s, &x), &pts, &lhs, &rhs)?;
        }
        Ok(rep)
    })?;
    rep.merge(check_degeneracy_rule(t, samples, seed)?);
    Ok(rep)
}

/// On degenerate simplices, `v` via the smallest degeneracy index against
/// the case table via the largest.
pub fn check_degeneracy_rule(t: &TransitionSet, samples: usize, seed: u64) -> Result<GaugeReport> {
    let s = t.base();
    let top = (s.max_generator_dim().unwrap_or(0) + 2).min(s.truncation());
    let mut rep = GaugeReport::default();
    for n in 1..=top {
        let mut rng = simplex_rng(seed, GenId { dim: n, index: usize::MAX });
        let pts = sample_points(n - 1, samples, &mut rng);
        for x in s.simplices(n)?.into_iter().filter(NormalForm::is_degenerate) {
            rep.compare_fns(t, "degeneracy rule", &label(s, &x), &pts, &t.v(&x)?, &t.single_face(&x, n)?)?;
        }
    }
    Ok(rep)
}

/// Path independence of `v_{σ,τ}` over the two routes `d_i d_j = d_{j-1} d_i`
/// (`i < j`), and agreement of the chained values with the explicit
/// iterated-last-face product.
pub fn check_cocycle(t: &TransitionSet, samples: usize, seed: u64) -> Result<GaugeReport> {
    let s = t.base();
    per_simplex(t, 2, |g| {
        let x = NormalForm::of(g);
        let p = g.dim;
        let mut rng = simplex_rng(seed, g);
        let pts = sample_points(p - 2, samples, &mut rng);
        let mut rep = GaugeReport::default();
        for j in 1..=p {
            for i in 0..j {
                let via_j = t.single_face(&x, j)?.precompose(Monotone::coface(i, p - 1)).times(t.single_face(&s.face(&x, j)?, i)?);
                let via_i = t.single_face(&x, i)?.precompose(Monotone::coface(j - 1, p - 1)).times(t.single_face(&s.face(&x, i)?, j - 1)?);
                rep.compare_fns(t, &format!("cocycle d_{i} d_{j}"), &label(s, &x), &pts, &via_j, &via_i)?;
            }
        }
        for i in 1..p {
            let explicit = t.extend_to_faces(&x, &FaceSpec::IteratedLast { i })?;
            let chained = t.face(&x, &Monotone::inclusion(&(0..i).collect::<Vec<_>>(), p))?;
            let mut rng = simplex_rng(seed ^ i as u64, g);
            let pts = sample_points(i - 1, samples, &mut rng);
            rep.compare_fns(t, &format!("iterated last face {i}"), &label(s, &x), &pts, &explicit, &chained)?;
        }
        Ok(rep)
    })
}

/// The points `P_1..P_{r-1}` of the piecewise linear path through an
/// `r`-simplex (barycentric on `Δ^r`), and the coordinates `t` of `P_{r-1}` on
/// the face spanned by the first `r` vertices.
pub fn pl_path(r: usize, s: &[f64]) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    if r == 0 || s.len() != r - 1 {
        return Err(Error::ShapeMismatch(format!("{} cube coordinates for an {r}-simplex", s.len())));
    }
    if let Some(bad) = s.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::InvalidPoint(format!("cube coordinate {bad} outside [0, 1]")));
    }
    let mut cur = vec![0.0; r + 1];
    cur[0] = 1.0;
    let mut points = Vec::with_capacity(r - 1);
    for (k, &sk) in s.iter().enumerate() {
        for c in cur.iter_mut() {
            *c *= 1.0 - sk;
        }
        cur[k + 1] += sk;
        points.push(cur.clone());
    }
    Ok((points, cur[..r].to_vec()))
}

/// `V_σ(s) = v_σ(t)` with `t` the end of the path.
pub fn transport_v(t: &TransitionSet, x: &NormalForm, s: &[f64]) -> Result<Element> {
    let (_, end) = pl_path(x.dim(), s)?;
    t.v(x)?.eval(t.group(), &end)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PhillipsStoneReport {
    /// `V_σ(.., s_p = 1, ..) = V_{<a_0..a_p>} · V_{<a_p..a_r>}`
    pub cocycle: GaugeReport,
    /// `V_σ(.., s_p = 0, ..) = V_{d_p σ}`
    pub compatibility: GaugeReport,
}

/// Both boundary conditions on `samples` random cube points per simplex and
/// boundary index.
pub fn check_phillips_stone(t: &TransitionSet, samples: usize, seed: u64) -> Result<PhillipsStoneReport> {
    let s = t.base();
    let parts: Vec<PhillipsStoneReport> = nondegenerate(s, 2)
        .into_par_iter()
        .map(|g| {
            let x = NormalForm::of(g);
            let r = g.dim;
            let name = label(s, &x);
            let mut rng = simplex_rng(seed, g);
            let mut rep = PhillipsStoneReport::default();
            let front = |p: usize| s.apply(&x, &Monotone::inclusion(&(0..=p).collect::<Vec<_>>(), r));
            let back = |p: usize| s.apply(&x, &Monotone::inclusion(&(p..=r).collect::<Vec<_>>(), r));
            for p in 1..r {
                for _ in 0..samples.max(1) {
                    let mut cube: Vec<f64> = (0..r - 1).map(|_| rng.gen::<f64>()).collect();
                    cube[p - 1] = 1.0;
                    let lhs = transport_v(t, &x, &cube)?;
                    let rhs = t.group().multiply(&transport_v(t, &front(p)?, &cube[..p - 1])?, &transport_v(t, &back(p)?, &cube[p..])?);
                    rep.cocycle.compare(t, &format!("s_{p} = 1"), &name, &cube, &lhs, &rhs);

                    cube[p - 1] = 0.0;
                    let lhs = transport_v(t, &x, &cube)?;
                    let reduced: Vec<f64> = cube.iter().enumerate().filter(|(k, _)| *k != p - 1).map(|(_, v)| *v).collect();
                    let rhs = transport_v(t, &s.face(&x, p)?, &reduced)?;
                    rep.compatibility.compare(t, &format!("s_{p} = 0"), &name, &cube, &lhs, &rhs);
                }
            }
            Ok(rep)
        })
        .collect::<Result<_>>()?;
    let mut out = PhillipsStoneReport::default();
    for p in parts {
        out.cocycle.merge(p.cocycle);
        out.compatibility.merge(p.compatibility);
    }
    Ok(out)
}
