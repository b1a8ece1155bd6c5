use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::membership::{fill_forward, in_star, StarWitness};
use crate::error::{Error, Result};
use crate::prismatic::{Construction, MultiDegree, Payload, PrismCell, PrismaticSet};
use crate::simplicial_core::{block_surjection, Monotone, NormalForm, SimplicialSet};

/// A cell `(σ, τ, σ̄)` of the prismatic star `P·St(S)` with `σ = μ(σ̄)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StarCell {
    pub deg: MultiDegree,
    pub sigma: NormalForm,
    pub tau: NormalForm,
    pub sigma_bar: NormalForm,
}

impl fmt::Display for StarCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "St {} (σ̄ {}, τ {})", self.deg, self.sigma_bar, self.tau)
    }
}

impl StarCell {
    fn from_parts(s: &SimplicialSet, deg: MultiDegree, tau: NormalForm, sigma_bar: NormalForm) -> Result<Self> {
        let sigma = s.apply(&sigma_bar, &block_surjection(deg.q()))?;
        Ok(StarCell { deg, sigma, tau, sigma_bar })
    }
}

/// The witness that `p̄(γ)` lies in the star: `σ' = γ`, `ν` the fiber
/// positions, `μ = ∅`, `g` the inclusion of the fiber positions.
pub fn pbar_witness(gamma: &PrismCell) -> StarWitness {
    let deg = &gamma.deg;
    let seps = deg.separators();
    let n = deg.payload_dim(Construction::Pbar);
    let fiber: Vec<usize> = (0..=n).filter(|k| !seps.contains(k)).collect();
    StarWitness { sigma_prime: gamma.simplex().clone(), nu: fiber.clone(), mu: Vec::new(), g: fiber }
}

fn expect_pbar(cell: &PrismCell) -> Result<&NormalForm> {
    match (&cell.payload, cell.construction) {
        (Payload::Simplex(x), Construction::Pbar) => Ok(x),
        _ => Err(Error::ShapeMismatch(format!("expected a Pbar cell, got {cell}"))),
    }
}

/// `p̄: P̄S -> P·St(S)`. `σ̄` keeps the separator positions of `γ`, `τ` drops them.
pub fn pbar(s: &SimplicialSet, gamma: &PrismCell) -> Result<StarCell> {
    let x = expect_pbar(gamma)?;
    let deg = gamma.deg.clone();
    let seps = deg.separators();
    let n = x.dim();
    let sigma_bar = s.apply(x, &Monotone::inclusion(&seps, n))?;
    let tau = s.delete_positions(x, &seps)?;
    let cell = StarCell::from_parts(s, deg, tau, sigma_bar)?;

    let w = pbar_witness(gamma);
    let g = Monotone::new(w.g.clone(), n);
    let first = s.apply(x, &fill_forward(&w.nu, n).compose(&g))?;
    let second = s.apply(x, &g)?;
    if first != cell.sigma || second != cell.tau {
        return Err(Error::InternalInvariantBroken(format!("witness of p̄({gamma}) does not reproduce {cell}")));
    }
    if !in_star(s, &cell.sigma, &cell.tau)? {
        return Err(Error::InternalInvariantBroken(format!("p̄({gamma}) = {cell} fails the star membership test")));
    }
    Ok(cell)
}

/// The inverse of `p̄` for `S = K^s`: block `k` of `τ` is clamped into
/// `[i_{k-1}, i_k]` (block 0 only from above) and closed by the vertex `i_k` of `σ̄`.
pub fn pbar_inverse(s: &SimplicialSet, cell: &StarCell) -> Result<PrismCell> {
    if !s.is_from_complex() {
        return Err(Error::NotFromComplex);
    }
    let deg = &cell.deg;
    let bar = s.vertices(&cell.sigma_bar)?;
    let tau = s.vertices(&cell.tau)?;
    let mut seq = Vec::with_capacity(deg.payload_dim(Construction::Pbar) + 1);
    for k in 0..=deg.p() {
        let hi = bar[k];
        let lo = if k == 0 { None } else { Some(bar[k - 1]) };
        for t in deg.block_positions(Construction::P, k) {
            let v = tau[t].min(hi);
            seq.push(lo.map_or(v, |lo| v.max(lo)));
        }
        seq.push(hi);
    }
    let gamma = s.simplex_from_vertices(&seq)?;
    PrismaticSet::pbar(s).cell(deg.clone(), Payload::Simplex(gamma))
}

/// `P·St(S)` at one multidegree: all `(μ(σ̄), τ, σ̄)` with `(μ(σ̄), τ) ∈ St(S)`.
pub fn star_cells(s: &SimplicialSet, deg: &MultiDegree) -> Result<Vec<StarCell>> {
    let taus = s.simplices(deg.payload_dim(Construction::P))?;
    let mut out = Vec::new();
    for sb in s.simplices(deg.p())? {
        let sigma = s.apply(&sb, &block_surjection(deg.q()))?;
        for tau in &taus {
            if in_star(s, &sigma, tau)? {
                out.push(StarCell { deg: deg.clone(), sigma: sigma.clone(), tau: tau.clone(), sigma_bar: sb.clone() });
            }
        }
    }
    Ok(out)
}

/// `d_j^{(i)}` on `P·St(S)`: the face at fiber position `j` of block `i`, on both components.
pub fn star_fiber_face(s: &SimplicialSet, cell: &StarCell, i: usize, j: usize) -> Result<StarCell> {
    let deg = &cell.deg;
    deg.check_block(i)?;
    let qi = deg.q()[i];
    if qi == 0 || j > qi {
        return Err(Error::IndexOutOfRange { index: j, context: format!("fiber faces of block {i} at {deg}") });
    }
    let pos = deg.block_start(Construction::P, i) + j;
    let tau = s.face(&cell.tau, pos)?;
    StarCell::from_parts(s, deg.with_block(i, qi - 1), tau, cell.sigma_bar.clone())
}

/// `d_(i)` on `P·St(S)`: drops block `i` from both components and applies `d_i` to `σ̄`.
pub fn star_base_face(s: &SimplicialSet, cell: &StarCell, i: usize) -> Result<StarCell> {
    let deg = cell.deg.without_block(i)?;
    let tau = s.delete_positions(&cell.tau, &cell.deg.base_face_positions(Construction::P, i))?;
    StarCell::from_parts(s, deg, tau, s.face(&cell.sigma_bar, i)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct PbarDegreeReport {
    pub deg: MultiDegree,
    pub pbar_cells: usize,
    pub star_cells: usize,
    pub image: usize,
    /// Star cells with no preimage (at most a few, as examples).
    pub unreached: Vec<String>,
    pub unreached_count: usize,
    /// `None` when `S` is not `K^s` and no inverse is attempted.
    pub inverse_after_pbar_failures: Option<usize>,
    pub pbar_after_inverse_failures: Option<usize>,
}

impl PbarDegreeReport {
    pub fn surjective(&self) -> bool {
        self.unreached_count == 0
    }

    pub fn bijective(&self) -> bool {
        self.surjective()
            && self.pbar_cells == self.star_cells
            && self.image == self.pbar_cells
            && self.inverse_after_pbar_failures == Some(0)
            && self.pbar_after_inverse_failures == Some(0)
    }
}

const EXAMPLES: usize = 3;

/// Enumerates both sides of `p̄` at each multidegree and compares them.
pub fn check_pbar(s: &SimplicialSet, degs: &[MultiDegree]) -> Result<Vec<PbarDegreeReport>> {
    let pb = PrismaticSet::pbar(s);
    let mut out = Vec::new();
    for deg in degs {
        let gammas = pb.cells(deg)?;
        let images: Vec<StarCell> = gammas.iter().map(|g| pbar(s, g)).collect::<Result<_>>()?;
        let image: BTreeSet<&StarCell> = images.iter().collect();
        let targets = star_cells(s, deg)?;
        let unreached: Vec<&StarCell> = targets.iter().filter(|c| !image.contains(c)).collect();
        let (mut back, mut forth) = (None, None);
        if s.is_from_complex() {
            let mut fails = 0;
            for (g, img) in gammas.iter().zip(&images) {
                if pbar_inverse(s, img)? != *g {
                    fails += 1;
                }
            }
            back = Some(fails);
            let mut fails = 0;
            for c in &targets {
                if pbar(s, &pbar_inverse(s, c)?)? != *c {
                    fails += 1;
                }
            }
            forth = Some(fails);
        }
        out.push(PbarDegreeReport {
            deg: deg.clone(),
            pbar_cells: gammas.len(),
            star_cells: targets.len(),
            image: image.len(),
            unreached: unreached.iter().take(EXAMPLES).map(|c| c.to_string()).collect(),
            unreached_count: unreached.len(),
            inverse_after_pbar_failures: back,
            pbar_after_inverse_failures: forth,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PbarFaceReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Checks that `p̄` commutes with fiber faces and base faces.
pub fn check_pbar_faces(s: &SimplicialSet, degs: &[MultiDegree]) -> Result<PbarFaceReport> {
    let pb = PrismaticSet::pbar(s);
    let mut rep = PbarFaceReport::default();
    for deg in degs {
        for g in pb.cells(deg)? {
            let img = pbar(s, &g)?;
            for i in 0..=deg.p() {
                for j in 0..=deg.q()[i] {
                    if deg.q()[i] == 0 {
                        break;
                    }
                    rep.checked += 1;
                    if pbar(s, &pb.fiber_face(&g, i, j)?)? != star_fiber_face(s, &img, i, j)? {
                        rep.violations.push(format!("d_{j}^({i}) on {g}"));
                    }
                }
                if deg.p() > 0 {
                    rep.checked += 1;
                    if pbar(s, &pb.base_face(&g, i)?)? != star_base_face(s, &img, i)? {
                        rep.violations.push(format!("d_({i}) on {g}"));
                    }
                }
            }
        }
    }
    Ok(rep)
}
