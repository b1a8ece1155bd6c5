//! Command-line front end: argument parsing, input loading and JSON reports.

pub mod fixtures;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classifying::{check_all, check_m_compatibility, classify_cell, product_samples, MCompatReport};
use crate::error::{Error, Result};
use crate::gauge::{
    check_cocycle, check_compatibility, check_degeneracy_rule, check_phillips_stone, simplex_rng, transport_v, TransitionSet,
};
use crate::homology::{prismatic_total_complex, simplicial_chain_complex, ChainComplex};
use crate::prismatic::{check_operator_identities, Construction, MultiDegree, PrismaticSet};
use crate::simplicial_core::{verify_identities, NormalForm, OrderedComplex, SimplicialMap, SimplicialSet};
use crate::star::{check_pbar, check_pbar_faces, pbar, st_iso, star_cells, star_complex, StarCell};
use fixtures::{fixture, fixture_complex};

pub const SCHEMA: u32 = 1;

/// Gauge configurations shipped with the crate, found by file name when the
/// path does not exist.
pub const GAUGE_FIXTURES: [(&str, &str); 4] = [
    ("z5.json", include_str!("../../data/z5.json")),
    ("s3.json", include_str!("../../data/s3.json")),
    ("so2.json", include_str!("../../data/so2.json")),
    ("so2_nonflat.json", include_str!("../../data/so2_nonflat.json")),
];

#[derive(Debug, Parser)]
#[command(name = "prismatica", version, about = "Prismatic subdivisions, star complexes, homology and lattice gauge fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the simplicial identities of the input.
    Validate(InputArgs),
    /// Prismatic set operations.
    #[command(subcommand)]
    Prism(PrismCommand),
    /// The star complex, `st` counts and the `p̄` tables.
    Star(StarArgs),
    /// Integer homology of a construction.
    Homology(HomologyArgs),
    /// Transition function checks.
    #[command(subcommand)]
    Gauge(GaugeCommand),
    /// Evaluate the classifying map and check its face compatibility.
    Classify(ClassifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum PrismCommand {
    /// List cells and check the operator identities.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Subcommand)]
pub enum GaugeCommand {
    /// Compatibility, cocycle and degeneracy checks.
    Check(GaugeArgs),
    /// Path transport values and its two boundary conditions.
    Transport(GaugeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Built-in fixture name.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub fixture: Option<String>,
    /// Complex JSON ({"vertices", "simplices"}) or simplicial set JSON.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Truncation dimension; raised when a command needs more.
    #[arg(long = "truncation", short = 'D', default_value_t = 6)]
    pub truncation: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    #[value(name = "simplicial")]
    Simplicial,
    #[value(name = "P")]
    P,
    #[value(name = "Pbar")]
    Pbar,
    #[value(name = "Pf")]
    Pf,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "P")]
    pub construction: ConstructionArg,
    /// Multidegree `p,q0,...,qp`; repeatable. Defaults to all within the bounds.
    #[arg(long = "deg")]
    pub degs: Vec<MultiDegree>,
    #[arg(long, default_value_t = 1)]
    pub max_p: usize,
    #[arg(long, default_value_t = 1)]
    pub max_q: usize,
}

#[derive(Debug, Clone, Args)]
pub struct StarArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 1)]
    pub max_p: usize,
    #[arg(long, default_value_t = 1)]
    pub max_q: usize,
}

#[derive(Debug, Clone, Args)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "simplicial")]
    pub construction: ConstructionArg,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GaugeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Gauge configuration file, or the name of a shipped one.
    #[arg(long)]
    pub gauge: String,
    /// Random sample points per simplex on top of the fixed ones.
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub gauge: String,
    /// Tabulate the tuples of every cell at this multidegree.
    #[arg(long)]
    pub deg: Option<MultiDegree>,
    /// Random sample points per face on top of the grid.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value_t = 2)]
    pub max_p: usize,
    #[arg(long, default_value_t = 1)]
    pub max_q: usize,
}

/// A finished report and whether every check in it passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

fn with_truncation(s: SimplicialSet, d: usize) -> Result<SimplicialSet> {
    if d > s.truncation() {
        s.with_truncation(d)
    } else {
        Ok(s)
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// The input as a simplicial set truncated at `max(D, need)`, its complex
/// if it has one, and a description for the report.
pub fn load_input(a: &InputArgs, need: usize) -> Result<(SimplicialSet, Option<OrderedComplex>, Value)> {
    let d = a.truncation.max(need);
    match (&a.fixture, &a.input) {
        (Some(name), _) => {
            let k = fixture_complex(name).ok();
            Ok((fixture(name, d)?, k, json!({ "fixture": name, "truncation": d })))
        }
        (None, Some(path)) => {
            let v = read_json(path)?;
            let desc = json!({ "file": path.display().to_string(), "truncation": d });
            if v.get("generators").is_some() {
                let s = SimplicialSet::from_json(&v).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                Ok((with_truncation(s, d)?, None, desc))
            } else {
                let k: OrderedComplex = serde_json::from_value(v).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                let s = SimplicialSet::from_complex(&k)?;
                Ok((with_truncation(s, d)?, Some(k), desc))
            }
        }
        (None, None) => Err(Error::Invalid("one of --fixture or --input is required".into())),
    }
}

fn load_gauge<'a>(s: &'a SimplicialSet, spec: &str) -> Result<TransitionSet<'a>> {
    let path = Path::new(spec);
    let v = if path.exists() {
        read_json(path)?
    } else {
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or(spec);
        let text = GAUGE_FIXTURES
            .iter()
            .find(|(n, _)| *n == name || n.trim_end_matches(".json") == name)
            .map(|(_, t)| *t)
            .ok_or_else(|| Error::Invalid(format!("{spec}: no such file or shipped gauge")))?;
        serde_json::from_str(text).expect("shipped gauges parse")
    };
    TransitionSet::from_json(s, &v).map_err(|e| Error::Invalid(format!("{spec}: {e}")))
}

fn pbar_need(max_p: usize, max_q: usize) -> usize {
    max_q * (max_p + 1) + 2 * max_p + 1
}

fn report(command: &str, input: Value, ok: bool, body: Value) -> Outcome {
    let mut r = json!({ "schema": SCHEMA, "command": command, "input": input, "ok": ok });
    if let (Some(m), Value::Object(b)) = (r.as_object_mut(), body) {
        m.extend(b);
    }
    Outcome { report: r, ok }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn validate(a: &InputArgs) -> Result<Outcome> {
    let (s, _, input) = load_input(a, 0)?;
    let rep = verify_identities(&s);
    let counts: Vec<usize> = (0..=s.truncation()).map(|n| s.generator_count(n)).collect();
    Ok(report("validate", input, rep.ok(), json!({ "nondegenerate_counts": counts, "identities": rep })))
}

fn prism_set<'a>(s: &'a SimplicialSet, c: ConstructionArg, f: &'a Option<SimplicialMap>) -> Result<PrismaticSet<'a>> {
    Ok(match c {
        ConstructionArg::P => PrismaticSet::p(s),
        ConstructionArg::Pbar => PrismaticSet::pbar(s),
        ConstructionArg::Pf => PrismaticSet::pf(s, f.as_ref().expect("map built for Pf")),
        ConstructionArg::Simplicial => return Err(Error::Invalid("prism enumerate needs P, Pbar or Pf".into())),
    })
}

fn construction_of(c: ConstructionArg) -> Option<Construction> {
    match c {
        ConstructionArg::P => Some(Construction::P),
        ConstructionArg::Pbar => Some(Construction::Pbar),
        ConstructionArg::Pf => Some(Construction::Pf),
        ConstructionArg::Simplicial => None,
    }
}

fn enumerate(a: &EnumerateArgs) -> Result<Outcome> {
    let degs = if a.degs.is_empty() { MultiDegree::bounded(a.max_p, a.max_q) } else { a.degs.clone() };
    let c = construction_of(a.construction).ok_or_else(|| Error::Invalid("prism enumerate needs P, Pbar or Pf".into()))?;
    let need = degs.iter().map(|d| d.payload_dim(c)).max().unwrap_or(0) + 1;
    let (s, _, input) = load_input(&a.input, need)?;
    let f = if c == Construction::Pf { Some(SimplicialMap::to_point(&s)?) } else { None };
    let ps = prism_set(&s, a.construction, &f)?;
    let id_degs: Vec<MultiDegree> = degs.iter().filter(|d| d.payload_dim(c) < s.truncation()).cloned().collect();
    let ids = check_operator_identities(&ps, &id_degs)?;
    let mut tables = Vec::new();
    for d in &degs {
        let cells = ps.cells(d)?;
        tables.push(json!({ "deg": d.to_string(), "count": cells.len(), "cells": cells }));
    }
    Ok(report("prism enumerate", input, ids.ok(), json!({ "construction": c, "degrees": tables, "identities": ids })))
}

fn star(a: &StarArgs) -> Result<Outcome> {
    let degs = MultiDegree::bounded(a.max_p, a.max_q);
    let (s, k, input) = load_input(&a.input, pbar_need(a.max_p, a.max_q))?;
    let (complex, iso) = match &k {
        Some(k) => (Some(star_complex(k)?), Some(st_iso(k, a.input.truncation)?)),
        None => (None, None),
    };
    let reports = check_pbar(&s, &degs)?;
    let faces = check_pbar_faces(&s, &degs)?;
    let ps = PrismaticSet::pbar(&s);
    let mut tables = Vec::new();
    for d in &degs {
        let mut pre: BTreeMap<StarCell, Vec<String>> = star_cells(&s, d)?.into_iter().map(|c| (c, Vec::new())).collect();
        for g in ps.cells(d)? {
            pre.entry(pbar(&s, &g)?).or_default().push(g.to_string());
        }
        let (cells, preimages): (Vec<String>, Vec<Vec<String>>) = pre.into_iter().map(|(c, p)| (c.to_string(), p)).unzip();
        tables.push(json!({ "deg": d.to_string(), "cells": cells, "preimages": preimages }));
    }
    let from_complex = s.is_from_complex();
    let iso_ok = iso.as_ref().is_none_or(|v| v.iter().all(|d| d.bijective));
    let pbar_ok = reports.iter().all(|r| if from_complex { r.bijective() } else { r.surjective() });
    let ok = iso_ok && pbar_ok && faces.violations.is_empty();
    Ok(report("star", input, ok, json!({ "star_complex": complex, "st_iso": iso, "pbar": reports, "pbar_faces": faces, "tables": tables })))
}

/// The chain complex of the requested construction up to `max_degree`.
pub fn construction_complex(s: &SimplicialSet, c: ConstructionArg, max_degree: usize) -> Result<ChainComplex> {
    match c {
        ConstructionArg::Simplicial => Ok(simplicial_chain_complex(s)?.truncate(max_degree)),
        ConstructionArg::Pf => {
            let f = Some(SimplicialMap::to_point(s)?);
            prismatic_total_complex(&prism_set(s, c, &f)?, max_degree)
        }
        _ => prismatic_total_complex(&prism_set(s, c, &None)?, max_degree),
    }
}

/// Truncation needed for the total complex of `c` up to `max_degree`.
pub fn homology_need(c: ConstructionArg, max_degree: usize) -> usize {
    match c {
        ConstructionArg::Simplicial | ConstructionArg::P | ConstructionArg::Pf => max_degree + 1,
        ConstructionArg::Pbar => 2 * max_degree + 2,
    }
}

fn homology(a: &HomologyArgs) -> Result<Outcome> {
    let (s, _, input) = load_input(&a.input, homology_need(a.construction, a.max_degree))?;
    let c = construction_complex(&s, a.construction, a.max_degree)?;
    let ranks: Vec<usize> = (0..=c.top().unwrap_or(0)).map(|n| c.rank(n)).collect();
    let h = c.homology()?;
    let name = to_value(&a.construction.to_possible_value().expect("named").get_name());
    Ok(report("homology", input, true, json!({ "construction": name, "ranks": ranks, "homology": h })))
}

fn gauge_need(s_top: Option<usize>) -> usize {
    s_top.unwrap_or(0) + 2
}

fn gauge_check(a: &GaugeArgs) -> Result<Outcome> {
    let (s0, _, _) = load_input(&a.input, 0)?;
    let (s, _, input) = load_input(&a.input, gauge_need(s0.max_generator_dim()))?;
    let t = load_gauge(&s, &a.gauge)?;
    let seed = a.input.seed;
    let compat = check_compatibility(&t, a.samples, seed)?;
    let cocycle = check_cocycle(&t, a.samples, seed)?;
    let degeneracy = check_degeneracy_rule(&t, a.samples, seed)?;
    let ok = compat.ok() && cocycle.ok() && degeneracy.ok();
    let mut input = input;
    input["gauge"] = json!(a.gauge);
    Ok(report(
        "gauge check",
        input,
        ok,
        json!({ "group": t.group(), "tolerance": t.group().tolerance(), "compatibility": compat, "cocycle": cocycle, "degeneracy": degeneracy }),
    ))
}

fn gauge_transport(a: &GaugeArgs) -> Result<Outcome> {
    use rand::Rng;
    let (s, _, input) = load_input(&a.input, 0)?;
    let t = load_gauge(&s, &a.gauge)?;
    let seed = a.input.seed;
    let mut values = Vec::new();
    for g in s.all_generators().filter(|g| g.dim >= 1) {
        let x = NormalForm::of(g);
        let mut rng = simplex_rng(seed, g);
        let mut rows = Vec::new();
        for _ in 0..a.samples.min(5) {
            let cube: Vec<f64> = (0..g.dim - 1).map(|_| rng.gen::<f64>()).collect();
            rows.push(json!({ "s": cube, "value": transport_v(&t, &x, &cube)? }));
        }
        values.push(json!({ "simplex": t.key(g)?, "samples": rows }));
    }
    let ps = check_phillips_stone(&t, a.samples, seed)?;
    let ok = ps.cocycle.ok() && ps.compatibility.ok();
    let mut input = input;
    input["gauge"] = json!(a.gauge);
    Ok(report("gauge transport", input, ok, json!({ "group": t.group(), "transport": values, "phillips_stone": ps })))
}

fn summary(r: &MCompatReport) -> Value {
    json!({
        "ok": r.ok(),
        "convention": r.convention(),
        "right_translation_holds": r.right_holds(),
        "left_translation_holds": r.left_holds(),
        "independence_holds": r.independence_holds(),
        "dual_path_holds": r.dual_path_holds(),
        "report": r,
    })
}

fn classify(a: &ClassifyArgs) -> Result<Outcome> {
    let mut need = pbar_need(a.max_p, a.max_q);
    if let Some(d) = &a.deg {
        need = need.max(d.payload_dim(Construction::Pbar));
    }
    let (s, _, input) = load_input(&a.input, need)?;
    let t = load_gauge(&s, &a.gauge)?;
    let seed = a.input.seed;
    let all = check_all(&t, a.max_p, a.max_q, a.samples, seed)?;
    let mut ok = all.ok();
    let mut table = Vec::new();
    if let Some(d) = &a.deg {
        let ps = PrismaticSet::pbar(&s);
        for (k, cell) in ps.cells(d)?.iter().enumerate() {
            let m = classify_cell(&t, cell)?;
            let mut rng = rand::SeedableRng::seed_from_u64(seed.wrapping_add(k as u64));
            let rows: Vec<Value> = product_samples(d, a.samples, &mut rng)
                .into_iter()
                .map(|pt| Ok(json!({ "t": pt.t, "s": pt.s, "tuple": m.eval(&t, &pt.t, &pt.s)?.0 })))
                .collect::<Result<_>>()?;
            let mut faces = Vec::new();
            for i in 0..=d.p() {
                if d.p() > 0 {
                    let r = check_m_compatibility(&t, cell, i, a.samples, seed.wrapping_add(k as u64))?;
                    ok &= r.ok();
                    faces.push(summary(&r));
                }
            }
            table.push(json!({ "cell": cell.to_string(), "evaluations": rows, "faces": faces }));
        }
    }
    let mut input = input;
    input["gauge"] = json!(a.gauge);
    Ok(report("classify", input, ok, json!({ "group": t.group(), "all_cells": summary(&all), "table": table })))
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate(a) => validate(a),
        Command::Prism(PrismCommand::Enumerate(a)) => enumerate(a),
        Command::Star(a) => star(a),
        Command::Homology(a) => homology(a),
        Command::Gauge(GaugeCommand::Check(a)) => gauge_check(a),
        Command::Gauge(GaugeCommand::Transport(a)) => gauge_transport(a),
        Command::Classify(a) => classify(a),
    }
}

/// Caps the global thread pool from `PRISMATICA_THREADS`.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("PRISMATICA_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| Error::Invalid(format!("PRISMATICA_THREADS={v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Error::Invalid(e.to_string()))
}

/// Parses `args`, runs, and writes the report; returns the process exit code
/// (0 all checks pass, 1 some check failed, 2 bad input).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{}", json!({ "schema": SCHEMA, "error": e.to_string() }));
            return 2;
        }
    };
    let text = serde_json::to_string_pretty(&out.report).expect("reports serialize") + "\n";
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("{}", json!({ "schema": SCHEMA, "error": format!("{}: {e}", p.display()) }));
                return 2;
            }
        }
        None => print!("{text}"),
    }
    i32::from(!out.ok)
}
