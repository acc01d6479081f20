//! The `lowdeg` command line.
//!
//! Every subcommand writes one report, JSON by default, that embeds the full
//! [`RunConfig`]. Exit status is 0 when every check passes, 1 when a check
//! fails and 2 for usage, parameter and budget errors.

pub mod suites;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cayley::{CayleyOp, OpKind};
use crate::error::{Error, Result};
use crate::fourier::{coset_reps, Spectrum};
use crate::gf3poly::{point_index, Gf3};
use crate::graphprod::{
    exhaustive_mis, greedy_independent_set, independence_identity, DerandGraph, MIS_DIM_LIMIT,
};
use crate::ugreduce::{
    completeness_color, noisy_instance, planted_instance, satisfied_fraction, soundness_decode,
    CloudSubset, ColoringInstance, GenParams, Labeling, UGInstance, EXPLICIT_VERTEX_LIMIT,
};
use suites::Suite;

#[derive(Parser, Debug)]
#[command(
    name = "lowdeg",
    version,
    about = "Exact checks for the low-degree long code over F3"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Number of variables.
    #[arg(long, global = true, default_value_t = 2)]
    pub r: usize,
    /// Degree parameter.
    #[arg(long, global = true, default_value_t = 1)]
    pub d: usize,
    /// Moment order or influence degree; each command has its own default.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Support bound or noise power.
    #[arg(long, global = true)]
    pub t: Option<u32>,
    #[arg(long, global = true, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, global = true, default_value_t = 0.5)]
    pub mu: f64,
    #[arg(long, global = true, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo sample count; also switches exhaustive checks to sampling.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Number of random functions, spectra, pairs or trials.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Terms per random sparse spectrum.
    #[arg(long, global = true)]
    pub terms: Option<usize>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Run even when the estimated cost exceeds the budget.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites.
    Verify {
        #[arg(value_parser = suite_names())]
        suite: String,
    },
    /// Eigenvalues of the noise operators.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Moment equality between P(r,2d) and all functions.
    Moments,
    /// The smoothing, truncation and lifting pipeline.
    Pipeline,
    /// The xi gap for unit-norm degree-one spectra.
    XiProbe,
    /// The derandomized graph on P(r,2d).
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Unique Games instances and the coloring reduction.
    #[command(subcommand)]
    Reduce(ReduceCmd),
}

#[derive(Subcommand, Debug)]
pub enum SpectrumCmd {
    /// Eigenvalue of an operator on every coset representative.
    Eig {
        #[arg(long, value_enum, default_value_t = OpArg::Trd)]
        op: OpArg,
    },
    /// Check the T_{r,d} eigenvalues.
    #[command(name = "verify-T")]
    VerifyT,
    /// Check the S_{r,d} eigenvalues.
    #[command(name = "verify-S")]
    VerifyS,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    /// Noise on F3.
    T,
    /// Noise on all functions of r variables.
    Tr,
    /// Noise a(p^2 + 1) on P(r,2d).
    Trd,
    /// Affine-product noise on P(r,2d).
    Srd,
}

impl From<OpArg> for OpKind {
    fn from(o: OpArg) -> OpKind {
        match o {
            OpArg::T => OpKind::T,
            OpArg::Tr => OpKind::Tr,
            OpArg::Trd => OpKind::Trd,
            OpArg::Srd => OpKind::Srd,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Export the noise support (json) or the weighted edge list (csv).
    Build,
    /// Triangle partition, dictators, spectral identity and tail bound.
    Check,
    /// A maximum independent set, exhaustive when small enough.
    Mis {
        /// Use the seeded greedy search even when exhaustive search is possible.
        #[arg(long)]
        greedy: bool,
    },
    /// The spectral identity on a dictator set and a greedy independent set.
    Identity,
}

#[derive(Subcommand, Debug)]
pub enum ReduceCmd {
    /// Generate a planted instance with its satisfying labeling.
    Gen {
        #[arg(long, default_value_t = 3)]
        n_u: usize,
        #[arg(long, default_value_t = 6)]
        n_v: usize,
        /// Neighbours of each U vertex.
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Fraction of constraints to re-randomize after planting.
        #[arg(long)]
        noise: Option<f64>,
    },
    /// Size of the coloring graph of an instance.
    Build(InstanceArgs),
    /// The coloring (v, f) -> f(l(v)) and its properness check.
    Complete {
        #[command(flatten)]
        io: InstanceArgs,
        /// Comma-separated V vertices to color; all of V by default.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<String>>,
    },
    /// Decode the dictator-built independent set back into labelings.
    Decode {
        #[command(flatten)]
        io: InstanceArgs,
        /// Color class defining the independent set.
        #[arg(long, default_value_t = 0)]
        color: u8,
    },
    /// Instance shape and the satisfied fraction of a labeling.
    Stats(InstanceArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    /// Instance JSON, either bare or as written by `reduce gen`.
    #[arg(long)]
    pub instance: PathBuf,
    /// Labeling JSON; overrides one bundled with the instance.
    #[arg(long)]
    pub labeling: Option<PathBuf>,
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    let mut names = vec!["all"];
    names.extend(suites::ALL);
    clap::builder::PossibleValuesParser::new(names)
}

/// Parameters of a run, embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub r: usize,
    pub d: usize,
    pub k: Option<usize>,
    pub t: Option<u32>,
    pub eps: f64,
    pub mu: f64,
    pub delta: f64,
    pub seed: u64,
    pub samples: Option<usize>,
    pub count: Option<usize>,
    pub terms: Option<usize>,
    pub tol: f64,
    pub format: Format,
    pub force: bool,
}

impl RunConfig {
    pub fn new(command: impl Into<String>, o: &Opts) -> RunConfig {
        RunConfig {
            command: command.into(),
            r: o.r,
            d: o.d,
            k: o.k,
            t: o.t,
            eps: o.eps,
            mu: o.mu,
            delta: o.delta,
            seed: o.seed,
            samples: o.samples,
            count: o.count,
            terms: o.terms,
            tol: o.tol,
            format: o.format,
            force: o.force,
        }
    }

    pub fn count_or(&self, default: usize) -> usize {
        self.count.unwrap_or(default)
    }
}

/// What a command produced.
pub struct Outcome {
    pub passed: bool,
    pub json: Value,
    /// Table output for `--format csv`, when the command has one.
    pub csv: Option<Vec<u8>>,
}

impl Outcome {
    fn report(cfg: &RunConfig, passed: bool, body: Value) -> Outcome {
        Outcome {
            passed,
            json: json!({"config": cfg, "passed": passed, "result": body}),
            csv: None,
        }
    }
}

fn check_budget(what: &str, estimate: f64, cfg: &RunConfig) -> Result<()> {
    eprintln!("{what}: estimated cost {estimate:.2e} operations");
    if estimate > suites::WORK_BUDGET && !cfg.force {
        return Err(Error::OverBudget {
            what: what.into(),
            estimate,
            budget: suites::WORK_BUDGET,
        });
    }
    Ok(())
}

fn run_suites(names: &[&str], cfg: &RunConfig) -> Result<Outcome> {
    // validate everything before running anything
    for name in names {
        check_budget(name, suites::estimate(name, cfg)?, cfg)?;
    }
    let mut results: Vec<Suite> = Vec::with_capacity(names.len());
    for name in names {
        results.push(suites::run(name, cfg)?);
    }
    let passed = results.iter().all(|s| s.passed);
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["suite", "passed", "margin"])?;
    for s in &results {
        let margin = s.margin.map(|m| m.to_string()).unwrap_or_default();
        csv.write_record([s.name.as_str(), &s.passed.to_string(), &margin])?;
    }
    let mut out = Outcome::report(cfg, passed, json!({ "suites": results }));
    out.csv = Some(csv.into_inner().map_err(|e| Error::Io(e.into_error()))?);
    Ok(out)
}

fn spectrum_eig(cfg: &RunConfig, op: OpArg) -> Result<Outcome> {
    let mut op = CayleyOp::new(op.into(), cfg.r, cfg.d)?;
    if let Some(t) = cfg.t {
        op = op.pow(t);
    }
    let space = op.group().clone();
    let n = space.len() as f64;
    check_budget("spectrum eig", n * n, cfg)?;
    let reps = coset_reps(space.r(), space.d())?;
    let coeffs: Vec<Complex64> = reps
        .reps
        .iter()
        .map(|rep| op.eigenvalue(&rep.beta))
        .collect::<Result<_>>()?;
    let rows: Vec<Value> = reps
        .reps
        .iter()
        .zip(&coeffs)
        .map(|(rep, l)| json!({"coset_id": rep.coset_id, "support": rep.support, "re": l.re, "im": l.im}))
        .collect();
    let spec = Spectrum {
        r: space.r(),
        d: space.d(),
        coeffs,
    };
    let mut buf = Vec::new();
    reps.write_spectrum_csv(&spec, &mut buf)?;
    let body = json!({
        "operator": format!("{:?}", op.kind),
        "power": op.t,
        "group": {"r": space.r(), "d": space.d(), "size": space.len()},
        "noise_support": op.noise().support.len(),
        "eigenvalues": rows,
    });
    let mut out = Outcome::report(cfg, true, body);
    out.csv = Some(buf);
    Ok(out)
}

fn graph_cmd(cfg: &RunConfig, cmd: &GraphCmd) -> Result<Outcome> {
    if let GraphCmd::Check = cmd {
        return run_suites(&["graph"], cfg);
    }
    let n = 3f64.powi(crate::gf3poly::PolySpace::new(cfg.r, 2 * cfg.d.min(cfg.r))?.dim() as i32);
    check_budget("graph", n * 100.0, cfg)?;
    let g = DerandGraph::new(cfg.r, cfg.d)?;
    match cmd {
        GraphCmd::Check => unreachable!(),
        GraphCmd::Build => {
            let mut buf = Vec::new();
            g.write_edges_csv(&mut buf)?;
            let mut out = Outcome::report(cfg, true, json!(g.noise_json()));
            out.csv = Some(buf);
            Ok(out)
        }
        GraphCmd::Mis { greedy } => {
            let exhaustive = !greedy && g.space().dim() <= MIS_DIM_LIMIT;
            let s = if exhaustive {
                exhaustive_mis(&g)?
            } else {
                greedy_independent_set(&g, cfg.seed)
            };
            let (indep, maximal) = (g.is_independent(&s), g.is_maximal(&s));
            let body = json!({
                "exhaustive": exhaustive,
                "size": s.len(),
                "vertices": g.num_vertices(),
                "independent": indep,
                "maximal": maximal,
                "set": s,
            });
            Ok(Outcome::report(cfg, indep && maximal, body))
        }
        GraphCmd::Identity => {
            let dict = g.dictator_set(0, Gf3::ZERO)?;
            let greedy = greedy_independent_set(&g, cfg.seed);
            let a = independence_identity(&g, &dict)?;
            let b = independence_identity(&g, &greedy)?;
            let body = json!({
                "statement": "sum over nonzero alpha of |A^(alpha)|^2 lambda(alpha) = -delta^2 for independent A",
                "dictator": a,
                "greedy": {"size": greedy.len(), "identity": b},
            });
            Ok(Outcome::report(
                cfg,
                a.gap < cfg.tol && b.gap < cfg.tol,
                body,
            ))
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum InstanceFile {
    Bundle {
        instance: UGInstance,
        labeling: Option<Labeling>,
    },
    Bare(UGInstance),
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let f = File::open(path)?;
    Ok(serde_json::from_reader(io::BufReader::new(f))?)
}

fn load(io: &InstanceArgs) -> Result<(UGInstance, Option<Labeling>)> {
    let (inst, bundled) = match read_json::<InstanceFile>(&io.instance)? {
        InstanceFile::Bundle { instance, labeling } => (instance, labeling),
        InstanceFile::Bare(i) => (i, None),
    };
    let labeling = match &io.labeling {
        Some(p) => Some(read_json(p)?),
        None => bundled,
    };
    Ok((inst, labeling))
}

fn require_labeling(l: Option<Labeling>) -> Result<Labeling> {
    l.ok_or_else(|| Error::InvalidParameter("this command needs a labeling".into()))
}

fn coloring_budget(cfg: &RunConfig, inst: &UGInstance) -> Result<()> {
    let n = 3f64.powi(crate::gf3poly::PolySpace::new(inst.r, 2 * cfg.d.min(inst.r))?.dim() as i32);
    check_budget("reduction", n * inst.edges.len() as f64 * 64.0, cfg)
}

fn reduce_cmd(cfg: &RunConfig, cmd: &ReduceCmd) -> Result<Outcome> {
    match cmd {
        ReduceCmd::Gen {
            n_u,
            n_v,
            degree,
            noise,
        } => {
            let p = GenParams {
                r: cfg.r,
                n_u: *n_u,
                n_v: *n_v,
                u_degree: *degree,
            };
            let mut g = crate::rng::seeded(cfg.seed);
            let (mut inst, lab) = planted_instance(p, &mut g)?;
            if let Some(rho) = noise {
                inst = noisy_instance(&inst, *rho, &mut g);
            }
            let frac = satisfied_fraction(&inst, &lab)?;
            Ok(Outcome {
                passed: true,
                json: json!({"config": cfg, "instance": inst, "labeling": lab, "satisfied": frac}),
                csv: None,
            })
        }
        ReduceCmd::Build(io) => {
            let (inst, _) = load(io)?;
            coloring_budget(cfg, &inst)?;
            let c = ColoringInstance::new(&inst, cfg.d)?;
            let explicit = if c.num_vertices() <= EXPLICIT_VERTEX_LIMIT {
                let edges = c.explicit_edges()?;
                let symmetric = edges.iter().all(|&(a, b)| c.is_edge(b, a));
                Some(json!({"edges": edges.len(), "symmetric": symmetric}))
            } else {
                None
            };
            let passed = explicit
                .as_ref()
                .is_none_or(|e| e["symmetric"].as_bool() == Some(true));
            let body = json!({
                "ug_edges": inst.edges.len(),
                "right_regular": inst.is_right_regular(),
                "cloud_size": c.cloud_size(),
                "vertices": c.num_vertices(),
                "explicit": explicit,
            });
            Ok(Outcome::report(cfg, passed, body))
        }
        ReduceCmd::Complete { io, subset } => {
            let (inst, lab) = load(io)?;
            let lab = require_labeling(lab)?;
            coloring_budget(cfg, &inst)?;
            let c = ColoringInstance::new(&inst, cfg.d)?;
            let s = subset.clone().unwrap_or_else(|| inst.v.clone());
            let col = completeness_color(&c, &lab, &s)?;
            let mut buf = Vec::new();
            col.write_csv(&c, &mut buf)?;
            let mut out = Outcome::report(
                cfg,
                col.report.proper,
                json!({"subset": s, "report": col.report}),
            );
            out.csv = Some(buf);
            Ok(out)
        }
        ReduceCmd::Decode { io, color } => {
            let (inst, lab) = load(io)?;
            let lab = require_labeling(lab)?;
            coloring_budget(cfg, &inst)?;
            let c = ColoringInstance::new(&inst, cfg.d)?;
            let indep = CloudSubset::from_labeling(&c, &lab, Gf3::new(*color))?;
            let k = cfg.k.unwrap_or(1);
            let rep = soundness_decode(
                &c,
                &indep,
                cfg.mu,
                cfg.delta,
                k,
                cfg.count_or(100),
                cfg.seed,
            )?;
            let planted_listed = rep.vertices.iter().filter(|v| v.in_j).all(|v| {
                lab.get(&v.id).is_some_and(|l| {
                    v.candidates
                        .iter()
                        .any(|cand| point_index(cand) == point_index(l))
                })
            });
            let passed = rep.list_bound_holds && rep.claim_failures == 0 && planted_listed;
            let body = json!({
                "note": "soundness is certified only through local list-consistency checks on this instance",
                "independent_set_size": indep.len(),
                "planted_label_in_every_list": planted_listed,
                "report": rep,
            });
            Ok(Outcome::report(cfg, passed, body))
        }
        ReduceCmd::Stats(io) => {
            let (inst, lab) = load(io)?;
            let adj = inst.validate()?;
            let frac = lab
                .as_ref()
                .map(|l| satisfied_fraction(&inst, l))
                .transpose()?;
            let max_v_degree = adj.by_v.iter().map(Vec::len).max().unwrap_or(0);
            let body = json!({
                "r": inst.r,
                "u": inst.u.len(),
                "v": inst.v.len(),
                "edges": inst.edges.len(),
                "right_regular": inst.is_right_regular(),
                "max_v_degree": max_v_degree,
                "satisfied": frac,
            });
            Ok(Outcome::report(cfg, true, body))
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let o = &cli.opts;
    match &cli.command {
        Command::Verify { suite } => {
            let cfg = RunConfig::new(format!("verify {suite}"), o);
            if suite == "all" {
                if o.d > o.r {
                    return Err(Error::InvalidParameter(format!(
                        "verify all needs d <= r so that P(r, 2d) exists (got r = {}, d = {})",
                        o.r, o.d
                    )));
                }
                run_suites(&suites::ALL, &cfg)
            } else {
                run_suites(&[suite.as_str()], &cfg)
            }
        }
        Command::Spectrum(s) => match s {
            SpectrumCmd::Eig { op } => spectrum_eig(&RunConfig::new("spectrum eig", o), *op),
            SpectrumCmd::VerifyT => run_suites(&["eig-T"], &RunConfig::new("spectrum verify-T", o)),
            SpectrumCmd::VerifyS => run_suites(&["eig-S"], &RunConfig::new("spectrum verify-S", o)),
        },
        Command::Moments => run_suites(&["moments"], &RunConfig::new("moments", o)),
        Command::Pipeline => run_suites(&["pipeline"], &RunConfig::new("pipeline", o)),
        Command::XiProbe => run_suites(&["xi"], &RunConfig::new("xi-probe", o)),
        Command::Graph(g) => graph_cmd(&RunConfig::new(format!("graph {}", graph_name(g)), o), g),
        Command::Reduce(r) => {
            reduce_cmd(&RunConfig::new(format!("reduce {}", reduce_name(r)), o), r)
        }
    }
}

fn graph_name(g: &GraphCmd) -> &'static str {
    match g {
        GraphCmd::Build => "build",
        GraphCmd::Check => "check",
        GraphCmd::Mis { .. } => "mis",
        GraphCmd::Identity => "identity",
    }
}

fn reduce_name(r: &ReduceCmd) -> &'static str {
    match r {
        ReduceCmd::Gen { .. } => "gen",
        ReduceCmd::Build(_) => "build",
        ReduceCmd::Complete { .. } => "complete",
        ReduceCmd::Decode { .. } => "decode",
        ReduceCmd::Stats(_) => "stats",
    }
}

fn write_outcome(out: &Outcome, opts: &Opts) -> Result<()> {
    let bytes = match (opts.format, &out.csv) {
        (Format::Csv, Some(csv)) => csv.clone(),
        (Format::Csv, None) => {
            return Err(Error::InvalidParameter(
                "this command has no csv output".into(),
            ));
        }
        (Format::Json, _) => {
            let mut s = serde_json::to_vec_pretty(&out.json)?;
            s.push(b'\n');
            s
        }
    };
    match &opts.out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(&bytes)?;
            w.flush()?;
        }
        None => io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

/// Exit status for an error: 1 when the input failed a check, 2 otherwise.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::NotIndependent(..) | Error::UnsatisfiedEdge { .. } | Error::NormViolation { .. } => {
            1
        }
        _ => 2,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("LOWDEG_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Entry point of the binary; returns the process exit status.
pub fn main() -> i32 {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli).and_then(|out| write_outcome(&out, &cli.opts).map(|_| out.passed)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}
