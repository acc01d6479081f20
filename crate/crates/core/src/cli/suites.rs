//! Verification suites shared by `verify` and the experiment subcommands.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::RunConfig;
use crate::cayley::{
    key_lemma_pipeline, moment_check, moment_monte_carlo, noise_interpolation_check,
    random_sparse_spectrum, random_unit_degree_one, verify_eigval_S, verify_eigval_T, xi_gap_probe,
    ApplyMode, CayleyOp,
};
use crate::error::{Error, Result};
use crate::fourier::{
    character_table, coset_reps, fourier_transform, inverse_transform, orthonormality_gap,
    parseval_check, GroupFn,
};
use crate::gf3poly::{
    exact_independence, independence_guarantee, kwise_check, point_from_index, pow3,
    schwartz_zippel_min, verify_dual, Gf3, KwiseMode, Mat, PolySpace,
};
use crate::graphprod::{
    exhaustive_mis, fourier_concentration, independence_identity, triangle_partition_check,
    DerandGraph, MIS_DIM_LIMIT,
};
use crate::rng;

/// Work estimates above this many elementary operations need `--force`.
pub const WORK_BUDGET: f64 = 5e9;

pub const ALL: [&str; 11] = [
    "dual", "sz", "kwise", "parseval", "graph", "eig-T", "eig-S", "moments", "interp", "pipeline",
    "xi",
];

/// Outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct Suite {
    pub name: String,
    /// The property being checked, in words.
    pub statement: String,
    pub passed: bool,
    /// Smallest slack over the checked inequalities, before the tolerance is applied.
    pub margin: Option<f64>,
    pub details: Value,
}

impl Suite {
    fn new(
        name: &str,
        statement: &str,
        passed: bool,
        margin: Option<f64>,
        details: Value,
    ) -> Suite {
        Suite {
            name: name.into(),
            statement: statement.into(),
            passed,
            margin,
            details,
        }
    }
}

fn size(r: usize, d: usize) -> Result<f64> {
    Ok(3f64.powi(PolySpace::new(r, d)?.dim() as i32))
}

fn group_size(r: usize, d: usize) -> Result<f64> {
    if 2 * d > 2 * r {
        return Err(Error::InvalidParameter(format!(
            "the group P(r, 2d) needs d <= r (got r = {r}, d = {d})"
        )));
    }
    size(r, 2 * d)
}

/// Rough operation count of a suite, used to gate runs before they start.
pub fn estimate(name: &str, c: &RunConfig) -> Result<f64> {
    let (r, d) = (c.r, c.d);
    let pts = pow3(r) as f64;
    Ok(match name {
        "dual" => size(r, d)?.log(3.0) * pts * pts,
        "sz" | "kwise" => size(r, d)? * pts,
        "parseval" => {
            let n = size(r, d)?;
            c.count_or(100) as f64 * n * r as f64 * 3.0 + n * n * n / 2.0
        }
        "graph" => {
            let n = group_size(r, d)?;
            n * n.log(3.0) * 3f64.powi(PolySpace::new(r, d)?.dim() as i32) * 2.0 / 3.0 * 30.0
        }
        "eig-T" | "eig-S" => {
            let n = group_size(r, d)?;
            let noise = 2.0 * size(r, d)?;
            let relation = (n * n * noise).min(c.count_or(50) as f64 * n * noise);
            let relation = if n * n * noise <= 5e8 {
                n * n * noise
            } else {
                relation
            };
            n * n.log(3.0) * 3.0 + n * noise + relation
        }
        "moments" => {
            let terms = c.terms.unwrap_or(6) as f64;
            let k = c.k.unwrap_or(2) as i32;
            c.count_or(50) as f64
                * (terms.powi(2 * k) + c.samples.unwrap_or(100_000) as f64 * terms)
        }
        "interp" => {
            let n = group_size(r, d)?;
            c.count_or(50) as f64 * n * 64.0 * n.log(3.0) * 14.0
        }
        "pipeline" => {
            let n = group_size(r, d)?;
            c.count_or(5) as f64 * n * n
        }
        "xi" => c.count_or(100) as f64 * (2 * r + 1) as f64 * size(r, 2 * r)?,
        _ => return Err(Error::InvalidParameter(format!("unknown suite {name}"))),
    })
}

pub fn run(name: &str, c: &RunConfig) -> Result<Suite> {
    match name {
        "dual" => dual(c),
        "sz" => sz(c),
        "kwise" => kwise(c),
        "parseval" => parseval(c),
        "graph" => graph(c),
        "eig-T" => eig_t(c),
        "eig-S" => eig_s(c),
        "moments" => moments(c),
        "interp" => interp(c),
        "pipeline" => pipeline(c),
        "xi" => xi(c),
        _ => Err(Error::InvalidParameter(format!("unknown suite {name}"))),
    }
}

fn dual(c: &RunConfig) -> Result<Suite> {
    let rep = verify_dual(c.r, c.d)?;
    Ok(Suite::new(
        "dual",
        "the dual of P(r,d) under sum_x beta(x) f(x) is P(r,2r-d-1)",
        rep.passed,
        None,
        json!(rep),
    ))
}

fn sz(c: &RunConfig) -> Result<Suite> {
    let rep = schwartz_zippel_min(c.r, c.d)?;
    let frac = *rep.min_fraction.numer() as f64 / *rep.min_fraction.denom() as f64;
    Ok(Suite::new(
        "sz",
        "every nonzero p in P(r,d) is nonzero on at least a 3^(-d/2) fraction of points",
        rep.holds,
        Some(frac - rep.bound),
        json!(rep),
    ))
}

fn random_distinct_points<R: Rng + ?Sized>(r: usize, s: usize, rng: &mut R) -> Vec<Vec<Gf3>> {
    let mut idx: Vec<usize> = (0..pow3(r)).collect();
    idx.shuffle(rng);
    idx.truncate(s);
    idx.into_iter().map(|i| point_from_index(r, i)).collect()
}

fn random_affine_basis<R: Rng + ?Sized>(r: usize, s: usize, rng: &mut R) -> Vec<Vec<Gf3>> {
    let x0: Vec<Gf3> = (0..r).map(|_| Gf3::new(rng.gen_range(0..3))).collect();
    let m = Mat::random_invertible(r, rng);
    let mut out = vec![x0.clone()];
    for i in 0..s.saturating_sub(1) {
        out.push(x0.iter().zip(m.row(i)).map(|(&a, &b)| a + b).collect());
    }
    out
}

fn kwise(c: &RunConfig) -> Result<Suite> {
    let (r, d) = (c.r, c.d);
    let space = PolySpace::new(r, d)?;
    let mode = if space.is_enumerable() && c.samples.is_none() {
        KwiseMode::Exact
    } else {
        KwiseMode::Sampled {
            samples: c.samples.unwrap_or(100_000),
        }
    };
    let mut g = rng::stream(c.seed, 0);
    let affine_size = independence_guarantee(d).min(r + 1);
    let exact_size = exact_independence(r, d).min(pow3(r));
    let mut affine_ok = 0;
    let mut arbitrary_ok = 0;
    let trials = c.count_or(20);
    for _ in 0..trials {
        let pts = random_affine_basis(r, affine_size, &mut g);
        affine_ok += kwise_check(r, d, &pts, mode, &mut g)?.uniform as usize;
        let pts = random_distinct_points(r, exact_size, &mut g);
        arbitrary_ok += kwise_check(r, d, &pts, mode, &mut g)?.uniform as usize;
    }
    Ok(Suite::new(
        "kwise",
        "restrictions of a random p in P(r,d) to affinely independent points, and to any \
         set smaller than the dual minimum weight, are uniform",
        affine_ok == trials && arbitrary_ok == trials,
        None,
        json!({
            "mode": if matches!(mode, KwiseMode::Exact) { "exact" } else { "sampled" },
            "guarantee": independence_guarantee(d),
            "exact_independence": exact_independence(r, d),
            "affine_set_size": affine_size,
            "arbitrary_set_size": exact_size,
            "trials": trials,
            "affine_uniform": affine_ok,
            "arbitrary_uniform": arbitrary_ok,
        }),
    ))
}

fn parseval(c: &RunConfig) -> Result<Suite> {
    let space = PolySpace::new(c.r, c.d)?;
    space.require_enumerable()?;
    let reps = coset_reps(c.r, c.d)?;
    let mut g = rng::stream(c.seed, 0);
    let (mut round_trip, mut gap) = (0.0f64, 0.0f64);
    let count = c.count_or(100);
    for _ in 0..count {
        let a = GroupFn::from_fn(&space, |_| {
            Complex64::new(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0))
        })?;
        let spec = fourier_transform(&space, &a)?;
        round_trip = round_trip.max(inverse_transform(&space, &spec)?.max_abs_diff(&a));
        gap = gap.max(parseval_check(&space, &a)?.gap);
    }
    let ortho = orthonormality_gap(&space, &reps)?;
    let worst = round_trip.max(gap).max(ortho);
    Ok(Suite::new(
        "parseval",
        "characters of P(r,d) indexed by minimum-support coset representatives are \
         orthonormal, the transform inverts, and Parseval holds",
        worst < c.tol,
        Some(c.tol - worst),
        json!({
            "functions": count,
            "representatives": reps.len(),
            "max_round_trip_error": round_trip,
            "max_parseval_gap": gap,
            "orthonormality_gap": ortho,
        }),
    ))
}

fn graph(c: &RunConfig) -> Result<Suite> {
    let g = DerandGraph::new(c.r, c.d)?;
    let n = g.num_vertices();
    let tri = triangle_partition_check(&g)?;
    let mut dict_ok = 0;
    let mut max_identity_gap = 0.0f64;
    let mut max_ex_gap = 0.0f64;
    let dicts = g.dictator_sets()?;
    for (_, s) in &dicts {
        if g.is_independent(s) && g.is_maximal(s) && 3 * s.len() == n {
            dict_ok += 1;
        }
        let id = independence_identity(&g, s)?;
        max_identity_gap = max_identity_gap.max(id.gap).max((id.lhs + 1.0 / 9.0).abs());
        if let (Some(ex), Some(want)) = (id.ex, id.ex_expected) {
            max_ex_gap = max_ex_gap.max((ex - want).abs()).max((ex + 0.5).abs());
        }
    }
    // dictators with a few vertices removed stay independent but lose density
    let mut g_rng = rng::stream(c.seed, 0);
    let mut tail_margin = f64::INFINITY;
    let mut tails = Vec::new();
    let base = &dicts[0].1;
    let members: Vec<usize> = base.iter().collect();
    for m in 1..=10.min(members.len()) {
        let mut s = base.clone();
        for &f in members.choose_multiple(&mut g_rng, m) {
            s.remove(f);
        }
        let rep = fourier_concentration(&g, &s, c.tol)?;
        tail_margin = tail_margin.min(rep.bound - rep.tail);
        tails.push(json!({"removed": m, "tail": rep.tail, "bound": rep.bound, "holds": rep.holds}));
    }
    let mis = if g.space().dim() <= MIS_DIM_LIMIT {
        Some(exhaustive_mis(&g)?.len())
    } else {
        None
    };
    let passed = tri.passed
        && 3 * tri.bound == n
        && dict_ok == dicts.len()
        && max_identity_gap < c.tol
        && max_ex_gap < c.tol
        && tail_margin >= -c.tol
        && mis.is_none_or(|m| 3 * m == n);
    Ok(Suite::new(
        "graph",
        "the graph f ~ f + a(p^2+1) on P(r,2d) has independence number 3^(dim)/3, attained \
         by dictators, and its independent sets satisfy the spectral identity and tail bound",
        passed,
        Some(tail_margin),
        json!({
            "vertices": n,
            "triangles": tri,
            "dictator_sets": dicts.len(),
            "dictators_independent_maximal": dict_ok,
            "identity_max_gap": max_identity_gap,
            "ex_max_gap": max_ex_gap,
            "tails": tails,
            "exhaustive_mis": mis,
        }),
    ))
}

/// Largest `| T chi - lambda chi |` over characters, all of them when cheap enough.
fn eigenrelation_gap(op: &CayleyOp, c: &RunConfig) -> Result<(usize, f64)> {
    let space = op.group().clone();
    let reps = coset_reps(space.r(), space.d())?;
    let n = space.len() as f64;
    let all = n * n * op.noise().support.len() as f64 <= 5e8;
    let mut ids: Vec<usize> = (0..reps.len()).collect();
    if !all {
        let mut g = rng::stream(c.seed, 1);
        ids.shuffle(&mut g);
        ids.truncate(c.count_or(50));
        ids.sort_unstable();
    }
    let mut worst = 0.0f64;
    for &b in &ids {
        let chi = GroupFn::new(&space, character_table(&space, &reps.rep(b).beta)?)?;
        let applied = op.apply(&chi, ApplyMode::Direct)?;
        let lam = op.eigenvalues()[b];
        worst = worst.max(applied.max_abs_diff(&chi.scale(lam)));
    }
    Ok((ids.len(), worst))
}

fn eig_t(c: &RunConfig) -> Result<Suite> {
    group_size(c.r, c.d)?;
    let rep = verify_eigval_T(c.r, c.d, c.tol)?;
    let op = CayleyOp::t_rd(c.r, c.d)?;
    let (checked, gap) = eigenrelation_gap(&op, c)?;
    let passed = rep.passed && gap < c.tol;
    let mut details = json!(rep);
    details["noise_elements"] = json!(op.noise().support.len());
    details["eigenrelation_characters"] = json!(checked);
    details["eigenrelation_gap"] = json!(gap);
    Ok(Suite::new(
        "eig-T",
        "T_{r,d} has eigenvalue magnitude (1/2)^|alpha| at support at most 1, matches the \
         independent-coordinate closed form, and every character is an eigenvector",
        passed,
        Some(c.tol - gap),
        details,
    ))
}

fn eig_s(c: &RunConfig) -> Result<Suite> {
    group_size(c.r, c.d)?;
    let rep = verify_eigval_S(c.r, c.d, c.tol)?;
    let margin = rep
        .rows
        .iter()
        .map(|row| row.rho.abs() - row.lower_bound)
        .fold(f64::INFINITY, f64::min);
    Ok(Suite::new(
        "eig-S",
        "S_{r,d} eigenvalues satisfy |rho| >= 1 - 2|alpha|/3^d and rho = (3/2) p_acc - 1/2",
        rep.lower_bound_holds && rep.acceptance_formula_holds,
        Some(margin),
        json!(rep),
    ))
}

fn moments(c: &RunConfig) -> Result<Suite> {
    let (r, d) = (c.r, c.d);
    let k = c.k.unwrap_or(2);
    let t = c.t.unwrap_or(2) as usize;
    let terms = c.terms.unwrap_or(6);
    let samples = c.samples.unwrap_or(100_000);
    let count = c.count_or(50);
    let mut g = rng::stream(c.seed, 0);
    let mut rows = Vec::with_capacity(count);
    let (mut max_gap, mut hyp) = (0.0f64, 0usize);
    let (mut pooled, mut pooled_var, mut exceed) = (0.0, 0.0, 0usize);
    for i in 0..count {
        let b = random_sparse_spectrum(r, t, terms, &mut g);
        let rep = moment_check(&b, d, k)?;
        if rep.hypothesis_holds {
            hyp += 1;
            max_gap = max_gap.max(rep.gap);
        }
        let mc = moment_monte_carlo(&b, d, k, samples, c.seed.wrapping_add(1 + i as u64))?;
        let diff = mc.mean - rep.poly_side;
        if diff.abs() > 3.0 * mc.stderr {
            exceed += 1;
        }
        pooled += diff;
        pooled_var += mc.stderr * mc.stderr;
        rows.push(json!({
            "poly_side": rep.poly_side,
            "full_side": rep.full_side,
            "gap": rep.gap,
            "hypothesis_holds": rep.hypothesis_holds,
            "mc_mean": mc.mean,
            "mc_stderr": mc.stderr,
        }));
    }
    let pooled_mean = pooled / count as f64;
    let pooled_se = pooled_var.sqrt() / count as f64;
    let mc_ok = pooled_mean.abs() <= 3.0 * pooled_se;
    Ok(Suite::new(
        "moments",
        "for spectra of support at most t with 2kt <= 3^(d-1), the 2k-th moment over P(r,2d) equals \
         the moment over all functions",
        max_gap < c.tol && mc_ok,
        Some(c.tol - max_gap),
        json!({
            "k": k,
            "t": t,
            "terms": terms,
            "spectra": count,
            "hypothesis_holds": hyp,
            "max_gap": max_gap,
            "samples": samples,
            "pooled_mc_deviation": pooled_mean,
            "pooled_mc_stderr": pooled_se,
            "per_spectrum_3sigma_exceedances": exceed,
            "rows": rows,
        }),
    ))
}

fn random_unit_interval(space: &PolySpace, g: &mut impl Rng) -> Result<GroupFn> {
    GroupFn::from_fn(space, |_| Complex64::new(g.gen(), 0.0))
}

fn interp(c: &RunConfig) -> Result<Suite> {
    group_size(c.r, c.d)?;
    let t_op = CayleyOp::t_rd(c.r, c.d)?;
    let s_op = CayleyOp::s_rd(c.r, c.d)?;
    let space = t_op.group().clone();
    let ts: Vec<u32> = match c.t {
        Some(t) => vec![t],
        None => vec![1, 2, 4],
    };
    let mut g = rng::stream(c.seed, 0);
    let count = c.count_or(50);
    let mut margin = f64::INFINITY;
    let mut worst = Vec::new();
    let mut ok = true;
    for &t in &ts {
        let mut m_t = f64::INFINITY;
        for _ in 0..count {
            let a = random_unit_interval(&space, &mut g)?;
            let b = random_unit_interval(&space, &mut g)?;
            let rep = noise_interpolation_check(&t_op, &s_op, &a, &b, t, c.tol)?;
            ok &= rep.holds;
            m_t = m_t.min(rep.bound - rep.lhs);
        }
        margin = margin.min(m_t);
        worst.push(json!({"t": t, "bound": 2.0 * c.d as f64 * t as f64 / pow3(c.d) as f64, "min_margin": m_t}));
    }
    Ok(Suite::new(
        "interp",
        "smoothing both sides by S^t changes <A, T B> by at most 2dt/3^d for [0,1]-valued A, B",
        ok,
        Some(margin),
        json!({"pairs": count, "per_t": worst}),
    ))
}

fn pipeline(c: &RunConfig) -> Result<Suite> {
    group_size(c.r, c.d)?;
    let space = PolySpace::new(c.r, 2 * c.d)?;
    let k = c.k.unwrap_or(1);
    let mut g = rng::stream(c.seed, 0);
    let count = c.count_or(5);
    let mut reports = Vec::with_capacity(count);
    let mut ok = true;
    let mut margin = f64::INFINITY;
    for _ in 0..count {
        let a = random_unit_interval(&space, &mut g)?;
        let b = random_unit_interval(&space, &mut g)?;
        let out = key_lemma_pipeline(&a, &b, c.eps, k)?;
        let rep = out.report;
        ok &= rep.passed;
        margin = margin
            .min(rep.mean_margin)
            .min(rep.influence_margin)
            .min(rep.inner_margin);
        reports.push(rep);
    }
    Ok(Suite::new(
        "pipeline",
        "smoothing, truncation and lifting move [0,1]-valued functions on P(r,2d) to functions \
         on all of F3^r with nearby means, influences and T-inner product",
        ok,
        Some(margin),
        json!({"pairs": count, "k": k, "eps": c.eps, "reports": reports}),
    ))
}

pub fn xi(c: &RunConfig) -> Result<Suite> {
    let r = c.r;
    let count = c.count_or(100);
    let mut g = rng::stream(c.seed, 0);
    let mut gaps = vec![0.0f64; 2 * r + 1];
    for _ in 0..count {
        let p = random_unit_degree_one(r, &mut g);
        for (d, gap) in gaps.iter_mut().enumerate() {
            *gap += xi_gap_probe(&p, d)?.gap / count as f64;
        }
    }
    let margin = gaps
        .windows(2)
        .map(|w| w[0] - w[1])
        .fold(f64::INFINITY, f64::min);
    Ok(Suite::new(
        "xi",
        "the ensemble-average gap |E_all xi(P) - E_{P(r,d)} xi(P)| for unit-norm degree-one P \
         does not increase with d",
        margin >= -c.tol,
        Some(margin),
        json!({"spectra": count, "average_gap_by_degree": gaps}),
    ))
}
