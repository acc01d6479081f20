//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use lowdeg::cayley::{
    key_lemma_pipeline, moment_check, moment_monte_carlo, noise_interpolation_check,
    random_sparse_spectrum, random_unit_degree_one, verify_eigval_S, verify_eigval_T,
    xi_expectations, ApplyMode, CayleyOp,
};
use lowdeg::fourier::{
    character_table, coset_reps, fourier_transform, inverse_transform, orthonormality_gap,
    parseval_check, GroupFn,
};
use lowdeg::gf3poly::{
    all_points, kwise_check, schwartz_zippel_min, verify_dual, Gf3, KwiseMode, Mat, PolySpace,
};
use lowdeg::graphprod::{
    exhaustive_mis, fourier_concentration, independence_identity, triangle_partition_check,
    DerandGraph,
};
use lowdeg::rng;
use lowdeg::ugreduce::{
    completeness_color, planted_instance, soundness_decode, CloudSubset, ColoringInstance,
    GenParams,
};
use lowdeg::Error;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn duality() -> Result<String, String> {
    let mut n = 0;
    for r in 1..=3 {
        for d in 0..2 * r {
            let rep = verify_dual(r, d).map_err(e)?;
            ensure(
                rep.passed && rep.nonzero_pairs == 0 && rep.complementary,
                || format!("dual check failed at r={r} d={d}"),
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} (r, d) pairs"))
}

fn schwartz_zippel() -> Result<String, String> {
    for d in 0..=4 {
        let rep = schwartz_zippel_min(2, d).map_err(e)?;
        ensure(rep.holds, || {
            format!("bound fails at d={d}: {}", rep.min_fraction)
        })?;
    }
    let rep = schwartz_zippel_min(1, 2).map_err(e)?;
    ensure(
        rep.tight && rep.min_fraction == num_rational::Ratio::new(1, 3),
        || format!("(1,2) minimum is {}", rep.min_fraction),
    )?;
    Ok("P(2,d) for d <= 4; (1,2) tight at 1/3".into())
}

fn fourier_core() -> Result<String, String> {
    let space = PolySpace::new(2, 2).map_err(e)?;
    let mut g = rng::seeded(11);
    let (mut rt, mut pg) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let a = GroupFn::from_fn(&space, |_| {
            Complex64::new(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0))
        })
        .map_err(e)?;
        let s = fourier_transform(&space, &a).map_err(e)?;
        rt = rt.max(inverse_transform(&space, &s).map_err(e)?.max_abs_diff(&a));
        pg = pg.max(parseval_check(&space, &a).map_err(e)?.gap);
    }
    let reps = coset_reps(2, 2).map_err(e)?;
    let og = orthonormality_gap(&space, &reps).map_err(e)?;
    ensure(reps.len() == 729, || {
        format!("{} representatives", reps.len())
    })?;
    ensure(rt < 1e-9 && pg < 1e-9 && og < 1e-9, || {
        format!("round trip {rt:e}, parseval {pg:e}, orthonormality {og:e}")
    })?;
    Ok(format!(
        "round trip {rt:.1e}, parseval {pg:.1e}, orthonormality {og:.1e}"
    ))
}

fn kwise() -> Result<String, String> {
    let pts: Vec<Vec<Gf3>> = all_points(2).collect();
    let mut g = rng::seeded(0);
    let mut triples = 0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let diff = |a: &[Gf3], b: &[Gf3]| a.iter().zip(b).map(|(&x, &y)| x - y).collect();
                let m = Mat::from_rows(vec![diff(&pts[j], &pts[i]), diff(&pts[k], &pts[i])])
                    .map_err(e)?;
                if !m.is_invertible() {
                    continue;
                }
                triples += 1;
                let set = [pts[i].clone(), pts[j].clone(), pts[k].clone()];
                let rep = kwise_check(2, 1, &set, KwiseMode::Exact, &mut g).map_err(e)?;
                ensure(
                    rep.total == 27 && rep.counts.iter().all(|&c| c == 1),
                    || format!("triple {:?} counts {:?}", rep.points, rep.counts),
                )?;
            }
        }
    }
    ensure(triples == 72, || {
        format!("{triples} affinely independent triples")
    })?;
    Ok("72 affinely independent triples, each pattern hit once".into())
}

fn eigenvalues() -> Result<String, String> {
    let rep = verify_eigval_T(2, 1, 1e-9).map_err(e)?;
    let op = CayleyOp::t_rd(2, 1).map_err(e)?;
    ensure(op.noise().total == 54, || {
        format!("{} noise draws", op.noise().total)
    })?;
    let mut weight_le_one = 0;
    for row in &rep.rows {
        if row.support <= 1 {
            weight_le_one += 1;
            let want = 0.5f64.powi(row.support as i32);
            ensure((row.lambda_rd.abs() - want).abs() < 1e-12, || {
                format!("coset {}: {} vs {want}", row.coset_id, row.lambda_rd)
            })?;
        }
    }
    ensure(rep.equality_holds_weight_one && rep.real, || "flags".into())?;
    let space = op.group().clone();
    let reps = coset_reps(2, 2).map_err(e)?;
    let mut worst = 0.0f64;
    for (b, rep) in reps.reps.iter().enumerate() {
        let chi =
            GroupFn::new(&space, character_table(&space, &rep.beta).map_err(e)?).map_err(e)?;
        let applied = op.apply(&chi, ApplyMode::Direct).map_err(e)?;
        worst = worst.max(applied.max_abs_diff(&chi.scale(op.eigenvalues()[b])));
    }
    ensure(worst < 1e-9, || format!("eigenrelation gap {worst:e}"))?;
    Ok(format!(
        "{weight_le_one} representatives of support <= 1; eigenrelation gap {worst:.1e} over {}",
        reps.len()
    ))
}

fn s_operator() -> Result<String, String> {
    let rep = verify_eigval_S(2, 1, 1e-9).map_err(e)?;
    ensure(
        rep.lower_bound_holds && rep.acceptance_formula_holds,
        || {
            format!(
                "lower bound {}, formula {}",
                rep.lower_bound_holds, rep.acceptance_formula_holds
            )
        },
    )?;
    Ok(format!("{} representatives", rep.rows.len()))
}

fn moments() -> Result<String, String> {
    let mut g = rng::seeded(5);
    let (mut max_gap, mut pooled, mut var, mut exceed) = (0.0f64, 0.0, 0.0, 0);
    for i in 0..50 {
        let b = random_sparse_spectrum(4, 2, 6, &mut g);
        let rep = moment_check(&b, 3, 2).map_err(e)?;
        ensure(rep.hypothesis_holds, || "hypothesis".into())?;
        max_gap = max_gap.max(rep.gap);
        let mc = moment_monte_carlo(&b, 3, 2, 100_000, 1000 + i).map_err(e)?;
        let diff = mc.mean - rep.poly_side;
        exceed += (diff.abs() > 3.0 * mc.stderr) as usize;
        pooled += diff / 50.0;
        var += mc.stderr * mc.stderr;
    }
    let se = var.sqrt() / 50.0;
    ensure(max_gap < 1e-9, || format!("moment gap {max_gap:e}"))?;
    ensure(pooled.abs() <= 3.0 * se, || {
        format!("pooled deviation {pooled:e} vs 3 sigma {:e}", 3.0 * se)
    })?;
    Ok(format!(
        "gap {max_gap:.1e}; pooled MC deviation {:.2} sigma; {exceed}/50 spectra beyond 3 sigma individually",
        pooled / se
    ))
}

fn interpolation() -> Result<String, String> {
    let t_op = CayleyOp::t_rd(2, 1).map_err(e)?;
    let s_op = CayleyOp::s_rd(2, 1).map_err(e)?;
    let space = t_op.group().clone();
    let mut g = rng::seeded(8);
    let mut margin = f64::INFINITY;
    for _ in 0..50 {
        let a = GroupFn::from_fn(&space, |_| Complex64::new(g.gen(), 0.0)).map_err(e)?;
        let b = GroupFn::from_fn(&space, |_| Complex64::new(g.gen(), 0.0)).map_err(e)?;
        for t in [1, 2, 4] {
            let rep = noise_interpolation_check(&t_op, &s_op, &a, &b, t, 1e-9).map_err(e)?;
            ensure(rep.holds, || format!("t={t}: {} > {}", rep.lhs, rep.bound))?;
            margin = margin.min(rep.bound - rep.lhs);
        }
    }
    Ok(format!("150 checks, smallest margin {margin:.4}"))
}

fn graph_product() -> Result<String, String> {
    let g = DerandGraph::new(2, 1).map_err(e)?;
    let tri = triangle_partition_check(&g).map_err(e)?;
    ensure(tri.passed && tri.bound == 243, || {
        format!("triangle bound {}", tri.bound)
    })?;
    let dicts = g.dictator_sets().map_err(e)?;
    ensure(dicts.len() == 27, || {
        format!("{} dictator sets", dicts.len())
    })?;
    for ((x, a), s) in &dicts {
        ensure(
            g.is_independent(s) && g.is_maximal(s) && s.len() == 243,
            || format!("dictator ({x}, {a:?}) size {}", s.len()),
        )?;
        let id = independence_identity(&g, s).map_err(e)?;
        let ex = id.ex.ok_or("EX undefined")?;
        ensure(
            (id.lhs + 1.0 / 9.0).abs() < 1e-9
                && (id.rhs + 1.0 / 9.0).abs() < 1e-9
                && (ex + 0.5).abs() < 1e-9,
            || format!("identity {} = {}, EX {ex}", id.lhs, id.rhs),
        )?;
    }
    let base = &dicts[0].1;
    let members: Vec<usize> = base.iter().collect();
    for m in 1..=10 {
        let mut s = base.clone();
        for &f in members.iter().rev().take(m) {
            s.remove(f);
        }
        let rep = fourier_concentration(&g, &s, 1e-9).map_err(e)?;
        ensure(rep.holds, || {
            format!("tail {} > {} after removing {m}", rep.tail, rep.bound)
        })?;
    }
    let small = DerandGraph::new(1, 1).map_err(e)?;
    let mis = exhaustive_mis(&small).map_err(e)?;
    ensure(mis.len() == 9, || format!("MIS(1,1) = {}", mis.len()))?;
    Ok("bound 243, 27 dictators, identity -1/9, EX -1/2, tails m=1..10, MIS(1,1)=9".into())
}

fn completeness() -> Result<String, String> {
    let p = GenParams {
        r: 2,
        n_u: 3,
        n_v: 6,
        u_degree: 4,
    };
    let mut g = rng::seeded(21);
    let mut edges = 0;
    for _ in 0..10 {
        let (inst, lab) = planted_instance(p, &mut g).map_err(e)?;
        let c = ColoringInstance::new(&inst, 1).map_err(e)?;
        let col = completeness_color(&c, &lab, &inst.v).map_err(e)?;
        ensure(
            col.report.proper && col.report.identity_failures == 0,
            || "improper coloring".into(),
        )?;
        // independent oracle: every explicit edge joins different colors
        for (a, b) in c.explicit_edges().map_err(e)? {
            edges += 1;
            ensure(col.colors[a.0][a.1] != col.colors[b.0][b.1], || {
                format!("edge {a:?} {b:?}")
            })?;
        }
    }
    let (mut inst, lab) = planted_instance(p, &mut g).map_err(e)?;
    let m = inst.edges[0].matrix.clone();
    inst.edges[0].matrix = loop {
        let cand = Mat::random_invertible(2, &mut g);
        let lv = lab.get(&inst.edges[0].v).unwrap();
        if cand.mul_vec(lv).unwrap() != m.mul_vec(lv).unwrap() {
            break cand;
        }
    };
    let c = ColoringInstance::new(&inst, 1).map_err(e)?;
    match completeness_color(&c, &lab, &inst.v) {
        Err(Error::UnsatisfiedEdge { .. }) => {}
        other => {
            return Err(format!(
                "corrupted instance gave {:?}",
                other.map(|c| c.report)
            ))
        }
    }
    Ok(format!(
        "10 instances, {edges} explicit edges properly colored; corrupted edge rejected"
    ))
}

fn soundness() -> Result<String, String> {
    let p = GenParams::default();
    let mut g = rng::seeded(31);
    let mut worst: f64 = 1.0;
    for i in 0..5 {
        let (inst, lab) = planted_instance(p, &mut g).map_err(e)?;
        let c = ColoringInstance::new(&inst, 1).map_err(e)?;
        let indep = CloudSubset::from_labeling(&c, &lab, Gf3::ZERO).map_err(e)?;
        let rep = soundness_decode(&c, &indep, 0.5, 0.1, 1, 100, 40 + i).map_err(e)?;
        ensure(rep.j_size == inst.v.len(), || {
            format!("J has {} vertices", rep.j_size)
        })?;
        for v in &rep.vertices {
            let l = lab.get(&v.id).unwrap();
            ensure(v.candidates.iter().any(|cand| cand.as_slice() == l), || {
                format!("{} misses its planted label", v.id)
            })?;
        }
        ensure(
            rep.list_bound_holds && rep.claim_failures == 0 && rep.claim_triples > 0,
            || {
                format!(
                    "list bound {}, claim failures {}",
                    rep.list_bound_holds, rep.claim_failures
                )
            },
        )?;
        ensure(rep.mean_satisfied >= 0.99, || {
            format!("satisfied {}", rep.mean_satisfied)
        })?;
        worst = worst.min(rep.mean_satisfied);
    }
    Ok(format!(
        "5 instances, lowest mean satisfied fraction {worst:.3}"
    ))
}

fn xi_gap() -> Result<String, String> {
    let mut g = rng::seeded(3);
    let (mut g1, mut g2) = (0.0, 0.0);
    for _ in 0..100 {
        let p = random_unit_degree_one(2, &mut g);
        ensure((p.mass() - 1.0).abs() < 1e-12, || "not unit norm".into())?;
        g1 += xi_expectations(&p, 1).map_err(e)?.gap / 100.0;
        g2 += xi_expectations(&p, 2).map_err(e)?.gap / 100.0;
    }
    ensure(g2 <= g1, || {
        format!("gap at d=2 {g2} exceeds gap at d=1 {g1}")
    })?;
    Ok(format!("average gap d=1 {g1:.4}, d=2 {g2:.4}"))
}

fn pipeline_smoke() -> Result<String, String> {
    let space = PolySpace::new(2, 2).map_err(e)?;
    let mut g = rng::seeded(7);
    let a = GroupFn::from_fn(&space, |_| Complex64::new(g.gen(), 0.0)).map_err(e)?;
    let b = GroupFn::from_fn(&space, |_| Complex64::new(g.gen(), 0.0)).map_err(e)?;
    let out = key_lemma_pipeline(&a, &b, 0.1, 1).map_err(e)?;
    ensure(out.report.passed, || "pipeline failed".into())?;
    Ok(format!("t = {}", out.report.t))
}

fn main() {
    let checks: [(&str, Check); 12] = [
        ("1 duality", duality),
        ("2 schwartz-zippel", schwartz_zippel),
        ("3 fourier core", fourier_core),
        ("4 k-wise independence", kwise),
        ("5 T eigenvalues", eigenvalues),
        ("6 S eigenvalues", s_operator),
        ("7 moment equality", moments),
        ("8 interpolation bound", interpolation),
        ("9 graph product", graph_product),
        ("10 reduction completeness", completeness),
        ("11 soundness decoder", soundness),
        ("12 xi gap", xi_gap),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("PASS {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg} ({secs:.1}s)");
            }
        }
    }
    // the smoothing pipeline has no numbered criterion but is exercised end to end here too
    match pipeline_smoke() {
        Ok(msg) => println!("info pipeline: {msg}"),
        Err(msg) => {
            failed += 1;
            println!("FAIL pipeline: {msg}");
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
