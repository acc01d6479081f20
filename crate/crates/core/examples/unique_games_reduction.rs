//! From a Unique Games instance to a coloring of the long-code graph and back.
//!
//! A planted instance has a labeling `l` satisfying every constraint, and
//! `(v, f) -> f(l(v))` then properly 3-colors the coloring graph. One color
//! class is an independent set, and reading influences off each cloud
//! recovers the planted labels. Re-randomizing some constraints breaks both.

use lowdeg::gf3poly::Gf3;
use lowdeg::ugreduce::*;

fn main() -> lowdeg::Result<()> {
    let mut g = lowdeg::rng::seeded(2);
    let params = GenParams::default();
    let (inst, lab) = planted_instance(params, &mut g)?;
    let c = ColoringInstance::new(&inst, 1)?;
    println!(
        "|U| = {}, |V| = {}, {} constraints, coloring graph on {} vertices",
        inst.u.len(),
        inst.v.len(),
        inst.edges.len(),
        c.num_vertices()
    );

    let coloring = completeness_color(&c, &lab, &inst.v)?;
    let r = &coloring.report;
    println!(
        "planted labeling: {} edges checked, {} monochromatic, proper = {}",
        r.edges_checked, r.violations, r.proper
    );

    let indep = CloudSubset::from_labeling(&c, &lab, Gf3::ZERO)?;
    let dec = soundness_decode(&c, &indep, 0.5, 0.1, 1, 50, 0)?;
    println!(
        "decoded from color class 0 ({} vertices): |J| = {}, satisfied fraction {:.3} (min {:.3})",
        indep.len(),
        dec.j_size,
        dec.mean_satisfied,
        dec.min_satisfied
    );
    for (vd, id) in dec.vertices.iter().zip(&inst.v).take(3) {
        println!(
            "  {id}: planted {:?}, candidates {:?}",
            lab.get(id).unwrap(),
            vd.candidates
        );
    }

    let noisy = noisy_instance(&inst, 0.5, &mut g);
    let frac = satisfied_fraction(&noisy, &lab)?;
    println!("\nafter re-randomizing half the constraints the planted labeling satisfies {frac}");
    let c = ColoringInstance::new(&noisy, 1)?;
    match completeness_color(&c, &lab, &noisy.v) {
        Err(e) => println!("coloring refused: {e}"),
        Ok(col) => println!("coloring proper = {}", col.report.proper),
    }
    let random = random_labeling(&noisy, &mut g);
    println!(
        "a random labeling satisfies {}",
        satisfied_fraction(&noisy, &random)?
    );
    Ok(())
}
