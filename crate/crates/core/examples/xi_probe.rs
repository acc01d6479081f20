//! How well `P(r, d)` fools the squared distance to `[0, 1]`.
//!
//! For a real degree-one `P` on the full space with `||P||_2 = 1`, compare the
//! mean of `xi(P(f)) = dist(P(f), [0, 1])^2` over all functions with its mean
//! over `P(r, d)`. The gap shrinks quickly with `d` and vanishes at `d = 2r`.

use lowdeg::cayley::*;

fn main() -> lowdeg::Result<()> {
    let r = 2;
    let mut g = lowdeg::rng::seeded(4);
    let probes: Vec<_> = (0..20).map(|_| random_unit_degree_one(r, &mut g)).collect();
    println!(" d  mean gap    max gap    mean E_F xi");
    for d in 0..=2 * r {
        let reps: Vec<XiReport> = probes
            .iter()
            .map(|p| xi_gap_probe(p, d))
            .collect::<lowdeg::Result<_>>()?;
        let n = reps.len() as f64;
        let mean = reps.iter().map(|x| x.gap).sum::<f64>() / n;
        let max = reps.iter().map(|x| x.gap).fold(0.0, f64::max);
        let full = reps.iter().map(|x| x.full).sum::<f64>() / n;
        println!("{d:>2} {mean:>9.2e} {max:>10.2e} {full:>12.5}");
    }
    Ok(())
}
