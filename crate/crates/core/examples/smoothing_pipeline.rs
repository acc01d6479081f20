//! Smoothing, truncating and lifting a pair of functions on `P(r, 2d)` to the
//! full space, and how well the three targets are met.
//!
//! The targets are: means move by at most `eps`, low-degree influences grow by
//! at most `eps`, and the noisy inner product changes by at most `eps`. The
//! last one needs `d` large compared to `log(1/eps)`. Random inputs are close
//! to constant and pass easily. A dictator at `eps = 0.1` fails for both
//! `d = 1` and `d = 2`: the smoothing erases it, and its noisy inner product 0
//! turns into the product of the means, 1/9.

use lowdeg::cayley::*;
use lowdeg::fourier::{dictator, GroupFn};
use lowdeg::gf3poly::{Gf3, PolySpace};
use num_complex::Complex64;
use rand::Rng;

fn main() -> lowdeg::Result<()> {
    let mut g = lowdeg::rng::seeded(8);
    println!("input     d  eps    t   mean margin  influence margin  inner margin  passed");
    for d in [1, 2] {
        let space = PolySpace::new(2, 2 * d)?;
        let a = GroupFn::from_fn(&space, |_| Complex64::new(g.gen(), 0.0))?;
        let b = GroupFn::from_fn(&space, |_| Complex64::new(g.gen(), 0.0))?;
        let dict = dictator(&space, 4, &[Gf3::ONE])?;
        for (name, a, b) in [("random", &a, &b), ("dictator", &dict, &dict)] {
            for eps in [0.5, 0.25, 0.1] {
                let rep = key_lemma_pipeline(a, b, eps, 1)?.report;
                println!(
                    "{name:<8} {d:>2} {eps:>4} {:>4} {:>13.5} {:>17.5} {:>13.5}  {}",
                    rep.t, rep.mean_margin, rep.influence_margin, rep.inner_margin, rep.passed
                );
            }
        }
    }

    // one round of S moves the noisy inner product by at most 2dt / 3^d
    let t_op = CayleyOp::t_rd(2, 1)?;
    let s_op = CayleyOp::s_rd(2, 1)?;
    let space = t_op.group().clone();
    let a = GroupFn::from_fn(&space, |_| Complex64::new(g.gen_range(0..2) as f64, 0.0))?;
    let b = GroupFn::from_fn(&space, |_| Complex64::new(g.gen_range(0..2) as f64, 0.0))?;
    for t in 0..=3 {
        let rep = noise_interpolation_check(&t_op, &s_op, &a, &b, t, 1e-9)?;
        println!(
            "t = {t}: |<A,TB> - <S^t A, T S^t B>| = {:.5} <= {:.5}",
            rep.lhs, rep.bound
        );
    }
    Ok(())
}
