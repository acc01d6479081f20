//! The Fourier spectrum of a dictator on `P(2, 2)` and what noise does to it.
//!
//! A dictator `f -> [f(x) = 1]` has all its weight on the characters of
//! support at most one, and its degree-1 influence sits entirely on `x`.
//! Flipping a few inputs spreads weight to higher supports and moves the
//! function away from the nearest dictator.

use lowdeg::fourier::*;
use lowdeg::gf3poly::{Gf3, PolySpace};
use num_complex::Complex64;
use rand::seq::index::sample;

fn main() -> lowdeg::Result<()> {
    let space = PolySpace::new(2, 2)?;
    let reps = coset_reps(2, 2)?;
    let a = dictator(&space, 4, &[Gf3::ONE])?;
    report("dictator at x = 4", &space, &reps, &a)?;

    let mut noisy = a.clone();
    let mut g = lowdeg::rng::seeded(5);
    for i in sample(&mut g, space.len(), 40) {
        noisy.values[i] = Complex64::new(1.0 - noisy.values[i].re, 0.0);
    }
    report("same, 40 inputs flipped", &space, &reps, &noisy)
}

fn report(name: &str, space: &PolySpace, reps: &CosetTable, a: &GroupFn) -> lowdeg::Result<()> {
    let s = fourier_transform(space, a)?;
    let top = reps.reps.iter().map(|r| r.support).max().unwrap_or(0);
    let mut by_support = vec![0.0f64; top + 1];
    for (i, c) in s.coeffs.iter().enumerate() {
        by_support[reps.support(i)] += c.norm_sqr();
    }
    println!("{name}");
    println!("  Fourier weight by support: {by_support:.4?}");
    let inf = influences(space, &s, max_influence_degree(2))?;
    println!("  degree-1 influences:       {inf:.4?}");
    let nd = nearest_dictator(space, a)?;
    println!(
        "  nearest dictator: x = {}, set {:?}, distance {:.4}",
        nd.point, nd.set, nd.distance
    );
    let p = parseval_check(space, a)?;
    println!(
        "  Parseval: E|A|^2 = {:.6}, sum |A^|^2 = {:.6}\n",
        p.lhs, p.rhs
    );
    Ok(())
}
