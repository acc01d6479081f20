//! Low moments of sparse spectra agree on `P(r, 2d)` and on all functions.
//!
//! For `B` built from characters of support at most `t`, the `2k`-th moment on
//! `P(r, 2d)` equals the one on the full space whenever `2kt <= 3^(d-1)`.
//! Both sides are computed exactly from the spectrum, and the subspace side is
//! also sampled directly as a sanity check. Past the bound the sides can only
//! differ when the supports combine into a nonzero affine function, which
//! needs at least 54 points at `r = 4`, so random spectra still agree.

use lowdeg::cayley::*;

fn main() -> lowdeg::Result<()> {
    let (r, d, k) = (4, 3, 2);
    let mut g = lowdeg::rng::seeded(3);
    println!("r = {r}, d = {d}, k = {k}");
    println!(
        " t  hypothesis  E_P |B|^4   E_F |B|^4   exact gap  sampled (+- 3 se)  ||B||_4/||B||_2"
    );
    for t in 1..=4 {
        let b = random_sparse_spectrum(r, t, 6, &mut g);
        let m = moment_check(&b, d, k)?;
        let mc = moment_monte_carlo(&b, d, k, 100_000, t as u64)?;
        let h = hypercontractivity_ratio(&b, d)?;
        println!(
            "{t:>2} {:>11} {:>10.5} {:>11.5} {:>11.2e} {:>9.5} +- {:<6.4} {:>10.4}",
            m.hypothesis_holds,
            m.poly_side,
            m.full_side,
            m.gap,
            mc.mean,
            3.0 * mc.stderr,
            h.ratio
        );
    }
    Ok(())
}
