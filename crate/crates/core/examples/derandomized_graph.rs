//! The derandomized graph on `P(2, 2)` and its independent sets.
//!
//! Dictator sets `{f : f(x) = a}` are maximum independent sets of density
//! 1/3. Every independent set satisfies an exact spectral identity, and those
//! of density close to 1/3 have little Fourier weight above support one.

use lowdeg::gf3poly::Gf3;
use lowdeg::graphprod::*;

fn main() -> lowdeg::Result<()> {
    let g = DerandGraph::new(2, 1)?;
    println!(
        "{} vertices, {} noise elements, edge weights over {}",
        g.num_vertices(),
        g.noise().support.len(),
        g.denominator()
    );
    let tri = triangle_partition_check(&g)?;
    println!(
        "{} triangles {{f, f+1, f+2}} partition the vertices: {}",
        tri.triangles, tri.partition
    );

    let mis = exhaustive_mis(&g)?;
    println!("maximum independent set: {} vertices", mis.len());

    println!("\nset                     size  identity gap  E X      tail above 1  bound");
    let dict = g.dictator_set(4, Gf3::TWO)?;
    show(&g, "dictator x=4, a=2", &dict)?;
    for seed in 0..4 {
        show(
            &g,
            &format!("greedy, seed {seed}"),
            &greedy_independent_set(&g, seed),
        )?;
    }
    let mut trimmed = dict.clone();
    for f in dict.iter().take(30).collect::<Vec<_>>() {
        trimmed.remove(f);
    }
    show(&g, "dictator minus 30", &trimmed)
}

fn show(g: &DerandGraph, name: &str, s: &VertexSubset) -> lowdeg::Result<()> {
    let id = independence_identity(g, s)?;
    let c = fourier_concentration(g, s, 1e-9)?;
    println!(
        "{name:<22} {:>5}  {:>12.2e}  {:>7.4}  {:>12.5}  {:.5}",
        s.len(),
        id.gap,
        id.ex.unwrap_or(f64::NAN),
        c.tail,
        c.bound
    );
    Ok(())
}
