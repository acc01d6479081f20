//! Dimensions, duals and independence of the spaces `P(r, d)`.
//!
//! Run with `cargo run --example polynomial_spaces`.

use lowdeg::gf3poly::*;
use lowdeg::rng;

fn main() -> lowdeg::Result<()> {
    println!(" r  d   dim  dual  min nonzero  independence");
    for r in 1..=3 {
        for d in 0..=2 * r {
            let dual = verify_dual(r, d)?;
            let sz = if d < 2 * r {
                format!("{}", min_weight(r, d))
            } else {
                "-".into()
            };
            println!(
                "{r:>2} {d:>2} {:>5} {:>5} {sz:>12} {:>13}",
                dual.dim_space,
                dual.dim_dual,
                exact_independence(r, d)
            );
        }
    }

    // affine functions on F3^2 are uniform on any two points but not on a line
    let mut g = rng::seeded(1);
    let line: Vec<Vec<Gf3>> = (0..3).map(|i| vec![Gf3::new(i), Gf3::ONE]).collect();
    let rep = kwise_check(2, 1, &line, KwiseMode::Exact, &mut g)?;
    let seen = rep.counts.iter().filter(|&&c| c > 0).count();
    println!(
        "\nP(2,1) on a line: {seen} of {} patterns occur",
        rep.counts.len()
    );

    let p = random_poly(2, 2, &mut g)?;
    println!("random element of P(2,2): {}", show(&p));
    println!(
        "its value table: {:?}",
        p.to_table()
            .values()
            .iter()
            .map(|v| v.value())
            .collect::<Vec<_>>()
    );
    Ok(())
}

fn show(p: &Poly) -> String {
    let terms: Vec<String> = p
        .terms()
        .map(|(m, c)| {
            let vars: String = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{e}")
                    }
                })
                .collect();
            match (c.value(), vars.is_empty()) {
                (1, false) => vars,
                (v, _) => format!("{v}{vars}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
