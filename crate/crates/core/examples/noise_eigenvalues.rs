//! Eigenvalues of the derandomized noise `a(p^2 + 1)` against the full-space
//! noise, grouped by the support of the character.
//!
//! On the full space every character of support `s` has eigenvalue
//! `(-1/2)^s`. The derandomized operator matches this on support one, follows
//! a product formula while the points stay independent under `P(r, d)`, and
//! beyond that is only bounded, not small, at these sizes.

use std::collections::BTreeMap;

use lowdeg::cayley::*;

fn main() -> lowdeg::Result<()> {
    for (r, d) in [(2, 1), (2, 2)] {
        let rep = verify_eigval_T(r, d, 1e-9)?;
        println!("T on P({r},{}), noise drawn from P({r},{d})", 2 * d);
        println!("support  count  full-space  derandomized (min .. max)");
        let mut rows: BTreeMap<usize, (usize, f64, f64, f64)> = BTreeMap::new();
        for row in &rep.rows {
            let e = rows.entry(row.support).or_insert((
                0,
                row.lambda_r,
                f64::INFINITY,
                f64::NEG_INFINITY,
            ));
            e.0 += 1;
            e.2 = e.2.min(row.lambda_rd);
            e.3 = e.3.max(row.lambda_rd);
        }
        for (s, (n, full, lo, hi)) in rows {
            println!("{s:>7} {n:>6} {full:>11.5}  {lo:>9.5} .. {hi:.5}");
        }
        println!(
            "weight-one equality: {}, product formula: {}, all small supports equal: {}\n",
            rep.equality_holds_weight_one, rep.independent_form_holds, rep.equality_holds
        );
    }

    let rep = verify_eigval_S(2, 1, 1e-9)?;
    let worst = rep
        .rows
        .iter()
        .map(|r| r.rho - r.lower_bound)
        .fold(f64::INFINITY, f64::min);
    println!(
        "S on P(2,2): lower bound holds = {}, smallest slack {worst:.2e}",
        rep.lower_bound_holds
    );
    Ok(())
}
