use num_complex::Complex64;

use crate::error::Result;
use crate::gf3poly::{FnTable, Poly, PolySpace};

/// `omega^k` for the primitive cube root of unity `omega = exp(2 pi i / 3)`.
pub fn omega_pow(k: u8) -> Complex64 {
    const H: f64 = 0.866_025_403_784_438_6;
    match k % 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(-0.5, H),
        _ => Complex64::new(-0.5, -H),
    }
}

/// `chi_beta(f) = omega^<beta, f>`.
pub fn character(beta: &FnTable, f: &Poly) -> Result<Complex64> {
    let ip = beta.inner_product(&f.to_table())?;
    Ok(omega_pow(ip.value()))
}

/// Values of `chi_beta` on every element of an enumerable space.
pub fn character_table(space: &PolySpace, beta: &FnTable) -> Result<Vec<Complex64>> {
    let id = space.coset_id(beta)?;
    Ok((0..space.len())
        .map(|g| omega_pow(space.pairing(id, g)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3poly::{random_poly, Gf3};
    use crate::rng;

    #[test]
    fn cube_roots() {
        let w = omega_pow(1);
        assert!((w * w * w - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((omega_pow(0) + omega_pow(1) + omega_pow(2)).norm() < 1e-12);
    }

    #[test]
    fn zero_beta_is_trivial() {
        let mut g = rng::seeded(3);
        for _ in 0..20 {
            let f = random_poly(2, 2, &mut g).unwrap();
            assert_eq!(character(&FnTable::zeros(2), &f).unwrap(), omega_pow(0));
        }
    }

    #[test]
    fn character_is_multiplicative() {
        let mut g = rng::seeded(4);
        for _ in 0..50 {
            let f = random_poly(2, 2, &mut g).unwrap();
            let h = random_poly(2, 2, &mut g).unwrap();
            let beta = random_poly(2, 4, &mut g).unwrap().to_table();
            let lhs = character(&beta, &f.add(&h).unwrap()).unwrap();
            let rhs = character(&beta, &f).unwrap() * character(&beta, &h).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
        let _ = Gf3::ONE;
    }
}
