use lowdeg::fourier::*;
use lowdeg::gf3poly::{all_points, point_index, FnTable, Gf3, PolySpace};
use lowdeg::rng;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

const TOL: f64 = 1e-9;

/// The transform straight from its definition: `E_g A(g) conj(chi_beta(g))`,
/// evaluating `<beta, g>` as a sum over points.
fn naive_transform(space: &PolySpace, reps: &CosetTable, a: &GroupFn) -> Vec<Complex64> {
    let tables: Vec<FnTable> = (0..space.len()).map(|g| space.table(g)).collect();
    reps.reps
        .iter()
        .map(|rep| {
            let s: Complex64 = tables
                .iter()
                .zip(&a.values)
                .map(|(t, v)| v * omega_pow(rep.beta.inner_product(t).unwrap().value()).conj())
                .sum();
            s / space.len() as f64
        })
        .collect()
}

fn random_complex(space: &PolySpace, seed: u64) -> GroupFn {
    let mut g = rng::seeded(seed);
    GroupFn::from_fn(space, |_| {
        Complex64::new(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0))
    })
    .unwrap()
}

#[test]
fn character_examples() {
    let space = PolySpace::new(2, 2).unwrap();
    let zero = FnTable::zeros(2);
    for f in 0..space.len() {
        assert_eq!(
            character(&zero, &space.poly(f)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }
    // adding a dual element (degree <= 1 at (2,2)) leaves the character unchanged
    let dual = PolySpace::new(2, 1).unwrap();
    let mut g = rng::seeded(1);
    for _ in 0..20 {
        let beta =
            FnTable::from_values(2, (0..9).map(|_| Gf3::new(g.gen_range(0..3))).collect()).unwrap();
        let shifted = beta.add(&dual.table(dual.random_index(&mut g))).unwrap();
        assert_eq!(
            character_table(&space, &beta).unwrap(),
            character_table(&space, &shifted).unwrap()
        );
        for f in 0..space.len() {
            let direct = character(&shifted, &space.poly(f)).unwrap();
            assert!((direct - character(&beta, &space.poly(f)).unwrap()).norm() < TOL);
        }
    }
}

#[test]
fn coset_rep_examples() {
    let t = coset_reps(1, 1).unwrap();
    assert_eq!(t.len(), 9);
    assert_eq!(t.rep(0).support, 0);
    assert!(t.rep(0).beta.is_zero());
    let t = coset_reps(2, 2).unwrap();
    assert_eq!(t.len(), 729);
    // representatives of support <= 1 are pairwise distinct functions
    let small: Vec<&FnTable> = t
        .reps
        .iter()
        .filter(|r| r.support <= 1)
        .map(|r| &r.beta)
        .collect();
    assert_eq!(small.len(), 1 + 9 * 2);
    for i in 0..small.len() {
        for j in i + 1..small.len() {
            assert_ne!(small[i], small[j]);
        }
    }
}

#[test]
fn reps_have_minimum_support_in_their_coset() {
    let (r, d) = (2, 2);
    let space = PolySpace::new(r, d).unwrap();
    let reps = coset_reps(r, d).unwrap();
    // independent oracle: scan all 3^9 functions and keep the lightest per coset
    let mut best = vec![usize::MAX; space.len()];
    for i in 0..3usize.pow(9) {
        let mut v = Vec::with_capacity(9);
        let mut x = i;
        for _ in 0..9 {
            v.push(Gf3::new((x % 3) as u8));
            x /= 3;
        }
        let beta = FnTable::from_values(r, v).unwrap();
        let id = space.coset_id(&beta).unwrap();
        best[id] = best[id].min(beta.support());
    }
    for rep in &reps.reps {
        assert_eq!(rep.support, best[rep.coset_id]);
        assert_eq!(space.coset_id(&rep.beta).unwrap(), rep.coset_id);
        assert_eq!(distance_to_dual(&rep.beta, r, d).unwrap(), rep.support);
    }
}

#[test]
fn transform_examples() {
    let space = PolySpace::new(2, 2).unwrap();
    let c = Complex64::new(0.3, -0.7);
    let s = fourier_transform(&space, &GroupFn::constant(&space, c).unwrap()).unwrap();
    assert!((s.coeff(0) - c).norm() < TOL);
    assert!(s.coeffs[1..].iter().all(|z| z.norm() < TOL));
    let reps = coset_reps(2, 2).unwrap();
    let b0 = &reps.rep(40).beta;
    let chi = GroupFn::new(&space, character_table(&space, b0).unwrap()).unwrap();
    let s = fourier_transform(&space, &chi).unwrap();
    for (i, z) in s.coeffs.iter().enumerate() {
        let want = if i == 40 { 1.0 } else { 0.0 };
        assert!((z - want).norm() < TOL);
    }
}

#[test]
fn dictator_spectrum() {
    let space = PolySpace::new(2, 2).unwrap();
    for x in 0..9 {
        let a = dictator(&space, x, &[Gf3::ZERO]).unwrap();
        let s = fourier_transform(&space, &a).unwrap();
        let e1 = space
            .coset_id(&FnTable::indicator_at(2, x, Gf3::ONE))
            .unwrap();
        let e2 = space
            .coset_id(&FnTable::indicator_at(2, x, Gf3::TWO))
            .unwrap();
        for (i, z) in s.coeffs.iter().enumerate() {
            let want = if i == 0 || i == e1 || i == e2 {
                1.0 / 3.0
            } else {
                0.0
            };
            assert!((z - want).norm() < TOL, "x={x} coset {i}: {z}");
        }
        let inf = influences(&space, &s, 1).unwrap();
        for (y, v) in inf.iter().enumerate() {
            let want = if y == x { 2.0 / 9.0 } else { 0.0 };
            assert!((v - want).abs() < TOL);
        }
        assert!((influence(&space, &s, x, 1).unwrap() - 2.0 / 9.0).abs() < TOL);
    }
}

#[test]
fn parseval_examples() {
    let space = PolySpace::new(2, 2).unwrap();
    let zero = GroupFn::constant(&space, Complex64::new(0.0, 0.0)).unwrap();
    let rep = parseval_check(&space, &zero).unwrap();
    assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
    let mut g = rng::seeded(2);
    let boolean =
        GroupFn::from_fn(&space, |_| Complex64::new(g.gen_range(0..2) as f64, 0.0)).unwrap();
    assert!(parseval_check(&space, &boolean).unwrap().gap < TOL);
    let reps = coset_reps(2, 2).unwrap();
    let chi = GroupFn::new(
        &space,
        character_table(&space, &reps.rep(100).beta).unwrap(),
    )
    .unwrap();
    assert!((parseval_check(&space, &chi).unwrap().lhs - 1.0).abs() < TOL);
}

#[test]
fn influence_examples_and_bounds() {
    let space = PolySpace::new(2, 2).unwrap();
    let s = fourier_transform(
        &space,
        &GroupFn::constant(&space, Complex64::new(0.4, 0.0)).unwrap(),
    )
    .unwrap();
    assert!(influences(&space, &s, 1)
        .unwrap()
        .iter()
        .all(|&v| v.abs() < TOL));
    assert_eq!(max_influence_degree(2), 1);
    assert!(matches!(
        influences(&space, &s, 2),
        Err(lowdeg::Error::InfluenceDegree { .. })
    ));
    let space = PolySpace::new(2, 3).unwrap();
    for seed in 0..5 {
        let a = random_complex(&space, seed);
        let s = fourier_transform(&space, &a).unwrap();
        let k = max_influence_degree(3);
        let total: f64 = influences(&space, &s, k).unwrap().iter().sum();
        let nonconst: f64 = s.coeffs[1..].iter().map(|z| z.norm_sqr()).sum();
        assert!(total <= k as f64 * nonconst + TOL);
    }
}

#[test]
fn nearest_dictator_examples() {
    let space = PolySpace::new(2, 2).unwrap();
    let a = dictator(&space, 4, &[Gf3::ONE]).unwrap();
    let nd = nearest_dictator(&space, &a).unwrap();
    assert!(nd.distance < TOL);
    assert_eq!(nd.point, 4);
    assert_eq!(nd.set, vec![Gf3::ONE]);
    // flipping m inputs moves the dictator by sqrt(m / N)
    let n = space.len() as f64;
    let mut flipped = a.clone();
    let mut last = 0.0;
    for m in 1..=8 {
        let i = m * 37;
        flipped.values[i] = Complex64::new(1.0 - flipped.values[i].re, 0.0);
        let d = nearest_dictator(&space, &flipped).unwrap().distance;
        if m == 1 {
            assert!((d * d - 1.0 / n).abs() < TOL);
        }
        assert!(d >= last - TOL);
        last = d;
    }
}

#[test]
fn distance_to_dual_examples() {
    for x in all_points(2) {
        let e = FnTable::indicator(2, &x, Gf3::ONE);
        assert_eq!(distance_to_dual(&e, 2, 2).unwrap(), 1);
    }
    let dual = PolySpace::new(2, 1).unwrap();
    for i in 0..dual.len() {
        assert_eq!(distance_to_dual(&dual.table(i), 2, 2).unwrap(), 0);
    }
    let mut g = rng::seeded(3);
    let e = FnTable::indicator_at(4, 5, Gf3::ONE);
    let sampled = distance_to_dual_sampled(&e, 4, 1, 2000, &mut g).unwrap();
    assert!(!sampled.exact);
    // an upper bound on the true distance, which is the support 1
    assert!(sampled.distance >= 1);
    assert_eq!(point_index(&[Gf3::TWO, Gf3::ONE]), 5);
}

#[test]
fn spectrum_csv_layout() {
    let space = PolySpace::new(1, 1).unwrap();
    let reps = coset_reps(1, 1).unwrap();
    let s = fourier_transform(&space, &random_complex(&space, 5)).unwrap();
    let mut buf = Vec::new();
    reps.write_spectrum_csv(&s, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("coset_id,support,re,im"));
    assert_eq!(lines.count(), 9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transform_matches_definition(seed in any::<u64>(), d in 0usize..=3) {
        let space = PolySpace::new(2, d).unwrap();
        let reps = coset_reps(2, d).unwrap();
        let a = random_complex(&space, seed);
        let fast = fourier_transform(&space, &a).unwrap();
        let slow = naive_transform(&space, &reps, &a);
        for (x, y) in fast.coeffs.iter().zip(&slow) {
            prop_assert!((x - y).norm() < TOL);
        }
        let back = inverse_transform(&space, &fast).unwrap();
        prop_assert!(back.max_abs_diff(&a) < TOL);
        prop_assert!(parseval_check(&space, &a).unwrap().gap < TOL);
    }

    #[test]
    fn real_functions_have_conjugate_symmetric_spectra(seed in any::<u64>()) {
        let space = PolySpace::new(2, 2).unwrap();
        let mut g = rng::seeded(seed);
        let a = GroupFn::from_fn(&space, |_| Complex64::new(g.gen(), 0.0)).unwrap();
        let s = fourier_transform(&space, &a).unwrap();
        prop_assert!(conjugate_symmetry_gap(&space, &s) < TOL);
    }

    #[test]
    fn characters_are_homomorphisms(seed in any::<u64>()) {
        let space = PolySpace::new(2, 3).unwrap();
        let mut g = rng::seeded(seed);
        let beta = FnTable::from_values(2, (0..9).map(|_| Gf3::new(g.gen_range(0..3))).collect()).unwrap();
        let (f, h) = (space.random_index(&mut g), space.random_index(&mut g));
        let sum = space.poly(space.add(f, h));
        let lhs = character(&beta, &sum).unwrap();
        let rhs = character(&beta, &space.poly(f)).unwrap() * character(&beta, &space.poly(h)).unwrap();
        prop_assert!((lhs - rhs).norm() < TOL);
    }
}

#[test]
fn characters_are_orthonormal() {
    for (r, d) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let space = PolySpace::new(r, d).unwrap();
        let reps = coset_reps(r, d).unwrap();
        assert!(orthonormality_gap(&space, &reps).unwrap() < TOL);
    }
}
