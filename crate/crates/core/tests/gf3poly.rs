use lowdeg::gf3poly::*;
use lowdeg::rng;
use num_rational::Ratio;
use proptest::prelude::*;

fn g(v: u8) -> Gf3 {
    Gf3::new(v)
}

/// Evaluation straight from the definition, independent of the table code.
fn naive_eval(p: &Poly, x: &[Gf3]) -> u8 {
    let mut acc = 0u32;
    for (m, c) in p.terms() {
        let mut term = c.value() as u32;
        for (i, &e) in m.exps().iter().enumerate() {
            term *= (x[i].value() as u32).pow(e as u32);
        }
        acc += term;
    }
    (acc % 3) as u8
}

fn poly(r: usize, d: usize, terms: &[(&[u8], u8)]) -> Poly {
    Poly::from_terms(r, d, terms.iter().map(|(e, c)| (e.to_vec(), g(*c)))).unwrap()
}

#[test]
fn evaluation_examples() {
    let one = Poly::constant(2, 0, Gf3::ONE);
    for x in all_points(2) {
        assert_eq!(poly_eval(&one, &x).unwrap(), Gf3::ONE);
    }
    let p = poly(2, 2, &[(&[2, 0], 1), (&[0, 0], 1)]);
    assert_eq!(poly_eval(&p, &[g(1), g(0)]).unwrap(), g(2));
    let xy = poly(2, 2, &[(&[1, 1], 1)]);
    assert_eq!(poly_to_table(&xy).support(), 4);
    assert!(poly_eval(&xy, &[g(1)]).is_err());
}

#[test]
fn point_indicator_has_degree_2r() {
    for r in 1..=3 {
        for (idx, x) in all_points(r).enumerate() {
            // prod_i (1 - (X_i - x_i)^2), expanded by multiplying factors
            let mut p = Poly::constant(r, 2 * r, Gf3::ONE);
            for (i, &xi) in x.iter().enumerate() {
                let shifted = Poly::var(r, 2 * r, i)
                    .sub(&Poly::constant(r, 2 * r, xi))
                    .unwrap();
                let factor = Poly::constant(r, 2 * r, Gf3::ONE)
                    .sub(&shifted.square_reduce().with_bound(2 * r).unwrap())
                    .unwrap();
                p = p.mul_reduced(&factor).unwrap();
            }
            assert_eq!(poly_to_table(&p), FnTable::indicator_at(r, idx, Gf3::ONE));
            assert_eq!(
                table_to_poly(&FnTable::indicator_at(r, idx, Gf3::ONE)).degree(),
                Some(2 * r)
            );
        }
    }
    assert!(table_to_poly(&FnTable::zeros(2)).is_zero());
    assert!(poly_to_table(&Poly::zero(2, 4)).is_zero());
}

#[test]
fn basis_sizes_match_enumeration() {
    let brute = |r: usize, d: usize| {
        (0..pow3(r))
            .filter(|&i| {
                point_from_index(r, i)
                    .iter()
                    .map(|v| v.value() as usize)
                    .sum::<usize>()
                    <= d
            })
            .count()
    };
    assert_eq!(basis(2, 2).unwrap().len(), 6);
    assert_eq!(basis(1, 2).unwrap().len(), 3);
    assert_eq!(PolySpace::new(1, 2).unwrap().len(), 27);
    assert_eq!(basis(4, 3).unwrap().len(), 31);
    for r in 0..=4 {
        for d in 0..=2 * r {
            assert_eq!(basis(r, d).unwrap().len(), brute(r, d), "r={r} d={d}");
        }
    }
    assert!(basis(2, 5).is_err());
    let b = basis(2, 2).unwrap();
    let degs: Vec<usize> = b.iter().map(|m| m.degree()).collect();
    assert!(degs.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn square_reduce_examples() {
    let x = Poly::var(2, 1, 0);
    assert_eq!(square_reduce(&x), poly(2, 2, &[(&[2, 0], 1)]));
    let x2 = poly(1, 2, &[(&[2], 1)]);
    assert_eq!(square_reduce(&x2).with_bound(2).unwrap(), x2);
}

#[test]
fn dual_examples() {
    let rep = verify_dual(2, 2).unwrap();
    assert_eq!(rep.dim_dual, 3);
    assert_eq!(rep.dim_space + rep.dim_dual, 9);
    assert!(rep.passed);
    let rep = verify_dual(1, 0).unwrap();
    assert!(rep.passed);
    assert_eq!((rep.dim_space, rep.dim_dual, rep.pairs_checked), (1, 2, 2));
    assert!(dual_space(3, 6).unwrap().is_empty());
    assert!(verify_dual(2, 6).is_err());
}

#[test]
fn dual_inner_products_by_brute_force() {
    // every element of P(2,1) against every element of P(2,2), evaluated naively
    let a = PolySpace::new(2, 1).unwrap();
    let b = PolySpace::new(2, 2).unwrap();
    for i in 0..a.len() {
        for j in 0..b.len() {
            let (p, q) = (a.poly(i), b.poly(j));
            let s: u32 = all_points(2)
                .map(|x| (naive_eval(&p, &x) * naive_eval(&q, &x)) as u32)
                .sum();
            assert_eq!(s % 3, 0);
        }
    }
}

#[test]
fn schwartz_zippel_examples() {
    assert_eq!(
        schwartz_zippel_min(2, 1).unwrap().min_fraction,
        Ratio::new(2, 3)
    );
    let rep = schwartz_zippel_min(1, 2).unwrap();
    assert_eq!(rep.min_fraction, Ratio::new(1, 3));
    assert!(rep.tight);
    // brute force over coefficient vectors with naive evaluation
    for (r, d) in [(2, 1), (2, 2), (2, 3)] {
        let space = PolySpace::new(r, d).unwrap();
        let best = (1..space.len())
            .map(|i| {
                let p = space.poly(i);
                all_points(r).filter(|x| naive_eval(&p, x) != 0).count()
            })
            .min()
            .unwrap();
        assert_eq!(
            schwartz_zippel_min(r, d).unwrap().min_fraction,
            Ratio::new(best as u64, pow3(r) as u64)
        );
        assert_eq!(best, min_weight(r, d));
    }
}

#[test]
fn kwise_examples() {
    let mut rng = rng::seeded(4);
    for x in all_points(2) {
        let rep = kwise_check(2, 1, &[x], KwiseMode::Exact, &mut rng).unwrap();
        assert_eq!(rep.counts, vec![9, 9, 9]);
    }
    let triple = [vec![g(0), g(0)], vec![g(1), g(0)], vec![g(0), g(1)]];
    let rep = kwise_check(2, 1, &triple, KwiseMode::Exact, &mut rng).unwrap();
    assert!(rep.uniform && rep.counts.iter().all(|&c| c == 1));
    assert!(
        kwise_check(2, 1, &[], KwiseMode::Exact, &mut rng)
            .unwrap()
            .uniform
    );
    let sampled = kwise_check(
        2,
        1,
        &triple,
        KwiseMode::Sampled { samples: 27_000 },
        &mut rng,
    )
    .unwrap();
    assert!(sampled.uniform && !sampled.exact);
}

#[test]
fn guarantee_is_one_too_large_for_odd_degree() {
    // three collinear points: affine functions see only 9 of 27 patterns
    let mut rng = rng::seeded(4);
    let line = [vec![g(0), g(1)], vec![g(1), g(1)], vec![g(2), g(1)]];
    let rep = kwise_check(2, 1, &line, KwiseMode::Exact, &mut rng).unwrap();
    assert_eq!(rep.guarantee, 3);
    assert!(rep.within_guarantee && !rep.uniform);
    assert_eq!(exact_independence(2, 1), 2);
    // for even degree the guarantee sits strictly inside the exact range
    assert!(independence_guarantee(2) <= exact_independence(2, 2));
    assert_eq!(exact_independence(3, 3), 8);
}

#[test]
fn serialization_round_trips() {
    let p = poly(2, 3, &[(&[1, 2], 2), (&[0, 0], 1)]);
    let s = serde_json::to_string(&p).unwrap();
    assert!(s.contains("\"terms\""));
    let q: Poly = serde_json::from_str(&s).unwrap();
    assert_eq!(p, q);
    let t = p.to_table();
    let s = serde_json::to_string(&t).unwrap();
    assert_eq!(serde_json::from_str::<FnTable>(&s).unwrap(), t);
    assert!(serde_json::from_str::<FnTable>(r#"{"r":1,"values":[0,1]}"#).is_err());
}

#[test]
fn matrix_inverse() {
    let mut rng = rng::seeded(9);
    for _ in 0..50 {
        let m = Mat::random_invertible(3, &mut rng);
        assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), Mat::identity(3));
    }
    let singular = Mat::from_rows(vec![vec![g(1), g(2)], vec![g(2), g(1)]]).unwrap();
    assert!(singular.inverse().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn table_round_trip_p34(seed in any::<u64>()) {
        let p = random_poly(3, 4, &mut rng::seeded(seed)).unwrap();
        let back = table_to_poly(&poly_to_table(&p));
        prop_assert!(back.degree().unwrap_or(0) <= 6);
        prop_assert_eq!(back.with_bound(4).unwrap(), p);
    }

    #[test]
    fn table_matches_naive_evaluation(seed in any::<u64>()) {
        let p = random_poly(3, 4, &mut rng::seeded(seed)).unwrap();
        let t = p.to_table();
        for (i, x) in all_points(3).enumerate() {
            prop_assert_eq!(t.get(i).value(), naive_eval(&p, &x));
        }
    }

    #[test]
    fn square_reduce_is_pointwise_square(seed in any::<u64>()) {
        let p = random_poly(3, 2, &mut rng::seeded(seed)).unwrap();
        let sq = square_reduce(&p);
        prop_assert!(sq.degree().unwrap_or(0) <= 4);
        let t = p.to_table();
        prop_assert_eq!(sq.to_table(), t.mul(&t).unwrap());
    }

    #[test]
    fn tables_are_linear(seed in any::<u64>()) {
        let mut rng = rng::seeded(seed);
        let p = random_poly(2, 3, &mut rng).unwrap();
        let q = random_poly(2, 3, &mut rng).unwrap();
        prop_assert_eq!(p.add(&q).unwrap().to_table(), p.to_table().add(&q.to_table()).unwrap());
    }

    #[test]
    fn inner_product_is_linear(seed in any::<u64>()) {
        let mut rng = rng::seeded(seed);
        let [b, f, h] = [0, 1, 2].map(|_| random_poly(2, 4, &mut rng).unwrap().to_table());
        let lhs = inner_product(&b, &f.add(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, inner_product(&b, &f).unwrap() + inner_product(&b, &h).unwrap());
        prop_assert_eq!(inner_product(&FnTable::zeros(2), &f).unwrap(), Gf3::ZERO);
        let x = (seed % 9) as usize;
        prop_assert_eq!(inner_product(&FnTable::indicator_at(2, x, Gf3::ONE), &f).unwrap(), f.get(x));
    }

    #[test]
    fn space_indexing_round_trips(seed in any::<u64>()) {
        let space = PolySpace::new(2, 3).unwrap();
        let mut rng = rng::seeded(seed);
        let i = space.random_index(&mut rng);
        let j = space.random_index(&mut rng);
        prop_assert_eq!(space.index_of_poly(&space.poly(i)).unwrap(), i);
        prop_assert_eq!(space.index_of_table(&space.table(i)).unwrap(), i);
        let sum = space.table(i).add(&space.table(j)).unwrap();
        prop_assert_eq!(space.table(space.add(i, j)), sum);
        prop_assert_eq!(space.sub(space.add(i, j), j), i);
    }
}
