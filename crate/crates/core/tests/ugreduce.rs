use lowdeg::gf3poly::{random_poly, Gf3, Mat, PolySpace};
use lowdeg::rng;
use lowdeg::ugreduce::*;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::Rng;

fn g(v: u8) -> Gf3 {
    Gf3::new(v)
}

/// One `u` joined to `n` copies of `v`, every constraint the identity.
fn star(r: usize, n: usize) -> UGInstance {
    let v: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = v
        .iter()
        .map(|id| UGEdge {
            u: "u".into(),
            v: id.clone(),
            matrix: Mat::identity(r),
        })
        .collect();
    UGInstance {
        r,
        u: vec!["u".into()],
        v,
        edges,
    }
}

#[test]
fn composition_with_the_identity_and_inverse() {
    let mut rng = rng::seeded(21);
    for _ in 0..20 {
        let f = random_poly(2, 3, &mut rng).unwrap();
        assert_eq!(compose_linear(&f, &Mat::identity(2)).unwrap(), f);
        let m = Mat::random_invertible(2, &mut rng);
        let there = compose_linear(&f, &m).unwrap();
        assert_eq!(compose_linear(&there, &m.inverse().unwrap()).unwrap(), f);
    }
    let singular = Mat::from_rows(vec![vec![g(1), g(1)], vec![g(2), g(2)]]).unwrap();
    assert!(compose_linear(&random_poly(2, 2, &mut rng).unwrap(), &singular).is_err());
}

#[test]
fn composition_preserves_degree() {
    let mut rng = rng::seeded(22);
    for _ in 0..100 {
        let d = rng.gen_range(0..=4);
        let f = random_poly(2, d, &mut rng).unwrap();
        let m = Mat::random_invertible(2, &mut rng);
        assert_eq!(compose_linear(&f, &m).unwrap().degree(), f.degree());
    }
}

#[test]
fn single_star_reproduces_the_graph() {
    let c = ColoringInstance::new(&star(2, 2), 1).unwrap();
    let graph = c.graph();
    let mut rng = rng::seeded(23);
    for _ in 0..2000 {
        let (f, h) = (
            rng.gen_range(0..c.cloud_size()),
            rng.gen_range(0..c.cloud_size()),
        );
        assert_eq!(c.is_edge((0, f), (0, h)), graph.adjacent(f, h));
        assert_eq!(c.is_edge((0, f), (1, h)), graph.adjacent(f, h));
    }
    let n = c.cloud_size();
    let support = graph.noise().support.len();
    // within each cloud and across the pair, every vertex has `support` neighbours
    assert_eq!(c.neighbors((0, 0)).len(), 2 * support);
    // n * support / 2 inside each cloud plus n * support across
    assert_eq!(c.explicit_edges().unwrap().len(), 2 * n * support);
}

#[test]
fn no_constraints_no_edges() {
    let inst = UGInstance {
        r: 2,
        u: vec!["u".into()],
        v: vec!["a".into(), "b".into()],
        edges: vec![],
    };
    let c = ColoringInstance::new(&inst, 1).unwrap();
    assert!(c.explicit_edges().unwrap().is_empty());
    assert_eq!(c.num_vertices(), 2 * 729);
}

#[test]
fn coloring_edges_are_symmetric() {
    let mut rng = rng::seeded(24);
    let inst = random_instance(GenParams::default(), &mut rng).unwrap();
    let c = ColoringInstance::new(&inst, 1).unwrap();
    let nv = inst.v.len();
    for _ in 0..300 {
        let a = (rng.gen_range(0..nv), rng.gen_range(0..c.cloud_size()));
        let nb = c.neighbors(a);
        for &b in nb.iter().take(5) {
            assert!(c.is_edge(a, b) && c.is_edge(b, a));
            assert!(c.neighbors(b).contains(&a));
        }
        let b = (rng.gen_range(0..nv), rng.gen_range(0..c.cloud_size()));
        assert_eq!(c.is_edge(a, b), nb.contains(&b));
        assert!(!c.is_edge(a, a));
    }
    for (ei, _) in inst.edges.iter().enumerate() {
        for f in (0..c.cloud_size()).step_by(13) {
            assert_eq!(c.push(ei, c.pull(ei, f)), f);
        }
    }
}

#[test]
fn planted_labelings_color_properly() {
    let mut rng = rng::seeded(25);
    let (inst, lab) = planted_instance(GenParams::default(), &mut rng).unwrap();
    assert_eq!(
        satisfied_fraction(&inst, &lab).unwrap(),
        Ratio::from_integer(1)
    );
    let c = ColoringInstance::new(&inst, 1).unwrap();
    let coloring = completeness_color(&c, &lab, &inst.v).unwrap();
    assert!(coloring.report.proper);
    assert_eq!(coloring.report.colored_vertices, c.num_vertices());
    assert!(coloring.report.edges_checked > 0);
    // an empty S is vacuous
    let none = completeness_color(&c, &lab, &[]).unwrap();
    assert!(none.report.proper && none.report.colored_vertices == 0);
    assert!(completeness_color(&c, &lab, &["nope".to_string()]).is_err());
}

#[test]
fn one_corrupted_constraint() {
    let mut rng = rng::seeded(26);
    let (mut inst, lab) = planted_instance(GenParams::default(), &mut rng).unwrap();
    let m = inst.edges.len() as u64;
    let e = &mut inst.edges[0];
    let lv = lab.get(&e.v).unwrap().to_vec();
    let lu = lab.get(&e.u).unwrap().to_vec();
    e.matrix = loop {
        let cand = Mat::random_invertible(2, &mut rng);
        if cand.mul_vec(&lv).unwrap() != lu {
            break cand;
        }
    };
    assert_eq!(
        satisfied_fraction(&inst, &lab).unwrap(),
        Ratio::new(m - 1, m)
    );
    let c = ColoringInstance::new(&inst, 1).unwrap();
    let v0 = inst.edges[0].v.clone();
    assert!(matches!(
        completeness_color(&c, &lab, &[v0]),
        Err(lowdeg::Error::UnsatisfiedEdge { .. })
    ));
}

#[test]
fn random_labelings_satisfy_a_ninth() {
    let mut rng = rng::seeded(27);
    let (mut ok, mut total) = (0u64, 0u64);
    for _ in 0..300 {
        let inst = random_instance(GenParams::default(), &mut rng).unwrap();
        let lab = random_labeling(&inst, &mut rng);
        for e in &inst.edges {
            ok += edge_satisfied(e, &lab).unwrap() as u64;
            total += 1;
        }
    }
    let p = ok as f64 / total as f64;
    let sigma = (1.0 / 9.0 * 8.0 / 9.0 / total as f64).sqrt();
    assert!((p - 1.0 / 9.0).abs() <= 3.0 * sigma, "p = {p}");
}

#[test]
fn decoding() {
    let mut rng = rng::seeded(28);
    let (inst, lab) = planted_instance(GenParams::default(), &mut rng).unwrap();
    let c = ColoringInstance::new(&inst, 1).unwrap();
    let empty = CloudSubset::empty(&c);
    let rep = soundness_decode(&c, &empty, 0.5, 0.1, 1, 10, 0).unwrap();
    assert_eq!(rep.j_size, 0);
    let indep = CloudSubset::from_labeling(&c, &lab, Gf3::ZERO).unwrap();
    assert!(indep.violation(&c).is_none());
    assert_eq!(indep.len(), c.num_vertices() / 3);
    let rep = soundness_decode(&c, &indep, 0.5, 0.1, 1, 20, 0).unwrap();
    assert_eq!(rep.j_size, inst.v.len());
    assert!(rep.list_bound_holds);
    for (vd, id) in rep.vertices.iter().zip(&inst.v) {
        assert_eq!(vd.candidates, vec![lab.get(id).unwrap().to_vec()]);
    }
    assert_eq!(rep.mean_satisfied, 1.0);
    let mut bad = indep.clone();
    let space: &PolySpace = c.graph().space();
    let f = (0..space.len())
        .find(|&f| {
            !indep.contains((0, f)) && c.neighbors((0, f)).iter().any(|b| indep.contains(*b))
        })
        .unwrap();
    bad.insert((0, f));
    assert!(matches!(
        soundness_decode(&c, &bad, 0.5, 0.1, 1, 5, 0),
        Err(lowdeg::Error::NotIndependent(..))
    ));
    assert!(soundness_decode(&c, &indep, 0.5, 0.0, 1, 5, 0).is_err());
}

#[test]
fn instance_json_layout() {
    let inst = star(2, 1);
    let v: serde_json::Value = serde_json::to_value(&inst).unwrap();
    assert_eq!(v["r"], 2);
    assert_eq!(v["U"][0], "u");
    assert_eq!(v["V"][0], "v0");
    assert_eq!(v["edges"][0]["matrix"], serde_json::json!([[1, 0], [0, 1]]));
    let back: UGInstance = serde_json::from_value(v).unwrap();
    assert_eq!(back, inst);
    let mut bad = inst.clone();
    bad.edges[0].matrix = Mat::from_rows(vec![vec![g(1), g(1)], vec![g(1), g(1)]]).unwrap();
    assert!(bad.validate().is_err());
    let mut dup = inst;
    dup.v.push("u".into());
    assert!(dup.validate().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_a_group_action(seed in any::<u64>()) {
        let mut rng = rng::seeded(seed);
        let f = random_poly(3, 3, &mut rng).unwrap();
        let m = Mat::random_invertible(3, &mut rng);
        let n = Mat::random_invertible(3, &mut rng);
        let lhs = compose_linear(&f, &m.mul(&n).unwrap()).unwrap();
        let rhs = compose_linear(&compose_linear(&f, &m).unwrap(), &n).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        // the symbolic result agrees with composing value tables
        prop_assert_eq!(lhs.to_table(), compose_table(&f.to_table(), &m.mul(&n).unwrap()).unwrap());
    }
}
