use chevrest::reps::{build_hw_module, check_lemma_1_3, claim_check, non_q_dominant, q_plus_elements, spherical_dim, RepCaps};
use chevrest::rootsys::Weight;
use chevrest::sympair::build_pair;

#[test]
fn spherical_iff_in_q() {
    let caps = RepCaps::default();
    type Case = (&'static str, Vec<Vec<i64>>, Vec<Vec<i64>>);
    let cases: [Case; 3] = [
        ("AI:2", vec![vec![2, -2], vec![4, -4]], vec![vec![1, -1], vec![3, -3]]),
        ("AI:3", vec![vec![2, 0, -2], vec![4, -2, -2]], vec![vec![1, 0, -1], vec![2, -1, -1]]),
        (
            "ADJ:sl2",
            vec![vec![1, -1, -1, 1], vec![2, -2, -2, 2]],
            vec![vec![1, -1, 0, 0], vec![1, -1, -2, 2]],
        ),
    ];
    for (id, yes, no) in cases {
        let pair = build_pair(id).unwrap();
        for w in yes {
            let lam = Weight::from_i64(&w);
            assert!(pair.in_q_plus(&lam).unwrap(), "{id} {lam}");
            assert_eq!(spherical_dim(&pair, &lam, &caps).unwrap(), 1, "{id} {lam}");
            let r = check_lemma_1_3(&pair, &lam, &caps).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        for w in no {
            let lam = Weight::from_i64(&w);
            assert!(!pair.in_q(&lam).unwrap(), "{id} {lam}");
            assert_eq!(spherical_dim(&pair, &lam, &caps).unwrap(), 0, "{id} {lam}");
        }
    }
}

#[test]
fn module_dimensions_match_weyl() {
    let caps = RepCaps::default();
    let pair = build_pair("AI:3").unwrap();
    for (w, d) in [(vec![2, 0, -2], 27), (vec![4, -2, -2], 28), (vec![2, -1, -1], 10)] {
        let m = build_hw_module(&pair, &Weight::from_i64(&w), &caps).unwrap();
        assert_eq!(m.dim(), d);
    }
    let adj = build_pair("ADJ:sl3").unwrap();
    let m = build_hw_module(&adj, &Weight::from_i64(&[1, 0, -1, -1, 0, 1]), &caps).unwrap();
    assert_eq!(m.dim(), 64);
    m.carrier.check_representation(&adj.g).unwrap();
}

#[test]
fn caps_are_enforced() {
    let pair = build_pair("AI:2").unwrap();
    let caps = RepCaps { module: 4, ..RepCaps::default() };
    assert!(build_hw_module(&pair, &Weight::from_i64(&[2, -2]), &caps).is_err());
    let caps = RepCaps { tensor: 10, ..RepCaps::default() };
    let lam = Weight::from_i64(&[2, -2]);
    assert!(claim_check(&pair, &lam, &lam, &caps).is_err());
}

#[test]
fn enumerations_are_ordered() {
    let pair = build_pair("AI:3").unwrap();
    let q = q_plus_elements(&pair, 8).unwrap();
    assert_eq!(q[0].0, 1);
    assert_eq!(q[1], (27, Weight::from_i64(&[2, 0, -2])));
    let non = non_q_dominant(&pair, 2).unwrap();
    assert_eq!(non[0], (8, Weight::from_i64(&[1, 0, -1])));
}

#[test]
fn tensor_projection_aiii() {
    let caps = RepCaps::default();
    let pair = build_pair("AIII:2,1").unwrap();
    let q = q_plus_elements(&pair, 4).unwrap();
    let lam = q[1].1.clone();
    let r = claim_check(&pair, &lam, &lam, &caps).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn smallest_q_plus_examples() {
    use chevrest::reps::smallest_q_plus;
    let caps = RepCaps::default();
    let ai2 = build_pair("AI:2").unwrap();
    let got = smallest_q_plus(&ai2, 2, &caps).unwrap();
    let values: Vec<_> = got.iter().map(|w| ai2.restrict_weight(w)).collect();
    assert_eq!(values, vec![Weight::from_i64(&[4]), Weight::from_i64(&[8])]);
    let adj = build_pair("ADJ:sl2").unwrap();
    assert_eq!(
        smallest_q_plus(&adj, 2, &caps).unwrap(),
        vec![Weight::from_i64(&[1, -1, -1, 1]), Weight::from_i64(&[2, -2, -2, 2])]
    );
}

#[test]
fn smallest_non_q_examples() {
    use chevrest::reps::smallest_non_q;
    let caps = RepCaps::default();
    let ai2 = build_pair("AI:2").unwrap();
    assert_eq!(
        smallest_non_q(&ai2, 2, &caps).unwrap(),
        vec![Weight::from_i64(&[1, -1]), Weight::from_i64(&[3, -3])]
    );
    let ai3 = build_pair("AI:3").unwrap();
    let got = smallest_non_q(&ai3, 2, &caps).unwrap();
    assert_eq!(got[0], Weight::from_i64(&[1, 0, -1]));
    assert_eq!(got.len(), 2);
}
