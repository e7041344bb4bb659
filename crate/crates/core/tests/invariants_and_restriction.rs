use chevrest::exactlin::{int, Mat};
use chevrest::invring::{
    derivation_matrix, k_invariant_space, k_invariants, monomial_basis, reynolds, w0_invariant_space, PAction, Poly,
    DEFAULT_MONOMIAL_CAP,
};
use chevrest::par::Exec;
use chevrest::restrict::{check_lemma_1_1, check_surjectivity, restrict_poly, theta};
use chevrest::sympair::build_pair;

#[test]
fn monomial_examples() {
    assert_eq!(monomial_basis(2, 2, 100).unwrap(), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    assert_eq!(monomial_basis(5, 0, 100).unwrap(), vec![vec![0; 5]]);
    assert_eq!(monomial_basis(3, 2, 100).unwrap().len(), 6);
    assert!(monomial_basis(10, 6, 100).is_err());
}

#[test]
fn derivation_examples() {
    let pair = build_pair("AI:3").unwrap();
    let x = &pair.k_basis[0];
    assert_eq!(derivation_matrix(&pair, 2, 0, x).unwrap(), Mat::zeros(1, 1));
    let zero = Mat::zeros(3, 3);
    assert!(derivation_matrix(&pair, 1, 2, &zero).unwrap().is_zero());
    assert!(derivation_matrix(&pair, 1, 1, &pair.p_basis[0]).is_err());
}

#[test]
fn k_invariant_dimensions() {
    let ai2 = build_pair("AI:2").unwrap();
    let dims: Vec<usize> = (0..=4).map(|d| k_invariant_space(&ai2, 1, d).unwrap().dim()).collect();
    assert_eq!(dims, vec![1, 0, 1, 0, 1]);
    assert_eq!(k_invariant_space(&ai2, 2, 2).unwrap().dim(), 3);
    let adj = build_pair("ADJ:sl2").unwrap();
    assert_eq!(k_invariant_space(&adj, 1, 2).unwrap().dim(), 1);
}

#[test]
fn w0_invariant_dimensions() {
    let ai2 = build_pair("AI:2").unwrap();
    assert_eq!(w0_invariant_space(&ai2, 1, 2).unwrap().dim(), 1);
    assert_eq!(w0_invariant_space(&ai2, 2, 2).unwrap().dim(), 3);
    for id in ["AI:3", "CI:2", "BDI:3,2"] {
        assert_eq!(w0_invariant_space(&build_pair(id).unwrap(), 2, 0).unwrap().dim(), 1);
    }
}

#[test]
fn reynolds_projection() {
    let pair = build_pair("AIII:2,1").unwrap();
    let inv = k_invariants(&pair, 2, 2, DEFAULT_MONOMIAL_CAP, Exec::Sequential).unwrap();
    for f in &inv.basis() {
        assert_eq!(&inv.reynolds(f).unwrap(), f);
    }
    inv.verify_reynolds(&PAction::new(&pair).unwrap()).unwrap();
    let r = reynolds(&pair, 2, 2).unwrap();
    assert_eq!(&r * &r, r);
}

#[test]
fn restriction_examples() {
    let pair = build_pair("AI:2").unwrap();
    assert_eq!(restrict_poly(&pair, 1, &Poly::constant(2, int(1))).unwrap(), Poly::constant(1, int(1)));
    for id in ["AI:2", "ADJ:sl2"] {
        let v = check_surjectivity(&build_pair(id).unwrap(), 2, 2).unwrap();
        assert_eq!((v.psi_rank, v.dim_target_invariants), (3, 3));
    }
    for id in ["AI:3", "BDI:2,2", "AIII:2,2"] {
        let v = check_surjectivity(&build_pair(id).unwrap(), 1, 0).unwrap();
        assert!(v.surjective && v.lemma_1_1_holds(), "{id}");
    }
    assert_eq!(theta(&pair, 2, 0).unwrap(), Mat::identity(1));
}

#[test]
fn theta_apparatus_examples() {
    let pair = build_pair("AI:2").unwrap();
    for d in 0..=6 {
        let v = check_lemma_1_1(&pair, 1, d).unwrap();
        assert!(v.theta_injective && v.surjective);
    }
    let adj = build_pair("ADJ:sl2").unwrap();
    for d in 0..=4 {
        let v = check_lemma_1_1(&adj, 2, d).unwrap();
        assert!(v.theta_injective && v.surjective && !v.kernel_meets_image);
    }
}
