use chevrest::exactlin::{int, Mat};
use chevrest::liealg::{direct_sum, make_sl, make_so, split_orthogonal_form};
use chevrest::rootsys::Weight;
use chevrest::sympair::{build_pair, decompose, verify_q_covering, Involution};

#[test]
fn algebra_dimensions() {
    assert_eq!(make_sl(2).unwrap().dim(), 3);
    assert_eq!(make_sl(3).unwrap().dim(), 8);
    assert_eq!(make_so(&split_orthogonal_form(3)).unwrap().dim(), 3);
    let s = make_sl(2).unwrap();
    assert_eq!(direct_sum(&s, &s).unwrap().dim(), 6);
}

#[test]
fn killing_form_sl2() {
    let g = make_sl(2).unwrap();
    let h = Mat::diag_i64(&[1, -1]);
    assert_eq!(g.killing_form(&h, &h).unwrap(), int(8));
}

#[test]
fn decomposition_examples() {
    let sl2 = make_sl(2).unwrap();
    let (k, p) = decompose(&sl2, &Involution::NegTransposeConj(Mat::identity(2))).unwrap();
    assert_eq!((k.len(), p.len()), (1, 2));
    let s = make_sl(2).unwrap();
    let g = direct_sum(&s, &s).unwrap();
    let (k, p) = decompose(&g, &Involution::Swap { block: 2 }).unwrap();
    assert_eq!((k.len(), p.len()), (3, 3));
    let sl3 = make_sl(3).unwrap();
    let (k, p) = decompose(&sl3, &Involution::Conjugation(Mat::diag_i64(&[1, 1, -1]))).unwrap();
    assert_eq!((k.len(), p.len()), (4, 4));
}

#[test]
fn q_membership_examples() {
    let ai2 = build_pair("AI:2").unwrap();
    assert!(ai2.in_q(&Weight::zero(2)).unwrap());
    let alpha = Weight::from_i64(&[1, -1]);
    assert_eq!(ai2.restrict_weight(&alpha), Weight::from_i64(&[2]));
    assert!(!ai2.in_q(&alpha).unwrap());
    assert!(ai2.in_q(&alpha.scale(&int(2))).unwrap());
    let adj = build_pair("ADJ:sl2").unwrap();
    assert!(!adj.in_q(&Weight::from_i64(&[1, -1, 1, -1])).unwrap());
}

#[test]
fn covering_examples() {
    let ai2 = build_pair("AI:2").unwrap();
    let r = verify_q_covering(&ai2, 8).unwrap();
    assert!(r.passed());
    assert!(r.points_in_q <= 5 && r.points_in_q > 0);
    for id in ["AI:3", "CI:2", "BDI:2,2"] {
        let pair = build_pair(id).unwrap();
        assert!(verify_q_covering(&pair, 6).unwrap().passed(), "{id}");
        assert_eq!(verify_q_covering(&pair, 0).unwrap().covered, 1);
    }
}
