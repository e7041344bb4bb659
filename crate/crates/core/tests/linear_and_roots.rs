use chevrest::exactlin::{int, kernel_basis, rank, rref, Mat};
use chevrest::rootsys::{
    build_root_system, dominant_representative, generate_group, molien_dim, reflection, Family, ReflectionGroup, Weight,
};

#[test]
fn rref_examples() {
    let (r, p) = rref(&Mat::identity(2));
    assert_eq!((r, p), (Mat::identity(2), vec![0, 1]));
    let (r, p) = rref(&Mat::from_i64(&[&[1, 2], &[2, 4]]));
    assert_eq!((r, p), (Mat::from_i64(&[&[1, 2], &[0, 0]]), vec![0]));
    let (r, p) = rref(&Mat::from_i64(&[&[0, 1], &[1, 0]]));
    assert_eq!((r, p), (Mat::identity(2), vec![0, 1]));
}

#[test]
fn kernel_examples() {
    assert!(kernel_basis(&Mat::identity(3)).is_empty());
    assert_eq!(kernel_basis(&Mat::zeros(2, 3)).len(), 3);
    assert_eq!(kernel_basis(&Mat::from_i64(&[&[1, 1]])), vec![vec![int(-1), int(1)]]);
}

#[test]
fn rank_examples() {
    assert_eq!(rank(&Mat::zeros(3, 2)), 0);
    assert_eq!(rank(&Mat::identity(4)), 4);
    assert_eq!(rank(&Mat::from_i64(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
}

#[test]
fn root_system_examples() {
    let a1 = build_root_system(Family::A, 1).unwrap();
    assert_eq!(a1.positive_roots, vec![Weight::from_i64(&[1, -1])]);
    assert_eq!(build_root_system(Family::A, 2).unwrap().positive_roots.len(), 3);
    assert_eq!(build_root_system(Family::B, 2).unwrap().positive_roots.len(), 4);
    assert!(build_root_system(Family::D, 1).is_err());
}

#[test]
fn reflection_examples() {
    assert_eq!(reflection(&Weight::from_i64(&[1])).unwrap(), Mat::from_i64(&[&[-1]]));
    assert_eq!(reflection(&Weight::from_i64(&[1, -1])).unwrap(), Mat::from_i64(&[&[0, 1], &[1, 0]]));
    for r in build_root_system(Family::C, 3).unwrap().positive_roots {
        assert_eq!(r.apply(&reflection(&r).unwrap()), -&r);
    }
    assert!(reflection(&Weight::zero(2)).is_err());
}

#[test]
fn group_orders() {
    let sign = generate_group(vec![Mat::from_i64(&[&[-1]])], 100).unwrap();
    assert_eq!(sign.order(), 2);
    assert_eq!(build_root_system(Family::A, 2).unwrap().weyl_group(100).unwrap().order(), 6);
    assert_eq!(build_root_system(Family::B, 2).unwrap().weyl_group(100).unwrap().order(), 8);
    assert!(build_root_system(Family::B, 3).unwrap().weyl_group(10).is_err());
}

#[test]
fn molien_examples() {
    let sign = ReflectionGroup::from_roots(vec![vec![int(1)]], None, 10).unwrap();
    let one: Vec<usize> = (0..=4).map(|d| molien_dim(&sign, 1, d)).collect();
    assert_eq!(one, vec![1, 0, 1, 0, 1]);
    let two: Vec<usize> = (0..=4).map(|d| molien_dim(&sign, 2, d)).collect();
    assert_eq!(two, vec![1, 0, 3, 0, 5]);
    let trivial = ReflectionGroup::trivial(2);
    assert!(generate_group(vec![Mat::identity(2)], 10).is_err());
    // Monomials of degree 3 in 4 variables.
    assert_eq!(molien_dim(&trivial, 2, 3), 20);
}

#[test]
fn dominant_representative_examples() {
    let sign = ReflectionGroup::from_roots(vec![vec![int(1)]], None, 10).unwrap();
    let (w, i) = dominant_representative(&sign, &Weight::from_i64(&[-3]));
    assert_eq!(w, Weight::from_i64(&[3]));
    assert_eq!(sign.elements()[i], Mat::from_i64(&[&[-1]]));
    let (w, i) = dominant_representative(&sign, &Weight::zero(1));
    assert_eq!((w, &sign.elements()[i]), (Weight::zero(1), &Mat::identity(1)));
}
