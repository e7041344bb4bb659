//! Classical root systems, finite reflection groups and the Molien series.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{dot, frac, int, rank, Mat, Scalar};

/// A weight (or root) as a rational vector in some ambient coordinate space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Scalar>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![Scalar::zero(); dim])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Weight {
        Weight(self.0.iter().map(|x| x * s).collect())
    }

    /// Standard inner product.
    pub fn inner(&self, other: &Weight) -> Scalar {
        dot(&self.0, &other.0)
    }

    pub fn apply(&self, m: &Mat) -> Weight {
        Weight(m.mul_vec(&self.0))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            _ => None,
        }
    }

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    pub fundamental_weights: Vec<Weight>,
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

fn combo(dim: usize, terms: &[(usize, Scalar)]) -> Weight {
    let mut v = vec![Scalar::zero(); dim];
    for (i, c) in terms {
        v[*i] += c;
    }
    Weight(v)
}

/// Standard coordinate realization of a classical root system.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let bad = Error::UnsupportedRootSystem {
        family: family.letter(),
        rank,
    };
    if rank == 0 || (family == Family::D && rank < 2) {
        return Err(bad);
    }
    let one = Scalar::one();
    let half = frac(1, 2);
    let r = rank;
    let (simple, positive, fundamental) = match family {
        Family::A => {
            let n = r + 1;
            let simple = (0..r)
                .map(|i| combo(n, &[(i, one.clone()), (i + 1, -one.clone())]))
                .collect();
            let mut pos = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    pos.push(combo(n, &[(i, one.clone()), (j, -one.clone())]));
                }
            }
            let fund = (1..=r)
                .map(|i| {
                    let shift = frac(i as i64, n as i64);
                    Weight(
                        (0..n)
                            .map(|k| if k < i { &one - &shift } else { -shift.clone() })
                            .collect(),
                    )
                })
                .collect();
            (simple, pos, fund)
        }
        Family::B | Family::C | Family::D => {
            let n = r;
            let mut simple: Vec<Weight> = (0..r - 1)
                .map(|i| combo(n, &[(i, one.clone()), (i + 1, -one.clone())]))
                .collect();
            simple.push(match family {
                Family::B => combo(n, &[(r - 1, one.clone())]),
                Family::C => combo(n, &[(r - 1, int(2))]),
                _ => combo(n, &[(r - 2, one.clone()), (r - 1, one.clone())]),
            });
            let mut pos = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    pos.push(combo(n, &[(i, one.clone()), (j, -one.clone())]));
                    pos.push(combo(n, &[(i, one.clone()), (j, one.clone())]));
                }
            }
            match family {
                Family::B => pos.extend((0..n).map(|i| combo(n, &[(i, one.clone())]))),
                Family::C => pos.extend((0..n).map(|i| combo(n, &[(i, int(2))]))),
                _ => {}
            }
            let prefix = |i: usize, c: &Scalar| {
                combo(n, &(0..i).map(|k| (k, c.clone())).collect::<Vec<_>>())
            };
            let fund = (1..=r)
                .map(|i| match family {
                    Family::B if i == r => prefix(r, &half),
                    Family::D if i == r - 1 => {
                        let mut w = prefix(r, &half);
                        w.0[r - 1] = -half.clone();
                        w
                    }
                    Family::D if i == r => prefix(r, &half),
                    _ => prefix(i, &one),
                })
                .collect();
            (simple, pos, fund)
        }
    };
    Ok(RootSystem {
        family,
        rank,
        simple_roots: simple,
        positive_roots: positive,
        fundamental_weights: fundamental,
    })
}

impl RootSystem {
    pub fn weyl_group(&self, cap: usize) -> Result<ReflectionGroup> {
        ReflectionGroup::from_roots(
            self.simple_roots.iter().map(|r| r.0.clone()).collect(),
            None,
            cap,
        )
    }

    pub fn rho(&self) -> Weight {
        half_sum(&self.positive_roots)
    }

    pub fn weyl_dimension(&self, lam: &Weight) -> Scalar {
        weyl_dimension(&self.positive_roots, lam, None)
    }
}

pub fn half_sum(roots: &[Weight]) -> Weight {
    let dim = roots.first().map_or(0, Weight::dim);
    let mut acc = Weight::zero(dim);
    for r in roots {
        acc = &acc + r;
    }
    acc.scale(&frac(1, 2))
}

/// Weyl dimension formula `Π (λ+ρ, α)/(ρ, α)` over positive roots.
pub fn weyl_dimension(positive: &[Weight], lam: &Weight, form: Option<&Mat>) -> Scalar {
    let rho = half_sum(positive);
    let lr = lam + &rho;
    positive.iter().fold(Scalar::one(), |acc, a| {
        acc * pair(&lr.0, &a.0, form) / pair(&rho.0, &a.0, form)
    })
}

/// Positive roots that are not the sum of two positive roots (nor twice one).
pub fn simple_from_positive(positive: &[Weight]) -> Vec<Weight> {
    positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|a| {
                let rest = *r - a;
                positive.contains(&rest)
            })
        })
        .cloned()
        .collect()
}

fn pair(x: &[Scalar], y: &[Scalar], form: Option<&Mat>) -> Scalar {
    match form {
        None => dot(x, y),
        Some(g) => dot(x, &g.mul_vec(y)),
    }
}

/// Reflection `x ↦ x − 2(x,r)/(r,r)·r` for the standard inner product.
pub fn reflection(root: &Weight) -> Result<Mat> {
    reflection_with_form(&root.0, None)
}

/// Reflection orthogonal for the bilinear form with Gram matrix `form`.
pub fn reflection_with_form(root: &[Scalar], form: Option<&Mat>) -> Result<Mat> {
    let rr = pair(root, root, form);
    if rr.is_zero() {
        return Err(Error::ZeroRoot);
    }
    let n = root.len();
    // Column j is s(e_j).
    let mut m = Mat::identity(n);
    for j in 0..n {
        let ej = unit(n, j);
        let c = int(2) * pair(&ej, root, form) / &rr;
        for i in 0..n {
            m[(i, j)] -= &c * &root[i];
        }
    }
    Ok(m)
}

/// A finite group generated by reflections, stored as its full element list.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    dim: usize,
    generators: Vec<Mat>,
    roots: Vec<Vec<Scalar>>,
    form: Option<Mat>,
    elements: Vec<Mat>,
    words: Vec<Vec<usize>>,
    index: HashMap<Mat, usize>,
}

impl ReflectionGroup {
    /// Group generated by the reflections in `roots` (orientation of each root
    /// fixes the fundamental chamber used by [`dominant_representative`]).
    pub fn from_roots(roots: Vec<Vec<Scalar>>, form: Option<Mat>, cap: usize) -> Result<Self> {
        let gens = roots
            .iter()
            .map(|r| reflection_with_form(r, form.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::close(gens, roots, form, cap)
    }

    /// The trivial group on `dim` coordinates.
    pub fn trivial(dim: usize) -> Self {
        let id = Mat::identity(dim);
        ReflectionGroup {
            dim,
            generators: Vec::new(),
            roots: Vec::new(),
            form: None,
            elements: vec![id.clone()],
            words: vec![Vec::new()],
            index: HashMap::from([(id, 0usize)]),
        }
    }

    fn close(
        generators: Vec<Mat>,
        roots: Vec<Vec<Scalar>>,
        form: Option<Mat>,
        cap: usize,
    ) -> Result<Self> {
        let dim = generators.first().map_or(0, Mat::rows);
        let id = Mat::identity(dim);
        let mut elements = vec![id.clone()];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let next = &elements[i] * g;
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupCapExceeded { cap });
                }
                let mut w = words[i].clone();
                w.push(gi);
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
                words.push(w);
            }
        }
        Ok(ReflectionGroup {
            dim,
            generators,
            roots,
            form,
            elements,
            words,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    /// Chamber-defining root of each generator.
    pub fn roots(&self) -> &[Vec<Scalar>] {
        &self.roots
    }

    pub fn form(&self) -> Option<&Mat> {
        self.form.as_ref()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    /// Element `i` equals the product of generators `word(i)` left to right.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.index.contains_key(m)
    }

    pub fn pairing(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        pair(x, y, self.form.as_ref())
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.roots
            .iter()
            .all(|r| !self.pairing(&w.0, r).is_negative())
    }

    /// Distinct images of `w`, in element order.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen = Vec::new();
        for g in &self.elements {
            let x = w.apply(g);
            if !seen.contains(&x) {
                seen.push(x);
            }
        }
        seen
    }

    pub fn stabilizer_order(&self, w: &Weight) -> usize {
        self.elements.iter().filter(|g| &w.apply(g) == w).count()
    }
}

/// Closure of an arbitrary list of reflection matrices. Chamber roots are
/// read off the image of `g − 1`, oriented so the first nonzero coordinate
/// is positive.
pub fn generate_group(gens: Vec<Mat>, cap: usize) -> Result<ReflectionGroup> {
    let Some(first) = gens.first() else {
        return Err(Error::SizeMismatch("no generators".into()));
    };
    let dim = first.rows();
    let id = Mat::identity(dim);
    let mut roots = Vec::with_capacity(gens.len());
    for g in &gens {
        if !g.is_square() || g.rows() != dim {
            return Err(Error::SizeMismatch("generators must be square of equal size".into()));
        }
        if (g * g) != id {
            return Err(Error::InvariantViolation("generator is not an involution".into()));
        }
        let d = g - &id;
        if rank(&d) != 1 {
            return Err(Error::InvariantViolation("generator is not a reflection".into()));
        }
        let col = (0..dim)
            .map(|j| d.col(j))
            .find(|c| c.iter().any(|x| !x.is_zero()))
            .expect("rank one");
        let lead = col.iter().find(|x| !x.is_zero()).unwrap().clone();
        let sign = if lead.is_negative() { -Scalar::one() } else { Scalar::one() };
        roots.push(col.iter().map(|x| x * &sign).collect());
    }
    ReflectionGroup::close(gens, roots, None, cap)
}

/// `det(1 − t·g)` as coefficients in `t`, via Faddeev–LeVerrier.
fn det_one_minus_tg(g: &Mat) -> Vec<Scalar> {
    let n = g.rows();
    let mut coeffs = vec![Scalar::one()];
    let mut m = Mat::zeros(n, n);
    for k in 1..=n {
        let prev = coeffs[k - 1].clone();
        m = &(g * &m) + &Mat::identity(n).scale(&prev);
        let ck = -(g * &m).trace() / int(k as i64);
        coeffs.push(ck);
    }
    coeffs
}

fn series_inverse(p: &[Scalar], deg: usize) -> Vec<Scalar> {
    let mut q = vec![Scalar::zero(); deg + 1];
    q[0] = Scalar::one() / &p[0];
    for k in 1..=deg {
        let mut s = Scalar::zero();
        for j in 1..=k.min(p.len() - 1) {
            s += &p[j] * &q[k - j];
        }
        q[k] = -s * &q[0];
    }
    q
}

fn series_mul(a: &[Scalar], b: &[Scalar], deg: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients `0..=degree` of `(1/|G|) Σ_g det(1 − t·g^{⊕copies})⁻¹`.
pub fn molien_series(group: &ReflectionGroup, copies: usize, degree: usize) -> Vec<Scalar> {
    let mut by_charpoly: HashMap<Vec<Scalar>, usize> = HashMap::new();
    for g in group.elements() {
        *by_charpoly.entry(det_one_minus_tg(g)).or_default() += 1;
    }
    let mut total = vec![Scalar::zero(); degree + 1];
    let mut keys: Vec<_> = by_charpoly.into_iter().collect();
    keys.sort();
    for (p, count) in keys {
        let inv = series_inverse(&p, degree);
        let mut s = vec![Scalar::zero(); degree + 1];
        s[0] = Scalar::one();
        for _ in 0..copies {
            s = series_mul(&s, &inv, degree);
        }
        for (t, c) in total.iter_mut().zip(s) {
            *t += c * int(count as i64);
        }
    }
    let order = int(group.order() as i64);
    total.into_iter().map(|c| c / &order).collect()
}

/// Dimension of the degree-`degree` invariants of `group` acting diagonally
/// on `copies` copies of its space.
pub fn molien_dim(group: &ReflectionGroup, copies: usize, degree: usize) -> usize {
    let c = molien_series(group, copies, degree).pop().unwrap();
    assert!(c.is_integer(), "Molien coefficient must be an integer");
    c.to_integer().try_into().expect("Molien coefficient fits in usize")
}

/// The dominant member of the orbit of `w` and the index of the first group
/// element mapping `w` there.
pub fn dominant_representative(group: &ReflectionGroup, w: &Weight) -> (Weight, usize) {
    let mut best: Option<(Weight, usize)> = None;
    for (i, g) in group.elements().iter().enumerate() {
        let x = w.apply(g);
        if !group.is_dominant(&x) {
            continue;
        }
        match &best {
            Some((b, _)) if *b >= x => {}
            _ => best = Some((x, i)),
        }
    }
    best.expect("every orbit meets the closed fundamental chamber")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm1() -> ReflectionGroup {
        generate_group(vec![Mat::from_i64(&[&[-1]])], 10).unwrap()
    }

    #[test]
    fn root_system_sizes() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        assert_eq!(a1.positive_roots, vec![Weight::from_i64(&[1, -1])]);
        assert_eq!(build_root_system(Family::A, 2).unwrap().positive_roots.len(), 3);
        assert_eq!(build_root_system(Family::B, 2).unwrap().positive_roots.len(), 4);
        assert_eq!(build_root_system(Family::C, 3).unwrap().positive_roots.len(), 9);
        assert_eq!(build_root_system(Family::D, 4).unwrap().positive_roots.len(), 12);
        assert!(build_root_system(Family::D, 1).is_err());
        assert!(build_root_system(Family::A, 0).is_err());
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        for (f, r) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let rs = build_root_system(f, r).unwrap();
            for (i, a) in rs.simple_roots.iter().enumerate() {
                for (j, w) in rs.fundamental_weights.iter().enumerate() {
                    let v = int(2) * w.inner(a) / a.inner(a);
                    assert_eq!(v, int((i == j) as i64), "{f:?}{r} alpha{i} omega{j}");
                }
            }
        }
    }

    #[test]
    fn simple_roots_recovered() {
        let rs = build_root_system(Family::B, 3).unwrap();
        let mut s = simple_from_positive(&rs.positive_roots);
        s.sort();
        let mut expect = rs.simple_roots.clone();
        expect.sort();
        assert_eq!(s, expect);
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(reflection(&Weight::from_i64(&[1])).unwrap(), Mat::from_i64(&[&[-1]]));
        assert_eq!(
            reflection(&Weight::from_i64(&[1, -1])).unwrap(),
            Mat::from_i64(&[&[0, 1], &[1, 0]])
        );
        let r = Weight::from_i64(&[2, -1, 3]);
        assert_eq!(r.apply(&reflection(&r).unwrap()), -&r);
        assert_eq!(reflection(&Weight::zero(2)), Err(Error::ZeroRoot));
    }

    #[test]
    fn group_orders() {
        assert_eq!(pm1().order(), 2);
        let a2 = build_root_system(Family::A, 2).unwrap();
        let gens = a2.simple_roots.iter().map(|r| reflection(r).unwrap()).collect();
        assert_eq!(generate_group(gens, 100).unwrap().order(), 6);
        let b2 = build_root_system(Family::B, 2).unwrap();
        let gens = b2.simple_roots.iter().map(|r| reflection(r).unwrap()).collect();
        assert_eq!(generate_group(gens, 100).unwrap().order(), 8);
        assert_eq!(build_root_system(Family::D, 4).unwrap().weyl_group(1000).unwrap().order(), 192);
    }

    #[test]
    fn cap_is_enforced() {
        let a3 = build_root_system(Family::A, 3).unwrap();
        assert_eq!(
            a3.weyl_group(10).unwrap_err(),
            Error::GroupCapExceeded { cap: 10 }
        );
    }

    #[test]
    fn words_reproduce_elements() {
        let g = build_root_system(Family::B, 2).unwrap().weyl_group(100).unwrap();
        for (i, e) in g.elements().iter().enumerate() {
            let prod = g.word(i).iter().fold(Mat::identity(2), |acc, &k| &acc * &g.generators()[k]);
            assert_eq!(&prod, e);
        }
    }

    #[test]
    fn molien_sign_group() {
        let g = pm1();
        let one: Vec<usize> = (0..=4).map(|d| molien_dim(&g, 1, d)).collect();
        assert_eq!(one, vec![1, 0, 1, 0, 1]);
        let two: Vec<usize> = (0..=4).map(|d| molien_dim(&g, 2, d)).collect();
        assert_eq!(two, vec![1, 0, 3, 0, 5]);
    }

    #[test]
    fn molien_trivial_group_counts_monomials() {
        // Closure of the identity only: a degenerate "group" with no generators
        // is built through from_roots with an empty list.
        let g = ReflectionGroup::close(vec![Mat::identity(2)], vec![], None, 4).unwrap();
        assert_eq!(g.order(), 1);
        // N=2 copies of a 2-dim space: 4 variables, C(d+3, 3) monomials.
        for (d, expect) in [(0, 1), (1, 4), (2, 10), (3, 20)] {
            assert_eq!(molien_dim(&g, 2, d), expect);
        }
    }

    #[test]
    fn molien_matches_monomial_averaging_for_a1() {
        // Oracle: average each monomial t^d over {±1} on one variable.
        let g = pm1();
        for d in 0..=8 {
            let averaged = ((1 + (-1i64).pow(d as u32)) / 2) as usize;
            assert_eq!(molien_dim(&g, 1, d), averaged);
            assert_eq!(molien_dim(&g, 1, 0), 1);
        }
    }

    #[test]
    fn molien_s3_on_plane() {
        // Invariants of W(A2) on the reflection representation: degrees 2 and 3.
        let g = build_root_system(Family::A, 2).unwrap().weyl_group(10).unwrap();
        // Ambient is 3-dim (sum-zero plane plus the fixed line), giving
        // the invariants of S3 permuting 3 variables: 1,1,2,3,4,5,7.
        let dims: Vec<usize> = (0..=6).map(|d| molien_dim(&g, 1, d)).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 4, 5, 7]);
    }

    #[test]
    fn dominant_representative_examples() {
        let g = pm1();
        let (w, e) = dominant_representative(&g, &Weight::from_i64(&[-3]));
        assert_eq!(w, Weight::from_i64(&[3]));
        assert_eq!(g.elements()[e], Mat::from_i64(&[&[-1]]));
        let (w, e) = dominant_representative(&g, &Weight::zero(1));
        assert_eq!(w, Weight::zero(1));
        assert_eq!(e, 0);

        let a2 = build_root_system(Family::A, 2).unwrap().weyl_group(10).unwrap();
        let orbit = a2.orbit(&Weight::from_i64(&[3, 1, -4]));
        assert_eq!(orbit.len(), 6);
        assert_eq!(orbit.iter().filter(|w| a2.is_dominant(w)).count(), 1);
    }

    #[test]
    fn weyl_dimensions() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        let adj = &a2.fundamental_weights[0] + &a2.fundamental_weights[1];
        assert_eq!(a2.weyl_dimension(&adj), int(8));
        let b2 = build_root_system(Family::B, 2).unwrap();
        assert_eq!(b2.weyl_dimension(&b2.fundamental_weights[0]), int(5));
        assert_eq!(b2.weyl_dimension(&b2.fundamental_weights[1]), int(4));
    }

    proptest::proptest! {
        #[test]
        fn orbit_size_divides_order(a in -3i64..4, b in -3i64..4, c in -3i64..4) {
            let g = build_root_system(Family::B, 3).unwrap().weyl_group(100).unwrap();
            let w = Weight::from_i64(&[a, b, c]);
            let orbit = g.orbit(&w);
            proptest::prop_assert_eq!(g.order() % orbit.len(), 0);
            proptest::prop_assert_eq!(orbit.len() * g.stabilizer_order(&w), g.order());
            let (d, _) = dominant_representative(&g, &w);
            let (d2, _) = dominant_representative(&g, &d);
            proptest::prop_assert_eq!(d, d2);
        }
    }
}
