//! Symmetric pairs `(g, σ)`: the decomposition `g = k ⊕ p`, a maximal abelian
//! `a ⊆ p` inside the diagonal Cartan, restricted roots, the baby Weyl group
//! `W₀`, the lattice `Q` and the covering check `Q = W₀Q₊`.
//!
//! Coordinates used throughout:
//! - weights of `h` are trace-form duals written in diagonal coordinates;
//! - a restricted weight is written by its values `λ(A_j)` on `a_basis`;
//! - `W₀` acts on points of `a` written along `a_basis` (t-coordinates).
//!   The two are related by the trace Gram matrix of `a_basis`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{dot, int, kernel_basis, primitive_vector, solve, Mat, Scalar};
use crate::liealg::{bracket, direct_sum, make_sl, make_so, make_sp, split_orthogonal_form, MatrixLieAlgebra};
use crate::rootsys::{dominant_representative, simple_from_positive, ReflectionGroup, Weight};

pub const DEFAULT_GROUP_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Involution {
    /// `X ↦ A X A⁻¹` with `A² = ±1`.
    Conjugation(Mat),
    /// `X ↦ −A Xᵀ A⁻¹`.
    NegTransposeConj(Mat),
    /// `(X, Y) ↦ (Y, X)` on block-diagonal `g ⊕ g` with blocks of size `block`.
    Swap { block: usize },
}

impl Involution {
    pub fn apply(&self, x: &Mat) -> Mat {
        match self {
            Involution::Conjugation(a) => conjugate(a, x),
            Involution::NegTransposeConj(a) => -&conjugate(a, &x.transpose()),
            Involution::Swap { block } => {
                let b = *block;
                let top = x.block(0, 0, b, b);
                let bottom = x.block(b, b, b, b);
                Mat::block_diag(&bottom, &top)
            }
        }
    }

    /// Checks `σ(g) ⊆ g`, `σ² = 1`, `σ ≠ 1` and `σ[X,Y] = [σX,σY]` on basis pairs.
    pub fn validate(&self, g: &MatrixLieAlgebra) -> Result<()> {
        let images: Vec<Mat> = g.basis().iter().map(|b| self.apply(b)).collect();
        let mut nontrivial = false;
        for (b, s) in g.basis().iter().zip(&images) {
            if !g.contains(s) {
                return Err(Error::InvariantViolation("involution leaves g".into()));
            }
            if &self.apply(s) != b {
                return Err(Error::InvariantViolation("involution is not involutive".into()));
            }
            nontrivial |= s != b;
        }
        if !nontrivial {
            return Err(Error::InvariantViolation("involution is the identity".into()));
        }
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                let lhs = self.apply(&bracket(&g.basis()[i], &g.basis()[j])?);
                if lhs != bracket(&images[i], &images[j])? {
                    return Err(Error::InvariantViolation("involution is not an automorphism".into()));
                }
            }
        }
        Ok(())
    }
}

/// `c X c⁻¹`.
pub fn conjugate(c: &Mat, x: &Mat) -> Mat {
    let inv = c.inverse().expect("conjugating matrix must be invertible");
    &(c * x) * &inv
}

fn primitive_mat(m: &Mat) -> Mat {
    Mat::from_flat(m.rows(), m.cols(), primitive_vector(&m.flatten()))
}

/// Bases of the `+1` and `−1` eigenspaces of `σ`.
pub fn decompose(g: &MatrixLieAlgebra, sigma: &Involution) -> Result<(Vec<Mat>, Vec<Mat>)> {
    sigma.validate(g)?;
    let dim = g.dim();
    let cols = g
        .basis()
        .iter()
        .map(|b| g.coords(&sigma.apply(b)))
        .collect::<Result<Vec<_>>>()?;
    let s = Mat::from_cols(&cols, dim);
    let id = Mat::identity(dim);
    let eigen = |m: Mat| -> Vec<Mat> {
        kernel_basis(&m)
            .into_iter()
            .map(|v| primitive_mat(&g.element(&v)))
            .collect()
    };
    let k = eigen(&s - &id);
    let p = eigen(&s + &id);
    if k.len() + p.len() != dim {
        return Err(Error::InvariantViolation("σ is not diagonalizable with eigenvalues ±1".into()));
    }
    Ok((k, p))
}

/// Coordinates relative to a basis of a subspace of `g`.
#[derive(Clone, Debug)]
struct Frame {
    vecs: Vec<Vec<Scalar>>,
    pos: Vec<usize>,
    inv: Mat,
}

impl Frame {
    fn new(vecs: Vec<Vec<Scalar>>) -> Self {
        let m = Mat::from_rows(vecs.clone());
        let (_, pos) = crate::exactlin::rref(&m);
        assert_eq!(pos.len(), vecs.len(), "frame vectors must be independent");
        let sub = Mat::from_rows(vecs.iter().map(|v| pos.iter().map(|&p| v[p].clone()).collect()).collect())
            .transpose();
        let inv = sub.inverse().expect("pivot positions are independent");
        Frame { vecs, pos, inv }
    }

    fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let rhs: Vec<Scalar> = self.pos.iter().map(|&p| v[p].clone()).collect();
        let c = self.inv.mul_vec(&rhs);
        let mut back = vec![Scalar::zero(); v.len()];
        for (ci, u) in c.iter().zip(&self.vecs) {
            for (b, x) in back.iter_mut().zip(u) {
                *b += ci * x;
            }
        }
        (back == v).then_some(c)
    }
}

/// Killing-orthogonal basis of the span of `vs` (given as g-coordinates).
fn orthogonalize(g: &MatrixLieAlgebra, mut vs: Vec<Vec<Scalar>>) -> Result<Vec<Vec<Scalar>>> {
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    while !vs.is_empty() {
        let idx = match vs.iter().position(|v| !g.killing_coords(v, v).is_zero()) {
            Some(i) => i,
            None => {
                // All remaining vectors are isotropic; v + w is not when B(v,w) ≠ 0.
                let (i, j) = (0..vs.len())
                    .flat_map(|i| (i + 1..vs.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !g.killing_coords(&vs[i], &vs[j]).is_zero())
                    .ok_or_else(|| Error::InvariantViolation("Killing form degenerate on p".into()))?;
                let sum: Vec<Scalar> = vs[i].iter().zip(&vs[j]).map(|(a, b)| a + b).collect();
                vs[i] = sum;
                i
            }
        };
        let v = primitive_vector(&vs.remove(idx));
        let vv = g.killing_coords(&v, &v);
        for u in vs.iter_mut() {
            let c = g.killing_coords(u, &v) / &vv;
            if !c.is_zero() {
                for (x, y) in u.iter_mut().zip(&v) {
                    *x -= &c * y;
                }
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Hand-chosen data for one catalog entry.
struct PairData {
    id: String,
    g: MatrixLieAlgebra,
    sigma: Involution,
    a_basis: Vec<Mat>,
    a_regular: Mat,
    component_gens: Vec<Mat>,
    s_torsion: Vec<Mat>,
    lift_candidates: Vec<Mat>,
}

#[derive(Clone, Debug)]
pub struct SymmetricPair {
    pub id: String,
    pub g: MatrixLieAlgebra,
    pub sigma: Involution,
    pub k_basis: Vec<Mat>,
    /// `a_basis` followed by a Killing-orthogonal complement; Killing-orthogonal.
    pub p_basis: Vec<Mat>,
    pub a_basis: Vec<Mat>,
    pub h0_basis: Vec<Mat>,
    /// Restricted roots (values on `a_basis`) with multiplicities.
    pub restricted_roots: Vec<(Weight, usize)>,
    pub positive_restricted: Vec<Weight>,
    pub simple_restricted: Vec<Weight>,
    pub w0: ReflectionGroup,
    /// Positive roots of `g` for an order that compares on `a` first.
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
    pub weyl: ReflectionGroup,
    pub component_gens: Vec<Mat>,
    pub s_torsion: Vec<Mat>,
    /// Ambient lift of each `W₀` generator, when one is known.
    pub w0_lifts: Vec<Option<Mat>>,
    a_gram: Mat,
    a_gram_inv: Mat,
    p_frame: Frame,
    p_killing: Vec<Scalar>,
}

impl SymmetricPair {
    fn build(d: PairData, cap: usize) -> Result<Self> {
        let PairData {
            id,
            g,
            sigma,
            a_basis,
            a_regular,
            component_gens,
            s_torsion,
            lift_candidates,
        } = d;
        let (k_basis, p_raw) = decompose(&g, &sigma)?;

        for a in &a_basis {
            if !a.is_diagonal() || !g.contains(a) || sigma.apply(a) != -a {
                return Err(Error::InvariantViolation(format!("{id}: a_basis element not in p ∩ h")));
            }
        }
        let a_coords = a_basis.iter().map(|a| g.coords(a)).collect::<Result<Vec<_>>>()?;
        for i in 0..a_coords.len() {
            for j in 0..i {
                if !g.killing_coords(&a_coords[i], &a_coords[j]).is_zero() {
                    return Err(Error::InvariantViolation(format!("{id}: a_basis not Killing-orthogonal")));
                }
            }
        }

        // Killing-orthogonal complement of a in p.
        let p_coords = p_raw.iter().map(|x| g.coords(x)).collect::<Result<Vec<_>>>()?;
        let eqs = Mat::from_rows(
            a_coords
                .iter()
                .map(|a| p_coords.iter().map(|p| g.killing_coords(a, p)).collect())
                .collect(),
        );
        let complement: Vec<Vec<Scalar>> = kernel_basis(&eqs)
            .into_iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(); g.dim()];
                for (ci, p) in c.iter().zip(&p_coords) {
                    for (x, y) in v.iter_mut().zip(p) {
                        *x += ci * y;
                    }
                }
                v
            })
            .collect();
        let complement = orthogonalize(&g, complement)?;
        let mut p_vecs = a_coords.clone();
        p_vecs.extend(complement);
        if p_vecs.len() != p_raw.len() {
            return Err(Error::InvariantViolation(format!("{id}: a ⊕ a^⊥ does not fill p")));
        }
        let p_basis: Vec<Mat> = p_vecs.iter().map(|v| g.element(v)).collect();
        let p_killing: Vec<Scalar> = p_vecs.iter().map(|v| g.killing_coords(v, v)).collect();

        // h0 = σ-fixed part of the diagonal Cartan.
        let hs = g.cartan_basis();
        let cols = hs
            .iter()
            .map(|h| -> Result<Vec<Scalar>> {
                let s = sigma.apply(h);
                let c = g.coords(&s)?;
                if g.cartan_indices().len() != hs.len() || c[hs.len()..].iter().any(|x| !x.is_zero()) {
                    return Err(Error::InvariantViolation(format!("{id}: σ does not preserve h")));
                }
                Ok(c[..hs.len()].to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        let s_h = Mat::from_cols(&cols, hs.len());
        let h0_basis: Vec<Mat> = kernel_basis(&(&s_h - &Mat::identity(hs.len())))
            .into_iter()
            .map(|c| {
                let mut m = Mat::zeros(g.n(), g.n());
                for (ci, h) in c.iter().zip(hs) {
                    m = &m + &h.scale(ci);
                }
                primitive_mat(&m)
            })
            .collect();
        if h0_basis.len() + a_basis.len() != g.rank() {
            return Err(Error::InvariantViolation(format!("{id}: h ≠ h0 ⊕ a")));
        }

        let r = a_basis.len();
        let mut a_gram = Mat::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                a_gram[(i, j)] = (&a_basis[i] * &a_basis[j]).trace();
            }
        }
        let a_gram_inv = a_gram.inverse().ok_or_else(|| Error::InvariantViolation(format!("{id}: a degenerate")))?;

        // Positive system of g: lexicographic on (α(A_reg), α(h0_1), α(h0_2), …).
        let key = |w: &Weight| -> Vec<Scalar> {
            std::iter::once(MatrixLieAlgebra::evaluate(w, &a_regular))
                .chain(h0_basis.iter().map(|h| MatrixLieAlgebra::evaluate(w, h)))
                .collect()
        };
        let mut positive_roots = Vec::new();
        for i in g.root_indices() {
            let w = g.weight_of(i);
            let k = key(w);
            match k.iter().find(|x| !x.is_zero()) {
                None => return Err(Error::InvariantViolation(format!("{id}: regular element not regular"))),
                Some(x) if x.is_positive() => positive_roots.push(w.clone()),
                Some(_) => {}
            }
        }
        positive_roots.sort();
        let simple_roots = simple_from_positive(&positive_roots);
        if simple_roots.len() != g.rank() {
            return Err(Error::InvariantViolation(format!("{id}: wrong number of simple roots")));
        }
        let weyl = ReflectionGroup::from_roots(simple_roots.iter().map(|w| w.0.clone()).collect(), None, cap)?;

        // Restricted roots: α|_a for roots with nonzero restriction.
        for h in &a_basis {
            if !g.ad_of(h)?.is_diagonal() {
                return Err(Error::InvariantViolation(format!("{id}: ad(a) not diagonal on the root basis")));
            }
        }
        let mut restricted: Vec<(Weight, usize)> = Vec::new();
        for i in g.root_indices() {
            let w = g.weight_of(i);
            let c = Weight(a_basis.iter().map(|a| MatrixLieAlgebra::evaluate(w, a)).collect());
            if c.is_zero() {
                continue;
            }
            match restricted.iter_mut().find(|(b, _)| b == &c) {
                Some((_, m)) => *m += 1,
                None => restricted.push((c, 1)),
            }
        }
        restricted.sort();
        let a_reg_t = {
            let c = a_basis.iter().map(|a| (&a_regular * a).trace()).collect::<Vec<_>>();
            a_gram_inv.mul_vec(&c)
        };
        let positive_restricted: Vec<Weight> = restricted
            .iter()
            .map(|(b, _)| b.clone())
            .filter(|b| dot(&b.0, &a_reg_t).is_positive())
            .collect();
        if positive_restricted.len() * 2 != restricted.len() {
            return Err(Error::InvariantViolation(format!("{id}: A_reg vanishes on a restricted root")));
        }
        let simple_restricted = simple_from_positive(&positive_restricted);
        let w0 = ReflectionGroup::from_roots(
            simple_restricted.iter().map(|b| a_gram_inv.mul_vec(&b.0)).collect(),
            Some(a_gram.clone()),
            cap,
        )?;

        let mut pair = SymmetricPair {
            id,
            g,
            sigma,
            k_basis,
            p_basis,
            a_basis,
            h0_basis,
            restricted_roots: restricted,
            positive_restricted,
            simple_restricted,
            w0,
            positive_roots,
            simple_roots,
            weyl,
            component_gens,
            s_torsion,
            w0_lifts: Vec::new(),
            a_gram,
            a_gram_inv,
            p_frame: Frame::new(p_vecs),
            p_killing,
        };
        pair.w0_lifts = pair.match_lifts(&lift_candidates)?;
        pair.validate()?;
        Ok(pair)
    }

    pub fn rank(&self) -> usize {
        self.a_basis.len()
    }

    pub fn dim_k(&self) -> usize {
        self.k_basis.len()
    }

    pub fn dim_p(&self) -> usize {
        self.p_basis.len()
    }

    pub fn a_gram(&self) -> &Mat {
        &self.a_gram
    }

    /// `B(p_i, p_i)` for the (Killing-orthogonal) `p_basis`.
    pub fn p_killing_diagonal(&self) -> &[Scalar] {
        &self.p_killing
    }

    /// Coordinates of an element of `p` along `p_basis`.
    pub fn p_coords(&self, x: &Mat) -> Result<Vec<Scalar>> {
        let c = self.g.coords(x)?;
        self.p_frame
            .coords(&c)
            .ok_or_else(|| Error::NotInSpan(format!("{}: element not in p", self.id)))
    }

    /// Matrix of `ad X` restricted to `p`, in `p_basis` (column j = `[X, p_j]`).
    pub fn ad_on_p(&self, x: &Mat) -> Result<Mat> {
        let cols = self
            .p_basis
            .iter()
            .map(|p| self.p_coords(&bracket(x, p)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_cols(&cols, self.dim_p()))
    }

    /// Matrix of `Ad c` restricted to `p`, in `p_basis`.
    pub fn group_on_p(&self, c: &Mat) -> Result<Mat> {
        let cols = self
            .p_basis
            .iter()
            .map(|p| self.p_coords(&conjugate(c, p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_cols(&cols, self.dim_p()))
    }

    /// Values `λ(A_j)` of a weight on `a_basis`.
    pub fn restrict_weight(&self, lam: &Weight) -> Weight {
        Weight(self.a_basis.iter().map(|a| MatrixLieAlgebra::evaluate(lam, a)).collect())
    }

    /// The point `H_λ ∈ a` (t-coordinates) trace-dual to a restricted weight.
    pub fn a_values_to_t(&self, c: &Weight) -> Weight {
        Weight(self.a_gram_inv.mul_vec(&c.0))
    }

    pub fn t_to_a_values(&self, t: &Weight) -> Weight {
        Weight(self.a_gram.mul_vec(&t.0))
    }

    /// The weight vanishing on `h0` with the given values on `a_basis`.
    pub fn weight_from_a_values(&self, c: &Weight) -> Weight {
        let t = self.a_values_to_t(c);
        let mut w = vec![Scalar::zero(); self.g.n()];
        for (tj, a) in t.0.iter().zip(&self.a_basis) {
            for (k, d) in a.diagonal().iter().enumerate() {
                w[k] += tj * d;
            }
        }
        Weight(w)
    }

    /// Acts by a `W₀` element (t-coordinate matrix) on a restricted weight.
    pub fn w0_act_on_values(&self, g: &Mat, c: &Weight) -> Weight {
        self.t_to_a_values(&self.a_values_to_t(c).apply(g))
    }

    /// `⟨λ, α^∨⟩` for every simple root of `g`.
    pub fn coroot_values(&self, lam: &Weight) -> Vec<Scalar> {
        self.simple_roots
            .iter()
            .map(|a| int(2) * lam.inner(a) / a.inner(a))
            .collect()
    }

    pub fn is_integral(&self, lam: &Weight) -> bool {
        lam.dim() == self.g.n() && self.coroot_values(lam).iter().all(|x| x.is_integer())
    }

    pub fn is_dominant(&self, lam: &Weight) -> bool {
        self.coroot_values(lam).iter().all(|x| !x.is_negative())
    }

    /// Integer coordinates of `lam` along the simple roots, if it is in the root lattice.
    pub fn root_lattice_coords(&self, lam: &Weight) -> Option<Vec<Scalar>> {
        let m = Mat::from_cols(&self.simple_roots.iter().map(|w| w.0.clone()).collect::<Vec<_>>(), self.g.n());
        let c = solve(&m, &lam.0)?;
        c.iter().all(|x| x.is_integer()).then_some(c)
    }

    /// `α(τ)` for a root `α` and a torsion element `τ`, read from `Ad τ` on a root vector.
    fn root_value(&self, alpha: &Weight, tau: &Mat) -> Result<Scalar> {
        let idx = self
            .g
            .root_indices()
            .find(|&i| self.g.weight_of(i) == alpha)
            .ok_or_else(|| Error::InvariantViolation(format!("{}: {alpha} is not a root", self.id)))?;
        let x = &self.g.basis()[idx];
        let y = conjugate(tau, x);
        let (pos, v) = x
            .entries()
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_zero())
            .expect("root vector is nonzero");
        let c = &y.entries()[pos] / v;
        if y != x.scale(&c) {
            return Err(Error::InvariantViolation(format!("{}: torsion element not diagonal on roots", self.id)));
        }
        Ok(c)
    }

    /// Membership in `Q`: `λ|_{h0} = 0` and `λ(τ) = 1` for every 2-torsion element `τ` of `S`.
    /// Weights outside the root lattice are not characters of the adjoint torus and are rejected.
    pub fn in_q(&self, lam: &Weight) -> Result<bool> {
        if !self.is_integral(lam) {
            return Err(Error::NonIntegralWeight(lam.to_string()));
        }
        if self.h0_basis.iter().any(|h| !MatrixLieAlgebra::evaluate(lam, h).is_zero()) {
            return Ok(false);
        }
        let Some(n) = self.root_lattice_coords(lam) else {
            return Ok(false);
        };
        for tau in &self.s_torsion {
            let mut sign = false;
            for (ni, alpha) in n.iter().zip(&self.simple_roots) {
                let v = self.root_value(alpha, tau)?;
                if v == -Scalar::one() {
                    sign ^= ni.to_integer().bit(0);
                } else if !v.is_one() {
                    return Err(Error::InvariantViolation(format!("{}: torsion value {v} is not ±1", self.id)));
                }
            }
            if sign {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn in_q_plus(&self, lam: &Weight) -> Result<bool> {
        Ok(self.in_q(lam)? && self.is_dominant(lam))
    }

    /// Matrix in t-coordinates of `Ad c` on `a`, if `c` normalizes `a`.
    fn action_on_a(&self, c: &Mat) -> Option<Mat> {
        let cols: Option<Vec<Vec<Scalar>>> = self
            .a_basis
            .iter()
            .map(|a| {
                let y = conjugate(c, a);
                if !y.is_diagonal() {
                    return None;
                }
                let vals: Vec<Scalar> = self.a_basis.iter().map(|b| (&y * b).trace()).collect();
                let t = self.a_gram_inv.mul_vec(&vals);
                let mut back = Mat::zeros(self.g.n(), self.g.n());
                for (tj, b) in t.iter().zip(&self.a_basis) {
                    back = &back + &b.scale(tj);
                }
                (back == y).then_some(t)
            })
            .collect();
        cols.map(|c| Mat::from_cols(&c, self.rank()))
    }

    /// `Ad c` preserves `g` and commutes with `σ`.
    pub fn normalizes(&self, c: &Mat) -> bool {
        self.g.basis().iter().all(|b| {
            let y = conjugate(c, b);
            self.g.contains(&y) && self.sigma.apply(&y) == conjugate(c, &self.sigma.apply(b))
        })
    }

    fn match_lifts(&self, candidates: &[Mat]) -> Result<Vec<Option<Mat>>> {
        let mut out = Vec::new();
        for s in self.w0.generators() {
            let found = candidates
                .iter()
                .find(|c| self.action_on_a(c).as_ref() == Some(s) && self.normalizes(c))
                .cloned();
            out.push(found);
        }
        Ok(out)
    }

    /// Ambient lift of `W₀` element `i`, as the product of generator lifts along its word.
    pub fn lift(&self, i: usize) -> Option<Mat> {
        let mut m = Mat::identity(self.g.n());
        for &gi in self.w0.word(i) {
            m = &m * self.w0_lifts[gi].as_ref()?;
        }
        Some(m)
    }

    pub fn has_all_lifts(&self) -> bool {
        self.w0_lifts.iter().all(Option::is_some)
    }

    /// Checks every structural invariant of the pair.
    pub fn validate(&self) -> Result<()> {
        let id = &self.id;
        let fail = |m: &str| Err(Error::InvariantViolation(format!("{id}: {m}")));
        for x in &self.k_basis {
            if &self.sigma.apply(x) != x {
                return fail("σ does not fix k");
            }
        }
        for x in &self.p_basis {
            if self.sigma.apply(x) != -x {
                return fail("σ does not negate p");
            }
        }
        if self.dim_k() + self.dim_p() != self.g.dim() {
            return fail("dim k + dim p ≠ dim g");
        }
        let parity = |x: &Mat| -> Option<bool> {
            let s = self.sigma.apply(x);
            if &s == x {
                Some(true)
            } else if s == -x {
                Some(false)
            } else {
                None
            }
        };
        let blocks: [(&[Mat], bool); 2] = [(&self.k_basis, true), (&self.p_basis, false)];
        for (xs, px) in blocks {
            for (ys, py) in blocks {
                for x in xs {
                    for y in ys {
                        let z = bracket(x, y)?;
                        if !z.is_zero() && parity(&z) != Some(px == py) {
                            return fail("bracket relations between k and p fail");
                        }
                    }
                }
            }
        }
        for x in &self.a_basis {
            for y in &self.a_basis {
                if !bracket(x, y)?.is_zero() {
                    return fail("a is not abelian");
                }
            }
        }
        // Centralizer of a in p.
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for a in &self.a_basis {
            let brs: Vec<Vec<Scalar>> = self
                .p_basis
                .iter()
                .map(|p| bracket(p, a).map(|m| m.flatten()))
                .collect::<Result<_>>()?;
            for e in 0..self.g.n() * self.g.n() {
                rows.push(brs.iter().map(|b| b[e].clone()).collect());
            }
        }
        if kernel_basis(&Mat::from_rows(rows)).len() != self.rank() {
            return fail("a is not self-centralizing in p");
        }
        for c in &self.component_gens {
            if !self.normalizes(c) {
                return fail("component generator does not commute with σ");
            }
        }
        for s in self.w0.generators() {
            for (b, _) in &self.restricted_roots {
                let image = self.w0_act_on_values(s, b);
                if !self.restricted_roots.iter().any(|(r, _)| r == &image) {
                    return fail("W0 does not permute the restricted roots");
                }
            }
        }
        for tau in &self.s_torsion {
            if !tau.is_diagonal() || !self.normalizes(tau) {
                return fail("torsion element is not a diagonal element of K");
            }
            if self.action_on_a(tau) != Some(Mat::identity(self.rank())) {
                return fail("torsion element does not centralize a");
            }
            for i in self.g.root_indices() {
                let alpha = self.g.weight_of(i);
                let v = self.root_value(alpha, tau)?;
                if v.abs() != Scalar::one() {
                    return fail("torsion element is not of order 2");
                }
                if self.restrict_weight(alpha).is_zero() && !v.is_one() {
                    return fail("torsion element is not in S");
                }
            }
        }
        Ok(())
    }

    /// Multiplicity of the restricted root `beta` (0 when absent).
    pub fn multiplicity(&self, beta: &Weight) -> usize {
        self.restricted_roots
            .iter()
            .find(|(b, _)| b == beta)
            .map_or(0, |(_, m)| *m)
    }
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

pub const PAIR_IDS: [&str; 12] = [
    "AI:2", "AI:3", "AI:4", "AIII:1,1", "AIII:2,1", "AIII:2,2", "BDI:2,1", "BDI:2,2", "BDI:3,2", "CI:2", "ADJ:sl2",
    "ADJ:sl3",
];

fn reversal(n: usize) -> Mat {
    split_orthogonal_form(n)
}

fn diag_sign(n: usize, neg: &[usize]) -> Mat {
    let v: Vec<i64> = (0..n).map(|i| if neg.contains(&i) { -1 } else { 1 }).collect();
    Mat::diag_i64(&v)
}

fn permutation(perm: &[usize]) -> Mat {
    let n = perm.len();
    let mut m = Mat::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = Scalar::one();
    }
    m
}

/// `e_i ↦ −e_j`, `e_j ↦ e_i`: a rotation by a quarter turn in the `(i, j)` plane.
fn quarter_turn(n: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::identity(n);
    m[(i, i)] = Scalar::zero();
    m[(j, j)] = Scalar::zero();
    m[(i, j)] = Scalar::one();
    m[(j, i)] = -Scalar::one();
    m
}

/// Orthogonal reflection in the vector `u` (standard inner product).
fn vector_reflection(u: &[i64]) -> Mat {
    let n = u.len();
    let uu: i64 = u.iter().map(|x| x * x).sum();
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= Scalar::new((2 * u[i] * u[j]).into(), uu.into());
        }
    }
    m
}

fn int_diag(v: &[i64]) -> Mat {
    Mat::diag_i64(v)
}

/// Orthogonal traceless diagonal basis `diag(1,…,1,−k,0,…)`.
fn sl_orthogonal_cartan(n: usize) -> Vec<Mat> {
    (1..n)
        .map(|k| {
            let v: Vec<i64> = (0..n)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Equal => -(k as i64),
                    std::cmp::Ordering::Greater => 0,
                })
                .collect();
            int_diag(&v)
        })
        .collect()
}

fn sl_regular(n: usize) -> Mat {
    int_diag(&(0..n).map(|i| n as i64 - 1 - 2 * i as i64).collect::<Vec<_>>())
}

/// `diag(e_i − e_{n−1−i})` for the first `⌊n/2⌋` indices.
fn split_cartan(n: usize) -> Vec<Mat> {
    (0..n / 2)
        .map(|i| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[n - 1 - i] = -1;
            int_diag(&v)
        })
        .collect()
}

fn split_regular(n: usize) -> Mat {
    let mut v = vec![0i64; n];
    for i in 0..n / 2 {
        v[i] = (n / 2 - i) as i64;
        v[n - 1 - i] = -((n / 2 - i) as i64);
    }
    int_diag(&v)
}

/// 2-torsion of a split diagonal torus `diag(t_1,…,t_m,(1),t_m⁻¹,…,t_1⁻¹)`,
/// modulo the center.
fn split_torsion(n: usize, include_half: bool) -> Vec<Mat> {
    let mut out: Vec<Mat> = (0..n / 2).map(|i| diag_sign(n, &[i, n - 1 - i])).collect();
    if include_half {
        // i·diag(1,…,1,−1,…,−1) is in the torus when the center contains −1.
        out.push(diag_sign(n, &(n / 2..n).collect::<Vec<_>>()));
    }
    out
}

fn all_quarter_turns(n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(quarter_turn(n, i, j));
        }
    }
    out
}

fn pair_data(id: &str) -> Result<PairData> {
    let unknown = || Error::UnknownPair(id.to_string());
    let (family, params) = id.split_once(':').ok_or_else(unknown)?;
    let nums: Vec<usize> = params.split(',').map(|s| s.trim().parse::<usize>()).collect::<std::result::Result<_, _>>().unwrap_or_default();
    let data = match (family, params) {
        ("AI", _) if nums.len() == 1 && (2..=4).contains(&nums[0]) => {
            let n = nums[0];
            PairData {
                id: id.into(),
                g: make_sl(n)?,
                sigma: Involution::NegTransposeConj(Mat::identity(n)),
                a_basis: sl_orthogonal_cartan(n),
                a_regular: sl_regular(n),
                component_gens: vec![diag_sign(n, &[n - 1])],
                s_torsion: (0..n).map(|i| diag_sign(n, &[i])).collect(),
                lift_candidates: all_quarter_turns(n),
            }
        }
        ("AIII", _) if nums.len() == 2 => {
            let (p, q) = (nums[0], nums[1]);
            let n = p + q;
            let j = reversal(n);
            let (a_basis, a_regular, component_gens, s_torsion, lifts) = match (p, q) {
                (1, 1) => (
                    vec![int_diag(&[1, -1])],
                    int_diag(&[1, -1]),
                    vec![int_diag(&[1, -1])],
                    vec![int_diag(&[1, -1])],
                    vec![j.clone()],
                ),
                (2, 1) => (
                    vec![int_diag(&[1, 0, -1])],
                    int_diag(&[1, 0, -1]),
                    vec![],
                    vec![int_diag(&[-1, 1, -1])],
                    vec![j.clone()],
                ),
                (2, 2) => (
                    split_cartan(4),
                    split_regular(4),
                    vec![int_diag(&[1, 1, -1, -1])],
                    split_torsion(4, true),
                    vec![permutation(&[1, 0, 3, 2]), permutation(&[0, 2, 1, 3]), permutation(&[3, 1, 2, 0])],
                ),
                _ => return Err(unknown()),
            };
            PairData {
                id: id.into(),
                g: make_sl(n)?,
                sigma: Involution::Conjugation(j),
                a_basis,
                a_regular,
                component_gens,
                s_torsion,
                lift_candidates: lifts,
            }
        }
        ("BDI", _) if nums.len() == 2 && matches!((nums[0], nums[1]), (2, 1) | (2, 2) | (3, 2)) => {
            let n = nums[0] + nums[1];
            // J = antidiag(1,…,1) has eigenvectors e_i ± e_{n−1−i} and the middle e_m.
            let mut plus = vec![0i64; n];
            let mut minus = vec![0i64; n];
            if n % 2 == 1 {
                plus[n / 2] = 1;
            } else {
                plus[0] = 1;
                plus[n - 1] = 1;
            }
            let mi = if n % 2 == 1 { 0 } else { 1 };
            minus[mi] = 1;
            minus[n - 1 - mi] = -1;
            let mut component_gens = vec![&vector_reflection(&plus) * &vector_reflection(&minus)];
            if n.is_multiple_of(2) {
                // i·diag(1,…,1,−1,…,−1) exchanges the two eigenspaces of J.
                component_gens.push(diag_sign(n, &(n / 2..n).collect::<Vec<_>>()));
            }
            PairData {
                id: id.into(),
                g: make_so(&reversal(n))?,
                sigma: Involution::NegTransposeConj(Mat::identity(n)),
                a_basis: split_cartan(n),
                a_regular: split_regular(n),
                component_gens,
                s_torsion: split_torsion(n, n.is_multiple_of(2)),
                lift_candidates: Vec::new(),
            }
        }
        ("CI", "2") => PairData {
            id: id.into(),
            g: make_sp(4)?,
            sigma: Involution::NegTransposeConj(Mat::identity(4)),
            a_basis: split_cartan(4),
            a_regular: split_regular(4),
            component_gens: vec![int_diag(&[1, 1, -1, -1])],
            s_torsion: split_torsion(4, true),
            lift_candidates: vec![
                permutation(&[1, 0, 3, 2]),
                quarter_turn(4, 1, 2),
                quarter_turn(4, 2, 1),
                quarter_turn(4, 0, 3),
            ],
        },
        ("ADJ", "sl2") | ("ADJ", "sl3") => {
            let m = if params == "sl2" { 2 } else { 3 };
            let s = make_sl(m)?;
            let g = direct_sum(&s, &s)?;
            let a_basis = sl_orthogonal_cartan(m)
                .iter()
                .map(|h| Mat::block_diag(h, &-h))
                .collect();
            let reg = sl_regular(m);
            PairData {
                id: id.into(),
                g,
                sigma: Involution::Swap { block: m },
                a_basis,
                a_regular: Mat::block_diag(&reg, &-&reg),
                component_gens: Vec::new(),
                s_torsion: (0..m)
                    .map(|i| {
                        let d = diag_sign(m, &[i]);
                        Mat::block_diag(&d, &d)
                    })
                    .collect(),
                lift_candidates: all_quarter_turns(m)
                    .iter()
                    .map(|w| Mat::block_diag(w, w))
                    .collect(),
            }
        }
        _ => return Err(unknown()),
    };
    Ok(data)
}

/// Builds and validates the catalog entry with the given id.
pub fn build_pair(id: &str) -> Result<SymmetricPair> {
    build_pair_with_cap(id, DEFAULT_GROUP_CAP)
}

pub fn build_pair_with_cap(id: &str, cap: usize) -> Result<SymmetricPair> {
    SymmetricPair::build(pair_data(id)?, cap)
}

pub fn catalog() -> Result<Vec<SymmetricPair>> {
    PAIR_IDS.iter().map(|id| build_pair(id)).collect()
}

/// Outcome of the bounded check of `Q = W₀Q₊`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoveringReport {
    pub pair: String,
    pub box_bound: i64,
    pub points_in_q: usize,
    pub covered: usize,
    pub counterexamples: Vec<String>,
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.covered == self.points_in_q
    }
}

fn box_points(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every `λ ∈ Q` whose values on `a_basis` lie in `[−bound, bound]` is moved
/// by `W₀` to a weight that is `W₀`-dominant, dominant for `g`, and in `Q`.
pub fn verify_q_covering(pair: &SymmetricPair, bound: i64) -> Result<CoveringReport> {
    let mut report = CoveringReport {
        pair: pair.id.clone(),
        box_bound: bound,
        points_in_q: 0,
        covered: 0,
        counterexamples: Vec::new(),
    };
    for c in box_points(pair.rank(), bound) {
        let vals = Weight::from_i64(&c);
        let lam = pair.weight_from_a_values(&vals);
        if !pair.is_integral(&lam) || !pair.in_q(&lam)? {
            continue;
        }
        report.points_in_q += 1;
        let (t, _) = dominant_representative(&pair.w0, &pair.a_values_to_t(&vals));
        let mu = pair.weight_from_a_values(&pair.t_to_a_values(&t));
        if pair.in_q(&mu)? && pair.is_dominant(&mu) {
            report.covered += 1;
        } else {
            report.counterexamples.push(lam.to_string());
        }
    }
    Ok(report)
}
