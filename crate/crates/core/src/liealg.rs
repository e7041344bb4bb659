//! Matrix realizations of sl(n), so(n), sp(2n) and direct sums.
//!
//! Every algebra built here has a diagonal Cartan subalgebra `h` and a basis
//! made of `h` (listed first) followed by root vectors. Weights are stored as
//! the element of `h` dual under the trace form, written in diagonal
//! coordinates; for sl(n) this is the usual sum-zero coordinate system.

use std::ops::Range;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{dot, frac, int, kernel_basis, rank, Mat, Scalar};
use crate::rootsys::Weight;

pub fn bracket(x: &Mat, y: &Mat) -> Result<Mat> {
    if !x.is_square() || x.rows() != y.rows() || !y.is_square() {
        return Err(Error::SizeMismatch(format!(
            "bracket of {}x{} and {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(&(x * y) - &(y * x))
}

/// Which classical group a diagonal block belongs to; decides how group
/// elements are normalized when acting on representations of the adjoint group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Sl,
    So(Mat),
    Sp(Mat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub range: Range<usize>,
    pub kind: FactorKind,
}

impl Factor {
    pub fn size(&self) -> usize {
        self.range.len()
    }
}

#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    name: String,
    n: usize,
    basis: Vec<Mat>,
    cartan: usize,
    factors: Vec<Factor>,
    /// `ad[i]` has column `j` equal to the coordinates of `[b_i, b_j]`.
    ad: Vec<Mat>,
    killing: Mat,
    weights: Vec<Weight>,
    // Coordinates are read from these flat entry positions through `coord_inv`.
    coord_pos: Vec<usize>,
    coord_inv: Mat,
}

impl MatrixLieAlgebra {
    /// Builds the algebra from a basis whose first `cartan` elements are
    /// diagonal and span a Cartan subalgebra; the rest must be root vectors.
    pub fn from_basis(name: &str, n: usize, basis: Vec<Mat>, cartan: usize, factors: Vec<Factor>) -> Result<Self> {
        let dim = basis.len();
        for b in &basis {
            if b.rows() != n || b.cols() != n {
                return Err(Error::SizeMismatch("basis element has wrong size".into()));
            }
        }
        let flat = Mat::from_rows(basis.iter().map(Mat::flatten).collect());
        if rank(&flat) != dim {
            return Err(Error::InvariantViolation(format!("{name}: basis is dependent")));
        }
        // Pick `dim` entry positions where the basis is independent.
        let (_, pos) = crate::exactlin::rref(&flat);
        let sub = Mat::from_rows(
            basis
                .iter()
                .map(|b| pos.iter().map(|&p| b.entries()[p].clone()).collect())
                .collect(),
        )
        .transpose();
        let coord_inv = sub.inverse().expect("pivot positions are independent");

        let mut g = MatrixLieAlgebra {
            name: name.to_string(),
            n,
            basis,
            cartan,
            factors,
            ad: Vec::new(),
            killing: Mat::zeros(0, 0),
            weights: Vec::new(),
            coord_pos: pos,
            coord_inv,
        };
        let mut ad = Vec::with_capacity(dim);
        for i in 0..dim {
            let cols = (0..dim)
                .map(|j| {
                    let br = bracket(&g.basis[i], &g.basis[j])?;
                    g.coords(&br)
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::InvariantViolation(format!("{name}: bracket not closed: {e}")))?;
            ad.push(Mat::from_cols(&cols, dim));
        }
        g.ad = ad;
        let mut killing = Mat::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let v = (&g.ad[i] * &g.ad[j]).trace();
                killing[(i, j)] = v.clone();
                killing[(j, i)] = v;
            }
        }
        g.killing = killing;
        g.weights = g.compute_weights()?;
        Ok(g)
    }

    fn compute_weights(&self) -> Result<Vec<Weight>> {
        let mut out = Vec::with_capacity(self.dim());
        for (i, b) in self.basis.iter().enumerate() {
            if i < self.cartan {
                if !b.is_diagonal() {
                    return Err(Error::InvariantViolation(format!("{}: Cartan element not diagonal", self.name)));
                }
                out.push(Weight::zero(self.n));
                continue;
            }
            let mut values = Vec::with_capacity(self.cartan);
            for h in 0..self.cartan {
                let col = self.ad[h].col(i);
                let c = col[i].clone();
                if col.iter().enumerate().any(|(k, v)| k != i && !v.is_zero()) {
                    return Err(Error::InvariantViolation(format!(
                        "{}: basis element {i} is not an h-weight vector",
                        self.name
                    )));
                }
                values.push(c);
            }
            out.push(self.weight_from_values(&values));
        }
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn cartan_indices(&self) -> Range<usize> {
        0..self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan
    }

    pub fn cartan_basis(&self) -> &[Mat] {
        &self.basis[..self.cartan]
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Weight of basis element `i` (zero for Cartan elements).
    pub fn weight_of(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    pub fn root_indices(&self) -> Range<usize> {
        self.cartan..self.dim()
    }

    pub fn ad_matrix(&self, i: usize) -> &Mat {
        &self.ad[i]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.ad[i][(k, j)]
    }

    pub fn killing_gram(&self) -> &Mat {
        &self.killing
    }

    /// Coordinates of `x` in the basis; errors when `x` is outside the span.
    pub fn coords(&self, x: &Mat) -> Result<Vec<Scalar>> {
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::SizeMismatch("element has wrong size".into()));
        }
        let e = x.entries();
        let rhs: Vec<Scalar> = self.coord_pos.iter().map(|&p| e[p].clone()).collect();
        let c = self.coord_inv.mul_vec(&rhs);
        if &self.element(&c) != x {
            return Err(Error::NotInSpan(self.name.clone()));
        }
        Ok(c)
    }

    pub fn element(&self, coords: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = &m + &b.scale(c);
            }
        }
        m
    }

    pub fn contains(&self, x: &Mat) -> bool {
        self.coords(x).is_ok()
    }

    /// Matrix of `ad x` in the basis.
    pub fn ad_of(&self, x: &Mat) -> Result<Mat> {
        let c = self.coords(x)?;
        let mut m = Mat::zeros(self.dim(), self.dim());
        for (ci, a) in c.iter().zip(&self.ad) {
            if !ci.is_zero() {
                m = &m + &a.scale(ci);
            }
        }
        Ok(m)
    }

    /// `tr(ad x ∘ ad y)`.
    pub fn killing_form(&self, x: &Mat, y: &Mat) -> Result<Scalar> {
        let cx = self.coords(x)?;
        let cy = self.coords(y)?;
        Ok(self.killing_coords(&cx, &cy))
    }

    pub fn killing_coords(&self, cx: &[Scalar], cy: &[Scalar]) -> Scalar {
        dot(cx, &self.killing.mul_vec(cy))
    }

    /// Trace-form Gram matrix of the Cartan basis.
    pub fn cartan_trace_gram(&self) -> Mat {
        let hs = self.cartan_basis();
        let mut g = Mat::zeros(hs.len(), hs.len());
        for i in 0..hs.len() {
            for j in 0..hs.len() {
                g[(i, j)] = (&hs[i] * &hs[j]).trace();
            }
        }
        g
    }

    /// The weight taking the given values on the Cartan basis.
    pub fn weight_from_values(&self, values: &[Scalar]) -> Weight {
        let gram = self.cartan_trace_gram();
        let y = crate::exactlin::solve(&gram, values).expect("trace form is nondegenerate on h");
        let mut w = vec![Scalar::zero(); self.n];
        for (yj, h) in y.iter().zip(self.cartan_basis()) {
            for (k, d) in h.diagonal().iter().enumerate() {
                w[k] += yj * d;
            }
        }
        Weight(w)
    }

    /// `λ(H)` for a diagonal `H`.
    pub fn evaluate(lam: &Weight, h: &Mat) -> Scalar {
        dot(lam.coords(), &h.diagonal())
    }

    /// Weight of the standard basis vector `e_i` of the natural representation.
    pub fn natural_weight(&self, i: usize) -> Weight {
        let values: Vec<Scalar> = self.cartan_basis().iter().map(|h| h[(i, i)].clone()).collect();
        self.weight_from_values(&values)
    }

    /// `ad_{[b_i,b_j]} = [ad_{b_i}, ad_{b_j}]` on all basis pairs.
    pub fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in i + 1..dim {
                let lhs = bracket(&self.ad[i], &self.ad[j])?;
                let mut rhs = Mat::zeros(dim, dim);
                for k in 0..dim {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        rhs = &rhs + &self.ad[k].scale(c);
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvariantViolation(format!(
                        "{}: Jacobi fails on ({i},{j},·)",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if self.structure_constant(i, j, k) != &-self.structure_constant(j, i, k).clone() {
                        return Err(Error::InvariantViolation(format!("{}: antisymmetry", self.name)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `B([z,x],y) + B(x,[z,y]) = 0`, i.e. `ad_zᵀ K + K ad_z = 0`.
    pub fn check_killing_invariance(&self) -> Result<()> {
        for (i, a) in self.ad.iter().enumerate() {
            let lhs = &(&a.transpose() * &self.killing) + &(&self.killing * a);
            if !lhs.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "{}: Killing form not ad(b_{i})-invariant",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn killing_rank(&self) -> usize {
        rank(&self.killing)
    }

    /// All structural checks: antisymmetry, Jacobi, invariance and
    /// nondegeneracy of the Killing form.
    pub fn validate(&self) -> Result<()> {
        self.check_antisymmetry()?;
        self.check_jacobi()?;
        self.check_killing_invariance()?;
        if self.killing_rank() != self.dim() {
            return Err(Error::InvariantViolation(format!("{}: Killing form degenerate", self.name)));
        }
        Ok(())
    }
}

/// Orders root vectors deterministically after the Cartan elements.
fn assemble(name: &str, n: usize, mut elems: Vec<Mat>, factors: Vec<Factor>) -> Result<MatrixLieAlgebra> {
    let (mut cartan, mut roots): (Vec<Mat>, Vec<Mat>) = elems.drain(..).partition(Mat::is_diagonal);
    cartan.sort_by(|a, b| b.entries().cmp(a.entries()));
    roots.sort_by(|a, b| b.entries().cmp(a.entries()));
    let h = cartan.len();
    cartan.extend(roots);
    let g = MatrixLieAlgebra::from_basis(name, n, cartan, h, factors)?;
    g.validate()?;
    Ok(g)
}

/// sl(n): `E_ii − E_{i+1,i+1}` followed by the `E_ij`.
pub fn make_sl(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 2 {
        return Err(Error::SizeMismatch("sl(n) needs n >= 2".into()));
    }
    let mut basis = Vec::new();
    for i in 0..n - 1 {
        basis.push(&Mat::unit(n, i, i) - &Mat::unit(n, i + 1, i + 1));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(Mat::unit(n, i, j));
            }
        }
    }
    let g = MatrixLieAlgebra::from_basis(
        &format!("sl{n}"),
        n,
        basis,
        n - 1,
        vec![Factor { range: 0..n, kind: FactorKind::Sl }],
    )?;
    g.validate()?;
    Ok(g)
}

/// `{X : Xᵀ J + J X = 0}` for an invertible `J`.
fn form_algebra(form: &Mat) -> Vec<Mat> {
    let n = form.rows();
    // Unknowns: the n² entries of X; equations: entries of XᵀJ + JX.
    let mut eqs = Mat::zeros(n * n, n * n);
    for r in 0..n {
        for c in 0..n {
            let row = r * n + c;
            for k in 0..n {
                // (XᵀJ)_{rc} = Σ_k X_{kr} J_{kc}
                eqs[(row, k * n + r)] += &form[(k, c)];
                // (JX)_{rc} = Σ_k J_{rk} X_{kc}
                eqs[(row, k * n + c)] += &form[(r, k)];
            }
        }
    }
    kernel_basis(&eqs)
        .into_iter()
        .map(|v| Mat::from_flat(n, n, v))
        .collect()
}

/// so(n) relative to the symmetric form `form`.
pub fn make_so(form: &Mat) -> Result<MatrixLieAlgebra> {
    let n = form.rows();
    if !form.is_square() || form != &form.transpose() || form.determinant().is_zero() {
        return Err(Error::InvalidForm("so(n) needs an invertible symmetric form".into()));
    }
    if n < 3 {
        return Err(Error::InvalidForm("so(n) needs n >= 3".into()));
    }
    let elems = form_algebra(form);
    assemble(
        &format!("so{n}"),
        n,
        elems,
        vec![Factor { range: 0..n, kind: FactorKind::So(form.clone()) }],
    )
}

/// sp(2n) relative to `antidiag(1,…,1,−1,…,−1)`, whose diagonal Cartan is
/// `diag(a_1,…,a_n,−a_n,…,−a_1)`.
pub fn make_sp(n2: usize) -> Result<MatrixLieAlgebra> {
    if n2 < 2 || !n2.is_multiple_of(2) {
        return Err(Error::InvalidForm("sp needs an even size".into()));
    }
    let form = split_symplectic_form(n2);
    let elems = form_algebra(&form);
    assemble(
        &format!("sp{n2}"),
        n2,
        elems,
        vec![Factor { range: 0..n2, kind: FactorKind::Sp(form) }],
    )
}

pub fn split_symplectic_form(n2: usize) -> Mat {
    let mut f = Mat::zeros(n2, n2);
    for i in 0..n2 {
        f[(i, n2 - 1 - i)] = if i < n2 / 2 { Scalar::one() } else { -Scalar::one() };
    }
    f
}

/// `antidiag(1,…,1)`: symmetric form whose so(n) has a diagonal Cartan.
pub fn split_orthogonal_form(n: usize) -> Mat {
    let mut f = Mat::zeros(n, n);
    for i in 0..n {
        f[(i, n - 1 - i)] = Scalar::one();
    }
    f
}

/// Block-diagonal realization of `g1 ⊕ g2`.
pub fn direct_sum(g1: &MatrixLieAlgebra, g2: &MatrixLieAlgebra) -> Result<MatrixLieAlgebra> {
    let (n1, n2) = (g1.n(), g2.n());
    let z1 = Mat::zeros(n1, n1);
    let z2 = Mat::zeros(n2, n2);
    let mut basis = Vec::new();
    for h in g1.cartan_basis() {
        basis.push(Mat::block_diag(h, &z2));
    }
    for h in g2.cartan_basis() {
        basis.push(Mat::block_diag(&z1, h));
    }
    for i in g1.root_indices() {
        basis.push(Mat::block_diag(&g1.basis()[i], &z2));
    }
    for i in g2.root_indices() {
        basis.push(Mat::block_diag(&z1, &g2.basis()[i]));
    }
    let mut factors = g1.factors().to_vec();
    for f in g2.factors() {
        factors.push(Factor {
            range: f.range.start + n1..f.range.end + n1,
            kind: f.kind.clone(),
        });
    }
    let g = MatrixLieAlgebra::from_basis(
        &format!("{}+{}", g1.name(), g2.name()),
        n1 + n2,
        basis,
        g1.rank() + g2.rank(),
        factors,
    )?;
    g.validate()?;
    Ok(g)
}

/// Phase `φ ∈ [0,1)` with `e^{2πiφ}·c` in the simply connected group of the
/// factor, for a block `c` normalizing the factor's algebra. Returns `None`
/// when no such scalar exists (outer elements).
pub fn element_phase(kind: &FactorKind, c: &Mat) -> Option<Scalar> {
    let n = c.rows() as i64;
    let det = c.determinant();
    match kind {
        FactorKind::Sl => {
            if det == Scalar::one() {
                Some(Scalar::zero())
            } else if det == -Scalar::one() {
                Some(frac(1, 2 * n))
            } else {
                None
            }
        }
        FactorKind::So(form) => {
            if &(&c.transpose() * form) * c != *form {
                return None;
            }
            if det == Scalar::one() {
                Some(Scalar::zero())
            } else if n % 2 == 1 {
                Some(frac(1, 2))
            } else {
                None
            }
        }
        FactorKind::Sp(form) => {
            let t = &(&c.transpose() * form) * c;
            if t == *form {
                Some(Scalar::zero())
            } else if t == -form {
                Some(frac(1, 4))
            } else {
                None
            }
        }
    }
}

/// Sign `e^{2πi·phase·degree}`, which must be ±1.
pub fn phase_sign(phase: &Scalar, degree: i64) -> Option<Scalar> {
    let t = phase * int(degree);
    let twice = &t * int(2);
    if !twice.is_integer() {
        return None;
    }
    let odd = (twice.to_integer() % 2_i32) != 0.into();
    Some(if odd { -Scalar::one() } else { Scalar::one() })
}
