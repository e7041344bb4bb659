//! Polynomials on `p^N` and `a^N`, the derivation action of `k`, invariant
//! subspaces of `K` and `W₀` degree by degree, and the Reynolds projection.
//!
//! Variables are indexed copy-major: variable `c·m + i` is coordinate `i` of
//! copy `c`, where `m` is `dim p` (or `dim a`). Every group or Lie algebra
//! action below preserves the multidegree (degree in each copy), so all
//! linear algebra is done one multidegree block at a time.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{int, sparse_kernel, Mat, Scalar, SparseEchelon};
use crate::par::Exec;
use crate::sympair::SymmetricPair;

pub const DEFAULT_MONOMIAL_CAP: usize = 200_000;

pub type Monomial = Vec<u32>;

/// Number of degree-`d` monomials in `nvars` variables (saturating).
pub fn monomial_count(nvars: usize, d: usize) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    let mut c: u128 = 1;
    for i in 1..=d as u128 {
        c = c * (nvars as u128 - 1 + i) / i;
        if c > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    c as usize
}

fn monomials_unchecked(nvars: usize, d: u32) -> Vec<Monomial> {
    if nvars == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in monomials_unchecked(nvars - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Degree-`d` monomials in graded-lexicographic order (`x² > xy > y²`).
pub fn monomial_basis(nvars: usize, d: usize, cap: usize) -> Result<Vec<Monomial>> {
    let count = monomial_count(nvars, d);
    if count > cap {
        return Err(Error::MonomialCapExceeded { count, cap });
    }
    Ok(monomials_unchecked(nvars, d as u32))
}

/// Ways of splitting degree `d` over `copies` copies, in the same order.
pub fn multidegrees(copies: usize, d: usize) -> Vec<Vec<u32>> {
    monomials_unchecked(copies, d as u32)
}

/// Monomials of the given multidegree, `per_copy` variables per copy.
pub fn block_monomials(per_copy: usize, multidegree: &[u32]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = vec![Vec::new()];
    for &dc in multidegree {
        let part = monomials_unchecked(per_copy, dc);
        out = out
            .iter()
            .flat_map(|prefix| {
                part.iter().map(move |m| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(m);
                    v
                })
            })
            .collect();
    }
    out
}

fn multidegree_of(m: &[u32], per_copy: usize) -> Vec<u32> {
    m.chunks(per_copy.max(1)).map(|c| c.iter().sum()).collect()
}

/// A polynomial with exact coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(m, Scalar::one());
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut p = Poly::zero(m.len());
        p.add_term(m, Scalar::one());
        p
    }

    /// Polynomial with coefficient `v[i]` on `monomials[i]`.
    pub fn from_dense(nvars: usize, monomials: &[Monomial], v: &[Scalar]) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in monomials.iter().zip(v) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert_eq!(m.len(), self.nvars, "monomial has wrong number of variables");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn plus(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Poly) -> Poly {
        self.plus(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(Scalar::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { nvars: self.nvars, terms: acc }
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Replaces variable `i` by `forms[i]` (a polynomial in `forms[i].nvars()` variables).
    pub fn substitute(&self, forms: &[Poly]) -> Poly {
        assert_eq!(forms.len(), self.nvars);
        let target = forms.first().map_or(0, Poly::nvars);
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| (0..e).fold(Poly::constant(target, Scalar::one()), |acc, _| acc.mul(&forms[i])))
                    .clone();
                term = term.mul(&pw);
            }
            out = out.plus(&term);
        }
        out
    }

    /// Keeps variables `keep[j]` as new variable `j` and sends all others to zero.
    pub fn restrict_to(&self, keep: &[usize]) -> Poly {
        let mut out = Poly::zero(keep.len());
        let kept: std::collections::HashSet<usize> = keep.iter().copied().collect();
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(i, &e)| e > 0 && !kept.contains(&i)) {
                continue;
            }
            out.add_term(keep.iter().map(|&i| m[i]).collect(), c.clone());
        }
        out
    }

    /// Renames variable `j` to `targets[j]` in a space of `nvars` variables.
    pub fn embed(&self, targets: &[usize], nvars: usize) -> Poly {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut n = vec![0; nvars];
            for (j, &e) in m.iter().enumerate() {
                n[targets[j]] += e;
            }
            out.add_term(n, c.clone());
        }
        out
    }

    pub fn to_dense(&self, index: &HashMap<Monomial, usize>, len: usize) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); len];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| if *e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Image of `x^m` under the derivation with coordinate action `m_lin`
/// (column `i` holds the coefficients of `X·x_i`), per copy.
fn derive_monomial(m_lin: &Mat, per_copy: usize, m: &[u32]) -> Vec<(Monomial, Scalar)> {
    let mut out = Vec::new();
    for (v, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let (copy, i) = (v / per_copy, v % per_copy);
        for j in 0..per_copy {
            let a = &m_lin[(j, i)];
            if a.is_zero() {
                continue;
            }
            let mut n = m.to_vec();
            n[v] -= 1;
            n[copy * per_copy + j] += 1;
            out.push((n, a * int(e as i64)));
        }
    }
    out
}

/// Linear forms `x_i ↦ Σ_j C_ij x_j` in every copy.
fn substitution_forms(c: &Mat, copies: usize) -> Vec<Poly> {
    let per = c.rows();
    let nvars = per * copies;
    let mut forms = Vec::with_capacity(nvars);
    for copy in 0..copies {
        for i in 0..per {
            let mut p = Poly::zero(nvars);
            for j in 0..per {
                let mut m = vec![0; nvars];
                m[copy * per + j] = 1;
                p.add_term(m, c[(i, j)].clone());
            }
            forms.push(p);
        }
    }
    forms
}

/// Coordinate actions of `k` and of the component generators on `p`.
#[derive(Clone, Debug)]
pub struct PAction {
    per_copy: usize,
    /// `M = −Aᵀ` with `A` the matrix of `ad X` on `p`, one per `k_basis` element.
    derivations: Vec<Mat>,
    /// Matrix of `Ad c` on `p`, one per component generator.
    components: Vec<Mat>,
    /// `B(p_i, p_i)`.
    killing: Vec<Scalar>,
}

impl PAction {
    pub fn new(pair: &SymmetricPair) -> Result<Self> {
        let derivations = pair
            .k_basis
            .iter()
            .map(|x| pair.ad_on_p(x).map(|a| -&a.transpose()))
            .collect::<Result<Vec<_>>>()?;
        let components = pair
            .component_gens
            .iter()
            .map(|c| pair.group_on_p(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(PAction {
            per_copy: pair.dim_p(),
            derivations,
            components,
            killing: pair.p_killing_diagonal().to_vec(),
        })
    }

    pub fn per_copy(&self) -> usize {
        self.per_copy
    }

    /// Apolar weight `α! Π b_i^{−α_i}` of a monomial.
    fn pairing_weight(&self, m: &[u32]) -> Scalar {
        let mut w = Scalar::one();
        for (v, &e) in m.iter().enumerate() {
            let b = &self.killing[v % self.per_copy];
            for k in 1..=e {
                w = w * int(k as i64) / b;
            }
        }
        w
    }
}

/// Matrix of the derivation `X` on degree-`d` polynomials on `p^N`
/// (columns indexed by [`monomial_basis`]).
pub fn derivation_matrix(pair: &SymmetricPair, copies: usize, d: usize, x: &Mat) -> Result<Mat> {
    let in_k = pair.g.contains(x) && &pair.sigma.apply(x) == x;
    if !in_k {
        return Err(Error::NotInSpan(format!("{}: element is not in k", pair.id)));
    }
    let per = pair.dim_p();
    let m_lin = -&pair.ad_on_p(x)?.transpose();
    let basis = monomial_basis(per * copies, d, DEFAULT_MONOMIAL_CAP)?;
    let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = Mat::zeros(basis.len(), basis.len());
    for (j, m) in basis.iter().enumerate() {
        for (n, c) in derive_monomial(&m_lin, per, m) {
            out[(index[&n], j)] += c;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `K`-invariants on `p^N`.
    K,
    /// `W₀`-invariants on `a^N`.
    W0,
}

#[derive(Clone, Debug)]
pub struct GradedInvariantSpace {
    pub pair: String,
    pub copies: usize,
    pub degree: usize,
    pub side: Side,
    pub basis: Vec<Poly>,
}

impl GradedInvariantSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Subspace of one multidegree block with a fast coordinate map.
#[derive(Clone, Debug)]
struct BlockSpace {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    vecs: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    inv: Mat,
}

impl BlockSpace {
    fn new(monomials: Vec<Monomial>, vecs: Vec<Vec<Scalar>>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut e = SparseEchelon::new(monomials.len());
        for v in &vecs {
            let grew = e.insert_dense(v);
            assert!(grew, "block basis must be independent");
        }
        let pivots = e.pivots();
        let sub = Mat::from_rows(vecs.iter().map(|v| pivots.iter().map(|&p| v[p].clone()).collect()).collect()).transpose();
        let inv = sub.inverse().unwrap_or_else(|| Mat::zeros(0, 0));
        BlockSpace { monomials, index, vecs, pivots, inv }
    }

    fn dim(&self) -> usize {
        self.vecs.len()
    }

    fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.vecs.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let rhs: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let c = self.inv.mul_vec(&rhs);
        let mut back = vec![Scalar::zero(); v.len()];
        for (ci, u) in c.iter().zip(&self.vecs) {
            if ci.is_zero() {
                continue;
            }
            for (b, x) in back.iter_mut().zip(u) {
                *b += ci * x;
            }
        }
        (back == v).then_some(c)
    }
}

/// Splits a homogeneous polynomial into its multidegree blocks.
fn split_blocks(p: &Poly, per_copy: usize) -> BTreeMap<Vec<u32>, Poly> {
    let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        out.entry(multidegree_of(m, per_copy))
            .or_insert_with(|| Poly::zero(p.nvars()))
            .add_term(m.clone(), c.clone());
    }
    out
}

/// Invariants of one block together with the data of the Reynolds projection.
#[derive(Clone, Debug)]
struct KBlock {
    multidegree: Vec<u32>,
    space: BlockSpace,
    weights: Vec<Scalar>,
    gram_inv: Mat,
    complement_rank: usize,
}

/// Degree-`d` `K`-invariants on `p^N` with the Reynolds projection onto them.
#[derive(Clone, Debug)]
pub struct KInvariants {
    pub pair: String,
    pub copies: usize,
    pub degree: usize,
    per_copy: usize,
    blocks: Vec<KBlock>,
}

impl KInvariants {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.space.dim()).sum()
    }

    pub fn nvars(&self) -> usize {
        self.per_copy * self.copies
    }

    pub fn total_monomials(&self) -> usize {
        self.blocks.iter().map(|b| b.space.monomials.len()).sum()
    }

    /// `Σ rank span{X·m, g·m − m}` over blocks (the Reynolds kernel).
    pub fn complement_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.complement_rank).sum()
    }

    pub fn basis(&self) -> Vec<Poly> {
        let n = self.nvars();
        self.blocks
            .iter()
            .flat_map(|b| b.space.vecs.iter().map(|v| Poly::from_dense(n, &b.space.monomials, v)))
            .collect()
    }

    pub fn space(&self) -> GradedInvariantSpace {
        GradedInvariantSpace {
            pair: self.pair.clone(),
            copies: self.copies,
            degree: self.degree,
            side: Side::K,
            basis: self.basis(),
        }
    }

    fn block_of(&self, md: &[u32]) -> Option<&KBlock> {
        self.blocks.iter().find(|b| b.multidegree == md)
    }

    fn check_poly(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::SizeMismatch(format!(
                "polynomial has {} variables, expected {}",
                p.nvars(),
                self.nvars()
            )));
        }
        if p.homogeneous_degree().is_some_and(|d| d as usize != self.degree) {
            return Err(Error::SizeMismatch("polynomial has the wrong degree".into()));
        }
        Ok(())
    }

    /// Coefficients of `R(p)` along [`KInvariants::basis`].
    pub fn reynolds_coords(&self, p: &Poly) -> Result<Vec<Scalar>> {
        self.check_poly(p)?;
        let parts = split_blocks(p, self.per_copy);
        let mut out = Vec::with_capacity(self.dim());
        for b in &self.blocks {
            let Some(part) = parts.get(&b.multidegree) else {
                out.extend(std::iter::repeat_n(Scalar::zero(), b.space.dim()));
                continue;
            };
            let v = part
                .to_dense(&b.space.index, b.space.monomials.len())
                .expect("block polynomial uses block monomials");
            let pairings: Vec<Scalar> = b
                .space
                .vecs
                .iter()
                .map(|f| apolar(f, &v, &b.weights))
                .collect();
            out.extend(b.gram_inv.mul_vec(&pairings));
        }
        Ok(out)
    }

    /// The Reynolds projection `R(p)`.
    pub fn reynolds(&self, p: &Poly) -> Result<Poly> {
        let c = self.reynolds_coords(p)?;
        Ok(self.combine(&c))
    }

    pub fn combine(&self, c: &[Scalar]) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (ci, f) in c.iter().zip(self.basis()) {
            out = out.plus(&f.scale(ci));
        }
        out
    }

    /// Coordinates of an invariant along the basis, or `None` if `p` is not invariant.
    pub fn coords(&self, p: &Poly) -> Result<Option<Vec<Scalar>>> {
        self.check_poly(p)?;
        let parts = split_blocks(p, self.per_copy);
        if parts.keys().any(|md| self.block_of(md).is_none()) {
            return Ok(None);
        }
        let mut out = Vec::new();
        for b in &self.blocks {
            match parts.get(&b.multidegree) {
                None => out.extend(std::iter::repeat_n(Scalar::zero(), b.space.dim())),
                Some(part) => {
                    let v = part.to_dense(&b.space.index, b.space.monomials.len()).expect("block monomials");
                    match b.space.coords(&v) {
                        Some(c) => out.extend(c),
                        None => return Ok(None),
                    }
                }
            }
        }
        Ok(Some(out))
    }

    /// Post-hoc checks of the projection: `R` fixes every basis element
    /// (equivalently `R² = R`), kills `X·m` and `g·m − m` for every
    /// monomial `m`, and `dim(invariants) + dim(complement) = total`.
    pub fn verify_reynolds(&self, action: &PAction) -> Result<()> {
        let total = self.total_monomials();
        if self.dim() + self.complement_dim() != total {
            return Err(Error::ReynoldsDirectSum {
                invariants: self.dim(),
                complement: self.complement_dim(),
                total,
            });
        }
        let n = self.nvars();
        for (i, f) in self.basis().iter().enumerate() {
            let c = self.reynolds_coords(f)?;
            if c.iter().enumerate().any(|(j, x)| if i == j { !x.is_one() } else { !x.is_zero() }) {
                return Err(Error::InvariantViolation("Reynolds is not idempotent".into()));
            }
        }
        let forms: Vec<Vec<Poly>> = action.components.iter().map(|c| substitution_forms(c, self.copies)).collect();
        for b in &self.blocks {
            for m in &b.space.monomials {
                let mut images: Vec<Poly> = action
                    .derivations
                    .iter()
                    .map(|d| {
                        let mut p = Poly::zero(n);
                        for (mm, c) in derive_monomial(d, self.per_copy, m) {
                            p.add_term(mm, c);
                        }
                        p
                    })
                    .collect();
                for f in &forms {
                    let mono = Poly::monomial(m.clone());
                    images.push(mono.substitute(f).minus(&mono));
                }
                for img in images {
                    if img.is_zero() {
                        continue;
                    }
                    if self.reynolds_coords(&img)?.iter().any(|x| !x.is_zero()) {
                        return Err(Error::InvariantViolation("Reynolds does not kill the complement".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

fn apolar(u: &[Scalar], v: &[Scalar], weights: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for ((a, b), w) in u.iter().zip(v).zip(weights) {
        if !a.is_zero() && !b.is_zero() {
            s += a * b * w;
        }
    }
    s
}

fn k_block(action: &PAction, copies: usize, md: Vec<u32>) -> Result<KBlock> {
    let per = action.per_copy;
    let nvars = per * copies;
    let monomials = block_monomials(per, &md);
    let len = monomials.len();
    let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

    // Columns of each derivation on this block.
    let columns: Vec<Vec<Vec<(usize, Scalar)>>> = action
        .derivations
        .iter()
        .map(|d| {
            monomials
                .iter()
                .map(|m| {
                    let mut col: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (n, c) in derive_monomial(d, per, m) {
                        *col.entry(index[&n]).or_insert_with(Scalar::zero) += c;
                    }
                    col.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                })
                .collect()
        })
        .collect();

    // Joint kernel: rows are (derivation, output monomial).
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for cols in &columns {
        let mut by_row: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                by_row.entry(*i).or_default().push((j, c.clone()));
            }
        }
        rows.extend(by_row.into_values());
    }
    let k0 = sparse_kernel(len, rows);

    // Component-group images of monomials (needed for the complement as well).
    let forms: Vec<Vec<Poly>> = action.components.iter().map(|c| substitution_forms(c, copies)).collect();
    let shifted: Vec<Vec<Vec<(usize, Scalar)>>> = forms
        .iter()
        .map(|f| {
            monomials
                .iter()
                .map(|m| {
                    let mono = Poly::monomial(m.clone());
                    let img = mono.substitute(f).minus(&mono);
                    img.terms()
                        .iter()
                        .map(|(n, c)| (index[n], c.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();

    // Fixed vectors of the component generators inside the K⁰-invariants.
    let invariants: Vec<Vec<Scalar>> = if shifted.is_empty() || k0.is_empty() {
        k0
    } else {
        let mut eqs: Vec<Vec<(usize, Scalar)>> = Vec::new();
        for sh in &shifted {
            // (g − 1)·Σ c_k f_k = 0, one equation per monomial.
            let mut by_row: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
            for (k, f) in k0.iter().enumerate() {
                let mut img: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (j, fj) in f.iter().enumerate() {
                    if fj.is_zero() {
                        continue;
                    }
                    for (i, c) in &sh[j] {
                        *img.entry(*i).or_insert_with(Scalar::zero) += fj * c;
                    }
                }
                for (i, c) in img {
                    if !c.is_zero() {
                        by_row.entry(i).or_default().push((k, c));
                    }
                }
            }
            eqs.extend(by_row.into_values());
        }
        let comb = sparse_kernel(k0.len(), eqs);
        comb.iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(); len];
                for (ck, f) in c.iter().zip(&k0) {
                    if ck.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(f) {
                        *x += ck * y;
                    }
                }
                v
            })
            .collect()
    };

    let mut comp = SparseEchelon::new(len);
    for cols in columns.iter().chain(shifted.iter()) {
        for col in cols {
            if comp.rank() == len {
                break;
            }
            comp.insert(col.clone());
        }
    }

    // Post-hoc: every invariant is annihilated and fixed.
    for v in &invariants {
        let p = Poly::from_dense(nvars, &monomials, v);
        for d in &action.derivations {
            let mut img = Poly::zero(nvars);
            for (m, c) in p.terms() {
                for (n, e) in derive_monomial(d, per, m) {
                    img.add_term(n, c * e);
                }
            }
            if !img.is_zero() {
                return Err(Error::InvariantViolation("invariant not annihilated by k".into()));
            }
        }
        for f in &forms {
            if p.substitute(f) != p {
                return Err(Error::InvariantViolation("invariant not fixed by a component generator".into()));
            }
        }
    }

    let weights: Vec<Scalar> = monomials.iter().map(|m| action.pairing_weight(m)).collect();
    let r = invariants.len();
    let mut gram = Mat::zeros(r, r);
    for i in 0..r {
        for j in 0..=i {
            let v = apolar(&invariants[i], &invariants[j], &weights);
            gram[(i, j)] = v.clone();
            gram[(j, i)] = v;
        }
    }
    let gram_inv = gram
        .inverse()
        .ok_or_else(|| Error::InvariantViolation("apolar pairing degenerate on invariants".into()))?;
    Ok(KBlock {
        multidegree: md,
        space: BlockSpace::new(monomials, invariants),
        weights,
        gram_inv,
        complement_rank: comp.rank(),
    })
}

/// Degree-`d` `K`-invariants on `p^N` with their Reynolds projection.
/// Fails if the invariants and the span of `{X·m, g·m − m}` do not fill the
/// degree-`d` polynomials as a direct sum.
pub fn k_invariants(pair: &SymmetricPair, copies: usize, d: usize, cap: usize, exec: Exec) -> Result<KInvariants> {
    let action = PAction::new(pair)?;
    k_invariants_with(&action, &pair.id, copies, d, cap, exec)
}

pub fn k_invariants_with(
    action: &PAction,
    pair_id: &str,
    copies: usize,
    d: usize,
    cap: usize,
    exec: Exec,
) -> Result<KInvariants> {
    let count = monomial_count(action.per_copy * copies, d);
    if count > cap {
        return Err(Error::MonomialCapExceeded { count, cap });
    }
    let blocks = exec
        .map(multidegrees(copies, d), |md| k_block(action, copies, md))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let inv = KInvariants {
        pair: pair_id.to_string(),
        copies,
        degree: d,
        per_copy: action.per_copy,
        blocks,
    };
    let total = inv.total_monomials();
    if inv.dim() + inv.complement_dim() != total {
        return Err(Error::ReynoldsDirectSum {
            invariants: inv.dim(),
            complement: inv.complement_dim(),
            total,
        });
    }
    Ok(inv)
}

pub fn k_invariant_space(pair: &SymmetricPair, copies: usize, d: usize) -> Result<GradedInvariantSpace> {
    Ok(k_invariants(pair, copies, d, DEFAULT_MONOMIAL_CAP, Exec::default())?.space())
}

/// Matrix of the Reynolds projection on the degree-`d` monomial basis of `p^N`.
pub fn reynolds(pair: &SymmetricPair, copies: usize, d: usize) -> Result<Mat> {
    let inv = k_invariants(pair, copies, d, DEFAULT_MONOMIAL_CAP, Exec::default())?;
    let n = inv.nvars();
    let basis = monomial_basis(n, d, DEFAULT_MONOMIAL_CAP)?;
    let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = Mat::zeros(basis.len(), basis.len());
    for (j, m) in basis.iter().enumerate() {
        let r = inv.reynolds(&Poly::monomial(m.clone()))?;
        for (mm, c) in r.terms() {
            out[(index[mm], j)] = c.clone();
        }
    }
    Ok(out)
}

/// Degree-`d` `W₀`-invariants on `a^N`, by averaging monomials over `W₀`.
#[derive(Clone, Debug)]
pub struct W0Invariants {
    pub pair: String,
    pub copies: usize,
    pub degree: usize,
    per_copy: usize,
    blocks: Vec<(Vec<u32>, BlockSpace)>,
}

impl W0Invariants {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.dim()).sum()
    }

    pub fn nvars(&self) -> usize {
        self.per_copy * self.copies
    }

    pub fn basis(&self) -> Vec<Poly> {
        let n = self.nvars();
        self.blocks
            .iter()
            .flat_map(|(_, b)| b.vecs.iter().map(|v| Poly::from_dense(n, &b.monomials, v)))
            .collect()
    }

    pub fn space(&self) -> GradedInvariantSpace {
        GradedInvariantSpace {
            pair: self.pair.clone(),
            copies: self.copies,
            degree: self.degree,
            side: Side::W0,
            basis: self.basis(),
        }
    }

    /// Coordinates along the basis, or `None` if `p` is not `W₀`-invariant.
    pub fn coords(&self, p: &Poly) -> Result<Option<Vec<Scalar>>> {
        if p.nvars() != self.nvars() {
            return Err(Error::SizeMismatch("polynomial on a^N has the wrong number of variables".into()));
        }
        let parts = split_blocks(p, self.per_copy);
        if parts.keys().any(|md| !self.blocks.iter().any(|(b, _)| b == md)) {
            return Ok(None);
        }
        let mut out = Vec::new();
        for (md, b) in &self.blocks {
            match parts.get(md) {
                None => out.extend(std::iter::repeat_n(Scalar::zero(), b.dim())),
                Some(part) => {
                    let v = part.to_dense(&b.index, b.monomials.len()).expect("block monomials");
                    match b.coords(&v) {
                        Some(c) => out.extend(c),
                        None => return Ok(None),
                    }
                }
            }
        }
        Ok(Some(out))
    }
}

pub fn w0_invariants(pair: &SymmetricPair, copies: usize, d: usize, cap: usize, exec: Exec) -> Result<W0Invariants> {
    let r = pair.rank();
    let count = monomial_count(r * copies, d);
    if count > cap {
        return Err(Error::MonomialCapExceeded { count, cap });
    }
    let forms: Vec<Vec<Poly>> = pair.w0.elements().iter().map(|g| substitution_forms(g, copies)).collect();
    let order = int(pair.w0.order() as i64);
    let blocks = exec.map(multidegrees(copies, d), |md| {
        let monomials = block_monomials(r, &md);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut e = SparseEchelon::new(monomials.len());
        for m in &monomials {
            let mono = Poly::monomial(m.clone());
            let mut avg = Poly::zero(r * copies);
            for f in &forms {
                avg = avg.plus(&mono.substitute(f));
            }
            let v = avg.scale(&(Scalar::one() / &order)).to_dense(&index, monomials.len()).expect("W0 preserves the block");
            e.insert_dense(&v);
        }
        (md, BlockSpace::new(monomials, e.reduced_basis()))
    });
    Ok(W0Invariants {
        pair: pair.id.clone(),
        copies,
        degree: d,
        per_copy: r,
        blocks,
    })
}

pub fn w0_invariant_space(pair: &SymmetricPair, copies: usize, d: usize) -> Result<GradedInvariantSpace> {
    Ok(w0_invariants(pair, copies, d, DEFAULT_MONOMIAL_CAP, Exec::default())?.space())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rank;
    use crate::rootsys::molien_dim;
    use crate::sympair::build_pair;

    #[test]
    fn monomial_examples() {
        assert_eq!(monomial_basis(2, 2, 100).unwrap(), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomial_basis(4, 0, 100).unwrap(), vec![vec![0, 0, 0, 0]]);
        assert_eq!(monomial_basis(3, 2, 100).unwrap().len(), 6);
        assert!(matches!(
            monomial_basis(10, 10, 100),
            Err(Error::MonomialCapExceeded { count: 92378, cap: 100 })
        ));
        assert_eq!(monomial_count(12, 4), 1365);
        let blocks: usize = multidegrees(2, 3).iter().map(|md| block_monomials(2, md).len()).sum();
        assert_eq!(blocks, monomial_count(4, 3));
    }

    #[test]
    fn poly_substitution() {
        // (x + y)^2 with x ↦ y, y ↦ x is unchanged.
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.plus(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.substitute(&[y.clone(), x.clone()]), sq);
        assert_eq!(sq.restrict_to(&[0]), Poly::var(1, 0).mul(&Poly::var(1, 0)));
        assert!(x.minus(&x).is_zero());
    }

    #[test]
    fn derivation_examples() {
        let pair = build_pair("AI:2").unwrap();
        let x = &pair.k_basis[0];
        assert_eq!(derivation_matrix(&pair, 1, 0, x).unwrap(), Mat::zeros(1, 1));
        assert_eq!(rank(&derivation_matrix(&pair, 1, 1, x).unwrap()), 2);
        let zero = Mat::zeros(2, 2);
        assert!(derivation_matrix(&pair, 1, 2, &zero).unwrap().is_zero());
        assert!(derivation_matrix(&pair, 1, 1, &pair.p_basis[0]).is_err());
    }

    #[test]
    fn ai2_invariant_dimensions() {
        let pair = build_pair("AI:2").unwrap();
        let dims: Vec<usize> = (0..=4).map(|d| k_invariant_space(&pair, 1, d).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1]);
        assert_eq!(k_invariant_space(&pair, 2, 2).unwrap().dim(), 3);
        assert_eq!(w0_invariant_space(&pair, 1, 2).unwrap().dim(), 1);
        assert_eq!(w0_invariant_space(&pair, 2, 2).unwrap().dim(), 3);
    }

    #[test]
    fn adjoint_sl2_invariants() {
        let pair = build_pair("ADJ:sl2").unwrap();
        let dims: Vec<usize> = (0..=6).map(|d| k_invariant_space(&pair, 1, d).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1]);
        let molien: Vec<usize> = (0..=6).map(|d| molien_dim(&pair.w0, 1, d)).collect();
        assert_eq!(dims, molien);
    }

    #[test]
    fn w0_dims_match_molien() {
        for id in ["AI:3", "AIII:2,1", "CI:2", "ADJ:sl3"] {
            let pair = build_pair(id).unwrap();
            for copies in 1..=2 {
                for d in 0..=4 {
                    let w = w0_invariants(&pair, copies, d, DEFAULT_MONOMIAL_CAP, Exec::Sequential).unwrap();
                    assert_eq!(w.dim(), molien_dim(&pair.w0, copies, d), "{id} N={copies} d={d}");
                }
            }
        }
    }

    #[test]
    fn reynolds_properties_ai2() {
        let pair = build_pair("AI:2").unwrap();
        let action = PAction::new(&pair).unwrap();
        for d in 0..=4 {
            let r = reynolds(&pair, 1, d).unwrap();
            assert_eq!(&r * &r, r, "d={d}");
            let inv = k_invariants(&pair, 1, d, DEFAULT_MONOMIAL_CAP, Exec::Sequential).unwrap();
            inv.verify_reynolds(&action).unwrap();
            for f in inv.basis() {
                assert_eq!(inv.reynolds(&f).unwrap(), f);
            }
            let x = &pair.k_basis[0];
            let dm = derivation_matrix(&pair, 1, d, x).unwrap();
            assert!((&r * &dm).is_zero());
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let pair = build_pair("AI:3").unwrap();
        let a = k_invariants(&pair, 2, 2, DEFAULT_MONOMIAL_CAP, Exec::Sequential).unwrap();
        let b = k_invariants(&pair, 2, 2, DEFAULT_MONOMIAL_CAP, Exec::Parallel).unwrap();
        assert_eq!(a.basis(), b.basis());
    }
}
