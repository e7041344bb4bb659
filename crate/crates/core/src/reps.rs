//! Highest-weight modules realized inside tensor products of exterior powers
//! of the natural representation, spherical vectors, the support statements
//! about them, and the Cartan-component claim on `V_λ ⊗ V_µ`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{int, kernel_basis, rank, rank_of_vectors, solve, Mat, Scalar, SparseEchelon};
use crate::liealg::{element_phase, FactorKind, MatrixLieAlgebra};
use crate::rootsys::{weyl_dimension, Weight};
use crate::sympair::SymmetricPair;

pub type SparseVec = BTreeMap<usize, Scalar>;

#[derive(Clone, Copy, Debug)]
pub struct RepCaps {
    pub module: usize,
    pub tensor: usize,
    pub ambient: usize,
}

impl Default for RepCaps {
    fn default() -> Self {
        RepCaps {
            module: 500,
            tensor: 2500,
            ambient: 200_000,
        }
    }
}

fn add_scaled(acc: &mut SparseVec, v: &SparseVec, s: &Scalar) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Scalar::zero);
        *e += x * s;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in k_subsets(n - first - 1, k - 1) {
            let mut s = vec![first];
            s.extend(rest.iter().map(|r| r + first + 1));
            out.push(s);
        }
    }
    out
}

/// `Λ^k V` of one simple factor, `V` its natural representation.
#[derive(Clone, Debug)]
struct Block {
    factor: usize,
    k: usize,
    subsets: Vec<Vec<usize>>,
    weights: Vec<Weight>,
    /// `cols[b][j]`: sparse column `j` of basis element `b` acting on the block.
    cols: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl Block {
    fn new(g: &MatrixLieAlgebra, factor: usize, k: usize) -> Self {
        let f = &g.factors()[factor];
        let (off, n) = (f.range.start, f.size());
        let subsets = k_subsets(n, k);
        let index: HashMap<Vec<usize>, usize> = subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let nat: Vec<Weight> = (0..n).map(|i| g.natural_weight(off + i)).collect();
        let weights = subsets
            .iter()
            .map(|s| s.iter().fold(Weight::zero(g.n()), |acc, &i| &acc + &nat[i]))
            .collect();
        let cols = g
            .basis()
            .iter()
            .map(|x| {
                subsets
                    .iter()
                    .map(|s| {
                        let mut col: BTreeMap<usize, Scalar> = BTreeMap::new();
                        for (t, &st) in s.iter().enumerate() {
                            for i in 0..n {
                                let a = &x[(off + i, off + st)];
                                if a.is_zero() || (i != st && s.contains(&i)) {
                                    continue;
                                }
                                let mut r = s.clone();
                                r[t] = i;
                                let sign = sort_sign(&mut r);
                                *col.entry(index[&r]).or_insert_with(Scalar::zero) += a * int(sign);
                            }
                        }
                        col.into_iter().filter(|(_, v)| !v.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        Block {
            factor,
            k,
            subsets,
            weights,
            cols,
        }
    }

    fn dim(&self) -> usize {
        self.subsets.len()
    }

    /// `Λ^k c_f` with entries `det c_f[S, T]`.
    fn group_matrix(&self, cf: &Mat) -> Mat {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for (j, t) in self.subsets.iter().enumerate() {
            for (i, s) in self.subsets.iter().enumerate() {
                let minor = Mat::from_rows(
                    s.iter()
                        .map(|&r| t.iter().map(|&c| cf[(r, c)].clone()).collect())
                        .collect(),
                );
                m[(i, j)] = minor.determinant();
            }
        }
        m
    }
}

/// Sorts `v` in place and returns the sign of the permutation.
fn sort_sign(v: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// Tensor product of blocks with the diagonal action of `g`.
#[derive(Clone, Debug)]
pub struct TensorAmbient {
    blocks: Vec<Block>,
    strides: Vec<usize>,
    dim: usize,
    nfactors: usize,
}

impl TensorAmbient {
    fn new(blocks: Vec<Block>, nfactors: usize, cap: usize) -> Result<Self> {
        let mut dim: usize = 1;
        for b in &blocks {
            dim = dim.saturating_mul(b.dim());
        }
        if dim > cap {
            return Err(Error::TensorCapExceeded { dim, cap });
        }
        let mut strides = vec![1; blocks.len()];
        for i in (0..blocks.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * blocks[i + 1].dim();
        }
        Ok(TensorAmbient {
            blocks,
            strides,
            dim,
            nfactors,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exterior degrees used, as `(factor, k)`.
    pub fn layout(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.factor, b.k)).collect()
    }

    fn digits(&self, idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .zip(&self.blocks)
            .map(|(s, b)| (idx / s) % b.dim())
            .collect()
    }

    fn weight_of(&self, idx: usize, n: usize) -> Weight {
        self.digits(idx)
            .iter()
            .zip(&self.blocks)
            .fold(Weight::zero(n), |acc, (d, b)| &acc + &b.weights[*d])
    }

    fn apply_basis(&self, x: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&idx, c) in v {
            let digits = self.digits(idx);
            for (k, b) in self.blocks.iter().enumerate() {
                for (r, a) in &b.cols[x][digits[k]] {
                    let j = idx + r * self.strides[k] - digits[k] * self.strides[k];
                    let e = out.entry(j).or_insert_with(Scalar::zero);
                    *e += a * c;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Action of an ambient group element `c` normalized into the simply
    /// connected group factor by factor. Fails when the normalization is not
    /// well defined on this ambient.
    fn group_action(&self, g: &MatrixLieAlgebra, c: &Mat) -> Result<(Vec<Mat>, Scalar)> {
        let mut phase = Scalar::zero();
        let mut degree = vec![0i64; self.nfactors];
        for b in &self.blocks {
            degree[b.factor] += b.k as i64;
        }
        let mut per_factor = Vec::new();
        for (fi, f) in g.factors().iter().enumerate() {
            let (off, n) = (f.range.start, f.size());
            for i in 0..g.n() {
                for j in 0..g.n() {
                    let inside = f.range.contains(&i) == f.range.contains(&j);
                    if !inside && !c[(i, j)].is_zero() {
                        return Err(Error::NoLift("group element is not block diagonal".into()));
                    }
                }
            }
            let cf = c.block(off, off, n, n);
            let phi = element_phase(&f.kind, &cf)
                .ok_or_else(|| Error::NoLift("element outside the normalized group".into()))?;
            phase += phi * int(degree[fi]);
            per_factor.push(cf);
        }
        let twice = &phase * int(2);
        if !twice.is_integer() {
            return Err(Error::NoLift("phase does not act by a sign on this module".into()));
        }
        let sign = if twice.to_integer() % 2_i32 != 0.into() { -Scalar::one() } else { Scalar::one() };
        let mats = self
            .blocks
            .iter()
            .map(|b| b.group_matrix(&per_factor[b.factor]))
            .collect();
        Ok((mats, sign))
    }

    fn apply_group(&self, mats: &[Mat], sign: &Scalar, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&idx, c) in v {
            let digits = self.digits(idx);
            // Expand the tensor product of columns.
            let mut terms: Vec<(usize, Scalar)> = vec![(0, c * sign)];
            for (k, m) in mats.iter().enumerate() {
                let mut next = Vec::new();
                for (pos, val) in &terms {
                    for r in 0..m.rows() {
                        let a = &m[(r, digits[k])];
                        if !a.is_zero() {
                            next.push((pos + r * self.strides[k], val * a));
                        }
                    }
                }
                terms = next;
            }
            for (j, val) in terms {
                *out.entry(j).or_insert_with(Scalar::zero) += val;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// A finite-dimensional representation of `g` given by matrices in a basis of weight vectors.
#[derive(Clone, Debug)]
pub struct WeightedVectorSpace {
    pub dim: usize,
    /// `action[i]` is the matrix of `g.basis()[i]`.
    pub action: Vec<Mat>,
    pub weights: Vec<Weight>,
}

impl WeightedVectorSpace {
    /// Matrix of an arbitrary element of `g`.
    pub fn element(&self, g: &MatrixLieAlgebra, x: &Mat) -> Result<Mat> {
        let c = g.coords(x)?;
        let mut m = Mat::zeros(self.dim, self.dim);
        for (ci, a) in c.iter().zip(&self.action) {
            if !ci.is_zero() {
                m = &m + &a.scale(ci);
            }
        }
        Ok(m)
    }

    /// `[ρ(b_i), ρ(b_j)] = ρ([b_i, b_j])` on all basis pairs, and `h` diagonal
    /// with the recorded weights.
    pub fn check_representation(&self, g: &MatrixLieAlgebra) -> Result<()> {
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let lhs = &(&self.action[i] * &self.action[j]) - &(&self.action[j] * &self.action[i]);
                let mut rhs = Mat::zeros(self.dim, self.dim);
                for k in 0..g.dim() {
                    let c = g.structure_constant(i, j, k);
                    if !c.is_zero() {
                        rhs = &rhs + &self.action[k].scale(c);
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvariantViolation(format!("bracket relation fails on ({i},{j})")));
                }
            }
        }
        for (h, hm) in g.cartan_basis().iter().zip(&self.action) {
            let expect: Vec<Scalar> = self.weights.iter().map(|w| MatrixLieAlgebra::evaluate(w, h)).collect();
            if !hm.is_diagonal() || hm.diagonal() != expect {
                return Err(Error::InvariantViolation("Cartan action does not match weights".into()));
            }
        }
        Ok(())
    }

    /// Diagonal action on the tensor product.
    pub fn tensor(&self, other: &WeightedVectorSpace, cap: usize) -> Result<WeightedVectorSpace> {
        let dim = self.dim * other.dim;
        if dim > cap {
            return Err(Error::TensorCapExceeded { dim, cap });
        }
        let id1 = Mat::identity(self.dim);
        let id2 = Mat::identity(other.dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| &kron(a, &id2) + &kron(&id1, b))
            .collect();
        let weights = self
            .weights
            .iter()
            .flat_map(|w1| other.weights.iter().map(move |w2| w1 + w2))
            .collect();
        Ok(WeightedVectorSpace { dim, action, weights })
    }
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut m = Mat::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    let y = &b[(k, l)];
                    if !y.is_zero() {
                        m[(i * br + k, j * bc + l)] = x * y;
                    }
                }
            }
        }
    }
    m
}

/// Coordinates inside one weight space of a module.
#[derive(Clone, Debug)]
struct WeightSpace {
    members: Vec<usize>,
    pivots: Vec<usize>,
    inv: Mat,
}

/// `V_λ` inside a tensor ambient; basis vector 0 is the highest-weight vector.
#[derive(Clone, Debug)]
pub struct HWModule {
    pub lam: Weight,
    pub carrier: WeightedVectorSpace,
    ambient: TensorAmbient,
    vectors: Vec<SparseVec>,
    spaces: HashMap<Weight, WeightSpace>,
}

impl HWModule {
    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    /// Coordinates of the highest-weight vector.
    pub fn hwv(&self) -> Vec<Scalar> {
        unit(self.dim(), 0)
    }

    fn coords(&self, v: &SparseVec, n: usize) -> Option<Vec<Scalar>> {
        let mut parts: BTreeMap<Weight, SparseVec> = BTreeMap::new();
        for (i, c) in v {
            parts.entry(self.ambient.weight_of(*i, n)).or_default().insert(*i, c.clone());
        }
        let mut out = vec![Scalar::zero(); self.dim()];
        for (w, part) in parts {
            let ws = self.spaces.get(&w)?;
            let rhs: Vec<Scalar> = ws.pivots.iter().map(|p| part.get(p).cloned().unwrap_or_else(Scalar::zero)).collect();
            let c = ws.inv.mul_vec(&rhs);
            let mut back = SparseVec::new();
            for (ci, &m) in c.iter().zip(&ws.members) {
                add_scaled(&mut back, &self.vectors[m], ci);
            }
            if back != part {
                return None;
            }
            for (ci, &m) in c.into_iter().zip(&ws.members) {
                out[m] = ci;
            }
        }
        Some(out)
    }

    /// Matrix of an ambient group element (normalized into the simply connected group).
    pub fn group_matrix(&self, g: &MatrixLieAlgebra, c: &Mat) -> Result<Mat> {
        let (mats, sign) = self.ambient.group_action(g, c)?;
        let cols = self
            .vectors
            .iter()
            .map(|v| {
                let img = self.ambient.apply_group(&mats, &sign, v);
                self.coords(&img, g.n())
                    .ok_or_else(|| Error::InvariantViolation("group element does not preserve the module".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_cols(&cols, self.dim()))
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn root_index(g: &MatrixLieAlgebra, alpha: &Weight) -> Result<usize> {
    g.root_indices()
        .find(|&i| g.weight_of(i) == alpha)
        .ok_or_else(|| Error::InvariantViolation(format!("{alpha} is not a root")))
}

/// Candidate blocks and their highest weights for the pair's positive system.
fn candidate_blocks(pair: &SymmetricPair) -> Result<Vec<(Block, usize, Weight)>> {
    let g = &pair.g;
    let raising: Vec<usize> = pair.simple_roots.iter().map(|a| root_index(g, a)).collect::<Result<_>>()?;
    let rho = crate::rootsys::half_sum(&pair.positive_roots);
    let mut out = Vec::new();
    for (fi, f) in g.factors().iter().enumerate() {
        let n = f.size();
        let top = match f.kind {
            FactorKind::Sl => n - 1,
            _ => n / 2,
        };
        for k in 1..=top {
            let b = Block::new(g, fi, k);
            // Highest weight: killed by the raising operators, maximal against ρ.
            let best = (0..b.dim())
                .filter(|&j| raising.iter().all(|&r| b.cols[r][j].is_empty()))
                .max_by(|&x, &y| b.weights[x].inner(&rho).cmp(&b.weights[y].inner(&rho)))
                .ok_or_else(|| Error::NoHighestWeightVector("block without primitive vector".into()))?;
            let w = b.weights[best].clone();
            out.push((b, best, w));
        }
    }
    Ok(out)
}

/// Chooses blocks whose highest weights add up to `lam`.
fn choose_blocks(pair: &SymmetricPair, cands: &[(Block, usize, Weight)], lam: &Weight) -> Option<Vec<usize>> {
    fn dfs(
        pair: &SymmetricPair,
        cands: &[(Block, usize, Weight)],
        rest: &Weight,
        start: usize,
        depth: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if rest.is_zero() {
            return true;
        }
        if depth == 0 {
            return false;
        }
        for i in start..cands.len() {
            let r = rest - &cands[i].2;
            if !pair.is_dominant(&r) {
                continue;
            }
            chosen.push(i);
            if dfs(pair, cands, &r, i, depth - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let depth: i64 = pair
        .coroot_values(lam)
        .iter()
        .map(|x| x.to_integer().try_into().unwrap_or(0i64))
        .sum();
    let mut chosen = Vec::new();
    dfs(pair, cands, lam, 0, depth.max(0) as usize * 2 + 1, &mut chosen).then_some(chosen)
}

/// Builds `V_λ` for a dominant integral `λ` of the pair's `g`.
pub fn build_hw_module(pair: &SymmetricPair, lam: &Weight, caps: &RepCaps) -> Result<HWModule> {
    let g = &pair.g;
    if !pair.is_integral(lam) || !pair.is_dominant(lam) {
        return Err(Error::NotInQPlus(format!("{lam} is not dominant integral")));
    }
    let expected = weyl_dimension(&pair.positive_roots, lam, None);
    let expected: usize = expected
        .to_integer()
        .try_into()
        .map_err(|_| Error::ModuleCapExceeded { dim: usize::MAX, cap: caps.module })?;
    if expected > caps.module {
        return Err(Error::ModuleCapExceeded { dim: expected, cap: caps.module });
    }
    let cands = candidate_blocks(pair)?;
    let chosen = choose_blocks(pair, &cands, lam)
        .ok_or_else(|| Error::NoHighestWeightVector(format!("{lam} in exterior powers of the natural representation")))?;
    let blocks: Vec<Block> = chosen.iter().map(|&i| cands[i].0.clone()).collect();
    let ambient = TensorAmbient::new(blocks, g.factors().len(), caps.ambient)?;
    let hw_index: usize = chosen
        .iter()
        .zip(&ambient.strides)
        .map(|(&i, s)| cands[i].1 * s)
        .sum();
    let n = g.n();
    if ambient.weight_of(hw_index, n) != *lam {
        return Err(Error::NoHighestWeightVector(format!("{lam}: weight mismatch")));
    }
    let hw: SparseVec = [(hw_index, Scalar::one())].into_iter().collect();
    for a in &pair.positive_roots {
        if !ambient.apply_basis(root_index(g, a)?, &hw).is_empty() {
            return Err(Error::NoHighestWeightVector(format!("{lam}: vector not primitive")));
        }
    }

    // Cyclic span under the lowering operators, one weight space at a time.
    let lowering: Vec<usize> = pair
        .simple_roots
        .iter()
        .map(|a| root_index(g, &-a))
        .collect::<Result<_>>()?;
    let mut vectors: Vec<SparseVec> = vec![hw];
    let mut weights: Vec<Weight> = vec![lam.clone()];
    let mut echelons: HashMap<Weight, SparseEchelon> = HashMap::new();
    echelons
        .entry(lam.clone())
        .or_insert_with(|| SparseEchelon::new(ambient.dim()))
        .insert(vectors[0].iter().map(|(i, c)| (*i, c.clone())).collect());
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(j) = queue.pop_front() {
        for &f in &lowering {
            let v = ambient.apply_basis(f, &vectors[j]);
            if v.is_empty() {
                continue;
            }
            let w = &weights[j] + g.weight_of(f);
            let e = echelons.entry(w.clone()).or_insert_with(|| SparseEchelon::new(ambient.dim()));
            if e.insert(v.iter().map(|(i, c)| (*i, c.clone())).collect()) {
                vectors.push(v);
                weights.push(w);
                queue.push_back(vectors.len() - 1);
                if vectors.len() > caps.module {
                    return Err(Error::ModuleCapExceeded { dim: vectors.len(), cap: caps.module });
                }
            }
        }
    }
    if vectors.len() != expected {
        return Err(Error::InvariantViolation(format!(
            "{lam}: cyclic span has dimension {} but the Weyl formula gives {expected}",
            vectors.len()
        )));
    }

    let mut members: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (i, w) in weights.iter().enumerate() {
        members.entry(w.clone()).or_default().push(i);
    }
    let mut spaces = HashMap::new();
    for (w, m) in members {
        let e = &echelons[&w];
        let pivots = e.pivots();
        let sub = Mat::from_rows(
            m.iter()
                .map(|&i| pivots.iter().map(|p| vectors[i].get(p).cloned().unwrap_or_else(Scalar::zero)).collect())
                .collect(),
        )
        .transpose();
        let inv = sub.inverse().expect("weight space basis is independent at its pivots");
        spaces.insert(w, WeightSpace { members: m, pivots, inv });
    }
    let mut module = HWModule {
        lam: lam.clone(),
        carrier: WeightedVectorSpace {
            dim: vectors.len(),
            action: Vec::new(),
            weights,
        },
        ambient,
        vectors,
        spaces,
    };
    // Action matrices; failure to find coordinates means the span is not g-stable.
    let mut action = Vec::with_capacity(g.dim());
    for x in 0..g.dim() {
        let cols = module
            .vectors
            .iter()
            .map(|v| {
                module
                    .coords(&module.ambient.apply_basis(x, v), n)
                    .ok_or_else(|| Error::InvariantViolation(format!("{lam}: span is not g-stable")))
            })
            .collect::<Result<Vec<_>>>()?;
        action.push(Mat::from_cols(&cols, module.dim()));
    }
    module.carrier.action = action;
    Ok(module)
}

/// Joint kernel of the `k`-action and fixed space of the given group matrices.
fn fixed_space(space: &WeightedVectorSpace, pair: &SymmetricPair, groups: &[Mat]) -> Result<Vec<Vec<Scalar>>> {
    let d = space.dim;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for x in &pair.k_basis {
        rows.extend(space.element(&pair.g, x)?.row_vecs());
    }
    let id = Mat::identity(d);
    for c in groups {
        rows.extend((c - &id).row_vecs());
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    if rows.is_empty() {
        return Ok((0..d).map(|i| unit(d, i)).collect());
    }
    Ok(kernel_basis(&Mat::from_rows(rows)))
}

fn component_matrices(pair: &SymmetricPair, m: &HWModule) -> Result<Vec<Mat>> {
    pair.component_gens.iter().map(|c| m.group_matrix(&pair.g, c)).collect()
}

/// `V_λ^K`: annihilated by `k` and fixed by the component generators.
/// More than one independent vector is an error.
pub fn k_fixed_vectors(pair: &SymmetricPair, module: &HWModule) -> Result<Vec<Vec<Scalar>>> {
    let groups = component_matrices(pair, module)?;
    let v = fixed_space(&module.carrier, pair, &groups)?;
    if v.len() > 1 {
        return Err(Error::InvariantViolation(format!(
            "{}: dim V_λ^K = {} for λ = {}",
            pair.id,
            v.len(),
            module.lam
        )));
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Lemma13Report {
    pub pair: String,
    pub lam: Weight,
    pub module_dim: usize,
    pub spherical_dim: usize,
    pub support: Vec<Weight>,
    pub support_in_q: bool,
    pub contains_lambda: bool,
    pub meets_weyl_orbit_in_w0_orbit: bool,
    pub support_w0_stable: bool,
    pub lifts_fix_vk: Option<bool>,
}

impl Lemma13Report {
    pub fn passed(&self) -> bool {
        self.spherical_dim == 1
            && self.support_in_q
            && self.contains_lambda
            && self.meets_weyl_orbit_in_w0_orbit
            && self.support_w0_stable
            && self.lifts_fix_vk != Some(false)
    }
}

fn w0_orbit_weights(pair: &SymmetricPair, lam: &Weight) -> BTreeSet<Weight> {
    let c = pair.restrict_weight(lam);
    pair.w0
        .elements()
        .iter()
        .map(|g| pair.weight_from_a_values(&pair.w0_act_on_values(g, &c)))
        .collect()
}

/// The three support statements for the spherical vector of `V_λ`, `λ ∈ Q₊`.
pub fn check_lemma_1_3(pair: &SymmetricPair, lam: &Weight, caps: &RepCaps) -> Result<Lemma13Report> {
    if !pair.in_q_plus(lam)? {
        return Err(Error::NotInQPlus(lam.to_string()));
    }
    let module = build_hw_module(pair, lam, caps)?;
    let fixed = k_fixed_vectors(pair, &module)?;
    let mut report = Lemma13Report {
        pair: pair.id.clone(),
        lam: lam.clone(),
        module_dim: module.dim(),
        spherical_dim: fixed.len(),
        support: Vec::new(),
        support_in_q: false,
        contains_lambda: false,
        meets_weyl_orbit_in_w0_orbit: false,
        support_w0_stable: false,
        lifts_fix_vk: None,
    };
    let Some(vk) = fixed.first() else {
        return Ok(report);
    };
    let support: BTreeSet<Weight> = vk
        .iter()
        .zip(&module.carrier.weights)
        .filter(|(c, _)| !c.is_zero())
        .map(|(_, w)| w.clone())
        .collect();
    report.support_in_q = support.iter().map(|w| pair.in_q(w)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
    report.contains_lambda = support.contains(lam);
    let weyl_orbit: BTreeSet<Weight> = pair.weyl.orbit(lam).into_iter().collect();
    let w0_orbit = w0_orbit_weights(pair, lam);
    let meet: BTreeSet<Weight> = support.intersection(&weyl_orbit).cloned().collect();
    report.meets_weyl_orbit_in_w0_orbit = meet == w0_orbit;
    report.support_w0_stable = support.iter().all(|w| {
        let c = pair.restrict_weight(w);
        pair.w0.elements().iter().all(|g| {
            let image = pair.weight_from_a_values(&pair.w0_act_on_values(g, &c));
            support.contains(&image)
        })
    });
    if pair.has_all_lifts() {
        let mut ok = true;
        for l in pair.w0_lifts.iter().flatten() {
            let m = module.group_matrix(&pair.g, l)?;
            ok &= &m.mul_vec(vk) == vk;
        }
        report.lifts_fix_vk = Some(ok);
    }
    report.support = support.into_iter().collect();
    Ok(report)
}

/// Dimension of `V_λ^K` (0 or 1).
pub fn spherical_dim(pair: &SymmetricPair, lam: &Weight, caps: &RepCaps) -> Result<usize> {
    let module = build_hw_module(pair, lam, caps)?;
    Ok(k_fixed_vectors(pair, &module)?.len())
}

/// `V_λ ⊗ V_µ` with the diagonal action.
pub fn tensor_module(m1: &HWModule, m2: &HWModule, caps: &RepCaps) -> Result<WeightedVectorSpace> {
    m1.carrier.tensor(&m2.carrier, caps.tensor)
}

/// Pairs `(w₁, w₂)` of `W₀` element indices, one per diagonal `W₀`-orbit on
/// `W₀λ × W₀µ`, normalized so that `w₁λ + w₂µ` is `W₀`-dominant.
pub fn claim_pairs(pair: &SymmetricPair, lam: &Weight, mu: &Weight) -> Vec<(usize, usize)> {
    let cl = pair.restrict_weight(lam);
    let cm = pair.restrict_weight(mu);
    let els = pair.w0.elements();
    let img = |c: &Weight| -> Vec<Weight> { els.iter().map(|g| pair.w0_act_on_values(g, c)).collect() };
    let (xs, ys) = (img(&cl), img(&cm));
    let mut seen: BTreeSet<(Weight, Weight)> = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..els.len() {
        for j in 0..els.len() {
            let (x, y) = (&xs[i], &ys[j]);
            if seen.contains(&(x.clone(), y.clone())) {
                continue;
            }
            let sum = pair.a_values_to_t(&(x + y));
            if !pair.w0.is_dominant(&sum) || xs[..i].contains(x) || ys[..j].contains(y) {
                continue;
            }
            for g in els {
                seen.insert((pair.w0_act_on_values(g, x), pair.w0_act_on_values(g, y)));
            }
            out.push((i, j));
        }
    }
    out
}

/// Projection onto `T^K` along the span of `{X·m, g·m − m}`.
pub struct KProjection {
    invariants: Vec<Vec<Scalar>>,
    system: Mat,
}

impl KProjection {
    pub fn new(space: &WeightedVectorSpace, pair: &SymmetricPair, groups: &[Mat]) -> Result<Self> {
        let d = space.dim;
        let invariants = fixed_space(space, pair, groups)?;
        let mut comp = SparseEchelon::new(d);
        let mut comp_vecs: Vec<Vec<Scalar>> = Vec::new();
        let id = Mat::identity(d);
        let mut gens: Vec<Mat> = pair
            .k_basis
            .iter()
            .map(|x| space.element(&pair.g, x))
            .collect::<Result<_>>()?;
        gens.extend(groups.iter().map(|c| c - &id));
        for m in &gens {
            for j in 0..d {
                let col = m.col(j);
                if comp.insert_dense(&col) {
                    comp_vecs.push(col);
                }
            }
        }
        if invariants.len() + comp_vecs.len() != d {
            return Err(Error::ReynoldsDirectSum {
                invariants: invariants.len(),
                complement: comp_vecs.len(),
                total: d,
            });
        }
        let mut cols = invariants.clone();
        cols.extend(comp_vecs);
        let system = Mat::from_cols(&cols, d);
        Ok(KProjection { invariants, system })
    }

    pub fn dim(&self) -> usize {
        self.invariants.len()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let c = solve(&self.system, v).expect("invariants and complement span the space");
        let mut out = vec![Scalar::zero(); v.len()];
        for (ci, f) in c.iter().zip(&self.invariants) {
            for (o, x) in out.iter_mut().zip(f) {
                *o += ci * x;
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClaimReport {
    pub pair: String,
    pub lam: Weight,
    pub mu: Weight,
    pub tensor_dim: usize,
    pub pairs: Vec<(usize, usize)>,
    pub component_weights: Vec<Weight>,
    pub component_dims: Vec<usize>,
    pub unique_highest_weight_vectors: bool,
    pub direct_sum: bool,
    pub pi_rank: usize,
    pub injective: bool,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.unique_highest_weight_vectors && self.direct_sum && self.injective
    }
}

/// Span of `U(g)·v` inside a representation.
fn cyclic_span(space: &WeightedVectorSpace, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut e = SparseEchelon::new(space.dim);
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    if e.insert_dense(v) {
        out.push(v.to_vec());
        queue.push_back(v.to_vec());
    }
    while let Some(u) = queue.pop_front() {
        for a in &space.action {
            let w = a.mul_vec(&u);
            if e.insert_dense(&w) {
                out.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    out
}

/// Highest-weight vectors of weight `nu` in `space`.
fn highest_weight_vectors(pair: &SymmetricPair, space: &WeightedVectorSpace, nu: &Weight) -> Result<Vec<Vec<Scalar>>> {
    let idx: Vec<usize> = (0..space.dim).filter(|&i| &space.weights[i] == nu).collect();
    if idx.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in &pair.simple_roots {
        let m = &space.action[root_index(&pair.g, a)?];
        for r in 0..space.dim {
            let row: Vec<Scalar> = idx.iter().map(|&j| m[(r, j)].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let ker = if rows.is_empty() {
        (0..idx.len()).map(|i| unit(idx.len(), i)).collect()
    } else {
        kernel_basis(&Mat::from_rows(rows))
    };
    Ok(ker
        .into_iter()
        .map(|k| {
            let mut v = vec![Scalar::zero(); space.dim];
            for (c, &j) in k.iter().zip(&idx) {
                v[j] = c.clone();
            }
            v
        })
        .collect())
}

/// Cartan components `U(g)·u_i` generated by the unique highest-weight vector
/// `u_i` of weight `w₁λ + w₂µ` inside `U(g)·e_i`. Returns the components and
/// whether every `u_i` was unique.
pub fn cartan_components(
    pair: &SymmetricPair,
    tensor: &WeightedVectorSpace,
    generators: &[Vec<Scalar>],
    weights: &[Weight],
) -> Result<(Vec<Vec<Vec<Scalar>>>, bool)> {
    let mut unique = true;
    let mut comps = Vec::new();
    for (e, nu) in generators.iter().zip(weights) {
        let span = cyclic_span(tensor, e);
        let hw = highest_weight_vectors(pair, tensor, nu)?;
        // hw ∩ span.
        let inter = crate::exactlin::intersection_dim(&hw, &span);
        if inter != 1 {
            unique = false;
            comps.push(Vec::new());
            continue;
        }
        // The intersection is one-dimensional; find a vector of it.
        let mut cols = hw.clone();
        cols.extend(span.iter().map(|v| v.iter().map(|x| -x).collect()));
        let k = kernel_basis(&Mat::from_cols(&cols, tensor.dim));
        let u: Vec<Scalar> = {
            let mut v = vec![Scalar::zero(); tensor.dim];
            let coeffs = k.iter().find(|c| c[..hw.len()].iter().any(|x| !x.is_zero())).expect("nonzero intersection");
            for (c, h) in coeffs[..hw.len()].iter().zip(&hw) {
                for (o, x) in v.iter_mut().zip(h) {
                    *o += c * x;
                }
            }
            v
        };
        comps.push(cyclic_span(tensor, &u));
    }
    Ok((comps, unique))
}

/// The claim on `V_λ ⊗ V_µ`: with `e_i = (w̃₁ⁱ v_λ) ⊗ (w̃₂ⁱ v_µ)` over [`claim_pairs`],
/// the Cartan components are unique and independent and `b ↦ π(Σ b_i e_i)`
/// is injective.
pub fn claim_check(pair: &SymmetricPair, lam: &Weight, mu: &Weight, caps: &RepCaps) -> Result<ClaimReport> {
    for w in [lam, mu] {
        if !pair.in_q_plus(w)? {
            return Err(Error::NotInQPlus(w.to_string()));
        }
    }
    let m1 = build_hw_module(pair, lam, caps)?;
    let m2 = build_hw_module(pair, mu, caps)?;
    let tensor = tensor_module(&m1, &m2, caps)?;
    let pairs = claim_pairs(pair, lam, mu);

    let lift = |i: usize| -> Result<Mat> {
        pair.lift(i)
            .ok_or_else(|| Error::NoLift(format!("{}: W0 element {i}", pair.id)))
    };
    let mut gens = Vec::new();
    let mut weights = Vec::new();
    for &(i, j) in &pairs {
        let a = m1.group_matrix(&pair.g, &lift(i)?)?.mul_vec(&m1.hwv());
        let b = m2.group_matrix(&pair.g, &lift(j)?)?.mul_vec(&m2.hwv());
        let e: Vec<Scalar> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        let wl = pair.weight_from_a_values(&pair.w0_act_on_values(&pair.w0.elements()[i], &pair.restrict_weight(lam)));
        let wm = pair.weight_from_a_values(&pair.w0_act_on_values(&pair.w0.elements()[j], &pair.restrict_weight(mu)));
        let nu = &wl + &wm;
        if (0..tensor.dim).any(|t| !e[t].is_zero() && tensor.weights[t] != nu) {
            return Err(Error::InvariantViolation("lifted vector has the wrong weight".into()));
        }
        gens.push(e);
        weights.push(nu);
    }
    let (comps, unique) = cartan_components(pair, &tensor, &gens, &weights)?;
    let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
    let all: Vec<Vec<Scalar>> = comps.iter().flatten().cloned().collect();
    let direct = unique && rank_of_vectors(&all) == dims.iter().sum::<usize>();
    for (d, nu) in dims.iter().zip(&weights) {
        let expect = weyl_dimension(&pair.positive_roots, nu, None);
        if unique && int(*d as i64) != expect {
            return Err(Error::InvariantViolation(format!("component {nu} has dimension {d}, expected {expect}")));
        }
    }

    let groups: Vec<Mat> = pair
        .component_gens
        .iter()
        .map(|c| Ok(kron(&m1.group_matrix(&pair.g, c)?, &m2.group_matrix(&pair.g, c)?)))
        .collect::<Result<_>>()?;
    let pi = KProjection::new(&tensor, pair, &groups)?;
    let images: Vec<Vec<Scalar>> = gens.iter().map(|e| pi.apply(e)).collect();
    let pi_rank = if images.is_empty() { 0 } else { rank(&Mat::from_cols(&images, tensor.dim)) };
    Ok(ClaimReport {
        pair: pair.id.clone(),
        lam: lam.clone(),
        mu: mu.clone(),
        tensor_dim: tensor.dim,
        pairs: pairs.clone(),
        component_weights: weights,
        component_dims: dims,
        unique_highest_weight_vectors: unique,
        direct_sum: direct,
        pi_rank,
        injective: pi_rank == pairs.len(),
    })
}

/// Dominant elements of `Q` obtained from restricted values in `[−bound, bound]`,
/// ordered by module dimension, then weight.
pub fn q_plus_elements(pair: &SymmetricPair, bound: i64) -> Result<Vec<(usize, Weight)>> {
    let mut out = Vec::new();
    let r = pair.rank();
    let mut points = vec![Vec::new()];
    for _ in 0..r {
        points = points
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    for p in points {
        let lam = pair.weight_from_a_values(&Weight::from_i64(&p));
        if pair.is_integral(&lam) && pair.in_q_plus(&lam)? {
            let d = weyl_dimension(&pair.positive_roots, &lam, None);
            out.push((d.to_integer().try_into().unwrap_or(usize::MAX), lam));
        }
    }
    out.sort();
    Ok(out)
}

/// Dominant integral weights with `⟨λ, α^∨⟩ ≤ bound` for every simple root,
/// in the root lattice and not in `Q`, ordered by module dimension.
pub fn non_q_dominant(pair: &SymmetricPair, bound: i64) -> Result<Vec<(usize, Weight)>> {
    let n = pair.g.n();
    let simple = &pair.simple_roots;
    // Fundamental weights: solve ⟨ω_i, α_j^∨⟩ = δ_ij inside span(simple roots).
    let m = Mat::from_rows(
        simple
            .iter()
            .map(|a| {
                let s = int(2) / a.inner(a);
                a.0.iter().map(|x| x * &s).collect()
            })
            .collect(),
    );
    let basis = Mat::from_cols(&simple.iter().map(|a| a.0.clone()).collect::<Vec<_>>(), n);
    let gram = &m * &basis;
    let inv = gram.inverse().ok_or_else(|| Error::InvariantViolation("Cartan matrix singular".into()))?;
    let fundamentals: Vec<Weight> = (0..simple.len())
        .map(|i| Weight(basis.mul_vec(&inv.col(i))))
        .collect();
    let mut labels: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..simple.len() {
        labels = labels
            .into_iter()
            .flat_map(|p| {
                (0..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for l in labels {
        let lam = l
            .iter()
            .zip(&fundamentals)
            .fold(Weight::zero(n), |acc, (x, w)| &acc + &w.scale(&int(*x)));
        if lam.is_zero() || pair.root_lattice_coords(&lam).is_none() || pair.in_q(&lam)? {
            continue;
        }
        let d = weyl_dimension(&pair.positive_roots, &lam, None);
        out.push((d.to_integer().try_into().unwrap_or(usize::MAX), lam));
    }
    out.sort();
    Ok(out)
}

/// The `count` smallest nonzero elements of `Q₊` whose modules fit under the cap.
pub fn smallest_q_plus(pair: &SymmetricPair, count: usize, caps: &RepCaps) -> Result<Vec<Weight>> {
    let pick = |bound: i64| -> Result<Vec<Weight>> {
        Ok(q_plus_elements(pair, bound)?
            .into_iter()
            .filter(|(d, w)| !w.is_zero() && *d <= caps.module)
            .take(count)
            .map(|(_, w)| w)
            .collect())
    };
    let mut bound = 4;
    while bound < 16 && pick(bound)?.len() < count {
        bound *= 2;
    }
    // One more doubling guards against a smaller module just outside the box.
    pick(bound * 2)
}

/// The `count` smallest dominant root-lattice weights outside `Q` whose modules fit under the cap.
pub fn smallest_non_q(pair: &SymmetricPair, count: usize, caps: &RepCaps) -> Result<Vec<Weight>> {
    let pick = |bound: i64| -> Result<Vec<Weight>> {
        Ok(non_q_dominant(pair, bound)?
            .into_iter()
            .filter(|(d, _)| *d <= caps.module)
            .take(count)
            .map(|(_, w)| w)
            .collect())
    };
    let mut bound = 2;
    while bound < 8 && pick(bound)?.len() < count {
        bound *= 2;
    }
    pick(bound * 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympair::build_pair;

    #[test]
    fn sl2_module_dimensions() {
        let pair = build_pair("AI:2").unwrap();
        let caps = RepCaps::default();
        for (l, d) in [(2, 3), (4, 5), (0, 1)] {
            let lam = Weight::from_i64(&[l / 2, -l / 2]);
            let m = build_hw_module(&pair, &lam, &caps).unwrap();
            assert_eq!(m.dim(), d);
            m.carrier.check_representation(&pair.g).unwrap();
        }
    }

    #[test]
    fn sl3_adjoint_module() {
        let pair = build_pair("AI:3").unwrap();
        let m = build_hw_module(&pair, &Weight::from_i64(&[1, 0, -1]), &RepCaps::default()).unwrap();
        assert_eq!(m.dim(), 8);
        m.carrier.check_representation(&pair.g).unwrap();
    }

    #[test]
    fn spherical_examples_ai2() {
        let pair = build_pair("AI:2").unwrap();
        let caps = RepCaps::default();
        assert_eq!(spherical_dim(&pair, &Weight::from_i64(&[1, -1]), &caps).unwrap(), 0);
        assert_eq!(spherical_dim(&pair, &Weight::from_i64(&[2, -2]), &caps).unwrap(), 1);
        assert_eq!(spherical_dim(&pair, &Weight::zero(2), &caps).unwrap(), 1);
    }

    #[test]
    fn spherical_support_ai2() {
        let pair = build_pair("AI:2").unwrap();
        let r = check_lemma_1_3(&pair, &Weight::from_i64(&[2, -2]), &RepCaps::default()).unwrap();
        assert!(r.passed());
        assert_eq!(
            r.support,
            vec![Weight::from_i64(&[-2, 2]), Weight::from_i64(&[0, 0]), Weight::from_i64(&[2, -2])]
        );
        let r = check_lemma_1_3(&pair, &Weight::zero(2), &RepCaps::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.support, vec![Weight::zero(2)]);
        assert!(check_lemma_1_3(&pair, &Weight::from_i64(&[1, -1]), &RepCaps::default()).is_err());
    }

    #[test]
    fn tensor_weights() {
        let pair = build_pair("AI:2").unwrap();
        let caps = RepCaps::default();
        let v2 = build_hw_module(&pair, &Weight::from_i64(&[1, -1]), &caps).unwrap();
        let t = tensor_module(&v2, &v2, &caps).unwrap();
        assert_eq!(t.dim, 9);
        let mut h: Vec<Scalar> = t.weights.iter().map(|w| MatrixLieAlgebra::evaluate(w, &pair.a_basis[0])).collect();
        h.sort();
        let expect: Vec<Scalar> = [-4, -2, -2, 0, 0, 0, 2, 2, 4].iter().map(|&x| int(x)).collect();
        assert_eq!(h, expect);
        let triv = build_hw_module(&pair, &Weight::zero(2), &caps).unwrap();
        assert_eq!(tensor_module(&triv, &v2, &caps).unwrap().action, v2.carrier.action);
    }

    #[test]
    fn orbit_pairs_ai2() {
        let pair = build_pair("AI:2").unwrap();
        let lam = Weight::from_i64(&[2, -2]);
        let pairs = claim_pairs(&pair, &lam, &lam);
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0], (0, 0));
    }

    #[test]
    fn tensor_projection_ai2_and_adjoint() {
        let caps = RepCaps::default();
        let pair = build_pair("AI:2").unwrap();
        let lam = Weight::from_i64(&[2, -2]);
        let r = claim_check(&pair, &lam, &lam, &caps).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.component_dims, vec![9, 1]);

        let adj = build_pair("ADJ:sl2").unwrap();
        let lam = Weight::from_i64(&[1, -1, -1, 1]);
        let r = claim_check(&adj, &lam, &lam, &caps).unwrap();
        assert!(r.passed(), "{r:?}");

        let zero = Weight::zero(2);
        let r = claim_check(&pair, &zero, &zero, &caps).unwrap();
        assert_eq!((r.pairs.len(), r.pi_rank), (1, 1));
    }

    #[test]
    fn adjoint_cartan_components_sl2() {
        // λ = µ = α on the first factor only is not in Q, so exercise the
        // decomposition V₂ ⊗ V₂ ⊇ V₄ ⊕ V₀ directly on sl₂.
        let pair = build_pair("AI:2").unwrap();
        let caps = RepCaps::default();
        let v2 = build_hw_module(&pair, &Weight::from_i64(&[1, -1]), &caps).unwrap();
        let t = tensor_module(&v2, &v2, &caps).unwrap();
        let s = pair.lift(1).unwrap();
        let a = v2.hwv();
        let b = v2.group_matrix(&pair.g, &s).unwrap().mul_vec(&v2.hwv());
        let e1: Vec<Scalar> = a.iter().flat_map(|x| a.iter().map(move |y| x * y)).collect();
        let e2: Vec<Scalar> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        let (comps, unique) = cartan_components(
            &pair,
            &t,
            &[e1, e2],
            &[Weight::from_i64(&[2, -2]), Weight::zero(2)],
        )
        .unwrap();
        assert!(unique);
        assert_eq!(comps.iter().map(Vec::len).collect::<Vec<_>>(), vec![5, 1]);
    }
}
