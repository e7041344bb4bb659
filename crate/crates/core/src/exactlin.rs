//! Exact rational linear algebra.
//!
//! Dense matrices are row-major lists of [`Scalar`]. Elimination is done
//! fraction-free over the integers (rows are cleared of denominators first)
//! and normalized back to rationals at the end. [`SparseEchelon`] is the
//! incremental variant used for the large, sparse derivation systems.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Scalar>], nrows: usize) -> Self {
        let mut m = Mat::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn diag_i64(entries: &[i64]) -> Self {
        Mat::diag(&entries.iter().map(|&v| int(v)).collect::<Vec<_>>())
    }

    /// Matrix with a single 1 at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = Scalar::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| &self[(i, i)])
            .fold(Scalar::zero(), |acc, v| acc + v)
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// Flattened entries as a vector (row-major), e.g. for coordinate solves.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
        let mut m = Mat::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        m
    }

    /// Sub-block `[r0, r0+nr) × [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Mat {
        let mut m = Mat::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &piv;
                for j in c..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, piv) = rref(&aug);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Scales a rational row to a primitive integer row (content 1).
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Positive rational multiple of `v` with coprime integer entries and a
/// positive first nonzero entry. The zero vector is returned unchanged.
pub fn primitive_vector(v: &[Scalar]) -> Vec<Scalar> {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let mut row = integer_row(v);
    if row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in row.iter_mut() {
            *x = -&*x;
        }
    }
    row.into_iter().map(Scalar::from_integer).collect()
}

/// Reduced row-echelon form and pivot columns.
///
/// Forward elimination is Bareiss fraction-free over integer rows; the
/// echelon rows are then normalized and back-substituted over the rationals.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let (rows, cols) = (m.rows, m.cols);
    // Drop all-zero rows up front.
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| m.row(i))
        .filter(|r| !is_zero_vec(r))
        .map(integer_row)
        .collect();
    let n = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                let v = &prow[c] * &row[j] - &row[c] * &prow[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = prow[c].clone();
        pivots.push(c);
        r += 1;
    }

    // Normalize and back-substitute over the rationals.
    let mut out = Mat::zeros(rows, cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let lead = Scalar::from_integer(a[i][pc].clone());
        for j in pc..cols {
            out[(i, j)] = Scalar::from_integer(a[i][j].clone()) / &lead;
        }
    }
    for (i, &pc) in pivots.iter().enumerate().rev() {
        for k in 0..i {
            let f = out[(k, pc)].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                let t = &f * &out[(i, j)];
                out[(k, j)] -= t;
            }
        }
    }
    (out, pivots)
}

pub fn rank(m: &Mat) -> usize {
    rref(m).1.len()
}

/// Standard-form basis of the right null space: one vector per free column,
/// carrying 1 at that column and 0 at every other free column.
pub fn kernel_basis(m: &Mat) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Solves `m · x = b`; `None` when inconsistent. Free variables are set to 0.
pub fn solve(m: &Mat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows);
    let mut aug = Mat::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, m.cols)].clone();
    }
    Some(x)
}

/// Rank of a list of vectors.
pub fn rank_of_vectors(vs: &[Vec<Scalar>]) -> usize {
    let Some(first) = vs.first() else {
        return 0;
    };
    let mut e = SparseEchelon::new(first.len());
    for v in vs {
        e.insert_dense(v);
    }
    e.rank()
}

/// Basis (in reduced echelon form) of the span of the given vectors.
pub fn row_space_basis(vs: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    let mut e = SparseEchelon::new(dim);
    for v in vs {
        e.insert_dense(v);
    }
    e.reduced_basis()
}

/// Dimension of `span(a) ∩ span(b)`.
pub fn intersection_dim(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> usize {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    rank_of_vectors(a) + rank_of_vectors(b) - rank_of_vectors(&all)
}

type SparseRow = Vec<(usize, BigInt)>;

/// Incremental fraction-free row echelon form over sparse integer rows.
///
/// Rows are kept primitive (content 1, positive leading entry), keyed by
/// their leading column.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ncols);
        let entries: Vec<(usize, Scalar)> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        self.insert(entries)
    }

    /// Inserts a row given as `(column, value)` pairs (any order, duplicates summed).
    /// Returns true when the rank grew.
    pub fn insert(&mut self, entries: Vec<(usize, Scalar)>) -> bool {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column out of range");
            *acc.entry(c).or_insert_with(Scalar::zero) += v;
        }
        acc.retain(|_, v| !v.is_zero());
        if acc.is_empty() {
            return false;
        }
        let lcm = acc.values().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let row: SparseRow = acc
            .into_iter()
            .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
            .collect();
        self.insert_integer(row)
    }

    pub fn insert_integer(&mut self, mut row: SparseRow) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            match self.rows.get(&lead) {
                None => {
                    normalize_row(&mut row);
                    self.rows.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    row = eliminate(&row, p);
                }
            }
        }
    }

    /// True when `v` lies in the current row space.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let entries: Vec<(usize, Scalar)> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        if entries.is_empty() {
            return true;
        }
        let lcm = entries.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
        let mut row: SparseRow = entries
            .into_iter()
            .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
            .collect();
        loop {
            let Some(&(lead, _)) = row.first() else {
                return true;
            };
            match self.rows.get(&lead) {
                None => return false,
                Some(p) => row = eliminate(&row, p),
            }
        }
    }

    /// Standard-form kernel basis of the system whose rows were inserted.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .collect();
        let rat_rows: Vec<(usize, Vec<(usize, Scalar)>)> = self
            .rows
            .iter()
            .rev()
            .map(|(&p, r)| {
                (
                    p,
                    r.iter()
                        .map(|(c, v)| (*c, Scalar::from_integer(v.clone())))
                        .collect(),
                )
            })
            .collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.ncols];
                v[f] = Scalar::one();
                // Pivot rows in decreasing pivot order.
                for (p, r) in &rat_rows {
                    let mut s = Scalar::zero();
                    let mut lead = Scalar::one();
                    for (c, val) in r {
                        if c == p {
                            lead = val.clone();
                        } else if !v[*c].is_zero() {
                            s += val * &v[*c];
                        }
                    }
                    v[*p] = -s / lead;
                }
                v
            })
            .collect()
    }

    /// Reduced echelon basis of the row space (pivot entries 1, zero above and
    /// below each pivot), ordered by pivot column.
    pub fn reduced_basis(&self) -> Vec<Vec<Scalar>> {
        let pivots = self.pivots();
        let mut dense: Vec<Vec<Scalar>> = self
            .rows
            .values()
            .map(|r| {
                let mut v = vec![Scalar::zero(); self.ncols];
                let lead = Scalar::from_integer(r[0].1.clone());
                for (c, val) in r {
                    v[*c] = Scalar::from_integer(val.clone()) / &lead;
                }
                v
            })
            .collect();
        for i in (0..dense.len()).rev() {
            let pc = pivots[i];
            let (upper, lower) = dense.split_at_mut(i);
            let pr = &lower[0];
            for row in upper.iter_mut() {
                let f = row[pc].clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..self.ncols {
                    if !pr[j].is_zero() {
                        let t = &f * &pr[j];
                        row[j] -= t;
                    }
                }
            }
        }
        dense
    }
}

fn normalize_row(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    let neg = row[0].1.is_negative();
    if !g.is_one() || neg {
        let g = if neg { -g } else { g };
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `lead(p)·row − lead(row)·p`, made primitive. Both rows share a leading column.
fn eliminate(row: &SparseRow, p: &SparseRow) -> SparseRow {
    let a = &p[0].1;
    let b = &row[0].1;
    let g = a.gcd(b);
    let (fa, fb) = (a / &g, b / &g);
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < p.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = p.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, &fa * &row[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(&fb * &p[j].1)));
            j += 1;
        } else {
            let v = &fa * &row[i].1 - &fb * &p[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    if !out.is_empty() {
        let g = out.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        if !g.is_one() {
            for (_, v) in out.iter_mut() {
                *v /= &g;
            }
        }
    }
    out
}

/// Kernel of a sparse system given as rows of `(column, value)` entries.
pub fn sparse_kernel(ncols: usize, rows: impl IntoIterator<Item = Vec<(usize, Scalar)>>) -> Vec<Vec<Scalar>> {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.kernel()
}

pub fn sparse_rank(ncols: usize, rows: impl IntoIterator<Item = Vec<(usize, Scalar)>>) -> usize {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Mat::identity(2));
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = rref(&Mat::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, Mat::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let (r, p) = rref(&Mat::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(3)).is_empty());
        let k = kernel_basis(&Mat::zeros(2, 3));
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, int((i == j) as i64));
            }
        }
        assert_eq!(kernel_basis(&Mat::from_i64(&[&[1, 1]])), vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Mat::zeros(3, 4)), 0);
        assert_eq!(rank(&Mat::identity(5)), 5);
        assert_eq!(rank(&Mat::from_i64(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
    }

    #[test]
    fn rational_entries() {
        let m = Mat::from_rows(vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(1, 4), frac(1, 6)],
        ]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![frac(-2, 3), int(1)]]);
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert!(Mat::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Mat::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&m, &[int(2), int(0)]), Some(vec![int(1), int(1)]));
        let s = Mat::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&s, &[int(1), int(3)]), None);
    }

    #[test]
    fn sparse_matches_dense() {
        let m = Mat::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let rows = m
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().enumerate().collect::<Vec<_>>());
        assert_eq!(sparse_kernel(4, rows), kernel_basis(&m));
    }

    fn small_matrix() -> impl Strategy<Value = Mat> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..=4, r * c)
                .prop_map(move |v| Mat::from_flat(r, c, v.into_iter().map(int).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
        }

        #[test]
        fn rref_idempotent(m in small_matrix()) {
            let (r, p) = rref(&m);
            let (r2, p2) = rref(&r);
            prop_assert_eq!(r, r2);
            prop_assert_eq!(p, p2);
        }

        #[test]
        fn sparse_kernel_agrees(m in small_matrix()) {
            let rows = m.row_vecs().into_iter().map(|r| r.into_iter().enumerate().collect::<Vec<_>>());
            prop_assert_eq!(sparse_kernel(m.cols(), rows), kernel_basis(&m));
        }
    }
}
