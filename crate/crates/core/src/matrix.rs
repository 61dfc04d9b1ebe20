//! Dense exact matrices over the Gaussian rationals and the subspace
//! operations built on them (kernels, images, intersections, annihilators).
//!
//! Vectors are plain `Vec<Gq>`; a "basis list" is a `Vec<Vector>` whose
//! members are linearly independent. The pairing between a space and its dual
//! is the bilinear one, `ξ(v) = Σ ξ_i v_i`, never the hermitian one.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::scalar::Gq;

pub type Vector = Vec<Gq>;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Gq>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Gq::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Gq::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Gq) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&v| Gq::from(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Gq::conj).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| self[(i, j)] == -&self[(j, i)])
            })
    }

    pub fn scale(&self, s: &Gq) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(a: &Gq, m: &Self, b: &Gq, n: &Self) -> Self {
        assert_eq!((m.rows, m.cols), (n.rows, n.cols));
        Self {
            rows: m.rows,
            cols: m.cols,
            data: m
                .data
                .iter()
                .zip(&n.data)
                .map(|(x, y)| {
                    let mut acc = Gq::zero();
                    if !x.is_zero() && !a.is_zero() {
                        acc += &(a * x);
                    }
                    if !y.is_zero() && !b.is_zero() {
                        acc += &(b * y);
                    }
                    acc
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Gq]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn block_diag(blocks: &[&ExactMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank_exact(self)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<(usize, Gq)> = (c..m.cols)
                .filter(|&j| !m[(r, j)].is_zero())
                .map(|j| (j, m[(r, j)].clone()))
                .collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (j, v) in &pivot_row {
                    let d = &f * v;
                    m[(i, *j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn kernel(&self) -> Vec<Vector> {
        kernel_basis(self)
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn image_basis(&self) -> Vec<Vector> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|j| self.col(j)).collect()
    }

    /// Some solution `x` of `self·x = b`, or `Inconsistent`.
    pub fn solve(&self, b: &[Gq]) -> Result<Vector, AlgebraError> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let aug = self.hstack(&ExactMatrix::from_columns(&[b.to_vec()], self.rows));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(AlgebraError::Inconsistent);
        }
        let mut x = vec![Gq::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ExactMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let aug = self.hstack(&ExactMatrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(ExactMatrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn determinant(&self) -> Gq {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Gq::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Gq::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let d = &f * &m[(c, j)];
                        m[(i, j)] -= &d;
                    }
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Gq;
    fn index(&self, (i, j): (usize, usize)) -> &Gq {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Gq {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Serialised as a list of rows.
impl serde::Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(s)
    }
}

pub fn dot(a: &[Gq], b: &[Gq]) -> Gq {
    let mut acc = Gq::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Gq::zero(); n];
    v[i] = Gq::one();
    v
}

pub fn is_zero_vector(v: &[Gq]) -> bool {
    v.iter().all(Zero::is_zero)
}

// ---------------------------------------------------------------------------
// Fraction-free rank over Z[i]

#[derive(Clone, PartialEq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt {
                re: &self.re * &o.re,
                im: BigInt::zero(),
            };
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

/// Clears denominators row by row; row scaling does not change the rank.
fn to_gauss_int_rows(m: &ExactMatrix) -> Vec<Vec<GaussInt>> {
    (0..m.rows)
        .map(|i| {
            let row = &m.data[i * m.cols..(i + 1) * m.cols];
            let mut l = BigInt::one();
            for x in row {
                if !x.is_zero() {
                    l = l.lcm(&x.denom_lcm());
                }
            }
            row.iter()
                .map(|x| GaussInt {
                    re: (&x.re * &l).to_integer(),
                    im: (&x.im * &l).to_integer(),
                })
                .collect()
        })
        .collect()
}

fn divide_row_by_content(row: &mut [GaussInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.re.is_zero() {
            g = g.gcd(&x.re);
        }
        if !x.im.is_zero() {
            g = g.gcd(&x.im);
        }
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        x.re = &x.re / &g;
        x.im = &x.im / &g;
    }
}

/// Exact rank by fraction-free elimination over the Gaussian integers.
///
/// Each row is first scaled to integral entries; elimination replaces a row
/// by `p·row − f·pivot_row` and then divides out the rational-integer content
/// of the new row, which keeps coefficient growth in check while staying in
/// Z[i].
pub fn rank_exact(m: &ExactMatrix) -> usize {
    let mut a = to_gauss_int_rows(m);
    let rows = m.rows;
    let cols = m.cols;
    let mut live: Vec<usize> = (0..rows).filter(|&i| a[i].iter().any(|x| !x.is_zero())).collect();
    let mut rank = 0;
    for c in 0..cols {
        if live.is_empty() {
            break;
        }
        // pick the sparsest, then smallest, candidate pivot row
        let candidate = live
            .iter()
            .enumerate()
            .filter(|(_, &i)| !a[i][c].is_zero())
            .min_by_key(|(_, &i)| {
                let nnz = a[i][c..].iter().filter(|x| !x.is_zero()).count();
                (nnz, a[i][c].bits())
            })
            .map(|(pos, &i)| (pos, i));
        let Some((pos, p)) = candidate else {
            continue;
        };
        live.swap_remove(pos);
        rank += 1;
        let pivot_row = std::mem::take(&mut a[p]);
        let piv = pivot_row[c].clone();
        let nz: Vec<usize> = (c + 1..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for &i in &live {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let row = &mut a[i];
            row[c] = GaussInt {
                re: BigInt::zero(),
                im: BigInt::zero(),
            };
            for j in c + 1..cols {
                if !row[j].is_zero() {
                    row[j] = row[j].mul(&piv);
                }
            }
            for &j in &nz {
                let t = f.mul(&pivot_row[j]);
                row[j] = row[j].sub(&t);
            }
            divide_row_by_content(row);
        }
        live.retain(|&i| a[i][c + 1..].iter().any(|x| !x.is_zero()));
    }
    rank
}

pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vector> {
    let (r, pivots) = m.rref();
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Gq::zero(); n];
        v[free] = Gq::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&r[(row, free)];
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Subspaces given by spanning families

/// Rank of a family of vectors in `dim`-dimensional space.
pub fn span_dim(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank_exact(&ExactMatrix::from_rows(vectors, dim))
}

/// The first maximal independent subfamily, in input order.
pub fn independent_subfamily(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let cols = ExactMatrix::from_columns(vectors, dim);
    let (_, pivots) = cols.rref();
    pivots.into_iter().map(|j| vectors[j].clone()).collect()
}

pub fn in_span(basis: &[Vector], v: &[Gq], dim: usize) -> bool {
    if is_zero_vector(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    ExactMatrix::from_columns(basis, dim).solve(v).is_ok()
}

/// Coordinates of `v` in an independent family, if `v` lies in its span.
pub fn coordinates(basis: &[Vector], v: &[Gq], dim: usize) -> Result<Vector, AlgebraError> {
    if basis.is_empty() {
        return if is_zero_vector(v) {
            Ok(Vec::new())
        } else {
            Err(AlgebraError::Inconsistent)
        };
    }
    ExactMatrix::from_columns(basis, dim).solve(v)
}

pub fn sum_subspaces(a: &[Vector], b: &[Vector], dim: usize) -> Vec<Vector> {
    let all: Vec<Vector> = a.iter().chain(b).cloned().collect();
    independent_subfamily(&all, dim)
}

fn check_dims(family: &[Vector], dim: usize) -> Result<(), AlgebraError> {
    for v in family {
        if v.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    Ok(())
}

/// Basis of `span(a) ∩ span(b)`.
///
/// Solves `A·x = B·y` and maps the solutions through `A`; inputs need not be
/// independent, but must share the ambient dimension.
pub fn intersect_subspaces(a: &[Vector], b: &[Vector]) -> Result<Vec<Vector>, AlgebraError> {
    let Some(dim) = a.first().or(b.first()).map(Vec::len) else {
        return Ok(Vec::new());
    };
    check_dims(a, dim)?;
    check_dims(b, dim)?;
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let a = independent_subfamily(a, dim);
    let b = independent_subfamily(b, dim);
    let am = ExactMatrix::from_columns(&a, dim);
    let bm = ExactMatrix::from_columns(&b, dim).scale(&-Gq::one());
    let sys = am.hstack(&bm);
    let sols = kernel_basis(&sys);
    let images: Vec<Vector> = sols
        .iter()
        .map(|s| am.mul_vec(&s[..a.len()]))
        .filter(|v| !is_zero_vector(v))
        .collect();
    Ok(independent_subfamily(&images, dim))
}

/// Basis of `{ξ : ξ(v) = 0 for all v in the family}` inside the dual of a
/// `dim`-dimensional space.
pub fn annihilator(subspace: &[Vector], dim: usize) -> Vec<Vector> {
    if subspace.is_empty() {
        return (0..dim).map(|i| unit_vector(dim, i)).collect();
    }
    kernel_basis(&ExactMatrix::from_rows(subspace, dim))
}

/// Extends an independent family `inner` (spanning a subspace of `outer`) by
/// members of `outer` to a basis of `span(outer)`; returns only the added
/// vectors, chosen in input order.
pub fn complement_in(inner: &[Vector], outer: &[Vector], dim: usize) -> Vec<Vector> {
    let mut acc: Vec<Vector> = inner.to_vec();
    let mut added = Vec::new();
    let mut rank = span_dim(&acc, dim);
    for v in outer {
        acc.push(v.clone());
        let r = span_dim(&acc, dim);
        if r > rank {
            rank = r;
            added.push(v.clone());
        } else {
            acc.pop();
        }
    }
    added
}

// ---------------------------------------------------------------------------
// Sparse nullspace for large structured systems (coefficient matching)

pub type SparseRow = BTreeMap<usize, Gq>;

/// Nullspace of a sparse system by Gauss-Jordan elimination on sparse rows.
/// Free columns are taken from the highest index down, so basis vectors are
/// normalised on their largest free column.
pub fn sparse_kernel(equations: Vec<SparseRow>, ncols: usize) -> Vec<Vector> {
    // pivot rows keyed by pivot column, each normalised to 1 on the pivot
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in equations {
        row.retain(|_, v| !v.is_zero());
        // reduce against existing pivots
        loop {
            let Some(col) = row.keys().find(|c| pivots.contains_key(c)).copied() else {
                break;
            };
            let f = row.remove(&col).unwrap();
            let prow = &pivots[&col];
            for (&j, v) in prow {
                if j == col {
                    continue;
                }
                let d = &f * v;
                let e = row.entry(j).or_insert_with(Gq::zero);
                *e -= &d;
                if e.is_zero() {
                    row.remove(&j);
                }
            }
        }
        let Some((&pc, pv)) = row.iter().next() else {
            continue;
        };
        let inv = pv.inv().expect("nonzero");
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        // eliminate the new pivot column from the existing pivot rows
        for prow in pivots.values_mut() {
            if let Some(f) = prow.remove(&pc) {
                for (&j, v) in &row {
                    if j == pc {
                        continue;
                    }
                    let d = &f * v;
                    let e = prow.entry(j).or_insert_with(Gq::zero);
                    *e -= &d;
                    if e.is_zero() {
                        prow.remove(&j);
                    }
                }
            }
        }
        pivots.insert(pc, row);
    }
    let mut basis = Vec::new();
    for free in (0..ncols).rev().filter(|c| !pivots.contains_key(c)) {
        let mut v = vec![Gq::zero(); ncols];
        v[free] = Gq::one();
        for (&pc, prow) in &pivots {
            if let Some(x) = prow.get(&free) {
                v[pc] = -x;
            }
        }
        basis.push(v);
    }
    basis
}

#[allow(dead_code)]
fn max_abs_bits(m: &ExactMatrix) -> u64 {
    m.data
        .iter()
        .map(|x| x.re.numer().abs().bits().max(x.im.numer().abs().bits()))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Gq {
        Gq::from(v)
    }

    fn so3_at(z: [i64; 3]) -> ExactMatrix {
        // C(z)_{12} = z3, C_{23} = z1, C_{31} = z2
        let [a, b, c] = z;
        ExactMatrix::from_i64(3, 3, &[0, c, -b, -c, 0, a, b, -a, 0])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_exact(&ExactMatrix::zeros(3, 3)), 0);
        assert_eq!(rank_exact(&ExactMatrix::identity(4)), 4);
        assert_eq!(rank_exact(&so3_at([1, 0, 0])), 2);
        assert_eq!(rank_exact(&so3_at([0, 0, 0])), 0);
    }

    #[test]
    fn rank_matches_rref_on_complex_entries() {
        let m = ExactMatrix::from_fn(4, 5, |i, j| {
            Gq::new(
                num_rational::BigRational::new(((i * 3 + j) as i64 % 5 - 2).into(), 3.into()),
                num_rational::BigRational::new(((i + 2 * j) as i64 % 3 - 1).into(), 2.into()),
            )
        });
        let (_, piv) = m.rref();
        assert_eq!(rank_exact(&m), piv.len());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&ExactMatrix::identity(3)).is_empty());
        let k = kernel_basis(&so3_at([1, 0, 0]));
        assert_eq!(k, vec![vec![q(1), q(0), q(0)]]);
        let p = ExactMatrix::from_i64(2, 3, &[1, 0, 0, 0, 1, 0]);
        assert_eq!(kernel_basis(&p), vec![vec![q(0), q(0), q(1)]]);
    }

    #[test]
    fn intersections() {
        let e = |i| unit_vector(3, i);
        assert_eq!(intersect_subspaces(&[e(0)], &[e(0)]).unwrap().len(), 1);
        let i = intersect_subspaces(&[e(0), e(1)], &[e(1), e(2)]).unwrap();
        assert_eq!(i.len(), 1);
        assert!(in_span(&[e(1)], &i[0], 3));
        assert!(intersect_subspaces(&[e(0)], &[vec![q(1), q(2)]]).is_err());
    }

    #[test]
    fn annihilators() {
        let e = |i| unit_vector(3, i);
        let ann = annihilator(&[e(0)], 3);
        assert_eq!(ann.len(), 2);
        assert!(ann.iter().all(|v| v[0].is_zero()));
        assert!(annihilator(&[e(0), e(1), e(2)], 3).is_empty());
        let back = annihilator(&ann, 3);
        assert_eq!(back.len(), 1);
        assert!(in_span(&back, &e(0), 3));
    }

    #[test]
    fn solve_and_inverse() {
        let m = ExactMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(2));
        assert_eq!(m.solve(&[q(3), q(2)]).unwrap(), vec![q(1), q(1)]);
        let sing = ExactMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert_eq!(sing.solve(&[q(1), q(0)]), Err(AlgebraError::Inconsistent));
        assert!(sing.inverse().is_err());
        assert_eq!(m.determinant(), q(1));
    }

    #[test]
    fn sparse_kernel_agrees_with_dense() {
        let m = ExactMatrix::from_i64(3, 5, &[1, 2, 0, -1, 0, 0, 1, 1, 0, 2, 1, 3, 1, -1, 2]);
        let rows: Vec<SparseRow> = m
            .row_vectors()
            .into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        let k = sparse_kernel(rows, 5);
        assert_eq!(k.len(), 5 - rank_exact(&m));
        for v in &k {
            assert!(is_zero_vector(&m.mul_vec(v)));
        }
    }
}
