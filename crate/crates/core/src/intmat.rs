//! Dense matrices over the integers with exact arithmetic.
//!
//! Everything here works on [`BigInt`] entries: Smith and Hermite normal
//! forms with their unimodular witnesses, fraction-free determinants, integer
//! kernels, and the support-digraph predicates used by the groupoid
//! classifier.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows. All rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    c
                )));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
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

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
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
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot subtract {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `I - self` for a square matrix.
    pub fn identity_minus(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        IntMatrix::identity(self.rows).sub(self)
    }

    pub fn pow(&self, k: u32) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "cannot stack {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Block-diagonal matrix assembled from square blocks.
    pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += delta;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `U · M · V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)` of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Position of the nonzero entry of smallest absolute value in the
/// trailing block `[t.., t..]`.
fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with transformation matrices.
///
/// Pivots on the smallest nonzero entry of the remaining block and clears its
/// row and column by repeated division; a pivot that fails to divide some
/// remaining entry absorbs that entry's row and the step restarts.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);

    for t in 0..m.rows.min(m.cols) {
        loop {
            let Some((pi, pj)) = smallest_pivot(&a, t) else {
                return SnfDecomposition { u, d: a, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut cleared = true;
            for i in t + 1..a.rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &pivot);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                cleared &= a[(i, t)].is_zero();
            }
            for j in t + 1..a.cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &pivot);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                cleared &= a[(t, j)].is_zero();
            }
            if !cleared {
                continue;
            }

            let offender = (t + 1..a.rows)
                .find(|&i| (t + 1..a.cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfDecomposition { u, d: a, v }
}

/// Exact determinant (fraction-free Bareiss elimination).
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Basis of the integer kernel `{x : M x = 0}`, read off the columns of the
/// SNF right transform that sit over zero diagonal entries. The resulting
/// lattice is saturated.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let dec = snf(m);
    let rank = dec.rank();
    (rank..m.cols).map(|j| dec.v.column(j)).collect()
}

/// Column-style Hermite normal form of `m`.
///
/// The result spans the same column lattice. Its nonzero columns come first
/// and form a lower echelon basis: pivot rows strictly increase, pivots are
/// positive, and entries left of a pivot lie in `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    hnf_with_rank(m).0
}

fn hnf_with_rank(m: &IntMatrix) -> (IntMatrix, usize) {
    let mut h = m.clone();
    let mut k = 0;
    for i in 0..h.rows {
        if k == h.cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in k..h.cols {
                if h[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h[(i, b)].abs() <= h[(i, j)].abs() => {}
                    _ => best = Some(j),
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(k, b);
            let pivot = h[(i, k)].clone();
            let mut done = true;
            for j in k + 1..h.cols {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, j)] / &pivot);
                h.add_col_multiple(j, k, &q);
                done &= h[(i, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_col(k);
        }
        let pivot = h[(i, k)].clone();
        for j in 0..k {
            let q = -h[(i, j)].div_floor(&pivot);
            h.add_col_multiple(j, k, &q);
        }
        k += 1;
    }
    (h, k)
}

/// A sublattice of `Z^n` held as a column HNF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    /// Lattice spanned by arbitrary generators in `Z^dim`.
    pub fn span(dim: usize, generators: &[Vec<BigInt>]) -> Lattice {
        let gens = IntMatrix::from_columns(dim, generators);
        let (h, rank) = hnf_with_rank(&gens);
        let basis: Vec<Vec<BigInt>> = (0..rank).map(|j| h.column(j)).collect();
        let pivots = basis
            .iter()
            .map(|c| {
                c.iter()
                    .position(|x| !x.is_zero())
                    .expect("zero basis column")
            })
            .collect();
        Lattice { dim, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Integer coordinates of `w` in the HNF basis, if `w` lies in the lattice.
    pub fn coordinates(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(w.len(), self.dim, "vector dimension mismatch");
        let mut residual = w.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (col, &p) in self.basis.iter().zip(&self.pivots) {
            if residual[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = residual[p].div_rem(&col[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, c) in residual.iter_mut().zip(col) {
                *x -= &q * c;
            }
            coords.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, w: &[BigInt]) -> bool {
        self.coordinates(w).is_some()
    }

    /// `{x : M x ∈ self}` for a map `M : Z^k -> Z^dim`.
    pub fn preimage(&self, m: &IntMatrix) -> Result<Lattice> {
        if m.rows != self.dim {
            return Err(Error::Shape(format!(
                "map with {} rows into a lattice of dimension {}",
                m.rows, self.dim
            )));
        }
        // Kernel of [M | -basis], projected to the first k coordinates.
        let neg_basis = IntMatrix::from_columns(
            self.dim,
            &self
                .basis
                .iter()
                .map(|c| c.iter().map(|x| -x).collect())
                .collect::<Vec<_>>(),
        );
        let joint = m.hstack(&neg_basis)?;
        let gens: Vec<Vec<BigInt>> = kernel_basis(&joint)
            .into_iter()
            .map(|v| v[..m.cols].to_vec())
            .collect();
        Ok(Lattice::span(m.cols, &gens))
    }
}

fn check_nonnegative(m: &IntMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows, m.cols));
    }
    if !m.is_nonnegative() {
        return Err(Error::Validation(
            "support digraph requires nonnegative entries".into(),
        ));
    }
    Ok(())
}

fn reachable(m: &IntMatrix, start: usize, forward: bool) -> Vec<bool> {
    let n = m.rows;
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            let arc = if forward { &m[(v, w)] } else { &m[(w, v)] };
            if arc.is_positive() && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Whether the digraph with an arc `i -> j` whenever `M[i][j] > 0` is
/// strongly connected and carries at least one arc.
pub fn is_irreducible(m: &IntMatrix) -> Result<bool> {
    check_nonnegative(m)?;
    if m.rows == 0 {
        return Ok(false);
    }
    if m.rows == 1 {
        return Ok(m[(0, 0)].is_positive());
    }
    Ok(reachable(m, 0, true).into_iter().all(|x| x)
        && reachable(m, 0, false).into_iter().all(|x| x))
}

pub fn is_permutation(m: &IntMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows;
    let one = BigInt::one();
    let entries_ok = m.data.iter().all(|x| x.is_zero() || *x == one);
    entries_ok
        && (0..n).all(|i| m.row(i).iter().filter(|x| !x.is_zero()).count() == 1)
        && (0..n).all(|j| (0..n).filter(|&i| !m[(i, j)].is_zero()).count() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_snf(m: &IntMatrix) -> SnfDecomposition {
        let dec = snf(m);
        assert_eq!(dec.u.mul(m).unwrap().mul(&dec.v).unwrap(), dec.d);
        assert_eq!(det(&dec.u).unwrap().abs(), BigInt::one());
        assert_eq!(det(&dec.v).unwrap().abs(), BigInt::one());
        dec
    }

    #[test]
    fn snf_zero_one_by_one() {
        let dec = check_snf(&mat(&[&[0]]));
        assert_eq!(dec.d, mat(&[&[0]]));
        assert_eq!(dec.u, IntMatrix::identity(1));
        assert_eq!(dec.v, IntMatrix::identity(1));
    }

    #[test]
    fn snf_rank_one() {
        let dec = check_snf(&mat(&[&[-1, -1], &[-1, -1]]));
        assert_eq!(dec.diagonal(), big(&[1, 0]));
    }

    #[test]
    fn snf_two_four() {
        let dec = check_snf(&mat(&[&[2, 4], &[6, 8]]));
        assert_eq!(dec.diagonal(), big(&[2, 4]));
    }

    #[test]
    fn snf_rectangular() {
        let m = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(check_snf(&m).diagonal(), big(&[2, 6, 12]));
        let wide = mat(&[&[4, 6, 8]]);
        assert_eq!(check_snf(&wide).diagonal(), big(&[2]));
        let tall = wide.transpose();
        assert_eq!(check_snf(&tall).diagonal(), big(&[2]));
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&IntMatrix::identity(2)).unwrap(), BigInt::one());
        assert_eq!(det(&mat(&[&[-1]])).unwrap(), BigInt::from(-1));
        assert_eq!(det(&mat(&[&[-1, -1], &[-1, -1]])).unwrap(), BigInt::zero());
        assert_eq!(det(&mat(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(
            det(&mat(&[&[2, -3, 1], &[2, 0, -1], &[1, 4, 5]])).unwrap(),
            BigInt::from(49)
        );
        assert!(matches!(det(&mat(&[&[1, 2]])), Err(Error::NotSquare(1, 2))));
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&mat(&[&[0]])), vec![big(&[1])]);
        let k = kernel_basis(&mat(&[&[-1, -1], &[-1, -1]]));
        assert_eq!(k.len(), 1);
        assert!(k[0] == big(&[1, -1]) || k[0] == big(&[-1, 1]));
    }

    #[test]
    fn hermite_forms() {
        assert_eq!(hnf(&IntMatrix::identity(3)), IntMatrix::identity(3));
        assert_eq!(hnf(&mat(&[&[0]])), mat(&[&[0]]));
        let h = hnf(&mat(&[&[2, 4], &[6, 8]]));
        assert_eq!(h, mat(&[&[2, 0], &[2, 4]]));
        assert_eq!(det(&h).unwrap().abs(), BigInt::from(8));
    }

    #[test]
    fn lattice_membership_and_preimage() {
        let l = Lattice::span(2, &[big(&[2, 6]), big(&[4, 8])]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&big(&[2, 6])));
        assert!(l.contains(&big(&[0, 4])));
        assert!(!l.contains(&big(&[1, 0])));
        assert!(!l.contains(&big(&[0, 2])));

        // {x : 2x ∈ 4Z} = 2Z
        let four = Lattice::span(1, &[big(&[4])]);
        let pre = four.preimage(&mat(&[&[2]])).unwrap();
        assert_eq!(pre.basis(), &[big(&[2])]);

        let zero = Lattice::span(2, &[]);
        let pre = zero.preimage(&mat(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(pre.rank(), 1);
        assert!(pre.contains(&big(&[3, -3])));
    }

    #[test]
    fn digraph_predicates() {
        assert!(is_irreducible(&mat(&[&[2, 1], &[1, 2]])).unwrap());
        assert!(!is_irreducible(&mat(&[&[1, 0], &[0, 1]])).unwrap());
        assert!(is_irreducible(&mat(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(is_irreducible(&mat(&[&[-1]])).is_err());

        assert!(is_permutation(&IntMatrix::identity(2)));
        assert!(is_permutation(&mat(&[&[0, 1], &[1, 0]])));
        assert!(!is_permutation(&mat(&[&[2]])));
        assert!(!is_permutation(&mat(&[&[1, 1], &[0, 1]])));
    }
}
