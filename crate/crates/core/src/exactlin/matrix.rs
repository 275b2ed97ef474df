use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, LocalFn, Ring, Valuation, Q};
use crate::Error;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub rref: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from a list of rows. `cols` disambiguates the zero-row case.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, Error> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            self.shape(),
            other.shape(),
            "matrix difference shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
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
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                    out[(i, j)] = cur + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other)
            .expect("matrix product shape mismatch")
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<&T> {
        self.data.iter().find(|x| !x.is_zero())
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

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form. Pivots are taken as the first nonzero
    /// entry scanning columns left to right and rows top to bottom, so the
    /// result is canonical.
    pub fn echelon(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = T::one() / m[(row, col)].clone();
            for j in col..m.cols {
                let v = m[(row, j)].clone();
                m[(row, j)] = v * inv.clone();
            }
            for i in 0..m.rows {
                if i == row || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for j in col..m.cols {
                    if m[(row, j)].is_zero() {
                        continue;
                    }
                    let v = m[(i, j)].clone() - f.clone() * m[(row, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, one column per free variable of the RREF.
    /// Each basis vector has a 1 in its free column and 0 in every other
    /// free column.
    pub fn kernel_basis(&self) -> Matrix<T> {
        let Echelon { rref, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                out[(p, k)] = -rref[(r, f)].clone();
            }
        }
        out
    }

    /// Indices of a maximal independent set of columns (the pivot columns).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    pub fn column_space_basis(&self) -> Matrix<T> {
        self.select_columns(&self.independent_columns())
    }

    /// Some solution of `self * x = b`, or `None` if the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>, Error> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for a matrix with {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::from_fn(self.rows, 1, |i, _| b[i].clone()));
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rref[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Matrix<T>) -> Result<Option<Matrix<T>>, Error> {
        let mut cols = Vec::with_capacity(rhs.cols);
        for j in 0..rhs.cols {
            match self.solve(&rhs.column(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(&cols, self.cols)))
    }

    /// Standard basis vectors extending the (independent) columns of `self`
    /// to a basis of the ambient space, chosen greedily in index order.
    pub fn complement_basis(&self) -> Result<Matrix<T>, Error> {
        if self.rank() != self.cols {
            return Err(Error::DependentColumns);
        }
        let n = self.rows;
        let mut current = self.clone();
        let mut chosen = Vec::new();
        let mut rank = self.cols;
        for k in 0..n {
            if rank == n {
                break;
            }
            let e = Matrix::from_fn(n, 1, |i, _| if i == k { T::one() } else { T::zero() });
            let candidate = current.hstack(&e);
            if candidate.rank() > rank {
                current = candidate;
                chosen.push(k);
                rank += 1;
            }
        }
        Ok(Matrix::identity(n).select_columns(&chosen))
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let Echelon { rref, pivots } = self.hstack(&Matrix::identity(n)).echelon();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p != n - 1) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| rref[(i, n + j)].clone()))
    }
}

impl Matrix<Q> {
    /// Rank by Bareiss fraction-free elimination on the integer matrix
    /// obtained by clearing denominators row by row. Independent of
    /// [`Matrix::echelon`].
    pub fn rank_fraction_free(&self) -> usize {
        let ints: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        bareiss_rank(ints, self.cols)
    }
}

/// Rank of an integer matrix by one-step fraction-free (Bareiss)
/// elimination. Every division is exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][col].clone();
        let top = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col].clone();
            for (x, t) in row.iter_mut().zip(&top) {
                *x = (&piv * &*x - &f * t) / &prev;
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}

impl Matrix<LocalFn> {
    pub fn at_zero(&self) -> Matrix<Q> {
        self.map(|x| x.at_zero())
    }

    /// Entrywise evaluation; `None` if `x` is a pole of some entry.
    pub fn eval(&self, x: &Q) -> Option<Matrix<Q>> {
        let data: Option<Vec<Q>> = self.data.iter().map(|e| e.eval(x)).collect();
        Some(Matrix::new(self.rows, self.cols, data?))
    }

    pub fn from_constant(m: &Matrix<Q>) -> Self {
        m.map(|x| LocalFn::constant(x.clone()))
    }

    /// Rank over the fraction field `Q(t)`. Eliminates with pivots of
    /// minimal valuation so every multiplier stays in the local ring.
    pub fn generic_rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut live_rows: Vec<usize> = (0..m.rows).collect();
        let mut live_cols: Vec<usize> = (0..m.cols).collect();
        loop {
            let mut best: Option<(Valuation, usize, usize)> = None;
            for &i in &live_rows {
                for &j in &live_cols {
                    let v = m[(i, j)].valuation();
                    if v != Valuation::Infinite && best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return rank;
            };
            let piv = m[(pi, pj)].clone();
            for &i in &live_rows {
                if i == pi || m[(i, pj)].is_zero() {
                    continue;
                }
                let f = m[(i, pj)]
                    .checked_div(&piv)
                    .expect("minimal valuation pivot divides");
                for &j in &live_cols {
                    if m[(pi, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &(&f * &m[(pi, j)]);
                    m[(i, j)] = v;
                }
            }
            live_rows.retain(|&i| i != pi);
            live_cols.retain(|&j| j != pj);
            rank += 1;
        }
    }

    /// Inverse over the local ring; `None` unless the determinant is a unit.
    pub fn inverse_local(&self) -> Option<Matrix<LocalFn>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m = self.hstack(&Matrix::identity(n));
        for col in 0..n {
            let p = (col..n).find(|&i| m[(i, col)].is_unit())?;
            m.swap_rows(col, p);
            let inv = m[(col, col)].inverse()?;
            for j in 0..2 * n {
                let v = &m[(col, j)] * &inv;
                m[(col, j)] = v;
            }
            for i in 0..n {
                if i == col || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for j in 0..2 * n {
                    if m[(col, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &(&f * &m[(col, j)]);
                    m[(i, j)] = v;
                }
            }
        }
        Some(Matrix::from_fn(n, n, |i, j| m[(i, n + j)].clone()))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries(self.data.chunks(self.cols.max(1)))
            .finish()
    }
}
