use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Dense row-major matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty shape {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix shape");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from machine integers; panics on ragged input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&v| T::from_i64(v)).collect())
            .collect();
        Matrix::from_rows(data).expect("well-formed literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Matrix unit `E_{ij}` with 1-based indices; out-of-range indices give zero.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Matrix::from_fn(n, n, |a, b| {
            if a + 1 == i && b + 1 == j {
                T::one()
            } else {
                T::zero()
            }
        })
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone())
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
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
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Non-negative power of a square matrix.
    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Copy of rows `r0..r0+h`, columns `c0..c0+w`.
    pub fn submatrix(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols, "submatrix out of range");
        Matrix::from_fn(h, w, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Block `(a, b)` (0-based) of a matrix partitioned into `size`×`size` blocks.
    pub fn block(&self, a: usize, b: usize, size: usize) -> Self {
        self.submatrix(a * size, b * size, size, size)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Self) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self[(r0 + i, c0 + j)] = m[(i, j)].clone();
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        block_assemble(&[vec![self.clone(), other.clone()]])
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        block_assemble(&[vec![self.clone()], vec![other.clone()]])
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|v| v.abs())
            .fold(T::zero(), |m, v| if v > m { v } else { m })
    }
}

/// Concatenate a rectangular grid of conformable blocks.
pub fn block_assemble<T: Scalar>(grid: &[Vec<Matrix<T>>]) -> Result<Matrix<T>> {
    let width = grid.first().map_or(0, Vec::len);
    if grid.is_empty() || width == 0 || grid.iter().any(|row| row.len() != width) {
        return Err(Error::Dimension("ragged or empty block grid".into()));
    }
    let heights: Vec<usize> = grid.iter().map(|row| row[0].rows()).collect();
    let widths: Vec<usize> = grid[0].iter().map(Matrix::cols).collect();
    for (bi, row) in grid.iter().enumerate() {
        for (bj, m) in row.iter().enumerate() {
            if m.rows() != heights[bi] || m.cols() != widths[bj] {
                return Err(Error::Dimension(format!(
                    "block ({bi},{bj}) is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    heights[bi],
                    widths[bj]
                )));
            }
        }
    }
    let mut out = Matrix::zeros(heights.iter().sum(), widths.iter().sum());
    let mut r0 = 0;
    for (bi, row) in grid.iter().enumerate() {
        let mut c0 = 0;
        for (bj, m) in row.iter().enumerate() {
            out.set_block(r0, c0, m);
            c0 += widths[bj];
        }
        r0 += heights[bi];
    }
    Ok(out)
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("conformable product")
    }
}

impl<T: Scalar> Mul for Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Matrix<T>) -> Matrix<T> {
        &self * &rhs
    }
}

fn zip_with<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, f: impl Fn(&T, &T) -> T) -> Matrix<T> {
    assert!(
        a.rows == b.rows && a.cols == b.cols,
        "shape mismatch {}x{} vs {}x{}",
        a.rows,
        a.cols,
        b.rows,
        b.cols
    );
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect(),
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        zip_with(self, rhs, |x, y| x.clone() + y.clone())
    }
}

impl<T: Scalar> Add for Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Matrix<T>) -> Matrix<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        zip_with(self, rhs, |x, y| x.clone() - y.clone())
    }
}

impl<T: Scalar> Sub for Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Matrix<T>) -> Matrix<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|v| -v.clone())
    }
}

impl<T: Scalar> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>w$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}
