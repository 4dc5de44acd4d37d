//! Exact integer and rational linear algebra.
//!
//! Matrices here are tiny (at most a handful of rows), so every routine is a
//! plain dense elimination over [`BigInt`] or [`Rat`]. Rationals are the
//! reduced `num_rational` ratios, which normalize on every operation, so
//! structural equality is mathematical equality.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

/// Reduced rational with positive denominator.
pub type Rat = num_rational::BigRational;

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<Rat>;

/// Dense row-major matrix with fixed dimensions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T: Clone> Matrix<T> {
    /// Builds a matrix from row vectors; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Result<Self> {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != nrows) {
            return Err(Error::Dimension("ragged columns".into()));
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in 0..nrows {
            for c in cols {
                data.push(c[r].clone());
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
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

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + for<'a> std::ops::AddAssign<&'a T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc += &(&self[(i, k)] * &rhs[(k, j)]);
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += &(a * b);
                }
                acc
            })
            .collect())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|x| Rat::from_integer(x.clone()))
    }
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn det_int(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                // Sylvester's identity guarantees exact division.
                a[(i, j)] = v / &prev;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if sign_flip { -det } else { det })
}

/// Exact determinant of a rational matrix by Gaussian elimination.
pub fn det_rat(m: &RatMatrix) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
            return Ok(Rat::zero());
        };
        if p != k {
            a.swap_rows(p, k);
            det = -det;
        }
        let pivot = a[(k, k)].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &pivot;
            for j in k..n {
                let v = &f * &a[(k, j)];
                a[(i, j)] -= v;
            }
        }
    }
    Ok(det)
}

/// Exact inverse by Gauss–Jordan elimination over the rationals.
pub fn invert_rat(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "inverse of non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for k in 0..n {
        let p = (k..n)
            .find(|&r| !a[(r, k)].is_zero())
            .ok_or(Error::Singular)?;
        a.swap_rows(p, k);
        inv.swap_rows(p, k);
        let pivot = a[(k, k)].recip();
        for j in 0..n {
            a[(k, j)] *= &pivot;
            inv[(k, j)] *= &pivot;
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for j in 0..n {
                let va = &f * &a[(k, j)];
                a[(i, j)] -= va;
                let vi = &f * &inv[(k, j)];
                inv[(i, j)] -= vi;
            }
        }
    }
    Ok(inv)
}

/// Nonzero elementary divisors `d_1 | d_2 | ... | d_r` of the Smith normal
/// form, where `r` is the rank.
pub fn snf_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut divisors = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let pivot = (k..rows)
            .flat_map(|r| (k..cols).map(move |c| (r, c)))
            .filter(|&rc| !a[rc].is_zero())
            .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
        let Some((pr, pc)) = pivot else {
            break;
        };
        a.swap_rows(k, pr);
        a.swap_cols(k, pc);

        let mut clean = true;
        for r in k + 1..rows {
            if a[(r, k)].is_zero() {
                continue;
            }
            let q = a[(r, k)].div_floor(&a[(k, k)]);
            for c in k..cols {
                let v = &q * &a[(k, c)];
                a[(r, c)] -= v;
            }
            if !a[(r, k)].is_zero() {
                clean = false;
            }
        }
        for c in k + 1..cols {
            if a[(k, c)].is_zero() {
                continue;
            }
            let q = a[(k, c)].div_floor(&a[(k, k)]);
            for r in k..rows {
                let v = &q * &a[(r, k)];
                a[(r, c)] -= v;
            }
            if !a[(k, c)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Pivot row and column are clear; enforce divisibility of the rest.
        let offender = (k + 1..rows)
            .flat_map(|r| (k + 1..cols).map(move |c| (r, c)))
            .find(|&rc| !a[rc].is_multiple_of(&a[(k, k)]));
        if let Some((r, _)) = offender {
            for c in k..cols {
                let v = a[(r, c)].clone();
                a[(k, c)] += v;
            }
            continue;
        }
        divisors.push(a[(k, k)].abs());
        k += 1;
    }
    divisors
}

/// Row-style Hermite normal form `H = U * A` with `U` unimodular.
///
/// Pivots are positive and entries above a pivot lie in `[0, pivot)`, so `H`
/// is the unique representative of the orbit `GL_m(Z) * A` when `A` has full
/// row rank.
pub fn hnf_rows(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivot_row = 0;
    for c in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // Euclid on column c among rows pivot_row.. until one nonzero remains.
        loop {
            let nonzero: Vec<usize> = (pivot_row..h.rows)
                .filter(|&r| !h[(r, c)].is_zero())
                .collect();
            if nonzero.len() <= 1 {
                if let Some(&r) = nonzero.first() {
                    h.swap_rows(pivot_row, r);
                    u.swap_rows(pivot_row, r);
                }
                break;
            }
            let &min_r = nonzero
                .iter()
                .min_by(|&&x, &&y| h[(x, c)].abs().cmp(&h[(y, c)].abs()))
                .expect("nonempty");
            for &r in &nonzero {
                if r == min_r {
                    continue;
                }
                let q = h[(r, c)].div_floor(&h[(min_r, c)]);
                row_axpy(&mut h, r, min_r, &q);
                row_axpy(&mut u, r, min_r, &q);
            }
        }
        if h[(pivot_row, c)].is_zero() {
            continue;
        }
        if h[(pivot_row, c)].is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        for r in 0..pivot_row {
            let q = h[(r, c)].div_floor(&h[(pivot_row, c)]);
            if !q.is_zero() {
                row_axpy(&mut h, r, pivot_row, &q);
                row_axpy(&mut u, r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// `row[target] -= q * row[source]`
fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for c in 0..m.cols {
        let v = q * &m[(source, c)];
        m[(target, c)] -= v;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols {
        let v = -&m[(r, c)];
        m[(r, c)] = v;
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses `"a"` or `"a/b"` into a reduced rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Least common multiple of the denominators; one for an empty slice.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
