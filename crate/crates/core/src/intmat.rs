//! Exact integer linear algebra: Smith and Hermite normal forms, ranks and
//! rational span membership over arbitrary-precision integers.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigjson::{self, JsonInt};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum IntMatError {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ragged rows in matrix input")]
    Ragged,
}

/// Dense integer matrix. Serializes as nested arrays.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<JsonInt>>", into = "Vec<Vec<JsonInt>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix with `cols` columns from its rows; `cols` is needed
    /// so that a matrix with no rows still has a width.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self, IntMatError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(IntMatError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// # Panics
    /// If the matrix is not square.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn smith_normal_form(&self) -> SmithForm {
        smith_normal_form(self)
    }
}

impl TryFrom<Vec<Vec<JsonInt>>> for IntMatrix {
    type Error = IntMatError;
    fn try_from(rows: Vec<Vec<JsonInt>>) -> Result<Self, Self::Error> {
        let cols = rows.first().map_or(0, Vec::len);
        let rows: Vec<Vec<BigInt>> = rows.into_iter().map(bigjson::unwrap_vec).collect();
        IntMatrix::from_rows(cols, &rows).map_err(|_| IntMatError::Ragged)
    }
}

impl From<IntMatrix> for Vec<Vec<JsonInt>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows().iter().map(|r| bigjson::wrap_vec(r)).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

/// Result of a Smith decomposition: `u * m * v` is the diagonal matrix with
/// entries `diagonal` (padded with zeros to the shape of `m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Materializes the diagonal as a matrix of the given shape.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

/// Location of the smallest nonzero absolute value in the trailing block
/// starting at `(t, t)`; ties resolve to the first position in row-major
/// order.
fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let m = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| m < *b) {
                best = Some((i, j, m));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with unimodular transforms. The diagonal has length
/// `min(rows, cols)`, is nonnegative and satisfies `d₁ | d₂ | …`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        while let Some((pi, pj)) = smallest_pivot(&a, t) {
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..a.rows {
                let q = -a.get(i, t).div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..a.cols {
                let q = -a.get(t, j).div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let offending = (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let diagonal = (0..n).map(|i| a.get(i, i).clone()).collect();
    SmithForm { diagonal, u, v }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The returned nonzero rows are in echelon form with positive pivots, and
/// every entry above a pivot lies in `[0, pivot)`. Two generating sets span
/// the same lattice iff their Hermite forms coincide.
pub fn hermite_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>, IntMatError> {
    let mut a = IntMatrix::from_rows(cols, rows)?;
    let mut r = 0;
    let mut pivots = Vec::new();
    for j in 0..cols {
        if r == a.rows {
            break;
        }
        loop {
            let best = (r..a.rows)
                .filter(|&i| !a.get(i, j).is_zero())
                .min_by(|&x, &y| a.get(x, j).abs().cmp(&a.get(y, j).abs()).then(x.cmp(&y)));
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            let pivot = a.get(r, j).clone();
            let mut dirty = false;
            for i in r + 1..a.rows {
                let q = -a.get(i, j).div_floor(&pivot);
                a.add_row_multiple(i, r, &q);
                dirty |= !a.get(i, j).is_zero();
            }
            if !dirty {
                break;
            }
        }
        if a.get(r, j).is_zero() {
            continue;
        }
        if a.get(r, j).is_negative() {
            a.negate_row(r);
        }
        let pivot = a.get(r, j).clone();
        for i in 0..r {
            let q = -a.get(i, j).div_floor(&pivot);
            a.add_row_multiple(i, r, &q);
        }
        pivots.push(j);
        r += 1;
    }
    Ok((0..r).map(|i| a.row(i).to_vec()).collect())
}

/// Rank over ℚ of the given integer vectors.
pub fn rank(cols: usize, vectors: &[Vec<BigInt>]) -> Result<usize, IntMatError> {
    Ok(hermite_rows(cols, vectors)?.len())
}

/// True iff `target` lies in the ℚ-span of `vectors`.
pub fn in_rational_span(vectors: &[Vec<BigInt>], target: &[BigInt]) -> Result<bool, IntMatError> {
    let cols = target.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != cols) {
        return Err(IntMatError::DimensionMismatch { expected: cols, found: bad.len() });
    }
    let base = rank(cols, vectors)?;
    let mut extended = vectors.to_vec();
    extended.push(target.to_vec());
    Ok(rank(cols, &extended)? == base)
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
