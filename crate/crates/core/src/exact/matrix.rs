use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

use crate::int::Integer;
use crate::Error;

/// Dense integer matrix, row-major. Zero rows or zero columns are allowed and
/// denote the zero map between the corresponding free modules.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Integer>,
}

impl TryFrom<RawMatrix> for IntegerMatrix {
    type Error = Error;
    fn try_from(raw: RawMatrix) -> Result<Self, Error> {
        IntegerMatrix::from_vec(raw.rows, raw.cols, raw.entries)
    }
}

impl From<IntegerMatrix> for RawMatrix {
    fn from(m: IntegerMatrix) -> Self {
        RawMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.data,
        }
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![Integer::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Integer::ONE;
        }
        m
    }

    pub fn scalar(n: usize, c: &Integer) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[Integer]) -> Self {
        assert!(diag.len() <= rows.min(cols));
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Integer>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows of anything convertible to [`Integer`].
    /// Panics on ragged input; intended for literals.
    pub fn from_rows<T: Clone + Into<Integer>>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix literal");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntegerMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Integer>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn entries(&self) -> &[Integer] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Integer> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Integer::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Exactly one nonzero entry per row and per column, and that entry is ±1.
    pub fn is_signed_permutation(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut col_hits = vec![0usize; self.cols];
        for i in 0..self.rows {
            let mut hits = 0;
            for j in 0..self.cols {
                let e = &self[(i, j)];
                if e.is_zero() {
                    continue;
                }
                if e.abs() != Integer::ONE {
                    return false;
                }
                hits += 1;
                col_hits[j] += 1;
            }
            if hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&h| h == 1)
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

    pub fn checked_mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = rhs.row(k);
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Integer]) -> Vec<Integer> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Integer) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> IntegerMatrix {
        self.scale(&Integer::from(-1))
    }

    pub fn pow(&self, exp: u32) -> IntegerMatrix {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.rows, rhs.rows);
        let cols = self.cols + rhs.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> IntegerMatrix {
        let idx: Vec<usize> = idx.into_iter().collect();
        let mut out = Self::zeros(idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            out.data[r * self.cols..(r + 1) * self.cols].clone_from_slice(self.row(i));
        }
        out
    }

    pub fn select_columns(&self, idx: impl IntoIterator<Item = usize>) -> IntegerMatrix {
        let idx: Vec<usize> = idx.into_iter().collect();
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out[(i, c)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Reduces every entry of row `i` into `[0, moduli[i])`; a zero modulus leaves the row alone.
    pub fn reduce_rows(&mut self, moduli: &[Integer]) {
        assert_eq!(moduli.len(), self.rows);
        for (i, m) in moduli.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for e in &mut self.data[i * self.cols..(i + 1) * self.cols] {
                *e = e.rem_euclid(m);
            }
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Integer {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Integer::ONE;
        }
        let mut a = self.clone();
        let mut sign = Integer::ONE;
        let mut prev = Integer::ONE;
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Integer::ZERO,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += q * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            let s = &self.data[source * c + j];
            if !s.is_zero() {
                let v = s * q;
                self.data[target * c + j] += v;
            }
        }
    }

    /// col[target] += q * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            let s = &self.data[i * c + source];
            if !s.is_zero() {
                let v = s * q;
                self.data[i * c + target] += v;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for e in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *e = -&*e;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let e = &mut self.data[i * self.cols + j];
            *e = -&*e;
        }
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = Integer;
    fn index(&self, (i, j): (usize, usize)) -> &Integer {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Integer {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;
    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        self.checked_mul(rhs).expect("matrix dimensions")
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix({}x{})[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_products_have_the_right_shape() {
        let a = IntegerMatrix::zeros(3, 0);
        let b = IntegerMatrix::zeros(0, 2);
        let c = &a * &b;
        assert_eq!((c.rows(), c.cols()), (3, 2));
        assert!(c.is_zero());
        assert!(a.checked_mul(&IntegerMatrix::zeros(1, 1)).is_err());
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        assert_eq!(m.determinant(), Integer::from(2 + (1 - 3)));
        let m = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), Integer::from(-1));
        assert_eq!(IntegerMatrix::zeros(0, 0).determinant(), Integer::ONE);
    }

    #[test]
    fn signed_permutation_detection() {
        assert!(IntegerMatrix::from_rows(&[vec![0, -1], vec![1, 0]]).is_signed_permutation());
        assert!(!IntegerMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).is_signed_permutation());
        assert!(!IntegerMatrix::from_rows(&[vec![2]]).is_signed_permutation());
        assert!(IntegerMatrix::zeros(0, 0).is_signed_permutation());
    }

    #[test]
    fn serde_shape() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"entries":[1,2,3,4]}"#);
        let back: IntegerMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(
            serde_json::from_str::<IntegerMatrix>(r#"{"rows":2,"cols":2,"entries":[1]}"#).is_err()
        );
    }
}
