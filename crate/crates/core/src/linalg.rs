//! Dense exact linear algebra over Q(√3, i).

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};
use crate::scalar::FieldElement;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![FieldElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = FieldElement::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<FieldElement>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
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

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn conjugate(&self) -> Matrix {
        self.map(FieldElement::conjugate)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix {
        self.map(|x| x * s)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
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

    pub fn trace(&self) -> FieldElement {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)].clone()).sum()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form, visiting columns in `order`.
    /// Returns the pivot columns in pivot-row order.
    pub fn rref_with_order(&mut self, order: &[usize]) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for &c in order {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].invert().expect("pivot is nonzero");
            for j in 0..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = &self[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<FieldElement> = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for (j, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        self[(i, j)] = &self[(i, j)] - &(&f * pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// First-nonzero-pivot RREF in natural column order.
    pub fn rref(&mut self) -> Vec<usize> {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with_order(&order)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElement::zero(); self.cols];
                v[f] = FieldElement::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&m[(r, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = FieldElement::one();
        }
        let order: Vec<usize> = (0..n).collect();
        let pivots = aug.rref_with_order(&order);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Leading principal minors `det(A[..k, ..k])` for k = 1..=n.
    pub fn leading_principal_minors(&self) -> Vec<FieldElement> {
        // Fraction-free enough for 14x14: Gaussian elimination without row
        // swaps, tracking the running product of pivots.
        let n = self.rows.min(self.cols);
        let mut m = self.clone();
        let mut minors = Vec::with_capacity(n);
        let mut det = FieldElement::one();
        for k in 0..n {
            let pivot = m[(k, k)].clone();
            det = &det * &pivot;
            minors.push(det.clone());
            if pivot.is_zero() {
                // Remaining minors need a different elimination order.
                for kk in k + 1..n {
                    minors.push(submatrix_det(self, kk + 1));
                }
                return minors;
            }
            let inv = pivot.invert().expect("nonzero");
            for i in k + 1..n {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let f = &m[(i, k)] * &inv;
                for j in k..n {
                    if !m[(k, j)].is_zero() {
                        m[(i, j)] = &m[(i, j)] - &(&f * &m[(k, j)]);
                    }
                }
            }
        }
        minors
    }

    pub fn determinant(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols);
        submatrix_det(self, self.rows)
    }
}

fn submatrix_det(a: &Matrix, k: usize) -> FieldElement {
    let mut m = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    let mut det = FieldElement::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !m[(i, c)].is_zero()) else {
            return FieldElement::zero();
        };
        if p != c {
            m.swap_rows(p, c);
            det = -det;
        }
        det = &det * &m[(c, c)];
        let inv = m[(c, c)].invert().expect("nonzero");
        for i in c + 1..k {
            if m[(i, c)].is_zero() {
                continue;
            }
            let f = &m[(i, c)] * &inv;
            for j in c..k {
                m[(i, j)] = &m[(i, j)] - &(&f * &m[(c, j)]);
            }
        }
    }
    det
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Coordinates of `target` in the basis given by `columns`; fails if
/// `target` lies outside their span or the columns are dependent.
pub fn express_in_basis(columns: &Matrix, target: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let n = columns.cols();
    let mut aug = Matrix::zeros(columns.rows(), n + 1);
    for i in 0..columns.rows() {
        for j in 0..n {
            aug[(i, j)] = columns[(i, j)].clone();
        }
        aug[(i, n)] = target[i].clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&n) {
        return Err(Error::NotInSpan("vector".into()));
    }
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    let mut x = vec![FieldElement::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[(r, n)].clone();
    }
    Ok(x)
}
