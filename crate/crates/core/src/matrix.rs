//! Small dense matrices over a coefficient ring, used for representation images.

use std::fmt;

use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    /// Row-major entries.
    pub fn from_rows(ring: &R, rows: Vec<Vec<R::Elem>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Matrix { ring: ring.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(ring: &R, rows: &[&[i64]]) -> Option<Self> {
        Self::from_rows(ring, rows.iter().map(|row| row.iter().map(|&v| ring.from_i64(v)).collect()).collect())
    }

    pub fn ring(&self) -> &R {
        &self.ring
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

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let r = &self.ring;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = r.mul(a, other.get(k, j));
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &prod);
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring, self.rows) && self.is_square()
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.get(0, 0).clone();
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    *v == d
                } else {
                    self.ring.is_zero(v)
                }
            })
        })
    }

    pub fn trace(&self) -> R::Elem {
        (0..self.rows).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, self.get(i, i)))
    }

    /// Fraction-free (Bareiss) determinant; every division is exact.
    pub fn det(&self) -> R::Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let r = &self.ring;
        let n = self.rows;
        if n == 0 {
            return r.one();
        }
        let mut a = self.data.clone();
        let mut negate = false;
        let mut prev = r.one();
        for k in 0..n {
            if r.is_zero(&a[k * n + k]) {
                let Some(p) = (k + 1..n).find(|&i| !r.is_zero(&a[i * n + k])) else {
                    return r.zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = r.sub(
                        &r.mul(&a[i * n + j], &a[k * n + k]),
                        &r.mul(&a[i * n + k], &a[k * n + j]),
                    );
                    a[i * n + j] = r.divide_exact(&x, &prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        if negate {
            r.neg(&d)
        } else {
            d
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let data = (0..self.rows)
            .filter(|&i| i != skip_row)
            .flat_map(|i| (0..self.cols).filter(move |&j| j != skip_col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Matrix { ring: self.ring.clone(), rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Inverse via the adjugate; `None` unless the determinant is a unit.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let r = &self.ring;
        let n = self.rows;
        let det_inv = r.inverse(&self.det())?;
        let mut out = Self::zeros(r, n, n);
        for i in 0..n {
            for j in 0..n {
                let cof = if n == 1 { r.one() } else { self.minor(j, i).det() };
                let cof = if (i + j) % 2 == 1 { r.neg(&cof) } else { cof };
                out.set(i, j, r.mul(&cof, &det_inv));
            }
        }
        Some(out)
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
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
                write!(f, "{:?}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
