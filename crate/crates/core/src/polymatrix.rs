//! Matrices of Laurent polynomials: determinants and gcds of maximal minors.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ring::Ring;

/// Refuse minor enumerations larger than this.
pub const MINOR_LIMIT: u128 = 1_000_000;

/// Below this size determinants use cofactor expansion.
const COFACTOR_CUTOFF: usize = 5;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<R>>,
}

impl<R: Ring> PolyMatrix<R> {
    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![LaurentPoly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &R, rows: Vec<Vec<LaurentPoly<R>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
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

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<R> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly<R>) {
        self.entries[i * self.cols + j] = v;
    }

    /// Copies `block` into the submatrix starting at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &PolyMatrix<R>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> PolyMatrix<R> {
        let mut out = Self::zeros(&self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(row + i, col + j).clone());
            }
        }
        out
    }

    /// The matrix without the given (0-based) columns.
    pub fn remove_columns(&self, drop: &[usize]) -> PolyMatrix<R> {
        let keep: Vec<usize> = (0..self.cols).filter(|j| !drop.contains(j)).collect();
        self.select(&(0..self.rows).collect::<Vec<_>>(), &keep)
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix<R> {
        self.select(rows, &(0..self.cols).collect::<Vec<_>>())
    }

    fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix<R> {
        let entries =
            rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn mul(&self, other: &PolyMatrix<R>) -> Result<PolyMatrix<R>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero(&self.ring);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMatrix<R>) -> Result<PolyMatrix<R>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("cannot add matrices of different shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check_square(&self) -> Result<usize> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Exact determinant. The 0x0 determinant is 1.
    pub fn det(&self) -> Result<LaurentPoly<R>> {
        let n = self.check_square()?;
        if n < COFACTOR_CUTOFF {
            Ok(self.cofactor_det_unchecked())
        } else {
            Ok(self.bareiss_det_unchecked())
        }
    }

    /// Determinant by fraction-free Gaussian elimination over the Laurent
    /// polynomial ring.
    pub fn det_bareiss(&self) -> Result<LaurentPoly<R>> {
        self.check_square()?;
        Ok(self.bareiss_det_unchecked())
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<LaurentPoly<R>> {
        self.check_square()?;
        Ok(self.cofactor_det_unchecked())
    }

    fn bareiss_det_unchecked(&self) -> LaurentPoly<R> {
        let n = self.rows;
        let ring = &self.ring;
        if n == 0 {
            return LaurentPoly::one(ring);
        }
        let mut a = self.entries.clone();
        let mut negate = false;
        let mut prev = LaurentPoly::one(ring);
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return LaurentPoly::zero(ring);
                };
                for j in k..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                let lead = a[i * n + k].clone();
                for j in k + 1..n {
                    let x = &(&a[i * n + j] * &pivot) - &(&lead * &a[k * n + j]);
                    a[i * n + j] = if prev.is_one() {
                        x
                    } else {
                        x.exact_div(&prev).expect("Bareiss division is exact")
                    };
                }
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    fn cofactor_det_unchecked(&self) -> LaurentPoly<R> {
        let n = self.rows;
        let cols: Vec<usize> = (0..n).collect();
        cofactor(self, 0, &cols)
    }

    /// Gcd over all row subsets of size `minor_size` of the minor determinants,
    /// in canonical form; zero when every minor vanishes.
    pub fn gcd_of_maximal_minors(&self, minor_size: usize) -> Result<LaurentPoly<R>> {
        if self.cols != minor_size {
            return Err(Error::Dimension(format!(
                "expected {minor_size} columns, found {}",
                self.cols
            )));
        }
        if self.rows < minor_size {
            return Err(Error::Dimension(format!(
                "need at least {minor_size} rows, found {}",
                self.rows
            )));
        }
        let count = binomial(self.rows, minor_size);
        if count > MINOR_LIMIT {
            return Err(Error::TooManyMinors { count, limit: MINOR_LIMIT });
        }
        let mut g = LaurentPoly::zero(&self.ring);
        let mut subset: Vec<usize> = (0..minor_size).collect();
        loop {
            let d = self.select_rows(&subset).det()?;
            g = g.gcd(&d)?;
            if g.is_one() {
                break;
            }
            if !next_subset(&mut subset, self.rows) {
                break;
            }
        }
        Ok(g)
    }
}

fn cofactor<R: Ring>(m: &PolyMatrix<R>, row: usize, cols: &[usize]) -> LaurentPoly<R> {
    let ring = m.ring();
    if cols.is_empty() {
        return LaurentPoly::one(ring);
    }
    let mut acc = LaurentPoly::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &cofactor(m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Advances a sorted index subset to the next one in lexicographic order.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn det_polymatrix<R: Ring>(m: &PolyMatrix<R>) -> Result<LaurentPoly<R>> {
    m.det()
}

pub fn gcd_of_maximal_minors<R: Ring>(
    m: &PolyMatrix<R>,
    minor_size: usize,
) -> Result<LaurentPoly<R>> {
    m.gcd_of_maximal_minors(minor_size)
}

impl<R: Ring> fmt::Debug for PolyMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} over {}", self.rows, self.cols, self.ring.kind())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
