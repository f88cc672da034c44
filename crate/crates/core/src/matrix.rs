//! Dense matrices over exact rationals.
//!
//! Small and unapologetically O(n³): every input in this crate is desk scale
//! (n ≤ 8, exterior powers up to 70×70). Positive definiteness is certified by
//! exact LDLᵀ with all pivots > 0, never by floating point.

use num::{One, Signed, Zero};

use crate::rat::{int, to_f64, Rat};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| crate::rat::fmt_rat(self.at(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Matrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                *m.at_mut(r, c) = f(r, c);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Matrix { rows: nr, cols: nc, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * other.at(k, c);
                    *out.at_mut(r, c) += term;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn scale(&self, s: &Rat) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.at(r, c) == self.at(c, r)))
    }

    /// Leading principal k×k block.
    pub fn leading_block(&self, k: usize) -> Matrix {
        Matrix::from_fn(k, k, |r, c| self.at(r, c).clone())
    }

    /// Principal minor Δ_k: determinant of the leading k×k block. Δ_0 = 1.
    pub fn principal_minor(&self, k: usize) -> Rat {
        if k == 0 {
            return Rat::one();
        }
        self.leading_block(k).det()
    }

    /// Determinant of the square submatrix given by row and column index sets.
    pub fn submatrix_det(&self, rows: &[usize], cols: &[usize]) -> Rat {
        assert_eq!(rows.len(), cols.len());
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.at(rows[r], cols[c]).clone()).det()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for i in 0..n {
            let Some(p) = (i..n).find(|&r| !m.at(r, i).is_zero()) else {
                return Rat::zero();
            };
            if p != i {
                m.swap_rows(i, p);
                det = -det;
            }
            let pivot = m.at(i, i).clone();
            det *= &pivot;
            for r in i + 1..n {
                if m.at(r, i).is_zero() {
                    continue;
                }
                let f = m.at(r, i) / &pivot;
                for c in i..n {
                    let delta = &f * m.at(i, c);
                    *m.at_mut(r, c) -= delta;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (nr, nc) = (m.rows, m.cols);
        let mut rank = 0;
        for col in 0..nc {
            let Some(p) = (rank..nr).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m.at(rank, col).clone();
            for r in rank + 1..nr {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col) / &pivot;
                for c in col..nc {
                    let delta = &f * m.at(rank, c);
                    *m.at_mut(r, c) -= delta;
                }
            }
            rank += 1;
            if rank == nr {
                break;
            }
        }
        rank
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let mut m = self.clone();
        let mut rhs = b.clone();
        for i in 0..n {
            let Some(p) = (i..n).find(|&r| !m.at(r, i).is_zero()) else {
                return Err(Error::Singular);
            };
            if p != i {
                m.swap_rows(i, p);
                rhs.swap_rows(i, p);
            }
            let pivot = m.at(i, i).clone();
            for r in 0..n {
                if r == i || m.at(r, i).is_zero() {
                    continue;
                }
                let f = m.at(r, i) / &pivot;
                for c in i..n {
                    let delta = &f * m.at(i, c);
                    *m.at_mut(r, c) -= delta;
                }
                for c in 0..rhs.cols {
                    let delta = &f * rhs.at(i, c);
                    *rhs.at_mut(r, c) -= delta;
                }
            }
        }
        for i in 0..n {
            let pivot = m.at(i, i).clone();
            for c in 0..rhs.cols {
                let v = rhs.at(i, c) / &pivot;
                *rhs.at_mut(i, c) = v;
            }
        }
        Ok(rhs)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.solve(&Matrix::identity(self.rows))
    }

    /// Exact LDLᵀ of a symmetric matrix: returns (L unit lower triangular,
    /// diag pivots) or `None` when a zero pivot occurs before completion.
    pub fn ldlt(&self) -> Option<(Matrix, Vec<Rat>)> {
        assert!(self.is_symmetric());
        let n = self.rows;
        let mut l = Matrix::identity(n);
        let mut d = vec![Rat::zero(); n];
        for j in 0..n {
            let mut dj = self.at(j, j).clone();
            for k in 0..j {
                dj -= l.at(j, k) * l.at(j, k) * &d[k];
            }
            if dj.is_zero() {
                return None;
            }
            d[j] = dj;
            for i in j + 1..n {
                let mut v = self.at(i, j).clone();
                for k in 0..j {
                    v -= l.at(i, k) * l.at(j, k) * &d[k];
                }
                *l.at_mut(i, j) = v / &d[j];
            }
        }
        Some((l, d))
    }

    /// Certified positive definiteness: symmetric and all LDLᵀ pivots > 0.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        match self.ldlt() {
            Some((_, d)) => d.iter().all(Rat::is_positive),
            None => false,
        }
    }

    pub fn to_f64_grid(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| to_f64(self.at(r, c))).collect())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }
}
