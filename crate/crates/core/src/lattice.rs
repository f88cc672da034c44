//! Integer matrices and lattice plumbing: column Hermite normal form,
//! integer kernels, saturation, basis completion.
//!
//! Columns always denote lattice generators. The column HNF here is the
//! canonical echelon basis (pivots positive, entries left of a pivot reduced
//! into `[0, pivot)`), so an HNF matrix is a unique representative of its
//! column span and doubles as a dedup key.

use num::traits::Euclid;
use num::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::rat::{Int, Rat};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl std::fmt::Debug for IMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut m = IMat::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                *m.at_mut(r, c) = f(r, c);
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        IMat::from_fn(nr, nc, |r, c| Int::from(rows[r][c]))
    }

    pub fn from_columns(cols: &[Vec<Int>]) -> Self {
        let nc = cols.len();
        let nr = cols.first().map_or(0, Vec::len);
        IMat::from_fn(nr, nc, |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> IMat {
        IMat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn take_columns(&self, k: usize) -> IMat {
        IMat::from_fn(self.rows, k, |r, c| self.at(r, c).clone())
    }

    pub fn hcat(&self, other: &IMat) -> IMat {
        assert_eq!(self.rows, other.rows);
        IMat::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| Rat::from_integer(self.at(r, c).clone()))
    }

    /// Exact conversion from a rational matrix with integer entries.
    pub fn try_from_matrix(m: &Matrix) -> Result<IMat> {
        let mut out = IMat::zero(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.at(r, c);
                if !v.denom().is_one() {
                    return Err(Error::Invalid("non-integer entry".into()));
                }
                *out.at_mut(r, c) = v.numer().clone();
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.to_matrix().rank()
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
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

    fn swap_columns(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// col_j -= q * col_i
    fn col_axpy(&mut self, j: usize, q: &Int, i: usize) {
        for r in 0..self.rows {
            let delta = q * self.at(r, i);
            *self.at_mut(r, j) -= delta;
        }
    }

    fn negate_column(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, j).clone();
            *self.at_mut(r, j) = v;
        }
    }
}

/// Canonical column HNF of the lattice spanned by the columns. Zero columns
/// are dropped; the result has full column rank and uniquely represents the
/// span, with positive pivots and reduced entries left of each pivot.
pub fn hnf(input: &IMat) -> IMat {
    let mut m = input.clone();
    let n = m.rows;
    let mut fixed = 0; // number of pivot columns already in place
    for row in 0..n {
        // gcd-eliminate among the active columns at this row
        loop {
            let mut nz: Vec<usize> = (fixed..m.cols).filter(|&j| !m.at(row, j).is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&j| m.at(row, j).abs());
            let jmin = nz[0];
            for &j in &nz[1..] {
                let q = m.at(row, j) / m.at(row, jmin); // truncated division shrinks |entry|
                if !q.is_zero() {
                    m.col_axpy(j, &q, jmin);
                }
            }
        }
        let pivot_col = (fixed..m.cols).find(|&j| !m.at(row, j).is_zero());
        if let Some(j) = pivot_col {
            m.swap_columns(fixed, j);
            if m.at(row, fixed).is_negative() {
                m.negate_column(fixed);
            }
            // reduce entries of earlier columns in this pivot row into [0, pivot)
            let pivot = m.at(row, fixed).clone();
            for e in 0..fixed {
                let v = m.at(row, e).clone();
                let q = v.div_euclid(&pivot);
                if !q.is_zero() {
                    m.col_axpy(e, &q, fixed);
                }
            }
            fixed += 1;
        }
    }
    // keep pivot columns, in pivot-row order; reorder: pivots were placed left to right already
    m.take_columns(fixed)
}

/// Basis of the integer kernel {x ∈ ℤⁿ : M·x = 0} (always a saturated
/// sublattice), returned in canonical HNF.
pub fn zkernel(m: &IMat) -> IMat {
    let n = m.cols;
    let mut w = m.clone();
    let mut u = IMat::identity(n);
    let mut fixed = 0;
    for row in 0..w.rows {
        loop {
            let mut nz: Vec<usize> = (fixed..n).filter(|&j| !w.at(row, j).is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&j| w.at(row, j).abs());
            let jmin = nz[0];
            for &j in &nz[1..] {
                let q = w.at(row, j) / w.at(row, jmin);
                if !q.is_zero() {
                    w.col_axpy(j, &q, jmin);
                    u.col_axpy(j, &q, jmin);
                }
            }
        }
        if let Some(j) = (fixed..n).find(|&j| !w.at(row, j).is_zero()) {
            w.swap_columns(fixed, j);
            u.swap_columns(fixed, j);
            fixed += 1;
        }
    }
    let kernel = IMat::from_fn(n, n - fixed, |r, c| u.at(r, fixed + c).clone());
    hnf(&kernel)
}

/// Saturation of the column span: the canonical HNF basis of
/// span_ℚ(columns) ∩ ℤⁿ.
pub fn saturation(basis: &IMat) -> IMat {
    let ann = zkernel(&basis.transpose()); // n×(n−d): integer annihilator
    zkernel(&ann.transpose())
}

/// True when the column span is saturated, i.e. the gcd of the maximal minors
/// is 1 (all elementary divisors 1).
pub fn is_saturated(basis: &IMat) -> bool {
    use itertools::Itertools;
    let d = basis.cols;
    if d == 0 {
        return true;
    }
    let m = basis.to_matrix();
    let cols: Vec<usize> = (0..d).collect();
    let mut g = Int::zero();
    for rows in (0..basis.rows).combinations(d) {
        let minor = m.submatrix_det(&rows, &cols);
        g = num::integer::gcd(g, minor.numer().clone());
        if g.is_one() {
            return true;
        }
    }
    g.is_one()
}

/// Unimodular U with U·v = gcd(v)·e₁. For primitive v this clears it to e₁.
pub fn unimodular_clearing(v: &[Int]) -> IMat {
    let n = v.len();
    let mut u = IMat::identity(n);
    let mut w: Vec<Int> = v.to_vec();
    // fold each coordinate into position 0 with extended gcd row operations
    for i in 1..n {
        if w[i].is_zero() {
            continue;
        }
        let (g, s, t) = extended_gcd(&w[0], &w[i]);
        let (a, b) = (w[0].clone() / &g, w[i].clone() / &g);
        // rows 0 and i of U replaced by (s*row0 + t*rowi, -b*row0 + a*rowi): det 1
        for c in 0..n {
            let r0 = u.at(0, c).clone();
            let ri = u.at(i, c).clone();
            *u.at_mut(0, c) = &s * &r0 + &t * &ri;
            *u.at_mut(i, c) = -&b * &r0 + &a * &ri;
        }
        w[i] = Int::zero();
        w[0] = g;
    }
    if w[0].is_negative() {
        for c in 0..n {
            let v0 = -u.at(0, c).clone();
            *u.at_mut(0, c) = v0;
        }
    }
    u
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g ≥ 0.
pub fn extended_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Int::one(), Int::zero());
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of a unimodular integer matrix (errors if det ≠ ±1).
pub fn unimodular_inverse(u: &IMat) -> Result<IMat> {
    let inv = u.to_matrix().inverse()?;
    IMat::try_from_matrix(&inv).map_err(|_| Error::Invalid("matrix is not unimodular".into()))
}

/// Is span(sub) ⊆ span(sup)? Both full column rank; exact rational rank test.
pub fn span_contains(sup: &IMat, sub: &IMat) -> bool {
    let joint = sup.hcat(sub);
    joint.to_matrix().rank() == sup.cols
}

/// Rational coordinates of b in the columns of full-column-rank `basis`,
/// or None when b is outside the span.
pub fn coords_in_basis(basis: &IMat, b: &[Int]) -> Option<Vec<Rat>> {
    let m = basis.to_matrix();
    let d = basis.cols;
    // pick d independent rows via elimination on the transpose
    let mut pivot_rows = Vec::with_capacity(d);
    {
        let mut work = m.clone();
        let mut used = vec![false; basis.rows];
        for c in 0..d {
            let mut found = None;
            for r in 0..basis.rows {
                if !used[r] && !work.at(r, c).is_zero() {
                    found = Some(r);
                    break;
                }
            }
            let r0 = found?;
            used[r0] = true;
            pivot_rows.push(r0);
            let pivot = work.at(r0, c).clone();
            for r in 0..basis.rows {
                if r == r0 || work.at(r, c).is_zero() {
                    continue;
                }
                let f = work.at(r, c) / &pivot;
                for cc in 0..d {
                    let delta = &f * work.at(r0, cc);
                    *work.at_mut(r, cc) -= delta;
                }
            }
        }
    }
    let sq = Matrix::from_fn(d, d, |r, c| m.at(pivot_rows[r], c).clone());
    let rhs = Matrix::from_fn(d, 1, |r, _| Rat::from_integer(b[pivot_rows[r]].clone()));
    let x = sq.solve(&rhs).ok()?;
    // verify the remaining rows
    for r in 0..basis.rows {
        let mut acc = Rat::zero();
        for c in 0..d {
            acc += m.at(r, c) * x.at(c, 0);
        }
        if acc != Rat::from_integer(b[r].clone()) {
            return None;
        }
    }
    Some((0..d).map(|r| x.at(r, 0).clone()).collect())
}

/// Canonical representative of y + span_ℤ(prefix columns): entries at the
/// HNF pivot rows are reduced into [0, pivot).
pub fn reduce_mod_lattice(y: &[Int], prefix: &IMat) -> Vec<Int> {
    let h = hnf(prefix);
    let mut out = y.to_vec();
    let mut row = 0;
    for c in 0..h.cols {
        while row < h.rows && h.at(row, c).is_zero() {
            row += 1;
        }
        if row >= h.rows {
            break;
        }
        let pivot = h.at(row, c).clone();
        let q = out[row].div_euclid(&pivot);
        if !q.is_zero() {
            for r in 0..h.rows {
                let delta = &q * h.at(r, c);
                out[r] -= delta;
            }
        }
        row += 1;
    }
    out
}

/// Extends the columns of `inner` (a basis of a saturated sublattice of the
/// saturated lattice spanned by `outer`) to a basis of the outer lattice.
/// Returns the appended columns, reduced to canonical representatives.
pub fn complete_basis(inner: &IMat, outer: &IMat) -> Result<Vec<Vec<Int>>> {
    let d_in = inner.cols;
    let d_out = outer.cols;
    // coordinates of inner columns in the outer basis: integer since outer is
    // a basis of the ambient saturated lattice
    let mut coord = IMat::zero(d_out, d_in);
    for c in 0..d_in {
        let col = inner.column(c);
        let x = coords_in_basis(outer, &col)
            .ok_or_else(|| Error::Invalid("inner basis outside outer span".into()))?;
        for (r, v) in x.iter().enumerate() {
            if !v.denom().is_one() {
                return Err(Error::Invalid("inner lattice not contained in outer lattice".into()));
            }
            *coord.at_mut(r, c) = v.numer().clone();
        }
    }
    // row-reduce coord to [R; 0] by unimodular row ops U; saturation of the
    // inner lattice inside the outer one forces |det R| = 1, so the last
    // d_out − d_in columns of U⁻¹ complete the basis
    let (u, rank) = row_echelon_unimodular(&coord);
    if rank != d_in {
        return Err(Error::Invalid("inner basis not full rank".into()));
    }
    let uinv = unimodular_inverse(&u)?;
    let mut completions = Vec::with_capacity(d_out - d_in);
    let mut current = inner.clone();
    for c in d_in..d_out {
        let coords = uinv.column(c);
        let mut vec_n = vec![Int::zero(); outer.rows()];
        for (j, coef) in coords.iter().enumerate() {
            for r in 0..outer.rows() {
                vec_n[r] += coef * outer.at(r, j);
            }
        }
        let mut reduced = reduce_mod_lattice(&vec_n, &current);
        // completion columns sit outside span(current), so reduced ≠ 0; flip
        // to the coset of −y when the first nonzero entry comes out negative
        let first = reduced.iter().find(|v| !v.is_zero()).expect("completion column in span");
        if first.is_negative() {
            let neg: Vec<Int> = reduced.iter().map(|v| -v.clone()).collect();
            reduced = reduce_mod_lattice(&neg, &current);
        }
        current = current.hcat(&IMat::from_columns(&[reduced.clone()]));
        completions.push(reduced);
    }
    Ok(completions)
}

/// Unimodular U with U·M in row echelon form; returns (U, rank).
fn row_echelon_unimodular(m: &IMat) -> (IMat, usize) {
    // operate as column ops on the transpose
    let mt = m.transpose();
    let rows = m.rows;
    let mut w = mt.clone(); // cols of w = rows of m
    let mut u = IMat::identity(rows);
    let mut fixed = 0;
    for row in 0..w.rows {
        loop {
            let mut nz: Vec<usize> = (fixed..rows).filter(|&j| !w.at(row, j).is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&j| w.at(row, j).abs());
            let jmin = nz[0];
            for &j in &nz[1..] {
                let q = w.at(row, j) / w.at(row, jmin);
                if !q.is_zero() {
                    w.col_axpy(j, &q, jmin);
                    u.col_axpy(j, &q, jmin);
                }
            }
        }
        if let Some(j) = (fixed..rows).find(|&j| !w.at(row, j).is_zero()) {
            w.swap_columns(fixed, j);
            u.swap_columns(fixed, j);
            fixed += 1;
        }
    }
    // columns ops on mᵀ with transform u mean: (m·? ) — we applied M^T·U' = W,
    // i.e. U'^T · M = W^T which is row echelon with U = U'^T unimodular.
    (u.transpose(), fixed)
}
