//! The Schur module 𝕊^λ(ℚⁿ): straightening of tableaux of vectors into the
//! semistandard basis, the bideterminant polynomial realization φ, the apolar
//! scalar product, and representation matrices of π_λ.
//!
//! Straightening is the classical rewriting: expand multilinearly, sort
//! columns with sign (alternating), then repeatedly apply the column exchange
//! relation at the leftmost, lowest violation. The exchange fixes the bottom
//! j cells of the right column (j = violating row) and sums over all order
//! preserving swaps with j-subsets of the left column. Each rewrite strictly
//! decreases the column word read top-to-bottom, left-to-right, in
//! lexicographic order, which bounds the loop.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::matrix::Matrix;
use crate::partitions::{enumerate_ssyt, Partition, SemistandardTableau};
use crate::rat::{factorial, fmt_rat, Rat};
use crate::{Error, Result};

/// Element of 𝕊^λ(ℚⁿ) as a sparse exact vector over the SSYT basis.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurVector {
    shape: Partition,
    coords: BTreeMap<SemistandardTableau, Rat>,
}

impl SchurVector {
    pub fn zero(shape: Partition) -> Self {
        SchurVector { shape, coords: BTreeMap::new() }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn coords(&self) -> &BTreeMap<SemistandardTableau, Rat> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_term(&mut self, tableau: SemistandardTableau, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coords.entry(tableau) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Rat) -> SchurVector {
        if s.is_zero() {
            return SchurVector::zero(self.shape.clone());
        }
        let coords = self.coords.iter().map(|(t, c)| (t.clone(), c * s)).collect();
        SchurVector { shape: self.shape.clone(), coords }
    }
}

impl Serialize for SchurVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coords.len()))?;
        for (t, c) in &self.coords {
            map.serialize_entry(&t.to_string(), &fmt_rat(c))?;
        }
        map.end()
    }
}

/// A tableau of shape λ with a vector of ℚⁿ in every cell — the
/// pre-projection element of E^{×λ}. Column-major, bottom-up like tableaux.
#[derive(Clone, Debug)]
pub struct VectorTableau {
    shape: Partition,
    cells: Vec<Vec<Vec<Rat>>>,
    n: usize,
}

impl VectorTableau {
    pub fn new(shape: Partition, cells: Vec<Vec<Vec<Rat>>>, n: usize) -> Result<Self> {
        let heights = shape.column_heights();
        if cells.len() != heights.len() || cells.iter().zip(&heights).any(|(c, &h)| c.len() != h) {
            return Err(Error::ShapeMismatch(format!("cells do not match shape {shape}")));
        }
        if cells.iter().flatten().any(|v| v.len() != n) {
            return Err(Error::ShapeMismatch("cell vector with wrong dimension".into()));
        }
        Ok(VectorTableau { shape, cells, n })
    }

    /// The basis tableau e_T as a vector tableau.
    pub fn from_tableau(t: &SemistandardTableau, n: usize) -> Self {
        let cells = t
            .columns()
            .iter()
            .map(|col| col.iter().map(|&e| basis_vector(n, e as usize - 1)).collect())
            .collect();
        VectorTableau { shape: t.shape().clone(), cells, n }
    }

    /// The flag tableau of x₁,…,x_t: cell (ℓ, r) holds x_r.
    pub fn from_flag_columns(shape: &Partition, vectors: &[Vec<Rat>], n: usize) -> Result<Self> {
        if vectors.len() < shape.height() {
            return Err(Error::ShapeMismatch(format!(
                "flag needs {} vectors, got {}",
                shape.height(),
                vectors.len()
            )));
        }
        let cells = shape
            .column_heights()
            .iter()
            .map(|&h| (0..h).map(|r| vectors[r].clone()).collect())
            .collect();
        VectorTableau::new(shape.clone(), cells, n)
    }

    /// Applies g to every cell (the action π_λ on decomposed vectors).
    pub fn apply(&self, g: &Matrix) -> VectorTableau {
        let cells = self
            .cells
            .iter()
            .map(|col| col.iter().map(|v| mat_vec(g, v)).collect())
            .collect();
        VectorTableau { shape: self.shape.clone(), cells, n: self.n }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

fn basis_vector(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn mat_vec(g: &Matrix, v: &[Rat]) -> Vec<Rat> {
    (0..g.rows())
        .map(|r| (0..g.cols()).map(|c| g.at(r, c) * &v[c]).sum())
        .collect()
}

// ---------------------------------------------------------------------------
// Straightening
// ---------------------------------------------------------------------------

/// Columns of a labeled tableau, each strictly increasing; not necessarily
/// row-standard.
type Columns = Vec<Vec<u32>>;

/// Straightens a tableau of vectors into SSYT coordinates: multilinear
/// expansion, column sorting with sign, then the exchange relation until only
/// semistandard labels remain.
pub fn straighten(vt: &VectorTableau) -> SchurVector {
    let n = vt.n;
    let mut work: BTreeMap<Columns, Rat> = BTreeMap::new();

    // multilinear expansion into labeled tableaux
    let flat_cells: Vec<&Vec<Rat>> = vt.cells.iter().flatten().collect();
    let heights: Vec<usize> = vt.cells.iter().map(Vec::len).collect();
    let mut labels = vec![0u32; flat_cells.len()];
    expand(&flat_cells, 0, Rat::one(), &mut labels, &mut |labels, coeff| {
        let mut cols: Columns = Vec::with_capacity(heights.len());
        let mut idx = 0;
        for &h in &heights {
            cols.push(labels[idx..idx + h].to_vec());
            idx += h;
        }
        if let Some((sorted, sign)) = sort_columns(cols) {
            add_to(&mut work, sorted, coeff * sign);
        }
    });

    // exchange relation until semistandard
    loop {
        let Some((key, coeff)) = work.iter().find(|(k, _)| find_violation(k).is_some()).map(
            |(k, c)| (k.clone(), c.clone()),
        ) else {
            break;
        };
        work.remove(&key);
        let (l, j) = find_violation(&key).unwrap();
        let left = &key[l];
        let right = &key[l + 1];
        let moved: Vec<u32> = right[..j].to_vec();
        for subset in (0..left.len()).combinations(j) {
            let mut new_left = left.clone();
            let mut new_right = right.clone();
            for (slot, &pos) in subset.iter().enumerate() {
                new_left[pos] = moved[slot];
                new_right[slot] = left[pos];
            }
            let mut cols = key.clone();
            cols[l] = new_left;
            cols[l + 1] = new_right;
            if let Some((sorted, sign)) = sort_columns(cols) {
                add_to(&mut work, sorted, &coeff * sign);
            }
        }
    }

    let mut out = SchurVector::zero(vt.shape.clone());
    for (cols, coeff) in work {
        let tableau = SemistandardTableau::new(vt.shape.clone(), cols, n)
            .expect("straightening produced a non-semistandard tableau");
        out.add_term(tableau, coeff);
    }
    out
}

fn expand(
    cells: &[&Vec<Rat>],
    idx: usize,
    coeff: Rat,
    labels: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32], Rat),
) {
    if idx == cells.len() {
        emit(labels, coeff);
        return;
    }
    for (i, c) in cells[idx].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        labels[idx] = i as u32 + 1;
        expand(cells, idx + 1, &coeff * c, labels, emit);
    }
}

/// Sorts every column ascending, tracking the permutation sign; None when a
/// column has a repeated entry (alternating relation kills it).
fn sort_columns(mut cols: Columns) -> Option<(Columns, Rat)> {
    let mut sign = 1i32;
    for col in cols.iter_mut() {
        // insertion sort, counting swaps
        for i in 1..col.len() {
            let mut k = i;
            while k > 0 && col[k - 1] > col[k] {
                col.swap(k - 1, k);
                sign = -sign;
                k -= 1;
            }
        }
        if col.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
    }
    Some((cols, Rat::from_integer(sign.into())))
}

fn add_to(map: &mut BTreeMap<Columns, Rat>, key: Columns, coeff: Rat) {
    if coeff.is_zero() {
        return;
    }
    let slot = map.entry(key.clone()).or_insert_with(Rat::zero);
    *slot += coeff;
    if slot.is_zero() {
        map.remove(&key);
    }
}

/// Leftmost column pair with a row violation, smallest row first.
/// Returns (left column index, number of violating row, 1-based).
fn find_violation(cols: &Columns) -> Option<(usize, usize)> {
    for l in 0..cols.len().saturating_sub(1) {
        let h = cols[l + 1].len();
        for j in 0..h {
            if cols[l][j] > cols[l + 1][j] {
                return Some((l, j + 1));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Polynomial realization
// ---------------------------------------------------------------------------

/// Sparse polynomial in the t×n variable grid Z = (z_{r,i}). Exponents are
/// stored densely per monomial (grids here never exceed a few dozen cells).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolynomialZ {
    t_rows: usize,
    n: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl PolynomialZ {
    pub fn zero(t_rows: usize, n: usize) -> Self {
        PolynomialZ { t_rows, n, terms: BTreeMap::new() }
    }

    pub fn constant(t_rows: usize, n: usize, c: Rat) -> Self {
        let mut p = PolynomialZ::zero(t_rows, n);
        if !c.is_zero() {
            p.terms.insert(vec![0; t_rows * n], c);
        }
        p
    }

    pub fn grid(&self) -> (usize, usize) {
        (self.t_rows, self.n)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn var_index(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.t_rows && col < self.n);
        row * self.n + col
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(Rat::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &PolynomialZ) -> PolynomialZ {
        assert_eq!(self.grid(), other.grid());
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolynomialZ) -> PolynomialZ {
        assert_eq!(self.grid(), other.grid());
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &PolynomialZ) -> PolynomialZ {
        assert_eq!(self.grid(), other.grid());
        let mut out = PolynomialZ::zero(self.t_rows, self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> PolynomialZ {
        let mut out = PolynomialZ::zero(self.t_rows, self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    /// det of the matrix z_{r, labels(c)}: the bideterminant of one column with
    /// basis labels (1-based). Signed permutation expansion.
    pub fn column_determinant(t_rows: usize, n: usize, labels: &[u32]) -> PolynomialZ {
        let d = labels.len();
        let mut out = PolynomialZ::zero(t_rows, n);
        for perm in (0..d).permutations(d) {
            let mut exps = vec![0u32; t_rows * n];
            for (r, &p) in perm.iter().enumerate() {
                exps[r * n + (labels[p] as usize - 1)] += 1;
            }
            out.add_term(exps, Rat::from_integer(permutation_sign(&perm).into()));
        }
        out
    }

    /// Right substitution Z ↦ Z·g, the polynomial side of π_λ(g).
    pub fn substitute_right(&self, g: &Matrix) -> PolynomialZ {
        assert_eq!(g.rows(), self.n);
        assert_eq!(g.cols(), self.n);
        // z_{r,i} ↦ Σ_k z_{r,k} g_{k,i}
        let mut out = PolynomialZ::zero(self.t_rows, self.n);
        for (exps, coeff) in &self.terms {
            let mut acc = PolynomialZ::constant(self.t_rows, self.n, coeff.clone());
            for (var, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (r, i) = (var / self.n, var % self.n);
                let mut lin = PolynomialZ::zero(self.t_rows, self.n);
                for k in 0..self.n {
                    if g.at(k, i).is_zero() {
                        continue;
                    }
                    let mut exp1 = vec![0u32; self.t_rows * self.n];
                    exp1[self.var_index(r, k)] = 1;
                    lin.add_term(exp1, g.at(k, i).clone());
                }
                for _ in 0..e {
                    acc = acc.mul(&lin);
                }
            }
            out = out.add(&acc);
        }
        out
    }
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// φ_T for a basis tableau: the product over columns of the bideterminants.
pub fn phi_tableau(t: &SemistandardTableau, n: usize) -> PolynomialZ {
    let t_rows = t.shape().height();
    let mut out = PolynomialZ::constant(t_rows, n, Rat::one());
    for col in t.columns() {
        out = out.mul(&PolynomialZ::column_determinant(t_rows, n, col));
    }
    out
}

/// φ on a tableau of vectors: ∏_ℓ det(Z[1..λ*_ℓ] · M_ℓ) where M_ℓ stacks the
/// cell vectors of column ℓ. Expanded by Cauchy–Binet over basis labels.
pub fn phi_expand(vt: &VectorTableau) -> PolynomialZ {
    let t_rows = vt.shape.height();
    let n = vt.n;
    let mut out = PolynomialZ::constant(t_rows, n, Rat::one());
    for col in &vt.cells {
        let d = col.len();
        let m = Matrix::from_fn(n, d, |r, c| col[c][r].clone());
        let mut col_poly = PolynomialZ::zero(t_rows, n);
        let col_idx: Vec<usize> = (0..d).collect();
        for rows in (0..n).combinations(d) {
            let minor = m.submatrix_det(&rows, &col_idx);
            if minor.is_zero() {
                continue;
            }
            let labels: Vec<u32> = rows.iter().map(|&r| r as u32 + 1).collect();
            let vdet = PolynomialZ::column_determinant(t_rows, n, &labels);
            col_poly = col_poly.add(&vdet.scale(&minor));
        }
        out = out.mul(&col_poly);
    }
    out
}

/// Apolar (Bombieri-type) scalar product: distinct monomials are orthogonal
/// and ⟨z^α, z^α⟩ = α!. Equals evaluating P(∂)Q at zero.
pub fn apolar_product(p: &PolynomialZ, q: &PolynomialZ) -> Rat {
    assert_eq!(p.grid(), q.grid(), "apolar product requires the same variable grid");
    let mut acc = Rat::zero();
    for (exps, cp) in &p.terms {
        if let Some(cq) = q.terms.get(exps) {
            let weight: Rat = Rat::from_integer(
                exps.iter().map(|&e| factorial(e as u64)).product(),
            );
            acc += weight * cp * cq;
        }
    }
    acc
}

/// Matrix of π_λ(g) in the SSYT basis (column T = straighten of g applied
/// cellwise to e_T). Errors on singular g.
pub fn representation_matrix(g: &Matrix, shape: &Partition) -> Result<Matrix> {
    let n = g.rows();
    assert_eq!(g.cols(), n);
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    let basis = enumerate_ssyt(shape, n)?;
    let index: BTreeMap<&SemistandardTableau, usize> =
        basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let dim = basis.len();
    let mut out = Matrix::zero(dim, dim);
    for (col, t) in basis.iter().enumerate() {
        let vt = VectorTableau::from_tableau(t, n).apply(g);
        let sv = straighten(&vt);
        for (tab, coeff) in sv.coords() {
            let row = index[tab];
            *out.at_mut(row, col) = coeff.clone();
        }
    }
    Ok(out)
}

/// ⟨X, X⟩ normalized by ⟨e_{U(λ)}, e_{U(λ)}⟩: the squared archimedean height
/// of a Schur vector relative to the highest weight normalization.
pub fn apolar_square_normalized(x: &SchurVector, n: usize) -> Rat {
    let shape = x.shape();
    let t_rows = shape.height();
    let mut poly = PolynomialZ::zero(t_rows, n);
    for (t, c) in x.coords() {
        poly = poly.add(&phi_tableau(t, n).scale(c));
    }
    let u = crate::partitions::highest_weight_tableau(shape);
    let phi_u = phi_tableau(&u, n);
    apolar_product(&poly, &poly) / apolar_product(&phi_u, &phi_u)
}

impl fmt::Display for PolynomialZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", fmt_rat(c))?;
            for (var, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (r, i) = (var / self.n + 1, var % self.n + 1);
                write!(f, "·z{r}{i}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
