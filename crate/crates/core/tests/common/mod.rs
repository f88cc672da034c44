//! Shared test scaffolding: the polynomial linear-system oracle for
//! straightening, deterministic random generators, and the f64 spectral
//! helpers used by the finite-difference gradient checks.
#![allow(dead_code)] // each test binary uses its own slice of this module
//!
//! The oracle here is the independent route the implementation is checked
//! against: it never calls `straighten`, only the bideterminant expansion and
//! exact linear algebra.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hermite_core::matrix::Matrix;
use hermite_core::partitions::{enumerate_ssyt, Partition, SemistandardTableau};
use hermite_core::rat::{int, Rat};
use hermite_core::schur::{phi_expand, phi_tableau, PolynomialZ, VectorTableau};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Straightening oracle: expand φ(vt), solve φ(vt) = Σ_T c_T·φ_T against the
/// basis polynomials by exact elimination, and verify the residual is zero.
pub fn phi_oracle_coords(vt: &VectorTableau) -> BTreeMap<SemistandardTableau, Rat> {
    let n = vt.dim();
    let shape = vt.shape().clone();
    let target = phi_expand(vt);
    let basis = enumerate_ssyt(&shape, n).expect("shape fits");
    let polys: Vec<PolynomialZ> = basis.iter().map(|t| phi_tableau(t, n)).collect();

    let mut monomials: BTreeSet<Vec<u32>> = target.terms().keys().cloned().collect();
    for p in &polys {
        monomials.extend(p.terms().keys().cloned());
    }
    let monomials: Vec<Vec<u32>> = monomials.into_iter().collect();

    let a = Matrix::from_fn(monomials.len(), polys.len(), |r, c| {
        polys[c].terms().get(&monomials[r]).cloned().unwrap_or_else(Rat::zero)
    });
    let b: Vec<Rat> = monomials
        .iter()
        .map(|m| target.terms().get(m).cloned().unwrap_or_else(Rat::zero))
        .collect();

    let coords = solve_overdetermined(&a, &b).expect("φ_T are a basis; system is consistent");
    let mut out = BTreeMap::new();
    for (t, c) in basis.into_iter().zip(coords) {
        if !c.is_zero() {
            out.insert(t, c);
        }
    }
    out
}

/// Solves A·x = b exactly for A with full column rank and a consistent b
/// (greedy pivot row selection, residual verified on every row).
pub fn solve_overdetermined(a: &Matrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.rows();
    let cols = a.cols();
    let mut work = a.clone();
    let mut rhs = b.to_vec();
    let mut pivot_row_of: Vec<usize> = Vec::with_capacity(cols);
    let mut used = vec![false; rows];
    for c in 0..cols {
        let r0 = (0..rows).find(|&r| !used[r] && !work.at(r, c).is_zero())?;
        used[r0] = true;
        pivot_row_of.push(r0);
        let pivot = work.at(r0, c).clone();
        for r in 0..rows {
            if r == r0 || work.at(r, c).is_zero() {
                continue;
            }
            let f = work.at(r, c) / &pivot;
            for cc in 0..cols {
                let delta = &f * work.at(r0, cc);
                *work.at_mut(r, cc) -= delta;
            }
            let delta = &f * &rhs[r0];
            rhs[r] -= delta;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (c, &r0) in pivot_row_of.iter().enumerate() {
        x[c] = &rhs[r0] / work.at(r0, c);
    }
    // verify: original system, every row
    for r in 0..rows {
        let mut acc = Rat::zero();
        for c in 0..cols {
            acc += a.at(r, c) * &x[c];
        }
        if acc != b[r] {
            return None;
        }
    }
    Some(x)
}

/// Random vector tableau with integer entries in [−3, 3].
pub fn random_vector_tableau(shape: &Partition, n: usize, rng: &mut ChaCha8Rng) -> VectorTableau {
    let cells = shape
        .column_heights()
        .iter()
        .map(|&h| {
            (0..h)
                .map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect())
                .collect()
        })
        .collect();
    VectorTableau::new(shape.clone(), cells, n).expect("shape-consistent cells")
}

/// Random invertible integer matrix with entries in [−2, 2].
pub fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-2..=2)));
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random positive definite integer Gram matrix A = BᵀB with small entries.
pub fn random_pd_gram(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let b = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-2..=2)));
        if b.det().is_zero() {
            continue;
        }
        let a = b.transpose().mul(&b);
        let bounded = (0..n).all(|i| (0..n).all(|j| a.at(i, j).numer().abs() <= 12.into()));
        if bounded {
            return a;
        }
    }
}

/// Random unimodular integer matrix (product of elementary shears).
pub fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = int(rng.gen_range(-2..=2i64));
        // row_i += c · row_j
        let mut shear = Matrix::identity(n);
        *shear.at_mut(i, j) = c;
        m = m.mul(&shear);
    }
    debug_assert!(m.det().numer().abs().is_one());
    m
}

// ---------------------------------------------------------------------------
// f64 spectral helpers (finite-difference checks only)
// ---------------------------------------------------------------------------

pub type F64Mat = Vec<Vec<f64>>;

pub fn fmat_mul(a: &F64Mat, b: &F64Mat) -> F64Mat {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for k in 0..b.len() {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..p {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn fmat_transpose(a: &F64Mat) -> F64Mat {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

/// Cyclic Jacobi eigendecomposition of a small symmetric matrix:
/// returns (eigenvalues, eigenvector columns).
pub fn jacobi_eigen(a: &F64Mat) -> (Vec<f64>, F64Mat) {
    let n = a.len();
    let mut m: F64Mat = a.clone();
    let mut v: F64Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-18 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| m[i][i]).collect();
    (values, v)
}

/// f(A) = Q·diag(f(λ))·Qᵀ for symmetric A.
pub fn symmetric_function(a: &F64Mat, f: impl Fn(f64) -> f64) -> F64Mat {
    let (values, q) = jacobi_eigen(a);
    let n = a.len();
    let mut mid = vec![vec![0.0; n]; n];
    for i in 0..n {
        mid[i][i] = f(values[i]);
    }
    fmat_mul(&fmat_mul(&q, &mid), &fmat_transpose(&q))
}

pub fn to_f64_mat(m: &Matrix) -> F64Mat {
    m.to_f64_grid()
}

/// f64 determinant by Gaussian elimination.
pub fn fdet(a: &F64Mat) -> f64 {
    let n = a.len();
    let mut m = a.clone();
    let mut det = 1.0;
    for i in 0..n {
        let mut p = i;
        for r in i + 1..n {
            if m[r][i].abs() > m[p][i].abs() {
                p = r;
            }
        }
        if m[p][i] == 0.0 {
            return 0.0;
        }
        if p != i {
            m.swap(i, p);
            det = -det;
        }
        det *= m[i][i];
        for r in i + 1..n {
            let f = m[r][i] / m[i][i];
            for c in i..n {
                m[r][c] -= f * m[i][c];
            }
        }
    }
    det
}

/// ln ∏_ℓ Δ_{λ*_ℓ}(XᵀAX) in f64 for the curve evaluations.
pub fn log_evaluate_f64(a: &F64Mat, shape: &Partition, x: &F64Mat) -> f64 {
    let xt = fmat_transpose(x);
    let gram = fmat_mul(&fmat_mul(&xt, a), x);
    let mut acc = 0.0;
    for h in shape.column_heights() {
        let block: F64Mat = (0..h).map(|i| (0..h).map(|j| gram[i][j]).collect()).collect();
        acc += fdet(&block).ln();
    }
    acc
}

/// All partitions of weight ≤ max_weight with at most max_parts parts.
pub fn partitions_up_to(max_weight: u32, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if !prefix.is_empty() {
            out.push(Partition::new(prefix.clone()).unwrap());
        }
        if remaining == 0 {
            return;
        }
        for next in (1..=max_part.min(remaining)).rev() {
            prefix.push(next);
            rec(remaining - next, next, prefix, out);
            prefix.pop();
        }
    }
    let mut prefix = Vec::new();
    rec(max_weight, max_weight, &mut prefix, &mut out);
    out.sort();
    out.dedup();
    out.retain(|p| p.height() <= max_parts);
    out
}
