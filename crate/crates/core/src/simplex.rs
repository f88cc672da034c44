//! Exact rational linear programming: a dense two-phase simplex with Bland's
//! rule, sized for the eutaxy feasibility systems (tens of variables). No
//! floating point anywhere, so feasibility verdicts are certificates.

use num::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

/// maximize cᵀx subject to A·x = b, x ≥ 0.
pub fn maximize(c: &[Rat], a: &Matrix, b: &[Rat]) -> LpOutcome {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(c.len(), n);
    assert_eq!(b.len(), m);

    // tableau rows: [B⁻¹A | B⁻¹b], with artificial columns n..n+m
    let total = n + m;
    let mut t = vec![vec![Rat::zero(); total + 1]; m];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            t[i][j] = if flip { -a.at(i, j).clone() } else { a.at(i, j).clone() };
        }
        t[i][n + i] = Rat::one();
        t[i][total] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    let mut basis: Vec<usize> = (n..total).collect();

    // phase 1: maximize −Σ artificials
    let mut c1 = vec![Rat::zero(); total];
    for j in n..total {
        c1[j] = -Rat::one();
    }
    run_simplex(&mut t, &mut basis, &c1, total);
    let phase1_value: Rat = basis
        .iter()
        .enumerate()
        .map(|(i, &j)| if j >= n { -t[i][total].clone() } else { Rat::zero() })
        .sum();
    if phase1_value.is_negative() {
        return LpOutcome::Infeasible;
    }

    // drive remaining artificial variables out of the basis or drop their rows
    let mut drop_rows = Vec::new();
    for i in 0..m {
        if basis[i] >= n {
            match (0..n).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut basis, i, j, total),
                None => drop_rows.push(i),
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        t.remove(i);
        basis.remove(i);
    }

    // phase 2 on the real objective, artificial columns frozen at zero
    let mut c2 = c.to_vec();
    c2.extend(std::iter::repeat(Rat::zero()).take(m));
    if !run_simplex_restricted(&mut t, &mut basis, &c2, total, n) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Rat::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][total].clone();
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpOutcome::Optimal { x, value }
}

fn reduced_cost(t: &[Vec<Rat>], basis: &[usize], c: &[Rat], j: usize) -> Rat {
    let mut r = c[j].clone();
    for (i, &bi) in basis.iter().enumerate() {
        if !c[bi].is_zero() && !t[i][j].is_zero() {
            r -= &c[bi] * &t[i][j];
        }
    }
    r
}

fn run_simplex(t: &mut Vec<Vec<Rat>>, basis: &mut Vec<usize>, c: &[Rat], total: usize) {
    loop {
        // Bland: smallest improving index
        let enter = (0..total).find(|&j| reduced_cost(t, basis, c, j).is_positive());
        let Some(j) = enter else { return };
        let Some(i) = ratio_test(t, basis, j, total) else { return };
        pivot(t, basis, i, j, total);
    }
}

/// Phase 2: entering columns restricted to the first `real` variables.
/// Returns false on unboundedness.
fn run_simplex_restricted(
    t: &mut Vec<Vec<Rat>>,
    basis: &mut Vec<usize>,
    c: &[Rat],
    total: usize,
    real: usize,
) -> bool {
    loop {
        let enter = (0..real).find(|&j| reduced_cost(t, basis, c, j).is_positive());
        let Some(j) = enter else { return true };
        let Some(i) = ratio_test(t, basis, j, total) else { return false };
        pivot(t, basis, i, j, total);
    }
}

fn ratio_test(t: &[Vec<Rat>], basis: &[usize], j: usize, total: usize) -> Option<usize> {
    let mut best: Option<(Rat, usize, usize)> = None; // (ratio, basis var, row)
    for i in 0..t.len() {
        if t[i][j].is_positive() {
            let ratio = &t[i][total] / &t[i][j];
            let key = (ratio, basis[i], i);
            if best.as_ref().map_or(true, |b| (key.0.clone(), key.1) < (b.0.clone(), b.1)) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, _, i)| i)
}

fn pivot(t: &mut [Vec<Rat>], basis: &mut [usize], i: usize, j: usize, total: usize) {
    let p = t[i][j].clone();
    for v in t[i].iter_mut() {
        *v /= &p;
    }
    for r in 0..t.len() {
        if r == i || t[r][j].is_zero() {
            continue;
        }
        let f = t[r][j].clone();
        for col in 0..=total {
            let delta = &f * &t[i][col];
            t[r][col] -= delta;
        }
    }
    basis[i] = j;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn feasible_optimum() {
        // maximize x₀ + x₁ s.t. x₀ + x₁ + x₂ = 1 → 1
        let a = Matrix::from_i64_rows(&[&[1, 1, 1]]);
        let out = maximize(&[int(1), int(1), int(0)], &a, &[int(1)]);
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // x₀ = −1 with x₀ ≥ 0
        let a = Matrix::from_i64_rows(&[&[1]]);
        assert_eq!(maximize(&[int(0)], &a, &[int(-1)]), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        // maximize x₀ s.t. x₀ − x₁ = 0
        let a = Matrix::from_i64_rows(&[&[1, -1]]);
        assert_eq!(maximize(&[int(1), int(0)], &a, &[int(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn exact_fractions() {
        // maximize x₀ s.t. 2x₀ + 3x₁ = 1, x₁ free slack → x₀ = 1/2
        let a = Matrix::from_i64_rows(&[&[2, 3]]);
        match maximize(&[int(1), int(0)], &a, &[int(1)]) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rat(1, 2));
                assert_eq!(x[0], rat(1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_dropped() {
        // duplicated constraint keeps a zero-artificial row around
        let a = Matrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        match maximize(&[int(1), int(0)], &a, &[int(2), int(2)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
