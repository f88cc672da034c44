//! Differential-geometry properties: the gradient against central finite
//! differences along determinant-preserving curves, gradient-norm constancy,
//! eutaxy certificate validity, and unimodular equivariance of the verdicts.

mod common;

use num::Zero;
use rand::Rng;

use common::{
    fmat_mul, log_evaluate_f64, random_pd_gram, random_unimodular, rng, symmetric_function,
    to_f64_mat, F64Mat,
};
use hermite_core::forms::{FlagVector, GramForm, HumbertForm};
use hermite_core::lattice::IMat;
use hermite_core::matrix::Matrix;
use hermite_core::partitions::Partition;
use hermite_core::rat::{int, to_f64, Rat};
use hermite_core::voronoi::{
    gradient, gradient_norm_sq, gradient_norm_sq_closed_form, is_eutactic, is_extreme,
    is_perfect, minimal_set,
};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// Random symmetric integer matrix projected onto the tangent space at A:
/// X ← Y − (tr(A⁻¹Y)/n)·A, so tr(A⁻¹X) = 0 exactly.
fn random_tangent(a: &Matrix, rng: &mut rand_chacha::ChaCha8Rng) -> Matrix {
    let n = a.rows();
    let mut y = Matrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let v = int(rng.gen_range(-3..=3));
            *y.at_mut(i, j) = v.clone();
            *y.at_mut(j, i) = v;
        }
    }
    let trace = a.inverse().unwrap().mul(&y).trace();
    let shift = Rat::new(trace.numer().clone(), (n as i64) * trace.denom());
    y.sub(&a.scale(&shift))
}

/// ⟨G, X⟩_A = Σ_j tr(A_j⁻¹ G_j A_j⁻¹ X_j).
fn riemannian_pairing(a: &Matrix, g: &Matrix, x: &Matrix) -> Rat {
    let inv = a.inverse().unwrap();
    inv.mul(g).mul(&inv).mul(x).trace()
}

/// Verifies dℓ_V(X) against the central finite difference of ℓ_V along the
/// determinant-preserving curve c(h) = A^{1/2}·exp(h·A^{−1/2}XA^{−1/2})·A^{1/2}.
fn finite_difference_check(
    a: &Matrix,
    shape: &Partition,
    flag: &FlagVector,
    tangent: &Matrix,
) -> (f64, f64) {
    let form = HumbertForm::rational(GramForm::new(a.clone()).unwrap());
    let grad = gradient(&form, flag).unwrap();
    let exact = to_f64(&riemannian_pairing(a, &grad.components[0], tangent));

    let af = to_f64_mat(a);
    let sqrt_a = symmetric_function(&af, f64::sqrt);
    let inv_sqrt_a = symmetric_function(&af, |v| 1.0 / v.sqrt());
    let xf = to_f64_mat(tangent);
    let mid = fmat_mul(&fmat_mul(&inv_sqrt_a, &xf), &inv_sqrt_a);
    let flag_f = to_f64_mat(&flag.matrix().to_matrix());

    let h = 1e-5;
    let curve = |s: f64| -> F64Mat {
        let e = symmetric_function(&mid, |v| (s * v).exp());
        fmat_mul(&fmat_mul(&sqrt_a, &e), &sqrt_a)
    };
    let plus = log_evaluate_f64(&curve(h), shape, &flag_f);
    let minus = log_evaluate_f64(&curve(-h), shape, &flag_f);
    let fd = (plus - minus) / (2.0 * h);
    (exact, fd)
}

#[test]
fn gradient_matches_finite_differences() {
    let mut rng = rng(2024);
    let shapes = [p(&[1]), p(&[2, 1]), p(&[1, 1])];
    let mut checked = 0;
    while checked < 20 {
        let a = random_pd_gram(3, &mut rng);
        let shape = &shapes[checked % shapes.len()];
        let mat = loop {
            let m = IMat::from_fn(3, shape.height(), |_, _| rng.gen_range(-2..=2i64).into());
            if m.rank() == shape.height() {
                break m;
            }
        };
        let flag = FlagVector::new(shape.clone(), mat).unwrap();
        let tangent = random_tangent(&a, &mut rng);
        if tangent.mul(&tangent).trace().is_zero() {
            continue;
        }
        let (exact, fd) = finite_difference_check(&a, shape, &flag, &tangent);
        let scale = exact.abs().max(1.0);
        assert!(
            (exact - fd).abs() / scale <= 1e-6,
            "gradient/fd mismatch: exact {exact}, fd {fd}, shape {shape}"
        );
        checked += 1;
    }
}

#[test]
fn curve_preserves_determinant() {
    let mut rng = rng(77);
    let a = random_pd_gram(3, &mut rng);
    let tangent = random_tangent(&a, &mut rng);
    let af = to_f64_mat(&a);
    let sqrt_a = symmetric_function(&af, f64::sqrt);
    let inv_sqrt_a = symmetric_function(&af, |v| 1.0 / v.sqrt());
    let mid = fmat_mul(&fmat_mul(&inv_sqrt_a, &to_f64_mat(&tangent)), &inv_sqrt_a);
    let e = symmetric_function(&mid, |v| (0.37 * v).exp());
    let c = fmat_mul(&fmat_mul(&sqrt_a, &e), &sqrt_a);
    let det_a = common::fdet(&af);
    let det_c = common::fdet(&c);
    assert!((det_a - det_c).abs() / det_a.abs() < 1e-9);
}

#[test]
fn gradient_norm_constant_on_minimal_sets() {
    for (name, shape) in [("A2", p(&[1])), ("A3", p(&[2, 1])), ("D4", p(&[2, 1, 1]))] {
        let gram = hermite_core::catalog::lookup(name).unwrap().gram;
        let n = gram.dim();
        let form = HumbertForm::rational(gram);
        let set = minimal_set(&form, &shape).unwrap();
        let closed = gradient_norm_sq_closed_form(&shape, n, 1, 0);
        for entry in &set.entries {
            let norm = gradient_norm_sq(&form, &entry.flag).unwrap();
            assert_eq!(norm, closed, "{name} λ=({shape})");
        }
    }
}

#[test]
fn eutaxy_certificate_resubstitutes() {
    let gram = hermite_core::catalog::lookup("A3").unwrap().gram;
    let form = HumbertForm::rational(gram.clone());
    let shape = p(&[2, 1]);
    let set = minimal_set(&form, &shape).unwrap();
    let report = is_eutactic(&form, &set);
    assert!(report.eutactic);
    let rho = report.rho.unwrap();
    let n = gram.dim();
    let m = shape.weight() as i64;
    let mut acc = Matrix::zero(n, n);
    for (r, e) in rho.iter().zip(&set.entries) {
        acc = acc.add(&gram.matrix().mul(&e.projection_sum.components[0]).scale(r));
    }
    assert_eq!(acc, gram.matrix().scale(&Rat::new(m.into(), (n as i64).into())));
}

#[test]
fn verdicts_are_unimodular_equivariant() {
    let mut rng = rng(99);
    for (name, shape) in [("A2", p(&[1])), ("Z2", p(&[1])), ("A3", p(&[2, 1]))] {
        let gram = hermite_core::catalog::lookup(name).unwrap().gram;
        let form = HumbertForm::rational(gram.clone());
        let set = minimal_set(&form, &shape).unwrap();
        let base = is_extreme(&form, &set);
        for _ in 0..3 {
            let u = random_unimodular(gram.dim(), &mut rng);
            let moved = u.transpose().mul(gram.matrix()).mul(&u);
            let moved_form = HumbertForm::rational(GramForm::new(moved).unwrap());
            let moved_set = minimal_set(&moved_form, &shape).unwrap();
            assert_eq!(moved_set.entries.len(), set.entries.len());
            let rep = is_extreme(&moved_form, &moved_set);
            assert_eq!(rep.extreme, base.extreme, "{name}");
            assert_eq!(rep.perfection.perfect, base.perfection.perfect, "{name}");
            assert_eq!(rep.perfection.rank, base.perfection.rank, "{name}");
            assert_eq!(rep.eutaxy.eutactic, base.eutaxy.eutactic, "{name}");
        }
    }
}

#[test]
fn minimal_set_counts() {
    // A₂ has 3 minimal flags; A₃ with λ=(2,1) has 12 root-in-plane chains
    let a2 = HumbertForm::rational(hermite_core::catalog::lookup("A2").unwrap().gram);
    assert_eq!(minimal_set(&a2, &p(&[1])).unwrap().entries.len(), 3);
    let a3 = HumbertForm::rational(hermite_core::catalog::lookup("A3").unwrap().gram);
    assert_eq!(minimal_set(&a3, &p(&[2, 1])).unwrap().entries.len(), 12);
    // brute count: 6 root lines, each in 2 of the 4 A₂-planes
    let planes = hermite_core::enumeration::decomposable_subspaces(
        &hermite_core::catalog::lookup("A3").unwrap().gram,
        2,
        &int(3),
    )
    .unwrap();
    assert_eq!(planes.len(), 4);
}

#[test]
fn perfection_rank_certificate() {
    // I₂ fails perfection with rank 2 of required 3
    let z2 = HumbertForm::rational(hermite_core::catalog::lookup("Z2").unwrap().gram);
    let set = minimal_set(&z2, &p(&[1])).unwrap();
    let rep = is_perfect(&z2, &set);
    assert!(!rep.perfect);
    assert_eq!((rep.rank, rep.required_rank), (2, 3));
}
