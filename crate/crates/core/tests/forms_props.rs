//! Property tests for the forms layer: homogeneity, unimodular invariance,
//! minors-vs-apolar height agreement, and content scaling.

mod common;

use num::Signed;
use proptest::prelude::*;
use rand::Rng;

use common::{random_invertible, random_unimodular, rng};
use hermite_core::forms::{
    content, evaluate, height_apolar, height_minors, FlagVector, GramForm, HumbertForm,
};
use hermite_core::lattice::IMat;
use hermite_core::partitions::Partition;
use hermite_core::rat::{int, pow_rat, Rat};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn a3_form() -> HumbertForm {
    HumbertForm::rational(
        GramForm::from_i64_rows(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]).unwrap(),
    )
}

#[test]
fn minors_and_apolar_heights_agree() {
    // route (a) apolar = route (b) minors, exactly, on random invertible g
    let mut rng = rng(41);
    for shape in common::partitions_up_to(4, 4) {
        let n = shape.height().max(3).min(4);
        let flag = FlagVector::canonical(&shape, n).unwrap();
        let e_u = flag.to_schur_vector().unwrap();
        for _ in 0..12 {
            let g = random_invertible(n, &mut rng);
            let by_minors = height_minors(&g, &shape, flag.matrix()).unwrap();
            let by_apolar = height_apolar(&g, &e_u, n).unwrap();
            assert_eq!(by_minors, by_apolar, "shape {shape}, n = {n}");
        }
    }
}

#[test]
fn heights_agree_on_general_flags() {
    // the same agreement for a non-canonical flag vector
    let shape = p(&[2, 1]);
    let flag = FlagVector::new(
        shape.clone(),
        IMat::from_i64_rows(&[&[1, 1], &[2, 0], &[0, -1]]),
    )
    .unwrap();
    let sv = flag.to_schur_vector().unwrap();
    let mut rng = rng(42);
    for _ in 0..10 {
        let g = random_invertible(3, &mut rng);
        let by_minors = height_minors(&g, &shape, flag.matrix()).unwrap();
        let by_apolar = height_apolar(&g, &sv, 3).unwrap();
        assert_eq!(by_minors, by_apolar);
    }
}

#[test]
fn unimodular_invariance_of_evaluate() {
    let mut rng = rng(7);
    let form = a3_form();
    let shape = p(&[2, 1]);
    let flag = FlagVector::new(
        shape.clone(),
        IMat::from_i64_rows(&[&[1, 0], &[0, 1], &[0, -1]]),
    )
    .unwrap();
    let base = evaluate(&form, &flag).unwrap();
    for _ in 0..10 {
        let u = random_unimodular(3, &mut rng);
        let ut_a_u = u.transpose().mul(form.single().matrix()).mul(&u);
        let transformed = HumbertForm::rational(GramForm::new(ut_a_u).unwrap());
        let u_inv = u.inverse().unwrap();
        let moved = u_inv.mul(&flag.matrix().to_matrix());
        let moved = IMat::try_from_matrix(&moved).unwrap();
        let moved_flag = FlagVector::new(shape.clone(), moved).unwrap();
        assert_eq!(evaluate(&transformed, &moved_flag).unwrap(), base);
    }
}

#[test]
fn evaluate_positive_on_full_rank_flags() {
    let mut rng = rng(11);
    for _ in 0..20 {
        let a = common::random_pd_gram(3, &mut rng);
        let form = HumbertForm::rational(GramForm::new(a).unwrap());
        let mat = loop {
            let m = IMat::from_fn(3, 2, |_, _| rng.gen_range(-3..=3i64).into());
            if m.rank() == 2 {
                break m;
            }
        };
        let flag = FlagVector::new(p(&[2, 1]), mat).unwrap();
        assert!(evaluate(&form, &flag).unwrap().is_positive());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluate_homogeneity(num in 1i64..40, den in 1i64..40) {
        // evaluate(cA, X) = c^m · evaluate(A, X) for rational c > 0
        let c = Rat::new(num.into(), den.into());
        let form = a3_form();
        let shape = p(&[2, 1]);
        let flag = FlagVector::canonical(&shape, 3).unwrap();
        let scaled = HumbertForm::rational(
            GramForm::new(form.single().matrix().scale(&c)).unwrap(),
        );
        let m = shape.weight() as i64;
        prop_assert_eq!(
            evaluate(&scaled, &flag).unwrap(),
            pow_rat(&c, m) * evaluate(&form, &flag).unwrap()
        );
    }

    #[test]
    fn content_scales_linearly(num in -20i64..20, den in 1i64..20) {
        prop_assume!(num != 0);
        let alpha = Rat::new(num.into(), den.into());
        let shape = p(&[2, 1]);
        let cols: Vec<Vec<Rat>> = vec![
            vec![int(1), int(2), int(0)],
            vec![int(0), int(1), int(3)],
        ];
        let scaled: Vec<Vec<Rat>> =
            cols.iter().map(|v| v.iter().map(|x| x * &alpha).collect()).collect();
        let base = content(&shape, &cols, 3).unwrap();
        let scaled_content = content(&shape, &scaled, 3).unwrap();
        // the flag tableau has m = 3 cells, each scaled by α
        let m = shape.weight() as i64;
        prop_assert_eq!(
            scaled_content.generator().clone(),
            pow_rat(&alpha, m).abs() * base.generator()
        );
    }
}
