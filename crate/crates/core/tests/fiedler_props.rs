mod common;

use std::collections::HashSet;

use num_traits::Zero;
use proptest::prelude::*;
use rosepen::fiedler::{factor_inverse, make_factor, pencil_algorithm1, pencil_block_formula, pencil_direct};
use rosepen::{Bijection, Matrix, PolyMatrix, RosenbrockSystem};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn three_constructions_agree(sys in common::system_strategy(2, 2, 4)) {
        for sigma in Bijection::all(sys.m()) {
            let d = pencil_direct(&sys, &sigma).unwrap();
            prop_assert_eq!(&d, &pencil_algorithm1(&sys, &sigma).unwrap());
            prop_assert_eq!(&d, &pencil_block_formula(&sys, &sigma).unwrap());
        }
    }

    #[test]
    fn factor_inverses(sys in common::system_strategy(3, 2, 5)) {
        let id = Matrix::identity(sys.pencil_size());
        for i in 1..sys.m() {
            let f = make_factor(&sys, i).unwrap().matrix;
            let inv = factor_inverse(&sys, i).unwrap();
            prop_assert_eq!(&(&f * &inv), &id);
            prop_assert_eq!(&(&inv * &f), &id);
        }
    }

    #[test]
    fn lead_nonsingular_iff_am_and_e_are(sys in common::system_strategy(2, 2, 3), zero_row in any::<bool>()) {
        let m = sys.m();
        let mut coeffs: Vec<_> = (0..=m).map(|j| sys.coeff(j)).collect();
        if zero_row {
            for j in 0..sys.n() {
                coeffs[m][(0, j)] = Zero::zero();
            }
            prop_assume!(!coeffs[m].is_zero());
        }
        let sys = RosenbrockSystem::new(
            PolyMatrix::from_coeffs(&coeffs),
            sys.a().clone(),
            sys.e().clone(),
            sys.b().clone(),
            sys.c().clone(),
        )
        .unwrap();
        let p = pencil_direct(&sys, &Bijection::first_companion(m)).unwrap();
        let expected = !sys.coeff(m).det().is_zero() && !sys.e().det().is_zero();
        prop_assert_eq!(!p.lead.det().is_zero(), expected);
    }
}

#[test]
fn pencil_counts_match_polynomial_case() {
    let mut rng = common::rng(21);
    for m in 2..=5 {
        let sys = common::random_system(&mut rng, 2, 2, m);
        let poly = RosenbrockSystem::from_polynomial(sys.p().clone()).unwrap();
        let distinct = |s: &RosenbrockSystem<_>| {
            Bijection::all(m)
                .iter()
                .map(|sigma| pencil_direct(s, sigma).unwrap().const_term.to_rows())
                .collect::<HashSet<_>>()
                .len()
        };
        let (a, b) = (distinct(&sys), distinct(&poly));
        assert_eq!(a, b, "m={m}");
        // Fiedler pencils of P are indexed by the consecution pattern.
        assert_eq!(a, 1 << (m - 1), "m={m}");
    }
}
