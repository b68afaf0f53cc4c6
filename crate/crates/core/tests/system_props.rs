mod common;

use num_traits::Zero;
use proptest::prelude::*;
use rosepen::polymat::{rat, smith_mcmillan, zero_pole_polys};
use rosepen::{realize, Matrix, Poly, PolyMatrix, Rational, RepSpec, RepTerm, RosenbrockSystem};

fn spec_strategy() -> impl Strategy<Value = RepSpec<Rational>> {
    let term = |n: usize| {
        (-3i64..=3, -3i64..=3, 0i64..=1, prop::collection::vec(-2i64..=2, n * n)).prop_map(move |(pole, c0, c1, v)| {
            RepTerm {
                num: Poly::from_i64s(&[c0, c1]),
                den: Poly::from_i64s(&[-pole, 1]),
                matrix: Matrix::from_fn(n, n, |i, j| rat(v[i * n + j], 1)),
            }
        })
    };
    (1usize..=3, 0usize..=2).prop_flat_map(move |(n, m)| {
        (common::poly_matrix_strategy(n, m), prop::collection::vec(term(n), 1..=3))
            .prop_map(|(p, terms)| RepSpec { p, terms })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn realization_round_trip(spec in spec_strategy()) {
        let real = realize(&spec).unwrap();
        prop_assert_eq!(real.system.transfer_function().unwrap(), spec.rational_matrix());
    }

    #[test]
    fn minimal_realization_order(spec in spec_strategy()) {
        let sys = realize(&spec).unwrap().system;
        let min = sys.is_minimal().unwrap();
        if min.minimal {
            let (_, psi) = zero_pole_polys(&smith_mcmillan(&sys.transfer_function().unwrap()));
            prop_assert_eq!(psi.degree(), sys.r() as isize);
            prop_assert!(min.report.input.is_empty() && min.report.output.is_empty());
        } else {
            prop_assert!(!(min.report.input.is_empty() && min.report.output.is_empty()));
        }
    }

    // det S(x) = det(A − xE) · det G(x) at enough points to pin down the
    // polynomial identity.
    #[test]
    fn schur_determinant_identity(sys in common::system_strategy(2, 2, 3)) {
        let g = sys.transfer_function().unwrap();
        let s = sys.assemble_system_matrix();
        let ale = sys.state_pencil(true);
        let (n, r, m) = (sys.n(), sys.r(), sys.m());
        let mut checked = 0;
        let mut x = 0i64;
        while checked < 2 * (n + r) * m + 1 {
            x += 1;
            let xq = rat(x, 7);
            let d = ale.eval(&xq).det();
            if d.is_zero() {
                continue;
            }
            let gx = Matrix::from_fn(n, n, |i, j| g.get(i, j).eval(&xq).unwrap());
            prop_assert_eq!(s.eval(&xq).det(), d * gx.det());
            checked += 1;
        }
    }
}

#[test]
fn constant_polynomial_systems_are_their_own_pencil() {
    let mut rng = common::rng(31);
    let p = PolyMatrix::constant(&common::int_matrix(&mut rng, 2, 2));
    let sys = RosenbrockSystem::new(
        p,
        common::int_matrix(&mut rng, 1, 1),
        Matrix::identity(1),
        common::int_matrix(&mut rng, 1, 2),
        common::int_matrix(&mut rng, 2, 1),
    )
    .unwrap();
    assert_eq!(sys.m(), 1);
    let pencil = rosepen::eigen::fiedler_pencil(&sys, &rosepen::Bijection::first_companion(1)).unwrap();
    assert_eq!(pencil.size(), 3);
    assert_eq!(pencil.to_poly_matrix().det().unwrap().monic(), sys.assemble_system_matrix().det().unwrap().monic());
}
