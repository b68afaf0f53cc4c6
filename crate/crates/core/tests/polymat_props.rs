mod common;

use proptest::prelude::*;
use rosepen::polymat::{smith_decomposition, smith_form, smith_mcmillan};
use rosepen::{Poly, PolyMatrix, Rational, RationalMatrix};

fn divides(a: &Poly<Rational>, b: &Poly<Rational>) -> bool {
    b.div_rem(a).1.is_zero()
}

fn square() -> impl Strategy<Value = PolyMatrix<Rational>> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(n, m)| common::poly_matrix_strategy(n, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_product_is_monic_determinant(p in square()) {
        let d = p.det().unwrap();
        let sf = smith_form(&p);
        if d.is_zero() {
            prop_assert!(sf.zero_rows > 0);
        } else {
            let prod = sf.invariant_polys.iter().fold(Poly::one(), |acc, f| &acc * f);
            prop_assert_eq!(prod, d.monic());
        }
        for w in sf.invariant_polys.windows(2) {
            prop_assert!(divides(&w[0], &w[1]));
        }
        prop_assert!(sf.invariant_polys.iter().all(|f| f.is_monic() && f.degree() >= 1));
    }

    // The invariant-factor path and the transform-tracking path reduce
    // differently; both must land on the same diagonal.
    #[test]
    fn smith_form_matches_decomposition(p in square()) {
        let dec = smith_decomposition(&p);
        let diag: Vec<_> = dec.diagonal.iter().filter(|d| !d.is_zero()).map(|d| d.monic()).collect();
        prop_assert_eq!(smith_form(&p).invariant_factors(), diag);
        let prod = &(&dec.u * &p) * &dec.v;
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let want = if i == j { dec.diagonal[i].clone() } else { Poly::zero() };
                prop_assert_eq!(&prod[(i, j)], &want);
            }
        }
    }

    #[test]
    fn smith_mcmillan_chain(num in square(), den in square()) {
        // Mix two polynomial matrices into a rational one entrywise.
        let n = num.rows().min(den.rows());
        let g = RationalMatrix::from_fn(n, n, |i, j| {
            let d = den[(i, j)].clone();
            let d = if d.is_zero() { Poly::one() } else { d };
            rosepen::RationalFn::new(num[(i, j)].clone(), d)
        });
        let sm = smith_mcmillan(&g);
        for (phi, psi) in sm.numerators.iter().zip(&sm.denominators) {
            prop_assert_eq!(phi.gcd(psi).degree(), 0);
            prop_assert!(phi.is_monic() && psi.is_monic());
        }
        for w in sm.numerators.windows(2) {
            prop_assert!(divides(&w[0], &w[1]));
        }
        for w in sm.denominators.windows(2) {
            prop_assert!(divides(&w[1], &w[0]));
        }
    }

    #[test]
    fn polynomial_matrix_has_trivial_denominators(p in square()) {
        let sm = smith_mcmillan(&RationalMatrix::from_poly_matrix(&p));
        prop_assert!(sm.denominators.iter().all(|d| d.is_one()));
        let sf = smith_form(&p);
        prop_assert_eq!(sm.numerators, sf.invariant_factors());
    }

    #[test]
    fn horner_recurrence(p in square()) {
        let m = p.degree() as usize;
        for k in 0..m {
            let lhs = p.horner_shift(k + 1).unwrap();
            let shifted = p.horner_shift(k).unwrap().scale_poly(&Poly::lambda());
            let rhs = &shifted + &PolyMatrix::constant(&p.coeff(m - k - 1));
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert_eq!(p.horner_shift(m).unwrap(), p);
    }

    #[test]
    fn block_transpose_is_involution(n in 1usize..=2, br in 1usize..=3, bc in 1usize..=3, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let coeffs = [common::int_matrix(&mut rng, br * n, bc * n), common::int_matrix(&mut rng, br * n, bc * n)];
        let x = PolyMatrix::from_coeffs(&coeffs);
        let t = x.block_transpose(br, bc, n).unwrap();
        prop_assert_eq!((t.rows(), t.cols()), (bc * n, br * n));
        prop_assert_eq!(t.block_transpose(bc, br, n).unwrap(), x);
    }
}
