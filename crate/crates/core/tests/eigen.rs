mod common;

use rosepen::eigen::{classify_zeros, ZeroClass};
use rosepen::polymat::{rat, smith_form, smith_mcmillan, smith_mcmillan_decomposition};
use rosepen::{realize, Backend, Bijection, Matrix, Poly, PolyMatrix, Rational, RepSpec, RepTerm, RosenbrockSystem};

fn minimal_systems(seed: u64, count: usize) -> Vec<RosenbrockSystem<Rational>> {
    let mut rng = common::rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        use rand::Rng;
        let (n, r, m) = (rng.random_range(1..=2), rng.random_range(1..=3), rng.random_range(2..=3));
        let sys = common::random_system(&mut rng, n, r, m);
        if sys.is_minimal().unwrap().minimal {
            out.push(sys);
        }
    }
    out
}

fn single_term(p: PolyMatrix<Rational>, pole: i64, matrix: Matrix<Rational>) -> RosenbrockSystem<Rational> {
    let spec = RepSpec { p, terms: vec![RepTerm { num: Poly::from_i64s(&[1]), den: Poly::from_i64s(&[-pole, 1]), matrix }] };
    realize(&spec).unwrap().system
}

#[test]
fn state_pencil_factors_are_the_poles() {
    for sys in minimal_systems(21, 10) {
        let sf = smith_form(&sys.state_pencil(false));
        let sm = smith_mcmillan(&sys.transfer_function().unwrap());
        let mut poles: Vec<_> = sm.denominators.iter().filter(|d| !d.is_one()).cloned().collect();
        poles.reverse();
        assert_eq!(sf.invariant_polys, poles);
    }
}

#[test]
fn zeros_do_not_depend_on_the_bijection() {
    for sys in minimal_systems(22, 6) {
        let base = classify_zeros(&sys, None, Backend::Exact).unwrap();
        for sigma in Bijection::all(sys.m()) {
            let rep = classify_zeros(&sys, Some(&sigma), Backend::Exact).unwrap();
            assert_eq!(rep.zeros, base.zeros, "σ⁻¹={sigma}");
            assert_eq!(rep.poles, base.poles, "σ⁻¹={sigma}");
            assert_eq!(rep.det_constant, Some(rat(1, 1)));
        }
    }
}

// At an eigenpole λ0 some column of V, with U (dG) V in Smith form, is a
// polynomial direction along which G vanishes at λ0 even though G itself
// blows up there.
#[test]
fn eigenpoles_have_vanishing_directions() {
    let lambda = Poly::from_i64s(&[0, 1]);
    let one = Poly::from_i64s(&[1]);
    let cases = [
        (PolyMatrix::from_rows(vec![vec![one.clone(), Poly::zero()], vec![Poly::zero(), one.clone()]]), 2, common::ints(&[&[0, 1], &[0, 0]])),
        (PolyMatrix::from_rows(vec![vec![lambda.clone(), Poly::zero()], vec![Poly::zero(), Poly::zero()]]), 0, common::ints(&[&[0, 0], &[0, 1]])),
    ];
    for (p, pole, matrix) in cases {
        let sys = single_term(p, pole, matrix);
        let rep = classify_zeros(&sys, None, Backend::Exact).unwrap();
        let x0 = rat(pole, 1);
        assert_eq!(rep.eigenpoles(), vec![&rosepen::Root::Exact(x0.clone())]);
        assert!(rep.eigenvalues().is_empty());
        assert!(rep.zeros.iter().all(|z| z.class == ZeroClass::Eigenpole));

        let g = sys.transfer_function().unwrap();
        let at = Poly::from_i64s(&[-pole, 1]);
        assert!(g.entries().iter().any(|e| e.order_at(&at) < 0));
        let dec = smith_mcmillan_decomposition(&g);
        let k = dec.form.numerators.iter().position(|f| f.eval(&x0) == rat(0, 1)).expect("zero at the pole");
        let v = dec.v.block(0, k, dec.v.rows(), 1);
        assert!((0..v.rows()).any(|i| v[(i, 0)].eval(&x0) != rat(0, 1)));
        let gv = g.mul_poly(&v);
        assert!(gv.entries().iter().all(|e| e.order_at(&at) >= 1));
    }
}

#[test]
fn numeric_backend_agrees_with_exact() {
    for sys in minimal_systems(23, 6) {
        let exact = classify_zeros(&sys, None, Backend::Exact).unwrap();
        let num = classify_zeros(&sys, None, Backend::Numeric).unwrap();
        let count = |r: &rosepen::ZeroReport| r.zeros.iter().map(|z| z.multiplicity).sum::<usize>();
        assert_eq!(count(&exact), count(&num));
        for z in &exact.zeros {
            let w = z.value.to_complex();
            let hit = num.zeros.iter().find(|y| (y.value.to_complex() - w).norm() <= 1e-6 * (1.0 + w.norm()));
            assert_eq!(hit.map(|y| y.class), Some(z.class), "{w}");
        }
    }
}
