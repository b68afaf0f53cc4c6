mod common;

use rosepen::equivalence::{
    aux_matrix, aux_relations_check, build_certificate, certificate_target, extended_system, intermediate_pencil,
    system_block_transpose_poly, verify_rosenbrock_linearization, AuxKind, FactorTag,
};
use rosepen::fiedler::pencil_direct;
use rosepen::{Bijection, PolyMatrix, Rational, RosenbrockSystem};

#[test]
fn relations_hold_on_random_systems() {
    let mut rng = common::rng(11);
    for (n, r, m) in [(2, 2, 3), (1, 2, 4), (2, 1, 2), (2, 0, 3)] {
        let sys = common::random_system(&mut rng, n, r, m);
        for i in 1..m {
            let rel = aux_relations_check(&sys, i).unwrap();
            assert!(rel.holds(), "n={n} r={r} m={m} i={i}: {:?}", rel.failures);
        }
    }
}

#[test]
fn certificates_for_all_bijections() {
    let mut rng = common::rng(12);
    for (n, r, m) in [(1, 1, 3), (2, 2, 3), (1, 2, 4), (2, 1, 4), (2, 0, 3)] {
        let sys = common::random_system(&mut rng, n, r, m);
        for sigma in Bijection::all(m) {
            let cert = build_certificate(&sys, &sigma).unwrap_or_else(|e| panic!("{sigma}: {e}"));
            assert!(cert.steps.iter().all(|s| s.matches), "{sigma}");
            assert!(verify_rosenbrock_linearization(&sys, &sigma).unwrap());
            assert_eq!(intermediate_pencil(&sys, &sigma, 1).unwrap(), pencil_direct(&sys, &sigma).unwrap().to_poly_matrix());
        }
    }
}

fn factor(sys: &RosenbrockSystem<Rational>, tag: &FactorTag) -> PolyMatrix<Rational> {
    let x = aux_matrix(sys, tag.kind, tag.index).unwrap().matrix;
    if tag.transposed {
        system_block_transpose_poly(&x, sys.n(), sys.m(), sys.r()).unwrap()
    } else {
        x
    }
}

#[test]
fn r_factors_are_block_symmetric() {
    let mut rng = common::rng(13);
    let sys = common::random_system(&mut rng, 2, 2, 4);
    for i in 1..4 {
        let r = aux_matrix(&sys, AuxKind::R, i).unwrap().matrix;
        assert_eq!(system_block_transpose_poly(&r, 2, 4, 2).unwrap(), r);
    }
}

#[test]
fn transforms_recompose_from_their_tags() {
    let mut rng = common::rng(14);
    let sys = common::random_system(&mut rng, 2, 1, 4);
    let size = sys.pencil_size();
    let target = certificate_target(&sys);
    let mut flip = PolyMatrix::identity(size);
    flip.set_block(0, 0, &-&PolyMatrix::identity(3 * sys.n()));
    assert_eq!(target, &flip * &extended_system(&sys));
    for sigma in Bijection::all(4) {
        let cert = build_certificate(&sys, &sigma).unwrap();
        let u = cert.u_factors.iter().fold(PolyMatrix::identity(size), |acc, t| &acc * &factor(&sys, t));
        let v = cert.v_factors.iter().fold(PolyMatrix::identity(size), |acc, t| &acc * &factor(&sys, t));
        assert_eq!(u, cert.u, "σ⁻¹={sigma}");
        assert_eq!(v, cert.v, "σ⁻¹={sigma}");
        let pencil = intermediate_pencil(&sys, &sigma, 1).unwrap();
        assert_eq!(&(&u * &pencil) * &v, target);
    }
}
