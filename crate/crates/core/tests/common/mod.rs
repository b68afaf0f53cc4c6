#![allow(dead_code)]

use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rosepen::polymat::rat;
use rosepen::{Matrix, Poly, PolyMatrix, Rational, RosenbrockSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |_, _| rat(rng.random_range(-3..=3), 1))
}

pub fn ints(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect())
}

/// Random exact system with integer entries in [-3, 3], nonsingular `A_m`
/// and `E = I`.
pub fn random_system(rng: &mut impl Rng, n: usize, r: usize, m: usize) -> RosenbrockSystem<Rational> {
    let mut coeffs: Vec<Matrix<Rational>> = (0..m).map(|_| int_matrix(rng, n, n)).collect();
    let lead = loop {
        let a = int_matrix(rng, n, n);
        if !a.det().is_zero() {
            break a;
        }
    };
    coeffs.push(lead);
    RosenbrockSystem::new(
        PolyMatrix::from_coeffs(&coeffs),
        int_matrix(rng, r, r),
        Matrix::identity(r),
        int_matrix(rng, r, n),
        int_matrix(rng, n, r),
    )
    .expect("valid system")
}

pub fn desk() -> RosenbrockSystem<Rational> {
    let one = ints(&[&[1]]);
    let p = PolyMatrix::from_rows(vec![vec![Poly::from_i64s(&[0, 0, 1])]]);
    RosenbrockSystem::new(p, one.clone(), one.clone(), one.clone(), one).unwrap()
}

fn matrix_from(rows: usize, cols: usize, v: &[i64]) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |i, j| rat(v[i * cols + j], 1))
}

/// Integer polynomial matrix `n × n` of exact degree `m`.
pub fn poly_matrix_strategy(n: usize, m: usize) -> impl Strategy<Value = PolyMatrix<Rational>> {
    prop::collection::vec(-3i64..=3, n * n * (m + 1))
        .prop_filter("nonzero leading coefficient", move |v| v[n * n * m..].iter().any(|&x| x != 0))
        .prop_map(move |v| {
            let coeffs: Vec<_> = v.chunks(n * n).map(|c| matrix_from(n, n, c)).collect();
            PolyMatrix::from_coeffs(&coeffs)
        })
}

/// Exact systems with `E = I`, `n ≤ nmax`, `r ≤ rmax`, `2 ≤ m ≤ mmax`.
pub fn system_strategy(nmax: usize, rmax: usize, mmax: usize) -> impl Strategy<Value = RosenbrockSystem<Rational>> {
    (1..=nmax, 0..=rmax, 2..=mmax).prop_flat_map(|(n, r, m)| {
        (poly_matrix_strategy(n, m), prop::collection::vec(-3i64..=3, r * r + 2 * r * n)).prop_map(move |(p, v)| {
            let a = matrix_from(r, r, &v[..r * r]);
            let b = matrix_from(r, n, &v[r * r..r * r + r * n]);
            let c = matrix_from(n, r, &v[r * r + r * n..]);
            RosenbrockSystem::new(p, a, Matrix::identity(r), b, c).expect("valid system")
        })
    })
}
