//! Deterministic inputs for the benchmarks.

use rosepen::polymat::rat;
use rosepen::{Matrix, PolyMatrix, Rational, RosenbrockSystem};

fn filled(rows: usize, cols: usize, salt: usize) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |i, j| rat(((i * 7 + j * 3 + salt * 5) % 7) as i64 - 3, 1))
}

/// System with `n × n` coefficients, `r` states and degree `m`. The leading
/// coefficient is diagonally dominant, hence nonsingular.
pub fn system(n: usize, r: usize, m: usize) -> RosenbrockSystem<Rational> {
    let mut coeffs: Vec<_> = (0..m).map(|k| filled(n, n, k)).collect();
    coeffs.push(Matrix::from_fn(n, n, |i, j| if i == j { rat(2 * n as i64 + 1, 1) } else { rat(((i + 2 * j) % 3) as i64 - 1, 1) }));
    RosenbrockSystem::new(
        PolyMatrix::from_coeffs(&coeffs),
        filled(r, r, m + 1),
        Matrix::identity(r),
        filled(r, n, m + 2),
        filled(n, r, m + 3),
    )
    .expect("valid system")
}
