//! Floating-point kernels backed by faer: SVD, eigenvalues, QZ.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::ComputeEigenvectors;
use faer::linalg::gevd;
use faer::diag::Diag;
use faer::prelude::default;
use faer::{Mat, Par};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polymat::Matrix;

fn to_faer(m: &Matrix<f64>) -> Mat<f64> {
    Mat::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn rank_tolerance(rows: usize, cols: usize, sigma_max: f64) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON * sigma_max
}

pub(crate) fn singular_values(m: &Matrix<f64>) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    to_faer(m).singular_values().expect("SVD failed to converge")
}

pub(crate) fn rank(m: &Matrix<f64>) -> usize {
    let s = singular_values(m);
    let tol = rank_tolerance(m.rows(), m.cols(), s.first().copied().unwrap_or(0.0));
    s.iter().filter(|&&v| v > tol).count()
}

/// Rank of a complex matrix given row-major.
pub(crate) fn rank_complex(rows: usize, cols: usize, data: &[Complex64]) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    let m = Mat::<Complex64>::from_fn(rows, cols, |i, j| data[i * cols + j]);
    let s = m.singular_values().expect("SVD failed to converge");
    let tol = rank_tolerance(rows, cols, s.first().copied().unwrap_or(0.0));
    s.iter().filter(|&&v| v > tol).count()
}

pub(crate) fn rank_factor(m: &Matrix<f64>) -> (Matrix<f64>, Matrix<f64>) {
    if m.rows() == 0 || m.cols() == 0 {
        return (Matrix::zeros(m.rows(), 0), Matrix::zeros(0, m.cols()));
    }
    let svd = to_faer(m).thin_svd().expect("SVD failed to converge");
    let (u, s, v) = (svd.U(), svd.S(), svd.V());
    let sv: Vec<f64> = (0..s.dim()).map(|k| s[k]).collect();
    let tol = rank_tolerance(m.rows(), m.cols(), sv.first().copied().unwrap_or(0.0));
    let rho = sv.iter().filter(|&&x| x > tol).count();
    let l = Matrix::from_fn(m.rows(), rho, |i, k| u[(i, k)]);
    let r = Matrix::from_fn(rho, m.cols(), |k, j| sv[k] * v[(j, k)]);
    (l, r)
}

pub(crate) fn eigenvalues(m: &Matrix<f64>) -> Result<Vec<Complex64>> {
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    to_faer(m).eigenvalues().map_err(|e| Error::Numeric(format!("{e:?}")))
}

/// Generalized eigenvalues of `(a, b)` as `(alpha, beta)` pairs, λ = α/β.
pub(crate) fn generalized_eigenvalues(a: &Matrix<f64>, b: &Matrix<f64>) -> Result<Vec<(Complex64, Complex64)>> {
    if a.rows() == 0 {
        return Ok(Vec::new());
    }
    let n = a.rows();
    let (mut fa, mut fb) = (to_faer(a), to_faer(b));
    let mut s_re = Diag::<f64>::zeros(n);
    let mut s_im = Diag::<f64>::zeros(n);
    let mut beta = Diag::<f64>::zeros(n);
    // Values only: faer's eigenvector path under-allocates scratch for some inputs.
    let req = gevd::gevd_scratch::<f64>(n, ComputeEigenvectors::No, ComputeEigenvectors::No, Par::Seq, default());
    let mut buf = MemBuffer::new(req);
    gevd::gevd_real(
        fa.as_mut(),
        fb.as_mut(),
        s_re.as_mut(),
        s_im.as_mut(),
        beta.as_mut(),
        None,
        None,
        Par::Seq,
        MemStack::new(&mut buf),
        default(),
    )
    .map_err(|e| Error::Numeric(format!("{e:?}")))?;
    let (re, im, be) = (s_re.column_vector(), s_im.column_vector(), beta.column_vector());
    let mut out: Vec<_> = (0..n).map(|k| (Complex64::new(re[k], im[k]), Complex64::new(be[k], 0.0))).collect();
    // faer scales the second member of a complex pair with the wrong β;
    // the first member is right, so rebuild the second as its conjugate.
    let mut k = 0;
    while k + 1 < n {
        if im[k] != 0.0 {
            out[k + 1] = (out[k].0.conj(), out[k].1);
            k += 2;
        } else {
            k += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_rank_and_factor() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert_eq!(rank(&m), 1);
        let (l, r) = rank_factor(&m);
        let back = &l * &r;
        for i in 0..2 {
            for j in 0..2 {
                assert!((back[(i, j)] - m[(i, j)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn qz_complex_pairs_are_conjugate() {
        // Pencil on which the raw QZ output breaks conjugate symmetry.
        let a = Matrix::from_rows(vec![
            vec![2.0, 0.0, 2.0, -3.0],
            vec![1.0, -2.0, 0.0, 3.0],
            vec![-3.0, -1.0, 3.0, -2.0],
            vec![-2.0, -2.0, -1.0, -1.0],
        ]);
        let b = Matrix::from_rows(vec![
            vec![-3.0, -3.0, 0.0, 0.0],
            vec![3.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.0, -1.0],
        ]);
        let ev: Vec<Complex64> = generalized_eigenvalues(&a, &b).unwrap().into_iter().map(|(al, be)| al / be).collect();
        for z in ev.iter().filter(|z| z.im != 0.0) {
            assert!(ev.iter().any(|w| (w - z.conj()).norm() < 1e-12 * z.norm().max(1.0)), "{ev:?}");
        }
        // det(λB − A) = 6λ⁴ + λ³ − 68λ² + 25λ + 151
        for z in &ev {
            let p = ((((6.0 * z + 1.0) * z - 68.0) * z + 25.0) * z) + 151.0;
            assert!(p.norm() < 1e-8 * 151.0, "{z}: {p}");
        }
    }

    #[test]
    fn qz_flags_infinite_eigenvalue() {
        let a = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 2.0]]);
        let b = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
        let ev = generalized_eigenvalues(&a, &b).unwrap();
        let finite: Vec<_> = ev.iter().filter(|(_, be)| be.norm() > 1e-12).map(|(al, be)| al / be).collect();
        assert_eq!(finite.len(), 1);
        assert!((finite[0].re - 1.0).abs() < 1e-12);
    }
}
