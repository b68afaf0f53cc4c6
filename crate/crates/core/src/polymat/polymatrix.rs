//! Dense matrix polynomials `Σ λ^j A_j`.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::field::{Field, Rational};
use super::matrix::Matrix;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly<F>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Poly<F>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        PolyMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// `Σ λ^j coeffs[j]`; all coefficients must share one shape.
    pub fn from_coeffs(coeffs: &[Matrix<F>]) -> Self {
        let (r, c) = coeffs.first().map_or((0, 0), |a| (a.rows(), a.cols()));
        Self::from_fn(r, c, |i, j| Poly::new(coeffs.iter().map(|a| a[(i, j)].clone()).collect()))
    }

    pub fn constant(a: &Matrix<F>) -> Self {
        Self::from_coeffs(std::slice::from_ref(a))
    }

    /// `λ * lead + konst`
    pub fn pencil(lead: &Matrix<F>, konst: &Matrix<F>) -> Self {
        Self::from_coeffs(&[konst.clone(), lead.clone()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Poly<F>] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly<F>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].clone()).collect()).collect()
    }

    /// Maximum entry degree, −1 for the zero matrix.
    pub fn degree(&self) -> isize {
        self.entries.iter().map(Poly::degree).max().unwrap_or(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Coefficient matrix of `λ^k`.
    pub fn coeff(&self, k: usize) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].coeff(k))
    }

    /// Horner evaluation at a point.
    pub fn eval(&self, x: &F) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].eval(x))
    }

    pub fn map<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> PolyMatrix<G> {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.map(&mut f)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale_poly(&self, p: &Poly<F>) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * p).collect() }
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &PolyMatrix<F>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block_diag(blocks: &[&PolyMatrix<F>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Degree-`k` Horner shift `A_{m-k} + λ A_{m-k+1} + ... + λ^k A_m`,
    /// where `m` is the degree of `self`.
    pub fn horner_shift(&self, k: usize) -> Result<Self> {
        let m = self.degree().max(0) as usize;
        if k > m {
            return Err(Error::IndexOutOfRange { what: "horner shift degree", index: k, max: m });
        }
        let coeffs: Vec<Matrix<F>> = (m - k..=m).map(|j| self.coeff(j)).collect();
        Ok(Self::from_coeffs(&coeffs))
    }

    /// Blockwise transpose with uniform `block_size` square blocks.
    pub fn block_transpose(&self, block_rows: usize, block_cols: usize, block_size: usize) -> Result<Self> {
        if self.rows != block_rows * block_size || self.cols != block_cols * block_size {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not {block_rows}x{block_cols} blocks of size {block_size}",
                self.rows, self.cols
            )));
        }
        let s = block_size;
        Ok(Self::from_fn(block_cols * s, block_rows * s, |i, j| {
            let (bi, ii, bj, jj) = (i / s, i % s, j / s, j % s);
            self[(bj * s + ii, bi * s + jj)].clone()
        }))
    }
}

impl PolyMatrix<Rational> {
    /// Exact determinant by fraction-free (Bareiss) elimination over ℚ[λ].
    pub fn det(&self) -> Result<Poly<Rational>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = Poly::one();
        for k in 0..n {
            let pivot = (k..n)
                .filter(|&i| !m[(i, k)].is_zero())
                .min_by_key(|&i| (m[(i, k)].degree(), i));
            let Some(p) = pivot else { return Ok(Poly::zero()) };
            if p != k {
                m.swap_rows(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = t.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[(i, k)] = Poly::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        Ok(if sign { -d } else { d })
    }

    /// Pointwise floating-point copy.
    pub fn to_f64(&self) -> PolyMatrix<f64> {
        self.map(Field::to_f64)
    }
}

impl<F> Index<(usize, usize)> for PolyMatrix<F> {
    type Output = Poly<F>;
    fn index(&self, (i, j): (usize, usize)) -> &Poly<F> {
        &self.entries[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for PolyMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly<F> {
        &mut self.entries[i * self.cols + j]
    }
}

impl<F: Field> Mul for &PolyMatrix<F> {
    type Output = PolyMatrix<F>;
    fn mul(self, rhs: &PolyMatrix<F>) -> PolyMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<F: Field> Add for &PolyMatrix<F> {
    type Output = PolyMatrix<F>;
    fn add(self, rhs: &PolyMatrix<F>) -> PolyMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl<F: Field> Sub for &PolyMatrix<F> {
    type Output = PolyMatrix<F>;
    fn sub(self, rhs: &PolyMatrix<F>) -> PolyMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl<F: Field> Neg for &PolyMatrix<F> {
    type Output = PolyMatrix<F>;
    fn neg(self) -> PolyMatrix<F> {
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }
}
