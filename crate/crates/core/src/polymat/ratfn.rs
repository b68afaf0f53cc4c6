//! Scalar rational functions and rational matrices.

use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Rational};
use super::poly::Poly;
use super::polymatrix::PolyMatrix;

/// `num / den` with `den` monic. Exact values are kept reduced.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RationalFn<F> {
    /// Normalizes the denominator to be monic without cancelling common
    /// factors. Panics on a zero denominator.
    pub fn unreduced(num: Poly<F>, den: Poly<F>) -> Self {
        let l = den.lead().expect("zero denominator").clone();
        let inv = F::one() / l;
        RationalFn { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RationalFn { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }
    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl RationalFn<Rational> {
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        Self::unreduced(num, den)
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    /// Value at a point that is not a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (d != Rational::from_i64(0)).then(|| self.num.eval(x) / d)
    }

    /// Order of vanishing at the root of the irreducible-or-linear factor `d`:
    /// positive for zeros, negative for poles.
    pub fn order_at(&self, d: &Poly<Rational>) -> isize {
        if self.num.is_zero() {
            return isize::MAX;
        }
        self.num.multiplicity_of(d) as isize - self.den.multiplicity_of(d) as isize
    }
}

impl Add for &RationalFn<Rational> {
    type Output = RationalFn<Rational>;
    fn add(self, rhs: &RationalFn<Rational>) -> RationalFn<Rational> {
        if self.den == rhs.den {
            return RationalFn::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFn<Rational> {
    type Output = RationalFn<Rational>;
    fn sub(self, rhs: &RationalFn<Rational>) -> RationalFn<Rational> {
        self + &(-rhs)
    }
}

impl Mul for &RationalFn<Rational> {
    type Output = RationalFn<Rational>;
    fn mul(self, rhs: &RationalFn<Rational>) -> RationalFn<Rational> {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFn<Rational> {
    type Output = RationalFn<Rational>;
    fn neg(self) -> RationalFn<Rational> {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

/// Dense matrix of exact rational functions.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFn<Rational>>,
}

impl RationalMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RationalFn<Rational>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, entries }
    }

    pub fn from_poly_matrix(p: &PolyMatrix<Rational>) -> Self {
        Self::from_fn(p.rows(), p.cols(), |i, j| RationalFn::from_poly(p[(i, j)].clone()))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| RationalFn::zero())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFn<Rational> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[RationalFn<Rational>] {
        &self.entries
    }

    /// Monic lcm of all denominators.
    pub fn common_denominator(&self) -> Poly<Rational> {
        self.entries.iter().fold(Poly::one(), |acc, e| acc.lcm(e.den()))
    }

    /// `d * self` as a polynomial matrix; `d` must clear every denominator.
    pub fn scale_to_poly(&self, d: &Poly<Rational>) -> PolyMatrix<Rational> {
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| {
            let e = self.get(i, j);
            let k = d.exact_div(e.den()).expect("common denominator");
            &e.num * &k
        })
    }

    /// Multiply by a polynomial matrix on the right.
    pub fn mul_poly(&self, p: &PolyMatrix<Rational>) -> Self {
        assert_eq!(self.cols, p.rows());
        Self::from_fn(self.rows, p.cols(), |i, j| {
            (0..self.cols).fold(RationalFn::zero(), |acc, k| {
                &acc + &(self.get(i, k) * &RationalFn::from_poly(p[(k, j)].clone()))
            })
        })
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<Rational>;

    #[test]
    fn reduces_to_lowest_terms() {
        let f = RationalFn::new(P::from_i64s(&[-2, 0, 2]), P::from_i64s(&[-2, 2]));
        assert_eq!(f.num(), &P::from_i64s(&[1, 1]));
        assert_eq!(f.den(), &P::one());
    }

    #[test]
    fn desk_transfer_function_sum() {
        // λ² + 1/(λ−1) = (λ³ − λ² + 1)/(λ − 1)
        let a = RationalFn::from_poly(P::from_i64s(&[0, 0, 1]));
        let b = RationalFn::new(P::one(), P::from_i64s(&[-1, 1]));
        let s = &a + &b;
        assert_eq!(s.num(), &P::from_i64s(&[1, 0, -1, 1]));
        assert_eq!(s.den(), &P::from_i64s(&[-1, 1]));
        assert_eq!(s.order_at(&P::from_i64s(&[-1, 1])), -1);
    }
}
