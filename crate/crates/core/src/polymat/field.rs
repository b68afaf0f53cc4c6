//! Scalar fields: exact rationals and binary64 floats.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::Matrix;
use crate::numeric;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Which scalar field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Exact,
    Float,
}

/// A field usable as the coefficient domain of polynomials and matrices.
///
/// The two implementors are [`Rational`] and `f64`. Rank-revealing
/// operations live here because they differ per field: exact elimination
/// for rationals and singular-value thresholding for floats.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const MODE: FieldMode;

    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// `Some` only for exact scalars.
    fn to_exact(&self) -> Option<Rational>;
    fn fmt_scalar(&self) -> String;

    fn rank(m: &Matrix<Self>) -> usize;
    /// Factor `m = L * R` with `L` of full column rank and `R` of full row rank.
    fn rank_factor(m: &Matrix<Self>) -> (Matrix<Self>, Matrix<Self>);
}

impl Field for Rational {
    const MODE: FieldMode = FieldMode::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_exact(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn fmt_scalar(&self) -> String {
        format_rational(self)
    }

    fn rank(m: &Matrix<Self>) -> usize {
        m.rref().1.len()
    }

    // Basis rows are taken from the matrix itself (first independent rows in
    // order), so that e.g. [2] factors as [1]*[2].
    fn rank_factor(m: &Matrix<Self>) -> (Matrix<Self>, Matrix<Self>) {
        let (rref_t, pivots) = m.transpose().rref();
        let rho = pivots.len();
        let r = Matrix::from_fn(rho, m.cols(), |i, j| m[(pivots[i], j)].clone());
        let l = Matrix::from_fn(m.rows(), rho, |i, k| rref_t[(k, i)].clone());
        (l, r)
    }
}

impl Field for f64 {
    const MODE: FieldMode = FieldMode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(q: &Rational) -> Self {
        Field::to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_exact(&self) -> Option<Rational> {
        None
    }
    fn fmt_scalar(&self) -> String {
        format!("{self}")
    }

    fn rank(m: &Matrix<Self>) -> usize {
        numeric::rank(m)
    }
    fn rank_factor(m: &Matrix<Self>) -> (Matrix<Self>, Matrix<Self>) {
        numeric::rank_factor(m)
    }
}

/// Parse `"p/q"`, an integer, or a decimal such as `"-0.125"` / `"1e-3"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let all = all / BigInt::from(10);
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-7"), Some(rat(-7, 1)));
        assert_eq!(parse_rational("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rational("-1.5e2"), Some(rat(-150, 1)));
        assert_eq!(parse_rational("2e-3"), Some(rat(1, 500)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn format_forms() {
        assert_eq!(format_rational(&rat(4, -6)), "-2/3");
        assert_eq!(format_rational(&rat(5, 1)), "5");
    }

    #[test]
    fn exact_rank_factor_keeps_original_rows() {
        let m = Matrix::from_rows(vec![vec![rat(2, 1)]]);
        let (l, r) = Rational::rank_factor(&m);
        assert_eq!(l, Matrix::from_rows(vec![vec![rat(1, 1)]]));
        assert_eq!(r, m);

        let m = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
            vec![rat(0, 1), rat(1, 1)],
        ]);
        let (l, r) = Rational::rank_factor(&m);
        assert_eq!((l.cols(), r.rows()), (2, 2));
        assert_eq!(&l * &r, m);
    }
}
