//! Univariate polynomials in λ with ascending coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::field::{Field, Rational};

/// A polynomial `c0 + c1 λ + ... + cd λ^d`. The leading coefficient is
/// nonzero unless the polynomial is zero (degree −1).
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c λ^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// The polynomial `λ`.
    pub fn lambda() -> Self {
        Self::monomial(F::one(), 1)
    }

    /// `λ - a`
    pub fn linear_root(a: F) -> Self {
        Self::new(vec![-a, F::one()])
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| F::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Multiply by `λ^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![F::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => {
                let inv = F::one() / l.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * F::from_i64(k as i64)).collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("division by the zero polynomial").clone();
        let dd = d.coeffs.len();
        if self.coeffs.len() < dd {
            return (Self::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); r.len() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + dd - 1].clone() / dl.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        r.truncate(dd - 1);
        (Self::new(q), Self::new(r))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn map<G: Field>(&self, f: impl FnMut(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map(Field::to_f64)
    }
}

impl Poly<Rational> {
    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).expect("gcd divides")).monic()
    }

    /// Yun's square-free decomposition of the monic part: returns `(s_k, k)`
    /// with `monic(self) = Π s_k^k`, each `s_k` square-free, pairwise coprime
    /// and non-constant.
    pub fn squarefree(&self) -> Vec<(Self, usize)> {
        let f = self.monic();
        if f.degree() < 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut c = f.gcd(&f.derivative());
        let mut w = f.exact_div(&c).expect("gcd divides");
        let mut i = 1;
        while w.degree() > 0 {
            let y = w.gcd(&c);
            let z = w.exact_div(&y).expect("gcd divides");
            if z.degree() > 0 {
                out.push((z, i));
            }
            i += 1;
            c = c.exact_div(&y).expect("gcd divides");
            w = y;
        }
        out
    }

    /// Largest `k` with `d^k | self`; `d` must be non-constant.
    pub fn multiplicity_of(&self, d: &Self) -> usize {
        assert!(d.degree() > 0);
        if self.is_zero() {
            return usize::MAX;
        }
        let mut k = 0;
        let mut p = self.clone();
        while let Some(q) = p.exact_div(d) {
            p = q;
            k += 1;
        }
        k
    }

    /// Human-readable form such as `λ^3 - λ^2 + 1`.
    pub fn pretty(&self) -> String {
        let terms = self.coeffs.iter().map(|c| (c < &Rational::zero(), Field::fmt_scalar(&c.abs()), c.is_zero()));
        pretty_terms(terms.collect())
    }
}

impl Poly<f64> {
    pub fn pretty(&self) -> String {
        pretty_terms(self.coeffs.iter().map(|c| (*c < 0.0, format!("{}", c.abs()), *c == 0.0)).collect())
    }
}

fn pretty_terms(terms: Vec<(bool, String, bool)>) -> String {
    let mut out = String::new();
    for (k, (neg, mag, zero)) in terms.into_iter().enumerate().rev() {
        if zero {
            continue;
        }
        let body = match (k, mag.as_str()) {
            (0, _) => mag.clone(),
            (1, "1") => "λ".to_string(),
            (1, _) => format!("{mag}λ"),
            (_, "1") => format!("λ^{k}"),
            _ => format!("{mag}λ^{k}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Poly::new(v)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<Rational>;

    #[test]
    fn trims_and_degree() {
        assert_eq!(P::from_i64s(&[1, 0, 0]).degree(), 0);
        assert_eq!(P::from_i64s(&[0, 0]).degree(), -1);
        assert!(P::zero().is_zero());
    }

    #[test]
    fn division_identity() {
        let a = P::from_i64s(&[1, 0, -1, 1]);
        let d = P::from_i64s(&[-1, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert_eq!(q, P::from_i64s(&[0, 0, 1]));
        assert_eq!(r, P::from_i64s(&[1]));
    }

    #[test]
    fn gcd_and_lcm() {
        let a = &P::from_i64s(&[-1, 1]) * &P::from_i64s(&[-2, 1]);
        let b = &P::from_i64s(&[-2, 1]) * &P::from_i64s(&[3, 1]);
        assert_eq!(a.gcd(&b), P::from_i64s(&[-2, 1]));
        assert_eq!(a.lcm(&b).degree(), 3);
        assert_eq!(P::from_i64s(&[2]).gcd(&P::from_i64s(&[0, 3])), P::one());
    }

    #[test]
    fn squarefree_parts() {
        // (λ-1)^3 (λ+2)
        let f = &P::from_i64s(&[-1, 1]).pow(3) * &P::from_i64s(&[2, 1]).scale(&Rational::from_i64(5));
        let sf = f.squarefree();
        assert_eq!(sf, vec![(P::from_i64s(&[2, 1]), 1), (P::from_i64s(&[-1, 1]), 3)]);
        assert_eq!(f.multiplicity_of(&P::from_i64s(&[-1, 1])), 3);
    }

    #[test]
    fn pretty_print() {
        assert_eq!(P::from_i64s(&[1, 0, -1, 1]).pretty(), "λ^3 - λ^2 + 1");
        assert_eq!(P::from_i64s(&[0, -2]).pretty(), "-2λ");
        assert_eq!(P::zero().pretty(), "0");
    }
}
