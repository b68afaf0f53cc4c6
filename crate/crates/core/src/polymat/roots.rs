//! Roots of exact polynomials: rational roots are isolated exactly, the rest
//! are approximated as companion-matrix eigenvalues polished by Newton steps.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::field::{format_rational, Field, Rational};
use super::matrix::Matrix;
use super::poly::Poly;
use crate::numeric;

/// A root that is either an exact rational or a floating-point approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum Root {
    Exact(Rational),
    Approx(Complex64),
}

impl Root {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Root::Exact(q) => Complex64::new(Field::to_f64(q), 0.0),
            Root::Approx(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Root::Exact(q) => Some(q),
            Root::Approx(_) => None,
        }
    }

    /// Total order used for reports: by real part, then imaginary part.
    pub fn sort_key(&self) -> (f64, f64) {
        let z = self.to_complex();
        (z.re, z.im)
    }
}

impl std::fmt::Display for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Root::Exact(q) => f.write_str(&format_rational(q)),
            Root::Approx(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Root::Approx(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

pub(crate) fn sort_roots(v: &mut [Root]) {
    v.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap_or(std::cmp::Ordering::Equal));
}

/// Distinct roots of a square-free polynomial.
pub fn roots_squarefree(s: &Poly<Rational>) -> Vec<Root> {
    let mut rest = s.monic();
    let mut out = Vec::new();
    if rest.degree() < 1 {
        return out;
    }
    for z in float_roots(&rest.to_f64()) {
        if z.im.abs() > 1e-6 * z.norm().max(1.0) {
            continue;
        }
        if let Some(q) = rational_near(z.re, &rest) {
            rest = rest.exact_div(&Poly::linear_root(q.clone())).expect("root divides");
            out.push(Root::Exact(q));
        }
    }
    out.extend(float_roots(&rest.to_f64()).into_iter().map(Root::Approx));
    sort_roots(&mut out);
    out
}

/// Roots with multiplicities, via square-free decomposition.
pub fn exact_roots(p: &Poly<Rational>) -> Vec<(Root, usize)> {
    let mut out: Vec<(Root, usize)> = p
        .squarefree()
        .into_iter()
        .flat_map(|(s, k)| roots_squarefree(&s).into_iter().map(move |r| (r, k)))
        .collect();
    out.sort_by(|a, b| a.0.sort_key().partial_cmp(&b.0.sort_key()).unwrap_or(std::cmp::Ordering::Equal));
    out
}

/// Continued-fraction convergents of `x`, each tested exactly as a root.
fn rational_near(x: f64, p: &Poly<Rational>) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut t = x;
    for _ in 0..40 {
        let a = t.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        let cand = Rational::new(h2.clone(), k2.clone());
        if p.eval(&cand).is_zero() {
            return Some(cand);
        }
        if k2.to_f64().unwrap_or(f64::INFINITY) > 1e12 {
            break;
        }
        let frac = t - a;
        if frac.abs() < 1e-15 {
            break;
        }
        t = 1.0 / frac;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    None
}

/// Roots of a float polynomial: companion eigenvalues plus Newton polish.
pub(crate) fn float_roots(p: &Poly<f64>) -> Vec<Complex64> {
    let d = p.degree();
    if d < 1 {
        return Vec::new();
    }
    let d = d as usize;
    let lead = *p.lead().unwrap();
    let comp = Matrix::from_fn(d, d, |i, j| {
        if i == 0 {
            -p.coeff(d - 1 - j) / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let mut z = numeric::eigenvalues(&comp).expect("companion eigenvalues");
    for r in z.iter_mut() {
        *r = newton_polish(p, *r);
    }
    z
}

fn newton_polish(p: &Poly<f64>, mut z: Complex64) -> Complex64 {
    let eval = |z: Complex64| {
        let (mut v, mut dv) = (Complex64::zero(), Complex64::zero());
        for c in p.coeffs().iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        (v, dv)
    };
    let (mut v, _) = eval(z);
    for _ in 0..8 {
        let (_, dv) = eval(z);
        if dv.norm() == 0.0 {
            break;
        }
        let cand = z - v / dv;
        let (vc, _) = eval(cand);
        if vc.norm() >= v.norm() {
            break;
        }
        z = cand;
        v = vc;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::field::rat;

    type P = Poly<Rational>;

    #[test]
    fn rational_roots_are_exact() {
        // (λ - 1/3)(λ + 2)(λ² + 1)
        let p = &(&P::new(vec![rat(-1, 3), rat(1, 1)]) * &P::from_i64s(&[2, 1])) * &P::from_i64s(&[1, 0, 1]);
        let r = roots_squarefree(&p);
        assert_eq!(r.len(), 4);
        assert!(r.contains(&Root::Exact(rat(1, 3))));
        assert!(r.contains(&Root::Exact(rat(-2, 1))));
        let approx: Vec<_> = r.iter().filter(|x| x.as_exact().is_none()).collect();
        assert_eq!(approx.len(), 2);
        for a in approx {
            assert!((a.to_complex().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn multiplicities_from_squarefree_parts() {
        let p = &P::from_i64s(&[-2, 1]).pow(3) * &P::from_i64s(&[0, 1]);
        let r = exact_roots(&p);
        assert_eq!(r, vec![(Root::Exact(rat(0, 1)), 1), (Root::Exact(rat(2, 1)), 3)]);
    }

    #[test]
    fn cubic_roots_match_closed_form() {
        // λ³ - λ² + 1: Cardano on the depressed cubic t³ + pt + q, λ = t + 1/3.
        let (p, q) = (-1.0f64 / 3.0, 25.0f64 / 27.0);
        let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
        let u = (-q / 2.0 + disc.sqrt()).cbrt();
        let v = (-q / 2.0 - disc.sqrt()).cbrt();
        let real = u + v + 1.0 / 3.0;
        let r = roots_squarefree(&P::from_i64s(&[1, 0, -1, 1]));
        assert!(r.iter().any(|x| (x.to_complex() - Complex64::new(real, 0.0)).norm() < 1e-12));
        let re = -(u + v) / 2.0 + 1.0 / 3.0;
        let im = (u - v) * 3f64.sqrt() / 2.0;
        assert!(r.iter().any(|x| (x.to_complex() - Complex64::new(re, im)).norm() < 1e-12));
    }
}
