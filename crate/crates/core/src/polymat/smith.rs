//! Smith and Smith-McMillan forms over ℚ[λ].
//!
//! Reduction uses elementary row and column operations with a gcd-pivot
//! strategy: the pivot is a nonzero entry of minimal degree, ties broken by
//! the lowest (row, col) index in row-major order. Invariant factors of a
//! nonsingular square matrix skip the transforms and are computed modulo
//! the determinant instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::Rational;
use super::poly::Poly;
use super::polymatrix::PolyMatrix;
use super::ratfn::RationalMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm {
    /// Number of unit invariant factors.
    pub identity_count: usize,
    /// Non-unit invariant factors φ₁ | φ₂ | …, all monic.
    pub invariant_polys: Vec<Poly<Rational>>,
    pub zero_rows: usize,
    pub zero_cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.identity_count + self.invariant_polys.len()
    }

    /// All nonzero invariant factors, units included.
    pub fn invariant_factors(&self) -> Vec<Poly<Rational>> {
        let mut v = vec![Poly::one(); self.identity_count];
        v.extend(self.invariant_polys.iter().cloned());
        v
    }

    fn from_diagonal(diag: &[Poly<Rational>], rows: usize, cols: usize) -> Self {
        let nonzero: Vec<_> = diag.iter().filter(|p| !p.is_zero()).cloned().collect();
        let rank = nonzero.len();
        let identity_count = nonzero.iter().take_while(|p| p.is_one()).count();
        SmithForm {
            identity_count,
            invariant_polys: nonzero[identity_count..].to_vec(),
            zero_rows: rows - rank,
            zero_cols: cols - rank,
        }
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: PolyMatrix<Rational>,
    pub v: PolyMatrix<Rational>,
    /// Diagonal of `D`, zeros included.
    pub diagonal: Vec<Poly<Rational>>,
}

pub fn smith_form(m: &PolyMatrix<Rational>) -> SmithForm {
    if m.is_square() && m.rows() > 1 {
        let d = m.det().expect("square");
        if d.degree() > 0 {
            let diag: Vec<_> = reduce_mod(m.clone(), &d.monic()).iter().map(|s| s.gcd(&d).monic()).collect();
            return SmithForm::from_diagonal(&diag, m.rows(), m.cols());
        }
        if !d.is_zero() {
            return SmithForm::from_diagonal(&vec![Poly::one(); m.rows()], m.rows(), m.cols());
        }
    }
    let diag = reduce(m.clone(), None);
    SmithForm::from_diagonal(&diag, m.rows(), m.cols())
}

pub fn smith_decomposition(m: &PolyMatrix<Rational>) -> SmithDecomposition {
    let mut tr = (PolyMatrix::identity(m.rows()), PolyMatrix::identity(m.cols()));
    let diagonal = reduce(m.clone(), Some(&mut tr));
    SmithDecomposition { u: tr.0, v: tr.1, diagonal }
}

type Transforms = (PolyMatrix<Rational>, PolyMatrix<Rational>);

fn reduce(mut a: PolyMatrix<Rational>, mut tr: Option<&mut Transforms>) -> Vec<Poly<Rational>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut diag = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            let mut best: Option<(isize, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let d = a[(i, j)].degree();
                    if d >= 0 && best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                diag.resize(rows.min(cols), Poly::zero());
                return diag;
            };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            if let Some(t) = tr.as_deref_mut() {
                t.0.swap_rows(k, pi);
                t.1.swap_cols(k, pj);
            }
            let inv = Poly::constant(Rational::from_integer(1.into()) / a[(k, k)].lead().unwrap().clone());
            row_axpy(&mut a, tr.as_deref_mut(), k, k, &(&inv - &Poly::one()));

            let piv = a[(k, k)].clone();
            let mut dirty = false;
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, k)].div_rem(&piv);
                row_axpy(&mut a, tr.as_deref_mut(), i, k, &-q);
                dirty |= !r.is_zero();
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(k, j)].div_rem(&piv);
                col_axpy(&mut a, tr.as_deref_mut(), j, k, &-q);
                dirty |= !r.is_zero();
            }
            for i in k + 1..rows {
                normalize_row(&mut a, tr.as_deref_mut(), i);
            }
            for j in k + 1..cols {
                normalize_col(&mut a, tr.as_deref_mut(), j);
            }
            if dirty {
                continue;
            }
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| a[(i, j)].div_rem(&piv).1.degree() >= 0));
            match offender {
                Some(i) => row_axpy(&mut a, tr.as_deref_mut(), k, i, &Poly::one()),
                None => break,
            }
        }
        diag.push(a[(k, k)].clone());
    }
    diag
}

/// Unimodular `[[s, t], [-b/g, a/g]]` taking `(a, b)` to `(g, 0)`. Falls back
/// to a plain subtraction when `a | b` so settled rows stay put.
fn combiner(a: &Poly<Rational>, b: &Poly<Rational>) -> [Poly<Rational>; 4] {
    if !a.is_zero() {
        let (q, r) = b.div_rem(a);
        if r.is_zero() {
            return [Poly::one(), Poly::zero(), -q, Poly::one()];
        }
    }
    let (g, s, t) = ext_gcd(a, b);
    [s, t, -b.exact_div(&g).unwrap(), a.exact_div(&g).unwrap()]
}

/// `(g, s, t)` with `g = s·a + t·b` the monic gcd.
fn ext_gcd(a: &Poly<Rational>, b: &Poly<Rational>) -> (Poly<Rational>, Poly<Rational>, Poly<Rational>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        (r0, r1) = (r1, r.monic());
        let c = r.lead().cloned().unwrap_or_else(Rational::one).recip();
        (s0, s1) = (s1, s2.scale(&c));
        (t0, t1) = (t1, t2.scale(&c));
    }
    let c = r0.lead().cloned().unwrap_or_else(Rational::one).recip();
    (r0.scale(&c), s0.scale(&c), t0.scale(&c))
}

// Invariant factors of a nonsingular matrix with det `d`. The columns
// `d·e_i` always lie in the column lattice, so entries are kept reduced
// modulo `d` and the factors recovered as `gcd(s_i, d)`. Each elimination
// is one unimodular 2×2 combination built from an extended gcd.
fn reduce_mod(mut a: PolyMatrix<Rational>, d: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let n = a.rows();
    let reduce_entry = |p: &mut Poly<Rational>| {
        if p.degree() >= d.degree() {
            *p = p.div_rem(d).1;
        }
    };
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        let best = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[(i, j)].is_zero())
            .min_by_key(|&(i, j)| (a[(i, j)].degree(), i, j));
        let Some((pi, pj)) = best else {
            diag.resize(n, Poly::zero());
            return diag;
        };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);
        loop {
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let [s, t, p, q] = combiner(&a[(k, k)], &a[(i, k)]);
                for j in k..n {
                    let (u, v) = (a[(k, j)].clone(), a[(i, j)].clone());
                    a[(k, j)] = &(&s * &u) + &(&t * &v);
                    a[(i, j)] = &(&p * &u) + &(&q * &v);
                    reduce_entry(&mut a[(k, j)]);
                    reduce_entry(&mut a[(i, j)]);
                }
            }
            let mut clean = true;
            for j in k + 1..n {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let [s, t, p, q] = combiner(&a[(k, k)], &a[(k, j)]);
                for i in k..n {
                    let (u, v) = (a[(i, k)].clone(), a[(i, j)].clone());
                    a[(i, k)] = &(&s * &u) + &(&t * &v);
                    a[(i, j)] = &(&p * &u) + &(&q * &v);
                    reduce_entry(&mut a[(i, k)]);
                    reduce_entry(&mut a[(i, j)]);
                }
                clean &= (k + 1..n).all(|i| a[(i, k)].is_zero());
            }
            if !clean {
                continue;
            }
            let piv = a[(k, k)].clone();
            if piv.is_zero() {
                break;
            }
            let offender = (k + 1..n).find(|&i| (k + 1..n).any(|j| !a[(i, j)].div_rem(&piv).1.is_zero()));
            match offender {
                Some(i) => {
                    for j in k..n {
                        let v = &a[(k, j)] + &a[(i, j)];
                        a[(k, j)] = v;
                    }
                }
                None => break,
            }
        }
        for i in k + 1..n {
            normalize_row(&mut a, None, i);
        }
        diag.push(a[(k, k)].clone());
    }
    diag
}

/// Rational content of a run of polynomials: gcd of the coefficient
/// numerators over the lcm of their denominators.
fn content<'a>(polys: impl Iterator<Item = &'a Poly<Rational>>) -> Option<Rational> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in polys.flat_map(|p| p.coeffs()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    (!num.is_zero()).then(|| Rational::new(num, den))
}

// Constant row and column scalings are unimodular; keeping rows and columns
// primitive stops coefficient growth during the Euclidean steps.
fn normalize_row(a: &mut PolyMatrix<Rational>, tr: Option<&mut Transforms>, i: usize) {
    let Some(c) = content((0..a.cols()).map(|j| &a[(i, j)])) else { return };
    if c.is_one() {
        return;
    }
    let s = Poly::constant(c.recip() - Rational::one());
    row_axpy(a, tr, i, i, &s);
}

fn normalize_col(a: &mut PolyMatrix<Rational>, tr: Option<&mut Transforms>, j: usize) {
    let Some(c) = content((0..a.rows()).map(|i| &a[(i, j)])) else { return };
    if c.is_one() {
        return;
    }
    let s = Poly::constant(c.recip() - Rational::one());
    col_axpy(a, tr, j, j, &s);
}

/// `row_dst += f * row_src` (with `dst == src` meaning scale by `1 + f`).
fn row_axpy(a: &mut PolyMatrix<Rational>, tr: Option<&mut Transforms>, dst: usize, src: usize, f: &Poly<Rational>) {
    fn apply(m: &mut PolyMatrix<Rational>, dst: usize, src: usize, f: &Poly<Rational>) {
        for j in 0..m.cols() {
            if !m[(src, j)].is_zero() {
                let v = &m[(dst, j)] + &(f * &m[(src, j)]);
                m[(dst, j)] = v;
            }
        }
    }
    if f.is_zero() {
        return;
    }
    apply(a, dst, src, f);
    if let Some(t) = tr {
        apply(&mut t.0, dst, src, f);
    }
}

/// `col_dst += f * col_src`.
fn col_axpy(a: &mut PolyMatrix<Rational>, tr: Option<&mut Transforms>, dst: usize, src: usize, f: &Poly<Rational>) {
    fn apply(m: &mut PolyMatrix<Rational>, dst: usize, src: usize, f: &Poly<Rational>) {
        for i in 0..m.rows() {
            if !m[(i, src)].is_zero() {
                let v = &m[(i, dst)] + &(f * &m[(i, src)]);
                m[(i, dst)] = v;
            }
        }
    }
    if f.is_zero() {
        return;
    }
    apply(a, dst, src, f);
    if let Some(t) = tr {
        apply(&mut t.1, dst, src, f);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmithMcMillanForm {
    pub numerators: Vec<Poly<Rational>>,
    pub denominators: Vec<Poly<Rational>>,
    pub zero_rows: usize,
    pub zero_cols: usize,
}

/// Smith-McMillan form together with the unimodular transforms of the
/// numerator matrix: `U · (d G) · V = diag(ε)`.
#[derive(Clone, Debug)]
pub struct SmithMcMillanDecomposition {
    pub form: SmithMcMillanForm,
    pub u: PolyMatrix<Rational>,
    pub v: PolyMatrix<Rational>,
}

pub fn smith_mcmillan(g: &RationalMatrix) -> SmithMcMillanForm {
    let d = g.common_denominator();
    let sf = smith_form(&g.scale_to_poly(&d));
    build_sm(&sf.invariant_factors(), &d, sf.zero_rows, sf.zero_cols)
}

pub fn smith_mcmillan_decomposition(g: &RationalMatrix) -> SmithMcMillanDecomposition {
    let d = g.common_denominator();
    let n = g.scale_to_poly(&d);
    let dec = smith_decomposition(&n);
    let eps: Vec<_> = dec.diagonal.iter().filter(|p| !p.is_zero()).cloned().collect();
    let rank = eps.len();
    let form = build_sm(&eps, &d, g.rows() - rank, g.cols() - rank);
    SmithMcMillanDecomposition { form, u: dec.u, v: dec.v }
}

fn build_sm(eps: &[Poly<Rational>], d: &Poly<Rational>, zero_rows: usize, zero_cols: usize) -> SmithMcMillanForm {
    let mut numerators = Vec::with_capacity(eps.len());
    let mut denominators = Vec::with_capacity(eps.len());
    for e in eps {
        let g = e.gcd(d);
        numerators.push(e.exact_div(&g).expect("gcd divides").monic());
        denominators.push(d.exact_div(&g).expect("gcd divides").monic());
    }
    SmithMcMillanForm { numerators, denominators, zero_rows, zero_cols }
}

/// `(φ_G, ψ_G)`: monic products of the numerators and denominators.
pub fn zero_pole_polys(sm: &SmithMcMillanForm) -> (Poly<Rational>, Poly<Rational>) {
    let phi = sm.numerators.iter().fold(Poly::one(), |acc, p| &acc * p);
    let psi = sm.denominators.iter().fold(Poly::one(), |acc, p| &acc * p);
    (phi.monic(), psi.monic())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexKind {
    Zero,
    Pole,
}

/// Partial multiplicities at `λ0`: `(γ₁,…,γ_k)` for zeros and
/// `(α_k,…,α₁)` for poles.
pub fn multiplicity_index(sm: &SmithMcMillanForm, lambda0: &Rational, kind: IndexKind) -> Vec<usize> {
    multiplicity_index_at_factor(sm, &Poly::linear_root(lambda0.clone()), kind)
}

/// Same as [`multiplicity_index`] for the roots of a square-free factor that
/// is coprime to the rest of each numerator and denominator.
pub fn multiplicity_index_at_factor(sm: &SmithMcMillanForm, factor: &Poly<Rational>, kind: IndexKind) -> Vec<usize> {
    match kind {
        IndexKind::Zero => sm.numerators.iter().map(|p| p.multiplicity_of(factor)).collect(),
        IndexKind::Pole => sm.denominators.iter().rev().map(|p| p.multiplicity_of(factor)).collect(),
    }
}
