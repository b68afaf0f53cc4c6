//! Rosenbrock system polynomials `S(λ) = [[P(λ), C], [B, A - λE]]`, their
//! transfer functions, minimality analysis and a realization builder.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric;
use crate::polymat::{
    smith_form, sort_roots, Field, FieldMode, Matrix, Poly, PolyMatrix, Rational, RationalFn, RationalMatrix,
    Root,
};

/// State-space data `(P, A, E, B, C)` with `P` of size `n`, state size `r`
/// and degree `m = max(deg P, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RosenbrockSystem<F> {
    p: PolyMatrix<F>,
    a: Matrix<F>,
    e: Matrix<F>,
    b: Matrix<F>,
    c: Matrix<F>,
    m: usize,
}

impl<F: Field> RosenbrockSystem<F> {
    pub fn new(p: PolyMatrix<F>, a: Matrix<F>, e: Matrix<F>, b: Matrix<F>, c: Matrix<F>) -> Result<Self> {
        let n = p.rows();
        let r = a.rows();
        let dim = |name: &str, m: &Matrix<F>, rows: usize, cols: usize| {
            if (m.rows(), m.cols()) == (rows, cols) {
                Ok(())
            } else {
                Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )))
            }
        };
        if !p.is_square() {
            return Err(Error::DimensionMismatch(format!("P is {}x{}", p.rows(), p.cols())));
        }
        dim("A", &a, r, r)?;
        dim("E", &e, r, r)?;
        dim("B", &b, r, n)?;
        dim("C", &c, n, r)?;
        let m = p.degree().max(1) as usize;
        Ok(RosenbrockSystem { p, a, e, b, c, m })
    }

    /// A pure matrix polynomial (`r = 0`).
    pub fn from_polynomial(p: PolyMatrix<F>) -> Result<Self> {
        let n = p.rows();
        Self::new(p, Matrix::zeros(0, 0), Matrix::zeros(0, 0), Matrix::zeros(0, n), Matrix::zeros(n, 0))
    }

    pub fn n(&self) -> usize {
        self.p.rows()
    }
    pub fn r(&self) -> usize {
        self.a.rows()
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn p(&self) -> &PolyMatrix<F> {
        &self.p
    }
    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }
    pub fn e(&self) -> &Matrix<F> {
        &self.e
    }
    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }
    pub fn c(&self) -> &Matrix<F> {
        &self.c
    }

    /// Coefficient `A_j` of `P`, zero beyond its degree.
    pub fn coeff(&self, j: usize) -> Matrix<F> {
        self.p.coeff(j)
    }

    /// Size of a Fiedler pencil of this system.
    pub fn pencil_size(&self) -> usize {
        self.n() * self.m + self.r()
    }

    pub fn map<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> RosenbrockSystem<G> {
        RosenbrockSystem {
            p: self.p.map(&mut f),
            a: self.a.map(&mut f),
            e: self.e.map(&mut f),
            b: self.b.map(&mut f),
            c: self.c.map(&mut f),
            m: self.m,
        }
    }

    pub fn to_f64(&self) -> RosenbrockSystem<f64> {
        self.map(Field::to_f64)
    }

    /// The exact system, or `None` in float mode.
    pub fn to_exact(&self) -> Option<RosenbrockSystem<Rational>> {
        (F::MODE == FieldMode::Exact).then(|| self.map(|x| x.to_exact().expect("exact scalar")))
    }

    /// `S(λ)` as an `(n+r)×(n+r)` matrix polynomial.
    pub fn assemble_system_matrix(&self) -> PolyMatrix<F> {
        let (n, r) = (self.n(), self.r());
        let mut s = PolyMatrix::zeros(n + r, n + r);
        s.set_block(0, 0, &self.p);
        s.set_block(0, n, &PolyMatrix::constant(&self.c));
        s.set_block(n, 0, &PolyMatrix::constant(&self.b));
        s.set_block(n, n, &self.state_pencil(true));
        s
    }

    /// `A - λE` when `negate` is set, otherwise `λE - A`.
    pub fn state_pencil(&self, negate: bool) -> PolyMatrix<F> {
        if negate {
            PolyMatrix::pencil(&-&self.e, &self.a)
        } else {
            PolyMatrix::pencil(&self.e, &-&self.a)
        }
    }

    fn e_is_singular(&self) -> bool {
        F::rank(&self.e) < self.r()
    }

    /// Input and output decoupling zeros.
    pub fn decoupling_zeros(&self) -> Result<DecouplingReport> {
        if self.e_is_singular() {
            return Err(Error::SingularE);
        }
        if self.r() == 0 {
            return Ok(DecouplingReport::default());
        }
        match self.to_exact() {
            Some(sys) => Ok(exact_decoupling(&sys)),
            None => float_decoupling(&self.to_f64()),
        }
    }

    /// Controllability and observability test.
    pub fn is_minimal(&self) -> Result<Minimality> {
        let report = self.decoupling_zeros()?;
        Ok(Minimality { minimal: report.input.is_empty() && report.output.is_empty(), report })
    }
}

impl RosenbrockSystem<Rational> {
    /// `G(λ) = P(λ) + C (λE - A)⁻¹ B` via the adjugate of `λE - A`.
    pub fn transfer_function(&self) -> Result<RationalMatrix> {
        let (n, r) = (self.n(), self.r());
        if r == 0 {
            return Ok(RationalMatrix::from_poly_matrix(&self.p));
        }
        let l = self.state_pencil(false);
        let dl = l.det()?;
        if dl.is_zero() {
            return Err(Error::SingularStatePencil);
        }
        let adj = adjugate(&l)?;
        let num = &(&PolyMatrix::constant(&self.c) * &adj) * &PolyMatrix::constant(&self.b);
        Ok(RationalMatrix::from_fn(n, n, |i, j| {
            RationalFn::new(&(&self.p[(i, j)] * &dl) + &num[(i, j)], dl.clone())
        }))
    }
}

fn adjugate(m: &PolyMatrix<Rational>) -> Result<PolyMatrix<Rational>> {
    let k = m.rows();
    if k == 1 {
        return Ok(PolyMatrix::identity(1));
    }
    let mut out = PolyMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let minor = PolyMatrix::from_fn(k - 1, k - 1, |a, b| {
                m[(if a < j { a } else { a + 1 }, if b < i { b } else { b + 1 })].clone()
            });
            let d = minor.det()?;
            out[(i, j)] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    Ok(out)
}

/// Rank drops of `[A - λE, B]` (input) and `[A - λE; C]` (output).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DecouplingReport {
    pub input: Vec<Root>,
    pub output: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimality {
    pub minimal: bool,
    /// The failing eigenvalues, i.e. the decoupling zeros.
    pub report: DecouplingReport,
}

// The invariant factors of M(λ) vanish exactly where rank M(λ) < r, which
// covers irrational eigenvalues without leaving ℚ[λ].
fn exact_decoupling(sys: &RosenbrockSystem<Rational>) -> DecouplingReport {
    let a_le = sys.state_pencil(true);
    let (n, r) = (sys.n(), sys.r());
    let mut m = PolyMatrix::zeros(r, r + n);
    m.set_block(0, 0, &a_le);
    m.set_block(0, r, &PolyMatrix::constant(sys.b()));
    let mut nn = PolyMatrix::zeros(r + n, r);
    nn.set_block(0, 0, &a_le);
    nn.set_block(r, 0, &PolyMatrix::constant(sys.c()));
    let zeros_of = |pm: &PolyMatrix<Rational>| {
        let prod = smith_form(pm).invariant_polys.iter().fold(Poly::one(), |acc, p| &acc * p);
        let mut v: Vec<Root> =
            prod.squarefree().iter().flat_map(|(s, _)| crate::polymat::roots_squarefree(s)).collect();
        sort_roots(&mut v);
        v
    };
    DecouplingReport { input: zeros_of(&m), output: zeros_of(&nn) }
}

/// Eigenvalues of `(A, E)` clustered with the zero-matching tolerance.
pub(crate) fn state_eigenvalues(sys: &RosenbrockSystem<f64>) -> Result<Vec<(Complex64, usize)>> {
    let ev = numeric::generalized_eigenvalues(sys.a(), sys.e())?;
    Ok(crate::eigen::cluster(ev.into_iter().map(|(a, b)| a / b).collect()))
}

fn float_decoupling(sys: &RosenbrockSystem<f64>) -> Result<DecouplingReport> {
    let (n, r) = (sys.n(), sys.r());
    let mut report = DecouplingReport::default();
    for (z, _) in state_eigenvalues(sys)? {
        let entry = |i: usize, j: usize| Complex64::new(sys.a()[(i, j)], 0.0) - z * sys.e()[(i, j)];
        let mut m = Vec::with_capacity(r * (r + n));
        for i in 0..r {
            m.extend((0..r).map(|j| entry(i, j)));
            m.extend((0..n).map(|j| Complex64::new(sys.b()[(i, j)], 0.0)));
        }
        if numeric::rank_complex(r, r + n, &m) < r {
            report.input.push(Root::Approx(z));
        }
        let mut nn = Vec::with_capacity((r + n) * r);
        for i in 0..r {
            nn.extend((0..r).map(|j| entry(i, j)));
        }
        for i in 0..n {
            nn.extend((0..r).map(|j| Complex64::new(sys.c()[(i, j)], 0.0)));
        }
        if numeric::rank_complex(r + n, r, &nn) < r {
            report.output.push(Root::Approx(z));
        }
    }
    Ok(report)
}

/// One rational term `s(λ) · C_j` of a rational eigenvalue problem.
#[derive(Clone, Debug, PartialEq)]
pub struct RepTerm<F> {
    pub num: Poly<F>,
    pub den: Poly<F>,
    pub matrix: Matrix<F>,
}

/// `G(λ) = P(λ) + Σ_j (num_j / den_j) C_j` with degree-1 denominators.
#[derive(Clone, Debug, PartialEq)]
pub struct RepSpec<F> {
    pub p: PolyMatrix<F>,
    pub terms: Vec<RepTerm<F>>,
}

impl RepSpec<Rational> {
    /// The rational matrix the spec describes.
    pub fn rational_matrix(&self) -> RationalMatrix {
        let mut g = RationalMatrix::from_poly_matrix(&self.p);
        for t in &self.terms {
            let s = RationalFn::new(t.num.clone(), t.den.clone());
            let term = RationalMatrix::from_fn(g.rows(), g.cols(), |i, j| {
                &s * &RationalFn::from_poly(Poly::constant(t.matrix[(i, j)].clone()))
            });
            g = &g + &term;
        }
        g
    }
}

#[derive(Clone, Debug)]
pub struct Realization<F> {
    pub system: RosenbrockSystem<F>,
    pub minimal: bool,
    /// Indices of terms skipped because their matrix is zero.
    pub dropped_terms: Vec<usize>,
}

/// Build a state-space realization of a simple-pole spec.
///
/// Each term `s(λ) C` is split as `q(λ) + c / (λ - p)`; `q C` joins `P`, and
/// a rank factorization `C = L R` contributes `A = p I`, `E = I`,
/// `B = c R`, `C = L`.
pub fn realize<F: Field>(spec: &RepSpec<F>) -> Result<Realization<F>> {
    let n = spec.p.rows();
    let mut p = spec.p.clone();
    let mut dropped = Vec::new();
    let mut blocks: Vec<(F, Matrix<F>, Matrix<F>)> = Vec::new();
    for (j, t) in spec.terms.iter().enumerate() {
        if t.den.degree() != 1 {
            return Err(Error::DenominatorDegree { term: j, degree: t.den.degree() });
        }
        if (t.matrix.rows(), t.matrix.cols()) != (n, n) {
            return Err(Error::DimensionMismatch(format!("term {j} matrix must be {n}x{n}")));
        }
        if t.matrix.is_zero() {
            log::warn!("term {j} has a zero matrix and is dropped");
            dropped.push(j);
            continue;
        }
        let (q, rem) = t.num.div_rem(&t.den);
        let (d1, d0) = (t.den.coeff(1), t.den.coeff(0));
        p = &p + &PolyMatrix::constant(&t.matrix).scale_poly(&q);
        let c = rem.coeff(0) / d1.clone();
        if c.is_zero() {
            continue;
        }
        let pole = -d0 / d1;
        let (l, r) = F::rank_factor(&t.matrix);
        blocks.push((pole, l, r.scale(&c)));
    }
    let r: usize = blocks.iter().map(|b| b.1.cols()).sum();
    let mut a = Matrix::zeros(r, r);
    let mut bm = Matrix::zeros(r, n);
    let mut cm = Matrix::zeros(n, r);
    let mut off = 0;
    for (pole, l, rr) in &blocks {
        let rho = l.cols();
        a.set_block(off, off, &Matrix::identity(rho).scale(pole));
        bm.set_block(off, 0, rr);
        cm.set_block(0, off, l);
        off += rho;
    }
    let system = RosenbrockSystem::new(p, a, Matrix::identity(r), bm, cm)?;
    let minimal = system.is_minimal()?.minimal;
    Ok(Realization { system, minimal, dropped_terms: dropped })
}
