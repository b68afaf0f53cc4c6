//! Generalized eigenvalues of system pencils, zero/pole classification and
//! the realize → linearize → solve pipeline for rational eigenvalue
//! problems.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fiedler::{pencil_algorithm1, pencil_direct, Bijection, SystemPencil};
use crate::numeric;
use crate::polymat::{
    exact_roots, roots_squarefree, smith_mcmillan, sort_roots, Field, Matrix, Poly, PolyMatrix, Rational, Root,
};
use crate::system::{realize, state_eigenvalues, DecouplingReport, RepSpec, RosenbrockSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Numeric,
}

/// Two values coincide when `|a - b| <= 1e-8 · max(1, |a|, |b|)`.
pub fn coincide(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-8 * 1f64.max(a.norm()).max(b.norm())
}

/// Group values that coincide, returning cluster means and sizes sorted by
/// real then imaginary part.
pub fn cluster(values: Vec<Complex64>) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for v in values {
        match groups.iter_mut().find(|g| g.iter().any(|&w| coincide(v, w))) {
            Some(g) => g.push(v),
            None => groups.push(vec![v]),
        }
    }
    let mut out: Vec<(Complex64, usize)> = groups
        .into_iter()
        .map(|g| (g.iter().sum::<Complex64>() / g.len() as f64, g.len()))
        .collect();
    out.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap_or(std::cmp::Ordering::Equal));
    out
}

#[derive(Clone, Debug)]
pub struct GepResult {
    /// Distinct finite eigenvalues with algebraic multiplicities.
    pub finite_eigenvalues: Vec<(Root, usize)>,
    /// The λ-coefficient is singular.
    pub infinite_flag: bool,
    /// `det(λ·lead + const) ≡ 0`; the spectrum is undefined.
    pub singular: bool,
    pub backend: Backend,
    /// Exact determinant (exact backend only).
    pub det: Option<Poly<Rational>>,
}

impl GepResult {
    pub fn finite_count(&self) -> usize {
        self.finite_eigenvalues.iter().map(|e| e.1).sum()
    }
}

fn exact_pencil<F: Field>(p: &SystemPencil<F>) -> Result<SystemPencil<Rational>> {
    if p.lead.rows() > 0 && p.lead[(0, 0)].to_exact().is_none() {
        return Err(Error::ExactOnly);
    }
    Ok(p.map(|x| x.to_exact().expect("exact scalar")))
}

pub fn solve_gep<F: Field>(p: &SystemPencil<F>, backend: Backend) -> Result<GepResult> {
    if !p.lead.is_square() || p.lead.rows() != p.const_term.rows() || !p.const_term.is_square() {
        return Err(Error::DimensionMismatch("pencil coefficients must be square and equal-sized".into()));
    }
    let size = p.size();
    let infinite_flag = F::rank(&p.lead) < size;
    match backend {
        Backend::Exact => {
            let pe = exact_pencil(p)?;
            let det = pe.to_poly_matrix().det()?;
            let singular = det.is_zero();
            let finite_eigenvalues = if singular { Vec::new() } else { exact_roots(&det) };
            Ok(GepResult { finite_eigenvalues, infinite_flag, singular, backend, det: Some(det) })
        }
        Backend::Numeric => {
            let pf = p.to_f64();
            let a = -&pf.const_term;
            let pairs = numeric::generalized_eigenvalues(&a, &pf.lead)?;
            let scale = frob(&a).max(frob(&pf.lead)).max(1.0);
            let tiny = 1e3 * size as f64 * f64::EPSILON * scale;
            let singular = pairs.iter().any(|(al, be)| al.norm() <= tiny && be.norm() <= tiny);
            let finite: Vec<Complex64> = if singular {
                Vec::new()
            } else {
                pairs
                    .iter()
                    .filter(|(al, be)| !infinite_flag || be.norm() > 1e-8 * al.norm())
                    .map(|(al, be)| al / be)
                    .collect()
            };
            let finite_eigenvalues = cluster(finite).into_iter().map(|(z, k)| (Root::Approx(z), k)).collect();
            Ok(GepResult { finite_eigenvalues, infinite_flag, singular, backend, det: None })
        }
    }
}

fn frob(m: &Matrix<f64>) -> f64 {
    let mut s = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            s += m[(i, j)] * m[(i, j)];
        }
    }
    s.sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ZeroClass {
    Eigenvalue,
    Eigenpole,
}

/// Whether reported zeros are transmission zeros of `G` (minimal
/// realization) or only invariant zeros of `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    Transmission,
    Invariant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroEntry {
    pub value: Root,
    pub class: ZeroClass,
    pub multiplicity: usize,
    /// Partial multiplicities as a zero (exact backend only).
    pub ind_phi: Option<Vec<usize>>,
    /// Partial multiplicities as a pole, when the value is a pole of `G`.
    pub ind_psi: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleEntry {
    pub value: Root,
    pub multiplicity: usize,
    pub ind_psi: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub zeros: Vec<ZeroEntry>,
    pub poles: Vec<PoleEntry>,
    pub decoupling: DecouplingReport,
    pub minimal: bool,
    pub zero_kind: ZeroKind,
    pub backend: Backend,
    pub sigma: Bijection,
    pub pencil_size: usize,
    pub infinite_flag: bool,
    /// `c` in `det 𝕃_σ = c · det S` (exact backend only).
    pub det_constant: Option<Rational>,
}

impl ZeroReport {
    pub fn eigenvalues(&self) -> Vec<&Root> {
        self.zeros.iter().filter(|z| z.class == ZeroClass::Eigenvalue).map(|z| &z.value).collect()
    }
    pub fn eigenpoles(&self) -> Vec<&Root> {
        self.zeros.iter().filter(|z| z.class == ZeroClass::Eigenpole).map(|z| &z.value).collect()
    }
}

/// Fiedler pencil for `σ`, via the splicing algorithm when `m >= 2`.
pub fn fiedler_pencil<F: Field>(sys: &RosenbrockSystem<F>, sigma: &Bijection) -> Result<SystemPencil<F>> {
    if sys.m() >= 2 {
        pencil_algorithm1(sys, sigma)
    } else {
        pencil_direct(sys, sigma)
    }
}

/// Zeros of `S` from a Fiedler pencil, split into eigenvalues and eigenpoles
/// by membership in the spectrum of `λE - A`.
pub fn classify_zeros<F: Field>(
    sys: &RosenbrockSystem<F>,
    sigma: Option<&Bijection>,
    backend: Backend,
) -> Result<ZeroReport> {
    let minimality = sys.is_minimal()?;
    let sigma = sigma.cloned().unwrap_or_else(|| Bijection::first_companion(sys.m()));
    let pencil = fiedler_pencil(sys, &sigma)?;
    let gep = solve_gep(&pencil, backend)?;
    if gep.singular {
        return Err(Error::SingularPencil);
    }
    let zero_kind = if minimality.minimal {
        ZeroKind::Transmission
    } else {
        log::warn!("realization is not minimal; reporting invariant zeros of S");
        ZeroKind::Invariant
    };
    let mut report = ZeroReport {
        zeros: Vec::new(),
        poles: Vec::new(),
        decoupling: minimality.report,
        minimal: minimality.minimal,
        zero_kind,
        backend,
        sigma,
        pencil_size: pencil.size(),
        infinite_flag: gep.infinite_flag,
        det_constant: None,
    };
    match backend {
        Backend::Exact => {
            let sys = sys.to_exact().ok_or(Error::ExactOnly)?;
            classify_exact(&sys, gep.det.as_ref().expect("exact determinant"), &mut report)?;
        }
        Backend::Numeric => classify_numeric(&sys.to_f64(), &gep, &mut report)?,
    }
    Ok(report)
}

/// Pairwise coprime, square-free, monic refinement of the square-free parts
/// of `polys`: every input factors over the basis with uniform exponents.
pub fn coprime_basis(polys: &[Poly<Rational>]) -> Vec<Poly<Rational>> {
    let mut basis: Vec<Poly<Rational>> = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        for (s, _) in p.squarefree() {
            let mut g = s;
            let mut next = Vec::with_capacity(basis.len() + 2);
            for b in basis.drain(..) {
                let h = g.gcd(&b);
                if h.degree() > 0 {
                    let rest = b.exact_div(&h).expect("gcd divides");
                    if rest.degree() > 0 {
                        next.push(rest);
                    }
                    g = g.exact_div(&h).expect("gcd divides");
                    next.push(h);
                } else {
                    next.push(b);
                }
            }
            if g.degree() > 0 {
                next.push(g.monic());
            }
            basis = next;
        }
    }
    basis
}

fn classify_exact(sys: &RosenbrockSystem<Rational>, det_pencil: &Poly<Rational>, report: &mut ZeroReport) -> Result<()> {
    let det_s = sys.assemble_system_matrix().det()?;
    if det_s.is_zero() {
        return Err(Error::SingularPencil);
    }
    let (c, rem) = det_pencil.div_rem(&det_s);
    report.det_constant = (rem.is_zero() && c.degree() == 0).then(|| c.coeff(0));
    let det_l = sys.state_pencil(false).det()?;
    let sm = smith_mcmillan(&sys.transfer_function()?);
    let mut inputs = vec![det_pencil.clone(), det_l.clone()];
    inputs.extend(sm.numerators.iter().cloned());
    inputs.extend(sm.denominators.iter().cloned());
    for b in coprime_basis(&inputs) {
        let e_det = det_pencil.multiplicity_of(&b);
        let e_l = det_l.multiplicity_of(&b);
        let ind_phi: Vec<usize> = sm.numerators.iter().map(|p| p.multiplicity_of(&b)).collect();
        let ind_psi: Vec<usize> = sm.denominators.iter().rev().map(|p| p.multiplicity_of(&b)).collect();
        let pole_order: usize = ind_psi.iter().sum();
        for root in roots_squarefree(&b) {
            if e_det > 0 {
                report.zeros.push(ZeroEntry {
                    value: root.clone(),
                    class: if e_l > 0 { ZeroClass::Eigenpole } else { ZeroClass::Eigenvalue },
                    multiplicity: e_det,
                    ind_phi: Some(ind_phi.clone()),
                    ind_psi: (pole_order > 0).then(|| ind_psi.clone()),
                });
            }
            if pole_order > 0 {
                report.poles.push(PoleEntry { value: root, multiplicity: pole_order, ind_psi: Some(ind_psi.clone()) });
            }
        }
    }
    sort_entries(report);
    Ok(())
}

fn classify_numeric(sys: &RosenbrockSystem<f64>, gep: &GepResult, report: &mut ZeroReport) -> Result<()> {
    let spec_l = if sys.r() == 0 { Vec::new() } else { state_eigenvalues(sys)? };
    for (z, k) in &gep.finite_eigenvalues {
        let zc = z.to_complex();
        let pole = spec_l.iter().any(|(l, _)| coincide(zc, *l));
        report.zeros.push(ZeroEntry {
            value: z.clone(),
            class: if pole { ZeroClass::Eigenpole } else { ZeroClass::Eigenvalue },
            multiplicity: *k,
            ind_phi: None,
            ind_psi: None,
        });
    }
    let decoupled: Vec<Complex64> =
        report.decoupling.input.iter().chain(&report.decoupling.output).map(Root::to_complex).collect();
    for (l, k) in spec_l {
        if !decoupled.iter().any(|&d| coincide(d, l)) {
            report.poles.push(PoleEntry { value: Root::Approx(l), multiplicity: k, ind_psi: None });
        }
    }
    sort_entries(report);
    Ok(())
}

fn sort_entries(report: &mut ZeroReport) {
    let key = |r: &Root| r.sort_key();
    report.zeros.sort_by(|a, b| key(&a.value).partial_cmp(&key(&b.value)).unwrap_or(std::cmp::Ordering::Equal));
    report.poles.sort_by(|a, b| key(&a.value).partial_cmp(&key(&b.value)).unwrap_or(std::cmp::Ordering::Equal));
}

/// Realize the spec, build the Fiedler pencil for `σ` and classify its zeros.
pub fn solve_rep<F: Field>(spec: &RepSpec<F>, sigma: Option<&Bijection>, backend: Backend) -> Result<ZeroReport> {
    let real = realize(spec)?;
    classify_zeros(&real.system, sigma, backend)
}

/// Split the roots of `φ_G` into eigenvalues (`ψ_G ≠ 0`) and eigenpoles
/// (`ψ_G = 0`), exactly through `gcd(φ_G, ψ_G)`.
pub fn eig_eip_split(zero_poly: &Poly<Rational>, pole_poly: &Poly<Rational>) -> (Vec<Root>, Vec<Root>) {
    let g = zero_poly.gcd(pole_poly);
    let mut rest = zero_poly.monic();
    loop {
        let h = rest.gcd(pole_poly);
        if h.degree() < 1 {
            break;
        }
        rest = rest.exact_div(&h).expect("gcd divides");
    }
    let distinct = |p: &Poly<Rational>| {
        let mut v: Vec<Root> = p.squarefree().iter().flat_map(|(s, _)| roots_squarefree(s)).collect();
        sort_roots(&mut v);
        v
    };
    (distinct(&rest), distinct(&g))
}

/// Tolerance-based variant of [`eig_eip_split`] on root lists.
pub fn eig_eip_split_numeric(zeros: &[Complex64], poles: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    zeros.iter().partition(|&&z| !poles.iter().any(|&p| coincide(z, p)))
}

/// Evaluate a pencil determinant numerically at a point, for spot checks.
pub fn pencil_det_at(p: &PolyMatrix<Rational>, x: &Rational) -> Rational {
    p.eval(x).det()
}
