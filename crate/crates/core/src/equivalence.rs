//! Auxiliary system polynomials, intermediate pencils and explicit unimodular
//! transforms certifying that a Fiedler pencil is a Rosenbrock linearization.

use crate::error::{Error, Result};
use crate::fiedler::{make_factor, pencil_direct, Bijection};
use crate::polymat::{Field, Matrix, Poly, PolyMatrix, Rational};
use crate::system::RosenbrockSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum AuxKind {
    Q,
    R,
    T,
    D,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuxMatrix<F> {
    pub kind: AuxKind,
    pub index: usize,
    pub matrix: PolyMatrix<F>,
}

fn lambda_times<F: Field>(x: &PolyMatrix<F>) -> PolyMatrix<F> {
    x.scale_poly(&Poly::lambda())
}

/// `𝒬_i`, `ℛ_i`, `𝒯_i` (for `1 ≤ i ≤ m-1`) or `𝒟_i` (for `1 ≤ i ≤ m`).
pub fn aux_matrix<F: Field>(sys: &RosenbrockSystem<F>, kind: AuxKind, i: usize) -> Result<AuxMatrix<F>> {
    let (n, r, m) = (sys.n(), sys.r(), sys.m());
    let max = if kind == AuxKind::D { m } else { m - 1 };
    if i < 1 || i > max {
        return Err(Error::IndexOutOfRange { what: "auxiliary matrix index", index: i, max });
    }
    let nm = n * m;
    let p = sys.p();
    let shift = |k: usize| p.horner_shift(k);
    let id = PolyMatrix::<F>::identity(n);
    let (k0, k1) = ((i - 1) * n, i * n);
    let matrix = match kind {
        AuxKind::Q => {
            let mut q = PolyMatrix::identity(nm + r);
            q.set_block(k0, k1, &lambda_times(&id));
            q
        }
        AuxKind::R => {
            let mut q = PolyMatrix::identity(nm + r);
            q.set_block(k0, k0, &PolyMatrix::zeros(n, n));
            q.set_block(k0, k1, &id);
            q.set_block(k1, k0, &id);
            q.set_block(k1, k1, &shift(i)?);
            q
        }
        AuxKind::T => {
            let lp = lambda_times(&shift(i - 1)?);
            let mut t = PolyMatrix::zeros(nm + r, nm + r);
            t.set_block(k0, k1, &lp);
            t.set_block(k1, k0, &lambda_times(&id));
            t.set_block(k1, k1, &lambda_times(&lp));
            t
        }
        AuxKind::D => {
            let mut d = PolyMatrix::zeros(nm + r, nm + r);
            d.set_block(k0, k0, &shift(i - 1)?);
            if i < m {
                d.set_block(k1, k1, &PolyMatrix::identity(nm - k1));
            }
            d.set_block(nm, nm, &PolyMatrix::constant(&-sys.e()));
            d
        }
    };
    Ok(AuxMatrix { kind, index: i, matrix })
}

/// Block transpose of an `(nm+r)`-sized system matrix: the `nm` part is
/// transposed blockwise and the single coupling column block `e_i ⊗ X` and
/// row block `e_jᵀ ⊗ Y` trade places.
pub fn system_block_transpose_poly<F: Field>(x: &PolyMatrix<F>, n: usize, m: usize, r: usize) -> Result<PolyMatrix<F>> {
    let nm = n * m;
    if x.rows() != nm + r || x.cols() != nm + r {
        return Err(Error::DimensionMismatch(format!("expected {0}x{0} system matrix", nm + r)));
    }
    let nonzero = |rows: bool| -> Vec<usize> {
        (0..m)
            .filter(|&k| {
                let b = if rows { x.block(k * n, nm, n, r) } else { x.block(nm, k * n, r, n) };
                !b.is_zero()
            })
            .collect()
    };
    let (x_blocks, y_blocks) = (nonzero(true), nonzero(false));
    if x_blocks.len() > 1 || y_blocks.len() > 1 {
        return Err(Error::Structure("more than one nonzero coupling block".into()));
    }
    let mut out = PolyMatrix::zeros(nm + r, nm + r);
    out.set_block(0, 0, &x.block(0, 0, nm, nm).block_transpose(m, m, n)?);
    if let Some(&i) = x_blocks.first() {
        let j = y_blocks.first().copied().unwrap_or(i);
        out.set_block(j * n, nm, &x.block(i * n, nm, n, r));
    }
    if let Some(&j) = y_blocks.first() {
        let i = x_blocks.first().copied().unwrap_or(j);
        out.set_block(nm, i * n, &x.block(nm, j * n, r, n));
    }
    out.set_block(nm, nm, &x.block(nm, nm, r, r));
    Ok(out)
}

fn bt<F: Field>(sys: &RosenbrockSystem<F>, x: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
    system_block_transpose_poly(x, sys.n(), sys.m(), sys.r())
}

fn factor_poly<F: Field>(sys: &RosenbrockSystem<F>, i: usize) -> Result<PolyMatrix<F>> {
    Ok(PolyMatrix::constant(&make_factor(sys, i)?.matrix))
}

/// Outcome of checking the auxiliary-matrix identities at one index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AuxRelations {
    pub checked: Vec<String>,
    pub failures: Vec<String>,
}

impl AuxRelations {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, label: String, ok: bool) {
        if !ok {
            self.failures.push(label.clone());
        }
        self.checked.push(label);
    }
}

/// Check, by exact multiplication, the identities linking `𝒬_i, ℛ_i, 𝒯_i,
/// 𝒟_i` with the Fiedler factors.
pub fn aux_relations_check<F: Field>(sys: &RosenbrockSystem<F>, i: usize) -> Result<AuxRelations> {
    let m = sys.m();
    let q = aux_matrix(sys, AuxKind::Q, i)?.matrix;
    let r = aux_matrix(sys, AuxKind::R, i)?.matrix;
    let t = aux_matrix(sys, AuxKind::T, i)?.matrix;
    let ld = lambda_times(&aux_matrix(sys, AuxKind::D, i)?.matrix);
    let ld_next = lambda_times(&aux_matrix(sys, AuxKind::D, i + 1)?.matrix);
    let (qb, rb, tb) = (bt(sys, &q)?, bt(sys, &r)?, bt(sys, &t)?);
    let lo = factor_poly(sys, m - i - 1)?;
    let hi = factor_poly(sys, m - i)?;

    let mut out = AuxRelations::default();
    out.record(format!("(a) Q{i}^B (λD{i}) R{i} = λD{} + T{i}", i + 1), &(&qb * &ld) * &r == &ld_next + &t);
    out.record(
        format!("(a) Q{i}^B (M{} M{}) R{i} = M{} + T{i}", m - i - 1, m - i, m - i - 1),
        &(&qb * &(&lo * &hi)) * &r == &lo + &t,
    );
    out.record(format!("(b) R{i}^B (λD{i}) Q{i} = λD{} + T{i}^B", i + 1), &(&rb * &ld) * &q == &ld_next + &tb);
    out.record(
        format!("(b) R{i}^B (M{} M{}) Q{i} = M{} + T{i}^B", m - i, m - i - 1, m - i - 1),
        &(&rb * &(&hi * &lo)) * &q == &lo + &tb,
    );
    out.record(format!("R{i}^B = R{i}"), rb == r);
    for j in 0..m - i - 1 {
        let mj = factor_poly(sys, j)?;
        out.record(format!("(c) T{i} M{j} = M{j} T{i} = T{i}"), &t * &mj == t && &mj * &t == t);
        out.record(format!("(c) T{i}^B M{j} = M{j} T{i}^B = T{i}^B"), &tb * &mj == tb && &mj * &tb == tb);
    }
    Ok(out)
}

/// `𝕃_σ^(j) = λ𝒟_j − 𝕄_σ^(j)`, where `𝕄_σ^(j)` keeps the factors with
/// index `≤ m - j` in their original order.
pub fn intermediate_pencil<F: Field>(sys: &RosenbrockSystem<F>, sigma: &Bijection, j: usize) -> Result<PolyMatrix<F>> {
    let m = sys.m();
    if sigma.m() != m {
        return Err(Error::InvalidBijection(sigma.order().to_vec(), m));
    }
    let d = aux_matrix(sys, AuxKind::D, j)?.matrix;
    let mut prod = Matrix::identity(sys.pencil_size());
    for &k in sigma.order().iter().filter(|&&k| k + j <= m) {
        prod = &prod * &make_factor(sys, k)?.matrix;
    }
    Ok(&lambda_times(&d) - &PolyMatrix::constant(&prod))
}

/// `diag(−I_{(m−1)n}, S(λ))`.
pub fn certificate_target<F: Field>(sys: &RosenbrockSystem<F>) -> PolyMatrix<F> {
    let k = (sys.m() - 1) * sys.n();
    PolyMatrix::block_diag(&[&-&PolyMatrix::identity(k), &sys.assemble_system_matrix()])
}

/// `I_{(m−1)n} ⊕ S(λ)`.
pub fn extended_system<F: Field>(sys: &RosenbrockSystem<F>) -> PolyMatrix<F> {
    let k = (sys.m() - 1) * sys.n();
    PolyMatrix::block_diag(&[&PolyMatrix::identity(k), &sys.assemble_system_matrix()])
}

/// One certificate factor such as `𝒬₃^𝔹` or `ℛ₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FactorTag {
    pub kind: AuxKind,
    pub index: usize,
    pub transposed: bool,
}

impl std::fmt::Display for FactorTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}{}", self.kind, self.index)?;
        if self.transposed {
            f.write_str("^B")?;
        }
        Ok(())
    }
}

/// One link `𝕃^(i+1) = left · 𝕃^(i) · right` of the chain.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainStep {
    pub i: usize,
    pub consecution: bool,
    pub left: FactorTag,
    pub right: FactorTag,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceCertificate {
    pub sigma: Bijection,
    pub u: PolyMatrix<Rational>,
    pub v: PolyMatrix<Rational>,
    /// `𝒰_0, …, 𝒰_{m−2}`, so that `U = 𝒰_0 ⋯ 𝒰_{m−2}`.
    pub u_factors: Vec<FactorTag>,
    /// `𝒱_{m−2}, …, 𝒱_0`, so that `V = 𝒱_{m−2} ⋯ 𝒱_0`.
    pub v_factors: Vec<FactorTag>,
    pub steps: Vec<ChainStep>,
    /// `U · 𝕃 · V − diag(−I, S)`.
    pub residual: PolyMatrix<Rational>,
}

impl EquivalenceCertificate {
    pub fn residual_zero(&self) -> bool {
        self.residual.is_zero()
    }

    /// First nonzero residual entry.
    pub fn first_defect(&self) -> Option<(usize, usize)> {
        let cols = self.residual.cols();
        self.residual.entries().iter().position(|p| !p.is_zero()).map(|k| (k / cols, k % cols))
    }

    /// `(𝒰_0⋯𝒰_{m−2}) 𝕃 (𝒱_{m−2}⋯𝒱_0)` as a string.
    pub fn factor_sequence(&self) -> String {
        let join = |v: &[FactorTag]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        format!("({}) L ({})", join(&self.u_factors), join(&self.v_factors))
    }
}

/// Apply the transforms of the chain to an arbitrary pencil of the right
/// size. The residual is zero iff the pencil equals `𝕃_σ`.
pub fn certify_pencil(
    sys: &RosenbrockSystem<Rational>,
    sigma: &Bijection,
    pencil: &PolyMatrix<Rational>,
) -> Result<EquivalenceCertificate> {
    let m = sys.m();
    if m < 2 {
        return Err(Error::DegreeTooSmall { m, needed: 2 });
    }
    if sigma.m() != m {
        return Err(Error::InvalidBijection(sigma.order().to_vec(), m));
    }
    let size = sys.pencil_size();
    if pencil.rows() != size || pencil.cols() != size {
        return Err(Error::DimensionMismatch(format!("pencil must be {size}x{size}")));
    }
    let mut u = PolyMatrix::identity(size);
    let mut v = PolyMatrix::identity(size);
    let mut cur = pencil.clone();
    let mut steps = Vec::with_capacity(m - 1);
    let mut u_factors = Vec::with_capacity(m - 1);
    let mut v_factors = Vec::with_capacity(m - 1);
    for i in 1..m {
        let consecution = sigma.has_consecution(m - i - 1);
        let (lk, rk) = if consecution { (AuxKind::Q, AuxKind::R) } else { (AuxKind::R, AuxKind::Q) };
        let left = bt(sys, &aux_matrix(sys, lk, i)?.matrix)?;
        let right = aux_matrix(sys, rk, i)?.matrix;
        cur = &(&left * &cur) * &right;
        u = &left * &u;
        v = &v * &right;
        let left = FactorTag { kind: lk, index: i, transposed: true };
        let right = FactorTag { kind: rk, index: i, transposed: false };
        u_factors.insert(0, left);
        v_factors.push(right);
        let matches = cur == intermediate_pencil(sys, sigma, i + 1)?;
        steps.push(ChainStep { i, consecution, left, right, matches });
    }
    // ℛ^𝔹 = ℛ, so R factors are listed without the transpose mark.
    for tag in &mut u_factors {
        if tag.kind == AuxKind::R {
            tag.transposed = false;
        }
    }
    let residual = &(&(&u * pencil) * &v) - &certificate_target(sys);
    Ok(EquivalenceCertificate { sigma: sigma.clone(), u, v, u_factors, v_factors, steps, residual })
}

/// Certificate for the Fiedler pencil of `σ`; fails on a nonzero residual.
pub fn build_certificate(sys: &RosenbrockSystem<Rational>, sigma: &Bijection) -> Result<EquivalenceCertificate> {
    let pencil = pencil_direct(sys, sigma)?.to_poly_matrix();
    let cert = certify_pencil(sys, sigma, &pencil)?;
    match cert.first_defect() {
        None => Ok(cert),
        Some((row, col)) => Err(Error::Certificate { row, col }),
    }
}

/// Unimodular: the determinant is a nonzero constant.
pub fn is_unimodular(x: &PolyMatrix<Rational>) -> Result<bool> {
    let d = x.det()?;
    Ok(d.degree() == 0)
}

/// Identity on the trailing `r × r` block with zero coupling blocks.
pub fn has_system_shape(x: &PolyMatrix<Rational>, r: usize) -> bool {
    let k = x.rows() - r;
    x.block(k, k, r, r) == PolyMatrix::identity(r) && x.block(0, k, k, r).is_zero() && x.block(k, 0, r, k).is_zero()
}

/// A certificate exists, `U` and `V` are unimodular and both have the
/// system-equivalence shape.
pub fn verify_rosenbrock_linearization(sys: &RosenbrockSystem<Rational>, sigma: &Bijection) -> Result<bool> {
    let cert = match build_certificate(sys, sigma) {
        Ok(c) => c,
        Err(Error::Certificate { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    let r = sys.r();
    Ok(is_unimodular(&cert.u)? && is_unimodular(&cert.v)? && has_system_shape(&cert.u, r) && has_system_shape(&cert.v, r))
}
