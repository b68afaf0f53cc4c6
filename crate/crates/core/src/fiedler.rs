//! Fiedler factors and Fiedler pencils of Rosenbrock system polynomials.
//!
//! Block indices are 1-based as in the usual notation: block `k` of the
//! `nm`-sized part starts at row `(k - 1) n`, and the state block follows it.

use crate::error::{Error, Result};
use crate::polymat::{Field, Matrix, PolyMatrix};
use crate::system::RosenbrockSystem;

/// A product order `σ⁻¹ = (σ⁻¹(1), …, σ⁻¹(m))` of the factor indices
/// `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bijection {
    order: Vec<usize>,
}

impl Bijection {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let m = order.len();
        let mut seen = vec![false; m];
        for &i in &order {
            if i >= m || seen[i] {
                return Err(Error::InvalidBijection(order, m));
            }
            seen[i] = true;
        }
        Ok(Bijection { order })
    }

    /// Parse a comma-separated product order such as `"1,0,2,3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let order = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("bad bijection {s:?}: {e}")))?;
        Self::new(order)
    }

    /// `σ⁻¹ = (m-1, …, 1, 0)`.
    pub fn first_companion(m: usize) -> Self {
        Bijection { order: (0..m).rev().collect() }
    }

    /// `σ⁻¹ = (0, 1, …, m-1)`.
    pub fn second_companion(m: usize) -> Self {
        Bijection { order: (0..m).collect() }
    }

    /// All `m!` bijections in lexicographic order of `σ⁻¹`.
    pub fn all(m: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..m).collect();
        loop {
            out.push(Bijection { order: cur.clone() });
            // next permutation
            let Some(k) = (0..m.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else { break };
            let l = (k + 1..m).rev().find(|&l| cur[k] < cur[l]).unwrap();
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
        out
    }

    pub fn m(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `σ(i)`: 1-based position of factor `i` in the product.
    pub fn position(&self, i: usize) -> usize {
        self.order.iter().position(|&x| x == i).expect("index in range") + 1
    }

    /// `σ(d) < σ(d+1)`.
    pub fn has_consecution(&self, d: usize) -> bool {
        self.position(d) < self.position(d + 1)
    }
}

impl std::fmt::Display for Bijection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.order.iter().map(usize::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// Consecution-inversion structure sequence `(c₁, i₁, …, c_l, i_l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciss {
    pub pairs: Vec<usize>,
}

impl Ciss {
    pub fn c1(&self) -> usize {
        self.pairs.first().copied().unwrap_or(0)
    }
    pub fn i1(&self) -> usize {
        self.pairs.get(1).copied().unwrap_or(0)
    }
    /// Total number of consecutions `c(σ)`.
    pub fn consecutions(&self) -> usize {
        self.pairs.iter().step_by(2).sum()
    }
    /// Total number of inversions `i(σ)`.
    pub fn inversions(&self) -> usize {
        self.pairs.iter().skip(1).step_by(2).sum()
    }
}

pub fn ciss(sigma: &Bijection) -> Ciss {
    let m = sigma.m();
    if m < 2 {
        return Ciss { pairs: Vec::new() };
    }
    let mut pairs = vec![0];
    let mut want_consecution = true;
    for d in 0..m - 1 {
        let c = sigma.has_consecution(d);
        if c != want_consecution {
            pairs.push(0);
            want_consecution = c;
        }
        *pairs.last_mut().unwrap() += 1;
    }
    if pairs.len() % 2 == 1 {
        pairs.push(0);
    }
    Ciss { pairs }
}

/// Block positions `(b_row_block, c_col_block)`: the block column holding
/// `B` in the state row and the block row holding `C` in the state column.
pub fn block_positions(sigma: &Bijection) -> (usize, usize) {
    let m = sigma.m();
    if m < 2 {
        return (1, 1);
    }
    let c = ciss(sigma);
    if c.c1() > 0 {
        (m - c.c1(), m)
    } else {
        (m, m - c.i1())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiedlerFactor<F> {
    pub index: usize,
    pub matrix: Matrix<F>,
}

fn identity_with_swap_block<F: Field>(sys: &RosenbrockSystem<F>, i: usize, tl: &Matrix<F>, br: &Matrix<F>) -> Matrix<F> {
    let (n, m) = (sys.n(), sys.m());
    let mut out = Matrix::identity(n * m + sys.r());
    let k = (m - i - 1) * n;
    out.set_block(k, k, tl);
    out.set_block(k, k + n, &Matrix::identity(n));
    out.set_block(k + n, k, &Matrix::identity(n));
    out.set_block(k + n, k + n, br);
    out
}

/// The Fiedler factor `𝕄_i` of a system, `0 ≤ i ≤ m`.
pub fn make_factor<F: Field>(sys: &RosenbrockSystem<F>, i: usize) -> Result<FiedlerFactor<F>> {
    let (n, r, m) = (sys.n(), sys.r(), sys.m());
    if i > m {
        return Err(Error::IndexOutOfRange { what: "Fiedler factor", index: i, max: m });
    }
    let nm = n * m;
    let matrix = if i == 0 {
        let mut f = Matrix::identity(nm + r);
        f.set_block(nm - n, nm - n, &-&sys.coeff(0));
        f.set_block(nm - n, nm, &-sys.c());
        f.set_block(nm, nm - n, &-sys.b());
        f.set_block(nm, nm, &-sys.a());
        f
    } else if i == m {
        let mut f = Matrix::identity(nm + r);
        f.set_block(0, 0, &sys.coeff(m));
        f.set_block(nm, nm, &-sys.e());
        f
    } else {
        identity_with_swap_block(sys, i, &-&sys.coeff(i), &Matrix::zeros(n, n))
    };
    Ok(FiedlerFactor { index: i, matrix })
}

/// Closed-form inverse of `𝕄_i` for `1 ≤ i ≤ m-1`.
pub fn factor_inverse<F: Field>(sys: &RosenbrockSystem<F>, i: usize) -> Result<Matrix<F>> {
    let (n, m) = (sys.n(), sys.m());
    if i == 0 || i >= m {
        return Err(Error::IndexOutOfRange { what: "invertible Fiedler factor", index: i, max: m.saturating_sub(1) });
    }
    Ok(identity_with_swap_block(sys, i, &Matrix::zeros(n, n), &sys.coeff(i)))
}

/// `λ · lead + const_term` with block metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemPencil<F> {
    pub lead: Matrix<F>,
    pub const_term: Matrix<F>,
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub b_row_block: usize,
    pub c_col_block: usize,
}

impl<F: Field> SystemPencil<F> {
    pub fn size(&self) -> usize {
        self.lead.rows()
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix<F> {
        PolyMatrix::pencil(&self.lead, &self.const_term)
    }

    pub fn eval(&self, x: &F) -> Matrix<F> {
        &self.lead.scale(x) + &self.const_term
    }

    pub fn map<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> SystemPencil<G> {
        SystemPencil {
            lead: self.lead.map(&mut f),
            const_term: self.const_term.map(&mut f),
            n: self.n,
            r: self.r,
            m: self.m,
            b_row_block: self.b_row_block,
            c_col_block: self.c_col_block,
        }
    }

    pub fn to_f64(&self) -> SystemPencil<f64> {
        self.map(Field::to_f64)
    }

    fn block_sizes(&self) -> Vec<usize> {
        let mut v = vec![self.n; self.m];
        if self.r > 0 {
            v.push(self.r);
        }
        v
    }
}

fn check_sigma<F: Field>(sys: &RosenbrockSystem<F>, sigma: &Bijection) -> Result<()> {
    if sigma.m() != sys.m() {
        return Err(Error::InvalidBijection(sigma.order().to_vec(), sys.m()));
    }
    Ok(())
}

fn with_metadata<F: Field>(sys: &RosenbrockSystem<F>, sigma: &Bijection, lead: Matrix<F>, m_sigma: Matrix<F>) -> SystemPencil<F> {
    let (b_row_block, c_col_block) = block_positions(sigma);
    SystemPencil {
        lead,
        const_term: -&m_sigma,
        n: sys.n(),
        r: sys.r(),
        m: sys.m(),
        b_row_block,
        c_col_block,
    }
}

/// `λ𝕄_m − 𝕄_{σ⁻¹(1)} ⋯ 𝕄_{σ⁻¹(m)}` by explicit multiplication.
pub fn pencil_direct<F: Field>(sys: &RosenbrockSystem<F>, sigma: &Bijection) -> Result<SystemPencil<F>> {
    check_sigma(sys, sigma)?;
    let mut prod = Matrix::identity(sys.pencil_size());
    for &i in sigma.order() {
        prod = &prod * &make_factor(sys, i)?.matrix;
    }
    let lead = make_factor(sys, sys.m())?.matrix;
    Ok(with_metadata(sys, sigma, lead, prod))
}

/// `𝕄_σ` assembled by row and column splicing without any products.
pub fn pencil_algorithm1<F: Field>(sys: &RosenbrockSystem<F>, sigma: &Bijection) -> Result<SystemPencil<F>> {
    check_sigma(sys, sigma)?;
    let (n, r, m) = (sys.n(), sys.r(), sys.m());
    if m < 2 {
        return Err(Error::DegreeTooSmall { m, needed: 2 });
    }
    // W_{-1} = [[-A_0, -C], [-B, -A]]; each step prepends one block row and
    // one block column.
    let mut w = Matrix::zeros(n + r, n + r);
    w.set_block(0, 0, &-&sys.coeff(0));
    w.set_block(0, n, &-sys.c());
    w.set_block(n, 0, &-sys.b());
    w.set_block(n, n, &-sys.a());
    for i in 0..m - 1 {
        let size = w.rows() + n;
        let mut next = Matrix::zeros(size, size);
        next.set_block(0, 0, &-&sys.coeff(i + 1));
        if sigma.has_consecution(i) {
            next.set_block(0, n, &Matrix::identity(n));
            for a in 0..w.rows() {
                for c in 0..w.cols() {
                    next[(n + a, if c < n { c } else { c + n })] = w[(a, c)].clone();
                }
            }
        } else {
            next.set_block(n, 0, &Matrix::identity(n));
            for a in 0..w.rows() {
                for c in 0..w.cols() {
                    next[(if a < n { a } else { a + n }, n + c)] = w[(a, c)].clone();
                }
            }
        }
        w = next;
    }
    let lead = make_factor(sys, m)?.matrix;
    Ok(with_metadata(sys, sigma, lead, w))
}

/// The classical Fiedler pencil of `P` bordered by one `C` block column and
/// one `B` block row placed according to the CISS of `σ`.
pub fn pencil_block_formula<F: Field>(sys: &RosenbrockSystem<F>, sigma: &Bijection) -> Result<SystemPencil<F>> {
    check_sigma(sys, sigma)?;
    let (n, r, m) = (sys.n(), sys.r(), sys.m());
    if m < 2 {
        return Err(Error::DegreeTooSmall { m, needed: 2 });
    }
    let classical = pencil_direct(&RosenbrockSystem::from_polynomial(sys.p().clone())?, sigma)?;
    let nm = n * m;
    let (b_blk, c_blk) = block_positions(sigma);
    let mut lead = Matrix::zeros(nm + r, nm + r);
    lead.set_block(0, 0, &classical.lead);
    lead.set_block(nm, nm, &-sys.e());
    let mut k = Matrix::zeros(nm + r, nm + r);
    k.set_block(0, 0, &classical.const_term);
    k.set_block((c_blk - 1) * n, nm, sys.c());
    k.set_block(nm, (b_blk - 1) * n, sys.b());
    k.set_block(nm, nm, sys.a());
    Ok(SystemPencil { lead, const_term: k, n, r, m, b_row_block: b_blk, c_col_block: c_blk })
}

/// First companion form `λ𝕄_m − 𝕄_{m-1} ⋯ 𝕄_0`.
pub fn first_companion<F: Field>(sys: &RosenbrockSystem<F>) -> Result<SystemPencil<F>> {
    let p = pencil_direct(sys, &Bijection::first_companion(sys.m()))?;
    debug_assert_eq!(p, first_companion_layout(sys));
    Ok(p)
}

/// Second companion form `λ𝕄_m − 𝕄_0 ⋯ 𝕄_{m-1}`.
pub fn second_companion<F: Field>(sys: &RosenbrockSystem<F>) -> Result<SystemPencil<F>> {
    pencil_direct(sys, &Bijection::second_companion(sys.m()))
}

fn companion_lead<F: Field>(sys: &RosenbrockSystem<F>) -> Matrix<F> {
    let (n, m, r) = (sys.n(), sys.m(), sys.r());
    let mut lead = Matrix::identity(n * m + r);
    lead.set_block(0, 0, &sys.coeff(m));
    lead.set_block(n * m, n * m, &-sys.e());
    lead
}

/// First companion form written out block by block:
/// top block row `[A_{m-1} … A_0 C]`, `-I` on the block subdiagonal,
/// bottom row `[0 … B A]`.
pub fn first_companion_layout<F: Field>(sys: &RosenbrockSystem<F>) -> SystemPencil<F> {
    let (n, m, r) = (sys.n(), sys.m(), sys.r());
    let nm = n * m;
    let mut k = Matrix::zeros(nm + r, nm + r);
    for j in 0..m {
        k.set_block(0, j * n, &sys.coeff(m - 1 - j));
    }
    for j in 1..m {
        k.set_block(j * n, (j - 1) * n, &-&Matrix::identity(n));
    }
    k.set_block(0, nm, sys.c());
    k.set_block(nm, nm - n, sys.b());
    k.set_block(nm, nm, sys.a());
    SystemPencil { lead: companion_lead(sys), const_term: k, n, r, m, b_row_block: m, c_col_block: 1 }
}

/// Second companion form written out block by block:
/// first block column `[A_{m-1}; …; A_0; B]`, `-I` on the block
/// superdiagonal, `C` beside `A_0`.
pub fn second_companion_layout<F: Field>(sys: &RosenbrockSystem<F>) -> SystemPencil<F> {
    let (n, m, r) = (sys.n(), sys.m(), sys.r());
    let nm = n * m;
    let mut k = Matrix::zeros(nm + r, nm + r);
    for j in 0..m {
        k.set_block(j * n, 0, &sys.coeff(m - 1 - j));
    }
    for j in 1..m {
        k.set_block((j - 1) * n, j * n, &-&Matrix::identity(n));
    }
    k.set_block(nm - n, nm, sys.c());
    k.set_block(nm, 0, sys.b());
    k.set_block(nm, nm, sys.a());
    SystemPencil { lead: companion_lead(sys), const_term: k, n, r, m, b_row_block: 1, c_col_block: m }
}

/// Nonzero block indices (1-based) of the `C` column and of the `B` row.
fn coupling_blocks<F: Field>(p: &SystemPencil<F>) -> (Vec<usize>, Vec<usize>) {
    let (n, nm) = (p.n, p.n * p.m);
    let mut c_rows = Vec::new();
    let mut b_cols = Vec::new();
    for k in 1..=p.m {
        let off = (k - 1) * n;
        let any_c = [&p.lead, &p.const_term].iter().any(|x| !x.block(off, nm, n, p.r).is_zero());
        let any_b = [&p.lead, &p.const_term].iter().any(|x| !x.block(nm, off, p.r, n).is_zero());
        if any_c {
            c_rows.push(k);
        }
        if any_b {
            b_cols.push(k);
        }
    }
    (c_rows, b_cols)
}

/// Block transpose of a system pencil: the `nm` part is transposed blockwise,
/// `C` moves to the block row where `B` sat and vice versa, `Z` is kept.
pub fn system_block_transpose<F: Field>(p: &SystemPencil<F>) -> Result<SystemPencil<F>> {
    let (n, r, m) = (p.n, p.r, p.m);
    let nm = n * m;
    if p.size() != nm + r {
        return Err(Error::Structure(format!("size {} is not nm + r = {}", p.size(), nm + r)));
    }
    let (c_rows, b_cols) = coupling_blocks(p);
    if c_rows.len() > 1 || b_cols.len() > 1 {
        return Err(Error::Structure("more than one nonzero coupling block".into()));
    }
    let c_blk = c_rows.first().copied().unwrap_or(p.c_col_block);
    let b_blk = b_cols.first().copied().unwrap_or(p.b_row_block);
    let tr = |x: &Matrix<F>| -> Result<Matrix<F>> {
        let top = PolyMatrix::constant(&x.block(0, 0, nm, nm)).block_transpose(m, m, n)?.coeff(0);
        let mut out = Matrix::zeros(nm + r, nm + r);
        out.set_block(0, 0, &top);
        out.set_block((b_blk - 1) * n, nm, &x.block((c_blk - 1) * n, nm, n, r));
        out.set_block(nm, (c_blk - 1) * n, &x.block(nm, (b_blk - 1) * n, r, n));
        out.set_block(nm, nm, &x.block(nm, nm, r, r));
        Ok(out)
    };
    Ok(SystemPencil {
        lead: tr(&p.lead)?,
        const_term: tr(&p.const_term)?,
        n,
        r,
        m,
        b_row_block: c_blk,
        c_col_block: b_blk,
    })
}

/// True iff every block more than two places off the diagonal is zero in
/// both coefficients, the state row and column counting as one block.
pub fn is_block_pentadiagonal<F: Field>(p: &SystemPencil<F>) -> bool {
    let sizes = p.block_sizes();
    let mut block_of = Vec::with_capacity(p.size());
    for (b, &s) in sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, s));
    }
    for x in [&p.lead, &p.const_term] {
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                if block_of[i].abs_diff(block_of[j]) > 2 && !x[(i, j)].is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `𝕄_i 𝕄_j = 𝕄_j 𝕄_i` holds exactly.
pub fn commutation_check<F: Field>(sys: &RosenbrockSystem<F>, i: usize, j: usize) -> Result<bool> {
    let a = make_factor(sys, i)?.matrix;
    let b = make_factor(sys, j)?.matrix;
    Ok(&a * &b == &b * &a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::{rat, Poly, Rational};

    fn desk() -> RosenbrockSystem<Rational> {
        let one = Matrix::from_rows(vec![vec![rat(1, 1)]]);
        let p = PolyMatrix::from_rows(vec![vec![Poly::from_i64s(&[0, 0, 1])]]);
        RosenbrockSystem::new(p, one.clone(), one.clone(), one.clone(), one).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect())
    }

    #[test]
    fn bijection_validation_and_enumeration() {
        assert!(Bijection::new(vec![0, 0]).is_err());
        assert!(Bijection::parse("1,0,2,3").is_ok());
        assert!(Bijection::parse("1,x").is_err());
        assert_eq!(Bijection::all(4).len(), 24);
        let b = Bijection::new(vec![1, 0, 2, 3]).unwrap();
        assert_eq!(b.position(0), 2);
        assert_eq!(b.position(1), 1);
    }

    #[test]
    fn ciss_examples() {
        assert_eq!(ciss(&Bijection::first_companion(5)).pairs, vec![0, 4]);
        assert_eq!(ciss(&Bijection::second_companion(5)).pairs, vec![4, 0]);
        assert_eq!(ciss(&Bijection::new(vec![1, 0, 2, 3]).unwrap()).pairs, vec![0, 1, 2, 0]);
        assert_eq!(ciss(&Bijection::new(vec![0]).unwrap()).pairs, Vec::<usize>::new());
    }

    #[test]
    fn desk_factors() {
        let s = desk();
        assert_eq!(make_factor(&s, 0).unwrap().matrix, ints(&[&[1, 0, 0], &[0, 0, -1], &[0, -1, -1]]));
        assert_eq!(make_factor(&s, 1).unwrap().matrix, ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]));
        assert_eq!(make_factor(&s, 2).unwrap().matrix, ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]));
        assert!(make_factor(&s, 3).is_err());
        assert_eq!(factor_inverse(&s, 1).unwrap(), ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]));
        assert!(factor_inverse(&s, 0).is_err());
    }

    #[test]
    fn desk_pencils() {
        let s = desk();
        let fc = first_companion(&s).unwrap();
        let x = Poly::<Rational>::lambda();
        let expected = PolyMatrix::from_rows(vec![
            vec![x.clone(), Poly::zero(), Poly::one()],
            vec![Poly::from_i64s(&[-1]), x.clone(), Poly::zero()],
            vec![Poly::zero(), Poly::one(), Poly::from_i64s(&[1, -1])],
        ]);
        assert_eq!(fc.to_poly_matrix(), expected);
        let sc = second_companion(&s).unwrap();
        let expected = PolyMatrix::from_rows(vec![
            vec![x.clone(), Poly::from_i64s(&[-1]), Poly::zero()],
            vec![Poly::zero(), x, Poly::one()],
            vec![Poly::one(), Poly::zero(), Poly::from_i64s(&[1, -1])],
        ]);
        assert_eq!(sc.to_poly_matrix(), expected);
        assert_eq!(system_block_transpose(&fc).unwrap(), sc);

        let inv = Bijection::new(vec![1, 0]).unwrap();
        let con = Bijection::new(vec![0, 1]).unwrap();
        assert_eq!(-&pencil_algorithm1(&s, &inv).unwrap().const_term, ints(&[&[0, 0, -1], &[1, 0, 0], &[0, -1, -1]]));
        assert_eq!(-&pencil_algorithm1(&s, &con).unwrap().const_term, ints(&[&[0, 1, 0], &[0, 0, -1], &[-1, 0, -1]]));
        for sigma in [inv, con] {
            let d = pencil_direct(&s, &sigma).unwrap();
            assert_eq!(pencil_algorithm1(&s, &sigma).unwrap(), d);
            assert_eq!(pencil_block_formula(&s, &sigma).unwrap(), d);
        }
    }

    #[test]
    fn m1_pencil_is_system_matrix() {
        let s = RosenbrockSystem::new(
            PolyMatrix::identity(2),
            ints(&[&[2]]),
            ints(&[&[1]]),
            ints(&[&[0, 1]]),
            ints(&[&[1], &[0]]),
        )
        .unwrap();
        assert_eq!(s.m(), 1);
        let p = first_companion(&s).unwrap();
        assert_eq!(p.to_poly_matrix(), s.assemble_system_matrix());
        assert!(pencil_algorithm1(&s, &Bijection::first_companion(1)).is_err());
    }

    #[test]
    fn r_zero_companion() {
        let p = PolyMatrix::from_rows(vec![vec![Poly::from_i64s(&[1, 0, 1])]]);
        let s = RosenbrockSystem::from_polynomial(p).unwrap();
        let fc = first_companion(&s).unwrap();
        let x = Poly::<Rational>::lambda();
        assert_eq!(
            fc.to_poly_matrix(),
            PolyMatrix::from_rows(vec![vec![x.clone(), Poly::one()], vec![Poly::from_i64s(&[-1]), x]])
        );
        let bt = system_block_transpose(&fc).unwrap();
        assert_eq!(bt.to_poly_matrix(), fc.to_poly_matrix().block_transpose(2, 2, 1).unwrap());
    }
}
