//! JSON interchange for systems, specs, pencils, reports and certificates.
//!
//! Scalars are read from numbers or from strings (`"p/q"`, integers,
//! decimals). Exact values are written as `"p/q"` strings, floats as
//! numbers, complex roots as `{re, im}`.

use serde::{Deserialize, Serialize};

use crate::eigen::{Backend, ZeroClass, ZeroKind, ZeroReport};
use crate::equivalence::EquivalenceCertificate;
use crate::error::{Error, Result};
use crate::fiedler::SystemPencil;
use crate::polymat::{format_rational, parse_rational, Field, Matrix, Poly, PolyMatrix, RationalMatrix, Root, SmithForm};
use crate::system::{DecouplingReport, Realization, RepSpec, RepTerm, RosenbrockSystem};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(serde_json::Number),
    Text(String),
}

pub type PolyJson = Vec<Scalar>;
pub type Grid = Vec<Vec<Scalar>>;
pub type PolyGrid = Vec<Vec<PolyJson>>;

pub fn scalar_from<F: Field>(x: &F) -> Scalar {
    match x.to_exact() {
        Some(q) => Scalar::Text(format_rational(&q)),
        None => serde_json::Number::from_f64(x.to_f64())
            .map(Scalar::Number)
            .unwrap_or_else(|| Scalar::Text(x.fmt_scalar())),
    }
}

pub fn scalar_to<F: Field>(s: &Scalar) -> Result<F> {
    let text = match s {
        Scalar::Number(n) => n.to_string(),
        Scalar::Text(t) => t.clone(),
    };
    parse_rational(&text).map(|q| F::from_rational(&q)).ok_or_else(|| Error::Parse(format!("bad scalar {text:?}")))
}

pub fn poly_to_json<F: Field>(p: &Poly<F>) -> PolyJson {
    p.coeffs().iter().map(scalar_from).collect()
}

pub fn poly_from_json<F: Field>(p: &PolyJson) -> Result<Poly<F>> {
    Ok(Poly::new(p.iter().map(scalar_to).collect::<Result<_>>()?))
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Grid {
    m.to_rows().iter().map(|r| r.iter().map(scalar_from).collect()).collect()
}

/// Parse a grid with known shape; an empty grid is accepted for any shape
/// with a zero dimension.
pub fn matrix_from_json<F: Field>(g: &Grid, rows: usize, cols: usize, what: &str) -> Result<Matrix<F>> {
    if rows == 0 || cols == 0 {
        if g.iter().any(|r| !r.is_empty()) || (g.len() != rows && !g.is_empty()) {
            return Err(Error::Parse(format!("{what}: expected a {rows}x{cols} grid")));
        }
        return Ok(Matrix::zeros(rows, cols));
    }
    if g.len() != rows || g.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse(format!("{what}: expected a {rows}x{cols} grid")));
    }
    let vals: Vec<Vec<F>> = g.iter().map(|r| r.iter().map(scalar_to).collect::<Result<_>>()).collect::<Result<_>>()?;
    Ok(Matrix::from_rows(vals))
}

pub fn poly_matrix_to_json<F: Field>(p: &PolyMatrix<F>) -> PolyGrid {
    p.to_rows().iter().map(|r| r.iter().map(poly_to_json).collect()).collect()
}

pub fn poly_matrix_from_json<F: Field>(g: &PolyGrid) -> Result<PolyMatrix<F>> {
    let cols = g.first().map_or(0, Vec::len);
    if g.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged polynomial matrix".into()));
    }
    let rows: Vec<Vec<Poly<F>>> = g.iter().map(|r| r.iter().map(poly_from_json).collect::<Result<_>>()).collect::<Result<_>>()?;
    Ok(PolyMatrix::from_rows(rows))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatFnJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

pub fn rational_matrix_to_json(g: &RationalMatrix) -> Vec<Vec<RatFnJson>> {
    (0..g.rows())
        .map(|i| {
            (0..g.cols())
                .map(|j| {
                    let f = g.get(i, j);
                    RatFnJson { num: poly_to_json(f.num()), den: poly_to_json(f.den()) }
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "P")]
    pub p: PolyGrid,
    #[serde(rename = "A", default)]
    pub a: Grid,
    /// Identity when omitted.
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Grid>,
    #[serde(rename = "B", default)]
    pub b: Grid,
    #[serde(rename = "C", default)]
    pub c: Grid,
}

impl SystemJson {
    pub fn from_system<F: Field>(sys: &RosenbrockSystem<F>) -> Self {
        SystemJson {
            n: Some(sys.n()),
            r: Some(sys.r()),
            m: Some(sys.m()),
            p: poly_matrix_to_json(sys.p()),
            a: matrix_to_json(sys.a()),
            e: Some(matrix_to_json(sys.e())),
            b: matrix_to_json(sys.b()),
            c: matrix_to_json(sys.c()),
        }
    }

    pub fn to_system<F: Field>(&self) -> Result<RosenbrockSystem<F>> {
        let p: PolyMatrix<F> = poly_matrix_from_json(&self.p)?;
        let n = p.rows();
        let r = self.a.len();
        if self.n.is_some_and(|v| v != n) || self.r.is_some_and(|v| v != r) {
            return Err(Error::Parse(format!("declared n/r disagree with P ({n}) and A ({r})")));
        }
        let a = matrix_from_json(&self.a, r, r, "A")?;
        let e = match &self.e {
            Some(g) => matrix_from_json(g, r, r, "E")?,
            None => Matrix::identity(r),
        };
        let b = matrix_from_json(&self.b, r, n, "B")?;
        let c = matrix_from_json(&self.c, n, r, "C")?;
        let sys = RosenbrockSystem::new(p, a, e, b, c)?;
        if self.m.is_some_and(|v| v != sys.m()) {
            return Err(Error::Parse(format!("declared m disagrees with deg P ({})", sys.m())));
        }
        Ok(sys)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepTermJson {
    pub num: PolyJson,
    pub den: PolyJson,
    pub matrix: Grid,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepSpecJson {
    #[serde(rename = "P")]
    pub p: PolyGrid,
    pub terms: Vec<RepTermJson>,
}

impl RepSpecJson {
    pub fn to_spec<F: Field>(&self) -> Result<RepSpec<F>> {
        let p: PolyMatrix<F> = poly_matrix_from_json(&self.p)?;
        let n = p.rows();
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(j, t)| {
                Ok(RepTerm {
                    num: poly_from_json(&t.num)?,
                    den: poly_from_json(&t.den)?,
                    matrix: matrix_from_json(&t.matrix, n, n, &format!("terms[{j}].matrix"))?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(RepSpec { p, terms })
    }
}

/// A system or a rational eigenvalue problem, told apart by the presence
/// of `terms`.
#[derive(Clone, Debug)]
pub enum Input {
    System(SystemJson),
    Rep(RepSpecJson),
}

pub fn parse_input(text: &str) -> Result<Input> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let is_rep = v.get("terms").is_some();
    let res = if is_rep {
        serde_json::from_value(v).map(Input::Rep)
    } else {
        serde_json::from_value(v).map(Input::System)
    };
    res.map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PencilJson {
    pub lead: Grid,
    pub const_term: Grid,
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub b_row_block: usize,
    pub c_col_block: usize,
}

impl PencilJson {
    pub fn from_pencil<F: Field>(p: &SystemPencil<F>) -> Self {
        PencilJson {
            lead: matrix_to_json(&p.lead),
            const_term: matrix_to_json(&p.const_term),
            n: p.n,
            r: p.r,
            m: p.m,
            b_row_block: p.b_row_block,
            c_col_block: p.c_col_block,
        }
    }

    pub fn to_pencil<F: Field>(&self) -> Result<SystemPencil<F>> {
        let size = self.n * self.m + self.r;
        Ok(SystemPencil {
            lead: matrix_from_json(&self.lead, size, size, "lead")?,
            const_term: matrix_from_json(&self.const_term, size, size, "const_term")?,
            n: self.n,
            r: self.r,
            m: self.m,
            b_row_block: self.b_row_block,
            c_col_block: self.c_col_block,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootJson {
    Exact(String),
    Complex { re: f64, im: f64 },
}

impl From<&Root> for RootJson {
    fn from(r: &Root) -> Self {
        match r {
            Root::Exact(q) => RootJson::Exact(format_rational(q)),
            Root::Approx(z) => RootJson::Complex { re: z.re, im: z.im },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroJson {
    pub value: RootJson,
    pub class: ZeroClass,
    pub multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ind_phi: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ind_psi: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PoleJson {
    pub value: RootJson,
    pub multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ind_psi: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecouplingJson {
    pub input: Vec<RootJson>,
    pub output: Vec<RootJson>,
}

impl From<&DecouplingReport> for DecouplingJson {
    fn from(d: &DecouplingReport) -> Self {
        DecouplingJson { input: d.input.iter().map(Into::into).collect(), output: d.output.iter().map(Into::into).collect() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroReportJson {
    pub zeros: Vec<ZeroJson>,
    pub poles: Vec<PoleJson>,
    pub decoupling: DecouplingJson,
    pub minimal: bool,
    pub zero_kind: ZeroKind,
    pub backend: Backend,
    pub sigma: String,
    pub pencil_size: usize,
    pub infinite_flag: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_constant: Option<String>,
}

impl From<&ZeroReport> for ZeroReportJson {
    fn from(r: &ZeroReport) -> Self {
        ZeroReportJson {
            zeros: r
                .zeros
                .iter()
                .map(|z| ZeroJson {
                    value: (&z.value).into(),
                    class: z.class,
                    multiplicity: z.multiplicity,
                    ind_phi: z.ind_phi.clone(),
                    ind_psi: z.ind_psi.clone(),
                })
                .collect(),
            poles: r
                .poles
                .iter()
                .map(|p| PoleJson { value: (&p.value).into(), multiplicity: p.multiplicity, ind_psi: p.ind_psi.clone() })
                .collect(),
            decoupling: (&r.decoupling).into(),
            minimal: r.minimal,
            zero_kind: r.zero_kind,
            backend: r.backend,
            sigma: r.sigma.to_string(),
            pencil_size: r.pencil_size,
            infinite_flag: r.infinite_flag,
            det_constant: r.det_constant.as_ref().map(format_rational),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepJson {
    pub i: usize,
    pub consecution: bool,
    pub left: String,
    pub right: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub sigma: String,
    pub u_factors: Vec<String>,
    pub v_factors: Vec<String>,
    pub factor_sequence: String,
    pub steps: Vec<StepJson>,
    pub residual_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_defect: Option<(usize, usize)>,
    #[serde(rename = "U")]
    pub u: PolyGrid,
    #[serde(rename = "V")]
    pub v: PolyGrid,
}

impl From<&EquivalenceCertificate> for CertificateJson {
    fn from(c: &EquivalenceCertificate) -> Self {
        CertificateJson {
            sigma: c.sigma.to_string(),
            u_factors: c.u_factors.iter().map(ToString::to_string).collect(),
            v_factors: c.v_factors.iter().map(ToString::to_string).collect(),
            factor_sequence: c.factor_sequence(),
            steps: c
                .steps
                .iter()
                .map(|s| StepJson {
                    i: s.i,
                    consecution: s.consecution,
                    left: s.left.to_string(),
                    right: s.right.to_string(),
                    matches: s.matches,
                })
                .collect(),
            residual_zero: c.residual_zero(),
            first_defect: c.first_defect(),
            u: poly_matrix_to_json(&c.u),
            v: poly_matrix_to_json(&c.v),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmithJson {
    /// Number of unit invariant factors.
    pub p: usize,
    pub phi: Vec<String>,
    pub phi_coeffs: Vec<PolyJson>,
    pub rank: usize,
    pub zero_rows: usize,
    pub zero_cols: usize,
}

impl From<&SmithForm> for SmithJson {
    fn from(s: &SmithForm) -> Self {
        SmithJson {
            p: s.identity_count,
            phi: s.invariant_polys.iter().map(|p| p.pretty()).collect(),
            phi_coeffs: s.invariant_polys.iter().map(poly_to_json).collect(),
            rank: s.rank(),
            zero_rows: s.zero_rows,
            zero_cols: s.zero_cols,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizationJson {
    pub system: SystemJson,
    pub minimal: bool,
    pub dropped_terms: Vec<usize>,
}

impl<F: Field> From<&Realization<F>> for RealizationJson {
    fn from(r: &Realization<F>) -> Self {
        RealizationJson { system: SystemJson::from_system(&r.system), minimal: r.minimal, dropped_terms: r.dropped_terms.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::{rat, Rational};

    #[test]
    fn system_round_trip() {
        let text = r#"{"P": [[[0, 0, 1]]], "A": [[1]], "E": [[1]], "B": [[1]], "C": [["1"]]}"#;
        let Input::System(js) = parse_input(text).unwrap() else { panic!("expected system") };
        let sys: RosenbrockSystem<Rational> = js.to_system().unwrap();
        assert_eq!((sys.n(), sys.r(), sys.m()), (1, 1, 2));
        let back = serde_json::to_string(&SystemJson::from_system(&sys)).unwrap();
        let Input::System(js2) = parse_input(&back).unwrap() else { panic!() };
        assert_eq!(js2.to_system::<Rational>().unwrap(), sys);
    }

    #[test]
    fn r_zero_and_rep_detection() {
        let text = r#"{"P": [[[1, 2], ["1/2"]], [[0], [3, 0, 1]]], "A": [], "B": [], "C": [[], []]}"#;
        let Input::System(js) = parse_input(text).unwrap() else { panic!() };
        let sys: RosenbrockSystem<f64> = js.to_system().unwrap();
        assert_eq!((sys.n(), sys.r()), (2, 0));
        let rep = r#"{"P": [[[0, 1]]], "terms": [{"num": [1], "den": [-2, 1], "matrix": [[1]]}]}"#;
        let Input::Rep(s) = parse_input(rep).unwrap() else { panic!() };
        assert_eq!(s.to_spec::<Rational>().unwrap().terms[0].den, Poly::from_i64s(&[-2, 1]));
        assert!(parse_input("{").is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(scalar_to::<Rational>(&Scalar::Text("3/4".into())).unwrap(), rat(3, 4));
        assert_eq!(scalar_from(&rat(-1, 2)), Scalar::Text("-1/2".into()));
        assert!(matches!(scalar_from(&0.5f64), Scalar::Number(_)));
        assert!(scalar_to::<f64>(&Scalar::Text("x".into())).is_err());
    }
}
