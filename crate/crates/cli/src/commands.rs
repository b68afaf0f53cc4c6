use std::collections::HashSet;
use std::path::Path;
use std::process::ExitCode;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use rosepen::eigen::{classify_zeros, fiedler_pencil, Backend};
use rosepen::equivalence::{certify_pencil, has_system_shape, is_unimodular};
use rosepen::fiedler::{block_positions, ciss as ciss_of, pencil_direct, SystemPencil};
use rosepen::json::{parse_input, CertificateJson, Input, PencilJson, RealizationJson, SmithJson, ZeroReportJson};
use rosepen::polymat::{format_rational, smith_form};
use rosepen::{realize as realize_spec, Bijection, Error, Field, Rational, RosenbrockSystem};

use crate::{BackendArg, Common, Mode};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::DimensionMismatch(_)
            | Error::NotSquare(..)
            | Error::DenominatorDegree { .. }
            | Error::ExactOnly => 2,
            Error::InvalidBijection(..) => 3,
            Error::SingularE => 4,
            Error::SingularPencil => 5,
            Error::Certificate { .. } => 6,
            _ => 1,
        };
        CliError::new(code, e.to_string())
    }
}

type CmdResult = Result<ExitCode, CliError>;

fn read_input(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))?;
    Ok(parse_input(&text)?)
}

/// A system read directly or realized from a spec.
fn load_system<F: Field>(path: &Path, allow_spec: bool) -> Result<RosenbrockSystem<F>, CliError> {
    match read_input(path)? {
        Input::System(s) => Ok(s.to_system()?),
        Input::Rep(s) if allow_spec => Ok(realize_spec(&s.to_spec::<F>()?)?.system),
        Input::Rep(_) => Err(CliError::new(2, "expected a system, got a rational eigenproblem spec")),
    }
}

fn parse_sigma(s: &str, m: usize) -> Result<Bijection, CliError> {
    let sigma = Bijection::parse(s).map_err(|e| CliError::new(3, e.to_string()))?;
    if sigma.m() != m {
        return Err(CliError::new(3, format!("bijection {sigma} has length {}, system has m = {m}", sigma.m())));
    }
    Ok(sigma)
}

fn sigma_or_default(s: Option<&str>, m: usize) -> Result<(Bijection, bool), CliError> {
    match s {
        Some(s) => Ok((parse_sigma(s, m)?, false)),
        None => Ok((Bijection::first_companion(m), true)),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::new(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn require_exact(common: &Common, what: &str) -> Result<(), CliError> {
    if common.mode == Mode::Float {
        return Err(CliError::new(2, format!("{what} requires --mode exact")));
    }
    Ok(())
}

#[derive(Serialize)]
struct BuildOut {
    sigma: String,
    /// Present when `--sigma` was omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    #[serde(flatten)]
    pencil: PencilJson,
}

pub fn build(common: &Common, sigma: Option<&str>) -> CmdResult {
    match common.mode {
        Mode::Exact => build_in::<Rational>(common, sigma),
        Mode::Float => build_in::<f64>(common, sigma),
    }
}

fn build_in<F: Field>(common: &Common, sigma: Option<&str>) -> CmdResult {
    let sys = load_system::<F>(&common.input, false)?;
    let (sigma, defaulted) = sigma_or_default(sigma, sys.m())?;
    let pencil = fiedler_pencil(&sys, &sigma)?;
    let out = BuildOut {
        sigma: sigma.to_string(),
        note: defaulted.then_some("sigma omitted; first companion order used"),
        pencil: PencilJson::from_pencil(&pencil),
    };
    emit(common.out.as_deref(), &pretty(&out))?;
    Ok(ExitCode::SUCCESS)
}

pub fn zeros(common: &Common, sigma: Option<&str>, backend: Option<BackendArg>) -> CmdResult {
    let backend = match (backend, common.mode) {
        (Some(BackendArg::Exact), Mode::Float) => {
            return Err(CliError::new(2, "the exact backend requires --mode exact"));
        }
        (Some(BackendArg::Exact), _) | (None, Mode::Exact) => Backend::Exact,
        (Some(BackendArg::Numeric), _) | (None, Mode::Float) => Backend::Numeric,
    };
    match common.mode {
        Mode::Exact => zeros_in::<Rational>(common, sigma, backend),
        Mode::Float => zeros_in::<f64>(common, sigma, backend),
    }
}

fn zeros_in<F: Field>(common: &Common, sigma: Option<&str>, backend: Backend) -> CmdResult {
    let sys = load_system::<F>(&common.input, true)?;
    let (sigma, _) = sigma_or_default(sigma, sys.m())?;
    let report = classify_zeros(&sys, Some(&sigma), backend)?;
    emit(common.out.as_deref(), &pretty(&ZeroReportJson::from(&report)))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyLine {
    sigma: String,
    pencil_hash: String,
    residual_zero: bool,
    chain_ok: bool,
    unimodular: bool,
    system_shape: bool,
    det_constant: Option<String>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_defect: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateJson>,
}

#[derive(Serialize)]
struct VerifySummary {
    bijections: usize,
    passed: usize,
    failed: usize,
    distinct_pencils: usize,
}

fn pencil_hash(p: &SystemPencil<Rational>) -> String {
    let bytes = serde_json::to_vec(&PencilJson::from_pencil(p)).expect("serializable");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn max_m() -> usize {
    std::env::var("ROSEPEN_MAX_M").ok().and_then(|v| v.parse().ok()).unwrap_or(5)
}

fn verify_one(
    sys: &RosenbrockSystem<Rational>,
    sigma: &Bijection,
    pencil: &SystemPencil<Rational>,
    full: bool,
) -> Result<VerifyLine, Error> {
    let lp = pencil.to_poly_matrix();
    let det_s = sys.assemble_system_matrix().det()?;
    let det_l = lp.det()?;
    let det_constant = (!det_s.is_zero())
        .then(|| det_l.div_rem(&det_s))
        .filter(|(q, rem)| rem.is_zero() && q.degree() <= 0)
        .map(|(q, _)| format_rational(&q.coeff(0)));
    let hash = pencil_hash(pencil);
    if sys.m() < 2 {
        // The pencil is S(λ) itself; U = V = I.
        let ok = lp == sys.assemble_system_matrix();
        return Ok(VerifyLine {
            sigma: sigma.to_string(),
            pencil_hash: hash,
            residual_zero: ok,
            chain_ok: true,
            unimodular: true,
            system_shape: true,
            det_constant,
            pass: ok,
            first_defect: None,
            certificate: None,
        });
    }
    let cert = certify_pencil(sys, sigma, &lp)?;
    let r = sys.r();
    let unimodular = is_unimodular(&cert.u)? && is_unimodular(&cert.v)?;
    let system_shape = has_system_shape(&cert.u, r) && has_system_shape(&cert.v, r);
    let chain_ok = cert.steps.iter().all(|s| s.matches);
    let residual_zero = cert.residual_zero();
    Ok(VerifyLine {
        sigma: sigma.to_string(),
        pencil_hash: hash,
        residual_zero,
        chain_ok,
        unimodular,
        system_shape,
        det_constant,
        pass: residual_zero && chain_ok && unimodular && system_shape,
        first_defect: cert.first_defect(),
        certificate: full.then(|| CertificateJson::from(&cert)),
    })
}

pub fn verify(common: &Common, sigma: Option<&str>, all: bool, pencil_path: Option<&Path>, full: bool) -> CmdResult {
    require_exact(common, "verify")?;
    let sys = load_system::<Rational>(&common.input, false)?;
    let m = sys.m();
    let jobs: Vec<(Bijection, SystemPencil<Rational>)> = if let Some(path) = pencil_path {
        let (sigma, _) = sigma_or_default(sigma, m)?;
        let text = std::fs::read_to_string(path).map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))?;
        let pj: PencilJson = serde_json::from_str(&text).map_err(|e| CliError::new(2, e.to_string()))?;
        if (pj.n, pj.r, pj.m) != (sys.n(), sys.r(), m) {
            return Err(CliError::new(2, "pencil dimensions do not match the system"));
        }
        vec![(sigma, pj.to_pencil()?)]
    } else {
        let sigmas = if all {
            let bound = max_m();
            if m > bound {
                return Err(CliError::new(3, format!("m = {m} exceeds the sweep bound {bound} (ROSEPEN_MAX_M)")));
            }
            Bijection::all(m)
        } else {
            vec![sigma_or_default(sigma, m)?.0]
        };
        sigmas
            .into_iter()
            .map(|s| pencil_direct(&sys, &s).map(|p| (s, p)))
            .collect::<Result<_, _>>()?
    };
    let lines: Vec<VerifyLine> =
        jobs.par_iter().map(|(s, p)| verify_one(&sys, s, p, full)).collect::<Result<_, _>>()?;
    let passed = lines.iter().filter(|l| l.pass).count();
    let distinct: HashSet<&str> = lines.iter().map(|l| l.pencil_hash.as_str()).collect();
    let summary = VerifySummary {
        bijections: lines.len(),
        passed,
        failed: lines.len() - passed,
        distinct_pencils: distinct.len(),
    };
    let mut text = String::new();
    for l in &lines {
        text.push_str(&serde_json::to_string(l).expect("serializable"));
        text.push('\n');
    }
    text.push_str(&serde_json::to_string(&serde_json::json!({ "summary": summary })).expect("serializable"));
    text.push('\n');
    emit(common.out.as_deref(), &text)?;
    if summary.failed > 0 {
        eprintln!("error: {} of {} certificates failed", summary.failed, summary.bijections);
        return Ok(ExitCode::from(6));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CissOut {
    sigma: String,
    m: usize,
    ciss: Vec<usize>,
    c1: usize,
    i1: usize,
    consecutions: usize,
    inversions: usize,
    b_row_block: usize,
    c_col_block: usize,
}

pub fn ciss(sigma: &str) -> CmdResult {
    let sigma = Bijection::parse(sigma).map_err(|e| CliError::new(3, e.to_string()))?;
    let c = ciss_of(&sigma);
    let (b_row_block, c_col_block) = block_positions(&sigma);
    let out = CissOut {
        sigma: sigma.to_string(),
        m: sigma.m(),
        c1: c.c1(),
        i1: c.i1(),
        consecutions: c.consecutions(),
        inversions: c.inversions(),
        ciss: c.pairs,
        b_row_block,
        c_col_block,
    };
    emit(None, &pretty(&out))?;
    Ok(ExitCode::SUCCESS)
}

pub fn smith(common: &Common) -> CmdResult {
    require_exact(common, "smith")?;
    let sys = load_system::<Rational>(&common.input, true)?;
    let sf = smith_form(&sys.assemble_system_matrix());
    emit(common.out.as_deref(), &pretty(&SmithJson::from(&sf)))?;
    Ok(ExitCode::SUCCESS)
}

pub fn realize(common: &Common) -> CmdResult {
    match common.mode {
        Mode::Exact => realize_in::<Rational>(common),
        Mode::Float => realize_in::<f64>(common),
    }
}

fn realize_in<F: Field>(common: &Common) -> CmdResult {
    let Input::Rep(spec) = read_input(&common.input)? else {
        return Err(CliError::new(2, "expected a rational eigenproblem spec with `terms`"));
    };
    let real = realize_spec(&spec.to_spec::<F>()?)?;
    emit(common.out.as_deref(), &pretty(&RealizationJson::from(&real)))?;
    Ok(ExitCode::SUCCESS)
}
