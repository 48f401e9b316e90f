//! Python bindings for `splitcomb`.
//!
//! Weights are sequences of ints. Characters and decompositions come back as
//! dicts keyed by weight tuples, rational vectors as lists of
//! `fractions.Fraction`, and structured reports as plain dicts.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat, PyTuple};
use serde::Serialize;

use splitcomb::adlv::{self, AdlvQuery, BInput, MuInput};
use splitcomb::char_engine::{self, Character, FoldedDatum, DEFAULT_ORACLE_RANK_MAX};
use splitcomb::group_model::{parse_group_spec, validate};
use splitcomb::kottwitz::{self, TateSide};
use splitcomb::rational::RatVec;
use splitcomb::satake::{self, SatakeParameter, VSpec, ZetaStart};
use splitcomb::{catalog, lattice, Error, RootDatum};

create_exception!(splitcomb_py, SplitcombError, PyValueError, "A splitcomb domain error. `args[0]` is the error name.");

fn err(e: Error) -> PyErr {
    SplitcombError::new_err((e.name(), e.to_string()))
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for splitcomb::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn weight_dict<'py>(py: Python<'py>, m: &BTreeMap<Vec<i64>, u64>) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (w, k) in m {
        d.set_item(PyTuple::new(py, w)?, k)?;
    }
    Ok(d)
}

fn character_dict<'py>(py: Python<'py>, ch: &Character) -> PyResult<Bound<'py, PyDict>> {
    weight_dict(py, &ch.support)
}

fn fractions<'py>(py: Python<'py>, v: &RatVec) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let frac = py.import("fractions")?.getattr("Fraction")?;
    v.numerator().iter().map(|n| frac.call1((*n, v.denominator()))).collect()
}

fn rational_arg(x: &Bound<'_, PyAny>) -> PyResult<num_rational::BigRational> {
    if x.is_instance_of::<PyFloat>() {
        return Err(err(Error::NonRationalUnsupported));
    }
    let p: i64 = x.getattr("numerator")?.extract()?;
    let q: i64 = x.getattr("denominator")?.extract()?;
    Ok(satake::rational(p, q))
}

/// A group model: root datum of `G` with its Galois action.
#[pyclass(name = "GroupModel", module = "splitcomb_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGroupModel {
    inner: splitcomb::GroupModel,
}

#[pymethods]
impl PyGroupModel {
    /// Parses a `group-spec v1` JSON document. Raw models are not validated.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGroupModel { inner: parse_group_spec(text).py_err()? })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| err(Error::Parse(format!("{path}: {e}"))))?;
        Self::from_json(&text)
    }

    /// A built-in catalog model such as `"gl2"` or `"res_ram_gl2"`.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        catalog::by_name(name)
            .map(|inner| PyGroupModel { inner })
            .ok_or_else(|| err(Error::InvalidQuery(format!("no catalog model {name:?}"))))
    }

    #[staticmethod]
    fn catalog_names() -> Vec<&'static str> {
        catalog::all().into_iter().map(|(n, _)| n).collect()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label.clone()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Rank of the free part of `X_*(T)_I`.
    #[getter]
    fn folded_rank(&self) -> PyResult<usize> {
        Ok(FoldedDatum::new(&self.inner).py_err()?.datum.rank)
    }

    /// Violated invariants; empty when the model is valid.
    fn validate(&self) -> Vec<String> {
        validate(&self.inner).violations
    }

    fn __repr__(&self) -> String {
        format!("GroupModel({:?}, rank={})", self.inner.label, self.inner.rank())
    }
}

fn datum(model: &PyGroupModel, folded: bool) -> PyResult<RootDatum> {
    if folded {
        Ok(FoldedDatum::new(&model.inner).py_err()?.datum)
    } else {
        Ok(model.inner.datum.clone())
    }
}

#[pyfunction]
#[pyo3(signature = (model, mu, folded = false))]
fn weyl_dimension(model: &PyGroupModel, mu: Vec<i64>, folded: bool) -> PyResult<u64> {
    char_engine::weyl_dimension(&datum(model, folded)?, &mu).py_err()
}

#[pyfunction]
#[pyo3(signature = (model, mu, weight, folded = false))]
fn weight_multiplicity(model: &PyGroupModel, mu: Vec<i64>, weight: Vec<i64>, folded: bool) -> PyResult<u64> {
    char_engine::weight_multiplicity(&datum(model, folded)?, &mu, &weight).py_err()
}

#[pyfunction]
#[pyo3(signature = (model, mu, folded = false))]
fn full_character<'py>(py: Python<'py>, model: &PyGroupModel, mu: Vec<i64>, folded: bool) -> PyResult<Bound<'py, PyDict>> {
    character_dict(py, &char_engine::full_character(&datum(model, folded)?, &mu).py_err()?)
}

/// The brute-force character, by division of Weyl alternating sums.
#[pyfunction]
#[pyo3(signature = (model, mu, folded = false, rank_max = DEFAULT_ORACLE_RANK_MAX))]
fn oracle_character<'py>(
    py: Python<'py>,
    model: &PyGroupModel,
    mu: Vec<i64>,
    folded: bool,
    rank_max: usize,
) -> PyResult<Bound<'py, PyDict>> {
    character_dict(py, &char_engine::oracle_character(&datum(model, folded)?, &mu, rank_max).py_err()?)
}

#[pyfunction]
#[pyo3(signature = (model, mu, nu, folded = false))]
fn tensor_decompose<'py>(
    py: Python<'py>,
    model: &PyGroupModel,
    mu: Vec<i64>,
    nu: Vec<i64>,
    folded: bool,
) -> PyResult<Bound<'py, PyDict>> {
    weight_dict(py, &char_engine::tensor_decompose(&datum(model, folded)?, &mu, &nu).py_err()?)
}

#[pyfunction]
fn restrict_character<'py>(py: Python<'py>, model: &PyGroupModel, mu: Vec<i64>) -> PyResult<Bound<'py, PyDict>> {
    character_dict(py, &char_engine::restrict_character(&model.inner, &mu).py_err()?)
}

#[pyfunction]
fn branch_to_invariants<'py>(py: Python<'py>, model: &PyGroupModel, mu: Vec<i64>) -> PyResult<Bound<'py, PyDict>> {
    weight_dict(py, &char_engine::branch_to_invariants(&model.inner, &mu).py_err()?)
}

/// `κ(ϖ^τ)` as `(free, torsion)`.
#[pyfunction]
fn kottwitz_invariant(model: &PyGroupModel, tau: Vec<i64>) -> PyResult<(Vec<i64>, Vec<i64>)> {
    splitcomb::error::check_len(model.inner.rank(), &tau).py_err()?;
    let (_, q) = lattice::pi1_gamma(&model.inner);
    let g = q.project(&tau);
    Ok((g.free, g.torsion))
}

#[pyfunction]
fn newton_point<'py>(py: Python<'py>, model: &PyGroupModel, tau: Vec<i64>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    splitcomb::error::check_len(model.inner.rank(), &tau).py_err()?;
    fractions(py, &kottwitz::newton_point_vsp(&model.inner, &tau).py_err()?)
}

/// Newton point of the basic element of `B(G, μ)`.
#[pyfunction]
fn newton_basic<'py>(py: Python<'py>, model: &PyGroupModel, mu: Vec<i64>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    splitcomb::error::check_len(model.inner.rank(), &mu).py_err()?;
    fractions(py, &kottwitz::newton_basic(&model.inner, &mu).py_err()?)
}

#[pyfunction]
fn enumerate_vsp_bgmu(model: &PyGroupModel, mu: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
    splitcomb::error::check_len(model.inner.rank(), &mu).py_err()?;
    Ok(kottwitz::enumerate_vsp_bgmu(&model.inner, &mu).py_err()?.into_iter().map(|v| v.tau).collect())
}

#[pyfunction]
fn vsp_in_bgmu(model: &PyGroupModel, tau: Vec<i64>, mu: Vec<i64>) -> PyResult<bool> {
    kottwitz::vsp_in_bgmu(&model.inner, &tau, &mu).py_err()
}

/// Tate dimension of `V_μ|`, or of `V_{μ'_I}` when `canonical` is given.
#[pyfunction]
#[pyo3(signature = (model, mu, canonical = None))]
fn tate_dim(model: &PyGroupModel, mu: Vec<i64>, canonical: Option<Vec<i64>>) -> PyResult<u64> {
    let side = canonical.map_or(TateSide::Splitting, TateSide::Canonical);
    kottwitz::tate_dim(&model.inner, &mu, &side).py_err()
}

#[pyfunction]
fn basic_is_very_special<'py>(py: Python<'py>, model: &PyGroupModel, mu: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &kottwitz::basic_is_very_special(&model.inner, &mu).py_err()?)
}

fn build_query(
    model: &PyGroupModel,
    mu: Option<Vec<i64>>,
    mu_i: Option<Vec<i64>>,
    tau: Option<Vec<i64>>,
    basic: bool,
    defect: Option<i64>,
) -> PyResult<AdlvQuery> {
    let mu = match (mu, mu_i) {
        (Some(m), None) => MuInput::Splitting(m),
        (None, Some(m)) => MuInput::Canonical(m),
        _ => return Err(err(Error::InvalidQuery("give exactly one of mu and mu_i".into()))),
    };
    let b = match (tau, basic) {
        (Some(tau), false) => BInput::Vsp { tau },
        (None, true) => BInput::Basic { defect },
        _ => return Err(err(Error::InvalidQuery("give exactly one of tau and basic=True".into()))),
    };
    Ok(AdlvQuery::new(model.inner.clone(), mu, b))
}

#[pyfunction]
#[pyo3(signature = (model, mu = None, tau = None, basic = false, defect = None, mu_i = None))]
fn adlv_nonempty(
    model: &PyGroupModel,
    mu: Option<Vec<i64>>,
    tau: Option<Vec<i64>>,
    basic: bool,
    defect: Option<i64>,
    mu_i: Option<Vec<i64>>,
) -> PyResult<bool> {
    adlv::adlv_nonempty(&build_query(model, mu, mu_i, tau, basic, defect)?).py_err()
}

#[pyfunction]
#[pyo3(signature = (model, mu = None, tau = None, basic = false, defect = None, mu_i = None))]
fn adlv_dimension(
    model: &PyGroupModel,
    mu: Option<Vec<i64>>,
    tau: Option<Vec<i64>>,
    basic: bool,
    defect: Option<i64>,
    mu_i: Option<Vec<i64>>,
) -> PyResult<u64> {
    adlv::adlv_dimension(&build_query(model, mu, mu_i, tau, basic, defect)?).py_err()
}

/// Component table as a dict with `side`, `rows` and `total`; with
/// `mu_prime` the canonical table for `V_{μ'_I}`.
#[pyfunction]
#[pyo3(signature = (model, mu = None, tau = None, basic = false, defect = None, mu_i = None, mu_prime = None))]
#[allow(clippy::too_many_arguments)]
fn component_table<'py>(
    py: Python<'py>,
    model: &PyGroupModel,
    mu: Option<Vec<i64>>,
    tau: Option<Vec<i64>>,
    basic: bool,
    defect: Option<i64>,
    mu_i: Option<Vec<i64>>,
    mu_prime: Option<Vec<i64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let q = build_query(model, mu, mu_i, tau, basic, defect)?;
    let t = match mu_prime {
        Some(mp) => adlv::component_table_can(&q, &mp),
        None => adlv::component_table(&q),
    };
    to_py(py, &t.py_err()?)
}

#[pyfunction]
#[pyo3(signature = (model, mu, lambda_i, bound = adlv::DEFAULT_SEARCH_HEIGHT))]
fn minimal_nu<'py>(py: Python<'py>, model: &PyGroupModel, mu: Vec<i64>, lambda_i: Vec<i64>, bound: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &adlv::minimal_nu(&model.inner, &mu, &lambda_i, bound).py_err()?)
}

#[pyfunction]
fn beta_fiber_check(model: &PyGroupModel, nu_i: Vec<i64>, mu: Vec<i64>, lambda_i: Vec<i64>) -> PyResult<bool> {
    adlv::beta_fiber_check(&model.inner, &nu_i, &mu, &lambda_i).py_err()
}

fn zeta_start(one: bool) -> ZetaStart {
    if one {
        ZetaStart::One
    } else {
        ZetaStart::Zero
    }
}

/// Divisor entries `(alpha, sign, zeta)` of `V_μ` with `sign` `"-"` or `"+"`.
#[pyfunction]
#[pyo3(signature = (model, mu, zeta_from_one = false))]
fn determinant_divisor(model: &PyGroupModel, mu: Vec<i64>, zeta_from_one: bool) -> PyResult<Vec<(Vec<i64>, &'static str, u64)>> {
    let d = satake::determinant_divisor(&model.inner, &VSpec::Highest(mu), zeta_start(zeta_from_one)).py_err()?;
    Ok(d.entries
        .into_iter()
        .map(|e| {
            let sign = match e.sign {
                satake::FactorSign::Minus => "-",
                satake::FactorSign::Plus => "+",
            };
            (e.alpha, sign, e.zeta)
        })
        .collect())
}

fn parameter(model: &PyGroupModel, s: &Bound<'_, PyAny>, basis: Option<Vec<Vec<i64>>>) -> PyResult<SatakeParameter> {
    let values = s.try_iter()?.map(|x| rational_arg(&x?)).collect::<PyResult<Vec<_>>>()?;
    match basis {
        Some(b) => SatakeParameter::on_basis(&model.inner, b, values),
        None => SatakeParameter::on_invariants(&model.inner, values),
    }
    .py_err()
}

/// `s` is given by rational values (ints or `Fraction`s) on `basis`, or on
/// the canonical basis of `X_*(T)_I^σ` when `basis` is omitted.
#[pyfunction]
#[pyo3(signature = (model, mu, s, basis = None, zeta_from_one = false))]
fn is_v_general(
    model: &PyGroupModel,
    mu: Vec<i64>,
    s: &Bound<'_, PyAny>,
    basis: Option<Vec<Vec<i64>>>,
    zeta_from_one: bool,
) -> PyResult<bool> {
    let p = parameter(model, s, basis)?;
    satake::is_v_general(&model.inner, &VSpec::Highest(mu), &p, zeta_start(zeta_from_one)).py_err()
}

#[pyfunction]
#[pyo3(signature = (model, mu, s, basis = None))]
fn is_strongly_v_general(model: &PyGroupModel, mu: Vec<i64>, s: &Bound<'_, PyAny>, basis: Option<Vec<Vec<i64>>>) -> PyResult<bool> {
    let p = parameter(model, s, basis)?;
    satake::is_strongly_v_general(&model.inner, &VSpec::Highest(mu), &p).py_err()
}

/// Runs the command line in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = splitcomb::cli::run(std::iter::once("splitcomb".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
pub fn splitcomb_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", splitcomb::VERSION)?;
    m.add("SplitcombError", m.py().get_type::<SplitcombError>())?;
    m.add_class::<PyGroupModel>()?;
    m.add_function(wrap_pyfunction!(weyl_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(weight_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(full_character, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_character, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(restrict_character, m)?)?;
    m.add_function(wrap_pyfunction!(branch_to_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(kottwitz_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(newton_point, m)?)?;
    m.add_function(wrap_pyfunction!(newton_basic, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_vsp_bgmu, m)?)?;
    m.add_function(wrap_pyfunction!(vsp_in_bgmu, m)?)?;
    m.add_function(wrap_pyfunction!(tate_dim, m)?)?;
    m.add_function(wrap_pyfunction!(basic_is_very_special, m)?)?;
    m.add_function(wrap_pyfunction!(adlv_nonempty, m)?)?;
    m.add_function(wrap_pyfunction!(adlv_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(component_table, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_nu, m)?)?;
    m.add_function(wrap_pyfunction!(beta_fiber_check, m)?)?;
    m.add_function(wrap_pyfunction!(determinant_divisor, m)?)?;
    m.add_function(wrap_pyfunction!(is_v_general, m)?)?;
    m.add_function(wrap_pyfunction!(is_strongly_v_general, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
