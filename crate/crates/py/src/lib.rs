//! Python bindings. Structured results come back as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::{json, Value};

use qschubert::braid;
use qschubert::coinv::{self, Coinv};
use qschubert::isomaps::{self, MapKind};
use qschubert::nilrad::{self, Nilrad};
use qschubert::oracle::{Oracle, DEFAULT_CAP};
use qschubert::report::Report;
use qschubert::scalars::{Param, RatFunc};
use qschubert::weyl::{build_parabolic, ParabolicData};

fn err(e: qschubert::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(x) => match (x.as_i64(), x.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (_, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => x.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn parabolic_data(n: usize, j: Vec<usize>) -> PyResult<ParabolicData> {
    build_parabolic(n, &j).map_err(err)
}

fn report<'py>(py: Python<'py>, r: &Report) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &r.to_json())
}

/// Rational function in `q`, parsed from and rendered to the scalar grammar.
#[pyclass(name = "RatFunc", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRatFunc(RatFunc);

#[pymethods]
impl PyRatFunc {
    #[new]
    fn new(s: &str) -> PyResult<Self> {
        s.parse().map(PyRatFunc).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RatFunc('{}')", self.0)
    }

    fn __add__(&self, o: &Self) -> Self {
        PyRatFunc(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyRatFunc(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyRatFunc(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_div(&o.0).map(PyRatFunc).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyRatFunc(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Substitutes `q -> q^{-1}`.
    fn bar(&self) -> Self {
        PyRatFunc(self.0.subst_q_inverse())
    }
}

/// Blocks, `w_J`, its reduced word and `Phi_J` in convex order.
#[pyfunction]
fn parabolic(py: Python<'_>, n: usize, j: Vec<usize>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &parabolic_data(n, j)?.to_json())
}

/// Generators and relations of the nilradical algebra.
#[pyfunction]
fn presentation(py: Python<'_>, n: usize, j: Vec<usize>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &nilrad::presentation(&parabolic_data(n, j)?, Param::Q).map_err(err)?)
}

/// Generators `u_ij` and the relation table of the coinvariant algebra.
#[pyfunction]
fn coinv_presentation(py: Python<'_>, n: usize, j: Vec<usize>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &coinv::coinv_presentation(&parabolic_data(n, j)?, Param::Q))
}

/// Root vectors as free-algebra expansions: `[(i, j), {word: coeff}]`.
#[pyfunction]
#[pyo3(signature = (n, j, oracle_cap = DEFAULT_CAP))]
fn root_vectors(py: Python<'_>, n: usize, j: Vec<usize>, oracle_cap: usize) -> PyResult<Bound<'_, PyAny>> {
    let pd = parabolic_data(n, j)?;
    let table = braid::root_vectors(&pd, &Oracle::new(oracle_cap)).map_err(err)?;
    let out: Vec<Value> = table
        .order
        .iter()
        .map(|&(i, k)| {
            let x = table.get(i, k).expect("root in table");
            let terms: serde_json::Map<String, Value> = x
                .lin()
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| (w.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","), json!(c.to_string())))
                .collect();
            json!([[i, k], terms])
        })
        .collect();
    to_py(py, &Value::Array(out))
}

/// Normal form of a product of generators `X_ij` in the nilradical.
#[pyfunction]
fn nilrad_normal_form(py: Python<'_>, n: usize, j: Vec<usize>, word: Vec<(usize, usize)>) -> PyResult<Bound<'_, PyAny>> {
    let pd = parabolic_data(n, j)?;
    let alg = Nilrad::new(&pd, Param::Q);
    let nf = nilrad::pbw_normalize(&alg, &[(RatFunc::one(), word)]).map_err(err)?;
    let mut terms: Vec<(Vec<u16>, String)> = nf.lin().iter().map(|(m, c)| (m.clone(), c.to_string())).collect();
    terms.sort();
    let out: Vec<Value> = terms
        .into_iter()
        .map(|(m, c)| json!({"monomial": m.iter().map(|&p| json!([pd.phi[p as usize].0, pd.phi[p as usize].1])).collect::<Vec<_>>(), "coeff": c}))
        .collect();
    to_py(py, &Value::Array(out))
}

#[pyfunction]
#[pyo3(signature = (n, j, oracle_cap = DEFAULT_CAP))]
fn verify_theorem(py: Python<'_>, n: usize, j: Vec<usize>, oracle_cap: usize) -> PyResult<Bound<'_, PyAny>> {
    let pd = parabolic_data(n, j)?;
    let r = py.detach(|| nilrad::verify_theorem_relations(&pd, &Oracle::new(oracle_cap))).map_err(err)?;
    report(py, &r)
}

#[pyfunction]
#[pyo3(signature = (id, n, j = Vec::new(), oracle_cap = DEFAULT_CAP))]
fn verify_lemma<'py>(py: Python<'py>, id: &str, n: usize, j: Vec<usize>, oracle_cap: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| braid::verify_lemma(id, n, &j, &Oracle::new(oracle_cap))).map_err(err)?;
    report(py, &r)
}

#[pyfunction]
#[pyo3(signature = (n, j, cap = DEFAULT_CAP))]
fn verify_coinvariants(py: Python<'_>, n: usize, j: Vec<usize>, cap: usize) -> PyResult<Bound<'_, PyAny>> {
    let pd = parabolic_data(n, j)?;
    let r = py.detach(|| coinv::coinv_suite(&pd, cap)).map_err(err)?;
    report(py, &r)
}

/// `verify_hom` for one of "reflect", "neg_q", "qsc_to_coinv", "psi".
#[pyfunction]
#[pyo3(signature = (kind, n, j, cap = DEFAULT_CAP))]
fn verify_map<'py>(py: Python<'py>, kind: &str, n: usize, j: Vec<usize>, cap: usize) -> PyResult<Bound<'py, PyAny>> {
    let pd = parabolic_data(n, j)?;
    let kind = MapKind::parse(kind).map_err(err)?;
    let r = py.detach(|| isomaps::build_map(kind, &pd).and_then(|m| isomaps::verify_hom(&m, cap))).map_err(err)?;
    report(py, &r)
}

#[pyfunction]
#[pyo3(signature = (n, j, cap = DEFAULT_CAP))]
fn verify_smash(py: Python<'_>, n: usize, j: Vec<usize>, cap: usize) -> PyResult<Bound<'_, PyAny>> {
    let pd = parabolic_data(n, j)?;
    let r = py
        .detach(|| Coinv::new(&pd, Param::Q, cap).map(|co| coinv::smash_iso_check(&co)))
        .map_err(err)?;
    report(py, &r)
}

#[pymodule]
#[pyo3(name = "qschubert")]
fn qschubert_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRatFunc>()?;
    m.add_function(wrap_pyfunction!(parabolic, m)?)?;
    m.add_function(wrap_pyfunction!(presentation, m)?)?;
    m.add_function(wrap_pyfunction!(coinv_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(root_vectors, m)?)?;
    m.add_function(wrap_pyfunction!(nilrad_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma, m)?)?;
    m.add_function(wrap_pyfunction!(verify_coinvariants, m)?)?;
    m.add_function(wrap_pyfunction!(verify_map, m)?)?;
    m.add_function(wrap_pyfunction!(verify_smash, m)?)?;
    Ok(())
}
