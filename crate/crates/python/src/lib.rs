//! Python access to puro-core. Sequences are lists of ints, monomials are
//! exponent lists, reports come back as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use puro_core::level::LevelAlgebra;
use puro_core::purity::{self, SearchBudget};
use puro_core::simplicial::{self, FVector};
use puro_core::{macaulay, sequence, IntSeq, Monomial};

fn err(e: puro_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let list = PyList::empty(py);
            for x in a {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn report<'py, T: serde::Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn monomials(gens: Vec<Vec<u32>>) -> Vec<Monomial> {
    gens.into_iter().map(Monomial::new).collect()
}

fn exps(ms: &[Monomial]) -> Vec<Vec<u32>> {
    ms.iter().map(|m| m.exps().to_vec()).collect()
}

#[pyfunction]
fn is_o_sequence(h: Vec<u64>) -> bool {
    macaulay::is_o_sequence(&IntSeq::new(h))
}

/// Largest possible `h_{d+1}` after `h_d = n`.
#[pyfunction]
fn macaulay_bound(n: u64, d: u32) -> String {
    macaulay::macaulay_bound(n, d).to_string()
}

#[pyfunction]
fn shape<'py>(py: Python<'py>, h: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
    report(py, &sequence::shape(&IntSeq::new(h)))
}

#[pyfunction]
fn hibi_violation(h: Vec<u64>) -> Option<(usize, usize)> {
    sequence::hibi_violation(&IntSeq::new(h))
}

/// Purity verdict as a dict; `witness` is a list of exponent lists or None.
#[pyfunction]
#[pyo3(signature = (h, max_nodes = 50_000_000, max_seconds = 60.0, fast_paths = true))]
fn decide_pure<'py>(
    py: Python<'py>,
    h: Vec<u64>,
    max_nodes: u64,
    max_seconds: f64,
    fast_paths: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let mut budget = SearchBudget::new(max_nodes, max_seconds, 64).map_err(err)?;
    if !fast_paths {
        budget = budget.without_fast_paths();
    }
    let v = py
        .detach(|| purity::decide_pure(&IntSeq::new(h), &budget))
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("status", report(py, &v.status)?)?;
    d.set_item("witness", v.witness.as_deref().map(exps))?;
    d.set_item("route", report(py, &v.route)?)?;
    d.set_item("nodes", v.nodes_explored)?;
    d.set_item("budget_hit", v.budget_hit)?;
    Ok(d)
}

/// Pure O-sequences with codimension `r`, socle degree `e` and optional type.
#[pyfunction]
#[pyo3(signature = (r, e, t = None, max_nodes = 2_000_000_000, max_seconds = 600.0))]
fn enumerate_pure(
    py: Python<'_>,
    r: usize,
    e: u32,
    t: Option<u64>,
    max_nodes: u64,
    max_seconds: f64,
) -> PyResult<Vec<Vec<u64>>> {
    let budget = SearchBudget::new(max_nodes, max_seconds, 64).map_err(err)?;
    let out = py
        .detach(|| purity::enumerate_pure(r, e, t, &budget))
        .map_err(err)?;
    if !out.complete {
        return Err(PyValueError::new_err(format!(
            "budget exhausted with {} sequences unresolved",
            out.unresolved.len()
        )));
    }
    Ok(out.sequences.into_iter().map(IntSeq::into_vec).collect())
}

/// Hilbert function of the order ideal generated by the given monomials.
#[pyfunction]
fn order_ideal_h_vector(gens: Vec<Vec<u32>>) -> PyResult<Vec<u64>> {
    Ok(puro_core::OrderIdeal::closure(&monomials(gens))
        .map_err(err)?
        .h_vector()
        .into_vec())
}

/// Artinian monomial algebra, from an inverse system or an ideal.
#[pyclass(name = "LevelAlgebra", frozen)]
struct PyLevelAlgebra(LevelAlgebra);

#[pymethods]
impl PyLevelAlgebra {
    #[staticmethod]
    fn from_inverse_system(gens: Vec<Vec<u32>>) -> PyResult<Self> {
        LevelAlgebra::from_inverse_system(&monomials(gens))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn from_ideal(gens: Vec<Vec<u32>>) -> PyResult<Self> {
        LevelAlgebra::from_ideal(&monomials(gens))
            .map(Self)
            .map_err(err)
    }

    fn hilbert(&self) -> Vec<u64> {
        self.0.hilbert().into_vec()
    }

    fn socle_type(&self) -> usize {
        self.0.socle_type()
    }

    fn is_level(&self) -> bool {
        self.0.is_level()
    }

    fn socle_generators(&self) -> Vec<Vec<u32>> {
        exps(self.0.socle_generators())
    }

    /// Rank profile of multiplication by the sum of the variables.
    fn wlp<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &self.0.wlp_report())
    }

    /// One report per power of the linear form.
    fn slp<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &self.0.slp_report())
    }

    fn has_wlp_in_char(&self, p: u64) -> bool {
        self.0.wlp_report().passes_in_char(p)
    }

    fn __repr__(&self) -> String {
        format!(
            "LevelAlgebra(h={}, type={})",
            self.0.hilbert(),
            self.0.socle_type()
        )
    }
}

fn fvec(f: Vec<u64>) -> PyResult<FVector> {
    FVector::new(f).map_err(err)
}

#[pyfunction]
fn f_to_h(f: Vec<u64>) -> PyResult<Vec<i64>> {
    simplicial::f_to_h(&fvec(f)?).map_err(err)
}

#[pyfunction]
fn h_to_f(h: Vec<i64>, d: usize) -> PyResult<Vec<u64>> {
    Ok(simplicial::h_to_f(&h, d).map_err(err)?.entries().to_vec())
}

#[pyfunction]
fn is_cm(f: Vec<u64>) -> PyResult<bool> {
    Ok(simplicial::is_cm(&fvec(f)?))
}

/// f-vector of the pure type-2 complex with `e` vertices per facet sharing `h`.
#[pyfunction]
fn pure_f_type2(e: u64, h: u64) -> PyResult<Vec<u64>> {
    Ok(simplicial::pure_f_type2(e, h)
        .map_err(err)?
        .entries()
        .to_vec())
}

#[pyfunction]
fn type2_inequality_check(f: Vec<u64>) -> PyResult<bool> {
    Ok(simplicial::type2_inequality_check(&fvec(f)?))
}

#[pymodule]
fn puro(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(is_o_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(macaulay_bound, m)?)?;
    m.add_function(wrap_pyfunction!(shape, m)?)?;
    m.add_function(wrap_pyfunction!(hibi_violation, m)?)?;
    m.add_function(wrap_pyfunction!(decide_pure, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_pure, m)?)?;
    m.add_function(wrap_pyfunction!(order_ideal_h_vector, m)?)?;
    m.add_function(wrap_pyfunction!(f_to_h, m)?)?;
    m.add_function(wrap_pyfunction!(h_to_f, m)?)?;
    m.add_function(wrap_pyfunction!(is_cm, m)?)?;
    m.add_function(wrap_pyfunction!(pure_f_type2, m)?)?;
    m.add_function(wrap_pyfunction!(type2_inequality_check, m)?)?;
    m.add_class::<PyLevelAlgebra>()?;
    Ok(())
}
