//! Python bindings. Rationals cross the boundary as strings like `"-3/4"`;
//! structured results come back as plain dicts and lists.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use qtwist_core::cartan::validate_cartan;
use qtwist_core::cocycles::GroupCocycleTable;
use qtwist_core::datum::{validate_reduced_datum, QMatrix, ReducedDatum};
use qtwist_core::ideals::{graded_dimension, ideal_member, Presentation};
use qtwist_core::qgroups::{self, default_bound, SerreKind};
use qtwist_core::racks::{self, TranspositionCocycle};
use qtwist_core::smash::render;
use qtwist_core::yd::symmetric_group;
use qtwist_core::Rational;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rat(s: &str) -> PyResult<Rational> {
    s.parse().map_err(err)
}

fn rats(v: &[String]) -> PyResult<Vec<Rational>> {
    v.iter().map(|s| rat(s)).collect()
}

fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn cocycle_kind(name: &str) -> PyResult<TranspositionCocycle> {
    match name {
        "minus_one" | "-1" => Ok(TranspositionCocycle::MinusOne),
        "chi" => Ok(TranspositionCocycle::Chi),
        other => Err(PyValueError::new_err(format!("unknown cocycle {other:?}"))),
    }
}

/// Reduced YD-datum of Cartan type with braiding matrix `q` and linking parameters.
#[pyclass(name = "Datum", frozen)]
struct PyDatum {
    inner: ReducedDatum,
}

#[pymethods]
impl PyDatum {
    #[new]
    #[pyo3(signature = (cartan, q, linking=None))]
    fn new(cartan: Vec<Vec<i64>>, q: Vec<Vec<String>>, linking: Option<Vec<String>>) -> PyResult<Self> {
        let cartan = validate_cartan(cartan).map_err(err)?;
        let q = QMatrix::new(q.iter().map(|row| rats(row)).collect::<PyResult<_>>()?).map_err(err)?;
        let linking = linking.map(|l| rats(&l)).transpose()?;
        Ok(PyDatum { inner: validate_reduced_datum(cartan, q, linking).map_err(err)? })
    }

    #[getter]
    fn theta(&self) -> usize {
        self.inner.theta()
    }

    #[getter]
    fn q(&self) -> Vec<Vec<String>> {
        self.inner.q().rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    #[getter]
    fn linking(&self) -> Vec<String> {
        self.inner.linking().iter().map(|x| x.to_string()).collect()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings().to_vec()
    }

    /// The filtration bound used when none is given.
    fn default_bound(&self) -> usize {
        default_bound(&self.inner)
    }

    /// Presentation of U~(D, l) on letters x_i, y_i over Z^{2 theta}.
    fn ured(&self) -> PyResult<PyPresentation> {
        Ok(PyPresentation { inner: qgroups::build_ured(&self.inner).map_err(err)? })
    }

    /// Presentation of U_q(g_A) on letters e_i, F_i.
    #[pyo3(signature = (r5_constant=None))]
    fn hpr(&self, r5_constant: Option<&str>) -> PyResult<PyPresentation> {
        let c = r5_constant.map(rat).transpose()?;
        let (_, p) = qgroups::build_hpr(&self.inner, c.as_ref()).map_err(err)?;
        Ok(PyPresentation { inner: p })
    }

    /// Quantum Serre element for 1-based indices `i != j` and `kind` in {"x", "y"}.
    #[pyo3(signature = (kind, i, j, n=None))]
    fn serre(&self, kind: &str, i: usize, j: usize, n: Option<u32>) -> PyResult<String> {
        let kind = match kind {
            "x" => SerreKind::X,
            "y" => SerreKind::Y,
            other => return Err(PyValueError::new_err(format!("kind must be x or y, got {other:?}"))),
        };
        let t = self.inner.theta();
        if i == 0 || j == 0 || i > t || j > t {
            return Err(PyValueError::new_err(format!("indices ({i}, {j}) out of range for rank {t}")));
        }
        let n = n.unwrap_or((1 - self.inner.cartan().get(i - 1, j - 1)).max(0) as u32);
        let z = qgroups::serre_expand(kind, i - 1, j - 1, n, &self.inner).map_err(err)?;
        Ok(render(&self.inner.module(), &z))
    }

    fn __repr__(&self) -> String {
        format!("Datum(theta={}, q={:?})", self.inner.theta(), self.q())
    }
}

/// Finite presentation of a quotient of a bosonization.
#[pyclass(name = "Presentation", frozen)]
struct PyPresentation {
    inner: Presentation,
}

#[pymethods]
impl PyPresentation {
    #[getter]
    fn letters(&self) -> Vec<String> {
        self.inner.model().names().to_vec()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn bound(&self) -> usize {
        self.inner.bound()
    }

    fn relations(&self) -> Vec<(String, String)> {
        let v = self.inner.model();
        self.inner.labels().iter().cloned().zip(self.inner.relations().iter().map(|r| render(v, r))).collect()
    }

    /// Dimension of the degree-d part of the quotient (homogeneous relations only).
    fn graded_dimension(&self, d: usize) -> PyResult<usize> {
        graded_dimension(&self.inner, d).map_err(err)
    }

    /// Whether relation `index` lies in the ideal of the others, at filtration bound `bound`.
    fn relation_redundant(&self, index: usize, bound: usize) -> PyResult<bool> {
        let rels = self.inner.relations();
        let target = rels.get(index).ok_or_else(|| PyValueError::new_err("relation index out of range"))?;
        let others: Vec<_> = self
            .inner
            .labels()
            .iter()
            .cloned()
            .zip(rels.iter().cloned())
            .enumerate()
            .filter(|(k, _)| *k != index)
            .map(|(_, x)| x)
            .collect();
        let p = Presentation::new(self.inner.model().clone(), others, bound).map_err(err)?;
        Ok(ideal_member(target, &p, bound).map_err(err)?.decision)
    }

    fn __len__(&self) -> usize {
        self.inner.relations().len()
    }
}

/// q-binomial coefficient as an exact rational string.
#[pyfunction]
fn q_binom(n: u32, k: u32, q: &str) -> PyResult<String> {
    Ok(qtwist_core::q_binom(n, k, &rat(q)?).map_err(err)?.to_string())
}

/// Checks U_q(g_A) against U~(D_q, l) in both directions at filtration bound `bound`.
#[pyfunction]
#[pyo3(signature = (datum, bound=None, r5_constant=None))]
fn verify_isomorphism<'py>(
    py: Python<'py>,
    datum: &PyDatum,
    bound: Option<usize>,
    r5_constant: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let c = r5_constant.map(rat).transpose()?;
    let bound = bound.unwrap_or_else(|| default_bound(&datum.inner));
    let rep = py.detach(|| qgroups::verify_isomorphism(&datum.inner, bound, c.as_ref())).map_err(err)?;
    to_py(py, &rep)
}

/// Deforms the datum by its DJ-twist; returns the report with the twisted datum and cocycle.
#[pyfunction]
#[pyo3(signature = (datum, q_components, bound=None))]
fn twist_to_dj<'py>(
    py: Python<'py>,
    datum: &PyDatum,
    q_components: Vec<String>,
    bound: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let qc = rats(&q_components)?;
    let bound = bound.unwrap_or_else(|| default_bound(&datum.inner));
    let out = py.detach(|| qgroups::twist_to_dj(&datum.inner, &qc, bound)).map_err(err)?;
    let value = serde_json::json!({
        "pass": out.report.pass,
        "checks": out.report.checks,
        "qhat": out.dj.qhat().rows(),
        "sigma": out.sigma.describe(),
    });
    to_py(py, &value)
}

/// Graded dimensions of B(O_2^n, q) through `max_deg`.
#[pyfunction]
fn nichols_hilbert(py: Python<'_>, n: usize, cocycle: &str, max_deg: usize) -> PyResult<Vec<usize>> {
    let kind = cocycle_kind(cocycle)?;
    py.detach(|| racks::nichols_hilbert(n, kind, max_deg)).map_err(err)
}

/// Labels and rendered relations of the Fomin-Kirillov type presentation.
#[pyfunction]
fn fk_relations(n: usize, cocycle: &str) -> PyResult<PyPresentation> {
    Ok(PyPresentation { inner: racks::fk_relations(n, cocycle_kind(cocycle)?).map_err(err)? })
}

/// Transpositions of S_n in the canonical order.
#[pyfunction]
fn transpositions(n: usize) -> PyResult<Vec<String>> {
    Ok(racks::transposition_rack(n).map_err(err)?.rack().elements().to_vec())
}

#[pyfunction]
fn verify_exp_deformation<'py>(py: Python<'py>, n: usize, lam: &str) -> PyResult<Bound<'py, PyAny>> {
    let lam = rat(lam)?;
    let rep = py.detach(|| racks::verify_exp_deformation(n, &lam)).map_err(err)?;
    to_py(py, &rep)
}

/// A {+1, -1} 2-cocycle on S_n twisting chi to -1, as `{"g,h": "-1"}`, or None.
#[pyfunction]
fn search_twist_table(py: Python<'_>, n: usize) -> PyResult<Option<BTreeMap<String, String>>> {
    let t = py.detach(|| racks::search_twist_table(n)).map_err(err)?;
    Ok(t.map(|t| racks::render_group_table(&t)))
}

#[pyfunction]
fn compose_with_group_twist<'py>(
    py: Python<'py>,
    n: usize,
    phi: BTreeMap<String, String>,
    lam: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let lam = rat(lam)?;
    let table = GroupCocycleTable::new(racks::parse_group_table(n, &phi).map_err(err)?, &symmetric_group(n)).map_err(err)?;
    let rep = py.detach(|| racks::compose_with_group_twist(n, &table, &lam)).map_err(err)?;
    to_py(py, &rep)
}

/// Runs a CLI command on a JSON input document and returns `(exit_code, report)`.
#[pyfunction]
#[pyo3(signature = (command, input_json, max_degree=None))]
fn run<'py>(
    py: Python<'py>,
    command: &str,
    input_json: &str,
    max_degree: Option<usize>,
) -> PyResult<(i32, Bound<'py, PyAny>)> {
    let job = qtwist_cli::parse_input(command, input_json, max_degree).map_err(err)?;
    let report = py.detach(|| qtwist_cli::execute(&job));
    Ok((report.exit_code(), to_py(py, &report)?))
}

#[pymodule]
fn qtwist(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDatum>()?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(q_binom, m)?)?;
    m.add_function(wrap_pyfunction!(verify_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(twist_to_dj, m)?)?;
    m.add_function(wrap_pyfunction!(nichols_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(fk_relations, m)?)?;
    m.add_function(wrap_pyfunction!(transpositions, m)?)?;
    m.add_function(wrap_pyfunction!(verify_exp_deformation, m)?)?;
    m.add_function(wrap_pyfunction!(search_twist_table, m)?)?;
    m.add_function(wrap_pyfunction!(compose_with_group_twist, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
