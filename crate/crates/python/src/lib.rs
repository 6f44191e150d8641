use num_rational::BigRational;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use weaklg::{catalog, dseries, laurent, polytope, search};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.to_string(),))
}

fn fractions<'py>(py: Python<'py>, qs: &[BigRational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    qs.iter().map(|q| fraction(py, q)).collect()
}

/// Accepts ints, Fractions or strings such as "3/4".
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    let text = obj.str()?.to_string();
    weaklg::text::parse_rational(text.trim()).map_err(err)
}

/// Sparse Laurent polynomial with exact rational coefficients.
#[pyclass(name = "LaurentPoly", frozen)]
struct PyLaurent(laurent::LaurentPoly);

#[pymethods]
impl PyLaurent {
    /// `terms` is a list of `(coefficient, exponents)` pairs.
    #[new]
    fn new(dim: usize, terms: Vec<(Bound<'_, PyAny>, Vec<i64>)>) -> PyResult<Self> {
        let terms = terms
            .iter()
            .map(|(c, e)| Ok((laurent::Monomial::from(e.clone()), rational(c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        laurent::LaurentPoly::from_terms(dim, terms).map(PyLaurent).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        laurent::LaurentPoly::parse(text).map(PyLaurent).map_err(err)
    }

    /// Model polynomial of a catalog entry.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let rec = catalog::builtin(name).map_err(|e| PyKeyError::new_err(e.to_string()))?;
        rec.model.map(PyLaurent).ok_or_else(|| PyKeyError::new_err(format!("{name} has no model")))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Bound<'py, PyAny>, Vec<i64>)>> {
        self.0.terms().map(|(m, c)| Ok((fraction(py, c)?, m.exponents().to_vec()))).collect()
    }

    fn __mul__(&self, other: &PyLaurent) -> PyResult<Self> {
        self.0.mul(&other.0).map(PyLaurent).map_err(err)
    }

    fn __add__(&self, other: &PyLaurent) -> PyResult<Self> {
        self.0.add(&other.0).map(PyLaurent).map_err(err)
    }

    fn __pow__(&self, exp: u32, _modulo: Option<Bound<'_, PyAny>>) -> Self {
        PyLaurent(self.0.pow(exp))
    }

    fn __eq__(&self, other: &PyLaurent) -> bool {
        self.0 == other.0
    }

    fn constant_term<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.constant_term())
    }

    /// `[f^i]_0` for `i = 0..=n`.
    #[pyo3(signature = (n, mitm = false))]
    fn constant_term_series<'py>(
        &self,
        py: Python<'py>,
        n: usize,
        mitm: bool,
    ) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let s = if mitm {
            laurent::constant_term_series_mitm(&self.0, n)
        } else {
            laurent::constant_term_series(&self.0, n)
        };
        fractions(py, s.coeffs())
    }

    fn substitute_monomial(&self, matrix: Vec<Vec<i64>>) -> PyResult<Self> {
        self.0.substitute_monomial(&matrix).map(PyLaurent).map_err(err)
    }

    fn resize(&self, alpha: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let alpha = alpha.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
        self.0.resize(&alpha).map(PyLaurent).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly(dim={}, terms={})", self.0.dim(), self.0.len())
    }
}

/// Differential operator `sum_j t^j P_j(D)` with `D = t d/dt`.
#[pyclass(name = "DOperator", frozen)]
struct PyOperator(dseries::DOperator);

#[pymethods]
impl PyOperator {
    /// `table[j][l]` is the coefficient of `t^j D^l`.
    #[new]
    fn new(table: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let table = table
            .iter()
            .map(|row| row.iter().map(rational).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        dseries::DOperator::new(table).map(PyOperator).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        dseries::DOperator::parse(text).map(PyOperator).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (name, derived = false))]
    fn builtin(name: &str, derived: bool) -> PyResult<Self> {
        let rec = catalog::builtin(name).map_err(|e| PyKeyError::new_err(e.to_string()))?;
        if derived {
            rec.derived_operator
                .map(PyOperator)
                .ok_or_else(|| PyKeyError::new_err(format!("{name} has no derived operator")))
        } else {
            Ok(PyOperator(rec.operator))
        }
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn t_degree(&self) -> usize {
        self.0.t_degree()
    }

    fn table<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.0.table().iter().map(|row| fractions(py, row)).collect()
    }

    fn solve_series<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let s = dseries::solve_series(&self.0, n).map_err(err)?;
        fractions(py, s.coeffs())
    }

    fn equals_up_to_scalar(&self, other: &PyOperator) -> bool {
        self.0.equals_up_to_scalar(&other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DOperator(order={}, tdeg={})", self.0.order(), self.0.t_degree())
    }
}

fn series_arg(coeffs: &[Bound<'_, PyAny>]) -> PyResult<laurent::PowerSeries> {
    if coeffs.is_empty() {
        return Err(PyValueError::new_err("series needs at least one coefficient"));
    }
    Ok(laurent::PowerSeries::new(coeffs.iter().map(rational).collect::<PyResult<_>>()?))
}

fn kv_dict<'py>(py: Python<'py>, doc: &weaklg::text::KvDocument) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (k, v) in doc.entries() {
        d.set_item(k, v)?;
    }
    Ok(d)
}

/// Compares the constant-term series of `f` with the solution of `op`;
/// returns the report as a dict of strings.
#[pyfunction]
fn verify<'py>(py: Python<'py>, f: &PyLaurent, op: &PyOperator, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let report = dseries::verify_weak_lg(&f.0, &op.0, n).map_err(err)?;
    kv_dict(py, &report.to_kv())
}

#[pyfunction]
fn fit_operator(series: Vec<Bound<'_, PyAny>>, m: usize, r: usize) -> PyResult<Vec<PyOperator>> {
    let s = series_arg(&series)?;
    Ok(dseries::fit_operator(&s, m, r).map_err(err)?.into_iter().map(PyOperator).collect())
}

/// Toric invariants of the convex hull of `vertices`, optionally checked
/// against a catalog entry.
#[pyfunction]
#[pyo3(signature = (vertices, expect = None))]
fn polytope_invariants<'py>(
    py: Python<'py>,
    vertices: Vec<Vec<i64>>,
    expect: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = polytope::convex_hull(&vertices).map_err(err)?;
    let rec = expect.map(catalog::builtin).transpose().map_err(|e| PyKeyError::new_err(e.to_string()))?;
    let report = polytope::invariant_report(&p, rec.as_ref()).map_err(err)?;
    kv_dict(py, &report.to_kv())
}

#[pyfunction]
fn newton_polytope_vertices(f: &PyLaurent) -> PyResult<Vec<Vec<i64>>> {
    Ok(polytope::newton_polytope(&f.0).map_err(err)?.vertices().to_vec())
}

/// Runs the modular search on an ansatz given in its text format.
#[pyfunction]
#[pyo3(signature = (ansatz, target, primes, height = 6, depth = 4, verify_depth = 8))]
fn search_ansatz(
    ansatz: &str,
    target: Vec<Bound<'_, PyAny>>,
    primes: Vec<u64>,
    height: i64,
    depth: usize,
    verify_depth: usize,
) -> PyResult<Vec<PyLaurent>> {
    let ansatz = search::SupportAnsatz::parse(ansatz).map_err(err)?;
    let config = search::SearchConfig {
        target: series_arg(&target)?,
        primes,
        height,
        depth,
        verify_depth,
        threads: None,
    };
    let outcome = search::search(&ansatz, &config).map_err(err)?;
    Ok(outcome.solutions.into_iter().map(PyLaurent).collect())
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog::BUILTIN_NAMES.to_vec()
}

#[pyfunction]
fn catalog_record(name: &str) -> PyResult<String> {
    catalog::builtin(name).map(|r| r.to_text()).map_err(|e| PyKeyError::new_err(e.to_string()))
}

#[pymodule]
fn pyweaklg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurent>()?;
    m.add_class::<PyOperator>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(fit_operator, m)?)?;
    m.add_function(wrap_pyfunction!(polytope_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(newton_polytope_vertices, m)?)?;
    m.add_function(wrap_pyfunction!(search_ansatz, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_record, m)?)?;
    Ok(())
}
