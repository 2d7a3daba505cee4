//! Python bindings. Scalars cross the boundary as their canonical strings and
//! tableaux as nested lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use macvv::daha::{self, DahaModule};
use macvv::limits::OmegaFilling;
use macvv::tableaux::{self, Filling, Partition, PeriodicTableau};
use macvv::{pieri, series, spherical};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("core types serialize")
}

#[pyclass(name = "Partition", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition(Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: Vec<usize>) -> PyResult<Self> {
        Partition::new(parts).map(Self).map_err(err)
    }

    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    /// `|lambda| + lambda_1`.
    fn min_rank(&self) -> usize {
        self.0.min_rank()
    }

    fn extended(&self, n: usize) -> PyResult<Self> {
        tableaux::extended_shape(&self.0, n).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Partition({})", self.0)
    }
}

#[pyclass(name = "Filling", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFilling(Filling);

#[pymethods]
impl PyFilling {
    #[new]
    fn new(rows: Vec<Vec<u32>>) -> PyResult<Self> {
        Filling::from_rows(rows).map(Self).map_err(err)
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        self.0.rows().to_vec()
    }

    fn shape(&self) -> PyPartition {
        PyPartition(self.0.shape().clone())
    }

    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn is_rssyt(&self) -> bool {
        self.0.is_rssyt()
    }

    /// `(nu, b, mu)`.
    fn stats(&self) -> PyResult<(Vec<u32>, i64, Vec<usize>)> {
        let s = tableaux::stats(&self.0).map_err(err)?;
        Ok((s.nu, s.b, s.mu))
    }

    fn min_top(&self) -> PyResult<(PyTableau, PyTableau)> {
        let (a, b) = tableaux::min_top(&self.0).map_err(err)?;
        Ok((PyTableau(a), PyTableau(b)))
    }

    fn psyt(&self) -> PyResult<Vec<PyTableau>> {
        Ok(tableaux::enumerate_psyt(&self.0).map_err(err)?.into_iter().map(PyTableau).collect())
    }

    fn __repr__(&self) -> String {
        format!("Filling({})", self.0)
    }
}

#[pyclass(name = "PeriodicTableau", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTableau(PeriodicTableau);

#[pymethods]
impl PyTableau {
    /// Rows of `(index, power)` pairs.
    #[new]
    fn new(rows: Vec<Vec<(usize, u32)>>) -> PyResult<Self> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|(i, b)| tableaux::PeriodicLabel::new(i, b)).collect())
            .collect();
        PeriodicTableau::from_rows(rows).map(Self).map_err(err)
    }

    fn rows(&self) -> Vec<Vec<(usize, u32)>> {
        self.0.rows().iter().map(|r| r.iter().map(|l| (l.index, l.power)).collect()).collect()
    }

    fn filling(&self) -> PyFilling {
        PyFilling(self.0.filling())
    }

    /// Eigenvalue of `theta_i` on `F_tau`.
    fn eigenvalue(&self, i: usize) -> PyResult<String> {
        if i == 0 || i > self.0.n() {
            return Err(PyValueError::new_err(format!("index {i} out of range")));
        }
        Ok(daha::eigenvalue(&self.0, i).to_string())
    }

    fn psi(&self) -> Self {
        Self(tableaux::psi(&self.0))
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "Module", frozen)]
struct PyModuleV(DahaModule);

#[pymethods]
impl PyModuleV {
    #[new]
    fn new(shape: &PyPartition) -> Self {
        Self(DahaModule::new(&shape.0))
    }

    fn n(&self) -> usize {
        self.0.n()
    }

    /// `F_tau` as JSON terms, after certifying its spectrum.
    fn weight_vector(&self, tau: &PyTableau) -> PyResult<String> {
        let w = self.0.build_f(&tau.0).map_err(err)?;
        Ok(to_json(&self.0.describe(&w.element)))
    }

    /// `P_T` as JSON terms.
    fn macdonald(&self, filling: &PyFilling) -> PyResult<String> {
        let p = spherical::p_formula(&self.0, &filling.0).map_err(err)?;
        Ok(to_json(&self.0.describe(&p.element)))
    }

    /// `(target, formula coefficient, oracle agrees)` for `e_r P_T`.
    fn pieri(&self, source: &PyFilling, r: usize) -> PyResult<(Vec<(PyFilling, String)>, bool)> {
        let check = pieri::compare_with_oracle(&self.0, &source.0, r).map_err(err)?;
        let entries = check.entries.into_iter().map(|e| (PyFilling(e.target), e.coefficient.to_string())).collect();
        Ok((entries, check.formula_matches && check.support_in_candidates))
    }

    fn relations_hold(&self, degree: u32) -> bool {
        self.0.relation_suite(degree).all_pass()
    }
}

/// Pieri coefficients from the closed formula alone.
#[pyfunction]
fn pieri_table(source: &PyFilling, r: usize) -> PyResult<Vec<(PyFilling, String)>> {
    Ok(pieri::pieri_table(&source.0, r)
        .map_err(err)?
        .into_iter()
        .map(|e| (PyFilling(e.target), e.coefficient.to_string()))
        .collect())
}

/// The identity report for `T` over `base` as a JSON string.
#[pyfunction]
#[pyo3(signature = (base, filling, order, window_cap = series::DEFAULT_WINDOW_CAP))]
fn verify_identity(base: &PyPartition, filling: &PyFilling, order: i64, window_cap: usize) -> PyResult<String> {
    let om = OmegaFilling::new(&base.0, &filling.0).map_err(err)?;
    Ok(to_json(&series::verify_identity(&om, order, window_cap).map_err(err)?))
}

#[pymodule]
fn macvv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyFilling>()?;
    m.add_class::<PyTableau>()?;
    m.add_class::<PyModuleV>()?;
    m.add_function(wrap_pyfunction!(pieri_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    Ok(())
}
