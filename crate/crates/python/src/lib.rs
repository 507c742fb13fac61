//! Python bindings: fields, subspaces, subspace codes, LCP checks, spreads and
//! the insertion channel.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lcp_subspace::channel::{self, SimulationConfig, SimulationMode};
use lcp_subspace::cli::CodeFile;
use lcp_subspace::construct::{self, Spread};
use lcp_subspace::lcp::{self, Criterion};
use lcp_subspace::subspace::DEFAULT_ENUM_CAP;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite field `F_{p^m}`; elements are integers `0..q`.
#[pyclass(name = "Field", module = "lcp_subspace", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyField(lcp_subspace::Field);

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, m = 1, modulus = None))]
    fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        let f = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m as usize + 1 {
                    return Err(PyValueError::new_err("modulus must have degree m"));
                }
                lcp_subspace::Field::with_modulus(p, &coeffs)
            }
            None => lcp_subspace::Field::new(p, m),
        };
        f.map(PyField).map_err(err)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.0.m()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.0.add(self.0.check(a).map_err(err)?, self.0.check(b).map_err(err)?))
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.0.mul(self.0.check(a).map_err(err)?, self.0.check(b).map_err(err)?))
    }

    fn neg(&self, a: u64) -> PyResult<u32> {
        Ok(self.0.neg(self.0.check(a).map_err(err)?))
    }

    fn inv(&self, a: u64) -> PyResult<u32> {
        self.0.inv(self.0.check(a).map_err(err)?).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Field(q={})", self.0.q())
    }
}

/// A subspace of `F_q^n`, stored by its reduced echelon basis.
#[pyclass(name = "Subspace", module = "lcp_subspace", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PySubspace(lcp_subspace::Subspace);

#[pymethods]
impl PySubspace {
    /// Span of `rows` in `F_q^n`.
    #[new]
    fn new(field: &PyField, n: usize, rows: Vec<Vec<u32>>) -> PyResult<Self> {
        lcp_subspace::Subspace::span(&field.0, n, &rows).map(PySubspace).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn ambient(&self) -> usize {
        self.0.ambient()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField(self.0.field().clone())
    }

    fn basis(&self) -> Vec<Vec<u32>> {
        self.0.basis().row_vecs()
    }

    fn sum(&self, other: &PySubspace) -> PyResult<Self> {
        self.0.sum(&other.0).map(PySubspace).map_err(err)
    }

    fn intersect(&self, other: &PySubspace) -> PyResult<Self> {
        self.0.intersect(&other.0).map(PySubspace).map_err(err)
    }

    fn orthogonal(&self) -> Self {
        PySubspace(self.0.orthogonal())
    }

    fn distance(&self, other: &PySubspace) -> PyResult<usize> {
        self.0.distance(&other.0).map_err(err)
    }

    fn contains(&self, other: &PySubspace) -> PyResult<bool> {
        self.0.contains(&other.0).map_err(err)
    }

    fn contains_vector(&self, v: Vec<u32>) -> PyResult<bool> {
        self.0.contains_vector(&v).map_err(err)
    }

    #[pyo3(signature = (cap = DEFAULT_ENUM_CAP))]
    fn vectors(&self, cap: u64) -> PyResult<Vec<Vec<u32>>> {
        self.0.enumerate_vectors(cap).map_err(err)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        (self.0.field().q(), self.0.ambient(), self.0.basis().row_vecs()).hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("Subspace({})", self.0)
    }
}

/// An ordered family of distinct subspaces of one ambient space.
#[pyclass(name = "SubspaceCode", module = "lcp_subspace", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCode(lcp_subspace::SubspaceCode);

#[pymethods]
impl PyCode {
    #[new]
    fn new(members: Vec<PySubspace>) -> PyResult<Self> {
        lcp_subspace::SubspaceCode::new(members.into_iter().map(|m| m.0).collect()).map(PyCode).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __getitem__(&self, i: usize) -> PyResult<PySubspace> {
        if i >= self.0.len() {
            return Err(PyIndexError::new_err(i));
        }
        Ok(PySubspace(self.0.get(i).clone()))
    }

    fn members(&self) -> Vec<PySubspace> {
        self.0.members().iter().cloned().map(PySubspace).collect()
    }

    #[getter]
    fn ambient(&self) -> usize {
        self.0.ambient()
    }

    fn dual(&self) -> Self {
        PyCode(self.0.dual())
    }

    fn min_distance(&self) -> PyResult<usize> {
        self.0.min_distance().map_err(err)
    }

    fn constant_dimension(&self) -> Option<usize> {
        self.0.constant_dimension()
    }

    fn split_at(&self, s: usize) -> PyResult<(PyCode, PyCode)> {
        let (a, b) = self.0.split_at(s).map_err(err)?;
        Ok((PyCode(a), PyCode(b)))
    }

    fn __repr__(&self) -> String {
        format!("SubspaceCode(len={}, n={})", self.0.len(), self.0.ambient())
    }
}

/// An LCP `{C, D}` used as codebook and complements on the insertion channel.
#[pyclass(name = "ChannelInstance", module = "lcp_subspace", frozen)]
struct PyChannel(channel::ChannelInstance);

#[pymethods]
impl PyChannel {
    /// With `unchecked`, the union need not be a spread.
    #[new]
    #[pyo3(signature = (c, d, unchecked = false, cap = DEFAULT_ENUM_CAP))]
    fn new(c: &PyCode, d: &PyCode, unchecked: bool, cap: u64) -> PyResult<Self> {
        let inst = if unchecked {
            channel::ChannelInstance::new_unchecked(c.0.clone(), d.0.clone())
        } else {
            channel::ChannelInstance::new(c.0.clone(), d.0.clone(), cap)
        };
        inst.map(PyChannel).map_err(err)
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    /// Index and intersection of the first complement meeting `r`, or `None`.
    fn detect(&self, r: &PySubspace) -> PyResult<Option<(usize, PySubspace)>> {
        let d = channel::detect(&r.0, self.0.complements()).map_err(err)?;
        Ok(d.witness.map(|(j, s)| (j, PySubspace(s))))
    }

    fn correct<'py>(&self, py: Python<'py>, r: &PySubspace) -> PyResult<Bound<'py, PyDict>> {
        let out = channel::correct(&r.0, &self.0).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("detected", out.detected)?;
        d.set_item("recovered", out.recovered.map(PySubspace))?;
        d.set_item("recovered_index", out.recovered_index)?;
        d.set_item("error_estimate", out.error_estimate.map(PySubspace))?;
        d.set_item("case_tag", out.case_tag.name())?;
        Ok(d)
    }

    /// Runs the channel and returns the structured report as a JSON string.
    #[pyo3(signature = (mode = "exhaustive", trials = 0, seed = 0, parallel = false, cap = DEFAULT_ENUM_CAP))]
    fn simulate(&self, mode: &str, trials: u64, seed: u64, parallel: bool, cap: u64) -> PyResult<String> {
        let mode = match mode {
            "exhaustive" => SimulationMode::Exhaustive,
            "random" => SimulationMode::Random,
            other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
        };
        let cfg = SimulationConfig { mode, trials, seed, cap, parallel };
        Ok(channel::simulate(&self.0, &cfg).map_err(err)?.to_json())
    }
}

/// `R = C + E` for a one-dimensional `E`.
#[pyfunction]
fn insert_error(c: &PySubspace, e: &PySubspace) -> PyResult<PySubspace> {
    channel::insert_error(&c.0, &e.0).map(PySubspace).map_err(err)
}

/// `(verdict, violating_pair, witness)`.
type LcpVerdict = (bool, Option<(usize, usize)>, Option<Vec<u32>>);

/// LCP verdict under one criterion.
#[pyfunction]
#[pyo3(signature = (c, d, criterion = "pairwise"))]
fn check_lcp(c: &PyCode, d: &PyCode, criterion: &str) -> PyResult<LcpVerdict> {
    let crit =
        Criterion::parse(criterion).ok_or_else(|| PyValueError::new_err(format!("unknown criterion {criterion:?}")))?;
    let r = lcp::check_lcp(&c.0, &d.0, crit).map_err(err)?;
    let v = r.violating_pair;
    Ok((r.verdict, v.as_ref().map(|v| (v.c_index, v.d_index)), v.map(|v| v.witness)))
}

#[pyfunction]
fn is_lcp(c: &PyCode, d: &PyCode) -> PyResult<bool> {
    lcp::is_lcp(&c.0, &d.0).map_err(err)
}

#[pyfunction]
fn is_lcd(c: &PyCode) -> bool {
    lcp::is_lcd(&c.0)
}

/// The `k`-spread of `F_q^{2k}` built from `F_{q^k}`.
#[pyfunction]
fn spread_field(field: &PyField, k: usize) -> PyResult<PyCode> {
    construct::spread_field(&field.0, k).map(|s| PyCode(s.into_code())).map_err(err)
}

/// `(valid, failure)`; `failure` names the first failed condition.
#[pyfunction]
#[pyo3(signature = (code, cap = DEFAULT_ENUM_CAP))]
fn verify_spread(code: &PyCode, cap: u64) -> PyResult<(bool, Option<String>)> {
    let v = construct::verify_spread(&code.0, cap).map_err(err)?;
    let failure = v.failure.map(|f| format!("{f:?}"));
    Ok((v.valid, failure))
}

/// Splits a spread into `({U_1..U_s}, {U_{s+1}..U_t})`.
#[pyfunction]
#[pyo3(signature = (code, split, cap = DEFAULT_ENUM_CAP))]
fn spread_partition(code: &PyCode, split: usize, cap: u64) -> PyResult<(PyCode, PyCode)> {
    let s = Spread::from_code(code.0.clone(), cap).map_err(err)?;
    let (a, b) = construct::spread_partition(&s, split).map_err(err)?;
    Ok((PyCode(a), PyCode(b)))
}

/// Column-major lift of each member to `n x m` matrices.
#[pyfunction]
fn lift_family(code: &PyCode, m: usize) -> PyResult<PyCode> {
    construct::lift_family(&code.0, m).map(PyCode).map_err(err)
}

/// Named family from a code file.
#[pyfunction]
fn load_family(path: PathBuf, name: &str) -> PyResult<PyCode> {
    let file = CodeFile::load(&path).map_err(err)?;
    file.family(name).map(PyCode).map_err(err)
}

/// Named subspace from a code file.
#[pyfunction]
fn load_subspace(path: PathBuf, name: &str) -> PyResult<PySubspace> {
    let file = CodeFile::load(&path).map_err(err)?;
    file.subspace(name).map(PySubspace).map_err(err)
}

#[pymodule]
#[pyo3(name = "lcp_subspace")]
pub fn lcp_subspace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PySubspace>()?;
    m.add_class::<PyCode>()?;
    m.add_class::<PyChannel>()?;
    m.add_function(wrap_pyfunction!(insert_error, m)?)?;
    m.add_function(wrap_pyfunction!(check_lcp, m)?)?;
    m.add_function(wrap_pyfunction!(is_lcp, m)?)?;
    m.add_function(wrap_pyfunction!(is_lcd, m)?)?;
    m.add_function(wrap_pyfunction!(spread_field, m)?)?;
    m.add_function(wrap_pyfunction!(verify_spread, m)?)?;
    m.add_function(wrap_pyfunction!(spread_partition, m)?)?;
    m.add_function(wrap_pyfunction!(lift_family, m)?)?;
    m.add_function(wrap_pyfunction!(load_family, m)?)?;
    m.add_function(wrap_pyfunction!(load_subspace, m)?)?;
    Ok(())
}
