//! Python bindings: words and automorphisms, permutation groups, specs,
//! witness runs, certificate verification and the finite Birman check.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use csp_core::fingroup::{FinGroup, DEFAULT_CAP};
use csp_core::perm::Perm;
use csp_core::pipeline::certificate::{self, Verdict};
use csp_core::pipeline::run::{run_birman, run_witness, Mode, WitnessRun};
use csp_core::pipeline::spec::SpecFile;
use csp_core::words::{self, PushConvention};
use csp_core::Error;

create_exception!(csp, CapExceededError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => CapExceededError::new_err(e.to_string()),
        Error::Parse(_) | Error::IndexOutOfRange { .. } | Error::DimensionMismatch { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Reduced word in a free group of the given rank.
#[pyclass(name = "Word", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyWord {
    inner: words::Word,
    rank: usize,
}

#[pymethods]
impl PyWord {
    /// Parses `g1 g2^-1 L`; `L` stands for generator `lambda_index` when given.
    #[new]
    #[pyo3(signature = (text, rank, lambda_index=None))]
    fn new(text: &str, rank: usize, lambda_index: Option<usize>) -> PyResult<Self> {
        Ok(PyWord { inner: words::Word::parse(text, rank, lambda_index).map_err(to_py)?, rank })
    }

    fn letters(&self) -> Vec<i32> {
        self.inner.letters().to_vec()
    }

    fn inverse(&self) -> Self {
        PyWord { inner: self.inner.inverse(), rank: self.rank }
    }

    fn __mul__(&self, other: &PyWord) -> Self {
        PyWord { inner: self.inner.mul(&other.inner), rank: self.rank.max(other.rank) }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}', {})", self.inner, self.rank)
    }
}

/// A conjugator `w` with `w u w^-1 = v`, or None.
#[pyfunction]
fn conjugate_test(u: &PyWord, v: &PyWord) -> Option<PyWord> {
    words::conjugate_test(&u.inner, &v.inner).map(|w| PyWord { inner: w, rank: u.rank.max(v.rank) })
}

/// Automorphism of a free group, composed functionally.
#[pyclass(name = "FreeAut", frozen, from_py_object)]
#[derive(Clone)]
struct PyFreeAut {
    inner: words::FreeAut,
}

#[pymethods]
impl PyFreeAut {
    fn apply(&self, w: &PyWord) -> PyWord {
        PyWord { inner: self.inner.apply(&w.inner), rank: self.inner.rank() }
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PyFreeAut) -> Self {
        PyFreeAut { inner: self.inner.compose(&other.inner) }
    }

    fn inverse(&self) -> Self {
        PyFreeAut { inner: self.inner.inverse() }
    }

    fn images(&self) -> Vec<String> {
        self.inner.images().iter().map(|w| w.to_string()).collect()
    }
}

#[pyfunction]
fn artin_generator(i: usize, j: usize, n: usize) -> PyResult<PyFreeAut> {
    Ok(PyFreeAut { inner: words::artin_generator(i, j, n).map_err(to_py)? })
}

#[pyfunction]
#[pyo3(signature = (j, n, inverted=false))]
fn push_aut(j: usize, n: usize, inverted: bool) -> PyResult<PyFreeAut> {
    let c = if inverted { PushConvention::Inverted } else { PushConvention::Standard };
    Ok(PyFreeAut { inner: words::push_aut_with(j, n, c).map_err(to_py)? })
}

/// Permutation group given by generators in cycle notation.
#[pyclass(name = "PermGroup", frozen)]
struct PyPermGroup {
    inner: FinGroup,
    cap: usize,
}

#[pymethods]
impl PyPermGroup {
    #[new]
    #[pyo3(signature = (generators, degree=None, cap=DEFAULT_CAP))]
    fn new(generators: Vec<String>, degree: Option<usize>, cap: usize) -> PyResult<Self> {
        let degree = degree.unwrap_or_else(|| generators.iter().map(|g| Perm::cycle_degree(g)).max().unwrap_or(1));
        let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
        Ok(PyPermGroup { inner: FinGroup::perm_group_from_cycles(degree, &gens).map_err(to_py)?, cap })
    }

    fn order(&self) -> PyResult<usize> {
        self.inner.order(self.cap).map_err(to_py)
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn is_centerless(&self) -> PyResult<bool> {
        self.inner.is_centerless(self.cap).map_err(to_py)
    }

    fn center_order(&self) -> PyResult<usize> {
        Ok(self.inner.center(self.cap).map_err(to_py)?.len())
    }
}

/// Quotient spec: `n`, the prime `ell`, and images of `g1..g(n-2)`.
#[pyclass(name = "Spec", frozen, from_py_object)]
#[derive(Clone)]
struct PySpec {
    inner: SpecFile,
}

#[pymethods]
impl PySpec {
    #[new]
    #[pyo3(signature = (n, ell, images, seed=None, samples=None, cap=None))]
    fn new(
        n: usize,
        ell: u32,
        images: Vec<String>,
        seed: Option<u64>,
        samples: Option<usize>,
        cap: Option<usize>,
    ) -> PyResult<Self> {
        let imgs: Vec<&str> = images.iter().map(String::as_str).collect();
        let mut inner = SpecFile::from_cycles(n, ell, &imgs).map_err(to_py)?;
        if let Some(s) = seed {
            inner.options.seed = s;
        }
        if let Some(s) = samples {
            inner.options.samples = s;
        }
        if let Some(c) = cap {
            inner.options.cap = c;
        }
        inner.validate().map_err(to_py)?;
        Ok(PySpec { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PySpec { inner: SpecFile::parse(text).map_err(to_py)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn digest(&self) -> String {
        self.inner.digest()
    }
}

/// Result of a witness run.
#[pyclass(name = "Witness", frozen)]
struct PyWitness {
    run: WitnessRun,
}

#[pymethods]
impl PyWitness {
    #[getter]
    fn valid(&self) -> bool {
        self.run.is_valid()
    }

    #[getter]
    fn orbit_size(&self) -> usize {
        self.run.orbit.len()
    }

    /// Orders as decimal strings; they can exceed 64 bits.
    #[getter]
    fn q_order(&self) -> String {
        self.run.q_order().to_string()
    }

    #[getter]
    fn p0_order(&self) -> String {
        self.run.p0_order().to_string()
    }

    #[getter]
    fn centralizer_condition(&self) -> bool {
        self.run.centralizer.holds
    }

    fn flags(&self) -> Vec<(String, bool)> {
        self.run.flags.0.iter().map(|(n, b)| (n.to_string(), *b)).collect()
    }

    fn certificate(&self) -> String {
        certificate::render(&self.run)
    }
}

#[pyfunction]
#[pyo3(signature = (spec, direct=false))]
fn witness(py: Python<'_>, spec: &PySpec, direct: bool) -> PyResult<PyWitness> {
    let mode = if direct { Mode::Direct } else { Mode::Auto };
    let spec = spec.inner.clone();
    let run = py.detach(move || run_witness(&spec, mode)).map_err(to_py)?;
    Ok(PyWitness { run })
}

/// Re-runs a certificate: returns "VALID", "INVALID: ..." or "REJECTED: ...".
#[pyfunction]
fn verify_certificate(py: Python<'_>, text: String) -> PyResult<String> {
    match py.detach(move || certificate::verify(&text)) {
        Ok(Verdict::Valid) => Ok("VALID".into()),
        Ok(Verdict::Invalid(flags)) => Ok(format!("INVALID: {}", flags.join(", "))),
        Ok(Verdict::Mismatch { line, .. }) => Ok(format!("REJECTED: line {line} differs")),
        Err(Error::Invalid(m)) => Ok(format!("REJECTED: {m}")),
        Err(e) => Err(to_py(e)),
    }
}

/// Per generator: (j, identity holds, conjugators agree).
#[pyfunction]
#[pyo3(signature = (spec, inverted=false))]
fn birman(py: Python<'_>, spec: &PySpec, inverted: bool) -> PyResult<Vec<(usize, bool, bool)>> {
    let mut spec = spec.inner.clone();
    spec.options.convention = if inverted { PushConvention::Inverted } else { PushConvention::Standard };
    let (_, report) = py.detach(move || run_birman(&spec)).map_err(to_py)?;
    Ok(report.cases.iter().map(|c| (c.j, c.holds, c.conjugators_agree)).collect())
}

#[pymodule]
fn csp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyFreeAut>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_class::<PySpec>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(conjugate_test, m)?)?;
    m.add_function(wrap_pyfunction!(artin_generator, m)?)?;
    m.add_function(wrap_pyfunction!(push_aut, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(birman, m)?)?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    Ok(())
}
