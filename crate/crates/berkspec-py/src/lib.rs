//! Python bindings for `berkspec`.
//!
//! Rationals cross the boundary as strings such as `"3/4"`, absolute values
//! as `"p^(-q)"` strings, and composite objects as the JSON documents of the
//! command-line tool.

use berkspec::arith::parse_rational;
use berkspec::cli::{run_text, Overrides};
use berkspec::geometry::{self, PointDescriptor};
use berkspec::json;
use berkspec::radii;
use berkspec::spectrum::{self, SpectrumReport, DEFAULT_L_MAX, DEFAULT_PROBE_LEVEL};
use berkspec::{DiffOp, Error, ErrorClass, Scalar};
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(pyberkspec, BerkspecError, PyException);
create_exception!(pyberkspec, HypothesisNotCertified, BerkspecError);

fn to_py(e: Error) -> PyErr {
    let msg = format!("{}: {e}", e.kind());
    match e.class() {
        ErrorClass::Parse => PyValueError::new_err(msg),
        ErrorClass::Hypothesis => HypothesisNotCertified::new_err(msg),
        ErrorClass::Domain => BerkspecError::new_err(msg),
    }
}

fn rational(s: &str) -> PyResult<BigRational> {
    parse_rational(s).map_err(to_py)
}

fn parse_json(s: &str) -> PyResult<serde_json::Value> {
    serde_json::from_str(s).map_err(|e| PyValueError::new_err(format!("invalid JSON: {e}")))
}

/// An element of `Q(p^(1/m))`.
#[pyclass(name = "Scalar", module = "pyberkspec", frozen)]
pub struct PyScalar(pub Scalar);

#[pymethods]
impl PyScalar {
    /// Parses `"a/b"`, `"u*p^(a/b)"` or a JSON scalar document.
    #[new]
    fn new(p: u64, value: &str) -> PyResult<Self> {
        let v = match serde_json::from_str::<serde_json::Value>(value) {
            Ok(v @ serde_json::Value::Object(_)) => v,
            _ => serde_json::Value::String(value.to_string()),
        };
        Ok(PyScalar(json::scalar_from_json(p, &v).map_err(to_py)?))
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    /// Absolute value as `"p^(-q)"` or `"0"`.
    fn abs(&self) -> String {
        self.0.val().render()
    }

    /// Distance to `Z_p`.
    fn delta(&self) -> String {
        self.0.delta().render()
    }

    fn __add__(&self, other: &PyScalar) -> PyScalar {
        PyScalar(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &PyScalar) -> PyScalar {
        PyScalar(self.0.sub(&other.0))
    }

    fn __mul__(&self, other: &PyScalar) -> PyScalar {
        PyScalar(self.0.mul(&other.0))
    }

    fn __truediv__(&self, other: &PyScalar) -> PyResult<PyScalar> {
        Ok(PyScalar(self.0.div(&other.0).map_err(to_py)?))
    }

    fn __neg__(&self) -> PyScalar {
        PyScalar(self.0.neg())
    }

    fn __eq__(&self, other: &PyScalar) -> bool {
        self.0 == other.0
    }

    fn to_json(&self) -> String {
        json::scalar_to_json(&self.0).to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar({}, {})", self.0.p(), self.to_json())
    }
}

/// A point `x_{c,r}` of the Berkovich line, `r = p^(-rho)`; `rho = None` is type 1.
#[pyclass(name = "Point", module = "pyberkspec", frozen)]
pub struct PyPoint(pub PointDescriptor);

#[pymethods]
impl PyPoint {
    #[new]
    #[pyo3(signature = (center, rho=None))]
    fn new(center: &PyScalar, rho: Option<&str>) -> PyResult<Self> {
        Ok(PyPoint(match rho {
            None => PointDescriptor::type1(center.0.clone()),
            Some(r) => PointDescriptor::new(center.0.clone(), rational(r)?),
        }))
    }

    #[staticmethod]
    fn gauss(p: u64, rho: &str) -> PyResult<Self> {
        Ok(PyPoint(PointDescriptor::gauss(p, rational(rho)?)))
    }

    #[getter]
    fn center(&self) -> PyScalar {
        PyScalar(self.0.center.clone())
    }

    #[getter]
    fn rho(&self) -> Option<String> {
        self.0.rho.as_ref().map(|r| r.to_string())
    }

    fn radius(&self) -> String {
        self.0.radius().render()
    }

    fn delta(&self) -> String {
        geometry::delta_point(&self.0).render()
    }

    /// Image under `z -> z^p`, with the degree of the residue extension.
    fn frobenius(&self) -> (PyPoint, u64) {
        let img = geometry::frobenius_image(&self.0);
        (PyPoint(img.point), img.degree)
    }

    /// Image under `z -> z^n` for `n` prime to `p`.
    fn tame_power(&self, n: u64) -> PyResult<(PyPoint, u64)> {
        let img = geometry::tame_power_image(&self.0, n).map_err(to_py)?;
        Ok((PyPoint(img.point), img.degree))
    }

    fn __eq__(&self, other: &PyPoint) -> bool {
        self.0 == other.0
    }

    fn to_json(&self) -> String {
        json::point_to_json(&self.0).to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Point({})", self.to_json())
    }
}

/// A differential polynomial in one of the gauges `d/dS`, `S d/dS`, `p^l S d/dS`.
#[pyclass(name = "DiffOp", module = "pyberkspec", frozen)]
pub struct PyDiffOp(pub DiffOp);

#[pymethods]
impl PyDiffOp {
    /// Reads an operator document `{"gauge": ..., "coeffs": [...]}`.
    #[staticmethod]
    fn from_json(p: u64, doc: &str) -> PyResult<Self> {
        Ok(PyDiffOp(json::op_from_json(p, &parse_json(doc)?).map_err(to_py)?))
    }

    fn to_json(&self) -> String {
        json::op_to_json(&self.0).to_string()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn __mul__(&self, other: &PyDiffOp) -> PyResult<PyDiffOp> {
        Ok(PyDiffOp(self.0.mul(&other.0).map_err(to_py)?))
    }

    fn __eq__(&self, other: &PyDiffOp) -> bool {
        self.0 == other.0
    }

    /// The operator with the derivation shifted by `a`.
    fn twist(&self, a: &PyScalar) -> PyDiffOp {
        PyDiffOp(self.0.twist(&a.0))
    }

    /// Absolute values of the roots of the commutative polygon at `x_{0,r}`.
    fn polygon_roots(&self, rho: &str) -> PyResult<Vec<String>> {
        let np = self.0.polygon(&rational(rho)?).map_err(to_py)?;
        Ok(np.root_abs().iter().map(|v| v.render()).collect())
    }

    /// Subsidiary radii at `x_{0,r}` in the `d/dS` scale, as `(value, flag)` pairs.
    fn radii(&self, rho: &str) -> PyResult<Vec<(String, String)>> {
        let rep = radii::radii_young(&self.0, &rational(rho)?).map_err(to_py)?;
        Ok(rep.radii.iter().map(|r| (r.value.render(), r.flag.name().to_string())).collect())
    }

    /// Factors `P = Q R` where `R` carries the roots below `threshold`.
    #[pyo3(signature = (rho, threshold, precision=20))]
    fn slope_factor(&self, rho: &str, threshold: &str, precision: u32) -> PyResult<(PyDiffOp, PyDiffOp)> {
        let t = berkspec::Val::parse(threshold).map_err(to_py)?;
        let (q, r) = berkspec::diffop::slope_factor(&self.0, &rational(rho)?, &t, precision).map_err(to_py)?;
        Ok((PyDiffOp(q), PyDiffOp(r)))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DiffOp({})", self.to_json())
    }
}

/// A spectrum: canonical components with multiplicities and radii rows.
#[pyclass(name = "Spectrum", module = "pyberkspec", frozen)]
pub struct PySpectrum(pub SpectrumReport);

#[pymethods]
impl PySpectrum {
    /// Component documents, in canonical order.
    fn components(&self) -> Vec<String> {
        self.0.components().iter().map(|c| json::component_to_json(c).to_string()).collect()
    }

    fn multiplicities(&self) -> Vec<usize> {
        self.0.entries.iter().map(|e| e.multiplicity).collect()
    }

    #[getter]
    fn descent_level(&self) -> Option<u32> {
        self.0.descent_level
    }

    fn mass(&self) -> usize {
        self.0.mass()
    }

    fn translate(&self, a: &PyScalar) -> PySpectrum {
        PySpectrum(self.0.translate(&a.0))
    }

    fn union(&self, other: &PySpectrum) -> PyResult<PySpectrum> {
        Ok(PySpectrum(spectrum::spectrum_union(&self.0, &other.0).map_err(to_py)?))
    }

    fn __eq__(&self, other: &PySpectrum) -> bool {
        self.0.components() == other.0.components() && self.multiplicities() == other.multiplicities()
    }

    fn to_json(&self) -> String {
        json::spectrum_to_json(&self.0).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Spectrum({})", self.components().join(", "))
    }
}

/// Spectrum of a monic operator in the gauge `S d/dS` at `x_{0,r}`,
/// splitting mixed operators by slope factorization.
#[pyfunction]
#[pyo3(signature = (op, rho, probe_level=DEFAULT_PROBE_LEVEL, l_max=DEFAULT_L_MAX, precision=20, probes=Vec::new()))]
fn spectrum_of(
    op: &PyDiffOp,
    rho: &str,
    probe_level: u32,
    l_max: u32,
    precision: u32,
    probes: Vec<PyRef<'_, PyScalar>>,
) -> PyResult<PySpectrum> {
    let extra: Vec<Scalar> = probes.iter().map(|s| s.0.clone()).collect();
    let probes = spectrum::default_probes(op.0.p(), probe_level, &extra);
    let rep = spectrum::spectrum_auto(&op.0, &rational(rho)?, &probes, l_max, precision).map_err(to_py)?;
    Ok(PySpectrum(rep))
}

/// Spectrum of `S d/dS` at `x_{0,r}`.
#[pyfunction]
fn spectrum_sds(p: u64, rho: &str) -> PyResult<PySpectrum> {
    Ok(PySpectrum(spectrum::spectrum_sds(p, &rational(rho)?)))
}

/// Spectrum of `S d/dS - G` for constant `G` with the given eigenvalues.
#[pyfunction]
fn regular_singular(point: &PyPoint, eigenvalues: Vec<PyRef<'_, PyScalar>>) -> PyResult<PySpectrum> {
    let eigs: Vec<Scalar> = eigenvalues.iter().map(|s| s.0.clone()).collect();
    Ok(PySpectrum(spectrum::spectrum_regular_singular(&point.0, &eigs).map_err(to_py)?))
}

/// Radius of `S d/dS - a` at `x_{0,r}`.
#[pyfunction]
fn rank_one_radius(a: &PyScalar, rho: &str) -> PyResult<String> {
    Ok(radii::rank_one_radius(&a.0, &rational(rho)?).render())
}

/// Exponent of the radius of the image of `x_{c, |c| p^(-rho_rel)}` under the logarithm.
#[pyfunction]
fn log_radius(p: u64, rho_rel: &str) -> PyResult<String> {
    Ok(geometry::log_radius(p, &rational(rho_rel)?).map_err(to_py)?.to_string())
}

/// Runs one command-line job document; returns the output and its exit code.
#[pyfunction]
#[pyo3(signature = (job, pretty=false))]
fn run_job(job: &str, pretty: bool) -> (String, i32) {
    run_text(job, &Overrides::default(), pretty)
}

#[pymodule]
pub fn pyberkspec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BerkspecError", m.py().get_type::<BerkspecError>())?;
    m.add("HypothesisNotCertified", m.py().get_type::<HypothesisNotCertified>())?;
    m.add_class::<PyScalar>()?;
    m.add_class::<PyPoint>()?;
    m.add_class::<PyDiffOp>()?;
    m.add_class::<PySpectrum>()?;
    m.add_function(wrap_pyfunction!(spectrum_of, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_sds, m)?)?;
    m.add_function(wrap_pyfunction!(regular_singular, m)?)?;
    m.add_function(wrap_pyfunction!(rank_one_radius, m)?)?;
    m.add_function(wrap_pyfunction!(log_radius, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    Ok(())
}
