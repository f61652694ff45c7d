//! Python bindings: weight triples, grading-group elements, extension
//! bundles, quivers, search and the tubular replays.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tubular_core::bundles::ExtBundle;
use tubular_core::graded::dim_s;
use tubular_core::k0::{euler_form, reduce_line};
use tubular_core::lgroup::{LElement, WeightTriple};
use tubular_core::quiver::{self as q, QuiverJson};
use tubular_core::stablehom::shifted_cuboid_verdict;
use tubular_core::syntax::{parse_bundle, parse_l};

fn err(e: tubular_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn branch(i: usize) -> PyResult<usize> {
    match i {
        1..=3 => Ok(i - 1),
        _ => Err(PyValueError::new_err(format!("branch index must be 1, 2 or 3, got {i}"))),
    }
}

/// A weight triple `(p1, p2, p3)`.
#[pyclass(name = "Weights", frozen, eq, hash, module = "tubular", skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWeights(WeightTriple);

#[pymethods]
impl PyWeights {
    #[new]
    fn new(p1: i64, p2: i64, p3: i64) -> PyResult<Self> {
        WeightTriple::new(p1, p2, p3).map(PyWeights).map_err(err)
    }

    #[getter]
    fn weights(&self) -> [i64; 3] {
        self.0.weights()
    }

    fn is_genus_one(&self) -> bool {
        self.0.is_genus_one()
    }

    /// Parses an L-expression such as `"2x1 - c"`.
    fn element(&self, expr: &str) -> PyResult<PyElement> {
        parse_l(self.0, expr).map(PyElement).map_err(err)
    }

    fn normal_form(&self, expr: &str) -> PyResult<String> {
        Ok(self.element(expr)?.0.to_string())
    }

    /// Parses `E`, `E(z)`, `E<l1,l2,l3>(z)` or `E<x>(z)`.
    fn bundle(&self, text: &str) -> PyResult<PyBundle> {
        parse_bundle(self.0, text).map(PyBundle).map_err(err)
    }

    /// `x_i` for `i = 1, 2, 3`.
    fn x(&self, i: usize) -> PyResult<PyElement> {
        Ok(PyElement(self.0.x(branch(i)?)))
    }

    fn c(&self) -> PyElement {
        PyElement(self.0.c())
    }

    fn omega(&self) -> PyElement {
        PyElement(self.0.omega())
    }

    fn cuboid(&self) -> Vec<PyElement> {
        self.0.cuboid().into_iter().map(PyElement).collect()
    }

    /// `"tilting"`, `"not_tilting"` or `"undecided"` for the cuboid with
    /// `E` replaced by `τ⁻¹E[1]`.
    fn shifted_cuboid_verdict(&self) -> PyResult<String> {
        let v = shifted_cuboid_verdict(self.0).map_err(err)?;
        Ok(serde_json::to_value(v.verdict).expect("serializes").as_str().unwrap_or_default().to_string())
    }

    fn __repr__(&self) -> String {
        let [a, b, c] = self.0.weights();
        format!("Weights({a}, {b}, {c})")
    }
}

/// An element of the grading group, kept in normal form.
#[pyclass(name = "Element", frozen, eq, hash, module = "tubular", skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyElement(LElement);

#[pymethods]
impl PyElement {
    #[getter]
    fn coefficients(&self) -> [i64; 3] {
        self.0.coefficients()
    }

    #[getter]
    fn c_part(&self) -> i64 {
        self.0.c_part()
    }

    fn delta(&self) -> i64 {
        self.0.delta()
    }

    fn expr(&self) -> String {
        self.0.expr()
    }

    /// `dim S_x` of the graded coordinate algebra.
    fn dim_s(&self) -> i64 {
        dim_s(self.0)
    }

    /// Coefficients of `[O(x)]` in the line-bundle basis.
    fn reduce_line(&self) -> Vec<i64> {
        reduce_line(self.0).coefficients().to_vec()
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        same(self.0, other.0)?;
        Ok(PyElement(self.0 + other.0))
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        same(self.0, other.0)?;
        Ok(PyElement(self.0 - other.0))
    }

    fn __neg__(&self) -> PyElement {
        PyElement(-self.0)
    }

    fn __mul__(&self, n: i64) -> PyElement {
        PyElement(self.0 * n)
    }

    fn __rmul__(&self, n: i64) -> PyElement {
        PyElement(self.0 * n)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.0)
    }
}

fn same(a: LElement, b: LElement) -> PyResult<()> {
    if a.weights() == b.weights() {
        Ok(())
    } else {
        Err(err(tubular_core::Error::WeightMismatch))
    }
}

/// The extension bundle `E<x>(z)`.
#[pyclass(name = "Bundle", frozen, module = "tubular", skip_from_py_object)]
#[derive(Clone)]
struct PyBundle(ExtBundle);

#[pymethods]
impl PyBundle {
    #[getter]
    fn x(&self) -> PyElement {
        PyElement(self.0.x())
    }

    #[getter]
    fn z(&self) -> PyElement {
        PyElement(self.0.z())
    }

    fn rank(&self) -> i64 {
        self.0.rank()
    }

    fn det(&self) -> PyElement {
        PyElement(self.0.det())
    }

    /// Slope as `"p/q"`.
    fn slope(&self) -> String {
        self.0.slope().to_string()
    }

    fn class_coefficients(&self) -> Vec<i64> {
        self.0.class().coefficients().to_vec()
    }

    fn euler(&self, other: &PyBundle) -> i64 {
        euler_form(&self.0.class(), &other.0.class())
    }

    /// Isomorphism in the stable category.
    fn eq_ext(&self, other: &PyBundle) -> bool {
        self.0.eq_ext(&other.0)
    }

    fn canonical(&self) -> PyBundle {
        PyBundle(self.0.canonical_form())
    }

    fn twist(&self, t: &PyElement) -> PyResult<PyBundle> {
        same(self.0.z(), t.0)?;
        Ok(PyBundle(self.0.twist(t.0)))
    }

    fn tau(&self) -> PyBundle {
        PyBundle(self.0.tau())
    }

    fn tau_inv(&self) -> PyBundle {
        PyBundle(self.0.tau_inv())
    }

    fn suspend(&self) -> PyResult<PyBundle> {
        self.0.suspend().map(PyBundle).map_err(err)
    }

    fn desuspend(&self) -> PyResult<PyBundle> {
        self.0.desuspend().map(PyBundle).map_err(err)
    }

    fn shift(&self, n: i64) -> PyResult<PyBundle> {
        self.0.shift(n).map(PyBundle).map_err(err)
    }

    fn injective_hull(&self) -> Vec<PyElement> {
        self.0.injective_hull().into_iter().map(PyElement).collect()
    }

    fn projective_cover(&self) -> Vec<PyElement> {
        self.0.projective_cover().into_iter().map(PyElement).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Bundle({})", self.0)
    }
}

/// A quiver without loops or 2-cycles.
#[pyclass(name = "Quiver", frozen, module = "tubular", skip_from_py_object)]
#[derive(Clone)]
struct PyQuiver(q::Quiver);

#[pymethods]
impl PyQuiver {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyQuiver> {
        let j: QuiverJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        q::Quiver::from_json(j).map(PyQuiver).map_err(err)
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<PyQuiver> {
        q::fixture(name).map(|f| PyQuiver(f.quiver)).map_err(err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("quivers serialize")
    }

    fn ids(&self) -> Vec<i64> {
        self.0.ids()
    }

    fn arrow_count(&self) -> u32 {
        self.0.arrow_count()
    }

    /// `(from, to, multiplicity)` triples.
    fn arrows(&self) -> Vec<(i64, i64, u32)> {
        self.0.arrows().into_iter().map(|a| (a.from, a.to, a.mult)).collect()
    }

    fn mutate(&self, vertex: i64) -> PyResult<PyQuiver> {
        self.0.mutate(vertex).map(PyQuiver).map_err(err)
    }

    fn apply(&self, sequence: Vec<i64>) -> PyResult<PyQuiver> {
        self.0.apply(&sequence).map(PyQuiver).map_err(err)
    }

    fn is_isomorphic(&self, other: &PyQuiver) -> bool {
        q::is_isomorphic(&self.0, &other.0).is_some()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &PyQuiver) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Quiver({} vertices, {} arrows)", self.0.len(), self.0.arrow_count())
    }
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    q::fixture_names()
}

/// Shortest mutation sequence, or `None` within `max_depth`.
#[pyfunction]
#[pyo3(signature = (source, target, max_depth = 8))]
fn search(py: Python<'_>, source: &PyQuiver, target: &PyQuiver, max_depth: usize) -> PyResult<Option<Vec<i64>>> {
    let (s, t) = (source.0.clone(), target.0.clone());
    let found = py.detach(move || q::search(&s, &t, max_depth)).map_err(err)?;
    Ok(found.map(|r| r.sequence))
}

/// Runs a replay (`"244"`, `"236"`, `"333"`) and returns its JSON report.
#[pyfunction]
fn replay(kind: &str) -> PyResult<String> {
    let r = tubular_core::replay(kind).map_err(err)?;
    Ok(serde_json::to_string(&r).expect("reports serialize"))
}

/// Human-readable replay report, ending in `PASS` or `FAIL`.
#[pyfunction]
fn replay_text(kind: &str) -> PyResult<String> {
    tubular_core::replay(kind).map(|r| r.render()).map_err(err)
}

#[pymodule]
fn tubular(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeights>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyBundle>()?;
    m.add_class::<PyQuiver>()?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(replay_text, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrappers_delegate() {
        let w = PyWeights::new(2, 3, 6).unwrap();
        assert_eq!(w.normal_form("w").unwrap(), "(1,2,5;-2)");
        let t = PyWeights::new(2, 4, 4).unwrap();
        let a = t.bundle("E<0,2,0>(x3)").unwrap();
        assert!(a.eq_ext(&t.bundle("E<0,0,0>(x1-x2+x3)").unwrap()));
        assert!(a.suspend().unwrap().desuspend().unwrap().eq_ext(&a));
        assert_eq!(PyWeights::new(3, 3, 3).unwrap().shifted_cuboid_verdict().unwrap(), "not_tilting");
        assert_eq!(t.shifted_cuboid_verdict().unwrap(), "tilting");
    }

    #[test]
    fn quiver_round_trip() {
        let qv = PyQuiver::fixture("tbar_cluster_333").unwrap();
        let back = PyQuiver::from_json(&qv.to_json()).unwrap();
        assert!(back.__eq__(&qv));
        let end = qv.apply(vec![1, 2, 3]).unwrap();
        assert!(end.is_isomorphic(&PyQuiver::fixture("target_tubular_333").unwrap()));
        assert!(PyQuiver::from_json("{").is_err());
    }

    #[test]
    fn element_arithmetic() {
        let w = PyWeights::new(2, 3, 6).unwrap();
        let x = w.x(3).unwrap().__mul__(6);
        assert!(x == w.c());
        assert!(w.x(4).is_err());
        assert_eq!(w.c().dim_s(), 2);
    }
}
