//! Python bindings. Field elements cross the boundary as positions
//! (`0..q^n - 1` for powers of the primitive element, `q^n - 1` for zero) and
//! words as sorted support lists.

use std::path::PathBuf;
use std::sync::Arc;

use num_bigint::BigUint;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use fdtw_core::bounds;
use fdtw_core::cdc::DEFAULT_VERIFY_PAIR_CAP;
use fdtw_core::fdtw::{pad_hadamard, predicted_params};
use fdtw_core::format;
use fdtw_core::verify;
use fdtw_core::{
    codec, construct, shorten, ConstantDimensionCode, ConstantWeightCode, CwWord, Error,
    FieldContext, InfoWord,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(msg) => PyIOError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait OrRaise<T> {
    fn or_raise(self) -> PyResult<T>;
}

impl<T> OrRaise<T> for fdtw_core::Result<T> {
    fn or_raise(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// The finite field GF(q^n).
#[pyclass(name = "Field", module = "fdtw_py", frozen)]
struct PyField {
    inner: Arc<FieldContext>,
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (q, n, poly = None))]
    fn new(q: u32, n: usize, poly: Option<Vec<u32>>) -> PyResult<Self> {
        let inner = FieldContext::new(q, n, poly.as_deref()).or_raise()?;
        Ok(PyField { inner: Arc::new(inner) })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn poly(&self) -> Vec<u32> {
        self.inner.poly().to_vec()
    }

    /// Coordinate vector of the element at `pos`.
    fn vector(&self, pos: u32) -> PyResult<Vec<u32>> {
        Ok(self.inner.vector_of(self.inner.element_at(pos).or_raise()?))
    }

    /// Position of the element with coordinate vector `v`.
    fn position(&self, v: Vec<u32>) -> PyResult<u32> {
        Ok(self.inner.char_index(self.inner.element_of(&v).or_raise()?))
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.char_index(f.add(f.element_at(a).or_raise()?, f.element_at(b).or_raise()?)))
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.char_index(f.mul(f.element_at(a).or_raise()?, f.element_at(b).or_raise()?)))
    }

    fn __repr__(&self) -> String {
        format!("Field(q={}, n={}, poly={:?})", self.inner.q(), self.inner.n(), self.inner.poly())
    }
}

/// A constant dimension code: a set of k-dimensional subspaces of F_q^n.
#[pyclass(name = "SubspaceCode", module = "fdtw_py", frozen)]
struct PySubspaceCode {
    inner: ConstantDimensionCode,
}

fn field(q: u32, n: usize, poly: Option<Vec<u32>>) -> PyResult<Arc<FieldContext>> {
    Ok(Arc::new(FieldContext::new(q, n, poly.as_deref()).or_raise()?))
}

fn wrap(inner: ConstantDimensionCode) -> PySubspaceCode {
    PySubspaceCode { inner }
}

fn word(code: &ConstantDimensionCode, support: Vec<u32>) -> PyResult<CwWord> {
    CwWord::new(code.field().order() as usize, support).or_raise()
}

#[pymethods]
impl PySubspaceCode {
    #[staticmethod]
    #[pyo3(signature = (q, n, k, poly = None))]
    fn spread(q: u32, n: usize, k: usize, poly: Option<Vec<u32>>) -> PyResult<Self> {
        Ok(wrap(ConstantDimensionCode::spread(field(q, n, poly)?, k).or_raise()?))
    }

    #[staticmethod]
    #[pyo3(signature = (q, n, k, poly = None))]
    fn grassmannian(q: u32, n: usize, k: usize, poly: Option<Vec<u32>>) -> PyResult<Self> {
        Ok(wrap(ConstantDimensionCode::full_grassmannian(field(q, n, poly)?, k).or_raise()?))
    }

    #[staticmethod]
    #[pyo3(signature = (m, q = 2))]
    fn lifted_rank(m: usize, q: u32) -> PyResult<Self> {
        Ok(wrap(ConstantDimensionCode::lifted_rank(m, q).or_raise()?))
    }

    #[staticmethod]
    #[pyo3(signature = (q, n, k, d, seed = None, poly = None))]
    fn search(
        q: u32,
        n: usize,
        k: usize,
        d: usize,
        seed: Option<u64>,
        poly: Option<Vec<u32>>,
    ) -> PyResult<Self> {
        Ok(wrap(ConstantDimensionCode::greedy_search(field(q, n, poly)?, k, d, seed).or_raise()?))
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(wrap(format::load_cdc(&path, DEFAULT_VERIFY_PAIR_CAP).or_raise()?))
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        format::save_cdc(&self.inner, &path).or_raise()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField { inner: self.inner.field().clone() }
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.declared_d()
    }

    #[getter]
    fn tag(&self) -> String {
        self.inner.tag().to_string()
    }

    #[getter]
    fn verified(&self) -> bool {
        self.inner.is_verified()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// RREF rows of every subspace, in canonical order.
    fn words(&self) -> Vec<Vec<Vec<u32>>> {
        self.inner.words().iter().map(|w| w.rows().to_vec()).collect()
    }

    /// `(distance, i, j)` for a closest pair, or `None` with fewer than two words.
    fn min_distance(&self) -> Option<(usize, usize, usize)> {
        self.inner.min_distance().map(|(i, j, d)| (d, i, j))
    }

    /// `(N, d, w, size)` of the constant weight code built from this code.
    fn predicted_params(&self) -> (u64, u64, u64, u64) {
        let p = predicted_params(&self.inner);
        (p.len, p.distance, p.weight, p.size)
    }

    fn message_count(&self) -> usize {
        codec::message_count(&self.inner)
    }

    fn construct(&self) -> PyResult<PyWeightCode> {
        Ok(PyWeightCode { inner: construct(&self.inner).or_raise()? })
    }

    fn encode(&self, i: usize, j: usize) -> PyResult<Vec<u32>> {
        Ok(codec::encode(&self.inner, InfoWord { i, j }).or_raise()?.support().to_vec())
    }

    fn decode(&self, support: Vec<u32>) -> PyResult<(usize, usize)> {
        let info = codec::decode(&self.inner, &word(&self.inner, support)?).or_raise()?;
        Ok((info.i, info.j))
    }

    /// Corrected support; raises `ValueError` whose message starts with the
    /// failure code (`bad-weight`, `not-subspace`, `not-in-code`, `no-beta`,
    /// `ambiguous-tie`).
    fn correct(&self, support: Vec<u32>) -> PyResult<Vec<u32>> {
        let received = word(&self.inner, support)?;
        codec::correct(&self.inner, &received)
            .map(|w| w.support().to_vec())
            .map_err(|e| PyValueError::new_err(format!("{}: {e}", e.code())))
    }

    fn __repr__(&self) -> String {
        format!(
            "SubspaceCode(q={}, n={}, k={}, d={}, size={}, tag={})",
            self.inner.q(),
            self.inner.n(),
            self.inner.k(),
            self.inner.declared_d(),
            self.inner.len(),
            self.inner.tag()
        )
    }
}

/// A binary constant weight code stored as sorted supports.
#[pyclass(name = "WeightCode", module = "fdtw_py", frozen)]
struct PyWeightCode {
    inner: ConstantWeightCode,
}

#[pymethods]
impl PyWeightCode {
    #[new]
    fn new(length: usize, weight: usize, d: usize, words: Vec<Vec<u32>>) -> PyResult<Self> {
        let words = words.into_iter().map(|s| CwWord::new(length, s)).collect::<fdtw_core::Result<_>>();
        Ok(PyWeightCode { inner: ConstantWeightCode::new(length, weight, d, words.or_raise()?).or_raise()? })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(PyWeightCode { inner: format::load_cw(&path).or_raise()? })
    }

    #[pyo3(signature = (path, field = None))]
    fn save(&self, path: PathBuf, field: Option<&PyField>) -> PyResult<()> {
        format::save_cw(&self.inner, field.map(|f| &*f.inner), &path).or_raise()
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn weight(&self) -> usize {
        self.inner.weight()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.declared_d()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn words(&self) -> Vec<Vec<u32>> {
        self.inner.words().iter().map(|w| w.support().to_vec()).collect()
    }

    fn shorten(&self, coord: usize, bit: bool) -> PyResult<Self> {
        Ok(PyWeightCode { inner: shorten(&self.inner, coord, bit).or_raise()? })
    }

    fn pad_hadamard(&self) -> PyResult<Self> {
        Ok(PyWeightCode { inner: pad_hadamard(&self.inner).or_raise()? })
    }

    /// `(distance, i, j)` for a closest pair, checked exhaustively.
    fn min_distance(&self) -> PyResult<(usize, usize, usize)> {
        let r = verify::min_distance(&self.inner).or_raise()?;
        Ok((r.distance, r.pair.0, r.pair.1))
    }

    fn is_steiner(&self, t: usize) -> PyResult<bool> {
        Ok(verify::check_steiner(&self.inner, t).or_raise()?.holds)
    }

    fn is_cyclic(&self) -> bool {
        verify::is_cyclic(&self.inner)
    }

    /// `(representatives, [(representative, orbit size)])` of the optical
    /// orthogonal code with correlation bound `lam` (default `w - d/2`).
    #[pyo3(signature = (lam = None))]
    #[allow(clippy::type_complexity)]
    fn ooc(&self, lam: Option<usize>) -> PyResult<(Vec<Vec<u32>>, Vec<(Vec<u32>, usize)>)> {
        let lam = lam.unwrap_or_else(|| verify::declared_lambda(&self.inner));
        let ex = verify::ooc_extract(&self.inner, lam).or_raise()?;
        Ok((
            ex.ooc.reps.iter().map(|w| w.support().to_vec()).collect(),
            ex.discarded.iter().map(|d| (d.representative.support().to_vec(), d.orbit_size)).collect(),
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "WeightCode(N={}, w={}, d={}, size={})",
            self.inner.len(),
            self.inner.weight(),
            self.inner.declared_d(),
            self.inner.size()
        )
    }
}

#[pyfunction]
fn gaussian(n: u64, l: u64, q: u64) -> BigUint {
    bounds::gaussian(n, l, q)
}

#[pyfunction]
fn johnson_step(n: u64, d: u64, w: u64, prev: BigUint) -> PyResult<BigUint> {
    bounds::johnson_step(n, d, w, &prev).or_raise()
}

/// `(bound, M)` where `M = bound + 1` is the excluded size, or `None` when
/// the scan reached `cap`.
#[pyfunction]
#[pyo3(signature = (n, delta, w, cap = 1000))]
fn avz_bound(n: u64, delta: u64, w: u64, cap: u64) -> PyResult<(u64, Option<u64>)> {
    let r = bounds::avz_bound(n, delta, w, cap).or_raise()?;
    Ok((r.bound, r.witness.map(|x| x.m)))
}

#[pyfunction]
fn partial_spread_lower_bound(n: u64, k: u64, q: u64) -> PyResult<BigUint> {
    bounds::partial_spread_lower_bound(n, k, q).or_raise()
}

#[pyfunction]
fn fdtw_size_from_partial_spread(n: u64, k: u64, q: u64) -> PyResult<BigUint> {
    bounds::fdtw_size_from_partial_spread(n, k, q).or_raise()
}

#[pyfunction]
fn spread_upper_bound(n: u64, k: u64, q: u64) -> PyResult<BigUint> {
    bounds::spread_upper_bound(n, k, q).or_raise()
}

#[pyfunction]
fn optimal_family_values(m: u64) -> PyResult<(BigUint, BigUint)> {
    bounds::optimal_family_values(m).or_raise()
}

/// Hex bitmap of a support, position 0 in the most significant bit.
#[pyfunction]
fn to_hex(length: usize, support: Vec<u32>) -> PyResult<String> {
    Ok(format::emit_hex(&CwWord::new(length, support).or_raise()?))
}

#[pyfunction]
fn from_hex(length: usize, text: &str) -> PyResult<Vec<u32>> {
    Ok(format::parse_hex(length, text).or_raise()?.support().to_vec())
}

#[pymodule]
fn fdtw_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PySubspaceCode>()?;
    m.add_class::<PyWeightCode>()?;
    m.add_function(wrap_pyfunction!(gaussian, m)?)?;
    m.add_function(wrap_pyfunction!(johnson_step, m)?)?;
    m.add_function(wrap_pyfunction!(avz_bound, m)?)?;
    m.add_function(wrap_pyfunction!(partial_spread_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(fdtw_size_from_partial_spread, m)?)?;
    m.add_function(wrap_pyfunction!(spread_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_family_values, m)?)?;
    m.add_function(wrap_pyfunction!(to_hex, m)?)?;
    m.add_function(wrap_pyfunction!(from_hex, m)?)?;
    Ok(())
}
