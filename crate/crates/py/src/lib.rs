//! Python bindings: fields, bound tables, code construction and the enumeration oracles.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hermit_core::bounds::{self, BoundMethod, DistanceSource, RedundancyMode, SequenceKind};
use hermit_core::code::{self, LinearCode};
use hermit_core::oracle::{self, DEFAULT_BUDGET};
use hermit_core::{Curve, FieldSpec, HermitError, Hermitian as CoreHermitian, TwoPointDivisor};

create_exception!(hermit, BudgetExceeded, PyRuntimeError);

fn py_err(e: HermitError) -> PyErr {
    match e {
        HermitError::BudgetExceeded { needed, budget } => {
            BudgetExceeded::new_err(format!("enumeration needs {needed} vectors, budget is {budget}"))
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

fn kind_of(s: &str) -> PyResult<SequenceKind> {
    match s {
        "onepoint" => Ok(SequenceKind::OnePoint),
        "twopoint" => Ok(SequenceKind::TwoPoint),
        _ => Err(PyValueError::new_err(format!(
            "kind must be 'onepoint' or 'twopoint', got {s:?}"
        ))),
    }
}

fn method_of(s: &str) -> PyResult<BoundMethod> {
    match s {
        "simple" => Ok(BoundMethod::Simple),
        "improved" => Ok(BoundMethod::Improved),
        _ => Err(PyValueError::new_err(format!(
            "method must be 'simple' or 'improved', got {s:?}"
        ))),
    }
}

fn default_method(kind: SequenceKind) -> BoundMethod {
    match kind {
        SequenceKind::OnePoint => BoundMethod::Simple,
        SequenceKind::TwoPoint => BoundMethod::Improved,
    }
}

fn herm(q: i64) -> PyResult<CoreHermitian> {
    CoreHermitian::new(q).map_err(py_err)
}

/// GF(q^2) with elements encoded as integers in `[0, q^2)`.
#[pyclass(frozen)]
struct Field {
    inner: FieldSpec,
}

#[pymethods]
impl Field {
    #[new]
    fn new(q: u32) -> PyResult<Self> {
        Ok(Self {
            inner: hermit_core::field_make(q).map_err(py_err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    fn check(&self, a: u8) -> PyResult<u8> {
        self.inner.element(a).map(|e| e.value()).map_err(py_err)
    }

    fn add(&self, a: u8, b: u8) -> PyResult<u8> {
        Ok(self.inner.add(self.check(a)?, self.check(b)?))
    }

    fn sub(&self, a: u8, b: u8) -> PyResult<u8> {
        Ok(self.inner.sub(self.check(a)?, self.check(b)?))
    }

    fn mul(&self, a: u8, b: u8) -> PyResult<u8> {
        Ok(self.inner.mul(self.check(a)?, self.check(b)?))
    }

    fn inv(&self, a: u8) -> PyResult<u8> {
        self.inner
            .inv(self.check(a)?)
            .ok_or_else(|| PyValueError::new_err("zero has no inverse"))
    }

    fn pow(&self, a: u8, e: i64) -> PyResult<u8> {
        self.inner
            .pow(self.check(a)?, e)
            .ok_or_else(|| PyValueError::new_err("negative power of zero"))
    }

    fn __repr__(&self) -> String {
        format!("Field(q={}, order={})", self.inner.q(), self.inner.order())
    }
}

/// The Hermitian curve `y^q + y = x^(q+1)` over GF(q^2).
#[pyclass(frozen)]
struct Hermitian {
    inner: CoreHermitian,
}

#[pymethods]
impl Hermitian {
    #[new]
    fn new(q: i64) -> PyResult<Self> {
        Ok(Self { inner: herm(q)? })
    }

    #[getter]
    fn q(&self) -> i64 {
        self.inner.q()
    }

    #[getter]
    fn genus(&self) -> i64 {
        self.inner.genus()
    }

    #[getter]
    fn n_points(&self) -> i64 {
        self.inner.n_points()
    }

    #[getter]
    fn duality_shift(&self) -> i64 {
        self.inner.duality_shift()
    }

    /// `(d, a, b)` with `mP + nQ = dH - aP - bQ` and `0 <= a, b <= q`.
    fn canonicalize(&self, m: i64, n: i64) -> (i64, i64, i64) {
        let c = self.inner.canonicalize(TwoPointDivisor::new(m, n));
        (c.d, c.a, c.b)
    }

    /// `(d, a)` with `G_i = K + dH - aP`.
    fn sequence_decompose(&self, i: i64) -> (i64, i64) {
        self.inner.sequence_decompose(i)
    }
}

/// A linear code over GF(q^2) with its provenance.
#[pyclass(frozen)]
struct Code {
    inner: LinearCode,
}

#[pymethods]
impl Code {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn redundancy(&self) -> usize {
        self.inner.redundancy()
    }

    /// Generator matrix in reduced row echelon form.
    fn generator(&self) -> Vec<Vec<u8>> {
        self.inner.generator_basis().to_rows()
    }

    /// Parity-check matrix in reduced row echelon form.
    fn check_matrix(&self) -> Vec<Vec<u8>> {
        self.inner.check_basis().to_rows()
    }

    fn provenance(&self) -> String {
        serde_json::to_string(&self.inner.provenance).unwrap_or_default()
    }

    fn same_code(&self, other: &Code) -> bool {
        self.inner.same_code(&other.inner)
    }

    /// `A_0, ..., A_n` by enumerating the code ("exhaustive") or its dual ("macwilliams").
    #[pyo3(signature = (oracle = "exhaustive", budget = None))]
    fn weight_distribution(&self, py: Python<'_>, oracle: &str, budget: Option<u128>) -> PyResult<Vec<String>> {
        let budget = budget.unwrap_or(DEFAULT_BUDGET);
        let code = &self.inner;
        let dist = match oracle {
            "exhaustive" => py.detach(|| oracle::weight_distribution_exhaustive(code, budget)),
            "macwilliams" => py.detach(|| oracle::weight_distribution_via_dual(code, budget)),
            _ => return Err(PyValueError::new_err(format!("unknown oracle {oracle:?}"))),
        }
        .map_err(py_err)?;
        Ok(dist.counts.iter().map(|c| c.to_string()).collect())
    }

    /// Minimum distance, `None` for the zero code.
    #[pyo3(signature = (oracle = "exhaustive", budget = None))]
    fn min_distance(&self, py: Python<'_>, oracle: &str, budget: Option<u128>) -> PyResult<Option<usize>> {
        let counts = self.weight_distribution(py, oracle, budget)?;
        Ok(counts.iter().skip(1).position(|c| c != "0").map(|w| w + 1))
    }

    fn __repr__(&self) -> String {
        format!(
            "Code([{}, {}], {})",
            self.inner.n, self.inner.k, self.inner.provenance.construction
        )
    }
}

fn curve(q: u32) -> PyResult<Curve> {
    Curve::new(q).map_err(py_err)
}

/// `C_L(R - P, aP)` for "onepoint", `C_L(R - P - Q, aP - 2Q)` for "twopoint".
#[pyfunction]
fn classical_code(q: u32, kind: &str, a: i64) -> PyResult<Code> {
    let inner = code::classical_code(&curve(q)?, kind_of(kind)?, a).map_err(py_err)?;
    Ok(Code { inner })
}

/// Code with designed distance `delta`; `mode` is "improved" or "classical".
#[pyfunction]
#[pyo3(signature = (q, kind, delta, mode = "improved"))]
fn designed_code(q: u32, kind: &str, delta: i64, mode: &str) -> PyResult<(Code, String)> {
    let kind = kind_of(kind)?;
    let mode = match mode {
        "improved" => RedundancyMode::Improved,
        "classical" => RedundancyMode::Classical,
        _ => return Err(PyValueError::new_err(format!("unknown mode {mode:?}"))),
    };
    let (inner, diagram) = code::designed_code(&curve(q)?, kind, delta, default_method(kind), mode).map_err(py_err)?;
    let diagram = serde_json::to_string(&diagram).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((Code { inner }, diagram))
}

/// Rows `(i, d, a, bound)` for `i = -1 ..= i_max`.
#[pyfunction]
fn coset_bounds(q: i64, kind: &str, method: &str, i_max: i64) -> PyResult<Vec<(i64, i64, i64, i64)>> {
    let seq = bounds::CosetBoundSequence::new(&herm(q)?, kind_of(kind)?, method_of(method)?, i_max);
    Ok(seq.rows().iter().map(|r| (r.i, r.d, r.a, r.bound)).collect())
}

/// `(onepoint_classical, onepoint_improved, twopoint_classical, twopoint_improved, diff)`.
#[pyfunction]
fn redundancy_row(q: i64, delta: i64) -> PyResult<(i64, i64, i64, i64, i64)> {
    let r = bounds::redundancy_row(delta, &herm(q)?).map_err(py_err)?;
    Ok((
        r.onepoint_classical,
        r.onepoint_improved,
        r.twopoint_classical,
        r.twopoint_improved,
        r.diff,
    ))
}

#[pyfunction]
fn redundancy_diff_closed_form(q: i64, delta: i64) -> PyResult<i64> {
    bounds::redundancy_diff_closed_form(delta, &herm(q)?).map_err(py_err)
}

/// `(distance, source)` for the classical code with evaluation degree `a`.
#[pyfunction]
fn classical_distance(q: i64, kind: &str, a: i64) -> PyResult<Option<(i64, String)>> {
    let pred = bounds::classical_distance(kind_of(kind)?, a, &herm(q)?);
    Ok(pred.map(|p| {
        let source = match p.source {
            DistanceSource::Theorem(case) => {
                format!("case {}", serde_json::to_value(case).unwrap().as_str().unwrap_or("?"))
            }
            DistanceSource::OrderBound => "order bound".to_string(),
        };
        (p.distance, source)
    }))
}

/// Rows `(delta, min_base, min_propagated, twopoint)` of the sequence search.
#[pyfunction]
fn search_sequences(q: i64, delta_max: i64) -> PyResult<Vec<(i64, i64, i64, i64)>> {
    let r = bounds::search_sequences(delta_max, &herm(q)?).map_err(py_err)?;
    Ok(r.rows
        .iter()
        .map(|s| (s.delta, s.min_base, s.min_propagated, s.twopoint))
        .collect())
}

#[pymodule]
fn hermit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Hermitian>()?;
    m.add_class::<Code>()?;
    m.add_function(wrap_pyfunction!(classical_code, m)?)?;
    m.add_function(wrap_pyfunction!(designed_code, m)?)?;
    m.add_function(wrap_pyfunction!(coset_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(redundancy_row, m)?)?;
    m.add_function(wrap_pyfunction!(redundancy_diff_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(classical_distance, m)?)?;
    m.add_function(wrap_pyfunction!(search_sequences, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    Ok(())
}
