//! Python bindings: a `Diagram` class over the core library plus braid and
//! pretzel constructors.

// The pymethods macro expansion trips useless_conversion under this
// toolchain's clippy.
#![allow(clippy::useless_conversion)]

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use kstate::alexander::{determinant, fox_alexander, state_sum_euler};
use kstate::alternation::{min_fixable_set, verify_theorem, VerifyOptions};
use kstate::gradings::{delta_spread, grade_state};
use kstate::states::{eligible_marked_edges, enumerate_states, state_count_oracle, MarkedEdge};
use kstate::{construct, parse_gauss, parse_pd, DEFAULT_STATE_CAP};

fn to_py_err(err: kstate::Error) -> PyErr {
    use kstate::Error::*;
    match err {
        GradingContract(_) | Internal(_) => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

/// An oriented knot diagram.
#[pyclass(frozen, module = "kstate_py")]
struct Diagram {
    inner: kstate::Diagram,
}

impl Diagram {
    fn marked_edge(&self, edge: Option<usize>) -> PyResult<MarkedEdge> {
        let edges = eligible_marked_edges(&self.inner).map_err(to_py_err)?;
        match edge {
            None => Ok(edges[0]),
            Some(label) => edges.into_iter().find(|m| m.edge == label).ok_or_else(|| {
                PyValueError::new_err(format!("edge {label} is not an eligible marked edge"))
            }),
        }
    }
}

#[pymethods]
impl Diagram {
    /// Parse PD-code text, e.g. `"X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"`.
    #[staticmethod]
    fn from_pd(text: &str) -> PyResult<Self> {
        Ok(Diagram {
            inner: parse_pd(text).map_err(to_py_err)?,
        })
    }

    /// Parse a signed Gauss code, e.g. `"O1- U2- O3- U1- O2- U3-"`.
    #[staticmethod]
    fn from_gauss(text: &str) -> PyResult<Self> {
        Ok(Diagram {
            inner: parse_gauss(text).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn crossings(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> usize {
        self.inner.edges().len()
    }

    #[getter]
    fn faces(&self) -> usize {
        self.inner.faces().len()
    }

    #[getter]
    fn writhe(&self) -> i64 {
        self.inner.writhe()
    }

    #[getter]
    fn alternating(&self) -> bool {
        self.inner.is_alternating()
    }

    #[getter]
    fn reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    /// Number of bad domains, beta(D).
    #[getter]
    fn beta(&self) -> usize {
        self.inner.bad_domain_count()
    }

    /// Labels of edges whose endpoint passes match.
    #[getter]
    fn bad_edges(&self) -> Vec<usize> {
        self.inner.bad_edges()
    }

    /// dalt(D): minimal crossing changes making this diagram alternating.
    #[getter]
    fn dalt(&self) -> PyResult<usize> {
        kstate::alternation::dalt_diagram(&self.inner).map_err(to_py_err)
    }

    fn pd(&self) -> String {
        self.inner.to_pd()
    }

    fn gauss(&self) -> String {
        self.inner.to_gauss()
    }

    fn mirror(&self) -> Self {
        Diagram {
            inner: self.inner.mirror(),
        }
    }

    /// A copy with the given crossings' over/under data swapped.
    fn with_flipped(&self, crossings: Vec<usize>) -> PyResult<Self> {
        let set = crossings.into_iter().collect();
        Ok(Diagram {
            inner: self.inner.with_flipped(&set).map_err(to_py_err)?,
        })
    }

    /// The smaller alternating flip mask; its size is dalt(D).
    fn min_fixable_set(&self) -> PyResult<Vec<usize>> {
        Ok(min_fixable_set(&self.inner)
            .map_err(to_py_err)?
            .crossings
            .into_iter()
            .collect())
    }

    /// Labels of all eligible marked edges.
    fn eligible_edges(&self) -> PyResult<Vec<usize>> {
        Ok(eligible_marked_edges(&self.inner)
            .map_err(to_py_err)?
            .into_iter()
            .map(|m| m.edge)
            .collect())
    }

    /// Number of Kauffman states (defaults to the lowest marked edge).
    #[pyo3(signature = (edge=None, max_states=None))]
    fn state_count(&self, edge: Option<usize>, max_states: Option<usize>) -> PyResult<usize> {
        let e = self.marked_edge(edge)?;
        let cap = max_states.unwrap_or(DEFAULT_STATE_CAP);
        Ok(enumerate_states(&self.inner, &e, cap)
            .map_err(to_py_err)?
            .len())
    }

    /// Independent state-count oracle: checkerboard spanning trees.
    fn spanning_tree_count(&self) -> PyResult<BigUint> {
        state_count_oracle(&self.inner).map_err(to_py_err)
    }

    /// Kauffman states as lists of (crossing, face, quadrant) triples, in
    /// canonical order.
    #[pyo3(signature = (edge=None, max_states=None))]
    fn states(
        &self,
        edge: Option<usize>,
        max_states: Option<usize>,
    ) -> PyResult<Vec<Vec<[usize; 3]>>> {
        let e = self.marked_edge(edge)?;
        let cap = max_states.unwrap_or(DEFAULT_STATE_CAP);
        Ok(enumerate_states(&self.inner, &e, cap)
            .map_err(to_py_err)?
            .iter()
            .map(|x| x.triples())
            .collect())
    }

    /// (Maslov, Alexander, delta) of every state, as exact rational
    /// strings, in canonical state order.
    #[pyo3(signature = (edge=None, max_states=None))]
    fn gradings(
        &self,
        edge: Option<usize>,
        max_states: Option<usize>,
    ) -> PyResult<Vec<(String, String, String)>> {
        let e = self.marked_edge(edge)?;
        let cap = max_states.unwrap_or(DEFAULT_STATE_CAP);
        Ok(enumerate_states(&self.inner, &e, cap)
            .map_err(to_py_err)?
            .iter()
            .map(|x| {
                let g = grade_state(&self.inner, x);
                (
                    g.maslov.to_string(),
                    g.alexander.to_string(),
                    g.delta.to_string(),
                )
            })
            .collect())
    }

    /// Max minus min delta over all states; None if the state set is empty.
    #[pyo3(signature = (edge=None, max_states=None))]
    fn delta_spread(
        &self,
        edge: Option<usize>,
        max_states: Option<usize>,
    ) -> PyResult<Option<u64>> {
        let e = self.marked_edge(edge)?;
        let cap = max_states.unwrap_or(DEFAULT_STATE_CAP);
        delta_spread(&self.inner, &e, cap).map_err(to_py_err)
    }

    /// Alexander polynomial via Fox calculus, as {exponent: coefficient}.
    fn alexander(&self) -> PyResult<BTreeMap<i64, BigInt>> {
        let p = fox_alexander(&self.inner).map_err(to_py_err)?;
        Ok(p.terms().map(|(e, c)| (e, c.clone())).collect())
    }

    /// Alexander polynomial as a human-readable string.
    fn alexander_string(&self) -> PyResult<String> {
        Ok(fox_alexander(&self.inner).map_err(to_py_err)?.to_string())
    }

    /// Alexander polynomial via the Kauffman state sum (Euler
    /// characteristic of the state complex).
    #[pyo3(signature = (edge=None, max_states=None))]
    fn alexander_state_sum(
        &self,
        edge: Option<usize>,
        max_states: Option<usize>,
    ) -> PyResult<BTreeMap<i64, BigInt>> {
        let e = self.marked_edge(edge)?;
        let cap = max_states.unwrap_or(DEFAULT_STATE_CAP);
        let p = state_sum_euler(&self.inner, &e, cap).map_err(to_py_err)?;
        Ok(p.terms().map(|(e, c)| (e, c.clone())).collect())
    }

    /// The knot determinant |Delta(-1)|.
    fn determinant(&self) -> PyResult<BigUint> {
        determinant(&self.inner).map_err(to_py_err)
    }

    /// Run the verification suite; returns the report as a JSON string.
    #[pyo3(signature = (deep=false, edge=None, max_states=None))]
    fn verify(
        &self,
        deep: bool,
        edge: Option<usize>,
        max_states: Option<usize>,
    ) -> PyResult<String> {
        let opts = VerifyOptions {
            edge,
            deep,
            state_cap: max_states.unwrap_or(DEFAULT_STATE_CAP),
        };
        let report = verify_theorem(&self.inner, "diagram", &opts).map_err(to_py_err)?;
        serde_json::to_string(&report)
            .map_err(|e| PyRuntimeError::new_err(format!("serialization error: {e}")))
    }

    fn __repr__(&self) -> String {
        format!(
            "Diagram(crossings={}, writhe={}, alternating={}, pd={:?})",
            self.inner.n(),
            self.inner.writhe(),
            self.inner.is_alternating(),
            self.inner.to_pd()
        )
    }
}

/// PD text of the trace closure of a braid word (k = positive generator
/// on strands k, k+1; -k its inverse).
#[pyfunction]
fn braid_pd(word: Vec<i32>) -> PyResult<String> {
    construct::braid_pd(&word).map_err(to_py_err)
}

/// PD text of the standard pretzel diagram with the given twist counts.
#[pyfunction]
fn pretzel_pd(twists: Vec<i32>) -> PyResult<String> {
    construct::pretzel_pd(&twists).map_err(to_py_err)
}

#[pymodule]
fn kstate_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Diagram>()?;
    m.add_function(wrap_pyfunction!(braid_pd, m)?)?;
    m.add_function(wrap_pyfunction!(pretzel_pd, m)?)?;
    Ok(())
}
