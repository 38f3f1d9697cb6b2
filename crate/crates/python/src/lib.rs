//! Python bindings. Exact values cross the boundary as `"p/q"` strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tabsum_core::graph::{kappa as kappa_edge, Multiplicity};
use tabsum_core::identities::integral_check as integral_check_core;
use tabsum_core::partitions::{partitions_of as partitions_of_core, Cell, Partition};
use tabsum_core::sampler::compare_empirical_analytic;
use tabsum_core::{
    evaluate_identity as evaluate_core, CentralMeasure, ConvergenceReport, Error, ExactScalar, GaussianExact, Graph,
    IdentitySpec, MeasureSpec, Sampler, SpecialCase,
};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<ExactScalar> {
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(ExactScalar::from(n));
    }
    let s: String = obj.extract()?;
    s.parse().map_err(err)
}

fn complex(obj: &Bound<'_, PyAny>) -> PyResult<GaussianExact> {
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(GaussianExact::real(ExactScalar::from(n)));
    }
    let s: String = obj.extract()?;
    s.parse().map_err(err)
}

fn partition(obj: &Bound<'_, PyAny>) -> PyResult<Partition> {
    if let Ok(p) = obj.extract::<PyRef<'_, PyPartition>>() {
        return Ok(p.0.clone());
    }
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(err);
    }
    let parts: Vec<usize> = obj.extract()?;
    Partition::new(parts).map_err(err)
}

fn cell(obj: &Bound<'_, PyAny>) -> PyResult<Cell> {
    if let Ok((i, j)) = obj.extract::<(usize, usize)>() {
        if i == 0 || j == 0 {
            return Err(PyValueError::new_err("box coordinates start at 1"));
        }
        return Ok(Cell::new(i, j));
    }
    let s: String = obj.extract()?;
    s.parse().map_err(err)
}

fn multiplicity(family: &str, theta: &Bound<'_, PyAny>) -> PyResult<Multiplicity> {
    match family {
        "jack" => Multiplicity::jack(scalar(theta)?).map_err(err),
        "kingman" => Ok(Multiplicity::Kingman),
        "young" => Ok(Multiplicity::Young),
        other => Err(PyValueError::new_err(format!(
            "unknown family {other:?}; expected jack, kingman or young"
        ))),
    }
}

/// A Young diagram, given by weakly decreasing row lengths.
#[pyclass(name = "Partition", module = "tabsum", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition(Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: &Bound<'_, PyAny>) -> PyResult<Self> {
        partition(parts).map(PyPartition)
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn length(&self) -> usize {
        self.0.length()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn addable_cells(&self) -> Vec<(usize, usize)> {
        self.0.addable_cells().into_iter().map(|c| (c.row, c.col)).collect()
    }

    fn removable_cells(&self) -> Vec<(usize, usize)> {
        self.0.removable_cells().into_iter().map(|c| (c.row, c.col)).collect()
    }

    fn contains(&self, cell_: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.contains(cell(cell_)?))
    }

    fn __len__(&self) -> usize {
        self.0.length()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.to_string())
    }
}

/// All partitions of `n`, in reverse lexicographic order.
#[pyfunction]
fn partitions_of(n: usize) -> Vec<PyPartition> {
    partitions_of_core(n).into_iter().map(PyPartition).collect()
}

/// Weighted number of paths from the empty diagram to `partition`.
#[pyfunction]
#[pyo3(signature = (lam, family = "jack", theta = None))]
fn dim(py: Python<'_>, lam: &Bound<'_, PyAny>, family: &str, theta: Option<&Bound<'_, PyAny>>) -> PyResult<String> {
    let one = 1i64.into_pyobject(py)?.into_any();
    let spec = multiplicity(family, theta.unwrap_or(&one))?;
    Ok(Graph::new(spec).dim(&partition(lam)?).to_string())
}

/// Edge multiplicity of `mu -> lam`.
#[pyfunction]
#[pyo3(signature = (mu, lam, family = "jack", theta = None))]
fn kappa(
    py: Python<'_>,
    mu: &Bound<'_, PyAny>,
    lam: &Bound<'_, PyAny>,
    family: &str,
    theta: Option<&Bound<'_, PyAny>>,
) -> PyResult<String> {
    let one = 1i64.into_pyobject(py)?.into_any();
    let spec = multiplicity(family, theta.unwrap_or(&one))?;
    kappa_edge(&spec, &partition(mu)?, &partition(lam)?)
        .map(|v| v.to_string())
        .map_err(err)
}

/// A central measure: the θ-Plancherel measure, a z-measure, or a Kingman
/// t-measure.
#[pyclass(name = "Measure", module = "tabsum", frozen)]
struct PyMeasure(CentralMeasure);

fn measure_from(spec: Result<MeasureSpec, Error>) -> PyResult<PyMeasure> {
    Ok(PyMeasure(CentralMeasure::new(spec.map_err(err)?).map_err(err)?))
}

#[pymethods]
impl PyMeasure {
    #[staticmethod]
    #[pyo3(signature = (theta = None))]
    fn plancherel(theta: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let theta = theta.map(scalar).transpose()?.unwrap_or_else(ExactScalar::one);
        measure_from(MeasureSpec::plancherel(theta))
    }

    #[staticmethod]
    fn z_measure(theta: &Bound<'_, PyAny>, z: &Bound<'_, PyAny>) -> PyResult<Self> {
        measure_from(MeasureSpec::z_measure(scalar(theta)?, complex(z)?))
    }

    #[staticmethod]
    fn kingman_t(t: &Bound<'_, PyAny>) -> PyResult<Self> {
        measure_from(MeasureSpec::kingman_t(scalar(t)?))
    }

    fn phi(&self, lam: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.0.phi(&partition(lam)?).to_string())
    }

    fn dim(&self, lam: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.0.dim(&partition(lam)?).to_string())
    }

    fn transition(&self, mu: &Bound<'_, PyAny>, lam: &Bound<'_, PyAny>) -> PyResult<String> {
        self.0
            .transition(&partition(mu)?, &partition(lam)?)
            .map(|v| v.to_string())
            .map_err(err)
    }

    /// `{partition string: probability}` at level `n`.
    fn level_distribution<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyDict>> {
        let dist = self.0.level_distribution(n).map_err(err)?;
        let out = PyDict::new(py);
        for (lam, w) in &dist.weights {
            out.set_item(lam.to_string(), w.to_string())?;
        }
        Ok(out)
    }

    fn check_harmonicity(&self, mu: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.check_harmonicity(&partition(mu)?))
    }

    /// Exact probability that the box enters at step `n`.
    fn box_probability(&self, box_: &Bound<'_, PyAny>, n: usize) -> PyResult<String> {
        tabsum_core::identities::box_probability_term(&self.0, cell(box_)?, n)
            .map(|v| v.to_string())
            .map_err(err)
    }

    /// Random growth path of `steps` boxes.
    fn grow_path(&self, py: Python<'_>, steps: usize, seed: u64) -> PyResult<Vec<PyPartition>> {
        let sampler = Sampler::new(self.0.spec().clone()).map_err(err)?;
        let path = py.detach(|| sampler.grow_path(steps, seed));
        Ok(path.diagrams.into_iter().map(PyPartition).collect())
    }

    /// Entry-time histogram of a box with exact comparison rows.
    #[pyo3(signature = (box_, steps, trials, seed = 0))]
    fn entry_distribution<'py>(
        &self,
        py: Python<'py>,
        box_: &Bound<'_, PyAny>,
        steps: usize,
        trials: u64,
        seed: u64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let c = cell(box_)?;
        let sampler = Sampler::new(self.0.spec().clone()).map_err(err)?;
        let hist = py.detach(|| sampler.entry_distribution(c, steps, trials, seed));
        let rows = compare_empirical_analytic(&hist, sampler.measure()).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("trials", hist.trials)?;
        out.set_item("not_reached", hist.not_reached)?;
        out.set_item("counts", hist.counts.clone())?;
        let rows: Vec<(usize, u64, f64, String, f64)> = rows
            .into_iter()
            .map(|r| (r.level, r.count, r.empirical, r.analytic.to_string(), r.z_score))
            .collect();
        out.set_item("rows", rows)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Measure({})", self.0.spec())
    }
}

/// Level-by-level partial sums of an identity.
#[pyclass(name = "Report", module = "tabsum", frozen)]
struct PyReport(ConvergenceReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn identity(&self) -> String {
        self.0.identity.to_string()
    }

    #[getter]
    fn final_sum(&self) -> String {
        self.0.final_sum().to_string()
    }

    #[getter]
    fn final_residual(&self) -> String {
        self.0.final_residual().to_string()
    }

    #[getter]
    fn residual_float(&self) -> f64 {
        self.0.final_residual().to_f64()
    }

    /// `(level, mass, cumulative, residual)` as exact strings.
    #[getter]
    fn rows(&self) -> Vec<(usize, String, String, String)> {
        self.0
            .rows
            .iter()
            .map(|r| (r.level, r.mass.to_string(), r.cumulative.to_string(), r.residual.to_string()))
            .collect()
    }

    fn is_monotone(&self) -> bool {
        self.0.is_monotone()
    }

    fn passes(&self, tol: f64) -> bool {
        self.0.passes(tol)
    }

    fn to_csv(&self) -> String {
        self.0.to_csv_string()
    }

    fn to_json(&self) -> String {
        self.0.to_json_string()
    }

    fn __repr__(&self) -> String {
        format!("Report({}, residual={})", self.0.identity, self.0.final_residual())
    }
}

fn need<T>(v: Option<T>, name: &str, identity: &str) -> PyResult<T> {
    v.ok_or_else(|| PyValueError::new_err(format!("{identity} needs {name}")))
}

/// Sums the named identity up to `max_level`. Names are the kebab-case
/// identity tags, e.g. `"theta-plancherel-hook"`.
#[pyfunction]
#[pyo3(signature = (identity, max_level, k = None, l = None, theta = None, z = None, t = None, case = None, box_ = None, measure = None))]
#[allow(clippy::too_many_arguments)]
fn evaluate_identity(
    py: Python<'_>,
    identity: &str,
    max_level: usize,
    k: Option<usize>,
    l: Option<usize>,
    theta: Option<&Bound<'_, PyAny>>,
    z: Option<&Bound<'_, PyAny>>,
    t: Option<&Bound<'_, PyAny>>,
    case: Option<&Bound<'_, PyAny>>,
    box_: Option<&Bound<'_, PyAny>>,
    measure: Option<PyRef<'_, PyMeasure>>,
) -> PyResult<PyReport> {
    let theta = theta.map(scalar).transpose()?.unwrap_or_else(ExactScalar::one);
    let spec = match identity {
        "plancherel-young-box" => IdentitySpec::PlancherelYoungBox {
            k: need(k, "k", identity)?,
            l: need(l, "l", identity)?,
        },
        "theta-plancherel-hook" => IdentitySpec::ThetaPlancherelHook {
            k: need(k, "k", identity)?,
            theta,
        },
        "z-measure-hook" => IdentitySpec::ZMeasureHook {
            k: need(k, "k", identity)?,
            theta,
            z: complex(need(z, "z", identity)?)?,
        },
        "kingman-t" => IdentitySpec::KingmanT {
            k: need(k, "k", identity)?,
            l: need(l, "l", identity)?,
            t: scalar(need(t, "t", identity)?)?,
        },
        "special-case" => {
            let c = cell(need(case, "case", identity)?)?;
            let case = SpecialCase::ALL
                .into_iter()
                .find(|s| s.cell() == c)
                .ok_or_else(|| PyValueError::new_err(format!("no special case for box {c}")))?;
            IdentitySpec::SpecialCase { case, theta }
        }
        "fk-form" => IdentitySpec::FkForm { k: need(k, "k", identity)? },
        "gk-form" => IdentitySpec::GkForm { k: need(k, "k", identity)? },
        "box-probability" => IdentitySpec::BoxProbability {
            measure: need(measure, "measure", identity)?.0.spec().clone(),
            cell: cell(need(box_, "box_", identity)?)?,
        },
        other => return Err(PyValueError::new_err(format!("unknown identity {other:?}"))),
    };
    let report = py.detach(|| evaluate_core(&spec, max_level)).map_err(err)?;
    Ok(PyReport(report))
}

/// Quadrature of the integral form of the Kingman identity against `k!/t^(k+1)`.
#[pyfunction]
#[pyo3(signature = (k, l, t, tol = 1e-10))]
fn integral_check<'py>(py: Python<'py>, k: usize, l: usize, t: f64, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let chk = integral_check_core(k, l, t, tol).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("value", chk.value)?;
    out.set_item("target", chk.target)?;
    out.set_item("deviation", chk.deviation())?;
    out.set_item("error_estimate", chk.error_estimate)?;
    out.set_item("intervals", chk.intervals)?;
    Ok(out)
}

#[pymodule]
#[pyo3(name = "tabsum")]
fn tabsum_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyMeasure>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(partitions_of, m)?)?;
    m.add_function(wrap_pyfunction!(dim, m)?)?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_identity, m)?)?;
    m.add_function(wrap_pyfunction!(integral_check, m)?)?;
    Ok(())
}
