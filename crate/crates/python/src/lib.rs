//! Python bindings for `slipwall`.
//!
//! Wall kinds and solvers are passed by name (`"LaxFriedrichs"`, `"ec-lf"`,
//! `"hllc"`, ...). States are [`PyState`] objects (`ConservativeState` in
//! Python); normals are 3-sequences, normalized on entry. Library errors
//! surface as `ValueError`, a simulation blow-up as `RuntimeError`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use slipwall::dgsem::{self, SolverConfig};
use slipwall::euler::{self, conservative_from_primitive, PrimitiveState};
use slipwall::riemann::{self, ApproximateSolver, RiemannPair, WaveSpeedMethod};
use slipwall::sweep::{run_sweep, SweepSpec};
use slipwall::{wall, ConservativeState, Error, GasModel, NormalFlux, UnitNormal, WallFluxKind};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BlowUp { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn gas(gamma: f64) -> PyResult<GasModel> {
    GasModel::new(gamma).map_err(to_py)
}

fn kind(name: &str) -> PyResult<WallFluxKind> {
    name.parse().map_err(PyValueError::new_err)
}

fn normal(n: [f64; 3]) -> PyResult<UnitNormal> {
    UnitNormal::normalize(n).map_err(to_py)
}

/// Conservative state `(rho, rho v, rho E)`.
#[pyclass(
    name = "ConservativeState",
    module = "slipwall_py",
    frozen,
    from_py_object
)]
#[derive(Clone, Copy)]
pub struct PyState {
    inner: ConservativeState,
}

#[pymethods]
impl PyState {
    #[new]
    fn new(rho: f64, momentum: [f64; 3], energy: f64) -> Self {
        Self {
            inner: ConservativeState::new(rho, momentum, energy),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (rho, velocity, pressure, gamma = 1.4))]
    fn from_primitive(rho: f64, velocity: [f64; 3], pressure: f64, gamma: f64) -> PyResult<Self> {
        let u = conservative_from_primitive(
            &PrimitiveState::new(rho, velocity, pressure),
            &gas(gamma)?,
        )
        .map_err(to_py)?;
        Ok(Self { inner: u })
    }

    #[getter]
    fn rho(&self) -> f64 {
        self.inner.rho
    }

    #[getter]
    fn momentum(&self) -> [f64; 3] {
        self.inner.mom
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.inner.energy
    }

    fn velocity(&self) -> [f64; 3] {
        self.inner.velocity()
    }

    #[pyo3(signature = (gamma = 1.4))]
    fn pressure(&self, gamma: f64) -> PyResult<f64> {
        self.inner.pressure(&gas(gamma)?).map_err(to_py)
    }

    #[pyo3(signature = (gamma = 1.4))]
    fn sound_speed(&self, gamma: f64) -> PyResult<f64> {
        let g = gas(gamma)?;
        self.inner.validate(&g).map_err(to_py)?;
        Ok(self.inner.sound_speed_unchecked(&g))
    }

    /// `(s, w)`: entropy density and entropy variables.
    #[pyo3(signature = (gamma = 1.4))]
    fn entropy(&self, gamma: f64) -> PyResult<(f64, [f64; 5])> {
        let e = euler::entropy_quantities(&self.inner, &gas(gamma)?).map_err(to_py)?;
        Ok((e.s, e.w))
    }

    fn to_list(&self) -> [f64; 5] {
        self.inner.to_array()
    }

    fn __repr__(&self) -> String {
        let u = self.inner;
        format!(
            "ConservativeState(rho={}, momentum={:?}, energy={})",
            u.rho, u.mom, u.energy
        )
    }
}

/// Closed-form `P*/P` for a wall flux kind at normal Mach number `ma_n`.
#[pyfunction]
#[pyo3(signature = (kind_name, ma_n, gamma = 1.4))]
fn pstar_ratio(kind_name: &str, ma_n: f64, gamma: f64) -> PyResult<f64> {
    wall::pstar_ratio(kind(kind_name)?, ma_n, &gas(gamma)?).map_err(to_py)
}

/// `rho c Ma_n (P*/P - 1)`.
#[pyfunction]
fn delta_s(rho: f64, c: f64, ma_n: f64, ratio: f64) -> f64 {
    wall::delta_s(rho, c, ma_n, ratio)
}

#[pyfunction]
#[pyo3(signature = (gamma = 1.4))]
fn roe_threshold(gamma: f64) -> PyResult<f64> {
    Ok(wall::roe_threshold(&gas(gamma)?))
}

#[pyfunction]
#[pyo3(signature = (gamma = 1.4))]
fn vacuum_limit(gamma: f64) -> PyResult<f64> {
    Ok(wall::vacuum_limit(&gas(gamma)?))
}

#[pyfunction]
fn wall_kinds() -> Vec<&'static str> {
    WallFluxKind::ALL.iter().map(|k| k.name()).collect()
}

#[pyfunction]
#[pyo3(signature = (kind_name, state, n, gamma = 1.4))]
fn wall_flux(kind_name: &str, state: PyState, n: [f64; 3], gamma: f64) -> PyResult<[f64; 5]> {
    let f = wall::wall_flux(kind(kind_name)?, &state.inner, &normal(n)?, &gas(gamma)?)
        .map_err(to_py)?;
    Ok(f.0)
}

/// `W^T (F* - F.n) + s v_n` for an arbitrary boundary flux `flux`.
#[pyfunction]
#[pyo3(signature = (state, flux, n, gamma = 1.4))]
fn entropy_boundary_term(state: PyState, flux: [f64; 5], n: [f64; 3], gamma: f64) -> PyResult<f64> {
    wall::entropy_boundary_term(&state.inner, &NormalFlux(flux), &normal(n)?, &gas(gamma)?)
        .map_err(to_py)
}

#[pyfunction]
fn mirror_state(state: PyState, n: [f64; 3]) -> PyResult<(PyState, PyState)> {
    let (l, r) = wall::mirror_state(&state.inner, &normal(n)?);
    Ok((PyState { inner: l }, PyState { inner: r }))
}

/// `(p*, u*)` of the exact Riemann problem between `left` and `right` along `n`.
#[pyfunction]
#[pyo3(signature = (left, right, n, gamma = 1.4))]
fn exact_riemann_star(
    left: PyState,
    right: PyState,
    n: [f64; 3],
    gamma: f64,
) -> PyResult<(f64, f64)> {
    let pair = RiemannPair::new(left.inner, right.inner, normal(n)?);
    let s = riemann::exact_riemann_star(&pair, &gas(gamma)?).map_err(to_py)?;
    Ok((s.p_star, s.u_star))
}

/// Approximate Riemann flux; `solver` is one of `lf`, `hll`, `hllc`, `roe`
/// (`hll`/`hllc` use Davis wave speeds, `hll-wall`/`hllc-wall` the wall-exact ones).
#[pyfunction]
#[pyo3(signature = (solver, left, right, n, gamma = 1.4))]
fn approximate_flux(
    solver: &str,
    left: PyState,
    right: PyState,
    n: [f64; 3],
    gamma: f64,
) -> PyResult<[f64; 5]> {
    let s = match solver.to_ascii_lowercase().as_str() {
        "lf" | "laxfriedrichs" | "rusanov" => ApproximateSolver::LaxFriedrichs,
        "hll" => ApproximateSolver::Hll(WaveSpeedMethod::Davis),
        "hllc" => ApproximateSolver::Hllc(WaveSpeedMethod::Davis),
        "hll-wall" => ApproximateSolver::Hll(WaveSpeedMethod::WallExact),
        "hllc-wall" => ApproximateSolver::Hllc(WaveSpeedMethod::WallExact),
        "roe" => ApproximateSolver::Roe,
        other => return Err(PyValueError::new_err(format!("unknown solver '{other}'"))),
    };
    let pair = RiemannPair::new(left.inner, right.inner, normal(n)?);
    Ok(riemann::approximate_flux(s, &pair, &gas(gamma)?)
        .map_err(to_py)?
        .0)
}

#[pyfunction]
fn lgl_nodes_weights(n: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    if n < 1 {
        return Err(PyValueError::new_err("polynomial degree must be >= 1"));
    }
    Ok(dgsem::lgl_nodes_weights(n))
}

/// Row-major derivative matrix on the degree-`n` LGL nodes.
#[pyfunction]
fn derivative_matrix(n: usize) -> PyResult<Vec<Vec<f64>>> {
    if n < 1 {
        return Err(PyValueError::new_err("polynomial degree must be >= 1"));
    }
    let d = dgsem::derivative_matrix(n);
    Ok((0..d.nrows())
        .map(|i| d.row(i).iter().copied().collect())
        .collect())
}

/// Rows `(ma_n, kind, pstar_ratio, delta_s)`; `kinds=None` means all kinds.
#[pyfunction]
#[pyo3(signature = (gamma = 1.4, ma_min = -5.0 + 1e-3, ma_max = 5.0, samples = 2001, kinds = None, rho_c = 1.0))]
fn sweep(
    gamma: f64,
    ma_min: f64,
    ma_max: f64,
    samples: usize,
    kinds: Option<Vec<String>>,
    rho_c: f64,
) -> PyResult<Vec<(f64, &'static str, f64, f64)>> {
    let kinds = match kinds {
        Some(names) => names
            .iter()
            .map(|k| kind(k))
            .collect::<PyResult<Vec<_>>>()?,
        None => WallFluxKind::ALL.to_vec(),
    };
    let spec = SweepSpec {
        gas: gas(gamma)?,
        ma_min,
        ma_max,
        samples,
        kinds,
        rho_c,
        ..SweepSpec::default()
    };
    let rows = run_sweep(&spec).map_err(to_py)?;
    Ok(rows
        .iter()
        .map(|r| (r.ma_n, r.kind.name(), r.pstar_ratio, r.delta_s))
        .collect())
}

/// Run the DGSEM harness from config text (the `key = value` format).
///
/// Returns a dict with `rows` (list of `(t, S_total, dSdt, boundary_left,
/// boundary_right, defect)`), `steps`, `dt`, `time` and `blow_up` (message or
/// `None`). With `raise_on_blow_up=True` a blow-up raises `RuntimeError` instead.
#[pyfunction]
#[pyo3(signature = (config_text, raise_on_blow_up = false))]
fn simulate<'py>(
    py: Python<'py>,
    config_text: &str,
    raise_on_blow_up: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = SolverConfig::parse(config_text).map_err(to_py)?;
    let run = dgsem::simulate(&cfg, None).map_err(to_py)?;
    if raise_on_blow_up {
        if let Some(e) = run.blow_up {
            return Err(to_py(e));
        }
    }
    let rows: Vec<(f64, f64, f64, f64, f64, f64)> = run
        .budget
        .rows
        .iter()
        .map(|r| {
            (
                r.t,
                r.s_total,
                r.dsdt,
                r.boundary_left,
                r.boundary_right,
                r.defect,
            )
        })
        .collect();
    let d = PyDict::new(py);
    d.set_item("rows", rows)?;
    d.set_item("steps", run.steps_completed)?;
    d.set_item("steps_planned", run.steps_planned)?;
    d.set_item("dt", run.dt)?;
    d.set_item("time", run.field.time)?;
    d.set_item("blow_up", run.blow_up.map(|e| e.to_string()))?;
    Ok(d)
}

#[pymodule]
fn slipwall_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_function(wrap_pyfunction!(pstar_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(delta_s, m)?)?;
    m.add_function(wrap_pyfunction!(roe_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(vacuum_limit, m)?)?;
    m.add_function(wrap_pyfunction!(wall_kinds, m)?)?;
    m.add_function(wrap_pyfunction!(wall_flux, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_boundary_term, m)?)?;
    m.add_function(wrap_pyfunction!(mirror_state, m)?)?;
    m.add_function(wrap_pyfunction!(exact_riemann_star, m)?)?;
    m.add_function(wrap_pyfunction!(approximate_flux, m)?)?;
    m.add_function(wrap_pyfunction!(lgl_nodes_weights, m)?)?;
    m.add_function(wrap_pyfunction!(derivative_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
