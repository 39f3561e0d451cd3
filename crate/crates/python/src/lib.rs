//! Python bindings: transforms, special functions, expansions, roots and the
//! verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use stieltjes_core::complex::ComplexValue;
use stieltjes_core::humbert::root_select;
use stieltjes_core::jacobi::{jacobi_poly, kernel_coefficients, ExpansionTruncation, JacobiParams};
use stieltjes_core::measures::{parse_measure, BetaParams};
use stieltjes_core::special::{gauss_2f1 as core_2f1, SeriesPolicy};
use stieltjes_core::stieltjes::{gst_closed, gst_quadrature};
use stieltjes_core::verify::{run_suite, Suite, SuiteConfig};

fn value_error(e: stieltjes_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `G_{λ,μ}(z)`. `method` is "auto" (closed form when known), "closed_form"
/// or "quadrature". Returns `(value, error_estimate, method_used)`.
#[pyfunction]
#[pyo3(signature = (measure, lam, z, method = "auto"))]
fn gst(measure: &str, lam: f64, z: ComplexValue, method: &str) -> PyResult<(ComplexValue, f64, &'static str)> {
    let m = parse_measure(measure).map_err(value_error)?;
    let r = match method {
        "quadrature" => gst_quadrature(lam, &m, z),
        "auto" => gst_closed(lam, &m, z).unwrap_or_else(|| gst_quadrature(lam, &m, z)),
        "closed_form" => gst_closed(lam, &m, z)
            .ok_or_else(|| PyValueError::new_err(format!("no closed form for {measure}")))?,
        _ => return Err(PyValueError::new_err(format!("unknown method `{method}`"))),
    }
    .map_err(value_error)?;
    Ok((r.value, r.err_estimate, r.method.as_str()))
}

#[pyfunction]
fn gauss_2f1(a: ComplexValue, b: ComplexValue, c: ComplexValue, z: ComplexValue) -> PyResult<ComplexValue> {
    core_2f1(a, b, c, z, &SeriesPolicy::default()).map_err(value_error)
}

/// `P_n^{(γ,β)}(x)`.
#[pyfunction]
fn jacobi(gamma: f64, beta: f64, n: u32, x: f64) -> PyResult<f64> {
    jacobi_poly(JacobiParams::new(gamma, beta, n).map_err(value_error)?, x).map_err(value_error)
}

/// Jacobi-basis coefficients of `(z−x)^{−λ}` for `n = 0..=n_max`.
#[pyfunction]
#[pyo3(signature = (lam, gamma, beta, z, n_max = 40))]
fn expansion_coefficients(lam: f64, gamma: f64, beta: f64, z: ComplexValue, n_max: u32) -> PyResult<Vec<ComplexValue>> {
    let p = BetaParams::new(gamma, beta).map_err(value_error)?;
    kernel_coefficients(lam, p, z, ExpansionTruncation { n_max }).map_err(value_error)
}

/// Root of `z^{d+1} − (d+1)yz + 1` that behaves like `1/((d+1)y)`.
#[pyfunction]
fn trinomial_root(d: u32, y: ComplexValue) -> PyResult<ComplexValue> {
    Ok(root_select(d, y).map_err(value_error)?.z)
}

/// Runs a verification suite and returns one dict per report row.
#[pyfunction]
#[pyo3(signature = (suite = "all", tolerance = None))]
fn verify<'py>(py: Python<'py>, suite: &str, tolerance: Option<f64>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let suite: Suite = suite.parse().map_err(value_error)?;
    let config = SuiteConfig {
        tolerance,
        ..SuiteConfig::default()
    };
    let rows = py.detach(|| run_suite(suite, &config)).map_err(value_error)?;
    rows.into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("identity", r.identity)?;
            d.set_item("params", r.params)?;
            d.set_item("grid_size", r.grid_size)?;
            d.set_item("max_residual", r.max_residual)?;
            d.set_item("mean_residual", r.mean_residual)?;
            d.set_item("tolerance", r.tolerance)?;
            d.set_item("pass", r.pass)?;
            d.set_item("wall_time_ms", r.wall_time_ms)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
pub fn stieltjes_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gst, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_2f1, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(expansion_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(trinomial_root, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
