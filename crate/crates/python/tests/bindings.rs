use pyo3::prelude::*;
use pyo3::types::PyDict;
use stieltjes_core::complex::ComplexValue;

fn with_module<F: FnOnce(&Bound<'_, PyModule>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(stieltjes_lab::stieltjes_lab)(py);
        f(m.bind(py).cast::<PyModule>().unwrap());
    });
}

#[test]
fn gst_from_python() {
    with_module(|m| {
        let (value, _, method): (ComplexValue, f64, String) =
            m.getattr("gst").unwrap().call1(("wigner", 1.0, 2.0)).unwrap().extract().unwrap();
        assert!((value.re - (4.0 - 12f64.sqrt())).abs() < 1e-13);
        assert_eq!(method, "closed_form");
        let err = m.getattr("gst").unwrap().call1(("nope", 1.0, 2.0)).unwrap_err();
        assert!(err.to_string().contains("ValueError"));
    });
}

#[test]
fn expansion_and_roots() {
    with_module(|m| {
        let coeffs: Vec<ComplexValue> =
            m.getattr("expansion_coefficients").unwrap().call1((1.0, 0.5, 0.5, 3.0)).unwrap().extract().unwrap();
        assert_eq!(coeffs.len(), 41);
        let y = ComplexValue::new(0.0, 2.0);
        let z: ComplexValue = m.getattr("trinomial_root").unwrap().call1((2u32, y)).unwrap().extract().unwrap();
        assert!((z.powi(3) - 3.0 * y * z + 1.0).norm() < 1e-12);
    });
}

#[test]
fn verify_rows_are_dicts() {
    with_module(|m| {
        let rows = m.getattr("verify").unwrap().call1(("prop2",)).unwrap();
        let rows: Vec<Bound<'_, PyDict>> = rows.extract().unwrap();
        assert!(!rows.is_empty());
        for r in rows {
            let pass: bool = r.get_item("pass").unwrap().unwrap().extract().unwrap();
            assert!(pass);
        }
    });
}
