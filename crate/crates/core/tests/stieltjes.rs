use std::f64::consts::PI;

use proptest::prelude::*;
use stieltjes_core::complex::{principal_powf, ComplexValue};
use stieltjes_core::measures::*;
use stieltjes_core::stieltjes::*;
use stieltjes_core::Error;

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

/// `∫₀^π w(θ)(z − cos θ)^{−λ} dθ` by the trapezoid rule; the integrand is
/// smooth and periodic, so this converges geometrically.
fn periodic_trapezoid(lambda: f64, z: ComplexValue, w: impl Fn(f64) -> f64) -> ComplexValue {
    let n = 2000;
    let h = PI / n as f64;
    (0..n)
        .map(|k| {
            let th = (k as f64 + 0.5) * h;
            principal_powf(z - th.cos(), -lambda) * w(th)
        })
        .sum::<ComplexValue>()
        * h
}

/// Semicircle transform, `x = cos θ`.
fn wigner_oracle(lambda: f64, z: ComplexValue) -> ComplexValue {
    periodic_trapezoid(lambda, z, |th| 2.0 / PI * th.sin().powi(2))
}

/// Arcsine transform, `x = cos θ`.
fn arcsine_oracle(lambda: f64, z: ComplexValue) -> ComplexValue {
    periodic_trapezoid(lambda, z, |_| 1.0 / PI)
}

/// Uniform law on `[−1, 1]`, by its antiderivative.
fn uniform_oracle(lambda: f64, z: ComplexValue) -> ComplexValue {
    if lambda == 1.0 {
        ((z + 1.0).ln() - (z - 1.0).ln()) / 2.0
    } else {
        (principal_powf(z + 1.0, 1.0 - lambda) - principal_powf(z - 1.0, 1.0 - lambda)) / (2.0 * (1.0 - lambda))
    }
}

fn grid() -> Vec<ComplexValue> {
    EvalGrid::standard().points().to_vec()
}

#[test]
fn quadrature_examples() {
    let v = gst_quadrature(1.0, &bernoulli_sym(), c(2.0, 0.0)).unwrap();
    assert!((v.value - 2.0 / 3.0).norm() < 1e-15);
    assert_eq!(v.method, Method::Quadrature);
    let u = beta_measure(BetaParams::new(0.0, 0.0).unwrap()).unwrap();
    let v = gst_quadrature(1.0, &u, c(2.0, 0.0)).unwrap();
    assert!((v.value.re - 0.5 * 3f64.ln()).abs() < 1e-13);
    for lambda in [0.5, 1.0, 2.7] {
        let z = c(0.0, 1e6);
        let v = gst_quadrature(lambda, &wigner(), z).unwrap();
        assert!((principal_powf(z, lambda) * v.value - 1.0).norm() < 1e-9);
    }
}

#[test]
fn quadrature_against_independent_oracles() {
    let u = beta_measure(BetaParams::new(0.0, 0.0).unwrap()).unwrap();
    for lambda in [0.5, 1.0, 1.5, 2.0, 2.5, 3.5] {
        for z in grid() {
            let w = gst_quadrature(lambda, &wigner(), z).unwrap().value;
            assert!((w - wigner_oracle(lambda, z)).norm() < 1e-10, "W λ={lambda} z={z}");
            let a = gst_quadrature(lambda, &arcsine(), z).unwrap().value;
            assert!((a - arcsine_oracle(lambda, z)).norm() < 1e-10, "AS λ={lambda} z={z}");
            let v = gst_quadrature(lambda, &u, z).unwrap().value;
            assert!((v - uniform_oracle(lambda, z)).norm() < 1e-11, "U λ={lambda} z={z}");
        }
    }
}

#[test]
fn closed_beta_forms_against_independent_oracles() {
    let w = BetaParams::new(0.5, 0.5).unwrap();
    let a = BetaParams::new(-0.5, -0.5).unwrap();
    let u = BetaParams::new(0.0, 0.0).unwrap();
    for lambda in [0.5, 1.0, 2.0, 3.5] {
        for z in grid() {
            for (p, oracle) in [
                (w, wigner_oracle(lambda, z)),
                (a, arcsine_oracle(lambda, z)),
                (u, uniform_oracle(lambda, z)),
            ] {
                let g1 = gst_beta_closed(lambda, p, z).unwrap().value;
                let g2 = gst_beta_closed_alt(lambda, p, z).unwrap().value;
                assert!((g1 - oracle).norm() < 1e-10, "GST1 {p:?} λ={lambda} z={z}");
                assert!((g2 - oracle).norm() < 1e-10, "GST2 {p:?} λ={lambda} z={z}");
            }
        }
    }
}

#[test]
fn closed_beta_examples() {
    let z = c(2.0, 0.0);
    let g = gst_beta_closed(1.0, BetaParams::new(0.5, 0.5).unwrap(), z).unwrap();
    assert_eq!(g.method, Method::ClosedForm);
    assert!((g.value.re - 2.0 / (2.0 + 3f64.sqrt())).abs() < 1e-14);
    let g2 = gst_beta_closed(2.0, BetaParams::new(1.5, 1.5).unwrap(), z).unwrap();
    assert!((g2.value.re - (2.0 / (2.0 + 3f64.sqrt())).powi(2)).abs() < 1e-12, "{}", g2.value);
    assert!((g2.value.re - 0.287_187_078_897_964).abs() < 1e-12);

    let p = BetaParams::new(0.3, 2.1).unwrap();
    let z = c(2.0, 1.0);
    let a = gst_beta_closed(1.7, p, z).unwrap().value;
    let b = gst_beta_closed_alt(1.7, p, z).unwrap().value;
    assert!((a - b).norm() < 1e-10);

    for lambda in [0.5, 2.0] {
        let z = c(0.0, 1e5);
        let v = gst_beta_closed_alt(lambda, p, z).unwrap().value;
        assert!((principal_powf(z, lambda) * v - 1.0).norm() < 1e-4);
    }
    assert!(matches!(gst_beta_closed(1.0, p, c(0.5, 0.0)), Err(Error::Cut { .. })));
    assert!(matches!(gst_beta_closed(1.0, p, c(-3.0, 0.0)), Err(Error::Cut { .. })));
}

#[test]
fn elementary_transforms() {
    assert!((stieltjes_wigner(c(2.0, 0.0)).unwrap().re - 0.535_898_384_862_245_4).abs() < 1e-15);
    assert!((stieltjes_bernoulli(c(2.0, 0.0)).unwrap().re - 2.0 / 3.0).abs() < 1e-15);
    assert!(wigner_functional_residual(c(3.0, 2.0)).unwrap().residual <= 1e-13);
    for z in grid() {
        let fp = gst_quadrature(1.0, &free_poisson_quarter(), z).unwrap().value;
        assert!((fp - stieltjes_free_poisson(z).unwrap()).norm() < 1e-10);
        let asn = stieltjes_arcsine(z).unwrap();
        assert!((asn - arcsine_oracle(1.0, z)).norm() < 1e-10);
        assert!((stieltjes_wigner(z).unwrap() - wigner_oracle(1.0, z)).norm() < 1e-10);
    }
    // the value decays at infinity in every direction
    for z in [c(-1e8, 1.0), c(1e8, -1.0), c(0.0, -1e8)] {
        assert!(stieltjes_wigner(z).unwrap().norm() < 1e-7);
        assert!(stieltjes_free_poisson(z).unwrap().norm() < 1e-7);
    }
    assert!(stieltjes_wigner(c(0.5, 0.0)).is_err());
    assert!(stieltjes_free_poisson(c(0.5, 0.0)).is_err());
}

#[test]
fn prop1_examples() {
    for z in grid() {
        let k0 = prop1_closed(2.5, 0, z).unwrap().value;
        assert!((k0 - principal_powf(stieltjes_wigner(z).unwrap(), 2.5)).norm() < 1e-13);
        let k1 = prop1_closed(2.5, 1, z).unwrap().value;
        let examp2 = stieltjes_arcsine(z).unwrap() * principal_powf(stieltjes_wigner(z).unwrap(), 1.5);
        assert!((k1 - examp2).norm() < 1e-12);
    }
    let z = c(2.5, 0.0);
    let k2 = prop1_closed(3.0, 2, z).unwrap().value;
    let q = gst_quadrature(3.0, &beta_measure(BetaParams::new(0.5, 0.5).unwrap()).unwrap(), z).unwrap();
    assert!((k2 - q.value).norm() < 1e-9);
    assert!((k2 - wigner_oracle(3.0, z)).norm() < 1e-9);
    assert!(prop1_closed(1.0, 2, z).is_err());
}

#[test]
fn prop2_examples() {
    let z = c(2.0, 0.0);
    let closed = prop2_closed(2.0, 1, z, false).unwrap().value;
    let m = beta_measure(BetaParams::new(1.5, 0.5).unwrap()).unwrap();
    assert!((closed - gst_quadrature(2.0, &m, z).unwrap().value).norm() < 1e-9);
    assert_eq!(prop2_params(2.0, 1, false), BetaParams { gamma: 1.5, beta: 0.5 });
    assert_eq!(prop2_params(2.0, 1, true), BetaParams { gamma: 0.5, beta: 1.5 });
    assert!(prop2_square_residual(c(2.0, 1.0)).unwrap().residual <= 1e-13);
    assert!(prop2_closed(1.0, 2, z, false).is_err());
    assert!(prop2_closed(2.0, 0, z, false).is_err());
}

#[test]
fn bernoulli_power_examples() {
    assert!(bernoulli_power_identity(1.0, c(2.0, 0.0)).unwrap().residual < 1e-15);
    assert!(bernoulli_power_identity(2.0, c(2.0, 1.0)).unwrap().residual <= 1e-8);
    assert!(bernoulli_power_identity(3.5, c(1.5, 0.0)).unwrap().residual <= 1e-8);
    assert!(bernoulli_power_identity(0.9, c(2.0, 0.0)).is_err());
}

#[test]
fn shrinkage_examples() {
    // p = 1/2, λ = 2 is the uniform law with transform 1/(z²−1)
    for z in grid() {
        let r = shrinkage_identity(2.0, 0.5, z).unwrap();
        assert!((r.rhs - 1.0 / (z * z - 1.0)).norm() < 1e-13);
        assert!((r.lhs - uniform_oracle(2.0, z)).norm() < 1e-12);
        let inner = shrinkage_inner_check(0.3, z).unwrap();
        assert!(inner.residual <= 1e-9);
    }
    assert!(shrinkage_identity(3.0, 0.5, c(2.0, 0.0)).unwrap().residual <= 1e-9);
    assert!(shrinkage_identity(4.0, 0.3, c(1.2, 0.7)).unwrap().residual <= 1e-9);
    assert!(shrinkage_identity(1.0, 1.2, c(2.0, 0.0)).is_err());
}

#[test]
fn convolution_identities() {
    let u = beta_measure(BetaParams::new(0.0, 0.0).unwrap()).unwrap();
    assert!(kappa_reduction_identity(2.0, &u, c(3.0, 0.0)).unwrap().residual <= 1e-7);
    assert!(kappa_reduction_identity(1.0, &wigner(), c(2.0, 0.0)).unwrap().residual <= 1e-7);
    let r = free_poisson_identity(1.0, c(2.0, 0.0)).unwrap();
    assert!((r.double.rhs.re - 2.0 / (2.0 + 2f64.sqrt())).abs() < 1e-14);
    assert!(r.double.residual <= 1e-7 && r.closed_density.residual <= 1e-8);
    let r = free_poisson_identity(2.0, c(1.5, 1.0)).unwrap();
    assert!(r.double.residual <= 1e-7 && r.closed_density.residual <= 1e-8);
    assert!(free_poisson_forms_residual(c(2.0, 3.0)).unwrap().residual <= 1e-13);
    // κ_λ against δ₁ is κ_λ itself: z^{−λ/2}(z−1)^{−λ/2}
    let z = c(0.3, 0.8);
    let k = gst_quadrature(1.3, &kappa(1.3).unwrap(), z).unwrap().value;
    assert!((k - principal_powf(z, -0.65) * principal_powf(z - 1.0, -0.65)).norm() < 1e-10);
}

#[test]
fn power_relation_examples() {
    let grid = EvalGrid::standard();
    let lambda = 2.5;
    let mu = beta_measure(BetaParams::new(2.0, 2.0).unwrap()).unwrap();
    let r = power_relation_check(lambda, &mu, &wigner(), &grid, 1e-8).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.grid_size, 75);
    let r = power_relation_check(2.0, &bernoulli_power_measure(2.0).unwrap(), &bernoulli_sym(), &grid, 1e-8).unwrap();
    assert!(r.pass);
    let r = power_relation_check(1.0, &arcsine(), &arcsine(), &grid, 0.0).unwrap();
    assert!(r.max_residual < 1e-15);
}

#[test]
fn support_and_cut_errors() {
    let e = gst_quadrature(1.0, &wigner(), c(0.5, 1e-8)).unwrap_err();
    assert!(matches!(e, Error::Support { .. }));
    assert!(gst_quadrature(0.0, &wigner(), c(2.0, 0.0)).is_err());
    assert!(gst_quadrature(1.0, &bernoulli_sym(), c(1.0, 0.0)).is_err());
    assert!(gst_quadrature(1.0, &bernoulli_sym(), c(0.0, 0.0)).is_ok());
}

#[test]
fn closed_dispatch_by_kind() {
    let z = c(0.4, 0.9);
    for (lambda, m) in [
        (1.0, wigner()),
        (2.0, wigner()),
        (1.0, arcsine()),
        (1.7, bernoulli_sym()),
        (2.0, bernoulli_power_measure(2.0).unwrap()),
        (1.0, free_poisson_quarter()),
        (1.5, kappa_convolution_density(1.5).unwrap()),
        (2.5, kappa(2.5).unwrap()),
        (1.2, beta_measure(BetaParams::new(0.3, 2.1).unwrap()).unwrap()),
    ] {
        let closed = gst_closed(lambda, &m, z).unwrap().unwrap().value;
        let q = gst_quadrature(lambda, &m, z).unwrap().value;
        assert!((closed - q).norm() < 1e-9, "{} λ={lambda}", m.name());
    }
    assert!(gst_closed(1.0, &kappa(2.0).unwrap(), z).is_none());
}

#[test]
fn records_serialize_with_flat_fields() {
    let z = c(2.0, 0.5);
    let r = gst_quadrature(1.0, &wigner(), z).unwrap();
    let json = serde_json::to_value(r.record(z)).unwrap();
    for key in ["z_re", "z_im", "value_re", "value_im", "err", "method"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["method"], "quadrature");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_symmetry(lambda in 0.2f64..4.0, re in -3.0f64..3.0, im in 0.2f64..3.0) {
        let z = c(re, im);
        let m = beta_measure(BetaParams::new(0.3, 2.1).unwrap()).unwrap();
        let up = gst_quadrature(lambda, &m, z).unwrap().value;
        let down = gst_quadrature(lambda, &m, z.conj()).unwrap().value;
        prop_assert!((up.conj() - down).norm() < 1e-13);
        let closed = gst_beta_closed(lambda, BetaParams::new(0.3, 2.1).unwrap(), z.conj()).unwrap().value;
        prop_assert!((closed - down).norm() < 1e-9 * (1.0 + down.norm()));
    }

    #[test]
    fn gst_forms_agree(lambda in 0.2f64..4.0, g in -0.9f64..3.0, b in -0.9f64..3.0,
                       re in -3.0f64..3.0, im in 0.3f64..3.0) {
        let p = BetaParams::new(g, b).unwrap();
        let z = c(re, im);
        let a = gst_beta_closed(lambda, p, z).unwrap().value;
        let d = gst_beta_closed_alt(lambda, p, z).unwrap().value;
        prop_assert!((a - d).norm() <= 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn stieltjes_maps_upper_to_lower(re in -5.0f64..5.0, im in 0.01f64..5.0) {
        let z = c(re, im);
        prop_assert!(stieltjes_wigner(z).unwrap().im < 0.0);
        prop_assert!(stieltjes_free_poisson(z).unwrap().im < 0.0);
        prop_assert!(stieltjes_bernoulli(z).unwrap().im < 0.0);
        prop_assert!(stieltjes_arcsine(z).unwrap().im < 0.0);
    }
}
