use std::f64::consts::PI;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use stieltjes_core::complex::real;
use stieltjes_core::measures::*;
use stieltjes_core::quadrature::{tanh_sinh, QuadraturePolicy};

fn pol() -> QuadraturePolicy {
    QuadraturePolicy::default()
}

fn all_builtin() -> Vec<MeasureSpec> {
    let mut v = vec![wigner(), arcsine(), bernoulli_sym(), free_poisson_quarter()];
    for (g, b) in [(0.0, 0.0), (1.5, 0.5), (0.3, 2.1), (-0.7, -0.3), (-0.9, 3.0)] {
        v.push(beta_measure(BetaParams::new(g, b).unwrap()).unwrap());
    }
    for l in [0.3, 1.0, 2.0, 4.0, 7.5] {
        v.push(kappa(l).unwrap());
        v.push(kappa_convolution_density(l).unwrap());
    }
    for l in [1.0, 1.5, 2.0, 3.0, 3.5, 6.0] {
        v.push(bernoulli_power_measure(l).unwrap());
    }
    v
}

#[test]
fn every_constructor_has_unit_mass() {
    for m in all_builtin() {
        let mass = m.total_mass(&pol()).unwrap();
        assert!((mass - 1.0).abs() <= 1e-9, "{}: mass {mass}", m.name());
    }
}

#[test]
fn densities_are_nonnegative() {
    for m in all_builtin() {
        let (lo, hi) = m.support();
        for i in 1..200 {
            let x = lo + (hi - lo) * i as f64 / 200.0;
            assert!(m.density(x) >= 0.0, "{} at {x}", m.name());
        }
    }
}

#[test]
fn classical_moments() {
    // semicircle: m_{2k} = Catalan(k)/4^k; arcsine: C(2k,k)/4^k
    let w = wigner();
    assert!((w.moment(2, &pol()).unwrap() - 0.25).abs() < 1e-12);
    assert!((w.moment(4, &pol()).unwrap() - 0.125).abs() < 1e-12);
    assert!(w.integrate(real, &pol()).unwrap().value.norm() < 1e-14);
    let a = arcsine();
    assert!((a.moment(2, &pol()).unwrap() - 0.5).abs() < 1e-12);
    assert!((a.moment(6, &pol()).unwrap() - 20.0 / 64.0).abs() < 1e-12);
    let u = beta_measure(BetaParams::new(0.0, 0.0).unwrap()).unwrap();
    assert!((u.moment(2, &pol()).unwrap() - 1.0 / 3.0).abs() < 1e-13);
    assert!((moment(&bernoulli_sym(), 2).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn free_poisson_mean() {
    let m = free_poisson_quarter();
    assert!((m.moment(1, &pol()).unwrap() - 0.25).abs() < 1e-10);
    assert_eq!(m.density(1.0), 0.0);
}

#[test]
fn kappa_convolution_mean_is_product_of_means() {
    for l in [0.5, 1.0, 2.5] {
        let m = kappa_convolution_density(l).unwrap();
        assert!((m.moment(1, &pol()).unwrap() - 0.25).abs() < 1e-10, "λ={l}");
    }
}

/// `(2k)!(λ)_k / (k!(λ)_{2k})`.
fn moment_formula(lambda: f64, k: u32) -> f64 {
    let poch = |a: f64, n: u32| (0..n).map(|j| a + j as f64).product::<f64>();
    let ratio: f64 = ((k + 1)..=(2 * k)).map(|j| j as f64).product();
    ratio * poch(lambda, k) / poch(lambda, 2 * k)
}

#[test]
fn bernoulli_power_examples() {
    let m = bernoulli_power_measure(2.0).unwrap();
    assert!((m.moment(2, &pol()).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert!((m.moment(4, &pol()).unwrap() - 0.6).abs() < 1e-12);
    let m1 = bernoulli_power_measure(1.0).unwrap();
    assert!(m1.pieces().is_empty());
    assert!(bernoulli_power_measure(0.9).is_err());
}

#[test]
fn bernoulli_power_moments_match_formula() {
    for lambda in [1.0, 1.5, 2.0, 3.0] {
        let m = bernoulli_power_measure(lambda).unwrap();
        for k in 1..=10 {
            let want = moment_formula(lambda, k);
            let got = m.moment(2 * k, &pol()).unwrap();
            assert!(((got - want) / want).abs() <= 1e-7, "λ={lambda} k={k}: {got} vs {want}");
            assert!(m.moment(2 * k - 1, &pol()).unwrap().abs() <= 1e-10);
        }
    }
}

fn rational_poch(a: &BigRational, n: u32) -> BigRational {
    let mut out = BigRational::from_integer(BigInt::from(1));
    for j in 0..n {
        out *= a + BigRational::from_integer(BigInt::from(j));
    }
    out
}

#[test]
fn moment_duplication_restatement_is_exact() {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    for lambda in 1..=6i64 {
        let l = BigRational::from_integer(BigInt::from(lambda));
        for k in 0..=10u32 {
            let fact = |n: u32| rational_poch(&BigRational::from_integer(BigInt::from(1)), n);
            let lhs = fact(2 * k) * rational_poch(&l, k) / (fact(k) * rational_poch(&l, 2 * k));
            let rhs = rational_poch(&l, k) * rational_poch(&half, k)
                / (rational_poch(&(&l * &half), k) * rational_poch(&((&l + BigRational::from_integer(BigInt::from(1))) * &half), k));
            assert_eq!(lhs, rhs, "λ={lambda} k={k}");
        }
    }
}

#[test]
fn symmetric_measures_have_zero_odd_moments() {
    for m in [wigner(), arcsine(), beta_measure(BetaParams::new(1.7, 1.7).unwrap()).unwrap()] {
        for k in [1, 3, 5, 7] {
            assert!(m.moment(k, &pol()).unwrap().abs() <= 1e-10);
        }
    }
}

#[test]
fn convolution_functional_examples() {
    let k2 = kappa(2.0).unwrap();
    let k3 = kappa(3.0).unwrap();
    let one = mult_convolve(&k2, &k3).integrate(|_| real(1.0)).unwrap();
    assert!((one.value.re - 1.0).abs() < 1e-12);
    let mean = mult_convolve(&k2, &k2).integrate(real).unwrap();
    assert!((mean.value.re - 0.25).abs() < 1e-12);
    let second = mult_convolve(&k2, &k3).integrate(|x| real(x * x)).unwrap();
    let want = k2.moment(2, &pol()).unwrap() * k3.moment(2, &pol()).unwrap();
    assert!((second.value.re - want).abs() < 1e-12);
    // m₂(κ₃) = 1/4 + 1/16
    assert!((want - 5.0 / 48.0).abs() < 1e-12);
}

#[test]
fn convolution_density_cdf_at_lambda_one() {
    // P(UV ≤ t) for U ~ κ₁, V uniform: (2/π)(arcsin √t + √(t(1−t)))
    let m = kappa_convolution_density(1.0).unwrap();
    let piece = m.pieces()[0].clone();
    for t in [0.05, 0.2, 0.5, 0.8, 0.99] {
        let want = 2.0 / PI * (f64::asin(f64::sqrt(t)) + f64::sqrt(t * (1.0 - t)));
        let got = tanh_sinh(0.0, t, |x, d_lo, _| real(piece.eval_with(x, d_lo, 1.0 - x)), &pol())
            .unwrap()
            .value
            .re;
        assert!((got - want).abs() < 1e-9, "t={t}: {got} vs {want}");
    }
}

#[test]
fn convolution_density_matches_double_quadrature() {
    for lambda in [0.7, 1.0, 2.0] {
        let conv = mult_convolve(&kappa(lambda).unwrap(), &kappa(lambda + 1.0).unwrap());
        let dens = kappa_convolution_density(lambda).unwrap();
        for s in [-2.0, 0.5, 3.0] {
            let f = |x: f64| real((s * x).exp());
            let a = conv.integrate(f).unwrap().value;
            let b = dens.integrate(f, &pol()).unwrap().value;
            assert!((a - b).norm() < 1e-7, "λ={lambda} s={s}: {a} vs {b}");
        }
    }
}

#[test]
fn custom_measures() {
    let piece = DensityPiece::new(-1.0, 1.0, (0.0, 0.0), Arc::new(|x, _, _| 0.75 * (1.0 - x * x))).unwrap();
    let m = MeasureSpec::custom("epanechnikov", vec![], vec![piece]).unwrap();
    assert!((m.moment(2, &pol()).unwrap() - 0.2).abs() < 1e-13);
    let bad = Atom { location: 0.0, weight: 1.5 };
    assert!(MeasureSpec::custom("bad", vec![bad], vec![]).is_err());
}

#[test]
fn identifiers_parse() {
    for (s, name) in [
        ("beta:gamma=0.5,beta=1.5", "beta:gamma=0.5,beta=1.5"),
        ("wigner", "wigner"),
        ("arcsine", "arcsine"),
        ("bernoulli", "bernoulli"),
        ("free-poisson", "free-poisson"),
        ("kappa:lambda=2", "kappa:lambda=2"),
        ("bernoulli-power:lambda=2.5", "bernoulli-power:lambda=2.5"),
        ("kappa-conv:lambda=1", "kappa-conv:lambda=1"),
    ] {
        assert_eq!(parse_measure(s).unwrap().name(), name);
    }
    assert!(parse_measure("bernoulli-power:lambda=0.5").is_err());
    assert!(parse_measure("beta:gamma=-1,beta=0").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beta_measures_are_normalized(g in -0.95f64..4.0, b in -0.95f64..4.0) {
        let m = beta_measure(BetaParams::new(g, b).unwrap()).unwrap();
        let mass = m.total_mass(&pol()).unwrap();
        prop_assert!((mass - 1.0).abs() <= 1e-9);
        // mean of (1−x)^γ(1+x)^β on [−1,1] is (β−γ)/(γ+β+2)
        let mean = m.moment(1, &pol()).unwrap();
        prop_assert!((mean - (b - g) / (g + b + 2.0)).abs() <= 1e-9);
    }

    #[test]
    fn bernoulli_power_second_moment(lambda in 1.0f64..6.0) {
        let m = bernoulli_power_measure(lambda).unwrap();
        prop_assert!((m.total_mass(&pol()).unwrap() - 1.0).abs() <= 1e-9);
        let want = 2.0 / (lambda + 1.0);
        prop_assert!((m.moment(2, &pol()).unwrap() - want).abs() <= 1e-9);
    }
}
