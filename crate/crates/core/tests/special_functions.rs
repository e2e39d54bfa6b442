use num_complex::Complex64;
use periodic_tasep::limit_dist::*;
use periodic_tasep::quadrature::integrate;
use proptest::prelude::*;
use std::f64::consts::PI;

fn polar(r: f64, theta: f64) -> Complex64 {
    Complex64::from_polar(r, theta)
}

#[test]
fn cerfc_matches_quadrature_of_definition() {
    // erfc(z) = 2/sqrt(pi) int_0^inf exp(-(z+s)^2) ds
    for z in [
        Complex64::new(1.5, 0.5),
        Complex64::new(0.3, -2.0),
        Complex64::new(4.5, 1.0),
    ] {
        let direct =
            integrate(|s| (-(z + s) * (z + s)).exp(), 0.0, 12.0, 1e-18) * (2.0 / PI.sqrt());
        let v = cerfc(z);
        assert!(
            (v - direct).norm() <= 1e-12 * direct.norm(),
            "z={z}: {v} vs {direct}"
        );
    }
}

#[test]
fn cerfc_far_field_uses_exact_prefactor() {
    // erfc(x) ~ exp(-x^2)/(x sqrt(pi)) (1 - 1/(2x^2) + 3/(4x^4))
    let x: f64 = 20.0;
    let approx = (-x * x).exp() / (x * PI.sqrt()) * (1.0 - 0.5 / (x * x) + 0.75 / x.powi(4));
    let v = cerfc(Complex64::new(x, 0.0)).re;
    assert!((v / approx - 1.0).abs() < 1e-7);
}

#[test]
fn polylog_three_halves_at_one_half() {
    let w = Complex64::new(0.5, 0.0);
    let a = polylog_series(PolylogOrder::ThreeHalves, w).unwrap();
    let b = polylog_integral(PolylogOrder::ThreeHalves, w).unwrap();
    assert!((a - b).norm() < 1e-12);
}

#[test]
fn psi_int_three_ways_at_one_half() {
    let z = Complex64::new(0.5, 0.0);
    let xi = node(z, 0);
    let series = psi_int(xi, z).unwrap();
    assert!((series - psi_int_path(xi).unwrap()).norm() < 1e-10);
    assert!((series - psi_int_line(xi, z)).norm() < 1e-10);
}

#[test]
fn b_at_one_half_two_ways() {
    let z = Complex64::new(0.5, 0.0);
    assert!((b_constant(z).unwrap() - b_quadrature(z).unwrap()).norm() < 1e-10);
}

#[test]
fn a1_matches_imaginary_axis_integral() {
    for z in [Complex64::new(0.5, 0.0), polar(0.8, 2.0), polar(0.3, -1.0)] {
        let (a1, _, _) = abc_constants(z).unwrap();
        assert!((a1 - a1_quadrature(z)).norm() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn polylog_series_and_integral_agree(r in 0.05f64..0.8, theta in -PI..PI, order in 0usize..3) {
        let order = [PolylogOrder::Half, PolylogOrder::ThreeHalves, PolylogOrder::FiveHalves][order];
        let w = polar(r, theta);
        let a = polylog_series(order, w).unwrap();
        let b = polylog_integral(order, w).unwrap();
        prop_assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn psi_int_representations_agree(r in 0.1f64..0.9, theta in -3.1f64..3.1, k in -6i64..=6) {
        let z = polar(r, theta);
        let xi = node(z, k);
        let series = psi_int(xi, z).unwrap();
        let path = psi_int_path(xi).unwrap();
        let line = psi_int_line(xi, z);
        prop_assert!((series - path).norm() < 1e-10, "{series} vs path {path}");
        prop_assert!((series - line).norm() < 1e-10, "{series} vs line {line}");
    }

    #[test]
    fn b_series_and_quadrature_agree(r in 0.0f64..0.9, theta in -PI..PI) {
        let z = polar(r, theta);
        prop_assert!((b_constant(z).unwrap() - b_quadrature(z).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn nodes_solve_their_equation(r in 0.01f64..0.99, theta in -PI..PI, m in 1usize..40) {
        let z = polar(r, theta);
        let ns = NodeSet::new(z, m).unwrap();
        prop_assert_eq!(ns.len(), 2 * m + 1);
        for &xi in &ns.nodes {
            prop_assert!(((-xi * xi / 2.0).exp() - z).norm() <= 1e-12);
            let arg = xi.arg().rem_euclid(2.0 * PI);
            prop_assert!(arg > 0.75 * PI && arg < 1.25 * PI);
        }
    }

    #[test]
    fn cerfc_odd_symmetry(re in -8.0f64..8.0, im in -8.0f64..8.0) {
        let z = Complex64::new(re, im);
        let s = cerfc(z) + cerfc(-z);
        prop_assert!((s - 2.0).norm() < 1e-12 * cerfc(z).norm().max(1.0));
    }
}
