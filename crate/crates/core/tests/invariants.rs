use abcyl_core::currents::chi;
use abcyl_core::fermi::{persistent, persistent_exact};
use abcyl_core::params::to_dimensionless;
use abcyl_core::spectrum::{energy_finite, enumerate_fermi_sea};
use abcyl_core::{HalfOdd, Method, ParamConfig, Params, PhysicalParams, SeaCriterion};
use proptest::prelude::*;

fn half_odd() -> impl Strategy<Value = HalfOdd> {
    (-41i64..=41).prop_map(|k| HalfOdd::from_twice(2 * k + 1).unwrap())
}

proptest! {
    #[test]
    fn chi_increases_with_lambda(
        mu in 0.0f64..20.0, nu in 0.05f64..3.0, beta in -2.0f64..2.0,
        n in 1u32..40, l in half_odd(),
    ) {
        let d = Params::new(mu, nu, beta, 0.0).unwrap();
        prop_assert!(chi(n, l.next(), &d).unwrap() > chi(n, l, &d).unwrap());
    }

    #[test]
    fn chi_decreases_with_level_and_fades(
        mu in 0.0f64..20.0, nu in 0.05f64..3.0, beta in -0.4f64..0.4, n in 1u32..200,
    ) {
        let d = Params::new(mu, nu, beta, 0.0).unwrap();
        let l = HalfOdd::from_twice(3).unwrap();
        let a = chi(n, l, &d).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!(chi(n + 1, l, &d).unwrap() < a);
        prop_assert!(chi(n * 1_000_000, l, &d).unwrap() < 2.0 / (nu * n as f64 * 1e6));
    }

    #[test]
    fn chi_is_odd_under_joint_reversal(
        mu in 0.0f64..20.0, nu in 0.05f64..3.0, beta in -2.0f64..2.0,
        n in 1u32..40, l in half_odd(),
    ) {
        let d = Params::new(mu, nu, beta, 0.0).unwrap();
        let r = d.with_beta(-beta);
        prop_assert_eq!(chi(n, l, &d).unwrap(), -chi(n, -l, &r).unwrap());
    }

    #[test]
    fn current_is_derivative_of_energy(
        mu in 0.1f64..5.0, nu in 0.2f64..2.0, beta in -0.4f64..0.4,
        n in 1u32..8, l in half_odd(),
    ) {
        let d = Params::new(mu, nu, beta, 0.0).unwrap();
        let h = 1e-6;
        let fd = (energy_finite(n, l, &d.with_beta(beta + h)).unwrap()
            - energy_finite(n, l, &d.with_beta(beta - h)).unwrap()) / (2.0 * h);
        let c = chi(n, l, &d).unwrap();
        prop_assert!((fd - c).abs() <= 1e-6 * c.abs());
    }

    #[test]
    fn alpha_reduces_to_nonrelativistic_form(
        mass in 1e5f64..1e7, eps in 1e-6f64..1e-3, radius in 0.5f64..50.0,
    ) {
        let p = PhysicalParams {
            mass_ev: mass,
            radius_nm: radius,
            length_nm: None,
            b_field_t: 0.0,
            fermi_ev: eps * mass,
        };
        let d = to_dimensionless(&p).unwrap();
        let nonrel = d.mu * (2.0 * eps).sqrt();
        prop_assert!(((d.alpha - nonrel) / nonrel).abs() <= eps / 2.0 * 1.001);
    }

    #[test]
    fn exact_slope_is_stable_for_small_flux(
        mu in 0.0f64..10.0, nu in 0.3f64..2.0, alpha in 1.0f64..12.0, beta in 1e-5f64..1e-3,
    ) {
        let d = Params::new(mu, nu, beta, alpha).unwrap();
        // a shell state crossing the Fermi level below β makes the current jump
        let unshifted = enumerate_fermi_sea(&d, SeaCriterion::Quadratic).unwrap().occupied();
        prop_assume!(enumerate_fermi_sea(&d, SeaCriterion::Exact).unwrap().occupied() == unshifted);
        let full = persistent_exact(&d).unwrap().value / beta;
        let half = persistent_exact(&d.with_beta(beta / 2.0)).unwrap().value / (beta / 2.0);
        prop_assume!(full != 0.0);
        prop_assert!(((full - half) / full).abs() <= 4.0 * beta * beta);
    }
}

#[test]
fn approximate_methods_are_linear_in_flux() {
    let d = Params::new(3.0, 0.7, 2e-4, 9.0).unwrap();
    for m in [Method::Linearized, Method::Compact, Method::NonRelativistic] {
        let a = persistent(m, &d).unwrap().value;
        let b = persistent(m, &d.with_beta(6e-4)).unwrap().value;
        assert!((b / a - 3.0).abs() < 1e-13, "{m:?}");
    }
    let d = Params::new(3.0, 10.0, 2e-4, 15.0).unwrap();
    let a = persistent(Method::Short, &d).unwrap().value;
    let b = persistent(Method::Short, &d.with_beta(6e-4)).unwrap().value;
    assert!((b / a - 3.0).abs() < 1e-13);
}

#[test]
fn config_file_to_persistent_current() {
    let cfg = ParamConfig::parse("# a short tube\nmu = 1\nnu = 1 # pi R / L\nbeta = 0.01\nalpha = 5\n").unwrap();
    let d = cfg.resolve::<f64>().unwrap();
    let exact = persistent_exact(&d).unwrap();
    let linear = persistent(Method::Linearized, &d).unwrap();
    assert_eq!(exact.electron_count, 34);
    assert!(((exact.value - linear.value) / linear.value).abs() < 1e-3);
}

#[test]
fn single_precision_core_agrees_with_double() {
    let d32 = abcyl_core::params::DimensionlessParams::<f32>::new(1.0, 1.0, 0.3, 5.0).unwrap();
    let d64 = Params::new(1.0, 1.0, 0.3, 5.0).unwrap();
    let l = HalfOdd::from_twice(5).unwrap();
    let a = chi(2, l, &d32).unwrap() as f64;
    let b = chi(2, l, &d64).unwrap();
    assert!((a - b).abs() < 1e-6);
}
