//! Zero-temperature persistent currents on finite cylinders: exact sea sums and
//! the chain of closed-form approximations.
//!
//! Every value is `R·I`. Sums run over ascending `n`, then ascending `λ`, with
//! compensated accumulation.

use crate::currents::chi;
use crate::error::{Error, Result};
use crate::params::{DimensionlessParams, Regime};
use crate::quadrature::Rule1D;
use crate::scalar::Real;
use crate::spectrum::{enumerate_fermi_sea, FermiSea, HalfOdd, SeaCriterion};
use crate::summation::NeumaierSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    Linearized,
    Compact,
    Short,
    NonRelativistic,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Exact,
        Method::Linearized,
        Method::Compact,
        Method::Short,
        Method::NonRelativistic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Linearized => "linearized",
            Method::Compact => "compact",
            Method::Short => "short",
            Method::NonRelativistic => "nonrel",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter {
                name: "method",
                reason: format!("unknown method `{s}`"),
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PersistentReport<T> {
    pub method: Method,
    /// `R·I`.
    pub value: T,
    pub electron_count: usize,
    /// `c(μ, ν)` for the linearized and compact methods.
    pub c: Option<T>,
    pub regime: Vec<Regime>,
    pub n_f: u32,
    pub lambda_f: Option<HalfOdd>,
    pub sum_lambda_n: Option<T>,
    /// Further method-specific numbers, in a fixed order.
    pub extras: Vec<(&'static str, T)>,
    pub notes: Vec<String>,
}

impl<T: Real> PersistentReport<T> {
    fn from_sea(method: Method, value: T, sea: &FermiSea<T>) -> Self {
        let mut notes = Vec::new();
        if sea.is_empty() {
            notes.push("empty Fermi sea".to_string());
        }
        Self {
            method,
            value,
            electron_count: sea.electron_count(),
            c: None,
            regime: sea.params.regime().flags,
            n_f: sea.n_f(),
            lambda_f: sea.lambda_f(),
            sum_lambda_n: None,
            extras: Vec::new(),
            notes,
        }
    }
}

/// `Σ χ(n, λ)/(2π)` over the sea enumerated with the actual flux.
pub fn persistent_exact<T: Real>(d: &DimensionlessParams<T>) -> Result<PersistentReport<T>> {
    let sea = enumerate_fermi_sea(d, SeaCriterion::Exact)?;
    let mut acc = NeumaierSum::new();
    for (n, l) in sea.states() {
        acc.add(chi(n, l, d)?);
    }
    Ok(PersistentReport::from_sea(Method::Exact, acc.value() / T::TAU(), &sea))
}

/// `j(n, λ) = s / (s + λ²)^{3/2}` with `s = μ² + ν²n²`.
pub fn j_coeff<T: Real>(n: u32, lambda: HalfOdd, d: &DimensionlessParams<T>) -> Result<T> {
    if d.is_infinite() {
        return Err(Error::InfiniteGeometry);
    }
    Ok(j_of(level_mass_sqr(n, d), lambda.value()))
}

fn level_mass_sqr<T: Real>(n: u32, d: &DimensionlessParams<T>) -> T {
    let kn = d.nu * T::lit(n as f64);
    d.mu * d.mu + kn * kn
}

fn j_of<T: Real>(s: T, lambda: T) -> T {
    let q = s + lambda * lambda;
    s / (q * q.sqrt())
}

/// `c(μ, ν) = Σ_{(n, λ>0)} j(n, λ)` over the flux-free sea.
pub fn c_coefficient_exact<T: Real>(d: &DimensionlessParams<T>) -> Result<T> {
    let sea = enumerate_fermi_sea(d, SeaCriterion::Quadratic)?;
    Ok(c_of_sea(&sea))
}

fn c_of_sea<T: Real>(sea: &FermiSea<T>) -> T {
    let mut acc = NeumaierSum::new();
    for (n, l) in sea.states() {
        if l.is_positive() {
            acc.add(j_of(level_mass_sqr(n, &sea.params), l.value()));
        }
    }
    acc.value()
}

/// `R·I = β c / π`.
pub fn persistent_linearized<T: Real>(d: &DimensionlessParams<T>) -> Result<PersistentReport<T>> {
    let sea = enumerate_fermi_sea(d, SeaCriterion::Quadratic)?;
    let c = c_of_sea(&sea);
    let mut r = PersistentReport::from_sea(Method::Linearized, d.beta * c / T::PI(), &sea);
    r.c = Some(c);
    Ok(r)
}

/// `c ≈ Σλ_n / sqrt(μ² + α²)` with the enumerated half-odd-integers `λ_n`.
pub fn c_compact<T: Real>(d: &DimensionlessParams<T>) -> Result<T> {
    let sea = enumerate_fermi_sea(d, SeaCriterion::Quadratic)?;
    Ok(sea.sum_lambda_n() / compact_denominator(d))
}

fn compact_denominator<T: Real>(d: &DimensionlessParams<T>) -> T {
    (d.mu * d.mu + d.alpha * d.alpha).sqrt()
}

/// `R·I = β c_compact / π`.
pub fn persistent_compact<T: Real>(d: &DimensionlessParams<T>) -> Result<PersistentReport<T>> {
    let sea = enumerate_fermi_sea(d, SeaCriterion::Quadratic)?;
    let sum = sea.sum_lambda_n();
    let c = sum / compact_denominator(d);
    let mut r = PersistentReport::from_sea(Method::Compact, d.beta * c / T::PI(), &sea);
    r.c = Some(c);
    r.sum_lambda_n = Some(sum);
    Ok(r)
}

/// `Σ_{n=1}^{n_F} λ_n` over the flux-free sea.
pub fn sum_lambda_n_exact<T: Real>(d: &DimensionlessParams<T>) -> Result<T> {
    Ok(enumerate_fermi_sea(d, SeaCriterion::Quadratic)?.sum_lambda_n())
}

/// Integral estimate of `Σλ_n` with the continuous `n_F = sqrt(α² − 1/4)/ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSumIntegral<T> {
    pub n_f: T,
    /// `∫₀^{n_F} sqrt(ν²(n_F² − x²) + 1/4) dx` by quadrature.
    pub numeric: T,
    /// `(1/4) n_F (1 + π n_F/ν)`, the closed form reported beside the quadrature.
    pub closed_form: T,
}

pub fn sum_lambda_n_integral<T: Real>(d: &DimensionlessParams<T>) -> Result<LambdaSumIntegral<T>> {
    if d.is_infinite() {
        return Err(Error::InfiniteGeometry);
    }
    let quarter = T::lit(0.25);
    let n_f = (d.alpha * d.alpha - quarter).max(T::zero()).sqrt() / d.nu;
    // x = n_F sin θ turns the steep edge at x = n_F into a smooth integrand
    let r = Rule1D::composite_gauss_legendre(T::zero(), T::FRAC_PI_2(), 8, 32)?;
    let numeric = r.integrate(|th| {
        let c = th.cos();
        (d.nu * d.nu * n_f * n_f * c * c + quarter).sqrt() * n_f * c
    });
    let closed_form = quarter * n_f * (T::one() + T::PI() * n_f / d.nu);
    Ok(LambdaSumIntegral {
        n_f,
        numeric,
        closed_form,
    })
}

/// The inner sum over λ at one level and its integral approximations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerSum<T> {
    pub n: u32,
    pub lambda_n: HalfOdd,
    /// `Σ_{λ=1/2}^{λ_n} j(n, λ)`.
    pub exact: T,
    /// `λ_n / sqrt(μ² + ν²n² + λ_n²)`.
    pub integral: T,
    /// `λ_n / sqrt(μ² + α²)`.
    pub compact: T,
}

pub fn inner_sum<T: Real>(n: u32, d: &DimensionlessParams<T>) -> Result<InnerSum<T>> {
    let sea = enumerate_fermi_sea(d, SeaCriterion::Quadratic)?;
    let lambda_n = sea.lambda_n(n).ok_or_else(|| Error::InvalidParameter {
        name: "n",
        reason: format!("level {n} is not occupied"),
    })?;
    let s = level_mass_sqr(n, d);
    let mut acc = NeumaierSum::new();
    for l in HalfOdd::range_inclusive(HalfOdd::HALF, lambda_n) {
        acc.add(j_of(s, l.value()));
    }
    let ln = lambda_n.value::<T>();
    Ok(InnerSum {
        n,
        lambda_n,
        exact: acc.value(),
        integral: ln / (s + ln * ln).sqrt(),
        compact: ln / compact_denominator(d),
    })
}

/// `R·I ≈ (β/π) sqrt((α² − ν²)/(α² + μ²))` for `1 ≪ ν < α < 2ν`.
pub fn persistent_short<T: Real>(d: &DimensionlessParams<T>) -> Result<PersistentReport<T>> {
    if d.is_infinite() {
        return Err(Error::InfiniteGeometry);
    }
    if d.nu > d.alpha {
        return Err(Error::Regime(format!(
            "nu = {} exceeds alpha = {}: no longitudinal level is occupied; use the ring limit (nu = 0, alpha = lambda_F)",
            d.nu, d.alpha
        )));
    }
    let lambda_f_cont = (d.alpha * d.alpha - d.nu * d.nu).max(T::zero()).sqrt();
    let value = d.beta / T::PI() * lambda_f_cont / compact_denominator(d);
    let regime = d.regime();
    let lambda_f = HalfOdd::floor_of(lambda_f_cont);
    let mut notes = Vec::new();
    if !regime.has(Regime::Short) {
        notes.push("outside the short-cylinder regime 1 << nu < alpha < 2 nu".to_string());
    }
    let (electron_count, lambda_f) = if lambda_f.is_positive() {
        ((lambda_f.twice() + 1) as usize, Some(lambda_f))
    } else {
        (0, None)
    };
    Ok(PersistentReport {
        method: Method::Short,
        value,
        electron_count,
        c: None,
        regime: regime.flags,
        n_f: 1,
        lambda_f,
        sum_lambda_n: None,
        extras: vec![("lambda_f_continuous", lambda_f_cont)],
        notes,
    })
}

/// Non-relativistic ring result. `value` is `(β/π) N_e/(2μ)`; the
/// `(β/π) λ_F/μ` form is reported in `extras`.
pub fn persistent_nonrel<T: Real>(d: &DimensionlessParams<T>) -> Result<PersistentReport<T>> {
    if !(d.mu > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "mu",
            reason: "non-relativistic limit needs a positive mass".into(),
        });
    }
    let sea = enumerate_fermi_sea(d, SeaCriterion::Quadratic)?;
    let ne = T::lit(sea.electron_count() as f64);
    let value = d.beta / T::PI() * ne / (T::lit(2.0) * d.mu);
    let lf = sea.lambda_f().map_or(T::zero(), |l| l.value());
    let mut r = PersistentReport::from_sea(Method::NonRelativistic, value, &sea);
    r.extras.push(("lambda_f_variant", d.beta / T::PI() * lf / d.mu));
    if !d.regime().nonrel_applicable {
        r.notes.push("alpha is not small compared with mu".to_string());
    }
    Ok(r)
}

pub fn persistent<T: Real>(method: Method, d: &DimensionlessParams<T>) -> Result<PersistentReport<T>> {
    match method {
        Method::Exact => persistent_exact(d),
        Method::Linearized => persistent_linearized(d),
        Method::Compact => persistent_compact(d),
        Method::Short => persistent_short(d),
        Method::NonRelativistic => persistent_nonrel(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn p(mu: f64, nu: f64, beta: f64, alpha: f64) -> DimensionlessParams<f64> {
        DimensionlessParams::new(mu, nu, beta, alpha).unwrap()
    }

    fn h(t: i64) -> HalfOdd {
        HalfOdd::from_twice(t).unwrap()
    }

    #[test]
    fn six_state_sea_by_hand() {
        let d = p(300.0, 1.0, 1e-4, 2.2);
        let r = persistent_exact(&d).unwrap();
        assert_eq!(r.electron_count, 6);
        let chi = |n: f64, l: f64| (l + 1e-4) / (90000.0 + n * n + (l + 1e-4f64).powi(2)).sqrt();
        let hand =
            (chi(1.0, -1.5) + chi(1.0, -0.5) + chi(1.0, 0.5) + chi(1.0, 1.5) + chi(2.0, -0.5) + chi(2.0, 0.5)) / TAU;
        assert_relative_eq!(r.value, hand, max_relative = 1e-12);
        assert!(r.value > 0.0);
    }

    #[test]
    fn zero_flux_gives_zero_current() {
        assert_eq!(persistent_exact(&p(10.0, 0.5, 0.0, 7.3)).unwrap().value, 0.0);
        let empty = persistent_exact(&p(10.0, 2.0, 0.1, 1.0)).unwrap();
        assert_eq!(empty.value, 0.0);
        assert_eq!(empty.electron_count, 0);
        assert!(!empty.notes.is_empty());
    }

    #[test]
    fn j_coefficient_examples() {
        // μ² + ν²n² = 4 with μ = ν = sqrt 2, n = 1; λ² = 12 is not half-odd, so check j_of directly
        assert_relative_eq!(j_of(4.0, 12f64.sqrt()), 1.0 / 16.0, max_relative = 1e-15);
        let d = p(1.0, 1.0, 0.0, 0.0);
        assert!(j_coeff(1, h(2001), &d).unwrap() < 3e-9);
        assert!(j_coeff(1, h(1), &d.with_nu(0.0)).is_err());
    }

    #[test]
    fn single_state_sea_c() {
        let d = p(3.0, 1.0, 1e-3, 1.2);
        assert_relative_eq!(
            c_coefficient_exact(&d).unwrap(),
            j_coeff(1, h(1), &d).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn linearized_matches_exact_to_second_order() {
        let d = p(50.0, 0.7, 1e-4, 12.0);
        let e = persistent_exact(&d).unwrap().value;
        let l = persistent_linearized(&d).unwrap().value;
        assert!(((e - l) / l).abs() <= 10.0 * 1e-8);
    }

    #[test]
    fn electron_count_identity() {
        let d = p(250.0, 1.0, 0.0, 50.0);
        let sea = enumerate_fermi_sea(&d, SeaCriterion::Quadratic).unwrap();
        let ne = sea.n_f() as f64 + 2.0 * sea.sum_lambda_n();
        assert_eq!(ne, sea.electron_count() as f64);
    }

    #[test]
    fn integral_estimate_of_lambda_sum() {
        let d = p(1.0, 1.0, 0.0, 200.0);
        let exact = sum_lambda_n_exact(&d).unwrap();
        let i = sum_lambda_n_integral(&d).unwrap();
        assert!(i.n_f > 100.0);
        // closed form of the integral with c = 1/4: (n_F/2) sqrt(ν²n_F² + c) + (ν²n_F² + c)/(2ν) asin(ν n_F / sqrt(ν²n_F² + c)) scaled
        let a2 = i.n_f * i.n_f + 0.25;
        let closed = 0.5 * i.n_f * 0.5 + a2 / 2.0 * (i.n_f / a2.sqrt()).asin();
        assert_relative_eq!(i.numeric, closed, max_relative = 1e-12);
        assert!(((exact - i.numeric) / i.numeric).abs() < 0.01);
        assert_relative_eq!(i.closed_form, 0.25 * i.n_f * (1.0 + PI * i.n_f), max_relative = 1e-15);
    }

    #[test]
    fn short_cylinder_values() {
        let d = p(300.0, 10.0, 1e-4, 15.0);
        let r = persistent_short(&d).unwrap();
        assert_eq!(r.lambda_f, Some(h(21)));
        assert_eq!(r.electron_count, 22);
        assert_relative_eq!(r.extras[0].1, 125f64.sqrt(), max_relative = 1e-15);
        assert!(r.notes.is_empty());
        assert_eq!(persistent_short(&p(300.0, 10.0, 1e-4, 10.0)).unwrap().value, 0.0);
        assert!(matches!(
            persistent_short(&p(300.0, 10.0, 1e-4, 9.0)),
            Err(Error::Regime(_))
        ));
    }

    #[test]
    fn nonrel_variants_differ_by_half_over_lambda_f() {
        let d = p(5000.0, 10.0, 1e-4, 15.0);
        let r = persistent_nonrel(&d).unwrap();
        let lf = r.lambda_f.unwrap().value::<f64>();
        let gap = (r.value - r.extras[0].1) / r.extras[0].1;
        assert_relative_eq!(gap, 1.0 / (2.0 * lf), max_relative = 1e-12);
        let e = persistent_exact(&d).unwrap().value;
        assert!(((r.extras[0].1 - e) / e).abs() < 0.05);
    }

    #[test]
    fn approximations_are_linear_in_beta() {
        let d = p(40.0, 2.0, 1e-4, 30.0);
        for m in [Method::Linearized, Method::Compact, Method::NonRelativistic] {
            let a = persistent(m, &d).unwrap().value;
            let b = persistent(m, &d.with_beta(2e-4)).unwrap().value;
            assert_relative_eq!(b, 2.0 * a, max_relative = 1e-15);
        }
        let e1 = persistent_exact(&d).unwrap().value;
        let e2 = persistent_exact(&d.with_beta(5e-5)).unwrap().value;
        assert!(((e1 - 2.0 * e2) / e1).abs() <= 4e-8);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }

    proptest! {
        #[test]
        fn exact_current_is_odd_in_flux(
            mu in 0.5f64..50.0, nu in 0.1f64..3.0, alpha in 0.5f64..20.0, beta in 1e-6f64..0.4
        ) {
            let d = p(mu, nu, beta, alpha);
            let plus = persistent_exact(&d).unwrap().value;
            let minus = persistent_exact(&d.with_beta(-beta)).unwrap().value;
            prop_assert!((plus + minus).abs() <= 1e-13 * plus.abs().max(1e-300) + 1e-300);
        }

        #[test]
        fn c_is_positive_for_nonempty_seas(mu in 0.0f64..50.0, nu in 0.1f64..3.0, alpha in 0.6f64..20.0) {
            let d = p(mu, nu, 0.0, alpha);
            let sea = enumerate_fermi_sea(&d, SeaCriterion::Quadratic).unwrap();
            let c = c_coefficient_exact(&d).unwrap();
            prop_assert_eq!(c > 0.0, !sea.is_empty());
        }
    }
}
