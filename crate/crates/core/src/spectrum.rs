//! Single-particle energies on infinite and finite cylinders and the T = 0
//! Fermi sea.
//!
//! All energies are the dimensionless product `R·E`:
//!
//! ```text
//! infinite:  R·E(k, λ) = sqrt(μ² + (kR)² + (λ+β)²)
//! finite:    R·E(n, λ) = sqrt(μ² + ν²n² + (λ+β)²)
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::params::DimensionlessParams;
use crate::scalar::Real;

/// A half-odd-integer, stored as the odd integer `2λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfOdd(i64);

impl HalfOdd {
    pub const HALF: HalfOdd = HalfOdd(1);

    pub fn from_twice(twice: i64) -> Result<Self> {
        if twice.rem_euclid(2) == 1 {
            Ok(HalfOdd(twice))
        } else {
            Err(Error::NotHalfOdd(format!("{twice}/2")))
        }
    }

    /// Accepts values such as `1.5` or `-0.5`; anything not exactly half-odd is rejected.
    pub fn from_f64(x: f64) -> Result<Self> {
        let twice = 2.0 * x;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > 9.0e15 {
            return Err(Error::NotHalfOdd(x.to_string()));
        }
        Self::from_twice(twice as i64)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn value<T: Real>(self) -> T {
        T::lit(self.0 as f64) / T::lit(2.0)
    }

    pub fn abs(self) -> Self {
        HalfOdd(self.0.abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// `λ + 1`.
    pub fn next(self) -> Self {
        HalfOdd(self.0 + 2)
    }

    /// `λ - 1`.
    pub fn prev(self) -> Self {
        HalfOdd(self.0 - 2)
    }

    /// Iterates `lo, lo+1, …, hi`.
    pub fn range_inclusive(lo: HalfOdd, hi: HalfOdd) -> impl Iterator<Item = HalfOdd> + Clone {
        (lo.0..=hi.0).step_by(2).map(HalfOdd)
    }

    /// Largest half-odd-integer `≤ x`.
    pub fn floor_of<T: Real>(x: T) -> HalfOdd {
        // largest odd m with m/2 <= x  <=>  m <= 2x
        let m = (T::lit(2.0) * x).floor().as_f64() as i64;
        HalfOdd(if m.rem_euclid(2) == 1 { m } else { m - 1 })
    }
}

impl std::ops::Neg for HalfOdd {
    type Output = Self;

    fn neg(self) -> Self {
        HalfOdd(-self.0)
    }
}

impl fmt::Display for HalfOdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as f64 / 2.0)
    }
}

impl FromStr for HalfOdd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let den: i64 = den.trim().parse().map_err(|_| Error::NotHalfOdd(s.into()))?;
            let num: i64 = num.trim().parse().map_err(|_| Error::NotHalfOdd(s.into()))?;
            if den != 2 {
                return Err(Error::NotHalfOdd(s.into()));
            }
            return Self::from_twice(num);
        }
        let x: f64 = s.parse().map_err(|_| Error::NotHalfOdd(s.into()))?;
        Self::from_f64(x)
    }
}

/// Spin polarization σ = ±1/2 along the cylinder axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarization {
    Up,
    Down,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::Up, Polarization::Down];

    /// `+1` for σ = +1/2, `-1` for σ = -1/2.
    pub fn sign(self) -> i32 {
        match self {
            Polarization::Up => 1,
            Polarization::Down => -1,
        }
    }
}

/// Longitudinal quantum number: continuous momentum (infinite cylinder) or
/// standing-wave index (finite cylinder).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Longitudinal<T> {
    /// `kR`.
    Momentum(T),
    /// `n ≥ 1`, with `k_n R = ν n`.
    Level(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec<T> {
    pub longitudinal: Longitudinal<T>,
    pub lambda: HalfOdd,
    pub sigma: Polarization,
}

impl<T: Real> ModeSpec<T> {
    pub fn infinite(k: T, lambda: HalfOdd, sigma: Polarization) -> Self {
        Self {
            longitudinal: Longitudinal::Momentum(k),
            lambda,
            sigma,
        }
    }

    pub fn finite(n: u32, lambda: HalfOdd, sigma: Polarization) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: "longitudinal level must be >= 1".into(),
            });
        }
        Ok(Self {
            longitudinal: Longitudinal::Level(n),
            lambda,
            sigma,
        })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.longitudinal, Longitudinal::Level(_))
    }

    /// Longitudinal momentum `kR` of the mode (`ν n` for finite modes).
    pub fn momentum(&self, d: &DimensionlessParams<T>) -> Result<T> {
        match self.longitudinal {
            Longitudinal::Momentum(k) => Ok(k),
            Longitudinal::Level(n) => {
                if d.is_infinite() {
                    return Err(Error::InfiniteGeometry);
                }
                Ok(d.nu * T::lit(n as f64))
            }
        }
    }

    pub fn energy(&self, d: &DimensionlessParams<T>) -> Result<T> {
        match self.longitudinal {
            Longitudinal::Momentum(k) => Ok(energy_infinite(k, self.lambda, d)),
            Longitudinal::Level(n) => energy_finite(n, self.lambda, d),
        }
    }
}

/// `R·E = sqrt(μ² + (kR)² + (λ+β)²)`.
pub fn energy_infinite<T: Real>(k: T, lambda: HalfOdd, d: &DimensionlessParams<T>) -> T {
    let shifted = lambda.value::<T>() + d.beta;
    (d.mu * d.mu + k * k + shifted * shifted).sqrt()
}

/// `R·E = sqrt(μ² + ν²n² + (λ+β)²)`. Requires a finite cylinder.
pub fn energy_finite<T: Real>(n: u32, lambda: HalfOdd, d: &DimensionlessParams<T>) -> Result<T> {
    if d.is_infinite() {
        return Err(Error::InfiniteGeometry);
    }
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "longitudinal level must be >= 1".into(),
        });
    }
    let kn = d.nu * T::lit(n as f64);
    Ok(energy_infinite(kn, lambda, d))
}

/// `∂(R·E)/∂β = (λ+β)/(R·E)`.
pub fn denergy_dbeta<T: Real>(mode: &ModeSpec<T>, d: &DimensionlessParams<T>) -> Result<T> {
    let e = mode.energy(d)?;
    Ok((mode.lambda.value::<T>() + d.beta) / e)
}

/// Occupation rule for the T = 0 sea.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeaCriterion {
    /// `ν²n² + (λ+β)² ≤ α²`, i.e. `E ≤ E_F + M` with the actual flux.
    Exact,
    /// `ν²n² + λ² ≤ α²`, the flux-free condition.
    Quadratic,
}

/// Occupied λ-interval for one longitudinal level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeaRow {
    pub n: u32,
    pub lambda_min: HalfOdd,
    pub lambda_max: HalfOdd,
}

#[allow(clippy::len_without_is_empty)]
impl SeaRow {
    /// Rows are never empty: an unoccupied level ends the sea.
    pub fn len(&self) -> usize {
        ((self.lambda_max.twice() - self.lambda_min.twice()) / 2 + 1) as usize
    }

    pub fn lambdas(&self) -> impl Iterator<Item = HalfOdd> + Clone {
        HalfOdd::range_inclusive(self.lambda_min, self.lambda_max)
    }

    /// Largest `|λ|` in the row.
    pub fn lambda_abs_max(&self) -> HalfOdd {
        self.lambda_min.abs().max(self.lambda_max.abs())
    }
}

/// The set of occupied `(n, λ)` states.
#[derive(Debug, Clone, PartialEq)]
pub struct FermiSea<T> {
    pub criterion: SeaCriterion,
    pub params: DimensionlessParams<T>,
    /// One row per occupied level, ascending in `n` (levels are occupied contiguously from 1).
    pub rows: Vec<SeaRow>,
}

impl<T: Real> FermiSea<T> {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Occupied states in summation order: ascending `n`, then ascending `λ`.
    pub fn states(&self) -> impl Iterator<Item = (u32, HalfOdd)> + '_ {
        self.rows.iter().flat_map(|r| r.lambdas().map(move |l| (r.n, l)))
    }

    pub fn occupied(&self) -> Vec<(u32, HalfOdd)> {
        self.states().collect()
    }

    pub fn contains(&self, n: u32, lambda: HalfOdd) -> bool {
        self.row(n)
            .is_some_and(|r| lambda >= r.lambda_min && lambda <= r.lambda_max)
    }

    pub fn row(&self, n: u32) -> Option<&SeaRow> {
        if n == 0 {
            return None;
        }
        self.rows.get(n as usize - 1)
    }

    /// Number of occupied states `N_e`.
    pub fn electron_count(&self) -> usize {
        self.rows.iter().map(SeaRow::len).sum()
    }

    /// Largest occupied `n` (0 for an empty sea).
    pub fn n_f(&self) -> u32 {
        self.rows.last().map_or(0, |r| r.n)
    }

    /// Largest occupied `|λ|` at level `n`.
    pub fn lambda_n(&self, n: u32) -> Option<HalfOdd> {
        self.row(n).map(SeaRow::lambda_abs_max)
    }

    /// `λ_F = λ_{n=1}`.
    pub fn lambda_f(&self) -> Option<HalfOdd> {
        self.lambda_n(1)
    }

    /// Continuous estimate `sqrt(α² − ν²n²)` (0 when negative).
    pub fn lambda_n_continuous(&self, n: u32) -> T {
        let d = &self.params;
        let kn = d.nu * T::lit(n as f64);
        (d.alpha * d.alpha - kn * kn).max(T::zero()).sqrt()
    }

    /// `Σ_{n=1}^{n_F} λ_n` with the enumerated half-odd-integers.
    pub fn sum_lambda_n(&self) -> T {
        crate::summation::compensated_sum(self.rows.iter().map(|r| r.lambda_abs_max().value::<T>()))
    }

    /// `ν > α`: no level fits under the Fermi energy in the cylinder picture.
    pub fn ring_like(&self) -> bool {
        self.params.nu > self.params.alpha
    }

    /// The occupation condition this sea was built with.
    pub fn admits(&self, n: u32, lambda: HalfOdd) -> bool {
        occupies(&self.params, self.criterion, n, lambda)
    }
}

fn occupies<T: Real>(d: &DimensionlessParams<T>, criterion: SeaCriterion, n: u32, lambda: HalfOdd) -> bool {
    let kn = d.nu * T::lit(n as f64);
    let l = match criterion {
        SeaCriterion::Exact => lambda.value::<T>() + d.beta,
        SeaCriterion::Quadratic => lambda.value::<T>(),
    };
    // ties count as occupied
    kn * kn + l * l <= d.alpha * d.alpha
}

/// Enumerates every `(n, λ)` satisfying the chosen occupation rule.
///
/// `n` scans `1..` until `ν n > α`; for each level the λ-interval is located
/// from the continuous bound and then corrected against the exact predicate,
/// so ties and rounding are decided by the same comparison as [`FermiSea::admits`].
pub fn enumerate_fermi_sea<T: Real>(d: &DimensionlessParams<T>, criterion: SeaCriterion) -> Result<FermiSea<T>> {
    if d.is_infinite() {
        return Err(Error::InfiniteGeometry);
    }
    let shift = match criterion {
        SeaCriterion::Exact => d.beta,
        SeaCriterion::Quadratic => T::zero(),
    };
    let mut rows = Vec::new();
    let mut n: u32 = 1;
    loop {
        let kn = d.nu * T::lit(n as f64);
        if kn > d.alpha {
            break;
        }
        let room = (d.alpha * d.alpha - kn * kn).max(T::zero()).sqrt();
        let admit = |l: HalfOdd| occupies(d, criterion, n, l);
        // λ + shift ∈ [-room, room]; the guesses below are off by at most one step
        let mut hi = HalfOdd::floor_of(room - shift);
        while admit(hi.next()) {
            hi = hi.next();
        }
        if !admit(hi) && admit(hi.prev()) {
            hi = hi.prev();
        }
        if !admit(hi) {
            // the admitted interval only shrinks with n
            break;
        }
        let mut lo = HalfOdd::floor_of(-room - shift);
        if lo > hi || !admit(lo) {
            lo = lo.next().min(hi);
        }
        while admit(lo.prev()) {
            lo = lo.prev();
        }
        while lo < hi && !admit(lo) {
            lo = lo.next();
        }
        rows.push(SeaRow {
            n,
            lambda_min: lo,
            lambda_max: hi,
        });
        n += 1;
    }
    Ok(FermiSea {
        criterion,
        params: *d,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(mu: f64, nu: f64, beta: f64, alpha: f64) -> DimensionlessParams<f64> {
        DimensionlessParams::new(mu, nu, beta, alpha).unwrap()
    }

    fn h(twice: i64) -> HalfOdd {
        HalfOdd::from_twice(twice).unwrap()
    }

    /// Brute-force oracle: scan a generous box and test the predicate directly.
    fn brute_force(d: &DimensionlessParams<f64>, exact: bool, n_max: u32, twice_max: i64) -> Vec<(u32, HalfOdd)> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            for t in (-twice_max..=twice_max).filter(|t| t.rem_euclid(2) == 1) {
                let l = t as f64 / 2.0 + if exact { d.beta } else { 0.0 };
                let kn = d.nu * n as f64;
                if kn * kn + l * l <= d.alpha * d.alpha {
                    out.push((n, h(t)));
                }
            }
        }
        out
    }

    #[test]
    fn half_odd_parsing() {
        assert_eq!("3/2".parse::<HalfOdd>().unwrap(), h(3));
        assert_eq!("-0.5".parse::<HalfOdd>().unwrap(), h(-1));
        assert_eq!(HalfOdd::from_f64(2000.5).unwrap().twice(), 4001);
        assert!("1".parse::<HalfOdd>().is_err());
        assert!("0.25".parse::<HalfOdd>().is_err());
        assert!("2/4".parse::<HalfOdd>().is_err());
        assert!(HalfOdd::from_twice(0).is_err());
        assert_eq!(HalfOdd::floor_of(1.96f64), h(3));
        assert_eq!(HalfOdd::floor_of(0.5f64), h(1));
        assert_eq!(HalfOdd::floor_of(0.49f64), h(-1));
        assert_eq!(HalfOdd::floor_of(-0.5f64), h(-1));
        assert_eq!(HalfOdd::floor_of(-0.51f64), h(-3));
        assert_eq!(h(-3).to_string(), "-1.5");
    }

    #[test]
    fn pythagorean_quadruple() {
        // 3² + 4² + 12² = 13²
        let d = params(3.0, 4.0, 0.5, 0.0);
        let l = h(23); // λ + β = 12
        assert_eq!(energy_infinite(4.0, l, &d), 13.0);
        assert_eq!(energy_finite(1, l, &d).unwrap(), 13.0);
    }

    #[test]
    fn rest_energy_and_ground_state() {
        let d = params(2.5, 0.0, 0.5, 0.0);
        assert_eq!(energy_infinite(0.0, h(-1), &d), 2.5);
        let d = params(1.0, 0.0, 0.2, 0.0);
        let ground = (-9..=9)
            .filter(|t: &i64| t.rem_euclid(2) == 1)
            .map(h)
            .min_by(|a, b| energy_infinite(0.0, *a, &d).total_cmp(&energy_infinite(0.0, *b, &d)))
            .unwrap();
        assert_eq!(ground, h(-1));
    }

    #[test]
    fn massless_finite_level() {
        let d = params(0.0, 1.0, 0.0, 0.0);
        assert_relative_eq!(
            energy_finite(1, h(1), &d).unwrap(),
            5f64.sqrt() / 2.0,
            max_relative = 1e-16
        );
        assert!(energy_finite(1, h(1), &params(1.0, 0.0, 0.0, 0.0)).is_err());
        assert!(energy_finite(0, h(1), &d).is_err());
    }

    #[test]
    fn short_length_limit_approaches_infinite() {
        for nu in [1e-1, 1e-2, 1e-3] {
            let d = params(2.0, nu, 0.1, 0.0);
            let diff = energy_finite(1, h(1), &d).unwrap() - energy_infinite(0.0, h(1), &d);
            assert!(diff >= 0.0 && diff <= nu * nu / (2.0 * 2.0) + 1e-15);
        }
    }

    #[test]
    fn derivative_examples() {
        let d = params(1.0, 1.0, 0.5, 0.0);
        let m = ModeSpec::finite(1, h(-1), Polarization::Up).unwrap();
        assert_eq!(denergy_dbeta(&m, &d).unwrap(), 0.0);
        let d = params(1.0, 1.0, 0.0, 0.0);
        let m = ModeSpec::finite(1, h(1), Polarization::Down).unwrap();
        assert_relative_eq!(denergy_dbeta(&m, &d).unwrap(), 1.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let hstep = 1e-6;
        for (mu, nu, beta, n, t) in [(1.0, 1.0, 0.1, 1, 1), (3.0, 0.4, -0.3, 4, -7), (0.2, 2.0, 0.45, 2, 11)] {
            let d = params(mu, nu, beta, 0.0);
            let m = ModeSpec::finite(n, h(t), Polarization::Up).unwrap();
            let fd = (energy_finite(n, h(t), &d.with_beta(beta + hstep)).unwrap()
                - energy_finite(n, h(t), &d.with_beta(beta - hstep)).unwrap())
                / (2.0 * hstep);
            assert_relative_eq!(denergy_dbeta(&m, &d).unwrap(), fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn sea_example_six_states() {
        let d = params(300.0, 1.0, 0.0, 2.2);
        let sea = enumerate_fermi_sea(&d, SeaCriterion::Quadratic).unwrap();
        assert_eq!(sea.occupied(), brute_force(&d, false, 3, 5));
        assert_eq!(sea.n_f(), 2);
        assert_eq!(sea.lambda_n(1), Some(h(3)));
        assert_eq!(sea.lambda_n(2), Some(h(1)));
        assert_eq!(sea.lambda_f(), Some(h(3)));
        assert_eq!(sea.electron_count(), 6);
        let n_e: i64 = (1..=sea.n_f()).map(|n| sea.lambda_n(n).unwrap().twice() + 1).sum();
        assert_eq!(n_e as usize, sea.electron_count());
    }

    #[test]
    fn empty_sea_below_lowest_state() {
        // α² < ν² + 1/4
        let d = params(1.0, 1.0, 0.0, 1.1);
        let sea = enumerate_fermi_sea(&d, SeaCriterion::Exact).unwrap();
        assert!(sea.is_empty());
        assert_eq!(sea.electron_count(), 0);
        assert_eq!(sea.n_f(), 0);
        let d = params(1.0, 2.0, 0.0, 1.5);
        let sea = enumerate_fermi_sea(&d, SeaCriterion::Exact).unwrap();
        assert!(sea.is_empty() && sea.ring_like());
        assert!(enumerate_fermi_sea(&params(1.0, 0.0, 0.0, 1.0), SeaCriterion::Exact).is_err());
    }

    #[test]
    fn ties_are_occupied() {
        // ν = 2, α = 5/2: ν² + (3/2)² = α² exactly, so (1, ±3/2) sits on the Fermi level
        let d = params(1.0, 2.0, 0.0, 2.5);
        let sea = enumerate_fermi_sea(&d, SeaCriterion::Quadratic).unwrap();
        assert!(sea.contains(1, h(3)) && sea.contains(1, h(-3)));
    }

    #[test]
    fn identities_hold_within_one_step() {
        let d = params(250.0, 1.0, 0.0, 50.0);
        let sea = enumerate_fermi_sea(&d, SeaCriterion::Quadratic).unwrap();
        let a2 = d.alpha * d.alpha;
        let nf = sea.n_f() as f64;
        // one step in n moves ν²n² by about 2ν²n_F, one step in λ moves λ² by about 2λ+1
        assert!((nf * nf + 0.25 - a2).abs() <= 2.0 * nf + 1.0);
        for n in 1..=sea.n_f() {
            let l = sea.lambda_n(n).unwrap().value::<f64>();
            assert!((n as f64 * n as f64 + l * l - a2).abs() <= 2.0 * l + 1.0);
            assert!(sea.lambda_n_continuous(n) - l < 1.0 && sea.lambda_n_continuous(n) >= l);
        }
        let lf = sea.lambda_f().unwrap().value::<f64>();
        assert!((1.0 + lf * lf - a2).abs() <= 2.0 * lf + 1.0);
    }

    #[test]
    fn flux_periodicity_of_level_set() {
        let d = params(1.3, 0.7, 0.23, 0.0);
        let window = |beta: f64, lo: i64, hi: i64| {
            let d = d.with_beta(beta);
            let mut e: Vec<f64> = (lo..=hi)
                .filter(|t| t.rem_euclid(2) == 1)
                .map(|t| energy_finite(2, h(t), &d).unwrap())
                .collect();
            e.sort_by(f64::total_cmp);
            e
        };
        // λ → λ − 1 maps the window [lo, hi] at β+1 onto [lo−2, hi−2] at β
        let a = window(d.beta + 1.0, -41, 41);
        let b = window(d.beta, -39, 43);
        for (x, y) in a.iter().zip(&b) {
            assert_relative_eq!(x, y, max_relative = 1e-14);
        }
    }

    #[test]
    fn symmetric_at_zero_flux() {
        let d = params(0.7, 0.3, 0.0, 0.0);
        for t in [1, 3, 17, 201] {
            assert_eq!(
                energy_finite(3, h(t), &d).unwrap(),
                energy_finite(3, h(-t), &d).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn enumeration_matches_brute_force(
            nu in 0.05f64..3.0,
            alpha in 0.0f64..12.0,
            beta in -0.4f64..0.4,
            exact in any::<bool>(),
        ) {
            let d = params(1.0, nu, beta, alpha);
            let crit = if exact { SeaCriterion::Exact } else { SeaCriterion::Quadratic };
            let sea = enumerate_fermi_sea(&d, crit).unwrap();
            let n_max = (alpha / nu).ceil() as u32 + 1;
            let twice_max = (2.0 * (alpha + beta.abs() + 1.0)).ceil() as i64 + 2;
            prop_assert_eq!(sea.occupied(), brute_force(&d, exact, n_max, twice_max));
        }

        #[test]
        fn energy_monotone(
            mu in 0.0f64..5.0, nu in 0.01f64..3.0, beta in -0.49f64..0.49,
            n in 1u32..50, t in 0i64..200,
        ) {
            let d = params(mu, nu, beta, 0.0);
            let l = h(2 * t + 1);
            let e = energy_finite(n, l, &d).unwrap();
            prop_assert!(energy_finite(n + 1, l, &d).unwrap() > e);
            // |λ+β| grows when λ moves away from −β
            prop_assert!(energy_finite(n, l.next(), &d).unwrap() > e);
            let lneg = h(-(2 * t + 1));
            prop_assert!(energy_finite(n, lneg.prev(), &d).unwrap() > energy_finite(n, lneg, &d).unwrap());
        }

        #[test]
        fn sea_is_closed_downward(nu in 0.05f64..2.0, alpha in 0.5f64..10.0) {
            let d = params(1.0, nu, 0.0, alpha);
            let sea = enumerate_fermi_sea(&d, SeaCriterion::Quadratic).unwrap();
            for (n, l) in sea.states() {
                prop_assert!(sea.admits(n, l));
                for t in (1..l.abs().twice()).step_by(2) {
                    prop_assert!(sea.contains(n, h(t)) && sea.contains(n, h(-t)));
                }
            }
            for n in 1..=sea.n_f() {
                let ln = sea.lambda_n(n).unwrap();
                prop_assert!(!sea.admits(n, ln.next()));
            }
            prop_assert!(!sea.admits(sea.n_f() + 1, HalfOdd::HALF));
            let n_e: i64 = (1..=sea.n_f()).map(|n| sea.lambda_n(n).unwrap().twice() + 1).sum();
            prop_assert_eq!(n_e as usize, sea.electron_count());
        }

        #[test]
        fn exact_and_quadratic_differ_only_on_the_shell(
            nu in 0.05f64..2.0, alpha in 0.5f64..10.0, beta in -1e-3f64..1e-3,
        ) {
            let d = params(1.0, nu, beta, alpha);
            let ex = enumerate_fermi_sea(&d, SeaCriterion::Exact).unwrap();
            let qu = enumerate_fermi_sea(&d, SeaCriterion::Quadratic).unwrap();
            if beta == 0.0 {
                prop_assert_eq!(ex.occupied(), qu.occupied());
            }
            let a: std::collections::BTreeSet<_> = ex.states().collect();
            let b: std::collections::BTreeSet<_> = qu.states().collect();
            for (n, l) in a.symmetric_difference(&b) {
                let kn = nu * *n as f64;
                let lv = l.value::<f64>();
                prop_assert!(((kn * kn + lv * lv).sqrt() - alpha).abs() <= 2.0 * beta.abs());
            }
        }
    }

    #[test]
    fn exact_sea_with_zero_flux_equals_quadratic() {
        let d = params(1.0, 0.37, 0.0, 7.3);
        assert_eq!(
            enumerate_fermi_sea(&d, SeaCriterion::Exact).unwrap().occupied(),
            enumerate_fermi_sea(&d, SeaCriterion::Quadratic).unwrap().occupied()
        );
    }

    #[test]
    fn single_precision_energies() {
        let d = DimensionlessParams::<f32>::new(3.0, 4.0, 0.5, 0.0).unwrap();
        assert_eq!(energy_finite(1, h(23), &d).unwrap(), 13.0f32);
    }
}
