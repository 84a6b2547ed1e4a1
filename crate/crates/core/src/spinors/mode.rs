//! Closed-form normalized mode spinors.
//!
//! A mode is `ψ_c(t, φ, z) = a_c · Z_c(z) · e^{i m_c φ} · e^{-iEt}` with windings
//! `m = (λ-½, λ+½, λ-½, λ+½)`. With `D = E + M`, `Λ = λ + β` (units of R):
//!
//! ```text
//!              infinite (Z = e^{ikz})           finite (k = k_n = νn)
//! σ = +1/2:    ( 1,  0,   k/D,   iΛ/D )         ( sin,  0,      -ik cos/D, iΛ sin/D )
//! σ = -1/2:    ( 0,  1,  -iΛ/D,  -k/D )         ( 0,    sin,    -iΛ sin/D, ik cos/D )
//! ```
//!
//! with prefactors `sqrt(D/2E)/(2π)` (infinite, momentum-normalized, including
//! the `1/sqrt(2π)` of the plane wave) and `sqrt(D/2E)/sqrt(πL)` (finite).

use crate::error::{Error, Result};
use crate::params::DimensionlessParams;
use crate::scalar::{Complex, Real};
use crate::spectrum::{Longitudinal, ModeSpec, Polarization};
use crate::spinors::gamma::SpinorValue;

/// z-dependence of one component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZProfile<T> {
    Zero,
    Sin(T),
    Cos(T),
    /// `e^{ikz}`.
    Exp(T),
}

impl<T: Real> ZProfile<T> {
    pub fn value(&self, z: T) -> Complex<T> {
        match *self {
            ZProfile::Zero => Complex::new(T::zero(), T::zero()),
            ZProfile::Sin(k) => Complex::new((k * z).sin(), T::zero()),
            ZProfile::Cos(k) => Complex::new((k * z).cos(), T::zero()),
            ZProfile::Exp(k) => Complex::new(T::zero(), k * z).exp(),
        }
    }

    pub fn derivative(&self, z: T) -> Complex<T> {
        match *self {
            ZProfile::Zero => Complex::new(T::zero(), T::zero()),
            ZProfile::Sin(k) => Complex::new(k * (k * z).cos(), T::zero()),
            ZProfile::Cos(k) => Complex::new(-k * (k * z).sin(), T::zero()),
            ZProfile::Exp(k) => Complex::new(T::zero(), k) * Complex::new(T::zero(), k * z).exp(),
        }
    }
}

/// One component `amp · Z(z) · e^{i winding φ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component<T> {
    pub amp: Complex<T>,
    pub profile: ZProfile<T>,
    pub winding: T,
}

impl<T: Real> Component<T> {
    fn z_value(&self, z: T) -> Complex<T> {
        self.amp * self.profile.value(z)
    }

    fn z_derivative(&self, z: T) -> Complex<T> {
        self.amp * self.profile.derivative(z)
    }

    fn phase(&self, phi: T) -> Complex<T> {
        Complex::new(T::zero(), self.winding * phi).exp()
    }
}

/// An evaluated mode: energy, normalization and the four components.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode<T> {
    pub spec: ModeSpec<T>,
    /// `R·E` used in every formula of the mode.
    pub energy: T,
    pub mu: T,
    /// `kR` (`νn` for finite modes).
    pub momentum: T,
    /// `λ + β`.
    pub shift: T,
    /// `L/R` for finite modes.
    pub length: Option<T>,
    pub components: [Component<T>; 4],
}

impl<T: Real> Mode<T> {
    pub fn new(spec: &ModeSpec<T>, d: &DimensionlessParams<T>) -> Result<Self> {
        let energy = spec.energy(d)?;
        Self::with_energy(spec, d, energy)
    }

    /// Builds the functional form with an arbitrary energy. Only the true
    /// energy gives a solution; other values exist to exercise the residual oracle.
    pub fn with_energy(spec: &ModeSpec<T>, d: &DimensionlessParams<T>, energy: T) -> Result<Self> {
        if !(energy > T::zero()) || !energy.is_finite() {
            return Err(Error::InvalidParameter {
                name: "energy",
                reason: format!("mode energy {energy} must be positive and finite"),
            });
        }
        let k = spec.momentum(d)?;
        let lam = spec.lambda.value::<T>();
        let half = T::lit(0.5);
        let shift = lam + d.beta;
        let denom = energy + d.mu;
        let two = T::lit(2.0);
        let spin_factor = (denom / (two * energy)).sqrt();
        let zero = Complex::new(T::zero(), T::zero());
        let re = |x: T| Complex::new(x, T::zero());
        let im = |x: T| Complex::new(T::zero(), x);
        let wind_lo = lam - half;
        let wind_hi = lam + half;

        let (norm, length, comps) = match spec.longitudinal {
            Longitudinal::Momentum(_) => {
                let norm = spin_factor / T::TAU();
                let p = ZProfile::Exp(k);
                let comps = match spec.sigma {
                    Polarization::Up => [
                        (re(T::one()), p),
                        (zero, ZProfile::Zero),
                        (re(k / denom), p),
                        (im(shift / denom), p),
                    ],
                    Polarization::Down => [
                        (zero, ZProfile::Zero),
                        (re(T::one()), p),
                        (im(-shift / denom), p),
                        (re(-k / denom), p),
                    ],
                };
                (norm, None, comps)
            }
            Longitudinal::Level(_) => {
                let length = d.length()?;
                let norm = spin_factor / (T::PI() * length).sqrt();
                let s = ZProfile::Sin(k);
                let c = ZProfile::Cos(k);
                let comps = match spec.sigma {
                    Polarization::Up => [
                        (re(T::one()), s),
                        (zero, ZProfile::Zero),
                        (im(-k / denom), c),
                        (im(shift / denom), s),
                    ],
                    Polarization::Down => [
                        (zero, ZProfile::Zero),
                        (re(T::one()), s),
                        (im(-shift / denom), s),
                        (im(k / denom), c),
                    ],
                };
                (norm, Some(length), comps)
            }
        };
        let windings = [wind_lo, wind_hi, wind_lo, wind_hi];
        let components = [0, 1, 2, 3].map(|i| Component {
            amp: comps[i].0 * norm,
            profile: comps[i].1,
            winding: windings[i],
        });
        Ok(Self {
            spec: *spec,
            energy,
            mu: d.mu,
            momentum: k,
            shift,
            length,
            components,
        })
    }

    fn check_z(&self, z: T) -> Result<()> {
        if let Some(l) = self.length {
            if !(z >= T::zero() && z <= l) {
                return Err(Error::OutsideCylinder {
                    z: z.as_f64(),
                    length: l.as_f64(),
                });
            }
        }
        Ok(())
    }

    /// `(f₁, f₂, g₁, g₂)(z)` including the normalization.
    pub fn z_profile(&self, z: T) -> [Complex<T>; 4] {
        self.components.map(|c| c.z_value(z))
    }

    pub fn z_profile_derivative(&self, z: T) -> [Complex<T>; 4] {
        self.components.map(|c| c.z_derivative(z))
    }

    pub fn windings(&self) -> [T; 4] {
        self.components.map(|c| c.winding)
    }

    /// ψ(t, φ, z).
    pub fn eval(&self, t: T, phi: T, z: T) -> Result<SpinorValue<T>> {
        self.check_z(z)?;
        Ok(self.eval_unchecked(t, phi, z))
    }

    pub(crate) fn eval_unchecked(&self, t: T, phi: T, z: T) -> SpinorValue<T> {
        let time = Complex::new(T::zero(), -self.energy * t).exp();
        SpinorValue::new(self.components.map(|c| c.z_value(z) * c.phase(phi) * time))
    }

    pub(crate) fn d_phi_unchecked(&self, t: T, phi: T, z: T) -> SpinorValue<T> {
        let time = Complex::new(T::zero(), -self.energy * t).exp();
        SpinorValue::new(
            self.components
                .map(|c| c.z_value(z) * c.phase(phi) * Complex::new(T::zero(), c.winding) * time),
        )
    }

    pub(crate) fn d_z_unchecked(&self, t: T, phi: T, z: T) -> SpinorValue<T> {
        let time = Complex::new(T::zero(), -self.energy * t).exp();
        SpinorValue::new(self.components.map(|c| c.z_derivative(z) * c.phase(phi) * time))
    }
}

/// Evaluates one mode at a point.
pub fn eval_mode<T: Real>(
    spec: &ModeSpec<T>,
    d: &DimensionlessParams<T>,
    t: T,
    phi: T,
    z: T,
) -> Result<SpinorValue<T>> {
    Mode::new(spec, d)?.eval(t, phi, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::HalfOdd;

    fn h(t: i64) -> HalfOdd {
        HalfOdd::from_twice(t).unwrap()
    }

    #[test]
    fn finite_mode_boundary_values() {
        let d = DimensionlessParams::new(1.0, 1.0, 0.3, 0.0).unwrap();
        let l = d.length().unwrap();
        for sigma in Polarization::BOTH {
            for n in 1..4 {
                let spec = ModeSpec::finite(n, h(3), sigma).unwrap();
                for z in [0.0, l] {
                    let psi = eval_mode(&spec, &d, 0.4, 1.1, z).unwrap();
                    // every sin(k_n z) factor vanishes
                    for i in [0, 1] {
                        assert!(psi.c[i].norm() < 1e-15);
                    }
                    let (cos_comp, sin_comp) = match sigma {
                        Polarization::Up => (2, 3),
                        Polarization::Down => (3, 2),
                    };
                    assert!(psi.c[sin_comp].norm() < 1e-15);
                    assert!(psi.c[cos_comp].norm() > 1e-3);
                }
            }
        }
    }

    #[test]
    fn up_mode_has_no_second_component() {
        let d = DimensionlessParams::new(2.0, 0.0, 0.1, 0.0).unwrap();
        let spec = ModeSpec::infinite(0.7, h(-5), Polarization::Up);
        for z in [-3.0, 0.0, 2.5] {
            assert_eq!(eval_mode(&spec, &d, 1.0, 0.3, z).unwrap().c[1].norm(), 0.0);
        }
    }

    #[test]
    fn lower_components_vanish_for_heavy_fermions() {
        let mut prev = f64::INFINITY;
        for mu in [1.0, 1e2, 1e4, 1e6] {
            let d = DimensionlessParams::<f64>::new(mu, 0.0, 0.2, 0.0).unwrap();
            let psi = eval_mode(&ModeSpec::infinite(1.3, h(3), Polarization::Up), &d, 0.0, 0.5, 0.2).unwrap();
            let lower = psi.c[2].norm().max(psi.c[3].norm()) / psi.c[0].norm();
            assert!(lower < prev);
            prev = lower;
        }
        assert!(prev < 1e-5);
    }

    #[test]
    fn rejects_points_outside_finite_cylinder() {
        let d = DimensionlessParams::new(1.0, 2.0, 0.0, 0.0).unwrap();
        let spec = ModeSpec::finite(1, h(1), Polarization::Up).unwrap();
        assert!(matches!(
            eval_mode(&spec, &d, 0.0, 0.0, -0.1),
            Err(Error::OutsideCylinder { .. })
        ));
        assert!(eval_mode(&spec, &d, 0.0, 0.0, 2.0).is_err());
    }
}
