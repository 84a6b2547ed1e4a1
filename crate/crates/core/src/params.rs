//! Physical device parameters, the dimensionless groups every formula consumes,
//! regime classification and the `key = value` parameter file.
//!
//! Internally ħ = c = 1 and lengths are measured in units of the cylinder
//! radius R, so the only numbers that reach the physics modules are
//!
//! * `mu    = M R`
//! * `nu    = π R / L` (`0` encodes the infinite cylinder)
//! * `beta  = e B R² / 2`
//! * `alpha = R sqrt(E_F (E_F + 2M))`
//!
//! Only this module and the CLI see physical units.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// ħc in eV·nm (CODATA 2018, exact digits as published).
pub const HBAR_C_EV_NM: f64 = 197.326_980_4;

/// ħ in eV·s (CODATA 2018).
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;

/// e / (2ħ) in nm⁻² T⁻¹: `1 / (2 · 6.582119569e-16 V·s) · 1e-18 m²/nm²`
/// = 7.596_337_235...e-4.
pub const E_OVER_2HBAR_PER_NM2_T: f64 = 0.5 / HBAR_EV_S * 1e-18;

/// Elementary charge in coulomb (exact SI).
pub const ELEMENTARY_CHARGE_C: f64 = 1.602_176_634e-19;

/// Speed of light in m/s (exact SI).
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// Device parameters in laboratory units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams<T> {
    /// Rest energy Mc² in eV.
    pub mass_ev: T,
    pub radius_nm: T,
    /// `None` for the infinite cylinder.
    pub length_nm: Option<T>,
    pub b_field_t: T,
    /// Non-relativistic Fermi energy in eV.
    pub fermi_ev: T,
}

impl<T: Real> PhysicalParams<T> {
    pub fn validate(&self) -> Result<()> {
        positive("mass_eV", self.mass_ev)?;
        positive("radius_nm", self.radius_nm)?;
        if let Some(l) = self.length_nm {
            positive("length_nm", l)?;
        }
        finite("b_field_T", self.b_field_t)?;
        non_negative("fermi_eV", self.fermi_ev)?;
        Ok(())
    }
}

fn finite<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("{v} is not finite"),
        })
    }
}

fn positive<T: Real>(name: &'static str, v: T) -> Result<()> {
    finite(name, v)?;
    if v > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("{v} must be > 0"),
        })
    }
}

fn non_negative<T: Real>(name: &'static str, v: T) -> Result<()> {
    finite(name, v)?;
    if v >= T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("{v} must be >= 0"),
        })
    }
}

/// The dimensionless parameter bundle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams<T> {
    pub mu: T,
    pub nu: T,
    pub beta: T,
    pub alpha: T,
    /// R in natural units (eV⁻¹), when the parameters came from a physical radius.
    pub radius_natural: Option<T>,
}

impl<T: Real> DimensionlessParams<T> {
    /// `mu = 0` is accepted (massless fermions); everything else follows the usual invariants.
    pub fn new(mu: T, nu: T, beta: T, alpha: T) -> Result<Self> {
        non_negative("mu", mu)?;
        non_negative("nu", nu)?;
        finite("beta", beta)?;
        non_negative("alpha", alpha)?;
        Ok(Self {
            mu,
            nu,
            beta,
            alpha,
            radius_natural: None,
        })
    }

    pub fn with_radius_natural(mut self, radius: T) -> Self {
        self.radius_natural = Some(radius);
        self
    }

    pub fn with_beta(mut self, beta: T) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_mu(mut self, mu: T) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_nu(mut self, nu: T) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_alpha(mut self, alpha: T) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn is_infinite(&self) -> bool {
        self.nu == T::zero()
    }

    /// Cylinder length in units of R: `L/R = π/ν`.
    pub fn length(&self) -> Result<T> {
        if self.is_infinite() {
            return Err(Error::InfiniteGeometry);
        }
        Ok(T::PI() / self.nu)
    }

    /// `R·(E_F + M)`, the Fermi level including rest energy, in units of 1/R.
    pub fn fermi_level(&self) -> T {
        (self.mu * self.mu + self.alpha * self.alpha).sqrt()
    }

    pub fn alpha_over_mu(&self) -> T {
        self.alpha / self.mu
    }

    /// Regime classification with the default thresholds.
    pub fn regime(&self) -> RegimeReport<T> {
        validate_regime(self, &RegimeThresholds::default())
    }
}

/// Converts laboratory parameters to the dimensionless groups.
pub fn to_dimensionless<T: Real>(p: &PhysicalParams<T>) -> Result<DimensionlessParams<T>> {
    p.validate()?;
    let hbar_c = T::lit(HBAR_C_EV_NM);
    let radius = p.radius_nm / hbar_c;
    let mu = p.mass_ev * radius;
    let nu = match p.length_nm {
        Some(l) => T::PI() * p.radius_nm / l,
        None => T::zero(),
    };
    let beta = p.b_field_t * p.radius_nm * p.radius_nm * T::lit(E_OVER_2HBAR_PER_NM2_T);
    let alpha = radius * (p.fermi_ev * (p.fermi_ev + T::lit(2.0) * p.mass_ev)).sqrt();
    Ok(DimensionlessParams {
        mu,
        nu,
        beta,
        alpha,
        radius_natural: Some(radius),
    })
}

/// Converts a dimensionless current `R·I` into amperes for a radius in nm:
/// `I = (e c / R) · (R·I)`.
pub fn current_to_amperes(r_times_current: f64, radius_nm: f64) -> f64 {
    ELEMENTARY_CHARGE_C * SPEED_OF_LIGHT_M_S / (radius_nm * 1e-9) * r_times_current
}

/// Numeric thresholds for the qualitative regimes. The defaults are engineering
/// choices: "ν ≫ 1" is read as ν ≥ 10 and "α ≪ μ" as α ≤ μ/10.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds<T> {
    pub short_nu_min: T,
    pub nonrel_alpha_over_mu: T,
}

impl<T: Real> Default for RegimeThresholds<T> {
    fn default() -> Self {
        Self {
            short_nu_min: T::lit(10.0),
            nonrel_alpha_over_mu: T::lit(0.1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    /// ν = 0.
    Infinite,
    /// 1 ≪ ν < α < 2ν: only n = 1 is occupied.
    Short,
    /// ν > α: no longitudinal excitation fits below the Fermi level; ring physics applies.
    RingLike,
    /// α ≪ μ.
    NonRelativistic,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Infinite => "infinite",
            Regime::Short => "short",
            Regime::RingLike => "ring-like",
            Regime::NonRelativistic => "non-relativistic",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport<T> {
    /// Geometric regimes take precedence: `non-relativistic` is only listed when
    /// the cylinder is neither short nor ring-like.
    pub flags: Vec<Regime>,
    /// α ≤ threshold·μ, independent of geometry.
    pub nonrel_applicable: bool,
    pub thresholds: RegimeThresholds<T>,
}

impl<T> RegimeReport<T> {
    pub fn has(&self, r: Regime) -> bool {
        self.flags.contains(&r)
    }
}

pub fn validate_regime<T: Real>(d: &DimensionlessParams<T>, th: &RegimeThresholds<T>) -> RegimeReport<T> {
    let nonrel = d.alpha <= th.nonrel_alpha_over_mu * d.mu;
    let mut flags = Vec::new();
    if d.is_infinite() {
        flags.push(Regime::Infinite);
    } else if d.nu > d.alpha {
        flags.push(Regime::RingLike);
    } else if d.nu >= th.short_nu_min && d.nu < d.alpha && d.alpha < T::lit(2.0) * d.nu {
        flags.push(Regime::Short);
    }
    let geometric = flags.iter().any(|r| matches!(r, Regime::RingLike | Regime::Short));
    if nonrel && !geometric {
        flags.push(Regime::NonRelativistic);
    }
    RegimeReport {
        flags,
        nonrel_applicable: nonrel,
        thresholds: *th,
    }
}

/// Keys accepted in parameter files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamKey {
    MassEv,
    RadiusNm,
    LengthNm,
    BFieldT,
    FermiEv,
    Mu,
    Nu,
    Beta,
    Alpha,
}

impl ParamKey {
    pub const ALL: [ParamKey; 9] = [
        ParamKey::MassEv,
        ParamKey::RadiusNm,
        ParamKey::LengthNm,
        ParamKey::BFieldT,
        ParamKey::FermiEv,
        ParamKey::Mu,
        ParamKey::Nu,
        ParamKey::Beta,
        ParamKey::Alpha,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamKey::MassEv => "mass_eV",
            ParamKey::RadiusNm => "radius_nm",
            ParamKey::LengthNm => "length_nm",
            ParamKey::BFieldT => "b_field_T",
            ParamKey::FermiEv => "fermi_eV",
            ParamKey::Mu => "mu",
            ParamKey::Nu => "nu",
            ParamKey::Beta => "beta",
            ParamKey::Alpha => "alpha",
        }
    }
}

impl FromStr for ParamKey {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ParamKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown key `{s}`"))
    }
}

/// Parsed parameter file (or flag set). Values are kept as given; `resolve`
/// turns them into [`DimensionlessParams`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamConfig {
    values: BTreeMap<ParamKey, f64>,
}

impl ParamConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// UTF-8 `key = value` lines; `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: line_no,
                reason: format!("expected `key = value`, got `{line}`"),
            })?;
            let key: ParamKey = key
                .trim()
                .parse()
                .map_err(|reason| Error::Config { line: line_no, reason })?;
            let value: f64 = value.trim().parse().map_err(|_| Error::Config {
                line: line_no,
                reason: format!("`{}` is not a number", value.trim()),
            })?;
            if !value.is_finite() {
                return Err(Error::Config {
                    line: line_no,
                    reason: format!("`{}` must be finite", key.as_str()),
                });
            }
            if cfg.values.insert(key, value).is_some() {
                return Err(Error::Config {
                    line: line_no,
                    reason: format!("duplicate key `{}`", key.as_str()),
                });
            }
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: ParamKey, value: f64) {
        self.values.insert(key, value);
    }

    pub fn remove(&mut self, key: ParamKey) -> Option<f64> {
        self.values.remove(&key)
    }

    pub fn get(&self, key: ParamKey) -> Option<f64> {
        self.values.get(&key).copied()
    }

    /// Applies `other` on top of `self`; keys in `other` win.
    pub fn overlay(&mut self, other: &ParamConfig) {
        for (&k, &v) in &other.values {
            self.values.insert(k, v);
        }
    }

    /// Resolves to dimensionless parameters. Each of μ, ν, β, α is taken either
    /// from its direct key or from the physical keys, never both. Missing ν, β
    /// and α default to 0 (infinite cylinder, no flux, empty sea); μ is required.
    pub fn resolve<T: Real>(&self) -> Result<DimensionlessParams<T>> {
        use ParamKey::*;
        let conflict = |direct: ParamKey, physical: ParamKey| -> Result<()> {
            if self.get(direct).is_some() && self.get(physical).is_some() {
                return Err(Error::Config {
                    line: 0,
                    reason: format!(
                        "both `{}` and `{}` given for the same quantity",
                        direct.as_str(),
                        physical.as_str()
                    ),
                });
            }
            Ok(())
        };
        conflict(Mu, MassEv)?;
        conflict(Nu, LengthNm)?;
        conflict(Beta, BFieldT)?;
        conflict(Alpha, FermiEv)?;

        let radius_nm = self.get(RadiusNm);
        if let Some(r) = radius_nm {
            positive("radius_nm", r)?;
        }
        let need_radius = |key: ParamKey| -> Result<f64> {
            radius_nm.ok_or_else(|| Error::Config {
                line: 0,
                reason: format!("`{}` requires `radius_nm`", key.as_str()),
            })
        };
        let hbar_c = HBAR_C_EV_NM;

        let mu = match (self.get(Mu), self.get(MassEv)) {
            (Some(mu), _) => mu,
            (None, Some(m)) => {
                positive("mass_eV", m)?;
                m * need_radius(MassEv)? / hbar_c
            }
            (None, None) => {
                return Err(Error::Config {
                    line: 0,
                    reason: "missing `mu` (or `mass_eV` with `radius_nm`)".into(),
                })
            }
        };
        let nu = match (self.get(Nu), self.get(LengthNm)) {
            (Some(nu), _) => nu,
            (None, Some(l)) => {
                positive("length_nm", l)?;
                std::f64::consts::PI * need_radius(LengthNm)? / l
            }
            (None, None) => 0.0,
        };
        let beta = match (self.get(Beta), self.get(BFieldT)) {
            (Some(b), _) => b,
            (None, Some(b)) => {
                let r = need_radius(BFieldT)?;
                b * r * r * E_OVER_2HBAR_PER_NM2_T
            }
            (None, None) => 0.0,
        };
        let alpha = match (self.get(Alpha), self.get(FermiEv)) {
            (Some(a), _) => a,
            (None, Some(ef)) => {
                non_negative("fermi_eV", ef)?;
                let m = self.get(MassEv).ok_or_else(|| Error::Config {
                    line: 0,
                    reason: "`fermi_eV` requires `mass_eV`".into(),
                })?;
                need_radius(FermiEv)? * (ef * (ef + 2.0 * m)).sqrt() / hbar_c
            }
            (None, None) => 0.0,
        };
        let mut d = DimensionlessParams::new(T::lit(mu), T::lit(nu), T::lit(beta), T::lit(alpha))?;
        if let Some(r) = radius_nm {
            d.radius_natural = Some(T::lit(r / hbar_c));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn phys(mass: f64, radius: f64, length: Option<f64>, b: f64, ef: f64) -> PhysicalParams<f64> {
        PhysicalParams {
            mass_ev: mass,
            radius_nm: radius,
            length_nm: length,
            b_field_t: b,
            fermi_ev: ef,
        }
    }

    #[test]
    fn hbar_c_cancels_to_unit_mu() {
        let d = to_dimensionless(&phys(HBAR_C_EV_NM, 1.0, None, 0.0, 0.0)).unwrap();
        assert_eq!(d.mu, 1.0);
        assert_eq!(d.nu, 0.0);
        assert_eq!(d.alpha, 0.0);
        assert!(d.is_infinite());
    }

    #[test]
    fn flux_constant_matches_codata() {
        assert_relative_eq!(E_OVER_2HBAR_PER_NM2_T, 7.596_337_2e-4, max_relative = 1e-8);
        let d = to_dimensionless(&phys(1.0, 10.0, Some(50.0), 2.0, 0.0)).unwrap();
        assert_relative_eq!(d.beta, 2.0 * 100.0 * 7.596_337_235e-4, max_relative = 1e-9);
        assert_relative_eq!(d.nu, std::f64::consts::PI / 5.0, max_relative = 1e-15);
    }

    #[test]
    fn alpha_hand_evaluation() {
        // R·sqrt(E_F(E_F+2M))/ħc with M = 0.511 MeV, R = 100 nm, E_F = 10 meV:
        // E_F(E_F+2M) = 0.01 · 1_022_000.01 = 10220.0001 eV², sqrt = 101.0940210...
        // α = 100 · 101.09402... / 197.3269804 = 51.23172...
        let d = to_dimensionless(&phys(0.511e6, 100.0, None, 0.0, 0.01)).unwrap();
        let by_hand = 100.0 * 10_220.000_1f64.sqrt() / 197.326_980_4;
        assert_relative_eq!(d.alpha, by_hand, max_relative = 1e-14);
        assert_relative_eq!(d.alpha, 51.231_7, max_relative = 1e-5);
        // α = μ sqrt(ε(ε+2))
        let eps: f64 = 0.01 / 0.511e6;
        assert_relative_eq!(d.alpha, d.mu * (eps * (eps + 2.0)).sqrt(), max_relative = 1e-12);
        // and ≃ R sqrt(2 M E_F) within ε/2
        let nr = 100.0 * (2.0 * 0.511e6 * 0.01f64).sqrt() / HBAR_C_EV_NM;
        assert!((d.alpha / nr - 1.0).abs() <= eps / 2.0 + 1e-15);
    }

    #[test]
    fn rejects_invalid_physical_inputs() {
        assert!(to_dimensionless(&phys(0.0, 1.0, None, 0.0, 0.0)).is_err());
        assert!(to_dimensionless(&phys(1.0, -1.0, None, 0.0, 0.0)).is_err());
        assert!(to_dimensionless(&phys(1.0, 1.0, Some(0.0), 0.0, 0.0)).is_err());
        assert!(to_dimensionless(&phys(1.0, 1.0, None, 0.0, -1.0)).is_err());
        assert!(DimensionlessParams::new(1.0, -1.0, 0.0, 0.0).is_err());
        assert!(DimensionlessParams::new(1.0, 1.0, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn monotone_in_each_input() {
        let base = phys(1.0e5, 20.0, Some(100.0), 1.0, 0.05);
        let d0 = to_dimensionless(&base).unwrap();
        let d_mass = to_dimensionless(&PhysicalParams { mass_ev: 1.1e5, ..base }).unwrap();
        let d_len = to_dimensionless(&PhysicalParams {
            length_nm: Some(90.0),
            ..base
        })
        .unwrap();
        let d_b = to_dimensionless(&PhysicalParams { b_field_t: 1.1, ..base }).unwrap();
        let d_ef = to_dimensionless(&PhysicalParams { fermi_ev: 0.06, ..base }).unwrap();
        assert!(d_mass.mu > d0.mu);
        assert!(d_len.nu > d0.nu);
        assert!(d_b.beta > d0.beta);
        assert!(d_ef.alpha > d0.alpha);
    }

    #[test]
    fn regime_examples() {
        let d = |mu, nu, alpha| DimensionlessParams::new(mu, nu, 0.0, alpha).unwrap();
        assert_eq!(d(300.0, 10.0, 15.0).regime().flags, vec![Regime::Short]);
        assert_eq!(d(300.0, 20.0, 15.0).regime().flags, vec![Regime::RingLike]);
        assert_eq!(d(300.0, 1.0, 5.0).regime().flags, vec![Regime::NonRelativistic]);
        assert!(d(300.0, 10.0, 15.0).regime().nonrel_applicable);
        assert_eq!(d(1.0, 1.0, 50.0).regime().flags, vec![]);
        let custom = RegimeThresholds {
            short_nu_min: 5.0,
            nonrel_alpha_over_mu: 0.01,
        };
        let r = validate_regime(&d(300.0, 6.0, 8.0), &custom);
        assert_eq!(r.flags, vec![Regime::Short]);
        assert!(!r.nonrel_applicable);
    }

    #[test]
    fn config_file_round() {
        let text =
            "# device\nmass_eV = 1.0e5\nradius_nm = 20 # comment\nlength_nm=100\n\nb_field_T = 1\nfermi_eV = 0.05\n";
        let cfg = ParamConfig::parse(text).unwrap();
        let d: DimensionlessParams<f64> = cfg.resolve().unwrap();
        let direct = to_dimensionless(&phys(1.0e5, 20.0, Some(100.0), 1.0, 0.05)).unwrap();
        assert_relative_eq!(d.mu, direct.mu, max_relative = 1e-15);
        assert_relative_eq!(d.nu, direct.nu, max_relative = 1e-15);
        assert_relative_eq!(d.beta, direct.beta, max_relative = 1e-15);
        assert_relative_eq!(d.alpha, direct.alpha, max_relative = 1e-15);
        assert_relative_eq!(d.radius_natural.unwrap(), 20.0 / HBAR_C_EV_NM);
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            ParamConfig::parse("mu = 1\nfoo = 2"),
            Err(Error::Config { line: 2, .. })
        ));
        assert!(ParamConfig::parse("mu = x").is_err());
        assert!(ParamConfig::parse("mu = 1\nmu = 2").is_err());
        assert!(ParamConfig::parse("mu 1").is_err());
        let mixed = ParamConfig::parse("mu = 1\nmass_eV = 3\nradius_nm = 1").unwrap();
        assert!(mixed.resolve::<f64>().is_err());
        let no_radius = ParamConfig::parse("mass_eV = 3").unwrap();
        assert!(no_radius.resolve::<f64>().is_err());
        let no_mu = ParamConfig::parse("nu = 1").unwrap();
        assert!(no_mu.resolve::<f64>().is_err());
    }

    #[test]
    fn direct_keys_and_overlay() {
        let mut cfg = ParamConfig::parse("mu = 2\nnu = 0.5\nbeta = 0.1\nalpha = 3").unwrap();
        let mut flags = ParamConfig::new();
        flags.set(ParamKey::Beta, 0.2);
        cfg.overlay(&flags);
        let d: DimensionlessParams<f64> = cfg.resolve().unwrap();
        assert_eq!((d.mu, d.nu, d.beta, d.alpha), (2.0, 0.5, 0.2, 3.0));
        assert_eq!(d.radius_natural, None);
    }
}
