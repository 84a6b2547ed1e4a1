use std::fs;

use abcyl_core::{ParamConfig, ParamKey, Params};
use serde_json::{json, Value};

use crate::args::{GlobalArgs, ParamFlags};
use crate::error::CliError;
use crate::output::num;

/// Direct key and the physical key that would also determine it.
const PAIRS: [(ParamKey, ParamKey); 4] = [
    (ParamKey::Mu, ParamKey::MassEv),
    (ParamKey::Nu, ParamKey::LengthNm),
    (ParamKey::Beta, ParamKey::BFieldT),
    (ParamKey::Alpha, ParamKey::FermiEv),
];

/// Parameters after the config file, defaults and flags have been merged.
pub struct Context {
    pub config: ParamConfig,
    pub params: Params,
}

impl ParamFlags {
    fn to_config(&self) -> Result<ParamConfig, CliError> {
        let mut cfg = ParamConfig::new();
        let entries = [
            (ParamKey::Mu, self.mu),
            (ParamKey::Nu, self.nu),
            (ParamKey::Beta, self.beta),
            (ParamKey::Alpha, self.alpha),
            (ParamKey::MassEv, self.mass_ev),
            (ParamKey::RadiusNm, self.radius_nm),
            (ParamKey::LengthNm, self.length_nm),
            (ParamKey::BFieldT, self.b_field_t),
            (ParamKey::FermiEv, self.fermi_ev),
        ];
        for (k, v) in entries {
            if let Some(v) = v {
                if !v.is_finite() {
                    return Err(CliError::config(format!("`{}` must be finite", k.as_str())));
                }
                cfg.set(k, v);
            }
        }
        Ok(cfg)
    }
}

/// Merges `defaults`, then the config file, then flags. A flag for one key of a
/// direct/physical pair displaces the other key from the lower layers.
pub fn load_config(global: &GlobalArgs, defaults: &[(ParamKey, f64)]) -> Result<ParamConfig, CliError> {
    let mut cfg = ParamConfig::new();
    for &(k, v) in defaults {
        cfg.set(k, v);
    }
    if let Some(path) = &global.config {
        let text =
            fs::read_to_string(path).map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        let file = ParamConfig::parse(&text)?;
        displace(&mut cfg, &file);
        cfg.overlay(&file);
    }
    let flags = global.params.to_config()?;
    displace(&mut cfg, &flags);
    cfg.overlay(&flags);
    Ok(cfg)
}

fn displace(base: &mut ParamConfig, top: &ParamConfig) {
    for (direct, physical) in PAIRS {
        if top.get(direct).is_some() {
            base.remove(physical);
        }
        if top.get(physical).is_some() {
            base.remove(direct);
        }
    }
}

impl Context {
    pub fn load(global: &GlobalArgs, defaults: &[(ParamKey, f64)]) -> Result<Self, CliError> {
        let config = load_config(global, defaults)?;
        let params = config.resolve::<f64>()?;
        Ok(Self { config, params })
    }

    pub fn radius_nm(&self) -> Option<f64> {
        self.config.get(ParamKey::RadiusNm)
    }

    /// Radius for `--physical`, or a config error when it is missing.
    pub fn physical_radius(&self, physical: bool) -> Result<Option<f64>, CliError> {
        if !physical {
            return Ok(None);
        }
        self.radius_nm()
            .map(Some)
            .ok_or_else(|| CliError::config("--physical needs `radius_nm`"))
    }

    pub fn params_json(&self) -> Result<Value, CliError> {
        let d = &self.params;
        let mut v = json!({
            "mu": num(d.mu)?,
            "nu": num(d.nu)?,
            "beta": num(d.beta)?,
            "alpha": num(d.alpha)?,
        });
        if let Some(r) = self.radius_nm() {
            v["radius_nm"] = num(r)?;
        }
        Ok(v)
    }
}
