use abcyl_core::currents::{
    circular_current_packet, longitudinal_current_packet_direct, longitudinal_current_packet_formula, packet_energy,
    packet_polarization, packet_z_integrals, MomentumRule,
};
use abcyl_core::{Complex, PacketSpec};
use serde_json::json;

use crate::args::{GlobalArgs, PacketArgs};
use crate::context::Context;
use crate::error::CliError;
use crate::output::{Cell, Report, Table};

/// Parses `re` or `re,im`.
pub fn parse_weight(s: &str) -> Result<Complex<f64>, CliError> {
    let bad = || CliError::config(format!("mixing weight `{s}` is not `re` or `re,im`"));
    let mut parts = s.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(p) => p.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex::new(re, im))
}

fn z_grid(a: &PacketArgs) -> Result<Vec<f64>, CliError> {
    if a.zsteps == 0 || !(a.zmin.is_finite() && a.zmax.is_finite()) || a.zmax < a.zmin {
        return Err(CliError::config("need zsteps >= 1 and finite zmin <= zmax"));
    }
    if a.zsteps == 1 {
        return Ok(vec![a.zmin]);
    }
    let h = (a.zmax - a.zmin) / (a.zsteps - 1) as f64;
    Ok((0..a.zsteps).map(|i| a.zmin + h * i as f64).collect())
}

pub fn run(g: &GlobalArgs, a: &PacketArgs) -> Result<Report, CliError> {
    let ctx = Context::load(g, &[])?;
    let d = &ctx.params;
    if !d.is_infinite() {
        return Err(CliError::regime("packets live on the infinite cylinder (nu = 0)"));
    }
    if a.width.is_nan() || a.width <= 0.0 || !a.k0.is_finite() || !a.t.is_finite() {
        return Err(CliError::config("need finite --k0, --t and --width > 0"));
    }
    if a.k_panels == 0 || a.window.is_nan() || a.window <= 0.0 {
        return Err(CliError::config("need --k-panels >= 1 and --window > 0"));
    }
    let zs = z_grid(a)?;
    let mut spec = PacketSpec::gaussian(
        a.lambda,
        a.k0,
        a.width,
        parse_weight(&a.mix_plus)?,
        parse_weight(&a.mix_minus)?,
    );
    if a.normalize {
        spec = spec.normalized();
    }
    let rule = MomentumRule {
        window: a.window,
        panels: a.k_panels,
        order: g.quad_order.unwrap_or(16),
    };

    let mut table = Table::new(&["quantity", "z", "value"]);
    let mut direct = Vec::with_capacity(zs.len());
    let mut formula = Vec::with_capacity(zs.len());
    for &z in &zs {
        direct.push(longitudinal_current_packet_direct(&spec, d, a.t, z, &rule)?);
        formula.push(longitudinal_current_packet_formula(&spec, d, a.t, z, &rule)?);
    }
    for (&z, &v) in zs.iter().zip(&direct) {
        table.push(vec!["i3_direct".into(), z.into(), v.into()]);
    }
    for (&z, &v) in zs.iter().zip(&formula) {
        table.push(vec!["i3_formula".into(), z.into(), v.into()]);
    }
    for ((&z, &x), &y) in zs.iter().zip(&direct).zip(&formula) {
        table.push(vec!["i3_difference".into(), z.into(), (y - x).into()]);
    }
    let norm = packet_z_integrals(&spec, d, a.t, None, &rule)?.norm;
    let scalars = [
        ("circular_current", circular_current_packet(&spec, d, &rule)?),
        ("energy", packet_energy(&spec, d, &rule)?),
        ("polarization", packet_polarization(&spec, &rule)?),
        ("norm", norm),
    ];
    for (name, v) in scalars {
        table.push(vec![name.into(), Cell::Empty, v.into()]);
    }

    let mut params = ctx.params_json()?;
    params["packet"] = json!({
        "lambda": a.lambda.value::<f64>(),
        "k0": a.k0,
        "width": a.width,
        "mix_plus": a.mix_plus,
        "mix_minus": a.mix_minus,
        "t": a.t,
    });
    Report::from_table("packet", params, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_parse() {
        assert_eq!(parse_weight("0.6").unwrap(), Complex::new(0.6, 0.0));
        assert_eq!(parse_weight("0,-0.8").unwrap(), Complex::new(0.0, -0.8));
        assert!(parse_weight("1,2,3").is_err());
        assert!(parse_weight("x").is_err());
    }
}
