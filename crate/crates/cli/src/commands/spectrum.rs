use std::f64::consts::TAU;

use abcyl_core::currents::chi;
use abcyl_core::params::current_to_amperes;
use abcyl_core::spectrum::{energy_finite, energy_infinite};
use abcyl_core::{HalfOdd, ParamKey};

use crate::args::{Geometry, GlobalArgs, SpectrumArgs};
use crate::context::Context;
use crate::error::CliError;
use crate::output::{Cell, Report, Table};

struct Row {
    label: f64,
    lambda: HalfOdd,
    energy: f64,
    chi: f64,
    current: Option<f64>,
}

pub fn run(g: &GlobalArgs, a: &SpectrumArgs) -> Result<Report, CliError> {
    let mut defaults = Vec::new();
    if a.geometry == Geometry::Infinite {
        defaults.push((ParamKey::Nu, 0.0));
    }
    let mut ctx = Context::load(g, &defaults)?;
    if a.geometry == Geometry::Infinite {
        if g.params.nu.is_some_and(|nu| nu != 0.0) {
            return Err(CliError::regime("--geometry infinite contradicts a nonzero --nu"));
        }
        ctx.params = ctx.params.with_nu(0.0);
    } else if ctx.params.is_infinite() {
        return Err(CliError::regime(
            "finite geometry needs nu > 0 (use --geometry infinite)",
        ));
    }
    if a.nmax == 0 {
        return Err(CliError::config("--nmax must be at least 1"));
    }
    let radius = ctx.physical_radius(g.physical)?;
    let d = &ctx.params;

    let lambdas: Vec<HalfOdd> = match a.lambda {
        Some(l) => vec![l],
        None => {
            if !a.lmax.is_positive() {
                return Err(CliError::config("--lmax must be positive"));
            }
            HalfOdd::range_inclusive(-a.lmax, a.lmax).collect()
        }
    };

    let mut rows = Vec::new();
    match a.geometry {
        Geometry::Finite => {
            for n in 1..=a.nmax {
                for &l in &lambdas {
                    let c = chi(n, l, d)?;
                    rows.push(Row {
                        label: n as f64,
                        lambda: l,
                        energy: energy_finite(n, l, d)?,
                        chi: c,
                        current: Some(c / TAU),
                    });
                }
            }
        }
        Geometry::Infinite => {
            if !a.k.is_finite() {
                return Err(CliError::config("--k must be finite"));
            }
            for &l in &lambdas {
                let e = energy_infinite(a.k, l, d);
                // no finite-length circular current per mode on the infinite cylinder
                rows.push(Row {
                    label: a.k,
                    lambda: l,
                    energy: e,
                    chi: (l.value::<f64>() + d.beta) / e,
                    current: None,
                });
            }
        }
    }
    rows.sort_by(|x, y| x.energy.total_cmp(&y.energy));

    let first = match a.geometry {
        Geometry::Finite => "n",
        Geometry::Infinite => "k",
    };
    let mut header = vec![first, "lambda", "energy", "chi", "current"];
    if radius.is_some() {
        header.push("current_A");
    }
    let mut table = Table::new(&header);
    for r in rows {
        let label = match a.geometry {
            Geometry::Finite => Cell::Int(r.label as i64),
            Geometry::Infinite => Cell::Num(r.label),
        };
        let mut row = vec![
            label,
            Cell::Num(r.lambda.value()),
            Cell::Num(r.energy),
            Cell::Num(r.chi),
            r.current.into(),
        ];
        if let Some(rad) = radius {
            row.push(r.current.map(|c| current_to_amperes(c, rad)).into());
        }
        table.push(row);
    }
    let mut params = ctx.params_json()?;
    params["geometry"] = first.into();
    Report::from_table("spectrum", params, table)
}
