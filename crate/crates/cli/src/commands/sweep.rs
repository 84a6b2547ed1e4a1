use std::f64::consts::TAU;

use abcyl_core::currents::chi;
use abcyl_core::fermi::{c_coefficient_exact, j_coeff, persistent};
use abcyl_core::spectrum::{energy_finite, enumerate_fermi_sea};
use abcyl_core::{HalfOdd, Method, Params, SeaCriterion};
use rayon::prelude::*;
use serde_json::json;

use crate::args::{GlobalArgs, Observable, Scale, SweepArgs, SweepParam};
use crate::context::Context;
use crate::error::CliError;
use crate::output::{Cell, Report, Table};

#[derive(Debug, Clone, Copy)]
enum Point {
    Continuous(f64),
    Lambda(HalfOdd),
    Level(u32),
}

impl Point {
    fn cell(self) -> Cell {
        match self {
            Point::Continuous(x) => Cell::Num(x),
            Point::Lambda(l) => Cell::Num(l.value()),
            Point::Level(n) => Cell::Int(n as i64),
        }
    }
}

fn param_name(p: SweepParam) -> &'static str {
    match p {
        SweepParam::Beta => "beta",
        SweepParam::Mu => "mu",
        SweepParam::Nu => "nu",
        SweepParam::Alpha => "alpha",
        SweepParam::Lambda => "lambda",
        SweepParam::N => "n",
    }
}

fn observable_name(o: Observable) -> &'static str {
    match o {
        Observable::Chi => "chi",
        Observable::Energy => "energy",
        Observable::Current => "current",
        Observable::J => "j",
        Observable::C => "c",
        Observable::Electrons => "electrons",
        Observable::PersistentExact => "persistent_exact",
        Observable::PersistentLinearized => "persistent_linearized",
        Observable::PersistentCompact => "persistent_compact",
        Observable::PersistentShort => "persistent_short",
        Observable::PersistentNonrel => "persistent_nonrel",
    }
}

fn number(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| CliError::config(format!("--{what} `{s}` is not a finite number")))
}

fn points(a: &SweepArgs) -> Result<Vec<Point>, CliError> {
    match a.param {
        SweepParam::Lambda => {
            let lo: HalfOdd = a.start.parse()?;
            let hi: HalfOdd = a.stop.parse()?;
            if hi <= lo {
                return Err(CliError::config("sweep needs stop > start"));
            }
            Ok(HalfOdd::range_inclusive(lo, hi).map(Point::Lambda).collect())
        }
        SweepParam::N => {
            let parse = |s: &str| {
                s.trim()
                    .parse::<u32>()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| CliError::config(format!("level `{s}` is not a positive integer")))
            };
            let (lo, hi) = (parse(&a.start)?, parse(&a.stop)?);
            if hi <= lo {
                return Err(CliError::config("sweep needs stop > start"));
            }
            Ok((lo..=hi).map(Point::Level).collect())
        }
        _ => {
            let (lo, hi) = (number(&a.start, "start")?, number(&a.stop, "stop")?);
            let steps = a
                .steps
                .ok_or_else(|| CliError::config("continuous sweeps need --steps"))?;
            if steps < 2 {
                return Err(CliError::config("sweep needs steps >= 2"));
            }
            if hi <= lo {
                return Err(CliError::config("sweep needs stop > start"));
            }
            let last = (steps - 1) as f64;
            Ok(match a.scale {
                Scale::Linear => (0..steps)
                    .map(|i| Point::Continuous(lo + (hi - lo) * i as f64 / last))
                    .collect(),
                Scale::Log => {
                    if lo <= 0.0 {
                        return Err(CliError::config("log sweeps need start > 0"));
                    }
                    let (a, b) = (lo.ln(), hi.ln());
                    (0..steps)
                        .map(|i| Point::Continuous((a + (b - a) * i as f64 / last).exp()))
                        .collect()
                }
            })
        }
    }
}

fn with_param(base: &Params, p: SweepParam, x: f64) -> Result<Params, CliError> {
    let (mut mu, mut nu, mut beta, mut alpha) = (base.mu, base.nu, base.beta, base.alpha);
    match p {
        SweepParam::Beta => beta = x,
        SweepParam::Mu => mu = x,
        SweepParam::Nu => nu = x,
        SweepParam::Alpha => alpha = x,
        SweepParam::Lambda | SweepParam::N => {}
    }
    let mut d = Params::new(mu, nu, beta, alpha)?;
    d.radius_natural = base.radius_natural;
    Ok(d)
}

fn evaluate(o: Observable, n: u32, lambda: HalfOdd, d: &Params) -> Result<f64, CliError> {
    let method = |m: Method| -> Result<f64, CliError> { Ok(persistent(m, d)?.value) };
    Ok(match o {
        Observable::Chi => chi(n, lambda, d)?,
        Observable::Energy => energy_finite(n, lambda, d)?,
        Observable::Current => chi(n, lambda, d)? / TAU,
        Observable::J => j_coeff(n, lambda, d)?,
        Observable::C => c_coefficient_exact(d)?,
        Observable::Electrons => enumerate_fermi_sea(d, SeaCriterion::Exact)?.electron_count() as f64,
        Observable::PersistentExact => method(Method::Exact)?,
        Observable::PersistentLinearized => method(Method::Linearized)?,
        Observable::PersistentCompact => method(Method::Compact)?,
        Observable::PersistentShort => method(Method::Short)?,
        Observable::PersistentNonrel => method(Method::NonRelativistic)?,
    })
}

pub fn run(g: &GlobalArgs, a: &SweepArgs) -> Result<Report, CliError> {
    let ctx = Context::load(g, &[])?;
    if a.n == 0 {
        return Err(CliError::config("--n must be at least 1"));
    }
    let pts = points(a)?;
    let base = ctx.params;
    let results: Vec<Result<f64, CliError>> = pts
        .par_iter()
        .map(|&p| match p {
            Point::Continuous(x) => evaluate(a.observable, a.n, a.lambda, &with_param(&base, a.param, x)?),
            Point::Lambda(l) => evaluate(a.observable, a.n, l, &base),
            Point::Level(n) => evaluate(a.observable, n, a.lambda, &base),
        })
        .collect();

    let mut table = Table::new(&[param_name(a.param), observable_name(a.observable)]);
    for (p, r) in pts.into_iter().zip(results) {
        table.push(vec![p.cell(), Cell::Num(r?)]);
    }
    let mut params = ctx.params_json()?;
    params["sweep"] = json!({
        "param": param_name(a.param),
        "observable": observable_name(a.observable),
        "n": a.n,
        "lambda": a.lambda.value::<f64>(),
    });
    Report::from_table("sweep", params, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::Cli;
    use crate::args::Command;
    use clap::Parser;

    fn sweep_args(argv: &[&str]) -> SweepArgs {
        let mut full = vec!["abcyl", "sweep"];
        full.extend_from_slice(argv);
        match Cli::parse_from(full).command {
            Command::Sweep(s) => s,
            _ => unreachable!(),
        }
    }

    #[test]
    fn log_grid_hits_endpoints() {
        let a = sweep_args(&[
            "--param", "beta", "--start", "1e-3", "--stop", "1", "--steps", "4", "--scale", "log",
        ]);
        let p = points(&a).unwrap();
        let xs: Vec<f64> = p
            .iter()
            .map(|p| match p {
                Point::Continuous(x) => *x,
                _ => unreachable!(),
            })
            .collect();
        assert!((xs[0] - 1e-3).abs() < 1e-15 && (xs[3] - 1.0).abs() < 1e-12);
        assert!((xs[1] - 1e-2).abs() < 1e-14);
    }

    #[test]
    fn half_odd_range() {
        let a = sweep_args(&["--param", "lambda", "--start", "-3/2", "--stop", "1/2"]);
        assert_eq!(points(&a).unwrap().len(), 3);
    }

    #[test]
    fn bad_ranges_are_config_errors() {
        for argv in [
            &["--param", "beta", "--start", "1", "--stop", "0", "--steps", "3"][..],
            &["--param", "beta", "--start", "0", "--stop", "1", "--steps", "1"][..],
            &["--param", "beta", "--start", "0", "--stop", "1"][..],
            &[
                "--param", "nu", "--start", "0", "--stop", "1", "--steps", "3", "--scale", "log",
            ][..],
            &["--param", "lambda", "--start", "1", "--stop", "3/2"][..],
        ] {
            assert_eq!(points(&sweep_args(argv)).unwrap_err().code, 2);
        }
    }
}
