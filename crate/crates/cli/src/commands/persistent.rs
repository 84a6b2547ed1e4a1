use abcyl_core::fermi::persistent;
use abcyl_core::params::current_to_amperes;
use abcyl_core::{Method, PersistentReport, Regime};
use serde_json::{json, Value};

use crate::args::{GlobalArgs, PersistentArgs};
use crate::context::Context;
use crate::error::CliError;
use crate::output::{num, Cell, Report, Table};

struct Outcome {
    method: Method,
    applicable: bool,
    report: Option<PersistentReport>,
    notes: Vec<String>,
}

/// `(a − b)/|b|`, or `None` when `b` vanishes.
fn rel_dev(a: f64, b: f64) -> Option<f64> {
    (b != 0.0).then(|| (a - b) / b.abs())
}

fn opt_num(x: Option<f64>) -> Result<Value, CliError> {
    x.map_or(Ok(Value::Null), num)
}

pub fn run(g: &GlobalArgs, _a: &PersistentArgs) -> Result<Report, CliError> {
    let ctx = Context::load(g, &[])?;
    let d = &ctx.params;
    if d.is_infinite() {
        return Err(CliError::regime("persistent currents need a finite cylinder (nu > 0)"));
    }
    let radius = ctx.physical_radius(g.physical)?;
    let regime = d.regime();

    let mut outcomes = Vec::new();
    for method in Method::ALL {
        let applicable = match method {
            Method::Exact | Method::Linearized | Method::Compact => true,
            Method::Short => regime.has(Regime::Short),
            Method::NonRelativistic => regime.nonrel_applicable,
        };
        let (report, notes) = match persistent(method, d) {
            Ok(r) => {
                let notes = r.notes.clone();
                (Some(r), notes)
            }
            // regime refusals are reported, not fatal
            Err(e @ abcyl_core::Error::Regime(_)) | Err(e @ abcyl_core::Error::InvalidParameter { .. }) => {
                (None, vec![e.to_string()])
            }
            Err(e) => return Err(e.into()),
        };
        outcomes.push(Outcome {
            method,
            applicable,
            report,
            notes,
        });
    }
    let value = |o: &Outcome| o.report.as_ref().map(|r| r.value);

    let mut header = vec!["method", "value"];
    if radius.is_some() {
        header.push("value_A");
    }
    header.extend(["applicable", "electron_count", "n_f", "lambda_f", "c"]);
    let dev_cols: Vec<String> = Method::ALL.iter().map(|m| format!("rel_dev_{}", m.as_str())).collect();
    header.extend(dev_cols.iter().map(String::as_str));
    header.push("notes");
    let mut table = Table::new(&header);

    let mut methods_json = Vec::new();
    let mut deviations = Vec::new();
    for (i, o) in outcomes.iter().enumerate() {
        let v = value(o);
        let r = o.report.as_ref();
        let mut row = vec![Cell::from(o.method.as_str()), v.into()];
        if let Some(rad) = radius {
            row.push(v.map(|x| current_to_amperes(x, rad)).into());
        }
        row.push(Cell::Int(o.applicable as i64));
        row.push(r.map_or(Cell::Empty, |r| Cell::Int(r.electron_count as i64)));
        row.push(r.map_or(Cell::Empty, |r| Cell::Int(r.n_f as i64)));
        row.push(r.and_then(|r| r.lambda_f).map(|l| l.value::<f64>()).into());
        row.push(r.and_then(|r| r.c).into());
        for (j, other) in outcomes.iter().enumerate() {
            let dev = match (v, value(other)) {
                (Some(a), Some(b)) if i != j => rel_dev(a, b),
                _ => None,
            };
            row.push(dev.into());
            if let (Some(dv), true) = (dev, i < j) {
                deviations.push(json!({
                    "a": o.method.as_str(),
                    "b": other.method.as_str(),
                    "rel_dev": num(dv)?,
                }));
            }
        }
        row.push(Cell::Text(o.notes.join("; ")));
        table.push(row);

        let mut extras = serde_json::Map::new();
        if let Some(r) = r {
            for (k, x) in &r.extras {
                extras.insert(k.to_string(), num(*x)?);
            }
        }
        let mut m = json!({
            "method": o.method.as_str(),
            "applicable": o.applicable,
            "value": opt_num(v)?,
            "electron_count": r.map(|r| r.electron_count),
            "n_f": r.map(|r| r.n_f),
            "lambda_f": opt_num(r.and_then(|r| r.lambda_f).map(|l| l.value::<f64>()))?,
            "c": opt_num(r.and_then(|r| r.c))?,
            "sum_lambda_n": opt_num(r.and_then(|r| r.sum_lambda_n))?,
            "extras": extras,
            "notes": o.notes,
        });
        if let Some(rad) = radius {
            m["value_A"] = opt_num(v.map(|x| current_to_amperes(x, rad)))?;
        }
        methods_json.push(m);
    }

    let exact = outcomes[0].report.as_ref().expect("exact method always runs");
    let mut warnings = Vec::new();
    if exact.electron_count == 0 {
        warnings.push("empty Fermi sea");
    }
    let json = json!({
        "schema_version": crate::output::SCHEMA_VERSION,
        "command": "persistent",
        "params": ctx.params_json()?,
        "regime": regime.flags.iter().map(|r| r.as_str()).collect::<Vec<_>>(),
        "electron_count": exact.electron_count,
        "n_f": exact.n_f,
        "lambda_f": opt_num(exact.lambda_f.map(|l| l.value::<f64>()))?,
        "warnings": warnings,
        "methods": methods_json,
        "deviations": deviations,
    });
    Ok(Report { table, json })
}
