//! Radius sweeps with comparison columns.

use bohr_core::radii::{radius, solve, RadiusSolution};
use bohr_core::{RadiusQuery, Theorem};
use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::output::{csv_writer, num, print_json, CliError, CliResult};
use crate::{echo, parse_theorem, Format, IndexArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    A0,
    N,
    P,
    M,
}

#[derive(Args, Debug, Serialize)]
pub struct TableArgs {
    /// Variant id to sweep.
    #[arg(long)]
    sweep: String,
    #[arg(long, value_enum)]
    param: SweepParam,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    step: f64,
    /// Fixed indices for the parameters not swept.
    #[command(flatten)]
    #[serde(flatten)]
    index: IndexArgs,
    /// Fixed head modulus when sweeping an index.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a0: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Sweep points `from + k step`, inclusive of `to` up to rounding.
fn points(from: f64, to: f64, step: f64) -> CliResult<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !from.is_finite() || !to.is_finite() || to < from {
        return Err(CliError::Usage(format!(
            "bad sweep range {from}..{to} step {step}"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(CliError::Usage(format!("sweep of {count} points is too long")));
    }
    Ok((0..count).map(|k| from + k as f64 * step).collect())
}

fn index_value(x: f64) -> CliResult<usize> {
    if x < 0.0 || x.fract().abs() > 1e-9 {
        return Err(CliError::Usage(format!(
            "index value {x} is not a nonnegative integer"
        )));
    }
    Ok(x.round() as usize)
}

/// Reference columns printed next to the radius of `q`.
fn comparisons(q: &RadiusQuery) -> CliResult<Vec<(&'static str, f64)>> {
    let a = q.a();
    let p = q.p() as f64;
    let cols = match q.theorem {
        Theorem::Thm2 => vec![
            ("sqrt5_minus_2", 5f64.sqrt() - 2.0),
            ("one_over_two_plus_a", 1.0 / (2.0 + a)),
        ],
        Theorem::Thm2Sq => vec![("one_third", 1.0 / 3.0), ("one_over_two_plus_a", 1.0 / (2.0 + a))],
        Theorem::Thm3 => vec![("two_plus_a_root", (2.0 + a).powf(-1.0 / p))],
        Theorem::Cor2A => vec![("three_fifths_root", 0.6f64.powf(1.0 / p))],
        Theorem::Thm1R => vec![(
            "thmc_radius",
            radius(&RadiusQuery::simple(Theorem::ThmCR).with_n(q.n()))?,
        )],
        Theorem::Thm1Rsq => vec![(
            "thmc_radius",
            radius(&RadiusQuery::simple(Theorem::ThmCRsq).with_n(q.n()))?,
        )],
        Theorem::ThmBModulus => vec![("one_third", 1.0 / 3.0)],
        _ => Vec::new(),
    };
    Ok(cols)
}

/// Sweep value, query, solution and comparison columns.
type Row = (f64, RadiusQuery, RadiusSolution, Vec<(&'static str, f64)>);

pub fn cmd_table(args: &TableArgs) -> CliResult {
    let theorem = parse_theorem(&args.sweep)?;
    let xs = points(args.from, args.to, args.step)?;
    let mut rows: Vec<Row> = Vec::new();
    for x in xs {
        let mut params = args.index.params(args.a0);
        match args.param {
            SweepParam::A0 => params.a = Some(x),
            SweepParam::N => params.n = Some(index_value(x)?),
            SweepParam::P => params.p = Some(index_value(x)?),
            SweepParam::M => params.m = Some(index_value(x)?),
        }
        let q = RadiusQuery::new(theorem, params)?;
        let sol = solve(&q)?;
        rows.push((x, q, sol, comparisons(&q)?));
    }
    let extra: Vec<&str> = rows
        .first()
        .map(|r| r.3.iter().map(|c| c.0).collect())
        .unwrap_or_default();
    match args.format {
        Format::Csv => {
            let mut w = csv_writer();
            let mut header = vec!["param", "radius", "residual"];
            header.extend(&extra);
            w.write_record(&header)?;
            for (x, _, sol, cols) in &rows {
                let param = if args.param == SweepParam::A0 {
                    num(*x)
                } else {
                    format!("{}", x.round())
                };
                let mut rec = vec![param, num(sol.radius), num(sol.residual)];
                rec.extend(cols.iter().map(|c| num(c.1)));
                w.write_record(&rec)?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Json => {
            let out: Vec<Value> = rows
                .iter()
                .map(|(x, q, sol, cols)| {
                    let mut m = Map::new();
                    m.insert("param".into(), json!(x));
                    m.insert("label".into(), json!(q.label()));
                    m.insert("radius".into(), json!(sol.radius));
                    m.insert("residual".into(), json!(sol.residual));
                    for (name, v) in cols {
                        m.insert((*name).into(), json!(v));
                    }
                    Value::Object(m)
                })
                .collect();
            let command = echo("table", args, json!({}))?;
            print_json(&command, &json!({ "rows": out }))
        }
    }
}
