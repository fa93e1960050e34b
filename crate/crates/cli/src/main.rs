//! `bohr`: radii, functional values, verification campaigns and sharpness
//! certificates for refined Bohr-type inequalities.
//!
//! Exit codes: 0 success, 1 inequality failure or no witness, 2 usage error,
//! 3 solver error.

mod output;
mod table;

use std::process::ExitCode;

use bohr_core::bounds::SLACK;
use bohr_core::certify::{
    remark_thm4_counterexample, scan_constant, scan_sharpness, threshold_a, DEFAULT_A_GRID, DEFAULT_EPS_GRID,
    DEFAULT_INFLATION, WITNESS_MARGIN,
};
use bohr_core::functionals::{evaluate, PointMode};
use bohr_core::radii::{equation, solve};
use bohr_core::verify::{self, VerifyConfig};
use bohr_core::{Params, Profile, RadiusQuery, Recipe, Theorem};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use output::{csv_writer, num, print_json, CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "bohr",
    version,
    about = "Refined Bohr-type inequalities on the Schur class"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Radius of one inequality variant.
    Radius(RadiusArgs),
    /// Seeded Monte Carlo verification.
    Verify(VerifyArgs),
    /// Sharpness certificate from the extremal family.
    Sharpness(SharpnessArgs),
    /// Radius sweep over one parameter.
    Table(table::TableArgs),
    /// Draw a sampled Schur function.
    Sample(SampleArgs),
    /// Evaluate a left-hand side on a recipe.
    Eval(EvalArgs),
    /// The identity map against the squared-head refined area form at r = 1/2.
    Remark(RemarkArgs),
    /// Head threshold of the distance variants.
    Threshold(ThresholdArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Json,
    Csv,
}

/// Index parameters shared by the subcommands.
#[derive(Args, Debug, Clone, Copy, Serialize)]
struct IndexArgs {
    /// Rogosinski index N.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    /// Symmetry order p.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    /// Offset m, 0 <= m <= p.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
}

impl IndexArgs {
    fn params(&self, a: Option<f64>) -> Params {
        Params {
            n: self.n,
            p: self.p,
            m: self.m,
            a,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct RadiusArgs {
    #[arg(long)]
    theorem: String,
    #[command(flatten)]
    #[serde(flatten)]
    index: IndexArgs,
    /// Head modulus |a_0|.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a0: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// Variant id, `lemmas` for the lemma oracles, or `all` for every variant.
    #[arg(long)]
    theorem: String,
    #[command(flatten)]
    #[serde(flatten)]
    index: IndexArgs,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Series order K.
    #[arg(long, env = "BOHR_DEFAULT_ORDER", default_value_t = bohr_core::DEFAULT_ORDER)]
    order: usize,
    /// Pin r to the radius.
    #[arg(long)]
    edge: bool,
    /// Always evaluate point terms on the angle grid.
    #[arg(long)]
    grid: bool,
    #[arg(long, default_value_t = 128)]
    grid_points: usize,
    /// Do not restrict samples to the claimed head range.
    #[arg(long)]
    no_filter: bool,
    /// Record wall-clock time (reports are then no longer reproducible).
    #[arg(long)]
    timing: bool,
    /// Evaluate a single recipe instead of sampling.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    replay: Option<String>,
    /// Radius for --replay; defaults to the radius of the recipe.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct SharpnessArgs {
    /// Variant id, or `thm4-lambda-first`, `thm4-lambda-second`,
    /// `thme-lambda-first`, `thme-lambda-second` for the area weights.
    #[arg(long)]
    theorem: String,
    #[command(flatten)]
    #[serde(flatten)]
    index: IndexArgs,
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    a_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    eps_grid: Option<Vec<f64>>,
}

#[derive(Args, Debug, Serialize)]
struct SampleArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// blaschke, schur-params or convex.
    #[arg(long, default_value = "blaschke")]
    profile: String,
    /// Draw index within the seed.
    #[arg(long, default_value_t = 0)]
    index: u64,
    #[arg(long, env = "BOHR_DEFAULT_ORDER", default_value_t = bohr_core::DEFAULT_ORDER)]
    order: usize,
    /// Number of coefficients printed.
    #[arg(long, default_value_t = 16)]
    coefficients: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct EvalArgs {
    #[arg(long)]
    theorem: String,
    #[command(flatten)]
    #[serde(flatten)]
    index: IndexArgs,
    /// Recipe text, as printed by `sample`.
    #[arg(long)]
    recipe: String,
    /// Radius; defaults to the radius at |a_0| of the recipe.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    #[arg(long, env = "BOHR_DEFAULT_ORDER", default_value_t = bohr_core::DEFAULT_ORDER)]
    order: usize,
    #[arg(long)]
    grid: bool,
    #[arg(long, default_value_t = 128)]
    grid_points: usize,
}

#[derive(Args, Debug, Serialize)]
struct RemarkArgs {
    /// Area weights to test; repeatable.
    #[arg(long, required = true, value_delimiter = ',')]
    c: Vec<f64>,
}

#[derive(Args, Debug, Serialize)]
struct ThresholdArgs {
    /// thm6-g or thm6-h.
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    r: f64,
}

fn parse_theorem(id: &str) -> CliResult<Theorem> {
    id.parse().map_err(CliError::from)
}

fn echo<T: Serialize>(name: &str, args: &T, defaults: Value) -> CliResult<Value> {
    Ok(json!({ "name": name, "args": serde_json::to_value(args)?, "defaults": defaults }))
}

fn cmd_radius(args: &RadiusArgs) -> CliResult {
    let theorem = parse_theorem(&args.theorem)?;
    let q = RadiusQuery::new(theorem, args.index.params(args.a0))?;
    let sol = solve(&q)?;
    let eq = equation(&q).map(|(_, name)| name);
    match args.format {
        Format::Json => {
            let command = echo("radius", args, json!({ "scan_step": 1e-3 }))?;
            print_json(
                &command,
                &json!({ "query": q, "label": q.label(), "equation": eq, "solution": sol }),
            )
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["theorem", "radius", "residual", "root_count", "method"])?;
            w.write_record([
                q.label(),
                num(sol.radius),
                num(sol.residual),
                sol.root_count.to_string(),
                serde_json::to_value(sol.method)?
                    .as_str()
                    .unwrap_or_default()
                    .to_owned(),
            ])?;
            w.flush()?;
            Ok(())
        }
    }
}

fn verify_config(args: &VerifyArgs) -> VerifyConfig {
    VerifyConfig {
        trials: args.trials,
        seed: args.seed,
        order: args.order,
        edge: args.edge,
        point_mode: if args.grid {
            PointMode::Grid
        } else {
            PointMode::SchwarzPick
        },
        grid_points: args.grid_points,
        filter_head: !args.no_filter,
        timing: args.timing,
    }
}

fn cmd_verify(args: &VerifyArgs) -> CliResult {
    let cfg = verify_config(args);
    let command = echo("verify", args, json!({ "slack": SLACK, "config": cfg }))?;
    let reports = match args.theorem.as_str() {
        "lemmas" => vec![match &args.replay {
            Some(text) => {
                let f = text.parse::<Recipe>()?.build(cfg.order)?;
                verify::run_lemmas_on(&f, &cfg)?
            }
            None => verify::run_lemmas(&cfg)?,
        }],
        "all" => verify::run_many(&verify::default_campaign(), &cfg)?,
        id => {
            let q = RadiusQuery::template(parse_theorem(id)?, args.index.params(None))?;
            vec![match &args.replay {
                Some(text) => verify::replay(&q, text, args.r, &cfg)?,
                None => verify::run(&q, &cfg)?,
            }]
        }
    };
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if let [only] = reports.as_slice() {
        print_json(&command, only)?;
    } else {
        print_json(&command, &json!({ "reports": reports }))?;
    }
    if failed > 0 {
        return Err(CliError::Failed(format!(
            "{failed} campaign(s) recorded failures"
        )));
    }
    Ok(())
}

fn cmd_sharpness(args: &SharpnessArgs) -> CliResult {
    let a_grid = args.a_grid.clone().unwrap_or(DEFAULT_A_GRID.to_vec());
    let constant = match args.theorem.as_str() {
        "thm4-lambda-first" => Some(Theorem::Thm4First),
        "thm4-lambda-second" => Some(Theorem::Thm4Second),
        "thme-lambda-first" => Some(Theorem::ThmEFirst),
        "thme-lambda-second" => Some(Theorem::ThmESecond),
        _ => None,
    };
    let cert = match constant {
        Some(t) => {
            let eps = args.eps_grid.clone().unwrap_or(vec![DEFAULT_INFLATION]);
            scan_constant(t, &a_grid, &eps)?
        }
        None => {
            let q = RadiusQuery::template(parse_theorem(&args.theorem)?, args.index.params(None))?;
            let eps = args.eps_grid.clone().unwrap_or(DEFAULT_EPS_GRID.to_vec());
            scan_sharpness(&q, &a_grid, &eps)?
        }
    };
    let defaults = json!({
        "a_grid": DEFAULT_A_GRID,
        "eps_grid": DEFAULT_EPS_GRID,
        "inflation": DEFAULT_INFLATION,
        "witness_margin": WITNESS_MARGIN,
        "order": bohr_core::DEFAULT_ORDER,
    });
    let command = echo("sharpness", args, defaults)?;
    print_json(&command, &cert)?;
    cert.require().map(|_| ()).map_err(CliError::from)
}

fn cmd_sample(args: &SampleArgs) -> CliResult {
    let profile: Profile = args.profile.parse()?;
    let sampler = bohr_core::schur::Sampler::new(args.seed);
    let recipe = sampler.recipe(args.index, profile);
    let f = recipe.build(args.order)?;
    let count = args.coefficients.min(args.order + 1);
    let coeffs: Vec<_> = f.series().coeffs()[..count].to_vec();
    match args.format {
        Format::Json => {
            let rows: Vec<Value> = coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| json!({ "n": n, "re": c.re, "im": c.im, "abs": c.norm() }))
                .collect();
            let command = echo("sample", args, json!({}))?;
            print_json(
                &command,
                &json!({
                    "recipe": recipe.to_string(),
                    "profile": profile.id(),
                    "head_modulus": f.head_modulus(),
                    "coefficients": rows,
                }),
            )
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["n", "re", "im", "abs", "recipe"])?;
            for (n, c) in coeffs.iter().enumerate() {
                w.write_record([
                    n.to_string(),
                    num(c.re),
                    num(c.im),
                    num(c.norm()),
                    recipe.to_string(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn cmd_eval(args: &EvalArgs) -> CliResult {
    let q = RadiusQuery::template(parse_theorem(&args.theorem)?, args.index.params(None))?;
    let f = args.recipe.parse::<Recipe>()?.build(args.order)?;
    let qa = q.with_a(f.head_modulus());
    let radius = solve(&qa)?.radius;
    let r = args.r.unwrap_or(radius);
    if !(0.0..1.0).contains(&r) {
        return Err(CliError::Usage(format!("r = {r} must lie in [0, 1)")));
    }
    let mode = if args.grid {
        PointMode::Grid
    } else {
        PointMode::SchwarzPick
    };
    let v = evaluate(&qa, &f, r, mode, args.grid_points);
    let holds = bohr_core::functionals::holds(&v.value);
    let command = echo("eval", args, json!({ "slack": SLACK }))?;
    print_json(
        &command,
        &json!({
            "query": qa,
            "radius": radius,
            "r": r,
            "value": v.value,
            "z_re": v.z.re,
            "z_im": v.z.im,
            "decided_by": v.decided_by,
            "holds": holds,
        }),
    )?;
    if !holds {
        return Err(CliError::Failed(format!("{} exceeds 1 at r = {r}", qa.label())));
    }
    Ok(())
}

fn cmd_remark(args: &RemarkArgs) -> CliResult {
    let reports = args
        .c
        .iter()
        .map(|&c| remark_thm4_counterexample(c))
        .collect::<Result<Vec<_>, _>>()?;
    let command = echo(
        "remark",
        args,
        json!({ "r": 0.5, "order": bohr_core::DEFAULT_ORDER }),
    )?;
    print_json(&command, &json!({ "reports": reports }))
}

fn cmd_threshold(args: &ThresholdArgs) -> CliResult {
    let a = threshold_a(parse_theorem(&args.theorem)?, args.r)?;
    let command = echo("threshold", args, json!({}))?;
    print_json(&command, &json!({ "threshold_a": a }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Radius(a) => cmd_radius(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sharpness(a) => cmd_sharpness(a),
        Command::Table(a) => table::cmd_table(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Remark(a) => cmd_remark(a),
        Command::Threshold(a) => cmd_threshold(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
