//! Seeded Monte Carlo campaigns over sampled Schur functions.
//!
//! Trial `i` of a campaign with seed `s` draws its function from
//! [`Sampler::new(s)`](Sampler) at index `i` with profile `i mod 3`, and its
//! radius fraction from a separate ChaCha stream, so every trial can be
//! reproduced on its own and the report does not depend on trial order.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    lemma1_check, lemma2_check, lemma3_check, lemma4_sides, schwarz_pick_check, LemmaReport, SLACK,
};
use crate::error::{domain, Result};
use crate::functionals::{evaluate, PointMode};
use crate::radii::{radius, Params, RadiusQuery, Theorem, THM5_HEAD_THRESHOLD};
use crate::schur::{Profile, Recipe, Sampler, SchurFunction};
use crate::series::DEFAULT_ORDER;

/// Radii at which the lemma oracles are checked.
pub const LEMMA_RADII: [f64; 9] = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45];
/// Largest `N` for the Rogosinski-type sum bound.
pub const LEMMA_MAX_N: usize = 6;
/// Largest index for the coefficient inequalities.
pub const LEMMA_MAX_INDEX: usize = 5;
/// Angles on `|z| = r` for the Schwarz-Pick oracle.
pub const LEMMA_ANGLES: usize = 32;
/// Rejection attempts per trial when the sampler is filtered.
const MAX_ATTEMPTS: u64 = 4096;
/// Stream offset for the uniform radius draws.
const RADIUS_STREAM: u64 = 1 << 63;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub trials: u64,
    pub seed: u64,
    pub order: usize,
    /// Pin `r` to the radius instead of drawing it uniformly.
    pub edge: bool,
    pub point_mode: PointMode,
    pub grid_points: usize,
    /// Restrict samples to the head range where the variant is claimed.
    pub filter_head: bool,
    /// Record wall-clock time; off by default so reports are reproducible.
    pub timing: bool,
}

impl VerifyConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            order: DEFAULT_ORDER,
            edge: false,
            point_mode: PointMode::SchwarzPick,
            grid_points: 128,
            filter_head: true,
            timing: false,
        }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn with_edge(mut self, edge: bool) -> Self {
        self.edge = edge;
        self
    }

    pub fn with_point_mode(mut self, mode: PointMode) -> Self {
        self.point_mode = mode;
        self
    }
}

/// A replayable failing trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub recipe: String,
    pub z_re: f64,
    pub z_im: f64,
    pub r: f64,
    pub value_lower: f64,
    pub value_upper: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub params: Params,
    pub trials: u64,
    pub seed: u64,
    pub order: usize,
    /// Smallest `1 - value.upper` (or `rhs - lhs` for the lemmas).
    pub worst_margin: f64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    pub mode: String,
    pub point_mode: PointMode,
    /// Largest enclosure width over all trials.
    pub max_width: f64,
    /// Trials settled by the angle grid rather than the Schwarz-Pick bound.
    pub grid_trials: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn empty(name: String, params: Params, cfg: &VerifyConfig) -> Self {
        Self {
            theorem: name,
            params,
            trials: cfg.trials,
            seed: cfg.seed,
            order: cfg.order,
            worst_margin: f64::INFINITY,
            failures: Vec::new(),
            elapsed_ms: 0,
            mode: if cfg.edge { "edge" } else { "uniform" }.to_owned(),
            point_mode: cfg.point_mode,
            max_width: 0.0,
            grid_trials: 0,
            notes: Vec::new(),
        }
    }
}

fn check_config(cfg: &VerifyConfig) -> Result<()> {
    if cfg.trials == 0 {
        return Err(domain("at least one trial is required"));
    }
    if cfg.order < 2 * LEMMA_MAX_INDEX + 1 {
        return Err(domain(format!("series order {} is too small", cfg.order)));
    }
    Ok(())
}

/// Uniform fraction in `[0, 1]` for trial `index`.
fn radius_fraction(seed: u64, index: u64) -> f64 {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(RADIUS_STREAM | index);
    rng.random::<f64>()
}

fn head_allowed(q: &RadiusQuery, f: &SchurFunction) -> bool {
    q.theorem != Theorem::Thm5 || f.head_modulus() <= THM5_HEAD_THRESHOLD
}

fn notes_for(q: &RadiusQuery, cfg: &VerifyConfig) -> Vec<String> {
    let mut notes = Vec::new();
    if q.theorem.needs_a() {
        notes.push("radius taken at a = |a_0| of each sample".to_owned());
    }
    if q.theorem == Theorem::Thm4Second {
        notes.push("the radius 1/(3-a) reads a as |a_0|".to_owned());
    }
    if q.theorem.is_symmetric() {
        notes.push("recipes are the base g of f(z) = z^m g(z^p)".to_owned());
    }
    if q.theorem == Theorem::Thm5 {
        if cfg.filter_head {
            notes.push(format!(
                "sampler filtered to |a_0| <= 4 sqrt(2) - 5 = {THM5_HEAD_THRESHOLD:.17}"
            ));
        } else {
            notes.push("sampler unfiltered; |a_0| > 4 sqrt(2) - 5 is expected to fail".to_owned());
        }
    }
    notes
}

/// Evaluates one function and folds the outcome into `report`.
fn trial(report: &mut VerificationReport, q: &RadiusQuery, f: &SchurFunction, r: f64, cfg: &VerifyConfig) {
    let v = evaluate(q, f, r, cfg.point_mode, cfg.grid_points);
    let margin = 1.0 - v.value.upper;
    report.worst_margin = report.worst_margin.min(margin);
    report.max_width = report.max_width.max(v.value.width());
    if v.decided_by == crate::functionals::Decider::Grid {
        report.grid_trials += 1;
    }
    if margin < -SLACK {
        report.failures.push(Failure {
            recipe: f.recipe().to_string(),
            z_re: v.z.re,
            z_im: v.z.im,
            r,
            value_lower: v.value.lower,
            value_upper: v.value.upper,
            check: None,
        });
    }
}

fn radius_for(q: &RadiusQuery, f: &SchurFunction) -> Result<f64> {
    radius(&q.with_a(f.head_modulus()))
}

/// Draws the function of trial `index`, resampling on further streams while
/// the head filter rejects it.
fn draw(sampler: &Sampler, q: &RadiusQuery, index: u64, cfg: &VerifyConfig) -> Result<SchurFunction> {
    let profile = Profile::for_trial(index);
    for attempt in 0..MAX_ATTEMPTS {
        let f = sampler.sample((attempt << 32) | index, profile, cfg.order);
        if !cfg.filter_head || head_allowed(q, &f) {
            return Ok(f);
        }
    }
    Err(domain(format!(
        "no admissible sample for trial {index} after {MAX_ATTEMPTS} draws"
    )))
}

/// Runs `cfg.trials` trials of `q`. The query must not fix the head modulus.
pub fn run(q: &RadiusQuery, cfg: &VerifyConfig) -> Result<VerificationReport> {
    Ok(run_many(std::slice::from_ref(q), cfg)?.remove(0))
}

/// Runs several variants on the same samples; each report equals the one
/// [`run`] would give on its own.
pub fn run_many(queries: &[RadiusQuery], cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    check_config(cfg)?;
    let queries: Vec<RadiusQuery> = queries
        .iter()
        .map(|q| RadiusQuery::template(q.theorem, q.params))
        .collect::<Result<_>>()?;
    let start = Instant::now();
    let sampler = Sampler::new(cfg.seed);
    let mut reports: Vec<_> = queries
        .iter()
        .map(|q| {
            let mut rep = VerificationReport::empty(q.theorem.id().to_owned(), q.params, cfg);
            rep.notes = notes_for(q, cfg);
            rep
        })
        .collect();
    for i in 0..cfg.trials {
        let shared = sampler.sample(i, Profile::for_trial(i), cfg.order);
        let u = radius_fraction(cfg.seed, i);
        for (q, rep) in queries.iter().zip(reports.iter_mut()) {
            let filtered;
            let f = if !cfg.filter_head || head_allowed(q, &shared) {
                &shared
            } else {
                filtered = draw(&sampler, q, i, cfg)?;
                &filtered
            };
            let big_r = radius_for(q, f)?;
            let r = if cfg.edge { big_r } else { u * big_r };
            trial(rep, q, f, r, cfg);
        }
    }
    if cfg.timing {
        let ms = start.elapsed().as_millis() as u64;
        for rep in &mut reports {
            rep.elapsed_ms = ms;
        }
    }
    Ok(reports)
}

/// Evaluates `q` once on the function described by `recipe`, at `r` or at
/// the radius when `r` is `None`.
pub fn replay(
    q: &RadiusQuery,
    recipe: &str,
    r: Option<f64>,
    cfg: &VerifyConfig,
) -> Result<VerificationReport> {
    let q = RadiusQuery::template(q.theorem, q.params)?;
    let recipe: Recipe = recipe.parse()?;
    let f = recipe.build(cfg.order)?;
    let big_r = radius_for(&q, &f)?;
    let r = r.unwrap_or(big_r);
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("r = {r} must lie in [0, 1)")));
    }
    let cfg = VerifyConfig {
        trials: 1,
        edge: r == big_r,
        ..*cfg
    };
    let mut rep = VerificationReport::empty(q.theorem.id().to_owned(), q.params, &cfg);
    rep.mode = "replay".to_owned();
    rep.notes = notes_for(
        &q,
        &VerifyConfig {
            filter_head: false,
            ..cfg
        },
    );
    rep.notes.push(format!("radius at this function: {big_r:.17}"));
    trial(&mut rep, &q, &f, r, &cfg);
    Ok(rep)
}

fn lemma_failure(f: &SchurFunction, r: f64, rep: &LemmaReport, check: String) -> Failure {
    Failure {
        recipe: f.recipe().to_string(),
        z_re: r,
        z_im: 0.0,
        r,
        value_lower: rep.lhs.lower,
        value_upper: rep.lhs.upper,
        check: Some(check),
    }
}

/// All lemma oracles of [`crate::bounds`] for one function, labelled.
pub fn lemma_reports(f: &SchurFunction) -> Result<Vec<(String, f64, LemmaReport)>> {
    let mut out = Vec::new();
    for r in LEMMA_RADII {
        out.push((format!("lemma1(r={r})"), r, lemma1_check(f, r)?));
        out.push((format!("lemma2(r={r})"), r, lemma2_check(f, r)?));
        for n in 1..=LEMMA_MAX_N {
            out.push((format!("lemma4(r={r},N={n})"), r, lemma4_sides(f, r, n)?));
        }
        out.push((
            format!("schwarz-pick(r={r})"),
            r,
            schwarz_pick_check(f, r, LEMMA_ANGLES)?,
        ));
    }
    for n in 0..=LEMMA_MAX_INDEX {
        let (odd, even) = lemma3_check(f, n)?;
        out.push((format!("lemma3a(n={n})"), 0.0, odd));
        if let Some(even) = even {
            out.push((format!("lemma3b(n={n})"), 0.0, even));
        }
    }
    Ok(out)
}

/// Checks every lemma oracle on `cfg.trials` sampled functions.
pub fn run_lemmas(cfg: &VerifyConfig) -> Result<VerificationReport> {
    check_config(cfg)?;
    let start = Instant::now();
    let sampler = Sampler::new(cfg.seed);
    let mut report = VerificationReport::empty("lemmas".to_owned(), Params::default(), cfg);
    report.mode = "lemma-grid".to_owned();
    report.notes.push(format!(
        "r in {LEMMA_RADII:?}, N in 1..={LEMMA_MAX_N}, n in 0..={LEMMA_MAX_INDEX}, {LEMMA_ANGLES} angles"
    ));
    for i in 0..cfg.trials {
        let f = sampler.sample(i, Profile::for_trial(i), cfg.order);
        fold_lemmas(&mut report, &f)?;
    }
    if cfg.timing {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

/// Lemma oracles on a single fixed function.
pub fn run_lemmas_on(f: &SchurFunction, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let cfg = VerifyConfig { trials: 1, ..*cfg };
    let mut report = VerificationReport::empty("lemmas".to_owned(), Params::default(), &cfg);
    report.mode = "replay".to_owned();
    fold_lemmas(&mut report, f)?;
    Ok(report)
}

fn fold_lemmas(report: &mut VerificationReport, f: &SchurFunction) -> Result<()> {
    for (label, r, rep) in lemma_reports(f)? {
        report.worst_margin = report.worst_margin.min(rep.margin);
        report.max_width = report.max_width.max(rep.lhs.width());
        if !rep.holds {
            report.failures.push(lemma_failure(f, r, &rep, label));
        }
    }
    Ok(())
}

/// One query per variant, with representative indices.
pub fn default_campaign() -> Vec<RadiusQuery> {
    Theorem::ALL
        .into_iter()
        .map(|t| {
            let mut q = RadiusQuery::simple(t);
            if t.needs_n() {
                q = q.with_n(3);
            }
            if t.needs_m() {
                q = q.with_pm(2, 1);
            } else if t.needs_p() {
                q = q.with_p(2);
            }
            q
        })
        .collect()
}

/// Wider index sweeps for the parametrised variants.
pub fn index_campaign() -> Vec<RadiusQuery> {
    let mut out = Vec::new();
    for t in Theorem::ALL {
        if t.needs_n() {
            out.extend((1..=6).map(|n| RadiusQuery::simple(t).with_n(n)));
        } else if t.needs_m() {
            for p in 1..=3 {
                out.extend((0..=p).map(|m| RadiusQuery::simple(t).with_pm(p, m)));
            }
        } else if t.needs_p() {
            out.extend((1..=3).map(|p| RadiusQuery::simple(t).with_p(p)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{moebius, Sign};

    #[test]
    fn campaign_covers_every_variant() {
        let c = default_campaign();
        for t in Theorem::ALL {
            assert!(c.iter().any(|q| q.theorem == t), "{t}");
        }
        for q in c.iter().chain(index_campaign().iter()) {
            RadiusQuery::template(q.theorem, q.params).unwrap();
        }
    }

    #[test]
    fn small_campaign_passes_and_repeats() {
        let cfg = VerifyConfig::new(30, 3);
        let a = run_many(&default_campaign(), &cfg).unwrap();
        let b = run_many(&default_campaign(), &cfg).unwrap();
        assert_eq!(a, b);
        for rep in &a {
            assert!(rep.passed(), "{rep:?}");
            assert!(rep.worst_margin >= -SLACK);
        }
    }

    #[test]
    fn run_many_matches_run() {
        let cfg = VerifyConfig::new(12, 8).with_edge(true);
        let qs = default_campaign();
        let many = run_many(&qs, &cfg).unwrap();
        for (q, rep) in qs.iter().zip(&many) {
            assert_eq!(&run(q, &cfg).unwrap(), rep);
        }
    }

    #[test]
    fn squared_distance_needs_the_filter() {
        let q = RadiusQuery::simple(Theorem::Thm5);
        let cfg = VerifyConfig::new(1, 0);
        let rep = replay(
            &q,
            &Recipe::Moebius {
                a: 0.7,
                sign: Sign::Minus,
            }
            .to_string(),
            None,
            &cfg,
        )
        .unwrap();
        assert_eq!(rep.failures.len(), 1);
        assert!(rep.failures[0].value_lower > 1.0);
        let rep = replay(
            &q,
            &Recipe::Moebius {
                a: 0.6,
                sign: Sign::Minus,
            }
            .to_string(),
            None,
            &cfg,
        )
        .unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn failure_replays() {
        let q = RadiusQuery::simple(Theorem::ThmA);
        let cfg = VerifyConfig::new(1, 0);
        let rep = replay(&q, "moebius(0.5,-)", Some(0.6), &cfg).unwrap();
        let fail = &rep.failures[0];
        let again = replay(&q, &fail.recipe, Some(fail.r), &cfg).unwrap();
        assert_eq!(again.failures[0], *fail);
    }

    #[test]
    fn lemma_fixtures() {
        let cfg = VerifyConfig::new(1, 0);
        let rep = run_lemmas_on(&SchurFunction::identity(256), &cfg).unwrap();
        assert!(rep.passed());
        assert!(rep.worst_margin.abs() < 1e-12);
        let f = moebius(0.9, Sign::Minus, 256).unwrap();
        let r2 = lemma2_check(&f, 0.5).unwrap();
        assert!(r2.margin.abs() < 1e-10);
        assert!(run_lemmas(&VerifyConfig::new(20, 42)).unwrap().passed());
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run(&RadiusQuery::simple(Theorem::ThmA), &VerifyConfig::new(0, 1)).is_err());
    }
}
