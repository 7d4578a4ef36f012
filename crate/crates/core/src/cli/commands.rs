use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use super::{
    fmt15, terms_csv, to_json, BoundKind, BoundsArgs, CliError, CountsFile, Mode, Rendered, RunConfig, EXIT_NOT_ABOVE,
    EXIT_OK,
};
use crate::bounds::{
    check_certificate, complex_construction, cubic_certificate, load_certificate, lvm_max, optimize_quadratic,
    quadratic_certificate, random_strategy_max, Field, LvmMode, RandomSearchConfig, Search, COMPLEX_BOUND,
};
use crate::gates::{verify_identities, CatalogOptions, IdentityCheck};
use crate::witness::{
    exact_distributions, no_signaling_report, no_signaling_report_exact, sample_records, witness_from_records,
    CountsRecord, MarginalComparison, NoSignalingReport, Permutation, WitnessError, WitnessResult, WitnessRunOptions,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialEntry {
    pub x: u8,
    pub eta: Permutation,
    pub z: u8,
    /// `Σ_b (−1)^{δ_zb+δ_0b} ⟨A_x B_{bη} C_z⟩`.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoSignalingSummary {
    pub passed: bool,
    pub comparisons: usize,
    pub max_deviation: f64,
    pub flagged: Vec<MarginalComparison>,
}

impl From<&NoSignalingReport> for NoSignalingSummary {
    fn from(r: &NoSignalingReport) -> Self {
        Self {
            passed: r.passed(),
            comparisons: r.comparisons.len(),
            max_deviation: r.max_deviation(),
            flagged: r.flagged().cloned().collect(),
        }
    }
}

/// Result of `exact`, `sample` or `ingest`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub result: WitnessResult,
    pub partials: Vec<PartialEntry>,
    pub bound: f64,
    pub above_bound: bool,
    /// `(F − bound)/σ`; absent when `σ = 0`.
    pub sigma_distance: Option<f64>,
    pub no_signaling: Option<NoSignalingSummary>,
    #[serde(skip)]
    pub counts: Option<CountsFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub kind: BoundKind,
    pub value: f64,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<IdentityCheck>,
}

fn witness_error(e: WitnessError) -> CliError {
    match e {
        WitnessError::MissingTerm(s, _) => CliError::Validation(format!(
            "counts file: missing setting (x={}, eta={}, z={})",
            s.x, s.eta, s.z
        )),
        WitnessError::ZeroShots
        | WitnessError::NoPermutations
        | WitnessError::BadPermutation(_)
        | WitnessError::BadSetting { .. }
        | WitnessError::EmptyCounts(_) => CliError::Validation(e.to_string()),
        other => CliError::Computation(other.to_string()),
    }
}

fn json_error(e: serde_json::Error) -> CliError {
    CliError::Computation(e.to_string())
}

fn run_options(config: &RunConfig) -> WitnessRunOptions {
    WitnessRunOptions {
        native: config.native,
        permutations: config.permutations.clone(),
        noise: config.noise,
    }
}

fn report(
    config: &RunConfig,
    result: WitnessResult,
    no_signaling: Result<NoSignalingReport, WitnessError>,
) -> RunReport {
    let partials = result
        .partials()
        .into_iter()
        .map(|(s, value)| PartialEntry {
            x: s.x(),
            eta: s.eta(),
            z: s.z(),
            value,
        })
        .collect();
    let sigma_distance = (result.sigma > 0.0).then(|| (result.f - config.bound) / result.sigma);
    RunReport {
        config: config.clone(),
        above_bound: result.f > config.bound,
        bound: config.bound,
        partials,
        sigma_distance,
        no_signaling: no_signaling.ok().as_ref().map(NoSignalingSummary::from),
        result,
        counts: None,
    }
}

/// Exact (possibly noisy) distributions of every requested setting.
pub fn cmd_exact(config: &RunConfig) -> Result<RunReport, CliError> {
    let opts = run_options(config);
    let distributions = exact_distributions(&opts).map_err(witness_error)?;
    let mut terms = Vec::with_capacity(distributions.len() * 4);
    for (s, d) in &distributions {
        terms.extend(crate::witness::correlations(d, &s.tuple()).map_err(witness_error)?);
    }
    let result = crate::witness::partial_witness_value(&terms, &opts.permutations).map_err(witness_error)?;
    let tuples: Vec<_> = distributions.into_iter().map(|(s, d)| (s.tuple(), d)).collect();
    Ok(report(config, result, no_signaling_report_exact(&tuples)))
}

/// Sampled counts; the report carries the counts file.
pub fn cmd_sample(config: &RunConfig) -> Result<RunReport, CliError> {
    let shots = config.shots.ok_or_else(|| CliError::Validation("sample needs a shot count".into()))?;
    let seed = config.seed.unwrap_or(0);
    let opts = run_options(config);
    let records = sample_records(shots, seed, &opts).map_err(witness_error)?;
    let result = witness_from_records(&records, &opts.permutations, None).map_err(witness_error)?;
    let mut rep = report(config, result, no_signaling_report(&records));
    rep.counts = Some(CountsFile::from_records(&records));
    Ok(rep)
}

/// Evaluate a counts file against the configured bound.
pub fn cmd_ingest(config: &RunConfig) -> Result<RunReport, CliError> {
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| CliError::Validation("ingest needs an input file".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let records = CountsFile::parse(&text)?.to_records()?;
    ingest_records(config, &records)
}

/// [`cmd_ingest`] on records already in memory.
pub fn ingest_records(config: &RunConfig, records: &[CountsRecord]) -> Result<RunReport, CliError> {
    if config.shots == Some(0) {
        return Err(CliError::Validation("--shots must be positive".into()));
    }
    let witness: Vec<CountsRecord> = records
        .iter()
        .filter(|r| r.setting.as_witness().is_some() && config.permutations.contains(&r.setting.eta))
        .cloned()
        .collect();
    let result = witness_from_records(&witness, &config.permutations, config.shots).map_err(witness_error)?;
    Ok(report(config, result, no_signaling_report(records)))
}

fn string_or_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    to_json(v).map_err(json_error)
}

fn run_summary(r: &RunReport) -> String {
    let mut s = String::new();
    let mode = match r.config.mode {
        Mode::Exact => "exact",
        Mode::Sample => "sample",
        Mode::Ingest => "ingest",
    };
    let etas: Vec<String> = r.config.permutations.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(s, "mode: {mode}  permutations: {}", etas.join(","));
    let _ = writeln!(s, "F = {}", fmt15(r.result.f));
    if r.config.mode != Mode::Exact {
        let _ = writeln!(s, "sigma = {}", fmt15(r.result.sigma));
    }
    let relation = if r.above_bound { "above" } else { "not above" };
    let _ = write!(s, "bound = {} ({relation})", fmt15(r.bound));
    match r.sigma_distance {
        Some(d) => {
            let _ = writeln!(s, ", (F - bound)/sigma = {}", fmt15(d));
        }
        None => s.push('\n'),
    }
    match &r.no_signaling {
        Some(ns) if ns.passed => {
            let _ = writeln!(s, "no-signaling: passed ({} comparisons, max deviation {})", ns.comparisons, fmt15(ns.max_deviation));
        }
        Some(ns) => {
            let _ = writeln!(s, "no-signaling: {} of {} comparisons flagged", ns.flagged.len(), ns.comparisons);
            for c in &ns.flagged {
                let _ = writeln!(
                    s,
                    "  {} {}: {} vs {} deviation {} > {}",
                    c.party,
                    c.own_setting,
                    c.context_1,
                    c.context_2,
                    fmt15(c.deviation),
                    fmt15(c.tolerance)
                );
            }
        }
        None => {
            let _ = writeln!(s, "no-signaling: not enough contexts");
        }
    }
    s
}

pub(crate) fn render_run(r: &RunReport) -> Result<Rendered, CliError> {
    let json = string_or_json(r)?;
    let mut files = vec![
        ("result.json".to_string(), json.clone()),
        (
            "terms.csv".to_string(),
            terms_csv(&r.result.terms).map_err(|e| CliError::Computation(e.to_string()))?,
        ),
    ];
    if let Some(counts) = &r.counts {
        files.push(("counts.json".to_string(), string_or_json(counts)?));
    }
    Ok(Rendered {
        json,
        summary: run_summary(r),
        files,
        exit_code: if r.above_bound { EXIT_OK } else { EXIT_NOT_ABOVE },
    })
}

/// Reference values and their diagnostics.
pub fn cmd_bounds(args: &BoundsArgs) -> Result<BoundsReport, CliError> {
    let bounds_error = |e: crate::bounds::BoundsError| CliError::Validation(e.to_string());
    let to_value = |v: serde_json::Result<serde_json::Value>| v.map_err(json_error);
    let (value, detail) = match args.kind {
        BoundKind::Classical => {
            let r = lvm_max(LvmMode::Full);
            (r.value as f64, to_value(serde_json::to_value(r))?)
        }
        BoundKind::Complex => {
            let r = complex_construction();
            (r.f, json!({ "algebraic_maximum": COMPLEX_BOUND, "construction": to_value(serde_json::to_value(&r))? }))
        }
        BoundKind::RealQuadratic => {
            let opt = optimize_quadratic();
            let sample = check_certificate(&quadratic_certificate_at_sample()?).map_err(bounds_error)?;
            (opt.bound, json!({ "optimum": to_value(serde_json::to_value(opt))?, "certificate_t1_x2": to_value(serde_json::to_value(sample))? }))
        }
        BoundKind::RealCubic => {
            let r = check_certificate(&cubic_certificate()).map_err(bounds_error)?;
            (r.bound, to_value(serde_json::to_value(r))?)
        }
        BoundKind::Certificate => {
            let path = args
                .certificate
                .as_ref()
                .ok_or_else(|| CliError::Validation("`bounds certificate` needs --certificate FILE".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let cert = load_certificate(&text).map_err(bounds_error)?;
            let r = check_certificate(&cert).map_err(bounds_error)?;
            (r.bound, to_value(serde_json::to_value(r))?)
        }
        BoundKind::SampleReal | BoundKind::SampleComplex => {
            let (field, search) = if args.kind == BoundKind::SampleReal {
                (Field::Real, Search::Uniform)
            } else {
                (Field::Complex, Search::Perturb { scale: args.scale })
            };
            let cfg = RandomSearchConfig {
                field,
                trials: args.trials,
                seed: args.seed,
                search,
            };
            let r = random_strategy_max(&cfg).map_err(bounds_error)?;
            (r.best, to_value(serde_json::to_value(r))?)
        }
    };
    Ok(BoundsReport {
        kind: args.kind,
        value,
        detail,
    })
}

fn quadratic_certificate_at_sample() -> Result<crate::bounds::SoSCertificate, CliError> {
    use num_rational::BigRational;
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    quadratic_certificate()
        .instantiate(&one, &two)
        .map_err(|e| CliError::Computation(e.to_string()))
}

pub(crate) fn render_bounds(r: &BoundsReport) -> Result<Rendered, CliError> {
    let json = string_or_json(r)?;
    let kind = serde_json::to_value(r.kind).map_err(json_error)?;
    let kind = kind.as_str().unwrap_or_default().to_string();
    let mut summary = format!("{kind}: {}\n", fmt15(r.value));
    let valid = r.detail.get("valid").and_then(|v| v.as_bool());
    if let Some(v) = valid {
        let _ = writeln!(summary, "certificate valid: {v}");
        for key in ["c0", "c1", "bound_exact"] {
            if let Some(s) = r.detail.get(key).and_then(|v| v.as_str()) {
                let _ = writeln!(summary, "{key} = {s}");
            }
        }
    }
    if let Some(opt) = r.detail.get("optimum") {
        for key in ["t", "x", "six_x"] {
            if let Some(v) = opt.get(key).and_then(|v| v.as_f64()) {
                let _ = writeln!(summary, "{key} = {}", fmt15(v));
            }
        }
    }
    if let Some(st) = r.detail.get("strategy").filter(|_| r.kind == BoundKind::Classical) {
        let _ = writeln!(summary, "strategy: {st}");
    }
    Ok(Rendered {
        json: json.clone(),
        summary,
        files: vec![("bounds.json".to_string(), json)],
        exit_code: if valid == Some(false) { EXIT_NOT_ABOVE } else { EXIT_OK },
    })
}

/// Check every gate identity; `inject_cr_sign_error` is a negative control.
pub fn cmd_verify_gates(inject_cr_sign_error: bool) -> Result<VerifyReport, CliError> {
    let checks = verify_identities(CatalogOptions {
        flip_cr_minus: inject_cr_sign_error,
    })
    .map_err(|e| CliError::Computation(e.to_string()))?;
    Ok(VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

pub(crate) fn render_verify(r: &VerifyReport) -> Result<Rendered, CliError> {
    let json = string_or_json(r)?;
    let mut summary = String::new();
    for c in &r.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(summary, "{mark} {:<40} deviation {}", c.name, fmt15(c.deviation));
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(summary, "{} identities, {failed} failed", r.checks.len());
    Ok(Rendered {
        json: json.clone(),
        summary,
        files: vec![("verify.json".to_string(), json)],
        exit_code: if r.passed { EXIT_OK } else { EXIT_NOT_ABOVE },
    })
}
